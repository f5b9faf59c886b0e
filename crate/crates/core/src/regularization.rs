//! Zeta-regularized sums over arithmetic progressions and the oscillator
//! towers whose ground-state exponents they fix.
//!
//! For the progression `{pn + r : n ≥ 0}` the Hurwitz value is
//! `p·ζ(−1, r/p) = r(p−r)/(2p) − p/12`. Splitting the sum termwise as
//! `p·Σn + r·Σ1` with `Σn = −1/12` and `Σ1 = 1 + ζ(0) = 1/2` gives
//! `−p/12 + r/2`, which is off by exactly `−r²/(2p)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{format_rational, int, rat, FracQSeries, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Progression {
    pub p: i64,
    pub r: i64,
}

impl Progression {
    pub fn new(p: i64, r: i64) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidProgression { p, r, reason: "step must be positive".into() });
        }
        if r < 1 || r > p {
            return Err(Error::InvalidProgression { p, r, reason: "offset must lie in 1..=p".into() });
        }
        Ok(Self { p, r })
    }

    pub fn contains(&self, e: i64) -> bool {
        e >= self.r && (e - self.r) % self.p == 0
    }
}

/// A finite disjoint union of progressions `{pn + r}`: the mode spectrum of
/// an oscillator tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticProgressionSet {
    progressions: Vec<Progression>,
}

impl ArithmeticProgressionSet {
    pub fn new(pairs: &[(i64, i64)]) -> Result<Self> {
        let progressions = pairs
            .iter()
            .map(|&(p, r)| Progression::new(p, r))
            .collect::<Result<Vec<_>>>()?;
        let bound = 10 * progressions.iter().map(|a| a.p).max().unwrap_or(1);
        for (i, a) in progressions.iter().enumerate() {
            for b in &progressions[i + 1..] {
                if (1..=bound).any(|e| a.contains(e) && b.contains(e)) {
                    return Err(Error::InvalidProgression {
                        p: b.p,
                        r: b.r,
                        reason: format!("overlaps {}n+{}", a.p, a.r),
                    });
                }
            }
        }
        Ok(Self { progressions })
    }

    /// `{pn + r : r ∈ residues}` for a single step.
    pub fn with_step(p: i64, residues: &[i64]) -> Result<Self> {
        let pairs: Vec<_> = residues.iter().map(|&r| (p, r)).collect();
        Self::new(&pairs)
    }

    /// `{n + 1} = {1, 2, 3, …}`
    pub fn positive_integers() -> Self {
        Self { progressions: vec![Progression { p: 1, r: 1 }] }
    }

    pub fn progressions(&self) -> &[Progression] {
        &self.progressions
    }

    pub fn contains(&self, e: i64) -> bool {
        self.progressions.iter().any(|a| a.contains(e))
    }

    /// Members below `bound`, in increasing order.
    pub fn members_below(&self, bound: usize) -> Vec<usize> {
        (1..bound).filter(|&e| self.contains(e as i64)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    Hurwitz,
    RamanujanNaive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularizedValue {
    pub value: Rational,
    pub method: Method,
}

#[derive(Serialize, Deserialize)]
struct RegularizedRecord {
    value: String,
    method: Method,
}

impl Serialize for RegularizedValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RegularizedRecord { value: format_rational(&self.value), method: self.method }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RegularizedValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RegularizedRecord::deserialize(d)?;
        let value = crate::series::parse_rational(&r.value).map_err(serde::de::Error::custom)?;
        Ok(Self { value, method: r.method })
    }
}

/// `Σ_{n≥0} (pn + r) = r(p−r)/(2p) − p/12`.
pub fn hurwitz_sum(p: i64, r: i64) -> Result<RegularizedValue> {
    Progression::new(p, r)?;
    let value = rat(r * (p - r), 2 * p) - rat(p, 12);
    Ok(RegularizedValue { value, method: Method::Hurwitz })
}

/// `p·(−1/12) + r·(1/2)`.
pub fn ramanujan_naive_sum(p: i64, r: i64) -> Result<RegularizedValue> {
    Progression::new(p, r)?;
    let value = rat(-p, 12) + rat(r, 2);
    Ok(RegularizedValue { value, method: Method::RamanujanNaive })
}

/// Hurwitz minus naive; always `−r²/(2p)`.
pub fn ramanujan_defect(p: i64, r: i64) -> Result<Rational> {
    Ok(hurwitz_sum(p, r)?.value - ramanujan_naive_sum(p, r)?.value)
}

/// Half the regularized sum of the spectrum: the power of `q` multiplying
/// the oscillator tower.
pub fn casimir_exponent(s: &ArithmeticProgressionSet) -> Result<Rational> {
    let mut total = Rational::zero();
    for a in s.progressions() {
        total += hurwitz_sum(a.p, a.r)?.value;
    }
    Ok(total / int(2))
}

/// `q^{E_C} ∏_{E ∈ s} (1 − q^E)^{-1}` to `order` terms.
pub fn oscillator_partition_series(s: &ArithmeticProgressionSet, order: usize) -> Result<FracQSeries> {
    tower(s, order, -1)
}

/// `q^{E_C} ∏_{E ∈ s} (1 + q^E)^{-1}`, with the untwisted `E_C`.
pub fn twisted_oscillator_series(s: &ArithmeticProgressionSet, order: usize) -> Result<FracQSeries> {
    tower(s, order, 1)
}

fn tower(s: &ArithmeticProgressionSet, order: usize, sign: i64) -> Result<FracQSeries> {
    let exponent = casimir_exponent(s)?;
    let mut out = FracQSeries::one(order.max(1));
    for e in s.members_below(order) {
        out = out.div_binomial(e, sign);
    }
    Ok(out.with_prefactor(exponent))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalDimension {
    /// Zero-point energy of one transverse oscillator tower, `−1/24`.
    #[serde(serialize_with = "ser_rational")]
    pub vacuum_energy_per_dimension: Rational,
    pub transverse: i64,
    pub spacetime: i64,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Solves `1 + d_t·E_0 = 0` with `E_0 = ½·Σn = −1/24` for the number of
/// transverse directions, then adds the two light-cone directions.
pub fn critical_dimension() -> CriticalDimension {
    let per_dimension = hurwitz_sum(1, 1).expect("1n+1 is a valid progression").value / int(2);
    let d = -int(1) / &per_dimension;
    assert!(d.is_integer(), "transverse dimension must be integral");
    let transverse: i64 = d.to_integer().try_into().expect("small integer");
    CriticalDimension {
        vacuum_energy_per_dimension: per_dimension,
        transverse,
        spacetime: transverse + 2,
    }
}
