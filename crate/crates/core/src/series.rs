//! Truncated power series in `q` with exact rational coefficients.
//!
//! A [`FracQSeries`] stores `q^a · (c_0 + c_1 q + … + c_{N-1} q^{N-1}) + O(q^{a+N})`
//! where the prefactor exponent `a` is an arbitrary rational. Every object in
//! the crate that carries a fractional power of `q` (characters, eta, the
//! oscillator towers) is one of these.
//!
//! All arithmetic is exact. Binary operations truncate to the overlap of the
//! two known ranges.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default number of stored coefficients (through `q^{a+200}`).
pub const DEFAULT_ORDER: usize = 201;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Reduced `"n/d"` form; zero is `"0/1"`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::RationalParse(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn integer_part(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FracQSeries {
    prefactor: Rational,
    coeffs: Vec<Rational>,
}

impl FracQSeries {
    /// Panics if `coeffs` is empty: a series always knows at least one term.
    pub fn new(prefactor: Rational, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series order must be positive");
        Self { prefactor, coeffs }
    }

    pub fn from_integers(prefactor: Rational, coeffs: &[i64]) -> Self {
        Self::new(prefactor, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn from_bigints(prefactor: Rational, coeffs: &[BigInt]) -> Self {
        Self::new(
            prefactor,
            coeffs.iter().cloned().map(Rational::from_integer).collect(),
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Rational::zero(), vec![Rational::zero(); order])
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(Rational::zero(), Rational::one(), order)
    }

    /// `coeff · q^exponent + O(q^{exponent+order})`.
    pub fn monomial(exponent: Rational, coeff: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order];
        coeffs[0] = coeff;
        Self::new(exponent, coeffs)
    }

    pub fn prefactor(&self) -> &Rational {
        &self.prefactor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn with_prefactor(mut self, prefactor: Rational) -> Self {
        self.prefactor = prefactor;
        self
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order()).max(1);
        Self::new(self.prefactor.clone(), self.coeffs[..n].to_vec())
    }

    /// Moves leading zero coefficients into the prefactor, so that
    /// `coeffs[0] != 0` unless the series is zero to its order.
    pub fn normalize(&self) -> Self {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(0) | None => self.clone(),
            Some(k) => Self::new(
                &self.prefactor + int(k as i64),
                self.coeffs[k..].to_vec(),
            ),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let shift = &self.prefactor - &other.prefactor;
        // The later-starting series must begin inside the earlier one's range.
        let d = integer_part(&shift)
            .filter(|&d| {
                let low_order = if d >= 0 { other.order() } else { self.order() };
                d.unsigned_abs() < low_order as u64
            })
            .ok_or_else(|| {
                Error::NonAlignablePrefactor(
                    format_rational(&self.prefactor),
                    format_rational(&other.prefactor),
                )
            })?;
        // `low` starts first; `high` sits `d` slots above it.
        let (low, high, d) = if d >= 0 {
            (other, self, d as usize)
        } else {
            (self, other, (-d) as usize)
        };
        let order = low.order().min(high.order() + d);
        let coeffs = (0..order)
            .map(|n| {
                let mut c = low.coeffs[n].clone();
                if n >= d {
                    c += &high.coeffs[n - d];
                }
                c
            })
            .collect();
        Ok(Self::new(low.prefactor.clone(), coeffs))
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.prefactor.clone(),
            self.coeffs.iter().map(|c| -c).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(
            self.prefactor.clone(),
            self.coeffs.iter().map(|c| c * s).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order];
        for (i, a) in self.coeffs[..order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..order - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::new(&self.prefactor + &other.prefactor, coeffs)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn invert(&self) -> Result<Self> {
        let lead = &self.coeffs[0];
        if lead.is_zero() {
            return Err(Error::NonUnitLeadingCoefficient);
        }
        let inv_lead = lead.recip();
        let n = self.order();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv_lead.clone());
        for k in 1..n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &out[k - j];
                }
            }
            out.push(-acc * &inv_lead);
        }
        Ok(Self::new(-&self.prefactor, out))
    }

    /// `f · (1 + sign·q^e)`, in linear time.
    pub fn mul_binomial(&self, e: usize, sign: i64) -> Self {
        let mut coeffs = self.coeffs.clone();
        if e == 0 {
            let factor = int(1 + sign);
            return self.scale(&factor);
        }
        let s = int(sign);
        for n in (e..coeffs.len()).rev() {
            let term = &self.coeffs[n - e] * &s;
            coeffs[n] += term;
        }
        Self::new(self.prefactor.clone(), coeffs)
    }

    /// `f / (1 + sign·q^e)` for `e ≥ 1`, in linear time.
    pub fn div_binomial(&self, e: usize, sign: i64) -> Self {
        assert!(e >= 1, "binomial divisor must have positive exponent");
        let s = int(sign);
        let mut coeffs = self.coeffs.clone();
        for n in e..coeffs.len() {
            let term = &coeffs[n - e] * &s;
            coeffs[n] -= term;
        }
        Self::new(self.prefactor.clone(), coeffs)
    }

    /// The operator `q d/dq`.
    pub fn q_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * (&self.prefactor + int(n as i64)))
            .collect();
        Self::new(self.prefactor.clone(), coeffs)
    }

    /// `q ↦ q^k`.
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1, "substitution power must be positive");
        let mut coeffs = vec![Rational::zero(); self.order() * k];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n * k] = c.clone();
        }
        Self::new(&self.prefactor * int(k as i64), coeffs)
    }

    pub fn coefficient_at(&self, exponent: &Rational) -> Result<Rational> {
        let offset = exponent - &self.prefactor;
        integer_part(&offset)
            .filter(|&n| n >= 0 && (n as usize) < self.order())
            .map(|n| self.coeffs[n as usize].clone())
            .ok_or_else(|| Error::ExponentOutOfRange(format_rational(exponent)))
    }

    /// Numeric value at `q = exp(2πiτ)`, with `q^a` taken on the branch
    /// `exp(2πi a τ)`.
    pub fn eval_at_tau(&self, tau: Complex64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
        let q = (two_pi_i * tau).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * q + rational_to_f64(c);
        }
        acc * (two_pi_i * tau * rational_to_f64(&self.prefactor)).exp()
    }

    /// Integer coefficients as `BigInt`s, or `None` if any is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Smallest `n` with `self.coeffs[n] != other.coeffs[n]` over the shared
    /// range, after checking the prefactors agree.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        if self.prefactor != other.prefactor {
            return Some(0);
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| a != b)
    }

    pub fn to_record(&self) -> SeriesRecord {
        SeriesRecord {
            prefactor: format_rational(&self.prefactor),
            order: self.order(),
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
    }

    pub fn from_record(record: &SeriesRecord) -> Result<Self> {
        if record.coeffs.len() != record.order || record.order == 0 {
            return Err(Error::InvalidArgument(format!(
                "series record declares order {} but stores {} coefficients",
                record.order,
                record.coeffs.len()
            )));
        }
        let coeffs = record
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(parse_rational(&record.prefactor)?, coeffs))
    }
}

impl fmt::Display for FracQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({})*(", format_rational(&self.prefactor))?;
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match n {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "q^{n}")?,
                _ => write!(f, "{a}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{}))", self.order())
    }
}

/// Wire form: `{prefactor: "p/q", order: N, coeffs: ["p/q", …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub prefactor: String,
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl Serialize for FracQSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FracQSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let record = SeriesRecord::deserialize(d)?;
        Self::from_record(&record).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(prefactor: Rational, c: &[i64]) -> FracQSeries {
        FracQSeries::from_integers(prefactor, c)
    }

    #[test]
    fn add_cancels() {
        let f = s(int(0), &[1, -1, 0, 0]);
        let g = s(int(0), &[0, 1, 0, 0]);
        assert_eq!(f.add(&g).unwrap(), s(int(0), &[1, 0, 0, 0]));
    }

    #[test]
    fn add_aligns_prefactors() {
        let f = s(rat(1, 2), &[1, 1]);
        let g = s(rat(3, 2), &[1]);
        let sum = f.add(&g).unwrap();
        assert_eq!(sum, s(rat(1, 2), &[1, 2]));
        assert_eq!(g.add(&f).unwrap(), sum);
    }

    #[test]
    fn add_rejects_fractional_shift() {
        let f = s(rat(1, 2), &[1]);
        let g = s(rat(1, 3), &[1]);
        assert!(matches!(f.add(&g), Err(Error::NonAlignablePrefactor(..))));
    }

    #[test]
    fn add_rejects_shift_beyond_order() {
        let f = s(int(0), &[1, 2]);
        let g = s(int(5), &[1, 2]);
        assert!(f.add(&g).is_err());
    }

    #[test]
    fn telescoping_product() {
        let n = 12;
        let geometric = s(int(0), &vec![1; n]);
        let mut one_minus_q = vec![0; n];
        one_minus_q[0] = 1;
        one_minus_q[1] = -1;
        let prod = s(int(0), &one_minus_q).mul(&geometric);
        assert_eq!(prod, FracQSeries::one(n));
    }

    #[test]
    fn prefactors_add_under_mul() {
        let a = FracQSeries::monomial(rat(-1, 60), int(1), 3);
        let b = FracQSeries::monomial(rat(11, 60), int(1), 3);
        let p = a.mul(&b);
        assert_eq!(p.prefactor(), &rat(1, 6));
        assert_eq!(p.coeffs()[0], int(1));
    }

    #[test]
    fn square_of_one_plus_q() {
        let f = s(int(0), &[1, 1, 0, 0]);
        assert_eq!(f.mul(&f), s(int(0), &[1, 2, 1, 0]));
        assert_eq!(f.pow(2), s(int(0), &[1, 2, 1, 0]));
    }

    #[test]
    fn invert_geometric() {
        let f = s(int(0), &[1, -1, 0, 0, 0, 0]);
        assert_eq!(f.invert().unwrap(), s(int(0), &[1; 6]));
    }

    #[test]
    fn invert_negates_prefactor() {
        let f = FracQSeries::monomial(rat(1, 24), int(1), 4);
        assert_eq!(f.invert().unwrap().prefactor(), &rat(-1, 24));
    }

    #[test]
    fn invert_zero_fails() {
        assert_eq!(
            FracQSeries::zero(5).invert(),
            Err(Error::NonUnitLeadingCoefficient)
        );
    }

    #[test]
    fn binomial_helpers_match_general_ops() {
        let f = s(rat(1, 5), &[3, 1, 4, 1, 5, 9, 2, 6]);
        let mut b = vec![0; 8];
        b[0] = 1;
        b[3] = -1;
        let binom = s(int(0), &b);
        assert_eq!(f.mul_binomial(3, -1), f.mul(&binom));
        let quotient = f.mul(&binom.invert().unwrap());
        assert_eq!(f.div_binomial(3, -1), quotient);
    }

    #[test]
    fn derivative_power_rule() {
        let f = FracQSeries::monomial(rat(-1, 60), int(1), 3);
        assert_eq!(f.q_derivative().coeffs()[0], rat(-1, 60));
        assert!(FracQSeries::one(4).q_derivative().is_zero());
        let g = s(rat(11, 60), &[1, 1]).q_derivative();
        assert_eq!(g.coeffs(), &[rat(11, 60), rat(71, 60)]);
        assert_eq!(g.prefactor(), &rat(11, 60));
    }

    #[test]
    fn substitution() {
        let f = s(int(0), &[1, -1]).substitute_power(5);
        assert_eq!(f.coefficient_at(&int(5)).unwrap(), int(-1));
        assert_eq!(f.coefficient_at(&int(1)).unwrap(), int(0));
        let g = FracQSeries::monomial(rat(1, 24), int(1), 1).substitute_power(2);
        assert_eq!(g.prefactor(), &rat(1, 12));
        let h = s(int(0), &[1, 1, 1]).substitute_power(3);
        let expected: Vec<i64> = (0..9).map(|n| i64::from(n % 3 == 0)).collect();
        assert_eq!(h, s(int(0), &expected));
    }

    #[test]
    fn coefficient_lookup() {
        let f = s(rat(-1, 60), &[1, 2]);
        assert_eq!(f.coefficient_at(&rat(-1, 60)).unwrap(), int(1));
        assert_eq!(f.coefficient_at(&rat(59, 60)).unwrap(), int(2));
        let g = s(int(0), &[1, 1]);
        assert!(matches!(
            g.coefficient_at(&rat(1, 2)),
            Err(Error::ExponentOutOfRange(_))
        ));
        assert!(g.coefficient_at(&int(2)).is_err());
        assert!(g.coefficient_at(&int(-1)).is_err());
    }

    #[test]
    fn normalize_moves_zeros_into_prefactor() {
        let f = s(rat(1, 3), &[0, 0, 2, 1]).normalize();
        assert_eq!(f, s(rat(7, 3), &[2, 1]));
    }

    #[test]
    fn rational_format() {
        assert_eq!(format_rational(&int(0)), "0/1");
        assert_eq!(format_rational(&rat(2, -4)), "-1/2");
        assert_eq!(format_rational(&int(7)), "7/1");
        assert_eq!(parse_rational("-22/5").unwrap(), rat(-22, 5));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn serialization_is_stable() {
        let f = s(rat(-1, 60), &[1, 0, -3]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"prefactor":"-1/60","order":3,"coeffs":["1/1","0/1","-3/1"]}"#
        );
        let back: FracQSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn record_with_wrong_length_is_rejected() {
        let r = SeriesRecord {
            prefactor: "0/1".into(),
            order: 3,
            coeffs: vec!["1/1".into()],
        };
        assert!(FracQSeries::from_record(&r).is_err());
    }

    #[test]
    fn display_is_readable() {
        let f = s(rat(1, 2), &[1, -2, 0, 1]);
        assert_eq!(f.to_string(), "q^(1/2)*(1 - 2*q^1 + q^3 + O(q^4))");
    }
}
