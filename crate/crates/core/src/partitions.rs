//! Partition counters used as independent oracles for the character and
//! product constructions.
//!
//! Every constraint here is hereditary: dropping the smallest part of a valid
//! partition leaves a valid partition. That lets the backtracking enumerator
//! count all sizes `0..=n_max` in a single depth-first pass, and lets the
//! dynamic program work over part frequencies `f_1, f_2, …` value by value.
//!
//! A window `(k, gap)` asks that `b_j − b_{j+k−1} ≥ gap` for the parts sorted
//! in weakly decreasing order. Equivalently, every run of `gap` consecutive
//! integers holds at most `k − 1` parts, which is the form the dynamic
//! program uses. A minimum gap `d` between consecutive parts is the window
//! `(2, d)`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::CheckReport;

/// Largest size the backtracking enumerator is asked to cover.
pub const ENUMERATION_LIMIT: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueSet {
    pub modulus: usize,
    pub residues: BTreeSet<usize>,
}

impl ResidueSet {
    pub fn new(modulus: usize, residues: impl IntoIterator<Item = usize>) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Self {
            modulus,
            residues: residues.into_iter().map(|r| r % modulus).collect(),
        }
    }

    pub fn contains(&self, part: usize) -> bool {
        self.residues.contains(&(part % self.modulus))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub k: usize,
    pub gap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionConstraint {
    pub min_part: usize,
    pub min_gap: usize,
    pub allowed_residues: Option<ResidueSet>,
    pub window: Option<Window>,
    /// Upper bound on how many parts may equal 1.
    pub max_ones: Option<usize>,
}

impl Default for PartitionConstraint {
    fn default() -> Self {
        Self {
            min_part: 1,
            min_gap: 0,
            allowed_residues: None,
            window: None,
            max_ones: None,
        }
    }
}

impl PartitionConstraint {
    pub fn unrestricted() -> Self {
        Self::default()
    }

    /// Parts at least `min_part`, consecutive parts differing by at least `min_gap`.
    pub fn gap(min_part: usize, min_gap: usize) -> Self {
        Self {
            min_part,
            min_gap,
            ..Self::default()
        }
    }

    pub fn residues(modulus: usize, residues: impl IntoIterator<Item = usize>) -> Self {
        Self {
            allowed_residues: Some(ResidueSet::new(modulus, residues)),
            ..Self::default()
        }
    }

    pub fn window(k: usize, gap: usize) -> Self {
        Self {
            window: Some(Window { k, gap }),
            ..Self::default()
        }
    }

    pub fn with_max_ones(mut self, max_ones: usize) -> Self {
        self.max_ones = Some(max_ones);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.min_gap > 0 && self.window.is_some() {
            return Err(Error::ConflictingConstraint);
        }
        if self.min_part == 0 {
            return Err(Error::InvalidArgument("min_part must be at least 1".into()));
        }
        if let Some(w) = self.window {
            if w.k < 2 {
                return Err(Error::InvalidArgument("window length k must be at least 2".into()));
            }
        }
        Ok(())
    }

    fn effective_window(&self) -> Option<Window> {
        match self.window {
            Some(w) => Some(w),
            None if self.min_gap > 0 => Some(Window { k: 2, gap: self.min_gap }),
            None => None,
        }
    }

    fn part_allowed(&self, part: usize) -> bool {
        part >= self.min_part
            && self
                .allowed_residues
                .as_ref()
                .is_none_or(|r| r.contains(part))
    }
}

/// `values[n]` counts partitions of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    values: Vec<BigInt>,
}

impl CountTable {
    pub fn new(values: Vec<BigInt>) -> Self {
        debug_assert!(values.first().is_some_and(One::is_one));
        Self { values }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, n: usize) -> &BigInt {
        &self.values[n]
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// Decimal strings, the serialized form.
    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(ToString::to_string).collect()
    }
}

impl Serialize for CountTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CountTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let values = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if values.first().is_none_or(|v| !v.is_one()) {
            return Err(serde::de::Error::custom("count table must start with 1"));
        }
        Ok(Self { values })
    }
}

/// Counts by depth-first enumeration of weakly decreasing part sequences.
pub fn enumerate_counts(n_max: usize, c: &PartitionConstraint) -> Result<Vec<u64>> {
    c.validate()?;
    let window = c.effective_window();
    let mut counts = vec![0u64; n_max + 1];
    let mut parts = Vec::new();
    enumerate_rec(n_max, c, window, &mut parts, 0, n_max, 0, &mut counts);
    Ok(counts)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    n_max: usize,
    c: &PartitionConstraint,
    window: Option<Window>,
    parts: &mut Vec<usize>,
    sum: usize,
    largest: usize,
    ones: usize,
    counts: &mut [u64],
) {
    counts[sum] += 1;
    let upper = largest.min(n_max - sum);
    for part in (c.min_part..=upper).rev() {
        if !c.part_allowed(part) {
            continue;
        }
        let ones = ones + usize::from(part == 1);
        if c.max_ones.is_some_and(|m| ones > m) {
            continue;
        }
        if let Some(w) = window {
            let len = parts.len();
            if len + 1 >= w.k && parts[len + 1 - w.k] < part + w.gap {
                continue;
            }
        }
        parts.push(part);
        enumerate_rec(n_max, c, window, parts, sum + part, part, ones, counts);
        parts.pop();
    }
}

/// Counts by dynamic programming over part frequencies.
pub fn dp_counts(n_max: usize, c: &PartitionConstraint) -> Result<Vec<BigInt>> {
    c.validate()?;
    let window = c.effective_window();
    // The state is the frequencies of the previous `gap − 1` values.
    let memory = window.map_or(0, |w| w.gap.saturating_sub(1));
    let mut states: BTreeMap<Vec<usize>, Vec<BigInt>> = BTreeMap::new();
    let mut initial = vec![BigInt::zero(); n_max + 1];
    initial[0] = BigInt::one();
    states.insert(vec![0; memory], initial);

    for value in 1..=n_max {
        let mut next: BTreeMap<Vec<usize>, Vec<BigInt>> = BTreeMap::new();
        for (recent, counts) in &states {
            let mut max_f = if c.part_allowed(value) { n_max / value } else { 0 };
            if value == 1 {
                if let Some(m) = c.max_ones {
                    max_f = max_f.min(m);
                }
            }
            if let Some(w) = window {
                if w.gap > 0 {
                    let used: usize = recent.iter().sum();
                    max_f = max_f.min((w.k - 1).saturating_sub(used));
                }
            }
            for f in 0..=max_f {
                let mut key = recent.clone();
                if memory > 0 {
                    key.remove(0);
                    key.push(f);
                }
                let target = next
                    .entry(key)
                    .or_insert_with(|| vec![BigInt::zero(); n_max + 1]);
                let shift = f * value;
                for s in 0..=(n_max - shift) {
                    if !counts[s].is_zero() {
                        target[s + shift] += &counts[s];
                    }
                }
            }
        }
        states = next;
    }

    let mut total = vec![BigInt::zero(); n_max + 1];
    for counts in states.values() {
        for (t, v) in total.iter_mut().zip(counts) {
            *t += v;
        }
    }
    Ok(total)
}

/// Counts of constrained partitions for every `n ≤ n_max`. Sizes up to
/// [`ENUMERATION_LIMIT`] are counted twice, by enumeration and by dynamic
/// programming, and must agree.
pub fn count_partitions(n_max: usize, c: &PartitionConstraint) -> Result<CountTable> {
    let dp = dp_counts(n_max, c)?;
    let enumerated = enumerate_counts(n_max.min(ENUMERATION_LIMIT), c)?;
    if let Some(n) = enumerated
        .iter()
        .zip(&dp)
        .position(|(e, d)| BigInt::from(*e) != *d)
    {
        return Err(Error::OracleDisagreement(n));
    }
    Ok(CountTable::new(dp))
}

/// `p(n)` by Euler's pentagonal-number recurrence.
pub fn unrestricted_p(n_max: usize) -> CountTable {
    let mut p = vec![BigInt::zero(); n_max + 1];
    p[0] = BigInt::one();
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let positive = k % 2 == 1;
            let mut term = p[n - g1].clone();
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= n {
                term += &p[n - g2];
            }
            if positive {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p[n] = acc;
    }
    CountTable::new(p)
}

/// Both sides of the Andrews-Gordon identity for `(k, i)`, each counted by
/// enumeration: window `(k, 2)` with at most `i − 1` ones on the left, parts
/// `≢ 0, ±i (mod 2k+1)` on the right.
pub fn gordon_check(k: usize, i: usize, n_max: usize) -> Result<CheckReport> {
    if k < 2 || i < 1 || i > k {
        return Err(Error::InvalidArgument(format!(
            "Andrews-Gordon needs 2 <= k and 1 <= i <= k, got k = {k}, i = {i}"
        )));
    }
    if n_max > ENUMERATION_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "n_max = {n_max} exceeds the enumeration limit {ENUMERATION_LIMIT}"
        )));
    }
    let modulus = 2 * k + 1;
    let difference_side = PartitionConstraint::window(k, 2).with_max_ones(i - 1);
    let allowed = (1..modulus).filter(|&r| r != i && r != modulus - i);
    let congruence_side = PartitionConstraint::residues(modulus, allowed);
    let lhs = enumerate_counts(n_max, &difference_side)?;
    let rhs = enumerate_counts(n_max, &congruence_side)?;
    let counterexamples: Vec<serde_json::Value> = lhs
        .iter()
        .zip(&rhs)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(n, (a, b))| serde_json::json!({"n": n, "difference": a, "congruence": b}))
        .collect();
    let pass = counterexamples.is_empty();
    Ok(CheckReport::exact("andrews_gordon", pass)
        .param("k", k)
        .param("i", i)
        .param("n_max", n_max)
        .sides(
            format!("{lhs:?}"),
            format!("{rhs:?}"),
        )
        .details(serde_json::json!({ "counterexamples": counterexamples })))
}

/// `(log p(n), π√(2n/3))`, the exact log-count against its leading
/// asymptotic growth.
pub fn growth_probe(n: usize) -> Result<(f64, f64)> {
    if !(100..=5000).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "growth probe expects 100 <= n <= 5000, got {n}"
        )));
    }
    let p = unrestricted_p(n);
    let log_p = p.get(n).to_f64().map(f64::ln).unwrap_or(f64::NAN);
    let leading = std::f64::consts::PI * (2.0 * n as f64 / 3.0).sqrt();
    Ok((log_p, leading))
}
