//! The Virasoro bracket and Gram matrices of lowest-weight modules.
//!
//! Modes follow the raising convention: `L_m` with `m > 0` raises the
//! `L_0`-eigenvalue by `m`, so a lowest-weight vector `|h⟩` is killed by every
//! `L_m` with `m < 0`. The bracket reads
//! `[L_m, L_n] = (n − m) L_{m+n} + (c/12)(n³ − n) δ_{m+n,0}`, and the adjoint
//! of `L_m` is `L_{−m}`.

use std::collections::HashMap;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::series::{int, rat, Rational};

use super::poly::{determinant, rational_determinant, Poly2};

pub const MAX_GRAM_LEVEL: usize = 6;

/// `[L_m, L_n] = linear·L_{m+n} + central·c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub linear: i64,
    pub target: i64,
    pub central: Rational,
}

pub fn bracket(m: i64, n: i64) -> Bracket {
    let central = if m + n == 0 {
        rat(n * n * n - n, 12)
    } else {
        Rational::zero()
    };
    Bracket { linear: n - m, target: m + n, central }
}

/// `L_{n₁} ⋯ L_{n_k} |h⟩` with `n₁ ≥ … ≥ n_k ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VirasoroMonomial {
    modes: Vec<u32>,
}

impl VirasoroMonomial {
    pub fn new(mut modes: Vec<u32>) -> Result<Self> {
        if modes.contains(&0) {
            return Err(Error::InvalidArgument("monomial modes must be positive".into()));
        }
        modes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { modes })
    }

    pub fn modes(&self) -> &[u32] {
        &self.modes
    }

    pub fn level(&self) -> u32 {
        self.modes.iter().sum()
    }
}

impl std::fmt::Display for VirasoroMonomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.modes.is_empty() {
            return write!(f, "|h>");
        }
        for m in &self.modes {
            write!(f, "L{m}")?;
        }
        write!(f, "|h>")
    }
}

impl Serialize for VirasoroMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Partitions of `level` into parts `≥ min_part`, each weakly decreasing,
/// listed in ascending lexicographic order.
pub fn level_basis(level: usize, min_part: usize) -> Vec<VirasoroMonomial> {
    fn rec(rest: usize, max: usize, min: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in min..=max.min(rest) {
            cur.push(part as u32);
            rec(rest - part, part, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(level, level, min_part.max(1), &mut Vec::new(), &mut out);
    out.sort();
    out.into_iter()
        .map(|modes| VirasoroMonomial { modes })
        .collect()
}

/// Coefficient ring for vacuum expectation values.
pub trait GramScalar: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> {
    fn scale(&self, r: &Rational) -> Self;
}

impl GramScalar for Poly2 {
    fn scale(&self, r: &Rational) -> Self {
        Poly2::scale(self, r)
    }
}

impl GramScalar for Rational {
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

/// Evaluates `⟨h| L_{w₀} L_{w₁} ⋯ |h⟩` by commuting lowering modes to the
/// right, where they annihilate `|h⟩`.
pub struct Expectation<S: GramScalar> {
    c: S,
    h: S,
    memo: HashMap<Vec<i64>, S>,
}

impl<S: GramScalar> Expectation<S> {
    pub fn new(c: S, h: S) -> Self {
        Self { c, h, memo: HashMap::new() }
    }

    pub fn eval(&mut self, word: &[i64]) -> S {
        if word.is_empty() {
            return S::one();
        }
        if word.iter().sum::<i64>() != 0 {
            return S::zero();
        }
        if let Some(v) = self.memo.get(word) {
            return v.clone();
        }
        let value = self.reduce(word);
        self.memo.insert(word.to_vec(), value.clone());
        value
    }

    fn reduce(&mut self, word: &[i64]) -> S {
        let last = word.len() - 1;
        if word[last] < 0 || word[0] > 0 {
            return S::zero();
        }
        if word[last] == 0 {
            return self.h.clone() * self.eval(&word[..last]);
        }
        let Some(i) = word.iter().rposition(|&m| m < 0) else {
            // No lowering modes and zero total weight: every mode is L_0.
            return (0..word.len()).fold(S::one(), |acc, _| acc * self.h.clone());
        };
        // L_a L_b = L_b L_a + (b − a) L_{a+b} + central
        let (a, b) = (word[i], word[i + 1]);
        let mut swapped = word.to_vec();
        swapped.swap(i, i + 1);
        let mut total = self.eval(&swapped);
        let br = bracket(a, b);
        if br.linear != 0 {
            let mut merged = word[..i].to_vec();
            merged.push(br.target);
            merged.extend_from_slice(&word[i + 2..]);
            total = total + self.eval(&merged).scale(&int(br.linear));
        }
        if !br.central.is_zero() {
            let mut rest = word[..i].to_vec();
            rest.extend_from_slice(&word[i + 2..]);
            total = total + (self.c.clone() * self.eval(&rest)).scale(&br.central);
        }
        total
    }

    /// `⟨a|b⟩` for two basis monomials.
    pub fn inner(&mut self, a: &VirasoroMonomial, b: &VirasoroMonomial) -> S {
        let mut word: Vec<i64> = a.modes.iter().rev().map(|&m| -(m as i64)).collect();
        word.extend(b.modes.iter().map(|&m| m as i64));
        self.eval(&word)
    }
}

/// Gram matrix of a level of the Verma module with polynomial entries in
/// `(c, h)`. In the vacuum module `h = 0` and `L_1|0⟩ = 0`, so the basis only
/// uses modes `≥ 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct VermaGram {
    pub level: usize,
    pub vacuum: bool,
    pub basis: Vec<VirasoroMonomial>,
    pub entries: Vec<Vec<Poly2>>,
}

impl VermaGram {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dimension();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn determinant(&self) -> Poly2 {
        determinant(&self.entries)
    }

    pub fn evaluate(&self, c: &Rational, h: &Rational) -> Vec<Vec<Rational>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.eval(c, h)).collect())
            .collect()
    }

    pub fn determinant_at(&self, c: &Rational, h: &Rational) -> Rational {
        rational_determinant(&self.evaluate(c, h))
    }
}

impl Serialize for VermaGram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let entries: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect();
        let mut st = s.serialize_struct("VermaGram", 4)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("vacuum", &self.vacuum)?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

fn check_level(level: usize) -> Result<()> {
    if level == 0 {
        return Err(Error::InvalidArgument("Gram level must be at least 1".into()));
    }
    if level > MAX_GRAM_LEVEL {
        return Err(Error::LevelTooLarge(level, MAX_GRAM_LEVEL));
    }
    Ok(())
}

fn gram_entries<S: GramScalar>(basis: &[VirasoroMonomial], c: S, h: S) -> Vec<Vec<S>> {
    let mut ev = Expectation::new(c, h);
    basis
        .iter()
        .map(|a| basis.iter().map(|b| ev.inner(a, b)).collect())
        .collect()
}

pub fn gram_matrix(level: usize, vacuum: bool) -> Result<VermaGram> {
    check_level(level)?;
    let basis = level_basis(level, if vacuum { 2 } else { 1 });
    let h = if vacuum { Poly2::zero() } else { Poly2::h() };
    let entries = gram_entries(&basis, Poly2::c(), h);
    Ok(VermaGram { level, vacuum, basis, entries })
}

/// The same Gram matrix computed directly over the rationals at a point.
pub fn gram_matrix_at(level: usize, vacuum: bool, c: &Rational, h: &Rational) -> Result<Vec<Vec<Rational>>> {
    check_level(level)?;
    let basis = level_basis(level, if vacuum { 2 } else { 1 });
    let h = if vacuum { Rational::zero() } else { h.clone() };
    Ok(gram_entries(&basis, c.clone(), h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c_pow: u32, h_pow: u32, a: Rational) -> Poly2 {
        Poly2::term(a, c_pow, h_pow)
    }

    #[test]
    fn bracket_examples() {
        let b = bracket(-2, 2);
        assert_eq!((b.linear, b.target, b.central), (4, 0, rat(1, 2)));
        let b = bracket(-4, 4);
        assert_eq!((b.linear, b.central), (8, int(5)));
        let b = bracket(1, 1);
        assert_eq!((b.linear, b.central), (0, int(0)));
    }

    #[test]
    fn level_two_generic() {
        let g = gram_matrix(2, false).unwrap();
        assert_eq!(g.basis, level_basis(2, 1));
        assert_eq!(g.basis[0].modes(), &[1, 1]);
        let expected = vec![
            vec![p(0, 2, int(8)) + p(0, 1, int(4)), p(0, 1, int(6))],
            vec![p(0, 1, int(6)), p(0, 1, int(4)) + p(1, 0, rat(1, 2))],
        ];
        assert_eq!(g.entries, expected);
    }

    #[test]
    fn level_four_vacuum() {
        let g = gram_matrix(4, true).unwrap();
        assert_eq!(g.basis.iter().map(|b| b.modes().to_vec()).collect::<Vec<_>>(), vec![vec![2, 2], vec![4]]);
        let expected = vec![
            vec![p(2, 0, rat(1, 2)) + p(1, 0, int(4)), p(1, 0, int(3))],
            vec![p(1, 0, int(3)), p(1, 0, int(5))],
        ];
        assert_eq!(g.entries, expected);
        assert_eq!(g.determinant(), p(3, 0, rat(5, 2)) + p(2, 0, int(11)));
    }

    #[test]
    fn level_one_vacuum_is_empty() {
        let g = gram_matrix(1, true).unwrap();
        assert_eq!(g.dimension(), 0);
    }

    #[test]
    fn level_limits() {
        assert_eq!(gram_matrix(7, false), Err(Error::LevelTooLarge(7, 6)));
        assert!(gram_matrix(0, true).is_err());
    }

    #[test]
    fn level_one_norm() {
        let g = gram_matrix(1, false).unwrap();
        assert_eq!(g.entries, vec![vec![p(0, 1, int(2))]]);
    }

    #[test]
    fn basis_sizes() {
        let sizes: Vec<usize> = (1..=6).map(|n| level_basis(n, 1).len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 5, 7, 11]);
        let vac: Vec<usize> = (1..=6).map(|n| level_basis(n, 2).len()).collect();
        assert_eq!(vac, vec![0, 1, 1, 2, 2, 4]);
    }

    #[test]
    fn serialized_entries_are_polynomial_strings() {
        let g = gram_matrix(2, false).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["entries"][1][1], "(1/2)*c + 4*h");
        assert_eq!(v["basis"][0], "L1L1|h>");
    }
}
