//! Polynomials in the central charge `c` and the lowest weight `h` with
//! rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::series::{format_rational, int, Rational};

/// `Σ a_{ij} c^i h^j`, keyed by `(i, j)`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn constant(a: Rational) -> Self {
        Self::term(a, 0, 0)
    }

    pub fn term(a: Rational, c_pow: u32, h_pow: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !a.is_zero() {
            terms.insert((c_pow, h_pow), a);
        }
        Self { terms }
    }

    pub fn c() -> Self {
        Self::term(Rational::one(), 1, 0)
    }

    pub fn h() -> Self {
        Self::term(Rational::one(), 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, c_pow: u32, h_pow: u32) -> Rational {
        self.terms.get(&(c_pow, h_pow)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * s)).collect(),
        }
    }

    pub fn eval(&self, c: &Rational, h: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), a)| a * pow(c, i) * pow(h, j))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Substitutes `h = value`, leaving a polynomial in `c` alone.
    pub fn at_h(&self, value: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            out = out + Self::term(a * pow(value, j), i, 0);
        }
        out
    }

    /// Coefficients `[a_0, a_1, …]` of a polynomial that only involves `c`.
    pub fn c_coefficients(&self) -> Option<Vec<Rational>> {
        if self.terms.keys().any(|&(_, j)| j != 0) {
            return None;
        }
        let degree = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        Some((0..=degree).map(|i| self.coefficient(i, 0)).collect())
    }

    fn add_term(&mut self, key: (u32, u32), a: Rational) {
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += a;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }
}

fn pow(x: &Rational, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

impl Zero for Poly2 {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly2 {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl Add for Poly2 {
    type Output = Poly2;

    fn add(mut self, rhs: Poly2) -> Poly2 {
        for (k, v) in rhs.terms {
            self.add_term(k, v);
        }
        self
    }
}

impl Neg for Poly2 {
    type Output = Poly2;

    fn neg(self) -> Poly2 {
        self.scale(&int(-1))
    }
}

impl Sub for Poly2 {
    type Output = Poly2;

    fn sub(self, rhs: Poly2) -> Poly2 {
        self + (-rhs)
    }
}

impl Mul for Poly2 {
    type Output = Poly2;

    fn mul(self, rhs: Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), a * b);
            }
        }
        out
    }
}

/// Terms in descending total degree, then descending power of `c`, e.g.
/// `(1/2)*c^2 + 4*h`.
impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (idx, key) in keys.iter().enumerate() {
            let a = &self.terms[key];
            let negative = a.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = a.abs();
            let monomial = monomial_string(key.0, key.1);
            let coeff = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("({})", format_rational(&mag))
            };
            if monomial.is_empty() {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{coeff}*{monomial}")?;
            }
        }
        Ok(())
    }
}

fn monomial_string(c_pow: u32, h_pow: u32) -> String {
    let factor = |name: &str, k: u32| match k {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{k}")),
    };
    [factor("c", c_pow), factor("h", h_pow)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

/// Determinant by expansion along rows, memoized over column subsets.
pub fn determinant(m: &[Vec<Poly2>]) -> Poly2 {
    let n = m.len();
    if n == 0 {
        return Poly2::one();
    }
    assert!(n <= 20, "matrix too large for subset expansion");
    let mut minors = vec![Poly2::zero(); 1 << n];
    minors[0] = Poly2::one();
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = Poly2::zero();
        for col in 0..n {
            if mask & (1 << col) == 0 || m[row][col].is_zero() {
                continue;
            }
            let rest = mask & !(1 << col);
            if minors[rest].is_zero() {
                continue;
            }
            let above = (mask >> (col + 1)).count_ones();
            let term = m[row][col].clone() * minors[rest].clone();
            acc = if above % 2 == 0 { acc + term } else { acc - term };
        }
        minors[mask] = acc;
    }
    minors[(1 << n) - 1].clone()
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn rational_determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for k in col..n {
                let t = &factor * &a[col][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

/// Distinct rational roots of `Σ a_i c^i`, by the rational root theorem.
pub fn rational_roots(coeffs: &[Rational]) -> Vec<Rational> {
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let mut ints: Vec<BigInt> = coeffs
        .iter()
        .map(|a| (a * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    if ints.is_empty() {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let low = ints.iter().position(|a| !a.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Rational::zero());
    }
    let ints = &ints[low..];
    if ints.len() < 2 {
        return roots;
    }
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let divisors = |x: &BigInt| -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= *x {
            if (x % &d).is_zero() {
                out.push(d.clone());
                out.push(x / &d);
            }
            d += 1;
        }
        out
    };
    let eval = |r: &Rational| {
        ints.iter()
            .rev()
            .fold(Rational::zero(), |acc, a| acc * r + Rational::from_integer(a.clone()))
    };
    for p in divisors(&a0) {
        for q in divisors(&an) {
            for sign in [1, -1] {
                let r = Rational::new(&p * sign, q.clone());
                if !roots.contains(&r) && eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn display_format() {
        let p = Poly2::c() * Poly2::c() * Poly2::constant(rat(1, 2)) + Poly2::h().scale(&int(4));
        assert_eq!(p.to_string(), "(1/2)*c^2 + 4*h");
        let q = Poly2::constant(int(3)) - Poly2::c() * Poly2::h();
        assert_eq!(q.to_string(), "-c*h + 3");
        assert_eq!(Poly2::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic_cancels() {
        let p = Poly2::c() + Poly2::h();
        let q = p.clone() * p.clone() - (Poly2::c() * Poly2::c() + Poly2::h() * Poly2::h());
        assert_eq!(q, (Poly2::c() * Poly2::h()).scale(&int(2)));
        assert!((p.clone() - p).is_zero());
    }

    #[test]
    fn determinant_matches_rational_route() {
        let m = vec![
            vec![Poly2::c(), Poly2::h(), Poly2::one()],
            vec![Poly2::one(), Poly2::c() + Poly2::h(), Poly2::c()],
            vec![Poly2::h(), Poly2::one(), Poly2::c() * Poly2::h()],
        ];
        let det = determinant(&m);
        let (c, h) = (rat(3, 7), rat(-5, 2));
        let numeric: Vec<Vec<Rational>> = m
            .iter()
            .map(|row| row.iter().map(|e| e.eval(&c, &h)).collect())
            .collect();
        assert_eq!(det.eval(&c, &h), rational_determinant(&numeric));
    }

    #[test]
    fn roots() {
        // c²(5c+22)/2
        let coeffs = vec![int(0), int(0), int(11), rat(5, 2)];
        assert_eq!(rational_roots(&coeffs), vec![rat(-22, 5), int(0)]);
        assert_eq!(rational_roots(&[int(1), int(0), int(1)]), Vec::<Rational>::new());
    }
}
