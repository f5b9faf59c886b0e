//! Named q-series: Dedekind eta, the Eisenstein series E2 and E4, divisor
//! sums, and the Rogers-Ramanujan products G and H.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numeric::{check_upper_half_plane, nome, nome_power, product_cutoff};
use crate::series::{int, rat, FracQSeries, Rational};

/// `σ_k(n)` for `1 ≤ n ≤ N`; index 0 holds 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSumTable {
    kind: u32,
    values: Vec<BigInt>,
}

impl DivisorSumTable {
    pub fn new(kind: u32, n_max: usize) -> Self {
        let mut values = vec![BigInt::zero(); n_max + 1];
        for d in 1..=n_max {
            let dk: BigInt = BigInt::from(d).pow(kind);
            for m in (d..=n_max).step_by(d) {
                values[m] += &dk;
            }
        }
        Self { kind, values }
    }

    pub fn kind(&self) -> u32 {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> &BigInt {
        &self.values[n]
    }
}

/// `η = q^{1/24} ∏_{n≥1} (1 − qⁿ)`.
pub fn dedekind_eta(order: usize) -> FracQSeries {
    let mut eta = FracQSeries::one(order.max(1));
    for n in 1..order {
        eta = eta.mul_binomial(n, -1);
    }
    eta.with_prefactor(rat(1, 24))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EisensteinWeight {
    Two,
    Four,
}

/// `E2 = 1 − 24 Σ σ₁(n)qⁿ`, `E4 = 1 + 240 Σ σ₃(n)qⁿ`.
pub fn eisenstein(weight: EisensteinWeight, order: usize) -> FracQSeries {
    let order = order.max(1);
    let (kind, scale) = match weight {
        EisensteinWeight::Two => (1, -24),
        EisensteinWeight::Four => (3, 240),
    };
    let sigma = DivisorSumTable::new(kind, order - 1);
    let scale = BigInt::from(scale);
    let coeffs: Vec<BigInt> = (0..order)
        .map(|n| {
            if n == 0 {
                BigInt::one()
            } else {
                sigma.get(n) * &scale
            }
        })
        .collect();
    FracQSeries::from_bigints(Rational::zero(), &coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RogersRamanujan {
    /// `∏ 1/((1−q^{5n+1})(1−q^{5n+4}))`
    G,
    /// `∏ 1/((1−q^{5n+2})(1−q^{5n+3}))`
    H,
}

impl RogersRamanujan {
    pub fn residues(self) -> [usize; 2] {
        match self {
            RogersRamanujan::G => [1, 4],
            RogersRamanujan::H => [2, 3],
        }
    }
}

pub fn rr_product(which: RogersRamanujan, order: usize) -> FracQSeries {
    let order = order.max(1);
    let residues = which.residues();
    let mut out = FracQSeries::one(order);
    for e in 1..order {
        if residues.contains(&(e % 5)) {
            out = out.div_binomial(e, -1);
        }
    }
    out
}

/// Numeric `η(τ)` with the product truncated where `|q|ⁿ < 1e−15`, or at
/// `cutoff` when one is given.
pub fn eta_eval(tau: Complex64, cutoff: Option<usize>) -> Result<Complex64> {
    check_upper_half_plane(tau)?;
    let q = nome(tau);
    let cutoff = cutoff.unwrap_or_else(|| product_cutoff(tau));
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = q;
    for _ in 1..=cutoff {
        prod *= Complex64::new(1.0, 0.0) - qn;
        qn *= q;
    }
    Ok(nome_power(tau, 1.0 / 24.0) * prod)
}

/// Exact constant term of a series with prefactor zero; handy in checks.
pub fn constant_term(f: &FracQSeries) -> Rational {
    f.coefficient_at(&int(0)).unwrap_or_else(|_| Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use std::f64::consts::PI;

    /// Brute-force expansion of `∏_{n=1}^{N} (1 − qⁿ)` through `q^N` by
    /// summing over all subsets of factors.
    fn eta_product_by_subsets(n_max: usize) -> Vec<i64> {
        let mut coeffs = vec![0i64; n_max + 1];
        for mask in 0u32..(1 << n_max) {
            let mut degree = 0;
            let mut sign = 1;
            for bit in 0..n_max {
                if mask & (1 << bit) != 0 {
                    degree += bit + 1;
                    sign = -sign;
                }
            }
            if degree <= n_max {
                coeffs[degree] += sign;
            }
        }
        coeffs
    }

    #[test]
    fn eta_matches_subset_expansion() {
        let brute = eta_product_by_subsets(12);
        assert_eq!(brute, vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
        let eta = dedekind_eta(13);
        assert_eq!(eta.prefactor(), &rat(1, 24));
        let got: Vec<i64> = eta.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect();
        assert_eq!(got, brute);
        assert_eq!(eta.coefficient_at(&rat(1, 24)).unwrap(), int(1));
        assert_eq!(eta.coefficient_at(&rat(25, 24)).unwrap(), int(-1));
    }

    #[test]
    fn eta_double_inversion() {
        let eta = dedekind_eta(60);
        assert_eq!(eta.invert().unwrap().invert().unwrap(), eta);
    }

    #[test]
    fn divisor_sums() {
        let s1 = DivisorSumTable::new(1, 30);
        let s3 = DivisorSumTable::new(3, 30);
        assert_eq!(s1.get(1), &BigInt::from(1));
        for p in [2u64, 3, 5, 7, 11, 13, 29] {
            assert_eq!(s1.get(p as usize), &BigInt::from(1 + p));
            assert_eq!(s3.get(p as usize), &BigInt::from(1 + p * p * p));
        }
        assert_eq!(s1.get(12), &BigInt::from(28));
        assert_eq!(s3.get(2), &BigInt::from(9));
    }

    #[test]
    fn eisenstein_coefficients() {
        let e2 = eisenstein(EisensteinWeight::Two, 10);
        let e4 = eisenstein(EisensteinWeight::Four, 10);
        assert_eq!(constant_term(&e2), int(1));
        assert_eq!(e2.coefficient_at(&int(1)).unwrap(), int(-24));
        assert_eq!(e4.coefficient_at(&int(2)).unwrap(), int(2160));
        assert!(e2.has_integer_coefficients() && e4.has_integer_coefficients());
    }

    #[test]
    fn e4_squared_is_e8() {
        // E8 = 1 + 480 Σ σ₇(n) qⁿ; the weight-8 space is one-dimensional.
        let e4 = eisenstein(EisensteinWeight::Four, 20);
        let sigma7 = DivisorSumTable::new(7, 19);
        let sq = e4.mul(&e4);
        for n in 1..20 {
            let expected = Rational::from_integer(sigma7.get(n) * BigInt::from(480));
            assert_eq!(sq.coeffs()[n], expected, "n = {n}");
        }
    }

    #[test]
    fn rr_low_coefficients() {
        let g = rr_product(RogersRamanujan::G, 10);
        let h = rr_product(RogersRamanujan::H, 10);
        assert_eq!(constant_term(&g), int(1));
        assert_eq!(g.coefficient_at(&int(4)).unwrap(), int(2));
        assert_eq!(h.coefficient_at(&int(4)).unwrap(), int(1));
    }

    #[test]
    fn rr_product_times_factors_is_one() {
        let n = 120;
        let mut g = rr_product(RogersRamanujan::G, n);
        for e in 1..n {
            if e % 5 == 1 || e % 5 == 4 {
                g = g.mul_binomial(e, -1);
            }
        }
        assert_eq!(g, FracQSeries::one(n));
    }

    #[test]
    fn eta_at_large_imaginary_part() {
        let v = eta_eval(Complex64::new(0.0, 10.0), None).unwrap();
        let expected = (-2.0 * PI * 10.0 / 24.0).exp() * (1.0 - (-20.0 * PI).exp());
        assert!((v.norm() - expected).abs() <= 1e-15 * expected);
    }

    #[test]
    fn eta_s_transformation() {
        let tau = Complex64::new(0.3, 1.1);
        let lhs = eta_eval(-tau.inv(), None).unwrap();
        let rhs = (Complex64::new(0.0, -1.0) * tau).sqrt() * eta_eval(tau, None).unwrap();
        assert!((lhs / rhs - 1.0).norm() < 1e-10);
    }

    #[test]
    fn eta_modulus_is_translation_invariant() {
        for tau in [Complex64::new(0.0, 1.0), Complex64::new(0.17, 0.5), Complex64::new(-0.4, 0.8)] {
            let a = eta_eval(tau, None).unwrap().norm();
            let b = eta_eval(tau + 1.0, None).unwrap().norm();
            let c = eta_eval(tau - 1.0, None).unwrap().norm();
            assert!((a - b).abs() < 1e-10 && (a - c).abs() < 1e-10);
        }
    }

    #[test]
    fn eta_numeric_agrees_with_exact_series() {
        let tau = Complex64::new(0.21, 0.6);
        let exact = dedekind_eta(80).eval_at_tau(tau);
        let numeric = eta_eval(tau, None).unwrap();
        assert!((exact - numeric).norm() < 1e-13);
    }

    #[test]
    fn eta_rejects_lower_half_plane() {
        assert!(matches!(
            eta_eval(Complex64::new(0.0, -1.0), None),
            Err(Error::NotInUpperHalfPlane(_))
        ));
        assert!(eta_eval(Complex64::new(1.0, 0.0), None).is_err());
    }
}
