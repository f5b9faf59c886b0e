//! Jacobi theta functions, the K3 elliptic genus, the Appell-Lerch sum, and
//! numeric extraction of the mock-modular remainder's q-expansion.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::boson::pairwise_sum;
use crate::error::{Error, Result};
use crate::numeric::{check_upper_half_plane, two_pi_i, TAIL_TOLERANCE};
use crate::series::{format_rational, int, Rational};
use crate::special::eta_eval;

/// Multiplicity of the Appell-Lerch term in the K3 decomposition.
pub const APPELL_LERCH_MULTIPLICITY: f64 = 24.0;

const ZERO_GUARD: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiPoint {
    pub z: Complex64,
    pub tau: Complex64,
    pub cutoff: i64,
}

impl JacobiPoint {
    /// A point with the smallest cutoff whose dropped theta terms are all
    /// below `1e−15` in modulus.
    pub fn new(z: Complex64, tau: Complex64) -> Result<Self> {
        check_upper_half_plane(tau)?;
        Ok(Self { z, tau, cutoff: theta_terms_needed(z, tau) })
    }

    pub fn with_cutoff(z: Complex64, tau: Complex64, cutoff: i64) -> Result<Self> {
        check_upper_half_plane(tau)?;
        Ok(Self { z, tau, cutoff })
    }

    fn at_z(&self, z: Complex64) -> Self {
        Self { z, tau: self.tau, cutoff: self.cutoff.max(theta_terms_needed(z, self.tau)) }
    }
}

/// `|q^{(n±1/2)²/2} y^{n±1/2}|` bounded by `exp(−2π(y_τ (|n|−1/2)²/2 − |Im z|(|n|+1/2)))`.
fn theta_terms_needed(z: Complex64, tau: Complex64) -> i64 {
    let threshold = -TAIL_TOLERANCE.ln() / (2.0 * PI);
    let mut n = 1i64;
    loop {
        let m = n as f64 - 0.5;
        if tau.im * m * m / 2.0 - z.im.abs() * (m + 1.0) > threshold {
            return n + 2;
        }
        n += 1;
    }
}

fn expi(x: Complex64) -> Complex64 {
    (two_pi_i() * x).exp()
}

fn sign(n: i64) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `θ₁ = −i Σ (−1)ⁿ q^{(n+1/2)²/2} y^{n+1/2}`, `θ₂` without the sign,
/// `θ₃ = Σ q^{n²/2} yⁿ`, `θ₄` with `(−1)ⁿ`.
pub fn jacobi_theta(i: u8, p: &JacobiPoint) -> Result<Complex64> {
    check_upper_half_plane(p.tau)?;
    let half = matches!(i, 1 | 2);
    let alternating = matches!(i, 1 | 4);
    if !(1..=4).contains(&i) {
        return Err(Error::InvalidArgument(format!("theta index must be 1..4, got {i}")));
    }
    let mut re = Vec::with_capacity(2 * p.cutoff as usize + 1);
    let mut im = Vec::with_capacity(re.capacity());
    for n in -p.cutoff..=p.cutoff {
        let nu = n as f64 + if half { 0.5 } else { 0.0 };
        let mut term = expi(p.tau * (nu * nu / 2.0) + p.z * nu);
        if alternating {
            term *= sign(n);
        }
        re.push(term.re);
        im.push(term.im);
    }
    let sum = Complex64::new(pairwise_sum(&re), pairwise_sum(&im));
    Ok(if i == 1 { sum * Complex64::new(0.0, -1.0) } else { sum })
}

/// Holomorphic `8 Σ_{i=2,3,4} (θ_i(z,τ)/θ_i(0,τ))²`.
pub fn elliptic_genus_k3(p: &JacobiPoint) -> Result<Complex64> {
    let origin = p.at_z(Complex64::zero());
    let mut total = Complex64::zero();
    for i in 2..=4u8 {
        let constant = jacobi_theta(i, &origin)?;
        if constant.norm() < ZERO_GUARD {
            return Err(Error::ThetaConstantVanishes(i as usize));
        }
        let ratio = jacobi_theta(i, p)? / constant;
        total += ratio * ratio;
    }
    Ok(total * 8.0)
}

/// `μ(z;τ) = (y^{1/2}/ϑ(z,τ)) Σ (−1)ⁿ q^{n(n+1)/2} yⁿ/(1 − qⁿy)` with
/// `ϑ = Σ (−1)ⁿ q^{(n+1/2)²/2} y^{n+1/2} = iθ₁`.
pub fn appell_lerch_mu(p: &JacobiPoint) -> Result<Complex64> {
    let theta = jacobi_theta(1, p)? * Complex64::new(0.0, 1.0);
    if theta.norm() < ZERO_GUARD {
        return Err(Error::ThetaZeroDivision);
    }
    let mut re = Vec::with_capacity(2 * p.cutoff as usize + 1);
    let mut im = Vec::with_capacity(re.capacity());
    for n in -p.cutoff..=p.cutoff {
        let nf = n as f64;
        let numerator = expi(p.tau * (nf * (nf + 1.0) / 2.0) + p.z * nf) * sign(n);
        let denominator = Complex64::new(1.0, 0.0) - expi(p.tau * nf + p.z);
        if denominator.norm() < ZERO_GUARD {
            return Err(Error::ThetaZeroDivision);
        }
        let term = numerator / denominator;
        re.push(term.re);
        im.push(term.im);
    }
    let sum = Complex64::new(pairwise_sum(&re), pairwise_sum(&im));
    Ok(expi(p.z * 0.5) * sum / theta)
}

/// `EG·η³/θ₁² − κμ`, z-independent exactly when `κ = 24`.
pub fn mock_remainder(p: &JacobiPoint, kappa: f64) -> Result<Complex64> {
    let theta1 = jacobi_theta(1, p)?;
    if theta1.norm() < ZERO_GUARD {
        return Err(Error::ThetaZeroDivision);
    }
    let eta = eta_eval(p.tau, None)?;
    Ok(elliptic_genus_k3(p)? * eta * eta * eta / (theta1 * theta1) - appell_lerch_mu(p)? * kappa)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MockCoefficients {
    #[serde(serialize_with = "ser_rational", deserialize_with = "de_rational")]
    pub scale: Rational,
    pub values: Vec<i64>,
    pub y0: f64,
    pub grid: usize,
    pub max_z_deviation: f64,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn de_rational<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    crate::series::parse_rational(&s).map_err(serde::de::Error::custom)
}

pub const DEFAULT_MOCK_TERMS: usize = 5;
/// Beyond this many modes the `e^{2πn·y0}` amplification eats the rounding margin.
pub const MAX_MOCK_TERMS: usize = 8;
const Z_TOLERANCE: f64 = 1e-6;
const ROUNDING_TOLERANCE: f64 = 1e-4;

/// Sample points used when no explicit list is given.
pub fn default_z_list() -> Vec<Complex64> {
    vec![
        Complex64::new(0.2, 0.1),
        Complex64::new(0.37, 0.05),
        Complex64::new(0.13, -0.07),
    ]
}

pub fn extract_mock_coefficients(y0: f64, z_list: &[Complex64], grid: usize) -> Result<MockCoefficients> {
    extract_mock_coefficients_with(APPELL_LERCH_MULTIPLICITY, y0, z_list, grid, DEFAULT_MOCK_TERMS)
}

/// Unrounded `q^{1/8}`-shifted modes `0..terms` of the remainder at one `z`.
pub fn remainder_modes(kappa: f64, y0: f64, z: Complex64, grid: usize, terms: usize) -> Result<Vec<Complex64>> {
    let samples = (0..grid)
        .map(|j| {
            let tau = Complex64::new(j as f64 / grid as f64, y0);
            let p = JacobiPoint::new(z, tau)?;
            Ok(mock_remainder(&p, kappa)? * expi(tau / 8.0))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..terms)
        .map(|n| {
            let (re, im): (Vec<f64>, Vec<f64>) = samples
                .iter()
                .enumerate()
                .map(|(j, f)| {
                    let phase = -2.0 * PI * ((n * j) % grid) as f64 / grid as f64;
                    let t = f * Complex64::from_polar(1.0, phase);
                    (t.re, t.im)
                })
                .unzip();
            let mode = Complex64::new(pairwise_sum(&re), pairwise_sum(&im)) / grid as f64;
            mode * (2.0 * PI * n as f64 * y0).exp()
        })
        .collect())
}

pub fn extract_mock_coefficients_with(
    kappa: f64,
    y0: f64,
    z_list: &[Complex64],
    grid: usize,
    terms: usize,
) -> Result<MockCoefficients> {
    if !(0.15..=0.5).contains(&y0) {
        return Err(Error::InvalidArgument(format!("y0 must lie in [0.15, 0.5], got {y0}")));
    }
    if grid < 64 || !grid.is_power_of_two() {
        return Err(Error::InvalidArgument(format!("grid must be a power of two ≥ 64, got {grid}")));
    }
    if !(1..=MAX_MOCK_TERMS).contains(&terms) {
        return Err(Error::InvalidArgument(format!("terms must lie in 1..={MAX_MOCK_TERMS}, got {terms}")));
    }
    let distinct = z_list
        .iter()
        .enumerate()
        .all(|(a, za)| z_list[..a].iter().all(|zb| (za - zb).norm() > 1e-9));
    if z_list.len() < 3 || !distinct {
        return Err(Error::InvalidArgument("need at least 3 distinct z points".into()));
    }

    let modes = z_list
        .iter()
        .map(|&z| remainder_modes(kappa, y0, z, grid, terms))
        .collect::<Result<Vec<_>>>()?;
    let mut max_z_deviation = 0.0f64;
    for a in 0..modes.len() {
        for b in a + 1..modes.len() {
            for (x, y) in modes[a].iter().zip(&modes[b]) {
                max_z_deviation = max_z_deviation.max((x - y).norm());
            }
        }
    }
    if max_z_deviation >= Z_TOLERANCE {
        return Err(Error::ZDependenceDetected(max_z_deviation));
    }

    let mut raw = Vec::with_capacity(terms);
    for (index, m) in modes[0].iter().enumerate() {
        let nearest = m.re.round();
        if (m - Complex64::new(nearest, 0.0)).norm() > ROUNDING_TOLERANCE {
            return Err(Error::RoundingUnstable { index, value: m.re });
        }
        raw.push(nearest as i64);
    }
    let scale = -int(raw[0]);
    if scale.is_zero() {
        return Err(Error::InvalidArgument("leading coefficient rounds to zero".into()));
    }
    let values = raw
        .iter()
        .map(|&v| {
            let x = int(v) / &scale;
            if x.is_integer() {
                Ok(x.to_integer().to_i64().unwrap_or(i64::MAX))
            } else {
                Err(Error::InvalidArgument(format!(
                    "coefficient {v} is not a multiple of the scale {}",
                    format_rational(&scale.abs())
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MockCoefficients { scale, values, y0, grid, max_z_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(z: (f64, f64), tau: (f64, f64)) -> JacobiPoint {
        JacobiPoint::new(Complex64::new(z.0, z.1), Complex64::new(tau.0, tau.1)).unwrap()
    }

    #[test]
    fn theta_one_is_odd_and_vanishes_at_origin() {
        for tau in [(0.0, 1.0), (0.3, 0.7), (-0.2, 2.0)] {
            assert!(jacobi_theta(1, &pt((0.0, 0.0), tau)).unwrap().norm() < 1e-15);
            let a = jacobi_theta(1, &pt((0.2, 0.1), tau)).unwrap();
            let b = jacobi_theta(1, &pt((-0.2, -0.1), tau)).unwrap();
            assert!((a + b).norm() < 1e-12);
        }
    }

    #[test]
    fn quartic_identity_at_i() {
        let p = pt((0.0, 0.0), (0.0, 1.0));
        let [t2, t3, t4] = [2, 3, 4].map(|i| jacobi_theta(i, &p).unwrap());
        assert!((t3.powi(4) - t2.powi(4) - t4.powi(4)).norm() < 1e-10);
        assert!((t2 - t4).norm() < 1e-10);
    }

    #[test]
    fn theta_one_antiperiodic() {
        let tau = (0.1, 0.9);
        let a = jacobi_theta(1, &pt((0.23, 0.05), tau)).unwrap();
        let b = jacobi_theta(1, &pt((1.23, 0.05), tau)).unwrap();
        assert!((a + b).norm() < 1e-10);
    }

    #[test]
    fn theta_one_matches_eta_cubed_derivative() {
        // θ₁'(0) = 2π η³
        let tau = Complex64::new(0.1, 0.8);
        let h = 1e-5;
        let plus = jacobi_theta(1, &JacobiPoint::new(Complex64::new(h, 0.0), tau).unwrap()).unwrap();
        let minus = jacobi_theta(1, &JacobiPoint::new(Complex64::new(-h, 0.0), tau).unwrap()).unwrap();
        let derivative = (plus - minus) / (2.0 * h);
        let eta = eta_eval(tau, None).unwrap();
        assert!((derivative - eta.powi(3) * (2.0 * PI)).norm() < 1e-7);
    }

    #[test]
    fn elliptic_genus_symmetries() {
        for tau in [(0.0, 1.0), (0.25, 0.6), (0.4, 1.5)] {
            let eg0 = elliptic_genus_k3(&pt((0.0, 0.0), tau)).unwrap();
            assert!((eg0 - Complex64::new(24.0, 0.0)).norm() < 1e-10);
            let a = elliptic_genus_k3(&pt((0.17, 0.04), tau)).unwrap();
            let shifted = elliptic_genus_k3(&pt((1.17, 0.04), tau)).unwrap();
            let mirrored = elliptic_genus_k3(&pt((-0.17, -0.04), tau)).unwrap();
            assert!((a - shifted).norm() < 1e-10);
            assert!((a - mirrored).norm() < 1e-10);
        }
    }

    #[test]
    fn mu_converges_in_cutoff() {
        let (z, tau) = (Complex64::new(0.2, 0.1), Complex64::new(0.1, 1.0));
        let base = JacobiPoint::new(z, tau).unwrap();
        let doubled = JacobiPoint::with_cutoff(z, tau, 2 * base.cutoff).unwrap();
        let a = appell_lerch_mu(&base).unwrap();
        let b = appell_lerch_mu(&doubled).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn mu_is_invariant_under_lattice_shift() {
        // μ(u+τ, v+τ) = μ(u, v) on the diagonal u = v = z
        let (z, tau) = (Complex64::new(0.2, 0.1), Complex64::new(0.1, 1.0));
        let a = appell_lerch_mu(&JacobiPoint::new(z, tau).unwrap()).unwrap();
        let b = appell_lerch_mu(&JacobiPoint::new(z + tau, tau).unwrap()).unwrap();
        let c = appell_lerch_mu(&JacobiPoint::new(z + 1.0, tau).unwrap()).unwrap();
        assert!((a - b).norm() < 1e-8 * a.norm().max(1.0));
        assert!((a - c).norm() < 1e-10);
    }

    #[test]
    fn mu_pole_at_origin() {
        let tau = (0.1, 1.0);
        let m1 = appell_lerch_mu(&pt((1e-2, 0.0), tau)).unwrap().norm();
        let m2 = appell_lerch_mu(&pt((1e-3, 0.0), tau)).unwrap().norm();
        let m3 = appell_lerch_mu(&pt((1e-4, 0.0), tau)).unwrap().norm();
        assert!(m1 < m2 && m2 < m3 && m3 > 1e6);
        assert_eq!(appell_lerch_mu(&pt((0.0, 0.0), tau)), Err(Error::ThetaZeroDivision));
    }

    #[test]
    fn remainder_is_z_independent() {
        let tau = (0.1, 0.9);
        let values: Vec<Complex64> = [(0.2, 0.1), (0.37, 0.05), (0.1, 0.3)]
            .iter()
            .map(|&z| mock_remainder(&pt(z, tau), 24.0).unwrap())
            .collect();
        assert!((values[0] - values[1]).norm() < 1e-10);
        assert!((values[0] - values[2]).norm() < 1e-10);
        let off = mock_remainder(&pt((0.2, 0.1), tau), 23.0).unwrap()
            - mock_remainder(&pt((0.37, 0.05), tau), 23.0).unwrap();
        assert!(off.norm() > 0.1);
    }

    #[test]
    fn extraction_values() {
        let m = extract_mock_coefficients(0.3, &default_z_list(), 128).unwrap();
        assert_eq!(m.values, vec![-1, 45, 231, 770, 2277]);
        assert_eq!(m.scale, int(2));
        assert!(m.max_z_deviation < 1e-6);
    }

    #[test]
    fn extraction_kappa_probe_fails() {
        let err = extract_mock_coefficients_with(23.0, 0.3, &default_z_list(), 64, 5).unwrap_err();
        assert!(matches!(err, Error::ZDependenceDetected(_)));
    }

    #[test]
    fn extraction_rejects_bad_arguments() {
        let zs = default_z_list();
        assert!(extract_mock_coefficients(0.1, &zs, 128).is_err());
        assert!(extract_mock_coefficients(0.3, &zs, 100).is_err());
        assert!(extract_mock_coefficients(0.3, &zs, 32).is_err());
        assert!(extract_mock_coefficients(0.3, &zs[..2], 128).is_err());
        let dup = vec![zs[0], zs[0], zs[1]];
        assert!(extract_mock_coefficients(0.3, &dup, 128).is_err());
    }

    #[test]
    fn serialization_shape() {
        let m = MockCoefficients {
            scale: int(2),
            values: vec![-1, 45],
            y0: 0.3,
            grid: 128,
            max_z_deviation: 0.0,
        };
        let json = serde_json::to_value(&m).unwrap();
        assert_eq!(json["scale"], "2/1");
        assert_eq!(serde_json::from_value::<MockCoefficients>(json).unwrap(), m);
    }
}
