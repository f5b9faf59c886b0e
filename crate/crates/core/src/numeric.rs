//! Shared helpers for evaluating q-series at a point of the upper half-plane.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Target size of the first neglected term in every truncated numeric sum.
pub const TAIL_TOLERANCE: f64 = 1e-15;

pub fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

pub fn check_upper_half_plane(tau: Complex64) -> Result<()> {
    if tau.im > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(Error::NotInUpperHalfPlane(tau.to_string()))
    }
}

/// `q = exp(2πiτ)`.
pub fn nome(tau: Complex64) -> Complex64 {
    (two_pi_i() * tau).exp()
}

/// `exp(2πi·a·τ)`, the principal branch of `q^a`.
pub fn nome_power(tau: Complex64, a: f64) -> Complex64 {
    (two_pi_i() * tau * a).exp()
}

/// Smallest `n ≥ 1` with `|q|^n < TAIL_TOLERANCE`.
pub fn product_cutoff(tau: Complex64) -> usize {
    let decay = 2.0 * PI * tau.im;
    ((-TAIL_TOLERANCE.ln()) / decay).ceil().max(1.0) as usize
}

/// Smallest `n ≥ 1` with `|q|^{n²/2} < TAIL_TOLERANCE`, padded by two for
/// sums whose terms carry an extra `y^n` growth.
pub fn theta_cutoff(tau: Complex64) -> usize {
    let decay = PI * tau.im;
    ((-TAIL_TOLERANCE.ln()) / decay).sqrt().ceil() as usize + 2
}

/// Seventeen significant digits, scientific notation.
pub fn format_decimal(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_complex(z: Complex64) -> String {
    format!("{}{}{}i", format_decimal(z.re), if z.im < 0.0 { "" } else { "+" }, format_decimal(z.im))
}
