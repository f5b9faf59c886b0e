//! The compact free boson on a torus, its orbifold-twisted trace, and
//! spectral determinant ratios on periodic grids against their continuum
//! limit.
//!
//! Radius convention: momenta `p_{L,R} = n/R ± wR/2` with summand
//! `q^{p_L²/2} q̄^{p_R²/2}`. Then `h_L − h_R = nw` is an integer, T-duality
//! is `R ↔ 2/R` with the self-dual point at `R = √2`, and
//! `Z_R = Θ_R/|η|²` is invariant under `τ ↦ τ + 1` and `τ ↦ −1/τ`.
//!
//! Determinant ratios. In two dimensions `Σ log((λ + m₁²)/(λ + m₂²))` over
//! the Laplace spectrum diverges like `(m₁² − m₂²)·Σ 1/λ`. The lattice ratio
//! is reported as is, and the comparison with the continuum uses the
//! tadpole-subtracted sum
//! `Σ [log((λ + m₁²)/(λ + m₂²)) − (m₁² − m₂²)/(λ + μ²)]`
//! with a fixed reference mass `μ`, which converges on both sides.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{check_upper_half_plane, nome, product_cutoff, TAIL_TOLERANCE};
use crate::special::eta_eval;

/// Reference mass of the tadpole subtraction.
pub const REFERENCE_MASS: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusModulus {
    tau: Complex64,
}

impl TorusModulus {
    pub fn new(tau: Complex64) -> Result<Self> {
        check_upper_half_plane(tau)?;
        Ok(Self { tau })
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn s_transform(&self) -> Self {
        Self { tau: -self.tau.inv() }
    }

    pub fn t_transform(&self) -> Self {
        Self { tau: self.tau + 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumWindingTerm {
    pub n: i64,
    pub w: i64,
    pub h_left: f64,
    pub h_right: f64,
}

impl MomentumWindingTerm {
    pub fn new(radius: f64, n: i64, w: i64) -> Self {
        let p_left = n as f64 / radius + w as f64 * radius / 2.0;
        let p_right = n as f64 / radius - w as f64 * radius / 2.0;
        Self { n, w, h_left: p_left * p_left / 2.0, h_right: p_right * p_right / 2.0 }
    }

    /// `q^{h_L} q̄^{h_R}`, written as modulus times the phase `e^{2πi·x·nw}`.
    pub fn weight(&self, tau: Complex64) -> Complex64 {
        let modulus = (-2.0 * PI * tau.im * (self.h_left + self.h_right)).exp();
        let phase = 2.0 * PI * tau.re * (self.n * self.w) as f64;
        Complex64::from_polar(modulus, phase)
    }
}

fn check_radius(radius: f64) -> Result<()> {
    if radius > 0.0 && radius.is_finite() {
        Ok(())
    } else {
        Err(Error::NonpositiveRadius(radius))
    }
}

/// Smallest `N` with `exp(−2π y N² s) < TAIL_TOLERANCE`.
fn gaussian_cutoff(y: f64, s: f64) -> i64 {
    ((-TAIL_TOLERANCE.ln()) / (2.0 * PI * y * s)).sqrt().ceil() as i64 + 1
}

/// Pairwise summation over a fixed index order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => pairwise_sum(&values[..n / 2]) + pairwise_sum(&values[n / 2..]),
    }
}

fn pairwise_sum_complex(values: &[Complex64]) -> Complex64 {
    let re: Vec<f64> = values.iter().map(|z| z.re).collect();
    let im: Vec<f64> = values.iter().map(|z| z.im).collect();
    Complex64::new(pairwise_sum(&re), pairwise_sum(&im))
}

/// `Θ_R(τ) = Σ_{n,w} q^{p_L²/2} q̄^{p_R²/2}` over `|n|, |w| ≤ cutoff`, or
/// over adaptive per-direction cutoffs when `cutoff` is `None`.
pub fn theta_lattice_sum(radius: f64, tau: TorusModulus, cutoff: Option<i64>) -> Result<Complex64> {
    check_radius(radius)?;
    let y = tau.tau().im;
    let (n_max, w_max) = match cutoff {
        Some(c) => (c, c),
        // |summand| = exp(−2πy(n²/R² + w²R²/4))
        None => (
            gaussian_cutoff(y, 1.0 / (radius * radius)),
            gaussian_cutoff(y, radius * radius / 4.0),
        ),
    };
    let mut terms = Vec::with_capacity(((2 * n_max + 1) * (2 * w_max + 1)) as usize);
    for n in -n_max..=n_max {
        for w in -w_max..=w_max {
            terms.push(MomentumWindingTerm::new(radius, n, w).weight(tau.tau()));
        }
    }
    Ok(pairwise_sum_complex(&terms))
}

/// `Z_R(τ) = Θ_R(τ)/|η(τ)|²`
pub fn boson_partition_function(radius: f64, tau: TorusModulus) -> Result<f64> {
    let theta = theta_lattice_sum(radius, tau, None)?;
    let eta = eta_eval(tau.tau(), None)?;
    Ok(theta.re / eta.norm_sqr())
}

/// `|∏_{n≥1} (1 + qⁿ)^{-1}|²`; the radius does not enter.
pub fn twisted_boson_partition_function(tau: TorusModulus, cutoff: Option<usize>) -> Result<f64> {
    let q = nome(tau.tau());
    let cutoff = cutoff.unwrap_or_else(|| product_cutoff(tau.tau()));
    let mut prod = Complex64::new(1.0, 0.0);
    let mut qn = q;
    for _ in 1..=cutoff {
        prod *= Complex64::new(1.0, 0.0) + qn;
        qn *= q;
    }
    Ok(prod.inv().norm_sqr())
}

/// A periodic rectangular grid of `sites.0 × sites.1` points on a torus of
/// side lengths `lengths`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub sites: (usize, usize),
    pub lengths: (f64, f64),
}

impl LatticeSpec {
    pub fn new(sites: (usize, usize), lengths: (f64, f64)) -> Result<Self> {
        if sites.0 < 4 || sites.1 < 4 {
            return Err(Error::InvalidArgument(format!(
                "lattice needs at least 4 sites per direction, got {sites:?}"
            )));
        }
        if !(lengths.0 > 0.0 && lengths.1 > 0.0) {
            return Err(Error::InvalidArgument(format!("lengths must be positive, got {lengths:?}")));
        }
        Ok(Self { sites, lengths })
    }

    pub fn square(n: usize, length: f64) -> Result<Self> {
        Self::new((n, n), (length, length))
    }

    /// Eigenvalues of the periodic five-point Laplacian,
    /// `(2/a₁²)(1 − cos 2πj/L_x) + (2/a₂²)(1 − cos 2πk/L_y)`.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let axis = |sites: usize, length: f64| -> Vec<f64> {
            let a = length / sites as f64;
            (0..sites)
                .map(|j| 2.0 / (a * a) * (1.0 - (2.0 * PI * j as f64 / sites as f64).cos()))
                .collect()
        };
        let ex = axis(self.sites.0, self.lengths.0);
        let ey = axis(self.sites.1, self.lengths.1);
        ex.iter()
            .flat_map(|x| ey.iter().map(move |y| x + y))
            .collect()
    }
}

fn check_masses(m1: f64, m2: f64) -> Result<()> {
    if m1 > 0.0 && m2 > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("masses must be positive, got {m1}, {m2}")))
    }
}

fn log_ratio_terms(eigenvalues: &[f64], m1: f64, m2: f64, subtract: bool) -> Vec<f64> {
    let (a, b) = (m1 * m1, m2 * m2);
    let mu2 = REFERENCE_MASS * REFERENCE_MASS;
    eigenvalues
        .iter()
        .map(|&l| {
            let log = ((l + a) / (l + b)).ln();
            if subtract {
                log - (a - b) / (l + mu2)
            } else {
                log
            }
        })
        .collect()
}

/// `det(Δ + m₁²)/det(Δ + m₂²)` on the grid, as `exp Σ log` over the explicit
/// spectrum.
pub fn lattice_determinant_ratio(spec: &LatticeSpec, m1: f64, m2: f64) -> Result<f64> {
    check_masses(m1, m2)?;
    if m1 == m2 {
        return Ok(1.0);
    }
    Ok(pairwise_sum(&log_ratio_terms(&spec.eigenvalues(), m1, m2, false)).exp())
}

/// The tadpole-subtracted lattice ratio, comparable with
/// [`continuum_determinant_ratio`].
pub fn lattice_subtracted_ratio(spec: &LatticeSpec, m1: f64, m2: f64) -> Result<f64> {
    check_masses(m1, m2)?;
    if m1 == m2 {
        return Ok(1.0);
    }
    Ok(pairwise_sum(&log_ratio_terms(&spec.eigenvalues(), m1, m2, true)).exp())
}

/// Default continuum mode cutoff, in units of the shorter side's mode number.
pub const DEFAULT_CONTINUUM_CUTOFF: usize = 600;

/// Tadpole-subtracted continuum ratio over `λ = (2πj/ℓ₁)² + (2πk/ℓ₂)²`.
///
/// Modes with `λ ≤ Λ = (2π·cutoff/ℓ_min)²` are summed exactly; the rest is
/// replaced by the Weyl-law integral of the first two terms of the
/// large-`λ` expansion of the summand, `C₂/λ² + C₃/λ³`.
pub fn continuum_determinant_ratio(lengths: (f64, f64), m1: f64, m2: f64, cutoff: Option<usize>) -> Result<f64> {
    check_masses(m1, m2)?;
    if !(lengths.0 > 0.0 && lengths.1 > 0.0) {
        return Err(Error::InvalidArgument(format!("lengths must be positive, got {lengths:?}")));
    }
    if m1 == m2 {
        return Ok(1.0);
    }
    let cutoff = cutoff.unwrap_or(DEFAULT_CONTINUUM_CUTOFF) as f64;
    let (l1, l2) = lengths;
    let lambda_max = (2.0 * PI * cutoff / l1.min(l2)).powi(2);
    let j_max = (lambda_max.sqrt() * l1 / (2.0 * PI)).floor() as i64;
    let k_max = (lambda_max.sqrt() * l2 / (2.0 * PI)).floor() as i64;
    let mut eigenvalues = Vec::new();
    for j in -j_max..=j_max {
        let ej = (2.0 * PI * j as f64 / l1).powi(2);
        for k in -k_max..=k_max {
            let l = ej + (2.0 * PI * k as f64 / l2).powi(2);
            if l <= lambda_max {
                eigenvalues.push(l);
            }
        }
    }
    let body = pairwise_sum(&log_ratio_terms(&eigenvalues, m1, m2, true));
    let (a, b) = (m1 * m1, m2 * m2);
    let mu2 = REFERENCE_MASS * REFERENCE_MASS;
    let c2 = -(a * a - b * b) / 2.0 + (a - b) * mu2;
    let c3 = (a * a * a - b * b * b) / 3.0 - (a - b) * mu2 * mu2;
    let density = l1 * l2 / (4.0 * PI);
    let tail = density * (c2 / lambda_max + c3 / (2.0 * lambda_max * lambda_max));
    Ok((body + tail).exp())
}
