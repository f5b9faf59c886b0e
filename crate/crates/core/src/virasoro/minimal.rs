//! Minimal-model constants, the (2,5) characters, the torus partition
//! function built from them, and the second-order modular ODE they solve.

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::check_upper_half_plane;
use crate::partitions::{count_partitions, PartitionConstraint};
use crate::series::{int, rat, FracQSeries, Rational};
use crate::special::{eisenstein, rr_product, EisensteinWeight, RogersRamanujan};

use super::algebra::gram_matrix;
use super::poly::rational_roots;

/// Coprime `(p, q)` with `1 < p < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinimalModelLabel {
    p: i64,
    q: i64,
}

impl MinimalModelLabel {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if 1 < p && p < q && p.gcd(&q) == 1 {
            Ok(Self { p, q })
        } else {
            Err(Error::InvalidLabel(p, q))
        }
    }

    pub fn lee_yang() -> Self {
        Self { p: 2, q: 5 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// Lowest weight `h_{r,s} = ((qr − ps)² − (q − p)²) / (4pq)`.
    pub fn kac_weight(&self, r: i64, s: i64) -> Rational {
        let (p, q) = (self.p, self.q);
        let a = q * r - p * s;
        rat(a * a - (q - p) * (q - p), 4 * p * q)
    }
}

/// `c = 1 − 6(p − q)²/(pq)`
pub fn central_charge(m: MinimalModelLabel) -> Rational {
    let d = m.p - m.q;
    int(1) - rat(6 * d * d, m.p * m.q)
}

/// `c_eff = 1 − 6/(pq)`
pub fn effective_central_charge(m: MinimalModelLabel) -> Rational {
    int(1) - rat(6, m.p * m.q)
}

/// All labels with `pq ≤ bound`, excluding the trivial `(2,3)` model
/// (`c = c_eff = 0`), ranked by effective central charge. Returns the
/// minimizers, so a unique minimum shows up as a single entry.
pub fn minimize_effective_central_charge(bound: i64) -> Vec<MinimalModelLabel> {
    let labels: Vec<MinimalModelLabel> = (2..=bound)
        .flat_map(|p| (p + 1..=bound / p).map(move |q| (p, q)))
        .filter_map(|(p, q)| MinimalModelLabel::new(p, q).ok())
        .filter(|m| !effective_central_charge(*m).is_zero())
        .collect();
    let Some(best) = labels.iter().map(|m| effective_central_charge(*m)).min() else {
        return Vec::new();
    };
    labels
        .into_iter()
        .filter(|m| effective_central_charge(*m) == best)
        .collect()
}

/// Level-4 vacuum null vector `(L₂² + β L₄)|0⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullVector {
    pub central_charge: Rational,
    pub beta: Rational,
    /// `γ` in `R₀ = γ ∂²T`, with `R₀` the coincident-point value of the
    /// regular part of `T(z)T(z′)` once the symmetric singular terms
    /// `(c/2)/(z−z′)⁴ + (T(z)+T(z′))/(z−z′)²` are removed. As states,
    /// `R₀ = L₂²|0⟩ − L₄|0⟩` and `∂²T = 2 L₄|0⟩`.
    pub r0_coefficient: Rational,
}

/// Nonzero central charges where the level-4 vacuum Gram matrix is
/// singular, with the null combination at each.
pub fn null_vector_central_charges() -> Result<Vec<NullVector>> {
    let gram = gram_matrix(4, true)?;
    let det = gram.determinant();
    let coeffs = det
        .c_coefficients()
        .ok_or_else(|| Error::InvalidArgument("vacuum determinant depends on h".into()))?;
    let mut out = Vec::new();
    for c in rational_roots(&coeffs).into_iter().filter(|c| !c.is_zero()) {
        let g = gram.evaluate(&c, &Rational::zero());
        // Row 0 of G·(1, β)ᵀ = 0.
        let beta = -&g[0][0] / &g[0][1];
        let r0_coefficient = (-&beta - int(1)) / int(2);
        out.push(NullVector { central_charge: c, beta, r0_coefficient });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sector {
    /// The vacuum module, `h = 0`.
    V0,
    /// The `h = −1/5` module.
    Vm15,
}

impl Sector {
    pub fn lowest_weight(self) -> Rational {
        let m = MinimalModelLabel::lee_yang();
        match self {
            Sector::V0 => m.kac_weight(1, 1),
            Sector::Vm15 => m.kac_weight(1, 2),
        }
    }

    /// Graded dimensions follow the difference-two rule; the vacuum module
    /// additionally forbids parts equal to 1.
    fn counting_rule(self) -> PartitionConstraint {
        match self {
            Sector::V0 => PartitionConstraint::gap(2, 2),
            Sector::Vm15 => PartitionConstraint::gap(1, 2),
        }
    }

    pub fn product(self) -> RogersRamanujan {
        match self {
            Sector::V0 => RogersRamanujan::H,
            Sector::Vm15 => RogersRamanujan::G,
        }
    }
}

/// `q^{h − c/24} Σ_n D(n) qⁿ` with `D(n)` counted from the partition rule of
/// the sector.
pub fn character_25(sector: Sector, order: usize) -> Result<FracQSeries> {
    let order = order.max(1);
    let c = central_charge(MinimalModelLabel::lee_yang());
    let exponent = sector.lowest_weight() - c / int(24);
    let counts = count_partitions(order - 1, &sector.counting_rule())?;
    Ok(FracQSeries::from_bigints(exponent, counts.values()))
}

/// Smallest order whose dropped tail is below `tolerance` at `tau`, bounding
/// each coefficient by `p(n) ≤ exp(π√(2n/3))`.
pub fn character_order_for(tau: Complex64, tolerance: f64) -> usize {
    let decay = 2.0 * std::f64::consts::PI * tau.im;
    (1..100_000)
        .find(|&n| tail_log_bound(n, decay) < tolerance.ln())
        .unwrap_or(100_000)
}

fn tail_log_bound(order: usize, decay: f64) -> f64 {
    let n = order as f64;
    // Σ_{k≥N} e^{π√(2k/3) − decay·k}, bounded by its first term over (1 − ratio).
    let lead = std::f64::consts::PI * (2.0 * n / 3.0).sqrt() - decay * n;
    let ratio = (std::f64::consts::PI / (6.0 * n).sqrt() - decay).exp();
    if ratio >= 1.0 {
        f64::INFINITY
    } else {
        lead - (1.0 - ratio).ln()
    }
}

/// `|q^{-1/60}G(q)|² + |q^{11/60}H(q)|²` at `q = exp(2πiτ)`.
pub fn torus_partition_function_25(tau: Complex64, order: usize) -> Result<f64> {
    check_upper_half_plane(tau)?;
    let decay = 2.0 * std::f64::consts::PI * tau.im;
    if tail_log_bound(order, decay) >= 1e-12_f64.ln() {
        return Err(Error::InvalidArgument(format!(
            "order {order} leaves a tail above 1e-12 at tau = {tau}"
        )));
    }
    let vm15 = character_25(Sector::Vm15, order)?.eval_at_tau(tau);
    let v0 = character_25(Sector::V0, order)?.eval_at_tau(tau);
    Ok(vm15.norm_sqr() + v0.norm_sqr())
}

/// `q d/dq − (k/12) E₂`, raising modular weight by two.
pub fn serre_derivative(f: &FracQSeries, k: &Rational, order: usize) -> FracQSeries {
    let order = order.min(f.order()).max(1);
    let f = f.truncate(order);
    let e2 = eisenstein(EisensteinWeight::Two, order);
    let correction = e2.mul(&f).scale(&(k / int(12)));
    f.q_derivative()
        .sub(&correction)
        .expect("same prefactor")
}

/// `(q d/dq − E₂/6) q d/dq Z − κ E₄ Z` for `Z = q^{-1/60}G` or `q^{11/60}H`.
pub fn ode_residual(which: RogersRamanujan, order: usize) -> Result<FracQSeries> {
    ode_residual_with(which, &rat(11, 3600), order)
}

/// As [`ode_residual`] with the coefficient of `E₄ Z` replaced by `kappa`.
pub fn ode_residual_with(which: RogersRamanujan, kappa: &Rational, order: usize) -> Result<FracQSeries> {
    if order < 2 {
        return Err(Error::InvalidArgument("ODE residual needs order >= 2".into()));
    }
    let c = central_charge(MinimalModelLabel::lee_yang());
    let exponent = match which {
        RogersRamanujan::G => Sector::Vm15.lowest_weight(),
        RogersRamanujan::H => Sector::V0.lowest_weight(),
    } - c / int(24);
    let z = rr_product(which, order).with_prefactor(exponent);
    let lhs = serre_derivative(&z.q_derivative(), &int(2), order);
    let rhs = eisenstein(EisensteinWeight::Four, order).mul(&z).scale(kappa);
    lhs.sub(&rhs)
}

/// `λ^{c(1−g)/6}`
pub fn scale_anomaly(c: &Rational, genus: i64, lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda <= 0.0 {
        return Err(Error::InvalidArgument(format!("scale factor must be positive, got {lambda}")));
    }
    let exponent = c * int(1 - genus) / int(6);
    let exponent = exponent.to_f64().unwrap_or(f64::NAN);
    Ok(lambda.powf(exponent))
}

/// `true` iff `11/60 = −c/24` and `−1/60 = −c_eff/24` at `(2,5)`.
pub fn casimir_identities_hold() -> bool {
    let m = MinimalModelLabel::lee_yang();
    let c = central_charge(m);
    let c_eff = effective_central_charge(m);
    rat(11, 60) == -c / int(24) && rat(-1, 60) == -c_eff / int(24)
}

/// `true` if every stored coefficient of `f` is zero.
pub fn vanishes(f: &FracQSeries) -> bool {
    f.coeffs().iter().all(Zero::is_zero)
}

/// Index and value of the first nonzero coefficient.
pub fn first_nonzero(f: &FracQSeries) -> Option<(usize, Rational)> {
    f.coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .map(|n| (n, f.coeffs()[n].clone()))
}
