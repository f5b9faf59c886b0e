//! Randomized invariants across the library.

use num_traits::{One, Zero};
use proptest::prelude::*;
use qcft::boson::{
    boson_partition_function, continuum_determinant_ratio, lattice_determinant_ratio,
    lattice_subtracted_ratio, LatticeSpec, TorusModulus,
};
use qcft::partitions::{count_partitions, dp_counts, enumerate_counts, PartitionConstraint};
use qcft::regularization::{
    hurwitz_sum, oscillator_partition_series, ramanujan_defect, ramanujan_naive_sum,
    ArithmeticProgressionSet,
};
use qcft::series::{int, rat};
use qcft::virasoro::{bracket, gram_matrix, Poly2};
use qcft::{FracQSeries, Rational};
use num_complex::Complex64;

fn series(order: usize) -> impl Strategy<Value = FracQSeries> {
    (prop::collection::vec(-4i64..=4, order), -3i64..=3, 1i64..=3)
        .prop_map(|(coeffs, num, den)| FracQSeries::from_integers(rat(num, den), &coeffs))
}

fn unit_series(order: usize) -> impl Strategy<Value = FracQSeries> {
    (prop::collection::vec(-4i64..=4, order - 1), prop::sample::select(vec![-2i64, -1, 1, 3]))
        .prop_map(|(tail, lead)| {
            let mut coeffs = vec![lead];
            coeffs.extend(tail);
            FracQSeries::from_integers(int(0), &coeffs)
        })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

/// `[[L_a, L_b], L_c]` as (coefficient of `L_{a+b+c}`, coefficient of `c`).
fn nested(a: i64, b: i64, k: i64) -> (i64, Rational) {
    let inner = bracket(a, b);
    let outer = bracket(inner.target, k);
    (inner.linear * outer.linear, int(inner.linear) * outer.central)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_distributes(
        f in series(10), g in series(10), h in series(10)
    ) {
        let g = g.with_prefactor(f.prefactor().clone());
        let lhs = f.add(&g).unwrap().mul(&h);
        let rhs = f.mul(&h).add(&g.mul(&h)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn invert_is_two_sided(f in unit_series(12)) {
        let inv = f.invert().unwrap();
        let one = FracQSeries::one(12);
        prop_assert_eq!(f.mul(&inv), one.clone());
        prop_assert_eq!(inv.mul(&f), one);
        prop_assert_eq!(inv.invert().unwrap(), f);
    }

    #[test]
    fn q_derivative_is_a_derivation(f in series(9), g in series(9)) {
        let lhs = f.mul(&g).q_derivative();
        let rhs = f.q_derivative().mul(&g).add(&f.mul(&g.q_derivative())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn serialization_round_trips(f in series(8)) {
        let json = serde_json::to_string(&f.to_record()).unwrap();
        let back = FracQSeries::from_record(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(serde_json::to_string(&back.to_record()).unwrap(), json);
    }

    #[test]
    fn regularization_defect(p in 1i64..=30, r_seed in 0i64..1000) {
        let r = 1 + r_seed % p;
        let h = hurwitz_sum(p, r).unwrap().value;
        let n = ramanujan_naive_sum(p, r).unwrap().value;
        prop_assert_eq!(&h - &n, rat(-r * r, 2 * p));
        prop_assert_eq!(ramanujan_defect(p, r).unwrap(), rat(-r * r, 2 * p));
    }

    #[test]
    fn hurwitz_reflection(p in 2i64..=30, r_seed in 0i64..1000) {
        let r = 1 + r_seed % (p - 1);
        prop_assert_eq!(hurwitz_sum(p, r).unwrap().value, hurwitz_sum(p, p - r).unwrap().value);
    }

    #[test]
    fn oscillator_counts_are_natural(p in 1i64..=7, residues in prop::collection::btree_set(1i64..=7, 1..3)) {
        let residues: Vec<i64> = residues.into_iter().filter(|&r| r <= p).collect();
        prop_assume!(!residues.is_empty());
        let set = ArithmeticProgressionSet::with_step(p, &residues).unwrap();
        let s = oscillator_partition_series(&set, 40).unwrap();
        prop_assert!(s.coeffs().iter().all(|c| c.is_integer() && *c >= Rational::zero()));
    }

    #[test]
    fn virasoro_jacobi_identity(m in -6i64..=6, n in -6i64..=6, k in -6i64..=6) {
        let terms = [nested(m, n, k), nested(n, k, m), nested(k, m, n)];
        let linear: i64 = terms.iter().map(|t| t.0).sum();
        let central = terms.iter().fold(Rational::zero(), |acc, t| acc + &t.1);
        prop_assert_eq!(linear, 0);
        prop_assert!(central.is_zero());
    }

    #[test]
    fn enumeration_and_dp_agree(min_part in 1usize..=3, min_gap in 0usize..=3) {
        let c = PartitionConstraint::gap(min_part, min_gap);
        let e = enumerate_counts(40, &c).unwrap();
        let d = dp_counts(40, &c).unwrap();
        prop_assert_eq!(e.len(), d.len());
        for (a, b) in e.iter().zip(&d) {
            prop_assert_eq!(num_bigint::BigInt::from(*a), b.clone());
        }
    }

    #[test]
    fn residue_counts_agree(modulus in 2usize..=6, residues in prop::collection::btree_set(0usize..6, 1..3)) {
        let residues: Vec<usize> = residues.into_iter().filter(|&r| r < modulus).collect();
        prop_assume!(!residues.is_empty());
        prop_assert!(count_partitions(50, &PartitionConstraint::residues(modulus, residues)).is_ok());
    }

    #[test]
    fn boson_duality_and_positivity(r in 0.4f64..2.5, x in -0.5f64..0.5, y in 0.6f64..2.0) {
        let tau = TorusModulus::new(Complex64::new(x, y)).unwrap();
        let a = boson_partition_function(r, tau).unwrap();
        let b = boson_partition_function(2.0 / r, tau).unwrap();
        prop_assert!(a > 0.0);
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn determinant_ratio_swap_inverts(m1 in 0.2f64..3.0, m2 in 0.2f64..3.0) {
        let spec = LatticeSpec::square(8, 1.0).unwrap();
        let r = lattice_determinant_ratio(&spec, m1, m2).unwrap();
        let s = lattice_determinant_ratio(&spec, m2, m1).unwrap();
        prop_assert!((r * s - 1.0).abs() < 1e-12);
        let r = lattice_subtracted_ratio(&spec, m1, m2).unwrap();
        let s = lattice_subtracted_ratio(&spec, m2, m1).unwrap();
        prop_assert!((r * s - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gram_specializes_consistently(level in 1usize..=4, vacuum in any::<bool>(), c in small_rational(), h in small_rational()) {
        let gram = gram_matrix(level, vacuum).unwrap();
        prop_assert!(gram.is_symmetric());
        let h = if vacuum { Rational::zero() } else { h };
        let direct = qcft::virasoro::gram_matrix_at(level, vacuum, &c, &h).unwrap();
        prop_assert_eq!(&gram.evaluate(&c, &h), &direct);
        prop_assert_eq!(gram.determinant().eval(&c, &h), gram.determinant_at(&c, &h));
    }

    #[test]
    fn continuum_ratio_telescopes(m1 in 0.3f64..3.0, m2 in 0.3f64..3.0, m3 in 0.3f64..3.0) {
        let l = (1.0, 1.0);
        let a = continuum_determinant_ratio(l, m1, m2, Some(60)).unwrap();
        let b = continuum_determinant_ratio(l, m2, m3, Some(60)).unwrap();
        let c = continuum_determinant_ratio(l, m1, m3, Some(60)).unwrap();
        prop_assert!((a * b / c - 1.0).abs() < 1e-10);
    }
}

#[test]
fn level_four_vacuum_determinant_polynomial() {
    let c = Poly2::c();
    let expected = (c.clone() * c.clone() * (c.scale(&int(5)) + Poly2::constant(int(22))))
        .scale(&rat(1, 2));
    assert_eq!(gram_matrix(4, true).unwrap().determinant(), expected);
    assert!(Poly2::one().eval(&int(3), &int(4)).is_one());
}
