use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;
use planefol_core::blowup::{resolve, Germ, DEFAULT_STEP_CAP};
use planefol_core::bounds::{cor6_bound, dimension_count, theorem5_space, QuadraticSurd};
use planefol_core::field::ProjectivePoint;
use planefol_core::poly::{MPoly, Vars};
use planefol_core::rational::{int, Rational};
use proptest::prelude::*;

/// `[lo, hi]` containing `(a + b√r)·10¹⁰⁰`, from an integer square root.
fn interval(a: &Rational, b: &Rational, r: u64) -> (Rational, Rational) {
    let scale = BigInt::from(10).pow(100);
    let base = a * Rational::from_integer(scale.clone());
    let (p, q) = (b.numer().abs(), b.denom().clone());
    let s = (&p * &p * BigInt::from(r) * &scale * &scale).sqrt();
    let lo = Rational::new(s.clone(), q.clone());
    let hi = Rational::new(s + 1, q);
    if b.is_negative() {
        (&base - hi, &base - lo)
    } else {
        (&base + lo, &base + hi)
    }
}

fn surd_parts() -> impl Strategy<Value = (Rational, Rational, u64)> {
    (-60i64..=60, 1i64..=12, -60i64..=60, 1i64..=12, 0u64..=300).prop_map(|(an, ad, bn, bd, r)| {
        (
            Rational::new(an.into(), ad.into()),
            Rational::new(bn.into(), bd.into()),
            r,
        )
    })
}

fn cusp_tree() -> planefol_core::blowup::ResolutionTree {
    let v = Vars::xy();
    let (x, y) = (MPoly::var(&v, 0), MPoly::var(&v, 1));
    let germ = Germ {
        point: ProjectivePoint::affine(int(0), int(0)),
        equation: &y.pow(2) - &x.pow(3),
    };
    resolve(None, &[germ], DEFAULT_STEP_CAP).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn surd_order_matches_interval_evaluation(s in surd_parts(), t in surd_parts()) {
        let u = QuadraticSurd::new(s.0.clone(), s.1.clone(), s.2);
        let v = QuadraticSurd::new(t.0.clone(), t.1.clone(), t.2);
        let (lo1, hi1) = interval(&s.0, &s.1, s.2);
        let (lo2, hi2) = interval(&t.0, &t.1, t.2);
        let oracle = if hi1 < lo2 {
            Ordering::Less
        } else if lo1 > hi2 {
            Ordering::Greater
        } else {
            Ordering::Equal
        };
        prop_assert_eq!(u.compare(&v), oracle);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quadratic_formula_threshold_matches(d in 0i64..=40, n in prop::collection::vec(-2i64..=9, 0..6)) {
        let report = cor6_bound(d, &n);
        prop_assert_eq!(dimension_count(report.cor6_threshold, d, &n).threshold, report.cor6_threshold);
        let count = dimension_count(report.cor6_threshold, d, &n);
        prop_assert!(count.expected >= 1);
        prop_assert!(dimension_count(report.cor6_threshold - 1, d, &n).expected < 1);
    }

    #[test]
    fn small_discrepancies_give_carnicer(d in 0i64..=100, n in prop::collection::vec(-5i64..=2, 0..8)) {
        let report = cor6_bound(d, &n);
        prop_assert_eq!(report.cor6_value, QuadraticSurd::rational(int(d + 3)));
    }

    #[test]
    fn floor_brackets_value((a, b, r) in surd_parts()) {
        let s = QuadraticSurd::new(a, b, r);
        let f = Rational::from_integer(s.floor());
        prop_assert_ne!(s.cmp_rational(&f), Ordering::Less);
        prop_assert_eq!(s.cmp_rational(&(f + int(1))), Ordering::Less);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pencil_space_shrinks_as_requirements_grow(q in 1u32..=4, r in prop::array::uniform3(0i64..=4), bump in prop::array::uniform3(0i64..=2)) {
        let tree = cusp_tree();
        let low: Vec<(usize, i64)> = r.iter().enumerate().map(|(i, &v)| (i, v)).collect();
        let high: Vec<(usize, i64)> = r.iter().zip(bump).enumerate().map(|(i, (&v, b))| (i, v + b)).collect();
        let a = theorem5_space(&tree, q, &low).unwrap();
        let b = theorem5_space(&tree, q, &high).unwrap();
        prop_assert!(b.len() <= a.len());
        for p in &b {
            prop_assert!(!p.is_zero());
        }
    }
}
