use num_traits::Zero;
use planefol_core::poly::linalg::{solve_linear, RatMatrix};
use planefol_core::poly::{gcd, resultant, upoly::UPoly, MPoly, Monomial, Vars};
use planefol_core::rational::{int, Rational};
use proptest::prelude::*;

fn poly_strategy(max_deg: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0..=max_deg), (0..=max_deg), -5i64..=5), 0..=max_terms).prop_map(move |terms| {
        let v = Vars::xy();
        MPoly::from_terms(
            &v,
            terms
                .into_iter()
                .filter(|(a, b, _)| a + b <= max_deg)
                .map(|(a, b, c)| (Monomial(vec![a, b]), int(c))),
        )
    })
}

/// Sylvester matrix determinant in the variable `y`, evaluated after
/// substituting `x = x0`.
fn sylvester_at(f: &MPoly, g: &MPoly, x0: &Rational) -> Rational {
    let fu = UPoly::from_mpoly(&f.substitute_value(0, x0), 1).unwrap();
    let gu = UPoly::from_mpoly(&g.substitute_value(0, x0), 1).unwrap();
    let m = f.degree_in(1).unwrap() as usize;
    let n = g.degree_in(1).unwrap() as usize;
    let coef = |p: &UPoly, k: usize| p.coeffs().get(k).cloned().unwrap_or_else(Rational::zero);
    let size = m + n;
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = vec![Rational::zero(); size];
        for k in 0..=m {
            row[i + k] = coef(&fu, m - k);
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Rational::zero(); size];
        for k in 0..=n {
            row[i + k] = coef(&gu, n - k);
        }
        rows.push(row);
    }
    RatMatrix::from_rows(rows).determinant()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_strategy(3, 6), b in poly_strategy(3, 6), c in poly_strategy(2, 4)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn exact_division_recovers_factor(a in poly_strategy(3, 6), b in poly_strategy(3, 6)) {
        prop_assume!(!b.is_zero());
        let q = (&a * &b).exact_div(&b).unwrap();
        prop_assert_eq!(q, Some(a));
    }

    #[test]
    fn gcd_contains_common_factor(a in poly_strategy(2, 4), b in poly_strategy(2, 4), h in poly_strategy(2, 4)) {
        prop_assume!(!h.is_zero() && !(a.is_zero() && b.is_zero()));
        let g = gcd(&(&a * &h), &(&b * &h));
        prop_assert!(g.exact_div(&h).unwrap().is_some());
        prop_assert!((&a * &h).exact_div(&g).unwrap().is_some());
        prop_assert!((&b * &h).exact_div(&g).unwrap().is_some());
    }

    #[test]
    fn resultant_matches_sylvester(f in poly_strategy(3, 6), g in poly_strategy(3, 6), x0 in -3i64..=3) {
        prop_assume!(f.degree_in(1).unwrap_or(0) >= 1 && g.degree_in(1).unwrap_or(0) >= 1);
        let x0 = int(x0);
        // specialization commutes with the resultant when leading coefficients survive
        let lf = f.coeffs_in(1).last().unwrap().eval(&[x0.clone(), int(0)]);
        let lg = g.coeffs_in(1).last().unwrap().eval(&[x0.clone(), int(0)]);
        prop_assume!(!lf.is_zero() && !lg.is_zero());
        let r = resultant(&f, &g, 1).unwrap();
        let direct = r.eval(&[x0.clone(), int(0)]);
        prop_assert_eq!(direct, sylvester_at(&f, &g, &x0));
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(f in poly_strategy(2, 5), g in poly_strategy(2, 5)) {
        prop_assume!(f.involves(1) && g.involves(1));
        let r = resultant(&f, &g, 1).unwrap();
        let common = gcd(&f, &g);
        prop_assert_eq!(r.is_zero(), common.involves(1));
    }

    #[test]
    fn homogenize_round_trip(f in poly_strategy(4, 8), extra in 0u32..3) {
        prop_assume!(!f.is_zero());
        let total = f.degree().unwrap() + extra;
        let h = f.homogenize(total, &Vars::xyz()).unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize(2, &Vars::xy()), f);
    }

    #[test]
    fn null_space_annihilates(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..5)) {
        let a = RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect());
        let ns = solve_linear(&a);
        prop_assert_eq!(ns.rank + ns.basis.len(), 5);
        prop_assert_eq!(ns.rank, a.rank());
        for v in &ns.basis {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rational_roots_found(roots in prop::collection::vec((-20i64..=20, 1i64..=6), 1..4), extra in 0i64..3) {
        let rs: Vec<Rational> = roots.iter().map(|&(n, d)| Rational::new(n.into(), d.into())).collect();
        let mut p = rs.iter().fold(UPoly::one(), |acc, r| acc.mul(&UPoly::linear_root(r)));
        // an irreducible quadratic factor must not contribute roots
        p = p.mul(&UPoly::new(vec![int(2 + extra), int(0), int(1)]));
        let mut expect = rs.clone();
        expect.sort();
        expect.dedup();
        prop_assert_eq!(p.rational_roots(), expect);
    }
}
