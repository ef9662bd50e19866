use num_traits::Zero;
use planefol_core::field::{singular_points, singular_scheme_degree, Mat3, VectorField};
use planefol_core::poly::{MPoly, Monomial, Vars};
use planefol_core::rational::int;
use proptest::prelude::*;

fn poly_strategy(max_deg: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0..=max_deg), (0..=max_deg), -4i64..=4), 1..=max_terms).prop_map(move |terms| {
        MPoly::from_terms(
            &Vars::xy(),
            terms
                .into_iter()
                .filter(|(a, b, _)| a + b <= max_deg)
                .map(|(a, b, c)| (Monomial(vec![a, b]), int(c))),
        )
    })
}

/// Dense random field of affine degree exactly `m`.
fn field_strategy(m: u32) -> impl Strategy<Value = VectorField> {
    let n = ((m + 1) * (m + 2) / 2) as usize;
    (
        prop::collection::vec(-3i64..=3, n),
        prop::collection::vec(-3i64..=3, n),
        1i64..=3,
        1i64..=3,
    )
        .prop_filter_map("degenerate field", move |(pc, qc, lp, lq)| {
            let v = Vars::xy();
            let monos = planefol_core::poly::monomials_up_to(2, m);
            let mk = |c: &[i64], lead: i64| {
                let mut p = MPoly::from_terms(&v, monos.iter().cloned().zip(c.iter().map(|&k| int(k))));
                // force the top degree to be present
                p = &p + &MPoly::monomial(&v, Monomial(vec![m, 0]), int(lead));
                p
            };
            let f = VectorField::new(mk(&pc, lp), mk(&qc, -lq)).ok()?;
            (f.affine_degree() == m).then_some(f)
        })
}

fn mat_strategy() -> impl Strategy<Value = Mat3> {
    prop::array::uniform3(prop::array::uniform3(-3i64..=3))
        .prop_map(Mat3::from_ints)
        .prop_filter("invertible", |m| !m.det().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn apply_is_linear_and_leibniz(p in poly_strategy(2, 4), q in poly_strategy(2, 4),
                                   f in poly_strategy(3, 5), g in poly_strategy(3, 5), c in -5i64..=5) {
        prop_assume!(!(p.is_zero() && q.is_zero()));
        let field = VectorField::new(p, q).unwrap();
        let c = int(c);
        prop_assert_eq!(field.apply(&(&f + &g.scale(&c))), &field.apply(&f) + &field.apply(&g).scale(&c));
        prop_assert_eq!(field.apply(&(&f * &g)), &(&field.apply(&f) * &g) + &(&f * &field.apply(&g)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn total_multiplicity_matches_degree(field in (1u32..=3).prop_flat_map(field_strategy)) {
        let scheme = singular_points(&field);
        prop_assume!(scheme.is_ok());
        prop_assert_eq!(scheme.unwrap().total_degree as i64, singular_scheme_degree(field.d()));
    }

    #[test]
    fn multiplicities_survive_projective_changes(field in field_strategy(2), m1 in mat_strategy(), m2 in mat_strategy()) {
        let Ok(base) = singular_points(&field) else { return Ok(()) };
        for m in [m1, m2] {
            let moved = field.projective_transform(&m).unwrap();
            let Ok(scheme) = singular_points(&moved) else { continue };
            prop_assert_eq!(scheme.total_degree, base.total_degree);
            let inv = m.inverse().unwrap();
            for p in &base.rational_points {
                prop_assert_eq!(scheme.multiplicity_at(&inv.apply(&p.point)), p.multiplicity);
            }
        }
    }
}
