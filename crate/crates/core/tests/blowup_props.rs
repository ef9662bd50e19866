use planefol_core::blowup::{curve_class, resolve, strict_exceptional_class, DivisorClass, Germ, DEFAULT_STEP_CAP};
use planefol_core::field::{ProjectivePoint, VectorField};
use planefol_core::poly::{squarefree_part, MPoly, Vars};
use planefol_core::rational::int;
use proptest::prelude::*;

fn xy() -> (MPoly, MPoly) {
    let v = Vars::xy();
    (MPoly::var(&v, 0), MPoly::var(&v, 1))
}

fn origin() -> ProjectivePoint {
    ProjectivePoint::affine(int(0), int(0))
}

/// Reduced products of branches `y^a − k·x^b` through the origin.
fn germ_strategy() -> impl Strategy<Value = MPoly> {
    prop::collection::vec((1u32..=3, 1u32..=5, 1i64..=3), 1..=2)
        .prop_map(|branches| {
            let (x, y) = xy();
            branches.into_iter().fold(MPoly::one(&Vars::xy()), |acc, (a, b, k)| {
                &acc * &(&y.pow(a) - &x.pow(b).scale(&int(k)))
            })
        })
        .prop_filter("reduced", |f| squarefree_part(f).degree() == f.degree())
}

fn class_strategy(n: usize) -> impl Strategy<Value = DivisorClass> {
    (-5i64..=5, prop::collection::vec(-5i64..=5, n)).prop_map(|(h, e)| DivisorClass { h, e })
}

fn field_corpus() -> Vec<(VectorField, MPoly)> {
    let (x, y) = xy();
    vec![
        (
            VectorField::new(y.scale(&int(2)), x.pow(2).scale(&int(3))).unwrap(),
            &y.pow(2) - &x.pow(3),
        ),
        (VectorField::new(x.clone(), -&y).unwrap(), &x * &y),
        (VectorField::new(x.clone(), y.clone()).unwrap(), &y * &(&y - &x)),
        (VectorField::new(x.scale(&int(2)), y.clone()).unwrap(), &y.pow(2) - &x),
        (
            VectorField::new(x.scale(&int(3)), y.scale(&int(2))).unwrap(),
            &y.pow(3) - &x.pow(2),
        ),
    ]
}

#[test]
fn field_acquires_no_poles() {
    for (field, curve) in field_corpus() {
        let tree = resolve(
            Some(&field),
            &[Germ {
                point: origin(),
                equation: curve,
            }],
            DEFAULT_STEP_CAP,
        )
        .unwrap();
        assert!(!tree.flagged);
        for n in &tree.nodes {
            assert!(n.nu_field.unwrap() >= 0, "E{} on {field}", n.id);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn valuations_match_direct_substitution(f in germ_strategy()) {
        let tree = resolve(None, &[Germ { point: origin(), equation: f }], DEFAULT_STEP_CAP).unwrap();
        prop_assert!(!tree.flagged);
        for n in &tree.nodes {
            prop_assert_eq!(tree.direct_valuation(n.id, 0), n.nu_curve[0]);
            prop_assert!(n.nu_curve[0] >= n.nu_proper[0] as i64);
        }
    }

    #[test]
    fn strict_transform_meets_divisors_nonnegatively(f in germ_strategy()) {
        let tree = resolve(None, &[Germ { point: origin(), equation: f }], DEFAULT_STEP_CAP).unwrap();
        let c = curve_class(&tree, 0);
        for i in 0..tree.nodes.len() {
            prop_assert!(c.dot(&strict_exceptional_class(&tree, i)) >= 0);
        }
    }

    #[test]
    fn resolution_is_deterministic_and_incidence_symmetric(f in germ_strategy()) {
        let germ = [Germ { point: origin(), equation: f }];
        let a = resolve(None, &germ, DEFAULT_STEP_CAP).unwrap();
        let b = resolve(None, &germ, DEFAULT_STEP_CAP).unwrap();
        prop_assert_eq!(a.to_dot(), b.to_dot());
        for (p, q) in &a.incidence {
            prop_assert!(p < q);
        }
    }

    #[test]
    fn resolved_configurations_need_no_blowups(k in -3i64..=3, j in 2u32..=4, transversal in any::<bool>()) {
        let (x, y) = xy();
        let mut germs = vec![Germ { point: origin(), equation: &y - &x.pow(j).scale(&int(k)) }];
        if transversal {
            germs.push(Germ { point: origin(), equation: x.clone() });
        }
        let tree = resolve(None, &germs, DEFAULT_STEP_CAP).unwrap();
        prop_assert_eq!(tree.nodes.len(), 0);
    }

    #[test]
    fn pairing_is_bilinear(a in class_strategy(4), b in class_strategy(4), c in class_strategy(4), k in -4i64..=4) {
        prop_assert_eq!(a.add(&b).dot(&c), a.dot(&c) + b.dot(&c));
        prop_assert_eq!(a.scale(k).dot(&c), k * a.dot(&c));
        prop_assert_eq!(a.dot(&b), b.dot(&a));
    }
}
