use brace_core::clutching::jrules::{evaluate, random_term, ClassTerm, JContext, JTerm};
use brace_core::clutching::{
    fibre_equiv_decision, rational_split_certificate, thom_attaching, ClutchingClass, ClutchingData, ExactSeqSO,
};
use brace_core::homotopy_data::HtpyTable;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn env() -> (HtpyTable, ClutchingData) {
    let t = HtpyTable::bundled();
    let d = ClutchingData::bundled(&t).unwrap();
    (t, d)
}

fn ctx(susp: bool) -> JContext {
    JContext { x_is_suspension: susp }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn j_rules_are_confluent(seed in any::<u64>(), depth in 1u32..=4, susp in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_term(&mut rng, depth);
        let reference = evaluate(&t, ctx(susp));
        prop_assert_eq!(t.normalize(ctx(susp)), reference.clone());
        for _ in 0..3 {
            prop_assert_eq!(t.normalize_random(ctx(susp), &mut rng), reference.clone());
        }
    }

    #[test]
    fn j_is_additive(seed in any::<u64>(), susp in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_term(&mut rng, 2), random_term(&mut rng, 2));
        let sum = JTerm::Sum(vec![a.clone(), b.clone()]).normalize(ctx(susp));
        let parts = JTerm::Sum(vec![
            JTerm::J(ClassTerm::Atom("ρ".into())),
            JTerm::Neg(Box::new(JTerm::J(ClassTerm::Atom("ρ".into())))),
            a,
            b,
        ])
        .normalize(ctx(susp));
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn thom_attaching_class_is_additive(x in -40i64..=40, y in -40i64..=40) {
        let (t, d) = env();
        // (n, q) = (4, 3): J : π_3 SO(3) = Z → π_6(S^3) = Z12 is onto, J(k) = k mod 12.
        let j = |k: i64| thom_attaching(&d, &ClutchingClass::from_vector_bundle(&t, &d, 4, 3, &[k]).unwrap()).unwrap().j_xi[0];
        prop_assert_eq!(j(x), x.rem_euclid(12));
        prop_assert_eq!(j(x + y), (j(x) + j(y)).rem_euclid(12));
    }

    #[test]
    fn thom_attaching_additive_in_sequences(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9, e in -9i64..=9, n in prop::sample::select(vec![10u32, 12])) {
        let (t, d) = env();
        let g = t.so(n, n - 1).unwrap();
        let jx = |v: &[i64]| {
            let c = ClutchingClass::from_vector_bundle(&t, &d, n, n, v).unwrap();
            let r = thom_attaching(&d, &c).unwrap();
            t.sphere(n, 2 * n - 1).unwrap().element(&r.j_xi).unwrap()
        };
        let (x, y) = (g.element(&[a, b]).unwrap(), g.element(&[c, e]).unwrap());
        let s = x.add(&y).unwrap();
        prop_assert_eq!(jx(s.coords()), jx(x.coords()).add(&jx(y.coords())).unwrap());
    }

    #[test]
    fn fibre_equivalence_is_an_equivalence(r1 in 0i64..6, r2 in 0i64..6, r3 in 0i64..6) {
        let (t, d) = env();
        let c = |r: i64| ClutchingClass::new(&t, &d, 12, 12, &[r], None).unwrap();
        let eq = |a: &ClutchingClass, b: &ClutchingClass| fibre_equiv_decision(&t, &d, a, b).unwrap().is_hold();
        let (a, b, e) = (c(r1), c(r2), c(r3));
        prop_assert!(eq(&a, &a));
        prop_assert_eq!(eq(&a, &b), eq(&b, &a));
        if eq(&a, &b) && eq(&b, &e) {
            prop_assert!(eq(&a, &e));
        }
        // −J(ξ) for ξ = (0, r) has torsion coordinate −r mod 504.
        prop_assert_eq!(eq(&a, &b), (r1 - r2).rem_euclid(504) == 0);
    }

    #[test]
    fn rational_splitting_always_holds(r in -5i64..=5, n in prop::sample::select(vec![2u32, 10, 12])) {
        let (t, d) = env();
        let c = ClutchingClass::new(&t, &d, n, n, &[if n == 10 { r.rem_euclid(2) } else { r }], None).unwrap();
        prop_assert!(rational_split_certificate(&t, &d, &c).unwrap().is_hold());
    }
}

#[test]
fn degree_two_pullback_kills_free_part_n2() {
    // Direct matrix computation: ξ' = 2ξ − m∂ι must satisfy free(−J(ξ')) = 0.
    let (t, d) = env();
    let seq = ExactSeqSO::from_data(&d, 2).unwrap();
    for k in -6i64..=6 {
        let xi = seq.iota.source().element(&[k]).unwrap();
        let neg_j = seq.neg_j.apply(&xi).unwrap();
        let p = seq.p_image.coords()[0];
        // m solves 2·(−J ξ) = m·P on the free coordinate.
        let two = 2 * neg_j.coords()[0];
        assert_eq!(two % p, 0);
        let m = two / p;
        let del = seq.boundary.image_of_generator(0);
        let xi_p = xi.scale(2).sub(&del.scale(m)).unwrap();
        assert!(seq.neg_j.apply(&xi_p).unwrap().is_zero(), "k = {k}");
        let c = ClutchingClass::from_vector_bundle(&t, &d, 2, 2, &[k]).unwrap();
        let v = rational_split_certificate(&t, &d, &c).unwrap();
        assert!(v.is_hold());
        assert_eq!(v.certificate["free_part"], 0);
    }
}
