use std::sync::Arc;

use brace_core::fibration::{brace_pullback, BaseEffect, SplitFibration};
use brace_core::graded_lie::{graded_basis, Generator, GradingView, LieElement, Presentation};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const S: GradingView = GradingView::Samelson;
const CAP: u32 = 8;

fn base() -> Arc<Presentation> {
    Presentation::new(vec![Generator::whitehead("x", 2), Generator::whitehead("y", 3)]).unwrap()
}

fn fibre() -> Arc<Presentation> {
    Presentation::new(vec![Generator::whitehead("f", 2), Generator::whitehead("g", 3)]).unwrap()
}

/// Σ cᵢ mᵢ over the basis in Samelson degree `s`, coefficients cycled.
fn combo(p: &Arc<Presentation>, s: u32, coeffs: &[i64]) -> LieElement {
    let basis = graded_basis(p.generators(), CAP).unwrap();
    let mut x = LieElement::zero_of_degree(p, S, s);
    for (m, c) in basis.by_degree.get(&s).into_iter().flatten().zip(coeffs.iter().cycle()) {
        let term = LieElement::monomial(p, m.clone(), BigRational::from_integer(BigInt::from(*c)), S);
        x = x.add(&term).unwrap();
    }
    x
}

/// Generator braces {b_i, f_j}_s as random fibre classes of the right degree.
fn fibration(coeffs: &[i64]) -> SplitFibration {
    let (b, f) = (base(), fibre());
    let braces = b
        .generators()
        .iter()
        .enumerate()
        .map(|(i, bg)| {
            f.generators()
                .iter()
                .enumerate()
                .map(|(j, fg)| {
                    let c = &coeffs[(2 * i + j) % coeffs.len()..];
                    combo(&f, bg.samelson_degree + fg.samelson_degree, c).in_view(GradingView::Whitehead)
                })
                .collect()
        })
        .collect();
    SplitFibration::from_generator_braces(&b, &f, braces).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 4..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn brace_is_bilinear(fc in coeffs(), a1 in coeffs(), a2 in coeffs(), b1 in coeffs(), b2 in coeffs(), sa in 1u32..=3, sb in 1u32..=3) {
        let fib = fibration(&fc);
        let (b, f) = (base(), fibre());
        let (x1, x2) = (combo(&b, sa, &a1), combo(&b, sa, &a2));
        let (y1, y2) = (combo(&f, sb, &b1), combo(&f, sb, &b2));
        let left = fib.james_brace(&x1.add(&x2).unwrap(), &y1).unwrap();
        let split = fib.james_brace(&x1, &y1).unwrap().add(&fib.james_brace(&x2, &y1).unwrap()).unwrap();
        prop_assert_eq!(left, split);
        let right = fib.james_brace(&x1, &y1.add(&y2).unwrap()).unwrap();
        let split = fib.james_brace(&x1, &y1).unwrap().add(&fib.james_brace(&x1, &y2).unwrap()).unwrap();
        prop_assert_eq!(right, split);
        let scaled = fib.james_brace(&x1.scale_int(3), &y1).unwrap();
        prop_assert_eq!(scaled, fib.james_brace(&x1, &y1).unwrap().scale_int(3));
    }

    #[test]
    fn pullback_is_functorial(fc in coeffs(), fa in coeffs(), ga in coeffs(), a in coeffs(), bc in coeffs(), sa in 1u32..=3, sb in 1u32..=2) {
        let fib = fibration(&fc);
        let b = base();
        // f : B' → B and g : B'' → B', all with generators in Whitehead degrees 2, 3.
        let b1 = Presentation::new(vec![Generator::whitehead("u", 2), Generator::whitehead("v", 3)]).unwrap();
        let b2 = Presentation::new(vec![Generator::whitehead("p", 2), Generator::whitehead("q", 3)]).unwrap();
        let f = BaseEffect::new(&b1, &b, vec![combo(&b, 1, &fa), combo(&b, 2, &fa[1..])]).unwrap();
        let g = BaseEffect::new(&b2, &b1, vec![combo(&b1, 1, &ga), combo(&b1, 2, &ga[1..])]).unwrap();
        let alpha = combo(&b2, sa, &a);
        let beta = combo(&fibre(), sb, &bc);
        let stepwise = fib.pullback(&f).unwrap().pullback(&g).unwrap().james_brace(&alpha, &beta).unwrap();
        let composite = fib.pullback(&f.after(&g).unwrap()).unwrap().james_brace(&alpha, &beta).unwrap();
        prop_assert_eq!(&stepwise, &composite);
        // {α, β}_{(f∘g)*s} = {(f∘g)_*α, β}_s.
        let direct = brace_pullback(&fib, &f.after(&g).unwrap(), &alpha, &beta).unwrap();
        prop_assert_eq!(&stepwise, &direct);
    }

    #[test]
    fn identity_and_zero_pullbacks(fc in coeffs(), a in coeffs(), bc in coeffs(), sa in 1u32..=3, sb in 1u32..=2) {
        let fib = fibration(&fc);
        let b = base();
        let alpha = combo(&b, sa, &a);
        let beta = combo(&fibre(), sb, &bc);
        let id = fib.pullback(&BaseEffect::identity(&b)).unwrap();
        prop_assert_eq!(id.james_brace(&alpha, &beta).unwrap(), fib.james_brace(&alpha, &beta).unwrap());
        let z = fib.pullback(&BaseEffect::zero(&b, &b)).unwrap();
        prop_assert!(z.james_brace(&alpha, &beta).unwrap().is_zero());
    }

    #[test]
    fn generator_pairings_assemble(fc in coeffs()) {
        // Generator-defined pairings extend as derivations, so the total
        // Lie algebra always exists.
        prop_assert!(fibration(&fc).assemble_total_lie(7).is_ok());
    }
}

#[test]
fn trivial_fibration_has_no_braces() {
    let (b, f) = (base(), fibre());
    let fib = SplitFibration::trivial(&b, &f);
    for s in 1..=3 {
        for t in 1..=3 {
            assert!(fib.james_brace(&combo(&b, s, &[1, -2, 3]), &combo(&f, t, &[2, 1])).unwrap().is_zero());
        }
    }
}
