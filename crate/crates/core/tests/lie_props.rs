use std::sync::Arc;

use brace_core::graded_lie::{graded_basis, Expr, Generator, GradingView, LieElement, Presentation};
use brace_core::oracle;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const W: GradingView = GradingView::Whitehead;
const NAMES: [&str; 3] = ["a", "b", "c"];

/// Samelson degrees 1, 2, 3: both parities.
fn pres() -> Arc<Presentation> {
    Presentation::new(vec![Generator::whitehead("a", 2), Generator::whitehead("b", 3), Generator::whitehead("c", 4)]).unwrap()
}

fn whitehead_degree(e: &Expr) -> u32 {
    match e {
        Expr::Gen(n) => NAMES.iter().position(|x| x == n).unwrap() as u32 + 2,
        Expr::Bracket(x, y) => whitehead_degree(x) + whitehead_degree(y) - 1,
        Expr::Scale(_, x) => whitehead_degree(x),
        _ => unreachable!(),
    }
}

fn expr() -> impl Strategy<Value = Expr> {
    expr_upto(8)
}

fn expr_upto(max: u32) -> impl Strategy<Value = Expr> {
    let leaf = (0usize..3, -2i64..=3).prop_map(|(i, k)| {
        let g = Expr::Gen(NAMES[i].to_string());
        if k == 1 {
            g
        } else {
            Expr::Scale(BigRational::from_integer(BigInt::from(k)), Box::new(g))
        }
    });
    leaf.prop_recursive(3, 8, 2, |inner| (inner.clone(), inner).prop_map(|(x, y)| Expr::Bracket(Box::new(x), Box::new(y))))
        .prop_filter("degree bound", move |e| whitehead_degree(e) <= max)
}

fn bracket(x: &Expr, y: &Expr) -> Expr {
    Expr::Bracket(Box::new(x.clone()), Box::new(y.clone()))
}

fn sign(odd: bool) -> BigRational {
    BigRational::from_integer(BigInt::from(if odd { -1 } else { 1 }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn whitehead_antisymmetry(x in expr(), y in expr()) {
        let p = pres();
        let (ex, ey) = (x.eval(&p, W).unwrap(), y.eval(&p, W).unwrap());
        let (dp, dq) = (whitehead_degree(&x), whitehead_degree(&y));
        let lhs = ex.whitehead_bracket(&ey).unwrap();
        let rhs = ey.whitehead_bracket(&ex).unwrap().scale(&sign(dp * dq % 2 == 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_and_oracle_agree(x in expr_upto(6), y in expr_upto(6), z in expr_upto(4)) {
        prop_assume!(whitehead_degree(&x) + whitehead_degree(&y) + whitehead_degree(&z) <= 14);
        let p = pres();
        let (ex, ey, ez) = (x.eval(&p, W).unwrap(), y.eval(&p, W).unwrap(), z.eval(&p, W).unwrap());
        prop_assert!(LieElement::jacobi_defect(&ex, &ey, &ez).unwrap().is_zero());
        let nested = bracket(&x, &bracket(&y, &z));
        let engine = oracle::expand_element(&nested.eval(&p, W).unwrap());
        let (reference, _) = oracle::eval(&nested, &NAMES, &p.weights(), W).unwrap();
        prop_assert_eq!(engine, reference);
    }

    #[test]
    fn bracket_is_bilinear(x in expr(), y in expr(), k in -3i64..=3) {
        let p = pres();
        let (ex, ey) = (x.eval(&p, W).unwrap(), y.eval(&p, W).unwrap());
        let ey2 = ey.add(&ey.scale_int(k)).unwrap();
        let lhs = ex.whitehead_bracket(&ey2).unwrap();
        let rhs = ex.whitehead_bracket(&ey).unwrap().scale_int(1 + k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn view_round_trip(x in expr()) {
        let p = pres();
        let ex = x.eval(&p, W).unwrap();
        prop_assert_eq!(ex.in_view(GradingView::Samelson).in_view(W), ex);
    }
}

#[test]
fn basis_dimensions_match_rank_and_pbw() {
    for weights in [vec![1u32, 2], vec![1, 1], vec![2, 2, 3], vec![1, 2, 3]] {
        let gens: Vec<_> = weights.iter().enumerate().map(|(i, &w)| Generator::new(format!("g{i}"), w)).collect();
        let cap = 7;
        let basis = graded_basis(&gens, cap).unwrap();
        let by_rank = oracle::lie_dimensions_by_rank(&weights, cap);
        let by_pbw = oracle::lie_dimensions_by_pbw(&weights, cap);
        for d in 1..=cap {
            let got = basis.dimension(d);
            assert_eq!(got, by_rank.get(&d).copied().unwrap_or(0), "rank, weights {weights:?}, degree {d}");
            assert_eq!(got, by_pbw.get(&d).copied().unwrap_or(0), "PBW, weights {weights:?}, degree {d}");
        }
    }
}

#[test]
fn odd_square_survives_even_square_vanishes() {
    // Samelson degree 1 (Whitehead 2): [ι, ι] ≠ 0; Samelson degree 2: ⟨x, x⟩ = 0.
    let p = pres();
    let a = LieElement::generator(&p, "a", W).unwrap();
    let b = LieElement::generator(&p, "b", W).unwrap();
    assert!(!a.whitehead_bracket(&a).unwrap().is_zero());
    assert!(b.whitehead_bracket(&b).unwrap().is_zero());
}
