//! Brute-force reference computations in the free associative algebra.
//!
//! Deliberately shares no code with the Lyndon normal form: polynomials are
//! plain hash maps, brackets are expanded as graded commutators, and
//! dimensions come from exact rank computations over Q or from the
//! Poincaré–Birkhoff–Witt identity. Used by the property suites as an
//! independent check of `graded_lie`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graded_lie::{Expr, GradingView, LieElement, Monomial};

pub type Poly = HashMap<Vec<u16>, BigRational>;

fn clean(p: &mut Poly) {
    p.retain(|_, v| !v.is_zero());
}

pub fn poly_add(a: &Poly, b: &Poly, scale_b: &BigRational) -> Poly {
    let mut out = a.clone();
    for (w, c) in b {
        *out.entry(w.clone()).or_insert_with(BigRational::zero) += c * scale_b;
    }
    clean(&mut out);
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (u, x) in a {
        for (v, y) in b {
            let w: Vec<u16> = u.iter().chain(v).copied().collect();
            *out.entry(w).or_insert_with(BigRational::zero) += x * y;
        }
    }
    clean(&mut out);
    out
}

/// xy − (−1)^{dx·dy} yx.
pub fn commutator(a: &Poly, b: &Poly, da: u32, db: u32) -> Poly {
    let s = if da * db % 2 == 0 { -BigRational::one() } else { BigRational::one() };
    poly_add(&poly_mul(a, b), &poly_mul(b, a), &s)
}

fn letter(g: u16) -> Poly {
    let mut p = Poly::new();
    p.insert(vec![g], BigRational::one());
    p
}

/// Evaluate a Lie expression into the tensor algebra with Samelson
/// coefficients. Brackets are read in `view`: a Whitehead bracket [X, Y]
/// is (−1)^{|x|} times the Samelson bracket, |x| the Samelson degree.
/// Returns the polynomial and its Samelson degree (None for zero).
pub fn eval(expr: &Expr, names: &[&str], weights: &[u32], view: GradingView) -> Option<(Poly, Option<u32>)> {
    match expr {
        Expr::Zero => Some((Poly::new(), None)),
        Expr::Gen(n) => {
            let i = names.iter().position(|m| m == n)? as u16;
            Some((letter(i), Some(weights[i as usize])))
        }
        Expr::Bracket(a, b) => {
            let (pa, da) = eval(a, names, weights, view)?;
            let (pb, db) = eval(b, names, weights, view)?;
            match (da, db) {
                (Some(x), Some(y)) => {
                    let mut p = commutator(&pa, &pb, x, y);
                    if view == GradingView::Whitehead && x % 2 == 1 {
                        p = poly_add(&Poly::new(), &p, &-BigRational::one());
                    }
                    Some((p, Some(x + y)))
                }
                _ => Some((Poly::new(), None)),
            }
        }
        Expr::Scale(c, e) => {
            let (p, d) = eval(e, names, weights, view)?;
            Some((poly_add(&Poly::new(), &p, c), d))
        }
        Expr::Sum(es) => {
            let mut acc = Poly::new();
            let mut deg = None;
            for e in es {
                let (p, d) = eval(e, names, weights, view)?;
                if let (Some(a), Some(b)) = (deg, d) {
                    if a != b {
                        return None;
                    }
                }
                deg = deg.or(d);
                acc = poly_add(&acc, &p, &BigRational::one());
            }
            Some((acc, deg))
        }
    }
}

fn monomial_poly(m: &Monomial, weights: &[u32]) -> Poly {
    match m.children() {
        None => letter(m.word()[0]),
        Some((l, r)) => commutator(
            &monomial_poly(&l, weights),
            &monomial_poly(&r, weights),
            l.degree(weights),
            r.degree(weights),
        ),
    }
}

/// Expand a normal-form element by walking its monomial trees.
pub fn expand_element(x: &LieElement) -> Poly {
    let s = x.in_view(GradingView::Samelson);
    let weights = s.presentation().weights();
    let mut out = Poly::new();
    for (m, c) in s.terms() {
        out = poly_add(&out, &monomial_poly(m, &weights), c);
    }
    out
}

/// Exact rank over Q by Gaussian elimination on sparse rows.
pub fn rank(vectors: &[Poly]) -> usize {
    independent(vectors).len()
}

/// Dimension of the free graded Lie algebra in each multidegree, by
/// spanning L_c with brackets [g, y] (y running over a spanning set of
/// L_{c − e_g}) and computing ranks. Returns dimensions by total degree.
pub fn lie_dimensions_by_rank(weights: &[u32], cap: u32) -> BTreeMap<u32, usize> {
    let k = weights.len();
    // Multidegree → independent spanning polynomials.
    let mut span: BTreeMap<Vec<u32>, Vec<Poly>> = BTreeMap::new();
    let mut contents: Vec<Vec<u32>> = vec![];
    enumerate_contents(weights, cap, &mut vec![0; k], 0, &mut contents);
    contents.sort_by_key(|c| c.iter().sum::<u32>());
    let mut dims: BTreeMap<u32, usize> = (1..=cap).map(|d| (d, 0)).collect();
    for c in contents {
        let len: u32 = c.iter().sum();
        if len == 0 {
            continue;
        }
        let mut cands: Vec<Poly> = vec![];
        if len == 1 {
            let g = c.iter().position(|&x| x == 1).unwrap();
            cands.push(letter(g as u16));
        } else {
            for g in 0..k {
                if c[g] == 0 {
                    continue;
                }
                let mut rest = c.clone();
                rest[g] -= 1;
                let drest: u32 = rest.iter().zip(weights).map(|(a, w)| a * w).sum();
                if let Some(ys) = span.get(&rest) {
                    for y in ys {
                        cands.push(commutator(&letter(g as u16), y, weights[g], drest));
                    }
                }
            }
        }
        let basis = independent(&cands);
        let deg: u32 = c.iter().zip(weights).map(|(a, w)| a * w).sum();
        *dims.get_mut(&deg).unwrap() += basis.len();
        span.insert(c, basis);
    }
    dims
}

/// Echelon basis (as reduced vectors) of the span of `cands`.
fn independent(cands: &[Poly]) -> Vec<Poly> {
    let mut pivots: BTreeMap<Vec<u16>, Poly> = BTreeMap::new();
    for v in cands {
        let mut v = v.clone();
        while let Some(lead) = v.keys().min().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let f = -(&v[&lead] / &p[&lead]);
                    v = poly_add(&v, p, &f);
                }
                None => {
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.into_values().collect()
}

fn enumerate_contents(weights: &[u32], cap: u32, cur: &mut Vec<u32>, i: usize, out: &mut Vec<Vec<u32>>) {
    if i == weights.len() {
        out.push(cur.clone());
        return;
    }
    let used: u32 = cur[..i].iter().zip(weights).map(|(a, w)| a * w).sum();
    let mut n = 0;
    while used + n * weights[i] <= cap {
        cur[i] = n;
        enumerate_contents(weights, cap, cur, i + 1, out);
        n += 1;
    }
    cur[i] = 0;
}

/// Dimensions from the PBW identity: the tensor algebra has Hilbert series
/// 1/(1 − Σ t^{d_i}), and equals ∏_{d odd}(1+t^d)^{ℓ_d} / ∏_{d even}(1−t^d)^{ℓ_d}
/// as a graded space (Samelson parity). Solved degree by degree.
pub fn lie_dimensions_by_pbw(weights: &[u32], cap: u32) -> BTreeMap<u32, usize> {
    let n = cap as usize;
    let mut tensor = vec![BigInt::zero(); n + 1];
    tensor[0] = BigInt::one();
    for d in 1..=n {
        for &w in weights {
            if (w as usize) <= d {
                let prev = tensor[d - w as usize].clone();
                tensor[d] += prev;
            }
        }
    }
    let mut dims = BTreeMap::new();
    // series = product of factors found so far, truncated at cap.
    let mut series = vec![BigInt::zero(); n + 1];
    series[0] = BigInt::one();
    for d in 1..=n {
        // Adding ℓ_d copies of the degree-d factor changes the degree-d
        // coefficient by exactly ℓ_d.
        let l = &tensor[d] - &series[d];
        let l: usize = l.try_into().expect("nonnegative dimension");
        for _ in 0..l {
            series = if d % 2 == 1 { mul_one_plus(&series, d) } else { mul_geometric(&series, d) };
        }
        dims.insert(d as u32, l);
    }
    dims
}

fn mul_one_plus(s: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = s.to_vec();
    for i in (d..s.len()).rev() {
        out[i] += &s[i - d];
    }
    out
}

fn mul_geometric(s: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = s.to_vec();
    for i in d..s.len() {
        let prev = out[i - d].clone();
        out[i] += prev;
    }
    out
}
