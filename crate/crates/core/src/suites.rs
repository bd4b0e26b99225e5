//! Seeded randomized property suites, shared by the test targets and the
//! `verify` command.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::clutching::jrules::{evaluate, random_term, JContext};
use crate::clutching::{ClutchingData, ClutchingError, ExactSeqSO};
use crate::fibration::{derivation_identity_check, lie_map_identity_check, FibrationError, SplitFibration};
use crate::graded_lie::{graded_basis, Expr, Generator, GradingView, LieElement, Monomial, Presentation};
use crate::homotopy_data::HtpyTable;
use crate::oracle;

const S: GradingView = GradingView::Samelson;
const W: GradingView = GradingView::Whitehead;

pub const DEFAULT_SEED: u64 = 0x00b7_ace5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Jacobi,
    Derivation,
    LieMap,
    Bilinearity,
    Exactness,
    JRules,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Jacobi, Suite::Derivation, Suite::LieMap, Suite::Bilinearity, Suite::Exactness, Suite::JRules];

    pub fn parse(s: &str) -> Result<Suite, SuiteError> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Jacobi => "jacobi",
            Suite::Derivation => "derivation",
            Suite::LieMap => "lie-map",
            Suite::Bilinearity => "bilinearity",
            Suite::Exactness => "exactness",
            Suite::JRules => "j-rules",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}` (expected one of jacobi, derivation, lie-map, bilinearity, exactness, j-rules)")]
    UnknownSuite(String),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
    #[error(transparent)]
    Clutching(#[from] ClutchingError),
    #[error(transparent)]
    Lie(#[from] crate::graded_lie::LieError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub degree_cap: u32,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub mutations: usize,
    pub mutations_detected: usize,
    /// Failing cases, smallest degree first.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite, seed: u64, degree_cap: u32) -> Self {
        SuiteReport {
            suite,
            seed,
            degree_cap,
            trials: 0,
            passed: 0,
            failed: 0,
            mutations: 0,
            mutations_detected: 0,
            failures: vec![],
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0 && self.mutations_detected == self.mutations
    }

    fn record(&mut self, ok: bool, degree: u32, what: impl FnOnce() -> String) {
        self.trials += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.failures.push(format!("[degree {degree}] {}", what()));
        }
    }

    fn mutation(&mut self, detected: bool, what: impl FnOnce() -> String) {
        self.mutations += 1;
        if detected {
            self.mutations_detected += 1;
        } else {
            self.failures.push(format!("undetected mutation: {}", what()));
        }
    }

    fn finish(mut self) -> Self {
        // Degree tags sort numerically only up to 9; key on the parsed number.
        self.failures.sort_by_key(|f| {
            let d: u32 = f.strip_prefix("[degree ").and_then(|r| r.split(']').next()).and_then(|n| n.parse().ok()).unwrap_or(u32::MAX);
            (d, f.clone())
        });
        self.failures.truncate(10);
        self
    }
}

pub fn run_suite(suite: Suite, trials: usize, degree_cap: u32, seed: u64) -> Result<SuiteReport, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (suite as u64).wrapping_mul(0x9e37_79b9));
    let report = SuiteReport::new(suite, seed, degree_cap);
    let r = match suite {
        Suite::Jacobi => jacobi(report, trials, degree_cap, &mut rng)?,
        Suite::Derivation => identities(report, trials, degree_cap, &mut rng, false)?,
        Suite::LieMap => identities(report, trials, degree_cap, &mut rng, true)?,
        Suite::Bilinearity => bilinearity(report, trials, degree_cap, &mut rng)?,
        Suite::Exactness => exactness(report)?,
        Suite::JRules => jrules(report, trials, &mut rng),
    };
    Ok(r.finish())
}

fn random_presentation<R: Rng>(rng: &mut R, prefix: &str, count: usize, max_whitehead: u32) -> Arc<Presentation> {
    let gens = (0..count).map(|i| Generator::whitehead(format!("{prefix}{}", i + 1), rng.gen_range(2..=max_whitehead))).collect();
    Presentation::new(gens).expect("distinct names")
}

/// Whitehead degree of an expression over generators of the given
/// Whitehead degrees; None for mixed sums.
fn expr_degree(e: &Expr, pres: &Presentation) -> Option<u32> {
    match e {
        Expr::Zero => None,
        Expr::Gen(n) => pres.generators().iter().find(|g| &g.name == n).map(|g| g.samelson_degree + 1),
        Expr::Bracket(a, b) => Some(expr_degree(a, pres)? + expr_degree(b, pres)? - 1),
        Expr::Scale(_, e) => expr_degree(e, pres),
        Expr::Sum(es) => es.first().and_then(|e| expr_degree(e, pres)),
    }
}

fn random_expr<R: Rng>(rng: &mut R, pres: &Presentation, depth: u32) -> Expr {
    let gens = pres.generators();
    if depth == 0 || rng.gen_bool(0.4) {
        let g = &gens[rng.gen_range(0..gens.len())];
        let e = Expr::Gen(g.name.clone());
        return if rng.gen_bool(0.3) {
            Expr::Scale(BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))), Box::new(e))
        } else {
            e
        };
    }
    Expr::Bracket(Box::new(random_expr(rng, pres, depth - 1)), Box::new(random_expr(rng, pres, depth - 1)))
}

fn sign(odd: bool) -> BigRational {
    if odd {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

fn jacobi<R: Rng>(mut rep: SuiteReport, trials: usize, cap: u32, rng: &mut R) -> Result<SuiteReport, SuiteError> {
    let names_of = |p: &Presentation| p.generators().iter().map(|g| g.name.clone()).collect::<Vec<_>>();
    let mut attempts = 0;
    while rep.trials < trials && attempts < trials * 20 {
        attempts += 1;
        let count = rng.gen_range(2..=3);
        let pres = random_presentation(rng, "x", count, 4);
        let names = names_of(&pres);
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let weights = pres.weights();
        // Rejection-sample a triple with the Jacobi sum inside the cap.
        let deg = |e: &Expr| expr_degree(e, &pres).expect("random expressions are homogeneous");
        let mut triple = None;
        for _ in 0..256 {
            let t = (random_expr(rng, &pres, 2), random_expr(rng, &pres, 2), random_expr(rng, &pres, 1));
            if deg(&t.0) + deg(&t.1) + deg(&t.2) <= cap + 2 {
                triple = Some(t);
                break;
            }
        }
        let Some((ex, ey, ez)) = triple else { continue };
        let degree = expr_degree(&ex, &pres).unwrap() + expr_degree(&ey, &pres).unwrap() + expr_degree(&ez, &pres).unwrap() - 2;
        let (x, y, z) = (ex.eval(&pres, W)?, ey.eval(&pres, W)?, ez.eval(&pres, W)?);
        let defect = LieElement::jacobi_defect(&x, &y, &z)?;
        // Oracle: the nested bracket expanded in the tensor algebra.
        let nested = Expr::Bracket(Box::new(ex.clone()), Box::new(Expr::Bracket(Box::new(ey.clone()), Box::new(ez.clone()))));
        let engine = oracle::expand_element(&nested.eval(&pres, W)?);
        let (reference, _) = oracle::eval(&nested, &names, &weights, W).expect("generators known");
        // Whitehead antisymmetry [X,Y] = (−1)^{pq}[Y,X].
        let (p, q) = (x.degree(), y.degree());
        let anti = match (p, q) {
            (Some(p), Some(q)) => {
                let l = x.whitehead_bracket(&y)?;
                let r = y.whitehead_bracket(&x)?.scale(&sign(p * q % 2 == 1));
                l == r
            }
            _ => true,
        };
        let ok = defect.is_zero() && engine == reference && anti;
        rep.record(ok, degree, || {
            format!("x = {}, y = {}, z = {} over {:?}: jacobi {}, oracle {}, antisymmetry {}", x, y, z, weights, defect.is_zero(), engine == reference, anti)
        });
    }
    Ok(rep)
}

fn basis_at(pres: &Arc<Presentation>, whitehead: u32, cap: u32) -> Vec<Monomial> {
    if whitehead < 2 {
        return vec![];
    }
    let s = whitehead - 1;
    match graded_basis(pres.generators(), cap.max(pres.max_degree())) {
        Ok(b) => b.by_degree.get(&s).cloned().unwrap_or_default(),
        Err(_) => vec![],
    }
}

fn random_combination<R: Rng>(rng: &mut R, pres: &Arc<Presentation>, basis: &[Monomial], samelson: u32) -> LieElement {
    let mut x = LieElement::zero_of_degree(pres, S, samelson);
    for m in basis {
        let c = rng.gen_range(-2i64..=2);
        if c != 0 {
            let term = LieElement::monomial(pres, m.clone(), BigRational::from_integer(c.into()), S);
            x = x.add(&term).expect("same degree");
        }
    }
    x
}

/// A random valid pairing given by James braces on generators.
fn random_pairing<R: Rng>(rng: &mut R, cap: u32) -> SplitFibration {
    let base = random_presentation(rng, "b", 2, 3);
    let fibre = random_presentation(rng, "f", 2, 3);
    let braces = base
        .generators()
        .iter()
        .map(|b| {
            fibre
                .generators()
                .iter()
                .map(|f| {
                    let s = b.samelson_degree + f.samelson_degree;
                    let basis = basis_at(&fibre, s + 1, cap);
                    random_combination(rng, &fibre, &basis, s)
                })
                .collect()
        })
        .collect();
    SplitFibration::from_generator_braces(&base, &fibre, braces).expect("degrees match by construction")
}

fn monomials_upto(pres: &Arc<Presentation>, cap: u32) -> Vec<(Monomial, u32)> {
    let weights = pres.weights();
    graded_basis(pres.generators(), cap.max(pres.max_degree()))
        .map(|b| b.iter().map(|m| (m.clone(), m.degree(&weights) + 1)).collect())
        .unwrap_or_default()
}

fn elt(pres: &Arc<Presentation>, m: &Monomial) -> LieElement {
    LieElement::monomial(pres, m.clone(), BigRational::one(), S)
}

/// Derivation (`lie_map = false`) or Lie-map identities on random valid
/// pairings, plus one table mutation per trial that must be caught.
fn identities<R: Rng>(
    mut rep: SuiteReport,
    trials: usize,
    cap: u32,
    rng: &mut R,
    lie_map: bool,
) -> Result<SuiteReport, SuiteError> {
    let mut attempts = 0;
    while rep.trials < trials && attempts < trials * 20 {
        attempts += 1;
        let t = rep.trials;
        let fib = random_pairing(rng, cap);
        let (base, fibre) = (fib.base().clone(), fib.fibre().clone());
        // Each slot has Whitehead degree ≥ 2, so one slot is at most cap − 4.
        let small = |v: Vec<(Monomial, u32)>| v.into_iter().filter(|(_, d)| *d + 4 <= cap).collect::<Vec<_>>();
        let bm = small(monomials_upto(&base, cap));
        let fm = small(monomials_upto(&fibre, cap));
        if bm.is_empty() || fm.is_empty() {
            continue;
        }
        // Random triple within the combined degree cap.
        let mut found = None;
        for _ in 0..64 {
            let (a, da) = bm.choose(rng).unwrap();
            let (second, ds) = if lie_map { bm.choose(rng).unwrap() } else { fm.choose(rng).unwrap() };
            let (c, dc) = fm.choose(rng).unwrap();
            if da + ds + dc <= cap {
                found = Some(((a.clone(), second.clone(), c.clone()), da + ds + dc));
                break;
            }
        }
        let Some(((a, second, c), degree)) = found else { continue };
        let v = if lie_map {
            lie_map_identity_check(&fib, &elt(&base, &a), &elt(&base, &second), &elt(&fibre, &c))?
        } else {
            derivation_identity_check(&fib, &elt(&base, &a), &elt(&fibre, &second), &elt(&fibre, &c))?
        };
        rep.record(v.is_hold(), degree, || format!("{} with pairing {:?}", v.claim, fib.pairing()));

        // Mutation: perturb one table entry D_{m_b}(m_f) whose slot is a bracket.
        let table = fib.tabulate(cap)?;
        let candidates: Vec<(Monomial, Monomial)> = crate::fibration::basis_pairs(&base, &fibre, cap)?
            .into_iter()
            .filter(|(mb, mf)| if lie_map { !mb.is_generator() } else { !mf.is_generator() })
            .filter(|(mb, mf)| {
                let s = mb.degree(&base.weights()) + mf.degree(&fibre.weights());
                !basis_at(&fibre, s + 1, cap + 1).is_empty()
            })
            .collect();
        let Some((mb, mf)) = candidates.choose(rng).cloned() else { continue };
        let s = mb.degree(&base.weights()) + mf.degree(&fibre.weights());
        let target = basis_at(&fibre, s + 1, cap + 1);
        let bump = elt(&fibre, target.choose(rng).unwrap());
        let old = table.d_monomial(&mb, &mf)?;
        let bad = table.with_table_entry((mb.clone(), mf.clone()), old.add(&bump)?);
        let check = if lie_map {
            let (u, w) = mb.children().expect("bracket");
            lie_map_identity_check(&bad, &elt(&base, &u), &elt(&base, &w), &elt(&fibre, &mf))?
        } else {
            let (u, w) = mf.children().expect("bracket");
            derivation_identity_check(&bad, &elt(&base, &mb), &elt(&fibre, &u), &elt(&fibre, &w))?
        };
        let mut detected = check.is_fail() && check.witness.as_ref().is_some_and(|w| w.is_nonzero());
        // The Jacobi audit of the assembled total algebra must agree.
        if t % 16 == 0 {
            let top = mb.degree(&base.weights()) + mf.degree(&fibre.weights()) + 3;
            detected &= matches!(bad.assemble_total_lie(top), Err(FibrationError::InvalidPairing { .. }));
        }
        rep.mutation(detected, || format!("D({}, {}) += {}", mb.render(&base), mf.render(&fibre), bump));
    }
    Ok(rep)
}

fn bilinearity<R: Rng>(mut rep: SuiteReport, trials: usize, cap: u32, rng: &mut R) -> Result<SuiteReport, SuiteError> {
    let mut attempts = 0;
    while rep.trials < trials && attempts < trials * 20 {
        attempts += 1;
        let fib = random_pairing(rng, cap);
        let (base, fibre) = (fib.base().clone(), fib.fibre().clone());
        let db = rng.gen_range(2..=cap.saturating_sub(2).max(2));
        let df = rng.gen_range(2..=cap.saturating_sub(db).max(2));
        let (bb, fb) = (basis_at(&base, db, cap), basis_at(&fibre, df, cap));
        if bb.is_empty() || fb.is_empty() {
            continue;
        }
        let b1 = random_combination(rng, &base, &bb, db - 1);
        let b2 = random_combination(rng, &base, &bb, db - 1);
        let f1 = random_combination(rng, &fibre, &fb, df - 1);
        let f2 = random_combination(rng, &fibre, &fb, df - 1);
        let k = rng.gen_range(-3i64..=3);
        let left = fib.james_brace(&b1.add(&b2)?.in_view(W), &f1.in_view(W))?;
        let left_r = fib.james_brace(&b1.in_view(W), &f1.in_view(W))?.add(&fib.james_brace(&b2.in_view(W), &f1.in_view(W))?)?;
        let right = fib.james_brace(&b1.in_view(W), &f1.add(&f2)?.in_view(W))?;
        let right_r = fib.james_brace(&b1.in_view(W), &f1.in_view(W))?.add(&fib.james_brace(&b1.in_view(W), &f2.in_view(W))?)?;
        let scaled = fib.james_brace(&b1.scale_int(k).in_view(W), &f1.in_view(W))?;
        let scaled_r = fib.james_brace(&b1.in_view(W), &f1.in_view(W))?.scale_int(k);
        let ok = left == left_r && right == right_r && scaled == scaled_r;
        rep.record(ok, db + df - 1, || format!("b1 = {b1}, b2 = {b2}, f1 = {f1}, f2 = {f2}, k = {k}"));
    }
    Ok(rep)
}

fn exactness(mut rep: SuiteReport) -> Result<SuiteReport, SuiteError> {
    let table = HtpyTable::bundled();
    let data = ClutchingData::bundled(&table)?;
    for &n in data.sequences() {
        let seq = ExactSeqSO::from_data(&data, n)?;
        let audit = seq.exactness_audit();
        rep.record(audit.is_ok(), n, || format!("n = {n}: {}", audit.as_ref().unwrap_err()));
        for m in seq.mutations() {
            let caught = matches!(m.seq.exactness_audit(), Err(ClutchingError::AuditFailure { .. }));
            rep.mutation(caught, || format!("n = {n}: {}", m.label));
        }
    }
    Ok(rep)
}

fn jrules<R: Rng>(mut rep: SuiteReport, trials: usize, rng: &mut R) -> SuiteReport {
    for _ in 0..trials {
        let depth = rng.gen_range(1..=5);
        let t = random_term(rng, depth);
        let mut ok = true;
        for x_is_suspension in [false, true] {
            let ctx = JContext { x_is_suspension };
            let reference = evaluate(&t, ctx);
            for _ in 0..3 {
                ok &= t.normalize_random(ctx, rng) == reference;
            }
        }
        rep.record(ok, depth, || format!("{t:?}"));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for s in Suite::ALL {
            let r = run_suite(s, 12, 8, DEFAULT_SEED).unwrap();
            assert!(r.ok(), "{s}: {:?}", r.failures);
        }
        assert!(Suite::parse("nope").is_err());
    }
}
