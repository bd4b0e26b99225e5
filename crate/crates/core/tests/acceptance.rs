//! One pass/fail line per acceptance criterion. Run with `--nocapture` to
//! see the table; the test fails if any criterion does.

use std::time::{Duration, Instant};

use brace_core::clutching::{
    clutched_split_verdict, fibre_equiv_decision, husemoller_counterexample, husemoller_rectified, p_map,
    rational_split_certificate, ClutchingClass, ClutchingData, ClutchingError, ExactSeqSO,
};
use brace_core::fibration::{
    anchors, free_loop_verdict, rational_verdicts, surface_bundle_report, FibrationDescriptor, LoopTarget, Status,
    Witness, CONVERSE_FAILS,
};
use brace_core::homotopy_data::{FGAbGroup, HtpyTable, Space};
use brace_core::suites::{run_suite, Suite, DEFAULT_SEED};
use serde_json::json;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn env() -> (HtpyTable, ClutchingData) {
    let t = HtpyTable::bundled();
    let d = ClutchingData::bundled(&t).expect("bundled clutching data");
    (t, d)
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn within(limit: Duration, start: Instant) -> Check {
    let dt = start.elapsed();
    ensure!(dt < limit, "took {dt:?}, limit {limit:?}");
    Ok(())
}

fn c1_free_loop_m1() -> Check {
    let start = Instant::now();
    let t = HtpyTable::bundled();
    let v = free_loop_verdict(&t, LoopTarget::S2, 1).map_err(e)?;
    ensure!(v.status == Status::Fails, "status {:?}", v.status);
    match &v.witness {
        Some(Witness::Group { group, coords, label }) => {
            ensure!(group == "Z" && coords == &[2], "witness {coords:?} in {group}");
            ensure!(label.contains("2·ad γ"), "label {label}");
        }
        w => return Err(format!("witness {w:?}")),
    }
    within(Duration::from_secs(1), start)
}

fn c2_free_loop_higher() -> Check {
    let start = Instant::now();
    let t = HtpyTable::bundled();
    for m in [2, 3] {
        let v = free_loop_verdict(&t, LoopTarget::S2, m).map_err(e)?;
        ensure!(v.status == Status::Holds, "m = {m}: {:?}", v.status);
        ensure!(v.citations.iter().any(|c| c == anchors::FREE_LOOP_S2_EXAMPLE), "m = {m}: citation missing");
        ensure!(v.certificate["generalized_brace"] == "vanishes identically", "m = {m}: certificate");
    }
    within(Duration::from_secs(1), start)
}

fn c3_husemoller() -> Check {
    let (t, d) = env();
    ensure!(t.sphere(3, 6).map_err(e)? == FGAbGroup::cyclic(12), "π_6(S^3)");
    ensure!(t.sphere(2, 5).map_err(e)? == FGAbGroup::cyclic(2), "π_5(S^2)");
    let v = husemoller_counterexample(&d).map_err(e)?;
    ensure!(v.is_fail(), "the naive inclusion should fail");
    ensure!(v.certificate["j_onto"] == true, "J onto");
    ensure!(v.certificate["j_group"] == "Z12", "J target");
    ensure!(v.certificate["suspension_image"] == json!([[0], [6]]), "Σ image {}", v.certificate["suspension_image"]);
    ensure!(v.certificate["suspension_proper"] == true, "Σ proper");
    let c = ClutchingClass::new(&t, &d, 4, 2, &[1], None).map_err(e)?;
    match husemoller_rectified(&t, &d, &c) {
        Err(ClutchingError::NoLift { n: 4, q: 2, .. }) => Ok(()),
        other => Err(format!("expected NoLift, got {other:?}")),
    }
}

fn c4_n12() -> Check {
    let (t, d) = env();
    let zero = ClutchingClass::new(&t, &d, 12, 12, &[0], None).map_err(e)?;
    let one = ClutchingClass::new(&t, &d, 12, 12, &[1], None).map_err(e)?;
    ensure!(t.sphere(13, 24).map_err(e)? == FGAbGroup::cyclic(504), "π_24(S^13)");
    ensure!(fibre_equiv_decision(&t, &d, &zero, &zero).map_err(e)?.is_hold(), "Jρ = 0 vs itself");
    let v = fibre_equiv_decision(&t, &d, &zero, &one).map_err(e)?;
    ensure!(v.is_fail(), "Jρ = 0 vs Jρ ≠ 0 should be distinguished");
    match &v.witness {
        Some(Witness::Group { group, coords, .. }) => {
            ensure!(group == "Z504" && coords.len() == 1 && coords[0] != 0, "witness {coords:?} in {group}")
        }
        w => return Err(format!("witness {w:?}")),
    }
    for c in [&zero, &one] {
        ensure!(rational_split_certificate(&t, &d, c).map_err(e)?.is_hold(), "rational, ρ = {}", c.rho);
    }
    Ok(())
}

fn c5_two_bundles() -> Check {
    let (t, d) = env();
    for n in [9u32, 10] {
        let g = t.so(n + 1, n - 1).map_err(e)?;
        ensure!(g.order() == Some(2), "π_{}(SO({})) = {g}", n - 1, n + 1);
        let triv = ClutchingClass::new(&t, &d, n, n, &[0], None).map_err(e)?;
        ensure!(clutched_split_verdict(&t, &d, &triv).map_err(e)?.is_hold(), "n = {n}: trivial bundle");
        let c = ClutchingClass::new(&t, &d, n, n, &[1], None).map_err(e)?;
        ensure!(clutched_split_verdict(&t, &d, &c).map_err(e)?.is_fail(), "n = {n}: nontrivial homotopy verdict");
        ensure!(rational_split_certificate(&t, &d, &c).map_err(e)?.is_hold(), "n = {n}: rational verdict");
    }
    Ok(())
}

fn c6_surface() -> Check {
    let r = surface_bundle_report(1, 2, true).map_err(e)?;
    ensure!(r.brace.status == Status::Holds, "brace ≡ 0");
    ensure!(r.split.status == Status::Fails, "not split");
    ensure!(r.stiefel_whitney == "w(T S(ζ)) = 1 + π*w₂(ζ)", "got `{}`", r.stiefel_whitney);
    Ok(())
}

fn c7_p_map() -> Check {
    let t = HtpyTable::bundled();
    let p = |n| p_map(&t, n).map_err(e);
    let (p2, p6, p4) = (p(2)?, p(6)?, p(4)?);
    ensure!((p2.free, p2.torsion.as_str()) == (2, "0"), "p(2) = {p2:?}");
    ensure!((p6.free, p6.torsion.as_str()) == (1, "0"), "p(6) = {p6:?}");
    ensure!(p4.free == 2 && p4.torsion.starts_with("g_4"), "p(4) = {p4:?}");
    Ok(())
}

fn c8_rational_branches() -> Check {
    let start = Instant::now();
    let (t, d) = env();
    // Oracle for n = q = 2: ξ' = 2ξ − m∂ι straight from the stored matrices.
    let seq = ExactSeqSO::from_data(&d, 2).map_err(e)?;
    for k in [1i64, 2, -3] {
        let xi = seq.iota.source().element(&[k]).map_err(e)?;
        let m = 2 * seq.neg_j.apply(&xi).map_err(e)?.coords()[0] / seq.p_image.coords()[0];
        let xi_p = xi.scale(2).sub(&seq.boundary.image_of_generator(0).scale(m)).map_err(e)?;
        let oracle_free = seq.neg_j.apply(&xi_p).map_err(e)?.free_coords()[0];
        let c = ClutchingClass::from_vector_bundle(&t, &d, 2, 2, &[k]).map_err(e)?;
        let v = rational_split_certificate(&t, &d, &c).map_err(e)?;
        ensure!(v.is_hold(), "k = {k}");
        ensure!(oracle_free == 0 && v.certificate["free_part"] == 0, "k = {k}: free part");
        ensure!(v.certificate["xi_prime"] == json!(xi_p.coords()), "k = {k}: ξ' {}", v.certificate["xi_prime"]);
    }
    let branch = |n, q, rho: &[i64]| -> Result<String, String> {
        let c = ClutchingClass::new(&t, &d, n, q, rho, None).map_err(e)?;
        let v = rational_split_certificate(&t, &d, &c).map_err(e)?;
        ensure!(v.is_hold(), "({n}, {q})");
        Ok(v.certificate["branch"].as_str().unwrap_or_default().to_string())
    };
    ensure!(branch(4, 3, &[1, 0])? == "q odd", "q odd branch");
    ensure!(branch(4, 2, &[1])? == "q even, n ≠ q", "n ≠ q branch");
    ensure!(branch(2, 2, &[1])? == "n = q even", "n = q branch");
    within(Duration::from_secs(1), start)
}

fn c9_suites() -> Check {
    let start = Instant::now();
    let plan = [
        (Suite::Jacobi, 200, 12),
        (Suite::Derivation, 200, 9),
        (Suite::LieMap, 200, 9),
        (Suite::Bilinearity, 200, 9),
        (Suite::JRules, 200, 12),
        (Suite::Exactness, 1, 12),
    ];
    for (suite, trials, cap) in plan {
        let r = run_suite(suite, trials, cap, DEFAULT_SEED).map_err(e)?;
        ensure!(r.ok(), "{suite}: {:?}", r.failures);
        if suite == Suite::Exactness {
            ensure!(r.trials >= 3 && r.mutations > 0, "exactness audited {} sequences", r.trials);
        } else {
            ensure!(r.trials >= trials, "{suite}: only {} trials", r.trials);
        }
        if matches!(suite, Suite::Derivation | Suite::LieMap) {
            ensure!(r.mutations > 0 && r.mutations == r.mutations_detected, "{suite}: mutations");
        }
        println!("    {suite:<12} trials {:>4}  mutations {:>3}/{:<3}", r.trials, r.mutations_detected, r.mutations);
    }
    within(Duration::from_secs(60), start)
}

fn c10_su3() -> Check {
    let (t, d) = env();
    ensure!(t.group_lookup(&Space::LieGroup("SU(3)".into()), 4).map_err(e)?.is_trivial(), "π_4(SU(3))");
    let desc = FibrationDescriptor::SphereOverSphere {
        n: 5,
        m: 3,
        brace: None,
        section_independent: false,
        section: false,
        total: Some("SU(3)".into()),
    };
    let v = rational_verdicts(&desc, &t, &d, 24).map_err(e)?;
    ensure!(v.is_hold(), "rationally a product");
    ensure!(v.has_caveat(CONVERSE_FAILS), "CONVERSE_FAILS caveat");
    let ob = &v.certificate["integral_obstruction"];
    ensure!(ob["total"] == "π_4(SU(3)) = 0", "total {}", ob["total"]);
    ensure!(ob["product"] == "π_4(S^3) ⊕ π_4(S^5) = Z2", "product {}", ob["product"]);
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("free loop over S2, m = 1: brace 2·ad γ, H-split fails", c1_free_loop_m1),
        ("free loop over S2, m = 2, 3: H-split holds", c2_free_loop_higher),
        ("Husemoller counterexample and NoLift", c3_husemoller),
        ("(n, q) = (12, 12): J decides fibre equivalence; rational holds", c4_n12),
        ("n = 9, 10: two bundles, nontrivial fails integrally, holds rationally", c5_two_bundles),
        ("surface bundle: brace ≡ 0, not split, w(T S(ζ))", c6_surface),
        ("P-map values", c7_p_map),
        ("rational certificate branches; n = q = 2 free part 0", c8_rational_branches),
        ("property suites", c9_suites),
        ("SU(3) converse flagged", c10_su3),
    ];
    let mut failed = vec![];
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = check();
        let dt = start.elapsed();
        match &r {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({dt:.2?})", i + 1),
            Err(msg) => {
                println!("criterion {:>2}: FAIL  {name} ({dt:.2?}): {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
