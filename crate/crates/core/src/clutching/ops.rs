use serde::Serialize;
use serde_json::json;

use super::data::{ClutchingClass, ClutchingData, LiftStatus};
use super::exact::ExactSeqSO;
use super::jrules::clutching_brace_formula;
use super::ClutchingError;
use crate::fibration::{anchors, Status, Verdict, Witness};
use crate::homotopy_data::{rational_pi_sphere, FGAbGroup, GroupElement, GroupHom, HtpyTable};

/// {Id_{S^n}, Id_{S^q}}_s for a clutched bundle. When `suspended` is set only
/// Σ{Id, Id}_s ∈ π_{n+q}(S^{q+1}) is known; it does not depend on the section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraceResult {
    pub value: GroupElement,
    pub suspended: bool,
    pub section_independent: bool,
    pub lift: Option<GroupElement>,
    pub formula: String,
    pub source: String,
}

fn lift_of(table: &HtpyTable, data: &ClutchingData, c: &ClutchingClass) -> Option<GroupElement> {
    if c.lift.is_none() && c.n == c.q {
        if let Ok(seq) = ExactSeqSO::from_data(data, c.n) {
            return seq.lift(&c.rho);
        }
    }
    c.resolve_lift(table, data).element().cloned()
}

/// The brace of the section determined by the lift: −J(ξ) when the unstable
/// J is tabulated, otherwise its suspension −J(ρ).
pub fn brace_from_clutching(
    table: &HtpyTable,
    data: &ClutchingData,
    c: &ClutchingClass,
) -> Result<BraceResult, ClutchingError> {
    let (n, q) = (c.n, c.q);
    let formula = format!("{{Id, Id}}_s = {}", clutching_brace_formula(true));
    let lift = lift_of(table, data, c);
    if let (Some(xi), Ok(j)) = (&lift, data.j_map(q, n - 1)) {
        let value = j.hom.apply(xi)?.neg();
        let section_independent = match data.suspension(q, n + q - 1) {
            Ok(s) => !s.hom.apply(&value)?.is_zero(),
            Err(_) => false,
        };
        return Ok(BraceResult {
            value,
            suspended: false,
            section_independent,
            lift: Some(xi.clone()),
            formula,
            source: j.citation.clone(),
        });
    }
    if c.rho.is_zero() && lift.as_ref().is_some_and(|x| x.is_zero()) {
        return Ok(BraceResult {
            value: table.sphere(q, n + q - 1)?.zero(),
            suspended: false,
            section_independent: false,
            lift,
            formula,
            source: "trivial bundle with the constant section".into(),
        });
    }
    let j = data.j_map(q + 1, n - 1)?;
    let value = j.hom.apply(&c.rho)?.neg();
    Ok(BraceResult {
        section_independent: !value.is_zero(),
        value,
        suspended: true,
        lift,
        formula: "Σ{Id, Id}_s = −J[ρ]".to_string(),
        source: j.citation.clone(),
    })
}

/// E ≃ S^n × S^q for a clutched bundle, via its brace.
pub fn clutched_split_verdict(
    table: &HtpyTable,
    data: &ClutchingData,
    c: &ClutchingClass,
) -> Result<Verdict, ClutchingError> {
    let b = brace_from_clutching(table, data, c)?;
    let claim = format!("E ≃ S^{} × S^{} (ρ = {})", c.n, c.q, c.rho);
    let label = if b.suspended {
        format!("Σ{{Id, Id}}_s = −J(ρ) = {}", b.value)
    } else {
        format!("{{Id, Id}}_s = −J(ξ) = {}", b.value)
    };
    let cert = json!({
        "brace": label,
        "formula": b.formula,
        "group": b.value.group().to_string(),
        "coords": b.value.coords(),
        "suspended": b.suspended,
        "lift": b.lift.as_ref().map(|x| x.coords().to_vec()),
        "source": b.source,
    });
    let trivial = c.rho.is_zero() && c.lift.as_ref().is_none_or(|x| x.is_zero());
    let v = if trivial {
        // ρ = 0: the bundle is the product and the standard section has zero brace.
        Verdict::holds(claim).cite(anchors::SPHERE_OVER_SPHERE)
    } else if b.value.is_zero() && !b.suspended {
        Verdict::holds(claim).cite(anchors::SPHERE_OVER_SPHERE)
    } else if !b.value.is_zero() && (b.suspended || b.section_independent) {
        Verdict::fails(claim, Witness::group(&b.value, label)).cite(anchors::SECTION_INDEPENDENCE)
    } else if b.value.is_zero() {
        Verdict::new(claim, Status::Unknown).caveat(
            "SUSPENSION_ONLY",
            "Σ{Id, Id}_s = 0 does not decide whether some section has vanishing brace",
        )
    } else {
        Verdict::new(claim, Status::Unknown)
            .with_witness(Witness::group(&b.value, label))
            .caveat("SECTION_DEPENDENT", "nonzero for this section only; another section might have vanishing brace")
    };
    Ok(v.with_certificate(cert).cite(anchors::J_BRACE_THEOREM).cite(anchors::JAMES_WHITEHEAD))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThomReport {
    pub n: u32,
    pub q: u32,
    pub xi: Vec<i64>,
    pub j_xi: Vec<i64>,
    pub j_group: String,
    pub j_onto: bool,
    pub thom_space: String,
    pub total_space: String,
}

/// Milnor's cell structures for a rank-q vector bundle ξ over S^n.
pub fn thom_attaching(data: &ClutchingData, c: &ClutchingClass) -> Result<ThomReport, ClutchingError> {
    let (n, q) = (c.n, c.q);
    let xi = c.lift.clone().ok_or_else(|| ClutchingError::NoLift {
        n,
        q,
        rho: c.rho.to_string(),
        detail: "the Thom space needs the rank-q bundle itself".into(),
    })?;
    let j = data.j_map(q, n - 1)?;
    let jx = j.hom.apply(&xi)?;
    Ok(ThomReport {
        n,
        q,
        xi: xi.coords().to_vec(),
        j_xi: jx.coords().to_vec(),
        j_group: jx.group().to_string(),
        j_onto: j.hom.is_surjective(),
        thom_space: format!("Th(ξ) = D^{} ∪_Φ S^{q}, Φ = J(ξ) = {jx} ∈ π_{}(S^{q})", n + q, n + q - 1),
        total_space: format!(
            "S(ξ ⊕ 1) = D^{} ∪ (S^{n} ∨ S^{q}), attaching class ι_*J(ξ) + [ω], ω = [ι_{n}, ι_{q}], J(ξ) = {jx}",
            n + q
        ),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HusemollerReport {
    pub lift: Vec<i64>,
    pub brace: Vec<i64>,
    pub suspended_brace: Vec<i64>,
    pub j_rho: Vec<i64>,
    pub identity: String,
}

fn finite_image(h: &GroupHom) -> Option<Vec<Vec<i64>>> {
    let order = h.target().order()?;
    if order > 4096 {
        return None;
    }
    let mut out = vec![];
    let moduli: Vec<i64> = (0..h.target().ngens()).map(|i| h.target().modulus(i)).collect();
    let mut c = vec![0i64; moduli.len()];
    loop {
        let y = h.target().element(&c).expect("arity");
        if h.image_contains(&y) {
            out.push(c.clone());
        }
        let mut i = 0;
        loop {
            if i == c.len() {
                return Some(out);
            }
            c[i] += 1;
            if c[i] < moduli[i] {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// J[ι_*ξ] = ΣJ[ξ] = −Σ{Id, Id}_s. Raises NoLift when ρ does not come from SO(q).
pub fn husemoller_rectified(
    table: &HtpyTable,
    data: &ClutchingData,
    c: &ClutchingClass,
) -> Result<HusemollerReport, ClutchingError> {
    let (n, q) = (c.n, c.q);
    let j_stable = data.j_map(q + 1, n - 1)?;
    let j_rho = j_stable.hom.apply(&c.rho)?;
    let xi = match c.resolve_lift(table, data) {
        LiftStatus::Given(x) | LiftStatus::Computed(x) => x,
        status => {
            let susp = data.suspension(q, n + q - 1).ok();
            let detail = match (&status, susp) {
                (LiftStatus::Absent, Some(s)) => {
                    let inside = s.hom.image_contains(&j_rho);
                    format!(
                        "π_{}(SO({q})) does not reach ρ; J(ρ) = {j_rho} {} Σπ_{}(S^{})",
                        n - 1,
                        if inside { "∈" } else { "∉" },
                        n + q - 1,
                        q
                    )
                }
                (LiftStatus::Absent, None) => format!("ι_* on π_{}(SO({q})) does not reach ρ", n - 1),
                _ => format!("ι_* on π_{}(SO({q})) is not tabulated", n - 1),
            };
            return Err(ClutchingError::NoLift { n, q, rho: c.rho.to_string(), detail });
        }
    };
    let j = data.j_map(q, n - 1)?;
    let s = data.suspension(q, n + q - 1)?;
    let brace = j.hom.apply(&xi)?.neg();
    let suspended = s.hom.apply(&brace)?;
    if suspended != j_rho.neg() {
        return Err(ClutchingError::AuditFailure {
            n,
            relation: format!("ΣJ(ξ) = {} but J(ι_*ξ) = {j_rho}", suspended.neg()),
        });
    }
    Ok(HusemollerReport {
        lift: xi.coords().to_vec(),
        brace: brace.coords().to_vec(),
        suspended_brace: suspended.coords().to_vec(),
        j_rho: j_rho.coords().to_vec(),
        identity: "J[ι_*ξ] = ΣJ[ξ] = −Σ{Id, Id}_s".into(),
    })
}

/// The claim that J(π_3 SO(3)) lies in the image of Σ: π_5(S²) → π_6(S³).
pub fn husemoller_counterexample(data: &ClutchingData) -> Result<Verdict, ClutchingError> {
    let j = data.j_map(3, 3)?;
    let s = data.suspension(2, 5)?;
    let claim = "J(π_3 SO(3)) ⊆ Σπ_5(S^2) in π_6(S^3)";
    let image = finite_image(&s.hom).unwrap_or_default();
    let bad = j.hom.source().generators().into_iter().map(|g| j.hom.apply(&g)).collect::<Result<Vec<_>, _>>()?;
    let cert = json!({
        "j_onto": j.hom.is_surjective(),
        "j_group": j.hom.target().to_string(),
        "suspension_image": image,
        "suspension_proper": !s.hom.is_surjective(),
    });
    let v = match bad.into_iter().find(|x| !s.hom.image_contains(x)) {
        Some(x) => Verdict::fails(claim, Witness::group(&x, format!("J(generator) = {x} ∉ Σπ_5(S^2)"))),
        None => Verdict::holds(claim),
    };
    Ok(v.with_certificate(cert).cite(anchors::HUSEMOLLER_EXAMPLE).cite(anchors::TODA))
}

/// Decides whether the bundles clutched by c1 and c2 are fibre homotopy
/// equivalent compatibly with their sections and fibre inclusions.
pub fn fibre_equiv_decision(
    table: &HtpyTable,
    data: &ClutchingData,
    c1: &ClutchingClass,
    c2: &ClutchingClass,
) -> Result<Verdict, ClutchingError> {
    if (c1.n, c1.q) != (c2.n, c2.q) {
        return Err(ClutchingError::Unsupported("classes over different (n, q)".into()));
    }
    let (n, q) = (c1.n, c1.q);
    let claim = format!("E(ρ₁) ≃ E(ρ₂) over S^{n} (ρ₁ = {}, ρ₂ = {})", c1.rho, c2.rho);
    let cite = |v: Verdict| v.cite(anchors::FIBRE_EQUIV_THEOREM).cite(anchors::J_LEMMA);
    let (l1, l2) = (lift_of(table, data, c1), lift_of(table, data, c2));
    if c1.rho == c2.rho && l1 == l2 {
        return Ok(cite(Verdict::holds(claim).with_certificate(json!({ "reason": "identical classes" }))));
    }
    let stable = data.j_map(q + 1, n - 1).ok();
    if let (Some(j), Some(x1), Some(x2)) = (data.j_map(q, n - 1).ok(), &l1, &l2) {
        let (a, b) = (j.hom.apply(x1)?, j.hom.apply(x2)?);
        let cert = json!({ "J_xi1": a.coords(), "J_xi2": b.coords(), "group": a.group().to_string() });
        return Ok(cite(if a == b {
            Verdict::holds(claim).with_certificate(cert)
        } else {
            let w = match stable {
                Some(s) if s.hom.apply(&c1.rho)? != s.hom.apply(&c2.rho)? => {
                    let d = s.hom.apply(&c2.rho)?.sub(&s.hom.apply(&c1.rho)?)?;
                    Witness::group(&d, format!("J(ρ₂) − J(ρ₁) = {d}"))
                }
                _ => {
                    let d = b.sub(&a)?;
                    Witness::group(&d, format!("J(ξ₂) − J(ξ₁) = {d}"))
                }
            };
            Verdict::fails(claim, w).with_certificate(cert)
        }));
    }
    if let Some(s) = stable {
        let (a, b) = (s.hom.apply(&c1.rho)?, s.hom.apply(&c2.rho)?);
        let cert = json!({ "J_rho1": a.coords(), "J_rho2": b.coords(), "group": a.group().to_string() });
        if a != b {
            let d = b.sub(&a)?;
            return Ok(cite(
                Verdict::fails(claim, Witness::group(&d, format!("J(ρ₂) − J(ρ₁) = {d}"))).with_certificate(cert),
            ));
        }
        return Ok(cite(Verdict::new(claim, Status::Unknown).with_certificate(cert).caveat(
            "UNSTABLE_J_MISSING",
            "stable J agrees; the section-compatible comparison needs the unstable J",
        )));
    }
    Err(ClutchingError::MissingEntry(format!("J on π_{} SO({}) or SO({q})", n - 1, q + 1)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PImage {
    pub n: u32,
    pub group: String,
    pub free: i64,
    /// "0" or a symbolic torsion generator.
    pub torsion: String,
}

/// P(Id) = [ι_n, ι_n] ∈ π_{2n−1}(S^n), n even.
pub fn p_map(table: &HtpyTable, n: u32) -> Result<PImage, ClutchingError> {
    if n < 2 || n % 2 == 1 {
        return Err(ClutchingError::Unsupported(format!("P(Id) is recorded for even n only (got {n})")));
    }
    let g = table.sphere(n, 2 * n - 1)?;
    if g.rank() != 1 {
        return Err(ClutchingError::Schema(format!("π_{}(S^{n}) = {g} should have rank 1", 2 * n - 1)));
    }
    let (free, torsion) = match n {
        2 => (2, "0".to_string()),
        4 | 8 => (2, format!("g_{n} ∈ {}", FGAbGroup::new(0, g.torsion().to_vec())?)),
        _ => (1, "0".to_string()),
    };
    Ok(PImage { n, group: g.to_string(), free, torsion })
}

/// The rational splitting of an S^q bundle over S^n with structure group
/// SO(q+1) and a section. Never fails: the result is Holds or an error.
pub fn rational_split_certificate(
    table: &HtpyTable,
    data: &ClutchingData,
    c: &ClutchingClass,
) -> Result<Verdict, ClutchingError> {
    let (n, q) = (c.n, c.q);
    let claim = format!("E_Q ≃ S^{n}_Q × S^{q}_Q (ρ = {})", c.rho);
    let done = |v: Verdict| v.cite(anchors::RATIONAL_SPHERE_BUNDLE).cite(anchors::RATIONAL_SUSPENSION_THEOREM);
    if q % 2 == 1 {
        return Ok(done(Verdict::holds(claim).with_certificate(json!({
            "branch": "q odd",
            "argument": format!("S^{q}_Q = K(Q, {q}), so π_{}(S^{q}) ⊗ Q = 0 and the rational brace vanishes", n + q - 1),
        }))));
    }
    if n != q {
        let r = rational_pi_sphere(q, n + q - 1);
        debug_assert_eq!(r, 0);
        return Ok(done(Verdict::holds(claim).with_certificate(json!({
            "branch": "q even, n ≠ q",
            "rational_rank": r,
            "argument": format!("π_{}(S^{q}) ⊗ Q = 0 since n + q − 1 ≠ 2q − 1", n + q - 1),
        }))));
    }
    let seq = ExactSeqSO::from_data(data, n)?;
    let xi = match &c.lift {
        Some(x) => x.clone(),
        None => seq.lift(&c.rho).ok_or_else(|| ClutchingError::NoLift {
            n,
            q,
            rho: c.rho.to_string(),
            detail: "ι_* is onto, so this indicates corrupted data".into(),
        })?,
    };
    let nj = seq.neg_j.apply(&xi)?;
    let m = nj.free_coords()[0];
    let d = seq.boundary.image_of_generator(0);
    let xi_prime = xi.scale(2).sub(&d.scale(m))?;
    let nj_prime = seq.neg_j.apply(&xi_prime)?;
    if nj_prime.free_coords()[0] != 0 || seq.iota.apply(&xi_prime)? != c.rho.scale(2) {
        return Err(ClutchingError::AuditFailure {
            n,
            relation: format!("−J(ξ') = {nj_prime} should be torsion and ι_*ξ' = 2ρ"),
        });
    }
    let _ = table;
    Ok(done(Verdict::holds(claim).with_certificate(json!({
        "branch": "n = q even",
        "xi": xi.coords(),
        "neg_j_xi": nj.coords(),
        "m": m,
        "xi_prime": xi_prime.coords(),
        "neg_j_xi_prime": nj_prime.coords(),
        "free_part": 0,
        "p_image": seq.p_image.coords(),
        "argument": "pull back along a degree-2 self-map of S^n: ξ' = 2ξ − m∂ι has −J(ξ') torsion, so E' is rationally a product and E_Q ≃ E'_Q",
    })))
    .cite(anchors::P_MAP)
    .cite(anchors::EXACT_SEQUENCE_SO))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (HtpyTable, ClutchingData) {
        let t = HtpyTable::bundled();
        let d = ClutchingData::bundled(&t).unwrap();
        (t, d)
    }

    #[test]
    fn n12_brace_and_equivalence() {
        let (t, d) = setup();
        let c1 = ClutchingClass::new(&t, &d, 12, 12, &[0], None).unwrap();
        let c2 = ClutchingClass::new(&t, &d, 12, 12, &[1], None).unwrap();
        let b = brace_from_clutching(&t, &d, &c2).unwrap();
        assert!(!b.suspended && b.section_independent);
        assert_eq!(b.value.coords(), &[0, 503]);
        assert!(fibre_equiv_decision(&t, &d, &c1, &c2).unwrap().is_fail());
        assert!(fibre_equiv_decision(&t, &d, &c2, &c2).unwrap().is_hold());
        assert!(rational_split_certificate(&t, &d, &c2).unwrap().is_hold());
    }

    #[test]
    fn husemoller() {
        let (t, d) = setup();
        let c = ClutchingClass::new(&t, &d, 4, 2, &[1], None).unwrap();
        let e = husemoller_rectified(&t, &d, &c).unwrap_err();
        assert!(matches!(e, ClutchingError::NoLift { .. }), "{e}");
        assert!(e.to_string().contains("∉"));
        assert!(husemoller_counterexample(&d).unwrap().is_fail());
        let c = ClutchingClass::new(&t, &d, 2, 2, &[1], None).unwrap();
        let r = husemoller_rectified(&t, &d, &c).unwrap();
        assert_eq!(r.j_rho, vec![1]);
    }

    #[test]
    fn thom_4_3() {
        let (t, d) = setup();
        let c = ClutchingClass::from_vector_bundle(&t, &d, 4, 3, &[1]).unwrap();
        let r = thom_attaching(&d, &c).unwrap();
        assert!(r.j_onto);
        assert_eq!(r.j_group, "Z12");
        assert!(r.thom_space.starts_with("Th(ξ) = D^7 ∪_Φ S^3"));
    }

    #[test]
    fn p_values() {
        let t = HtpyTable::bundled();
        assert_eq!(p_map(&t, 2).unwrap().free, 2);
        assert_eq!(p_map(&t, 12).unwrap().free, 1);
        let p4 = p_map(&t, 4).unwrap();
        assert_eq!((p4.free, p4.torsion.as_str()), (2, "g_4 ∈ Z12"));
        assert!(p_map(&t, 5).is_err());
    }

    #[test]
    fn rational_n_eq_q_four_missing() {
        let t = HtpyTable::bundled();
        let d = ClutchingData::bundled(&t).unwrap();
        let c = ClutchingClass { n: 4, q: 4, rho: t.so(5, 3).map(|g| g.zero()).unwrap_or_else(|_| t.so(4, 3).unwrap().zero()), lift: None };
        assert!(matches!(rational_split_certificate(&t, &d, &c), Err(ClutchingError::MissingEntry(_))));
    }
}
