//! Theorem-level verdicts for sphere bundles, surface bundles and the
//! diagonal section.

use serde::Serialize;
use serde_json::json;

use super::verdict::{anchors, Status, Verdict, Witness, GENERALIZED_BRACE_NOT_IMPLIED};
use super::FibrationError;
use crate::homotopy_data::{GroupElement, GroupError, HtpyTable};

/// A value of {Id_{S^n}, Id_{S^m}}_s ∈ π_{n+m−1}(S^m). `section_independent`
/// records that the class is nonzero for every section (e.g. because its
/// suspension, which does not depend on the section, is nonzero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraceEvidence {
    pub value: GroupElement,
    pub section_independent: bool,
    pub source: String,
}

/// E ≃ S^n × S^m iff some section has vanishing {Id, Id}_s.
pub fn sphere_over_sphere_split(
    table: &HtpyTable,
    n: u32,
    m: u32,
    brace: &BraceEvidence,
) -> Result<Verdict, FibrationError> {
    if n < 2 || m < 2 {
        return Err(FibrationError::Unsupported(format!("S^{m} over S^{n}: base and fibre must be simply connected")));
    }
    let ambient = table.sphere(m, n + m - 1)?;
    if *brace.value.group() != ambient {
        return Err(GroupError::GroupMismatch(brace.value.group().to_string(), ambient.to_string()).into());
    }
    let claim = format!("E ≃ S^{n} × S^{m} and Ωs·Ωi is an H-splitting");
    let label = format!("{{Id_S^{n}, Id_S^{m}}}_s = {}", brace.value);
    let cert = json!({
        "brace": label,
        "group": format!("π_{}(S^{m}) = {}", n + m - 1, ambient),
        "coords": brace.value.coords(),
        "source": brace.source,
        "section_independent": brace.section_independent,
    });
    let v = if brace.value.is_zero() {
        Verdict::holds(claim).cite(anchors::SUSPENSION_CRITERION)
    } else if brace.section_independent {
        Verdict::fails(claim, Witness::group(&brace.value, label))
            .cite(anchors::SECTION_INDEPENDENCE)
            .cite(anchors::JAMES_WHITEHEAD)
    } else {
        Verdict::new(claim, Status::Unknown)
            .with_witness(Witness::group(&brace.value, label))
            .caveat("SECTION_DEPENDENT", "nonzero for this section only; another section might have vanishing brace")
    };
    Ok(v.with_certificate(cert).cite(anchors::SPHERE_OVER_SPHERE))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceReport {
    pub genus: u32,
    pub fibre_dim: u32,
    pub w2_nonzero: bool,
    pub brace: Verdict,
    pub split: Verdict,
    pub stiefel_whitney: String,
}

/// Oriented S^n bundle over Σ_g with section: the James brace always
/// vanishes, and the bundle is a product exactly when w₂ vanishes.
pub fn surface_bundle_report(g: u32, n: u32, w2_nonzero: bool) -> Result<SurfaceReport, FibrationError> {
    if g < 1 || n < 2 {
        return Err(FibrationError::Unsupported(format!("surface bundle needs g ≥ 1 and n ≥ 2 (got g={g}, n={n})")));
    }
    let brace = Verdict::holds(format!("James brace {{,}}_s ≡ 0 for the S^{n} bundle over Σ_{g}"))
        .with_certificate(json!({
            "argument": [
                format!("the 1-skeleton of Σ_{g} is a wedge of {} circles", 2 * g),
                "over it the pulled-back bundle is trivial and the pulled-back section is null in the fibre, as π_1(S^n) = 0",
                "so all pairwise inclusion braces vanish there",
                "every class of π_1(Σ_g) comes from the 1-skeleton, and π_k(Σ_g) = 0 for k ≥ 2",
            ],
        }))
        .cite(anchors::SURFACE_EXAMPLE)
        .cite(anchors::PULLBACK_LEMMA)
        .cite(anchors::WEDGE_COROLLARY)
        .caveat(GENERALIZED_BRACE_NOT_IMPLIED, "the base is not simply connected; the James brace carries no splitting information here");
    let w = if w2_nonzero { "w(T S(ζ)) = 1 + π*w₂(ζ)" } else { "w(T S(ζ)) = 1" };
    let claim = format!("E ≃ S^{n} × Σ_{g}");
    let cert = json!({
        "stiefel_whitney_total": w,
        "product_class": format!("w(T(S^{n} × Σ_{g})) = 1"),
        "tangent_splitting": "T S(ζ) ≅ π*TΣ_g ⊕ π*ζ, w(TΣ_g) = 1",
    });
    let split = if w2_nonzero {
        Verdict::fails(claim, Witness::formal("π*w₂(ζ) ≠ 0 in H²(S(ζ); Z/2), π* injective on H²"))
    } else {
        Verdict::holds(claim)
    }
    .with_certificate(cert)
    .cite(anchors::SURFACE_EXAMPLE);
    Ok(SurfaceReport { genus: g, fibre_dim: n, w2_nonzero, brace, split, stiefel_whitney: w.to_string() })
}

/// {Id, Id}_Δ = [Id_{S^n}, Id_{S^n}] in the trivial fibration S^n × S^n → S^n
/// with the diagonal section.
pub fn diagonal_section_brace(table: &HtpyTable, n: u32) -> Result<Verdict, FibrationError> {
    if n < 2 {
        return Err(FibrationError::Unsupported("n must be at least 2".into()));
    }
    let claim = format!("{{Id, Id}}_Δ vanishes for the diagonal section of S^{n} × S^{n}");
    let expr = format!("[Id_S^{n}, Id_S^{n}] ∈ π_{}(S^{n})", 2 * n - 1);
    let group = table.sphere(n, 2 * n - 1).map(|g| g.to_string()).unwrap_or_else(|_| "not tabulated".into());
    let rational = if n % 2 == 1 { "0 (π_{2n-1}(S^n) ⊗ Q = 0)" } else { "nonzero (Hopf invariant 2)" };
    let cert = json!({ "brace": expr, "group": group, "rational_brace": rational });
    let v = if n == 3 || n == 7 {
        Verdict::holds(claim).cite(anchors::ADAMS_HOPF)
    } else if n % 2 == 0 {
        Verdict::fails(claim, Witness::formal(format!("{expr}, of infinite order")))
    } else if !(n + 1).is_power_of_two() {
        Verdict::fails(claim, Witness::formal(format!("{expr}, nonzero of order 2"))).cite(anchors::GILMORE)
    } else {
        Verdict::fails(claim, Witness::formal(format!("{expr}, nonzero of order 2 (S^{n} is not an H-space)")))
            .cite(anchors::ADAMS_HOPF)
    };
    Ok(v.with_certificate(cert).cite(anchors::DIAGONAL_EXAMPLE))
}
