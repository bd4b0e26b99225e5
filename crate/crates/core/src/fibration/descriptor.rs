//! JSON fibration descriptors (`fibration/1`) and the verdict dispatch.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::free_loop::{free_loop_verdict, LoopTarget};
use super::split::SplitFibration;
use super::theorems::{sphere_over_sphere_split, BraceEvidence};
use super::verdict::{anchors, Status, Verdict, Witness, CONVERSE_FAILS};
use super::FibrationError;
use crate::clutching::{clutched_split_verdict, rational_split_certificate, ClutchingClass, ClutchingData};
use crate::graded_lie::{Generator, GradingView, LieElement, Presentation};
use crate::homotopy_data::{lie_group_rational_degrees, rational_pi_sphere, HtpyTable, Space, LIE_GROUP_CITATION};

pub const FIBRATION_SCHEMA: &str = "fibration/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptorDoc {
    pub schema: String,
    #[serde(flatten)]
    pub kind: FibrationDescriptor,
}

fn yes() -> bool {
    true
}

/// {α_base, β_fibre}_s for one pair of wedge inclusions. `value` is a Lie
/// expression in the fibre generators f1, f2, … (Whitehead brackets);
/// `torsion_witness` records a nonzero torsion class that has no rational
/// representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairBrace {
    pub base: usize,
    pub fibre: usize,
    #[serde(default = "zero_expr")]
    pub value: String,
    #[serde(default)]
    pub torsion_witness: Option<String>,
}

fn zero_expr() -> String {
    "0".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BaseSpace {
    Sphere { dim: u32 },
    LieGroup { name: String },
    SimplyConnected { name: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FibrationDescriptor {
    /// S^m fibre over S^n. `brace` holds coordinates of {Id, Id}_s in
    /// π_{n+m−1}(S^m) when known.
    SphereOverSphere {
        n: u32,
        m: u32,
        #[serde(default)]
        brace: Option<Vec<i64>>,
        #[serde(default)]
        section_independent: bool,
        #[serde(default = "yes")]
        section: bool,
        #[serde(default)]
        total: Option<String>,
    },
    /// Wedges of spheres; pairs not listed have vanishing brace.
    WedgeOverWedge {
        base_dims: Vec<u32>,
        fibre_dims: Vec<u32>,
        #[serde(default)]
        braces: Vec<PairBrace>,
    },
    FreeLoop { m: u32, space: String },
    /// S^q bundle over S^n with clutching class ρ ∈ π_{n−1} SO(q+1).
    Clutched {
        n: u32,
        q: u32,
        rho: Vec<i64>,
        #[serde(default)]
        lift: Option<Vec<i64>>,
    },
    SurfaceSphereBundle { g: u32, n: u32, w2_nonzero: bool },
    /// Pullback of a bundle over S^{base_dim} to S^{l₁} × ⋯ × S^{l_k}.
    ProductPullback { factors: Vec<u32>, base_dim: u32 },
    /// S^{fibre_dim} bundle with section over a simply connected base.
    SphereBundle {
        fibre_dim: u32,
        base: BaseSpace,
        #[serde(default = "yes")]
        section: bool,
    },
}

impl FibrationDescriptor {
    pub fn kind_name(&self) -> &'static str {
        match self {
            FibrationDescriptor::SphereOverSphere { .. } => "sphere_over_sphere",
            FibrationDescriptor::WedgeOverWedge { .. } => "wedge_over_wedge",
            FibrationDescriptor::FreeLoop { .. } => "free_loop",
            FibrationDescriptor::Clutched { .. } => "clutched",
            FibrationDescriptor::SurfaceSphereBundle { .. } => "surface_sphere_bundle",
            FibrationDescriptor::ProductPullback { .. } => "product_pullback",
            FibrationDescriptor::SphereBundle { .. } => "sphere_bundle",
        }
    }
}

pub fn parse_descriptor(doc: &str) -> Result<FibrationDescriptor, FibrationError> {
    let d: DescriptorDoc = serde_json::from_str(doc).map_err(|e| FibrationError::Descriptor(e.to_string()))?;
    if d.schema != FIBRATION_SCHEMA {
        return Err(FibrationError::Descriptor(format!("expected schema {FIBRATION_SCHEMA}, found {}", d.schema)));
    }
    Ok(d.kind)
}

fn unsupported(msg: impl Into<String>) -> FibrationError {
    FibrationError::Unsupported(msg.into())
}

struct WedgeModel {
    fibre: Arc<Presentation>,
    /// (base index, fibre index, value, torsion witness)
    values: Vec<(usize, usize, LieElement, Option<String>)>,
}

fn wedge_model(base_dims: &[u32], fibre_dims: &[u32], braces: &[PairBrace]) -> Result<WedgeModel, FibrationError> {
    if base_dims.is_empty() || fibre_dims.is_empty() {
        return Err(unsupported("empty wedge"));
    }
    if base_dims.iter().chain(fibre_dims).any(|&d| d < 2) {
        return Err(unsupported("wedge summands must be spheres of dimension ≥ 2"));
    }
    let gens = |p: &str, dims: &[u32]| -> Vec<Generator> {
        dims.iter().enumerate().map(|(i, &k)| Generator::whitehead(format!("{p}{}", i + 1), k)).collect()
    };
    let base = Presentation::new(gens("b", base_dims))?;
    let fibre = Presentation::new(gens("f", fibre_dims))?;
    let mut matrix: Vec<Vec<LieElement>> = base_dims
        .iter()
        .map(|&b| {
            fibre_dims
                .iter()
                .map(|&f| LieElement::zero_of_degree(&fibre, GradingView::Whitehead, b + f - 2))
                .collect()
        })
        .collect();
    let mut values = vec![];
    let mut seen = std::collections::BTreeSet::new();
    for pb in braces {
        let (i, j) = (pb.base, pb.fibre);
        if i >= base_dims.len() || j >= fibre_dims.len() {
            return Err(FibrationError::Descriptor(format!("brace index ({i}, {j}) out of range")));
        }
        if !seen.insert((i, j)) {
            return Err(FibrationError::Descriptor(format!("brace ({i}, {j}) listed twice")));
        }
        let v = LieElement::parse(&fibre, &pb.value, GradingView::Whitehead)?;
        if !v.is_zero() {
            matrix[i][j] = v.clone();
        }
        values.push((i, j, v, pb.torsion_witness.clone()));
    }
    // Degree checks happen here.
    SplitFibration::from_generator_braces(&base, &fibre, matrix)?;
    Ok(WedgeModel { fibre, values })
}

fn wedge_verdict(base_dims: &[u32], fibre_dims: &[u32], braces: &[PairBrace], rational: bool) -> Result<Verdict, FibrationError> {
    let model = wedge_model(base_dims, fibre_dims, braces)?;
    let base_label = wedge_label(base_dims);
    let fibre_label = wedge_label(fibre_dims);
    let claim = if rational {
        format!("E_Q ≃ ΣB_Q × ΣF_Q for F = {fibre_label} over B = {base_label}")
    } else {
        format!("Ωs·Ωi is an H-splitting for F = {fibre_label} over B = {base_label}")
    };
    let pairs: Vec<_> = model
        .values
        .iter()
        .map(|(i, j, v, t)| json!({ "base": i + 1, "fibre": j + 1, "value": v.render(), "torsion_witness": t }))
        .collect();
    let cert = json!({
        "pairs_checked": base_dims.len() * fibre_dims.len(),
        "listed": pairs,
        "unlisted_pairs": "vanishing",
    });
    let lie_bad = model.values.iter().find(|(_, _, v, _)| !v.is_zero());
    let torsion_bad = model.values.iter().find(|(_, _, _, t)| t.is_some());
    let v = match (lie_bad, torsion_bad) {
        (Some((i, j, v, _)), _) if !rational => {
            let _ = &model.fibre;
            Verdict::fails(claim, Witness::lie(v)).with_certificate(json!({ "pair": [i + 1, j + 1], "detail": cert }))
        }
        (None, Some((i, j, _, Some(t)))) if !rational => Verdict::fails(claim, Witness::formal(format!("{{b{}, f{}}}_s = {t}", i + 1, j + 1)))
            .with_certificate(cert),
        (Some((_, _, v, _)), _) => Verdict::new(claim, Status::Unknown)
            .with_witness(Witness::lie(v))
            .with_certificate(cert)
            .caveat("RATIONAL_BRACE_NONZERO", "a nonvanishing rational brace does not by itself rule out a rational product"),
        _ => Verdict::holds(claim).with_certificate(cert),
    };
    Ok(if rational {
        v.cite(anchors::RATIONAL_SUSPENSION_THEOREM)
    } else {
        v.cite(anchors::WEDGE_COROLLARY).cite(anchors::H_SPLITTING_THEOREM)
    })
}

fn wedge_label(dims: &[u32]) -> String {
    dims.iter().map(|d| format!("S^{d}")).collect::<Vec<_>>().join(" ∨ ")
}

/// Integral H-splitting verdict. `degree_cap` bounds James-level checks;
/// every descriptor kind here is decided by a theorem shortcut, so none
/// consults it.
pub fn h_split_verdict(
    desc: &FibrationDescriptor,
    table: &HtpyTable,
    data: &ClutchingData,
    degree_cap: u32,
) -> Result<Verdict, FibrationError> {
    let _ = degree_cap;
    match desc {
        FibrationDescriptor::SphereOverSphere { n, m, brace, section_independent, section, .. } => {
            if !section {
                return Err(unsupported("H-splitting via Ωs·Ωi needs a section"));
            }
            let coords = brace.as_ref().ok_or_else(|| unsupported("sphere_over_sphere needs a brace value (or use clutched)"))?;
            if *n < 2 || *m < 2 {
                return Err(unsupported("base and fibre must be simply connected"));
            }
            let g = table.sphere(*m, n + m - 1)?;
            let ev = BraceEvidence {
                value: g.element(coords)?,
                section_independent: *section_independent,
                source: "descriptor".into(),
            };
            sphere_over_sphere_split(table, *n, *m, &ev)
        }
        FibrationDescriptor::WedgeOverWedge { base_dims, fibre_dims, braces } => {
            wedge_verdict(base_dims, fibre_dims, braces, false)
        }
        FibrationDescriptor::FreeLoop { m, space } => free_loop_verdict(table, LoopTarget::parse(space)?, *m),
        FibrationDescriptor::Clutched { n, q, rho, lift } => {
            let c = ClutchingClass::new(table, data, *n, *q, rho, lift.as_deref())?;
            Ok(clutched_split_verdict(table, data, &c)?)
        }
        FibrationDescriptor::SurfaceSphereBundle { .. } => {
            Err(unsupported("surface base is not simply connected; use the surface bundle report"))
        }
        FibrationDescriptor::ProductPullback { factors, base_dim } => product_pullback_verdict(factors, *base_dim),
        FibrationDescriptor::SphereBundle { .. } => {
            Err(unsupported("integral splitting of sphere_bundle needs brace data (use sphere_over_sphere or clutched)"))
        }
    }
}

fn product_pullback_verdict(factors: &[u32], base_dim: u32) -> Result<Verdict, FibrationError> {
    if factors.is_empty() || factors.iter().any(|&l| l < 2) || base_dim < 2 {
        return Err(unsupported("product_pullback needs simply connected sphere factors and base"));
    }
    let prod = factors.iter().map(|l| format!("S^{l}")).collect::<Vec<_>>().join(" × ");
    let claim = format!("Ωs·Ωi is an H-splitting for f*E over {prod}, f: {prod} → S^{base_dim}");
    let null: Vec<bool> = factors.iter().map(|&l| l < base_dim).collect();
    let cert = json!({
        "factor_inclusions_null": factors.iter().zip(&null).map(|(l, z)| json!({
            "factor": format!("S^{l}"),
            "pi": format!("π_{l}(S^{base_dim})"),
            "null": z,
        })).collect::<Vec<_>>(),
    });
    let v = if null.iter().all(|&z| z) {
        Verdict::holds(claim).cite(anchors::PULLBACK_KILLS_BRACE).cite(anchors::H_SPLITTING_THEOREM)
    } else {
        Verdict::new(claim, Status::Unknown).caveat(
            "FACTOR_NOT_NULL",
            "some factor inclusion need not be null-homotopic in the base",
        )
    };
    Ok(v.with_certificate(cert).cite(anchors::PULLBACK_LEMMA))
}

/// Rational splitting verdict.
pub fn rational_verdicts(
    desc: &FibrationDescriptor,
    table: &HtpyTable,
    data: &ClutchingData,
    degree_cap: u32,
) -> Result<Verdict, FibrationError> {
    let _ = degree_cap;
    match desc {
        FibrationDescriptor::SphereOverSphere { n, m, brace, section, total, .. } => {
            if *n < 2 || *m < 2 {
                return Err(unsupported("base and fibre must be simply connected"));
            }
            if !section {
                return converse_case(table, *n, *m, total.as_deref());
            }
            let base = BaseSpace::Sphere { dim: *n };
            match sphere_bundle_rational(*m, &base)? {
                Some(v) => Ok(v),
                None => {
                    // n = m even: decided by the rational brace when it vanishes.
                    let claim = format!("E_Q ≃ S^{n}_Q × S^{m}_Q");
                    let free = brace.as_ref().and_then(|c| c.first().copied());
                    let g = table.sphere(*m, n + m - 1)?;
                    match free {
                        Some(0) if g.rank() == 1 => Ok(Verdict::holds(claim)
                            .with_certificate(json!({ "rational_brace": 0 }))
                            .cite(anchors::RATIONAL_SUSPENSION_THEOREM)),
                        _ => Ok(Verdict::new(claim, Status::Unknown)
                            .with_certificate(json!({ "rational_brace": free }))
                            .caveat("NEEDS_CLUTCHING", "n = m even: supply the clutching class (clutched) for a certificate")
                            .cite(anchors::RATIONAL_SPHERE_BUNDLE)),
                    }
                }
            }
        }
        FibrationDescriptor::WedgeOverWedge { base_dims, fibre_dims, braces } => {
            wedge_verdict(base_dims, fibre_dims, braces, true)
        }
        FibrationDescriptor::FreeLoop { m, space } => {
            let z = LoopTarget::parse(space)?;
            let v = free_loop_verdict(table, z, *m)?;
            let claim = format!("rational brace of the free loop fibration over {space} (m = {m}) vanishes");
            Ok(match v.status {
                Status::Holds => Verdict::holds(claim).with_certificate(v.certificate).cite(anchors::FREE_LOOP_THEOREM),
                _ => {
                    let mut r = Verdict::new(claim, Status::Fails).with_certificate(v.certificate);
                    r.witness = v.witness;
                    r.cite(anchors::FREE_LOOP_S2_EXAMPLE)
                }
            })
        }
        FibrationDescriptor::Clutched { n, q, rho, lift } => {
            let c = ClutchingClass::new(table, data, *n, *q, rho, lift.as_deref())?;
            Ok(rational_split_certificate(table, data, &c)?)
        }
        FibrationDescriptor::SurfaceSphereBundle { .. } => Err(unsupported("surface base is not simply connected")),
        FibrationDescriptor::ProductPullback { .. } => Err(unsupported("product base is not a suspension")),
        FibrationDescriptor::SphereBundle { fibre_dim, base, section } => {
            if !section {
                return Err(unsupported("rational splitting criterion needs a section"));
            }
            sphere_bundle_rational(*fibre_dim, base)?.ok_or_else(|| {
                unsupported("S^n bundle over S^n with n even: use clutched for the degree-2 certificate")
            })
        }
    }
}

/// Rational verdict for an S^f bundle with section; `None` when f = dim B is
/// even and the theorem shortcuts do not apply.
fn sphere_bundle_rational(f: u32, base: &BaseSpace) -> Result<Option<Verdict>, FibrationError> {
    if f < 2 {
        return Err(unsupported("fibre sphere must be simply connected"));
    }
    if f % 2 == 1 {
        let claim = format!("{{,}}_(s_Q) ≡ 0 for the S^{f} bundle, so E_Q ≃ B_Q × S^{f}_Q");
        return Ok(Some(
            Verdict::holds(claim)
                .with_certificate(json!({
                    "argument": format!("π_*(S^{f}) ⊗ Q is concentrated in degree {f}, and every brace lands in degree > {f}"),
                    "base": base,
                }))
                .cite(anchors::ODD_FIBRE_RATIONAL),
        ));
    }
    match base {
        BaseSpace::Sphere { dim } => {
            if *dim < 2 {
                return Err(unsupported("base sphere must be simply connected"));
            }
            if *dim == f {
                return Ok(None);
            }
            let k = dim + f - 1;
            let r = rational_pi_sphere(f, k);
            Ok(Some(
                Verdict::holds(format!("E_Q ≃ S^{dim}_Q × S^{f}_Q"))
                    .with_certificate(json!({ "brace_group": format!("π_{k}(S^{f}) ⊗ Q"), "rank": r }))
                    .cite(anchors::RATIONAL_SPHERE_BUNDLE)
                    .cite(anchors::RATIONAL_SUSPENSION_THEOREM),
            ))
        }
        BaseSpace::LieGroup { name } => {
            let degrees = lie_group_rational_degrees(name)?;
            let pairs: Vec<_> = degrees
                .iter()
                .map(|&k| json!({ "sphere": k, "brace_group": format!("π_{}(S^{f}) ⊗ Q", f + k - 1), "rank": rational_pi_sphere(f, f + k - 1) }))
                .collect();
            let all_zero = degrees.iter().all(|&k| rational_pi_sphere(f, f + k - 1) == 0);
            let claim = format!("E_Q ≃ {name}_Q × S^{f}_Q");
            let cert = json!({ "rational_type": degrees.iter().map(|k| format!("S^{k}")).collect::<Vec<_>>().join(" × "), "pairwise": pairs });
            let v = if all_zero {
                Verdict::holds(claim)
            } else {
                Verdict::new(claim, Status::Unknown)
            };
            Ok(Some(v.with_certificate(cert).cite(anchors::LIE_GROUP_RATIONAL).cite(LIE_GROUP_CITATION)))
        }
        BaseSpace::SimplyConnected { name } => {
            Err(unsupported(format!("even fibre over `{name}` needs rational brace data")))
        }
    }
}

/// A sphere bundle over a sphere without a section that is nevertheless a
/// rational product (SU(3) → S⁵ with fibre S³).
fn converse_case(table: &HtpyTable, n: u32, m: u32, total: Option<&str>) -> Result<Verdict, FibrationError> {
    let name = total.ok_or_else(|| unsupported("no section and no named total space"))?;
    let degrees = lie_group_rational_degrees(name)?;
    let mut want = vec![n, m];
    want.sort_unstable();
    let mut got = degrees.clone();
    got.sort_unstable();
    if got != want {
        return Err(unsupported(format!("{name} is not rationally S^{n} × S^{m}")));
    }
    let k = m + 1;
    let pi_total = table.group_lookup(&Space::LieGroup(name.to_string()), k)?;
    let pi_fibre = table.sphere(m, k)?;
    let pi_base = table.sphere(n, k)?;
    let product = pi_fibre.direct_sum(&pi_base);
    let claim = format!("{name} ≃_Q S^{m} × S^{n}");
    Ok(Verdict::holds(claim)
        .with_certificate(json!({
            "rational_type": format!("S^{m}_Q × S^{n}_Q"),
            "section": false,
            "integral_obstruction": {
                "degree": k,
                "total": format!("π_{k}({name}) = {pi_total}"),
                "product": format!("π_{k}(S^{m}) ⊕ π_{k}(S^{n}) = {product}"),
                "differ": pi_total != product,
            },
        }))
        .caveat(CONVERSE_FAILS, format!("rational product without a section: π_{k}({name}) = {pi_total} but the product has {product}"))
        .cite(anchors::SU3_REMARK)
        .cite(LIE_GROUP_CITATION))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> (HtpyTable, ClutchingData) {
        let t = HtpyTable::bundled();
        let d = ClutchingData::bundled(&t).unwrap();
        (t, d)
    }

    #[test]
    fn parses_and_dispatches() {
        let (t, d) = env();
        let doc = r#"{"schema":"fibration/1","kind":"free_loop","m":2,"space":"S2"}"#;
        let desc = parse_descriptor(doc).unwrap();
        assert!(h_split_verdict(&desc, &t, &d, 24).unwrap().is_hold());
        let bad = r#"{"schema":"fibration/2","kind":"free_loop","m":2,"space":"S2"}"#;
        assert!(parse_descriptor(bad).is_err());
    }

    #[test]
    fn wedge() {
        let (t, d) = env();
        let zero = FibrationDescriptor::WedgeOverWedge { base_dims: vec![2, 3], fibre_dims: vec![2, 2], braces: vec![] };
        assert!(h_split_verdict(&zero, &t, &d, 24).unwrap().is_hold());
        let nz = FibrationDescriptor::WedgeOverWedge {
            base_dims: vec![2],
            fibre_dims: vec![2, 2],
            braces: vec![PairBrace { base: 0, fibre: 1, value: "[f1,f2]".into(), torsion_witness: None }],
        };
        assert!(h_split_verdict(&nz, &t, &d, 24).unwrap().is_fail());
        let wrong_degree = FibrationDescriptor::WedgeOverWedge {
            base_dims: vec![3],
            fibre_dims: vec![2, 2],
            braces: vec![PairBrace { base: 0, fibre: 1, value: "[f1,f2]".into(), torsion_witness: None }],
        };
        assert!(h_split_verdict(&wrong_degree, &t, &d, 24).is_err());
    }

    #[test]
    fn su3_converse() {
        let (t, d) = env();
        let desc = FibrationDescriptor::SphereOverSphere {
            n: 5,
            m: 3,
            brace: None,
            section_independent: false,
            section: false,
            total: Some("SU(3)".into()),
        };
        let v = rational_verdicts(&desc, &t, &d, 24).unwrap();
        assert!(v.is_hold() && v.has_caveat(CONVERSE_FAILS));
        assert!(h_split_verdict(&desc, &t, &d, 24).is_err());
    }

    #[test]
    fn surface_unsupported() {
        let (t, d) = env();
        let desc = FibrationDescriptor::SurfaceSphereBundle { g: 1, n: 2, w2_nonzero: true };
        assert!(matches!(h_split_verdict(&desc, &t, &d, 24), Err(FibrationError::Unsupported(_))));
    }
}
