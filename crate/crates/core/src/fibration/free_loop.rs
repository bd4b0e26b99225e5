//! Free loop fibrations Ω^m Z → L^m_0 Z → Z with the constant-map section.
//!
//! Classes of π_*(Ω^m Z) are recorded through their adjoints in π_{*+m}(Z),
//! so the brace {f, g}_s = ad^m[f, ad^{−m} g] becomes a Whitehead product
//! in Z. Only S² and S³ carry an integral product model here.

use serde_json::json;

use super::verdict::{anchors, Verdict, Witness};
use super::FibrationError;
use crate::homotopy_data::{GroupElement, HtpyTable, TableError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoopTarget {
    S2,
    S3,
}

impl LoopTarget {
    pub fn parse(s: &str) -> Result<LoopTarget, FibrationError> {
        match s.replace(['^', ' '], "").as_str() {
            "S2" => Ok(LoopTarget::S2),
            "S3" => Ok(LoopTarget::S3),
            _ => Err(FibrationError::Unsupported(format!("free loop fibration over `{s}` (only S2 and S3 are modelled)"))),
        }
    }

    pub fn dim(self) -> u32 {
        match self {
            LoopTarget::S2 => 2,
            LoopTarget::S3 => 3,
        }
    }
}

/// A class of π_degree(Z), coordinates in the table group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphereClass {
    pub degree: u32,
    pub value: GroupElement,
}

impl SphereClass {
    pub fn new(table: &HtpyTable, z: LoopTarget, degree: u32, coords: &[i64]) -> Result<Self, FibrationError> {
        let g = table.sphere(z.dim(), degree)?;
        Ok(SphereClass { degree, value: g.element(coords)? })
    }
}

/// Whitehead product on π_*(Z). On S², [aι, bι] = 2ab·η and every other
/// product vanishes: higher classes factor through the Hopf map η and
/// [ι, η] = 0. On S³, an H-space, all products vanish.
pub fn whitehead_product(
    table: &HtpyTable,
    z: LoopTarget,
    x: &SphereClass,
    y: &SphereClass,
) -> Result<SphereClass, FibrationError> {
    let degree = x.degree + y.degree - 1;
    let target = table.sphere(z.dim(), degree)?;
    let value = match z {
        LoopTarget::S2 if x.degree == 2 && y.degree == 2 => {
            let (a, b) = (x.value.coords()[0], y.value.coords()[0]);
            target.element(&[2 * a * b])?
        }
        _ => target.zero(),
    };
    Ok(SphereClass { degree, value })
}

/// {f, g}_s for f ∈ π_a(Z) and g ∈ π_k(Ω^m Z), the latter given by its
/// adjoint in π_{k+m}(Z). The result is returned as the adjoint of a class
/// of π_{a+k−1}(Ω^m Z), i.e. an element of π_{a+k+m−1}(Z).
pub fn free_loop_brace(
    table: &HtpyTable,
    z: LoopTarget,
    m: u32,
    f: &SphereClass,
    g_adjoint: &SphereClass,
) -> Result<SphereClass, FibrationError> {
    if m == 0 {
        return Err(FibrationError::Unsupported("m must be at least 1".into()));
    }
    if f.degree < 2 || g_adjoint.degree < m + 1 {
        return Err(FibrationError::DegreeOutOfRange(f.degree + g_adjoint.degree.saturating_sub(m)));
    }
    whitehead_product(table, z, f, g_adjoint)
}

/// H-splitting verdict for the m-th free loop fibration over Z.
pub fn free_loop_verdict(table: &HtpyTable, z: LoopTarget, m: u32) -> Result<Verdict, FibrationError> {
    if m == 0 {
        return Err(FibrationError::Unsupported("m must be at least 1".into()));
    }
    let claim = format!("Ωs·Ωi : Ω{zs} × Ω^{m1}{zs} → ΩL^{m}_0{zs} is an H-splitting", zs = zname(z), m1 = m + 1);
    match (z, m) {
        (LoopTarget::S2, 1) => {
            let iota = SphereClass::new(table, z, 2, &[1])?;
            let b = free_loop_brace(table, z, 1, &iota, &iota)?;
            let label = format!("{{Id, ad Id}}_s = ad[Id, Id] = {}·ad γ", b.value.coords()[0]);
            Ok(Verdict::fails(claim, Witness::group(&b.value, label.clone()))
                .with_certificate(json!({
                    "brace": label,
                    "group": format!("π_3(S^2) = {}", b.value.group()),
                    "coords": b.value.coords(),
                    "hopf_class": "γ generates π_3(S^2)",
                }))
                .cite(anchors::FREE_LOOP_S2_EXAMPLE)
                .cite(anchors::FREE_LOOP_THEOREM)
                .cite(anchors::H_SPLITTING_THEOREM))
        }
        (LoopTarget::S2, _) => Ok(Verdict::holds(claim)
            .with_certificate(json!({
                "generalized_brace": "vanishes identically",
                "argument": [
                    "[Σ^{m+1}B, S^2] ≅ [Σ^{m+1}B, S^3] via the Hopf map γ for m ≥ 2",
                    "every g factors as γ∘g̃ and [Id_{S^2}, γ] = 0",
                    "so [f, g] = 0 for all f, g and {,}_s ≡ 0",
                ],
            }))
            .cite(anchors::FREE_LOOP_S2_EXAMPLE)
            .cite(anchors::FREE_LOOP_THEOREM)
            .cite(anchors::H_SPLITTING_THEOREM)
            .cite(anchors::HOPF_WHITEHEAD)),
        (LoopTarget::S3, _) => Ok(Verdict::holds(claim)
            .with_certificate(json!({
                "generalized_brace": "vanishes identically",
                "argument": ["S^3 is an H-space, so all generalized Whitehead products into S^3 vanish"],
            }))
            .cite(anchors::FREE_LOOP_THEOREM)
            .cite(anchors::H_SPLITTING_THEOREM)),
    }
}

fn zname(z: LoopTarget) -> &'static str {
    match z {
        LoopTarget::S2 => "S^2",
        LoopTarget::S3 => "S^3",
    }
}

impl From<TableError> for FibrationError {
    fn from(e: TableError) -> Self {
        FibrationError::Table(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibration::Status;

    #[test]
    fn s2_m1_gives_twice_hopf() {
        let t = HtpyTable::bundled();
        let iota = SphereClass::new(&t, LoopTarget::S2, 2, &[1]).unwrap();
        let b = free_loop_brace(&t, LoopTarget::S2, 1, &iota, &iota).unwrap();
        assert_eq!((b.degree, b.value.coords().to_vec()), (3, vec![2]));
        assert!(free_loop_verdict(&t, LoopTarget::S2, 1).unwrap().is_fail());
        assert_eq!(free_loop_verdict(&t, LoopTarget::S2, 2).unwrap().status, Status::Holds);
    }

    #[test]
    fn brace_with_zero_vanishes() {
        let t = HtpyTable::bundled();
        let zero = SphereClass::new(&t, LoopTarget::S2, 2, &[0]).unwrap();
        let iota = SphereClass::new(&t, LoopTarget::S2, 2, &[1]).unwrap();
        assert!(free_loop_brace(&t, LoopTarget::S2, 1, &zero, &iota).unwrap().value.is_zero());
    }

    #[test]
    fn unsupported_space() {
        assert!(LoopTarget::parse("S4").is_err());
    }
}
