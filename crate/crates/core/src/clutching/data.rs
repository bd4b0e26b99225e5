//! Curated J, ι_*, Σ, ∂ and P data (`clutching/1`), interpreted against a
//! homotopy-group table.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::ClutchingError;
use crate::homotopy_data::{FGAbGroup, GroupElement, GroupHom, HtpyTable};

pub const CLUTCHING_SCHEMA: &str = "clutching/1";
pub const BUNDLED_CLUTCHING: &str = include_str!("../../data/clutching.json");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    schema: String,
    #[serde(default)]
    #[allow(dead_code)]
    bases: Option<String>,
    j_maps: Vec<RawSo>,
    iota: Vec<RawSo>,
    suspension: Vec<RawSusp>,
    boundary: Vec<RawBoundary>,
    p_images: Vec<RawP>,
    sequences: Vec<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSo {
    so: u32,
    degree: u32,
    matrix: Vec<Vec<i64>>,
    citation: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSusp {
    sphere: u32,
    degree: u32,
    matrix: Vec<Vec<i64>>,
    citation: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBoundary {
    n: u32,
    matrix: Vec<Vec<i64>>,
    citation: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawP {
    n: u32,
    coords: Vec<i64>,
    citation: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitedHom {
    pub hom: GroupHom,
    pub citation: String,
}

/// Homomorphisms keyed by where they live:
/// * `j[(k, d)]`: J: π_d SO(k) → π_{d+k}(S^k)
/// * `iota[(k, d)]`: π_d SO(k) → π_d SO(k+1)
/// * `suspension[(m, d)]`: π_d(S^m) → π_{d+1}(S^{m+1})
/// * `boundary[n]`: π_n(S^n) → π_{n−1} SO(n)
#[derive(Debug, Clone)]
pub struct ClutchingData {
    j: BTreeMap<(u32, u32), CitedHom>,
    iota: BTreeMap<(u32, u32), CitedHom>,
    suspension: BTreeMap<(u32, u32), CitedHom>,
    boundary: BTreeMap<u32, CitedHom>,
    p_images: BTreeMap<u32, (GroupElement, String)>,
    sequences: Vec<u32>,
}

fn hom(source: FGAbGroup, target: FGAbGroup, matrix: Vec<Vec<i64>>, what: &str, citation: String) -> Result<CitedHom, ClutchingError> {
    // `[[]]` and `[]` both denote a map out of the trivial group.
    let matrix = if source.ngens() == 0 { vec![vec![]; target.ngens()] } else { matrix };
    let hom = GroupHom::new(source, target, matrix).map_err(|e| ClutchingError::Schema(format!("{what}: {e}")))?;
    Ok(CitedHom { hom, citation })
}

impl ClutchingData {
    pub fn load(doc: &str, table: &HtpyTable) -> Result<ClutchingData, ClutchingError> {
        let raw: RawDoc = serde_json::from_str(doc).map_err(|e| ClutchingError::Schema(e.to_string()))?;
        if raw.schema != CLUTCHING_SCHEMA {
            return Err(ClutchingError::Schema(format!("expected schema {CLUTCHING_SCHEMA}, found {}", raw.schema)));
        }
        let mut data = ClutchingData {
            j: BTreeMap::new(),
            iota: BTreeMap::new(),
            suspension: BTreeMap::new(),
            boundary: BTreeMap::new(),
            p_images: BTreeMap::new(),
            sequences: raw.sequences,
        };
        for e in raw.j_maps {
            let what = format!("J on π_{} SO({})", e.degree, e.so);
            let h = hom(table.so(e.so, e.degree)?, table.sphere(e.so, e.degree + e.so)?, e.matrix, &what, e.citation)?;
            data.j.insert((e.so, e.degree), h);
        }
        for e in raw.iota {
            let what = format!("ι_* on π_{} SO({})", e.degree, e.so);
            let h = hom(table.so(e.so, e.degree)?, table.so(e.so + 1, e.degree)?, e.matrix, &what, e.citation)?;
            data.iota.insert((e.so, e.degree), h);
        }
        for e in raw.suspension {
            let what = format!("Σ on π_{}(S^{})", e.degree, e.sphere);
            let h = hom(
                table.sphere(e.sphere, e.degree)?,
                table.sphere(e.sphere + 1, e.degree + 1)?,
                e.matrix,
                &what,
                e.citation,
            )?;
            data.suspension.insert((e.sphere, e.degree), h);
        }
        for e in raw.boundary {
            let what = format!("∂ on π_{n}(S^{n})", n = e.n);
            let h = hom(table.sphere(e.n, e.n)?, table.so(e.n, e.n - 1)?, e.matrix, &what, e.citation)?;
            data.boundary.insert(e.n, h);
        }
        for e in raw.p_images {
            let g = table.sphere(e.n, 2 * e.n - 1)?;
            let x = g.element(&e.coords).map_err(|err| ClutchingError::Schema(format!("P image for n = {}: {err}", e.n)))?;
            data.p_images.insert(e.n, (x, e.citation));
        }
        Ok(data)
    }

    pub fn bundled(table: &HtpyTable) -> Result<ClutchingData, ClutchingError> {
        ClutchingData::load(BUNDLED_CLUTCHING, table)
    }

    pub fn j_map(&self, so: u32, degree: u32) -> Result<&CitedHom, ClutchingError> {
        self.j
            .get(&(so, degree))
            .ok_or_else(|| ClutchingError::MissingEntry(format!("J: π_{degree} SO({so}) → π_{}(S^{so})", degree + so)))
    }

    pub fn iota(&self, so: u32, degree: u32) -> Result<&CitedHom, ClutchingError> {
        self.iota
            .get(&(so, degree))
            .ok_or_else(|| ClutchingError::MissingEntry(format!("ι_*: π_{degree} SO({so}) → π_{degree} SO({})", so + 1)))
    }

    pub fn suspension(&self, sphere: u32, degree: u32) -> Result<&CitedHom, ClutchingError> {
        self.suspension.get(&(sphere, degree)).ok_or_else(|| {
            ClutchingError::MissingEntry(format!("Σ: π_{degree}(S^{sphere}) → π_{}(S^{})", degree + 1, sphere + 1))
        })
    }

    pub fn boundary(&self, n: u32) -> Result<&CitedHom, ClutchingError> {
        self.boundary
            .get(&n)
            .ok_or_else(|| ClutchingError::MissingEntry(format!("∂: π_{n}(S^{n}) → π_{} SO({n})", n - 1)))
    }

    pub fn p_image(&self, n: u32) -> Result<&(GroupElement, String), ClutchingError> {
        self.p_images
            .get(&n)
            .ok_or_else(|| ClutchingError::MissingEntry(format!("P(Id) ∈ π_{}(S^{n})", 2 * n - 1)))
    }

    /// n for which the full exact-sequence diagram is shipped.
    pub fn sequences(&self) -> &[u32] {
        &self.sequences
    }

    pub fn j_keys(&self) -> impl Iterator<Item = &(u32, u32)> {
        self.j.keys()
    }
}

/// Whether a clutching class comes from SO(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftStatus {
    Given(GroupElement),
    Computed(GroupElement),
    /// ι_* is known and ρ is not in its image.
    Absent,
    /// ι_* on π_{n−1} SO(q) is not tabulated.
    Unknown,
}

impl LiftStatus {
    pub fn element(&self) -> Option<&GroupElement> {
        match self {
            LiftStatus::Given(x) | LiftStatus::Computed(x) => Some(x),
            _ => None,
        }
    }
}

/// The S^q bundle over S^n with clutching class ρ ∈ π_{n−1} SO(q+1) and, when
/// known, a lift ξ ∈ π_{n−1} SO(q) with ι_*ξ = ρ. A lift is the same thing as
/// a choice of section up to homotopy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClutchingClass {
    pub n: u32,
    pub q: u32,
    pub rho: GroupElement,
    pub lift: Option<GroupElement>,
}

impl ClutchingClass {
    pub fn new(
        table: &HtpyTable,
        data: &ClutchingData,
        n: u32,
        q: u32,
        rho: &[i64],
        lift: Option<&[i64]>,
    ) -> Result<ClutchingClass, ClutchingError> {
        if n < 2 || q < 1 {
            return Err(ClutchingError::Unsupported(format!("need n ≥ 2 and q ≥ 1, got (n, q) = ({n}, {q})")));
        }
        let rho = table.so(q + 1, n - 1)?.element(rho)?;
        let lift = match lift {
            None => None,
            Some(xi) => {
                let xi = table.so(q, n - 1)?.element(xi)?;
                let image = data.iota(q, n - 1)?.hom.apply(&xi)?;
                if image != rho {
                    return Err(ClutchingError::Unsupported(format!("ι_*({xi}) = {image} ≠ ρ = {rho}")));
                }
                Some(xi)
            }
        };
        Ok(ClutchingClass { n, q, rho, lift })
    }

    /// The class of the sphere bundle of ξ ⊕ 1 for a rank-q bundle ξ over S^n.
    pub fn from_vector_bundle(
        table: &HtpyTable,
        data: &ClutchingData,
        n: u32,
        q: u32,
        xi: &[i64],
    ) -> Result<ClutchingClass, ClutchingError> {
        if n < 2 || q < 1 {
            return Err(ClutchingError::Unsupported(format!("need n ≥ 2 and q ≥ 1, got (n, q) = ({n}, {q})")));
        }
        let xi = table.so(q, n - 1)?.element(xi)?;
        let rho = data.iota(q, n - 1)?.hom.apply(&xi)?;
        Ok(ClutchingClass { n, q, rho, lift: Some(xi) })
    }

    pub fn resolve_lift(&self, table: &HtpyTable, data: &ClutchingData) -> LiftStatus {
        if let Some(x) = &self.lift {
            return LiftStatus::Given(x.clone());
        }
        if let Ok(iota) = data.iota(self.q, self.n - 1) {
            return match iota.hom.preimage(&self.rho) {
                Some(x) => LiftStatus::Computed(x),
                None => LiftStatus::Absent,
            };
        }
        if self.rho.is_zero() {
            if let Ok(g) = table.so(self.q, self.n - 1) {
                return LiftStatus::Computed(g.zero());
            }
        }
        LiftStatus::Unknown
    }

    pub fn label(&self) -> String {
        match &self.lift {
            Some(x) => format!("S^{} bundle over S^{}, ρ = {}, ξ = {}", self.q, self.n, self.rho, x),
            None => format!("S^{} bundle over S^{}, ρ = {}", self.q, self.n, self.rho),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_loads() {
        let t = HtpyTable::bundled();
        let d = ClutchingData::bundled(&t).unwrap();
        assert_eq!(d.sequences(), &[2, 10, 12]);
        assert!(d.j_map(3, 3).unwrap().hom.is_surjective());
        assert!(d.iota(2, 3).unwrap().hom.source().is_trivial());
    }

    #[test]
    fn lift_checked() {
        let t = HtpyTable::bundled();
        let d = ClutchingData::bundled(&t).unwrap();
        assert!(ClutchingClass::new(&t, &d, 12, 12, &[1], Some(&[0, 1])).is_ok());
        assert!(ClutchingClass::new(&t, &d, 12, 12, &[1], Some(&[0, 2])).is_err());
        let c = ClutchingClass::new(&t, &d, 4, 2, &[1], None).unwrap();
        assert_eq!(c.resolve_lift(&t, &d), LiftStatus::Absent);
    }

    #[test]
    fn wrong_schema_rejected() {
        let t = HtpyTable::bundled();
        let doc = BUNDLED_CLUTCHING.replace("clutching/1", "clutching/9");
        assert!(matches!(ClutchingData::load(&doc, &t), Err(ClutchingError::Schema(_))));
    }
}
