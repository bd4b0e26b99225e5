use serde::Serialize;

use super::data::ClutchingData;
use super::ClutchingError;
use crate::homotopy_data::{GroupElement, GroupHom};

/// The diagram, n even:
///
/// ```text
/// 0 → π_n(S^n) --∂--> π_{n−1} SO(n) --ι_*--> π_{n−1} SO(n+1) → 0
///        | P              | −J                   | −J
///        v                v                      v
/// π_{2n+1}(S^{2n+1}) → π_{2n−1}(S^n) ----Σ----> π_{2n}(S^{n+1}) → 0
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSeqSO {
    pub n: u32,
    pub boundary: GroupHom,
    pub iota: GroupHom,
    pub p_image: GroupElement,
    pub suspension: GroupHom,
    pub neg_j: GroupHom,
    pub j_right: GroupHom,
    pub citations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub n: u32,
    pub relations: Vec<String>,
}

/// One corrupted matrix entry or coordinate.
#[derive(Debug, Clone)]
pub struct Mutation {
    pub label: String,
    pub seq: ExactSeqSO,
}

impl ExactSeqSO {
    pub fn from_data(data: &ClutchingData, n: u32) -> Result<ExactSeqSO, ClutchingError> {
        if n < 2 || n % 2 == 1 || !data.sequences().contains(&n) {
            return Err(ClutchingError::MissingEntry(format!("exact sequence for n = {n}")));
        }
        let boundary = data.boundary(n)?;
        let iota = data.iota(n, n - 1)?;
        let (p, p_cite) = data.p_image(n)?;
        let susp = data.suspension(n, 2 * n - 1)?;
        let j_left = data.j_map(n, n - 1)?;
        let j_right = data.j_map(n + 1, n - 1)?;
        Ok(ExactSeqSO {
            n,
            boundary: boundary.hom.clone(),
            iota: iota.hom.clone(),
            p_image: p.clone(),
            suspension: susp.hom.clone(),
            neg_j: j_left.hom.negate(),
            j_right: j_right.hom.negate(),
            citations: [&boundary.citation, &iota.citation, p_cite, &susp.citation, &j_left.citation, &j_right.citation]
                .into_iter()
                .cloned()
                .collect(),
        })
    }

    fn fail(&self, relation: impl Into<String>) -> ClutchingError {
        ClutchingError::AuditFailure { n: self.n, relation: relation.into() }
    }

    /// Checks exactness of both rows and commutativity of both squares on
    /// every stored generator. Fails on the first violated relation.
    pub fn exactness_audit(&self) -> Result<AuditReport, ClutchingError> {
        let mut relations = vec![];
        let mut check = |ok: bool, rel: &str| -> Result<(), ClutchingError> {
            if ok {
                relations.push(rel.to_string());
                Ok(())
            } else {
                Err(self.fail(rel))
            }
        };
        for (name, h) in [
            ("∂", &self.boundary),
            ("ι_*", &self.iota),
            ("Σ", &self.suspension),
            ("−J", &self.neg_j),
            ("−J'", &self.j_right),
        ] {
            let ok = GroupHom::new(h.source().clone(), h.target().clone(), h.matrix().to_vec()).is_ok();
            check(ok, &format!("{name} is well defined"))?;
        }
        check(self.boundary.is_injective(), "∂ is injective")?;
        let so_n = self.iota.source();
        check(
            so_n.same_subgroup(&self.boundary.image_generators(), &self.iota.kernel_generators()),
            "image(∂) = kernel(ι_*)",
        )?;
        check(self.iota.is_surjective(), "ι_* is surjective")?;
        let sphere = self.suspension.source();
        check(
            sphere.same_subgroup(&self.suspension.kernel_generators(), std::slice::from_ref(&self.p_image)),
            "kernel(Σ) is generated by P(Id)",
        )?;
        check(self.suspension.is_surjective(), "Σ is surjective")?;
        let left = self.suspension.after(&self.neg_j).ok();
        let right = self.j_right.after(&self.iota).ok();
        let square = match (left, right) {
            (Some(l), Some(r)) => l.agrees_with(&r),
            _ => false,
        };
        check(square, "Σ∘(−J) = (−J)∘ι_*")?;
        let lower = self.boundary.image_of_generator(0);
        let p_ok = self.neg_j.apply(&lower).map(|x| x == self.p_image).unwrap_or(false);
        check(p_ok, "(−J)∘∂ = P")?;
        Ok(AuditReport { n: self.n, relations })
    }

    /// Every single-entry +1 corruption of the stored ∂, ι_*, Σ and P(Id).
    pub fn mutations(&self) -> Vec<Mutation> {
        let mut out = vec![];
        for (name, h) in [("∂", &self.boundary), ("ι_*", &self.iota), ("Σ", &self.suspension)] {
            for (i, row) in h.matrix().iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    let m = h.with_entry(i, j, v + 1);
                    let mut seq = self.clone();
                    match name {
                        "∂" => seq.boundary = m,
                        "ι_*" => seq.iota = m,
                        _ => seq.suspension = m,
                    }
                    out.push(Mutation { label: format!("{name}[{i}][{j}] += 1"), seq });
                }
            }
        }
        for i in 0..self.p_image.coords().len() {
            let mut c = self.p_image.coords().to_vec();
            c[i] += 1;
            let mut seq = self.clone();
            seq.p_image = self.p_image.group().element(&c).expect("arity");
            out.push(Mutation { label: format!("P[{i}] += 1"), seq });
        }
        out
    }

    /// A lift of ρ ∈ π_{n−1} SO(n+1) to π_{n−1} SO(n).
    pub fn lift(&self, rho: &GroupElement) -> Option<GroupElement> {
        self.iota.preimage(rho)
    }
}
