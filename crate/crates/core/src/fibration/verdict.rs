use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graded_lie::LieElement;
use crate::homotopy_data::GroupElement;

pub const GENERALIZED_BRACE_NOT_IMPLIED: &str = "GENERALIZED_BRACE_NOT_IMPLIED";
pub const CONVERSE_FAILS: &str = "CONVERSE_FAILS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "degree", rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    /// Checked through this degree only.
    HoldsUpToDegree(u32),
    Unknown,
}

/// Evidence that a Fails verdict is genuine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Normal-form terms of a nonzero graded Lie element.
    Lie { terms: Vec<(String, String)>, rendered: String },
    /// Nonzero element of a finitely generated abelian group.
    Group { group: String, coords: Vec<i64>, label: String },
    /// A nonzero class known only through a cited statement.
    Formal { expression: String },
}

impl Witness {
    pub fn lie(x: &LieElement) -> Witness {
        Witness::Lie {
            terms: x.term_list().into_iter().map(|(m, c)| (m, c.to_string())).collect(),
            rendered: x.render(),
        }
    }

    pub fn group(x: &GroupElement, label: impl Into<String>) -> Witness {
        Witness::Group { group: x.group().to_string(), coords: x.coords().to_vec(), label: label.into() }
    }

    pub fn formal(e: impl Into<String>) -> Witness {
        Witness::Formal { expression: e.into() }
    }

    pub fn is_nonzero(&self) -> bool {
        match self {
            Witness::Lie { terms, .. } => !terms.is_empty(),
            Witness::Group { coords, .. } => coords.iter().any(|&c| c != 0),
            Witness::Formal { expression } => !expression.is_empty(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caveat {
    pub tag: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub status: Status,
    pub certificate: Value,
    pub witness: Option<Witness>,
    pub caveats: Vec<Caveat>,
    pub citations: Vec<String>,
}

impl Verdict {
    pub fn new(claim: impl Into<String>, status: Status) -> Verdict {
        Verdict {
            claim: claim.into(),
            status,
            certificate: Value::Null,
            witness: None,
            caveats: vec![],
            citations: vec![],
        }
    }

    pub fn holds(claim: impl Into<String>) -> Verdict {
        Verdict::new(claim, Status::Holds)
    }

    /// A failing verdict; the witness must be nonzero.
    pub fn fails(claim: impl Into<String>, witness: Witness) -> Verdict {
        assert!(witness.is_nonzero(), "Fails needs a nonzero witness");
        let mut v = Verdict::new(claim, Status::Fails);
        v.witness = Some(witness);
        v
    }

    pub fn with_certificate(mut self, c: Value) -> Verdict {
        self.certificate = c;
        self
    }

    pub fn with_witness(mut self, w: Witness) -> Verdict {
        self.witness = Some(w);
        self
    }

    pub fn cite(mut self, anchor: impl Into<String>) -> Verdict {
        self.citations.push(anchor.into());
        self
    }

    pub fn caveat(mut self, tag: &str, note: impl Into<String>) -> Verdict {
        self.caveats.push(Caveat { tag: tag.to_string(), note: note.into() });
        self
    }

    pub fn has_caveat(&self, tag: &str) -> bool {
        self.caveats.iter().any(|c| c.tag == tag)
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn is_hold(&self) -> bool {
        matches!(self.status, Status::Holds | Status::HoldsUpToDegree(_))
    }
}

/// Descriptive anchors used across verdicts.
pub mod anchors {
    pub const BRACE_DEFINITION: &str = "brace-product-definition: i_*{a,b}_s = [s_*a, i_*b]";
    pub const DERIVATION_PROPOSITION: &str = "brace-derivation-proposition: D_b is a derivation and b -> D_b a Lie map";
    pub const H_SPLITTING_THEOREM: &str = "h-splitting-theorem: generalized brace vanishes iff Ωs·Ωi is an H-splitting";
    pub const SAMELSON_ALGEBRA_THEOREM: &str =
        "samelson-algebra-theorem: James brace vanishes iff Ωs·Ωi preserves Samelson products";
    pub const SUSPENSION_CRITERION: &str =
        "suspension-over-suspension: [s,i] = 0 iff the generalized brace vanishes; then E ≃ ΣB × ΣF";
    pub const SPHERE_OVER_SPHERE: &str =
        "sphere-over-sphere-corollary: E ≃ S^n × S^m iff some section has {Id,Id}_s = 0";
    pub const WEDGE_COROLLARY: &str =
        "wedge-of-spheres-corollary: H-splitting iff all pairwise inclusion braces vanish";
    pub const PULLBACK_LEMMA: &str = "pullback-lemma: {a,b}_{f*s} = {f_*a, b}_s";
    pub const PRODUCT_FIBRATION_LEMMA: &str = "product-fibration-lemma: {a,(b1,b2)} = ({a,b1}, {a,b2})";
    pub const PULLBACK_KILLS_BRACE: &str =
        "pullback-kills-brace: pulling back along a product base with null factor inclusions";
    pub const FREE_LOOP_THEOREM: &str = "free-loop-theorem: {f,g}_s = ad^m[f, ad^-m g]";
    pub const FREE_LOOP_S2_EXAMPLE: &str = "free-loop-S2-example: m = 1 gives 2 ad γ; m ≥ 2 vanishes identically";
    pub const SURFACE_EXAMPLE: &str = "surface-bundle-example: brace ≡ 0 yet w(T S(ζ)) = 1 + π*w₂(ζ) ≠ 1";
    pub const S2_OVER_S2_EXAMPLE: &str = "s2-over-s2-example: no section of the nontrivial bundle has vanishing brace";
    pub const ODD_FIBRE_RATIONAL: &str = "odd-fibre-rational-example: S^n_Q concentrated in degree n";
    pub const LIE_GROUP_RATIONAL: &str =
        "lie-group-rational-example: G_Q is a product of odd spheres, pairwise braces vanish";
    pub const RATIONAL_SUSPENSION_THEOREM: &str =
        "rational-suspension-theorem: vanishing rational James brace gives E_Q ≃ ΣB_Q × ΣF_Q";
    pub const SU3_REMARK: &str = "su3-converse-remark: SU(3) → S^5 is rationally a product without a section";
    pub const DIAGONAL_EXAMPLE: &str = "diagonal-section-example: {Id,Id}_Δ = [Id,Id] in π_{2n-1}(S^n)";
    pub const J_BRACE_THEOREM: &str = "clutching-brace-theorem: {Id,Id}_s = J[ε] − J[ρ], = −J[ρ] over a suspension";
    pub const J_LEMMA: &str = "generalized-J-lemma: additivity, naturality, J[ε] = 0 over suspensions";
    pub const FIBRE_EQUIV_THEOREM: &str = "fibre-equivalence-theorem: J[ρ₁] = J[ρ₂] iff compatible equivalence";
    pub const SECTION_INDEPENDENCE: &str =
        "suspended-brace-independence: Σ{Id,Id}_s does not depend on the section";
    pub const THOM_LEMMA: &str = "thom-space-lemma (Milnor): Th(ξ) = D^{n+q} ∪_Φ S^q with Φ = J(ρ)";
    pub const HUSEMOLLER_EXAMPLE: &str =
        "husemoller-counterexample: J onto π_6(S^3) but Σπ_5(S^2) is proper";
    pub const HUSEMOLLER_RECTIFIED: &str = "husemoller-rectified: J[ι_*ξ] is a suspension, = −Σ{Id,Id}_s";
    pub const RATIONAL_SPHERE_BUNDLE: &str =
        "rational-sphere-bundle-theorem: S^q bundles over S^n with section are rationally products";
    pub const EXACT_SEQUENCE_SO: &str =
        "SO-exact-sequence: 0 → π_n(S^n) → π_{n-1}SO(n) → π_{n-1}SO(n+1) → 0 and its J-diagram";
    pub const P_MAP: &str = "P-map: P(Id) = (1,0) for n ≠ 2,4,8 and (2,g_n) for n = 2,4,8";
    pub const N_1_2_MOD_8_EXAMPLE: &str = "n-1-2-mod-8-example: exactly two S^n bundles over S^n";
    pub const N_12_EXAMPLE: &str = "n-12-example: J: π_11 SO(13) → π_24 S^13 = Z504";
    pub const JAMES_WHITEHEAD: &str = "James–Whitehead, The homotopy theory of sphere bundles over spheres I (1954)";
    pub const ADAMS_J: &str = "Adams, On the groups J(X) IV (1966)";
    pub const TODA: &str = "Toda, Composition Methods in Homotopy Groups of Spheres (1962)";
    pub const GILMORE: &str = "Gilmore, Some Whitehead products on odd spheres (1969)";
    pub const ADAMS_HOPF: &str = "Adams, On the non-existence of elements of Hopf invariant one (1960)";
    pub const HOPF_WHITEHEAD: &str = "Whitehead, A certain exact sequence (1950): [ι_2, η] = 0";
}
