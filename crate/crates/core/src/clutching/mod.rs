//! Sphere bundles over spheres given by clutching classes, the J-homomorphism
//! and the exact sequence of SO(n) → SO(n+1) → S^n.
//!
//! Sign convention: braces are Whitehead-graded, so the brace of a section
//! is −J of its lift. The exact-sequence object therefore stores −J on
//! π_{n−1} SO(n) and checks Σ∘(−J) = (−J)∘ι_* and (−J)∘∂ = P.

mod data;
mod exact;
pub mod jrules;
mod ops;

use thiserror::Error;

pub use data::{CitedHom, ClutchingClass, ClutchingData, LiftStatus, BUNDLED_CLUTCHING, CLUTCHING_SCHEMA};
pub use exact::{AuditReport, ExactSeqSO, Mutation};
pub use ops::{
    brace_from_clutching, clutched_split_verdict, fibre_equiv_decision, husemoller_counterexample,
    husemoller_rectified, p_map, rational_split_certificate, thom_attaching, BraceResult, HusemollerReport,
    PImage, ThomReport,
};

use crate::homotopy_data::{GroupError, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClutchingError {
    #[error("clutching data: {0}")]
    Schema(String),
    #[error("missing entry: {0}")]
    MissingEntry(String),
    #[error("no lift of ρ = {rho} to π_{}(SO({q})) for (n, q) = ({n}, {q}): {detail}", n - 1)]
    NoLift { n: u32, q: u32, rho: String, detail: String },
    #[error("exactness audit failed for n = {n}: {relation}")]
    AuditFailure { n: u32, relation: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
