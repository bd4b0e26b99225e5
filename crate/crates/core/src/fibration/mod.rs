//! Fibrations with sections: brace products, transport lemmas and
//! qualified splitting verdicts.

mod descriptor;
mod free_loop;
mod split;
mod theorems;
mod verdict;

use thiserror::Error;

pub use descriptor::{
    h_split_verdict, parse_descriptor, rational_verdicts, BaseSpace, DescriptorDoc, FibrationDescriptor, PairBrace,
    FIBRATION_SCHEMA,
};
pub use free_loop::{free_loop_brace, free_loop_verdict, whitehead_product, LoopTarget, SphereClass};
pub use split::{
    basis_pairs, brace_product_fibration, brace_pullback, derivation_identity_check, lie_map_identity_check,
    BaseEffect, Pairing, SplitFibration, TotalElement, TotalLie,
};
pub use theorems::{
    diagonal_section_brace, sphere_over_sphere_split, surface_bundle_report, BraceEvidence, SurfaceReport,
};
pub use verdict::{anchors, Caveat, Status, Verdict, Witness, CONVERSE_FAILS, GENERALIZED_BRACE_NOT_IMPLIED};

use crate::graded_lie::LieError;
use crate::homotopy_data::{GroupError, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("invalid pairing: Jacobi fails on {triple}: {defect}")]
    InvalidPairing { triple: String, defect: String },
    #[error("target degree {0} is out of range")]
    DegreeOutOfRange(u32),
    #[error("expected Whitehead degree {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("fibrations do not share a base")]
    BaseMismatch,
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Table(TableError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Clutching(Box<crate::clutching::ClutchingError>),
}

impl From<crate::clutching::ClutchingError> for FibrationError {
    fn from(e: crate::clutching::ClutchingError) -> Self {
        FibrationError::Clutching(Box::new(e))
    }
}
