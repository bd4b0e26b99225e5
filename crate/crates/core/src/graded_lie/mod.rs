//! Free graded Lie algebras over Q.
//!
//! Internally everything is graded in the Samelson sense (an honest graded
//! Lie algebra, bracket of degree 0). The Whitehead grading is obtained by
//! shifting every degree up by one; it is exposed through
//! [`LieElement::adjoint_shift`] and the `view` carried by each element.

mod basis;
mod element;
mod parse;
mod tensor;
pub mod word;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use basis::{graded_basis, GradedBasis, DEFAULT_DEGREE_CAP};
pub use element::{LieElement, Monomial};
pub use parse::{parse_expr, Expr};
pub use tensor::TensorPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("mixed degrees {0} and {1} in one element")]
    MixedDegree(u32, u32),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("elements live in different presentations")]
    PresentationMismatch,
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("degree cap {cap} is below the largest generator degree {needed}")]
    CapTooSmall { cap: u32, needed: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GradingView {
    Samelson,
    Whitehead,
}

impl GradingView {
    /// Degree of a class of Samelson degree `s` as seen in this view.
    pub fn degree_of(self, s: u32) -> u32 {
        match self {
            GradingView::Samelson => s,
            GradingView::Whitehead => s + 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub samelson_degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, samelson_degree: u32) -> Self {
        Generator { name: name.into(), samelson_degree }
    }

    /// A generator given by its Whitehead degree (a class in π_k(X)).
    pub fn whitehead(name: impl Into<String>, k: u32) -> Self {
        Generator { name: name.into(), samelson_degree: k.saturating_sub(1) }
    }
}

/// An ordered generator set. Order is declaration order; it fixes the
/// Lyndon ordering and therefore the normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    gens: Vec<Generator>,
}

impl Presentation {
    pub fn new(gens: Vec<Generator>) -> Result<Arc<Self>, LieError> {
        for (i, g) in gens.iter().enumerate() {
            if g.samelson_degree == 0 {
                // Whitehead degree 1: the fundamental group need not be abelian.
                return Err(LieError::Unsupported(format!(
                    "generator `{}` has Whitehead degree 1",
                    g.name
                )));
            }
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(LieError::DuplicateGenerator(g.name.clone()));
            }
        }
        if gens.len() > u16::MAX as usize {
            return Err(LieError::Unsupported("too many generators".into()));
        }
        Ok(Arc::new(Presentation { gens }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<u16> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as u16)
    }

    pub fn weights(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.samelson_degree).collect()
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(|g| g.samelson_degree).max().unwrap_or(0)
    }
}
