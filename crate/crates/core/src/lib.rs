//! Brace products in fibrations with sections: an exact symbolic engine for
//! free graded Lie algebras, curated homotopy-group tables, split-fibration
//! calculus and the clutching/J-homomorphism rules, all producing qualified
//! verdicts with certificates.

pub mod graded_lie;
pub mod oracle;
pub mod homotopy_data;
pub mod fibration;
pub mod clutching;
pub mod suites;
