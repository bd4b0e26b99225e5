//! Finitely generated abelian groups and curated homotopy-group tables.

mod group;
pub mod lattice;
mod rational;
mod table;

pub use group::{FGAbGroup, GroupElement, GroupError, GroupHom};
pub use rational::{lie_group_rational_degrees, rational_pi_sphere, rationalize, LIE_GROUP_CITATION};
pub use table::{
    ingest_table, HtpyTable, Provenance, Space, TableEntry, TableError, ValidationReport, BUNDLED_TABLE,
    TABLE_SCHEMA,
};
