//! Citation-carrying homotopy-group tables (`htpy-table/1`).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::group::FGAbGroup;

pub const TABLE_SCHEMA: &str = "htpy-table/1";
pub const BUNDLED_TABLE: &str = include_str!("../../data/htpy_table.json");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("schema error at {field}{}: {msg}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Schema { field: String, line: Option<usize>, msg: String },
    #[error("no table entry for π_{degree}({space})")]
    MissingEntry { space: Space, degree: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "param", rename_all = "snake_case")]
pub enum Space {
    Sphere(u32),
    So(u32),
    LieGroup(String),
    Custom(String),
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Sphere(n) => write!(f, "S^{n}"),
            Space::So(n) => write!(f, "SO({n})"),
            Space::LieGroup(s) | Space::Custom(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Paper,
    Literature,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub space: Space,
    pub degree: u32,
    pub group: FGAbGroup,
    pub citation: String,
    pub provenance: Provenance,
}

impl TableEntry {
    pub fn label(&self) -> String {
        format!("π_{}({}) = {}", self.degree, self.space, self.group)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub entry_count: usize,
    pub warnings: Vec<String>,
    pub paper_entries: Vec<String>,
    pub literature_entries: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HtpyTable {
    entries: BTreeMap<(Space, u32), TableEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    schema: String,
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    space: Space,
    degree: u32,
    rank: Option<usize>,
    torsion: Option<Vec<i64>>,
    relations: Option<Vec<Vec<i64>>>,
    generators: Option<usize>,
    citation: String,
    provenance: Provenance,
}

fn schema_err(field: String, msg: impl Into<String>) -> TableError {
    TableError::Schema { field, line: None, msg: msg.into() }
}

/// Parse and validate a table document. Non-canonical torsion lists are
/// normalized to invariant factors and reported as warnings.
pub fn ingest_table(doc: &str) -> Result<(HtpyTable, ValidationReport), TableError> {
    let raw: RawDoc = serde_json::from_str(doc).map_err(|e| TableError::Schema {
        field: "document".into(),
        line: Some(e.line()),
        msg: e.to_string(),
    })?;
    if raw.schema != TABLE_SCHEMA {
        return Err(schema_err("schema".into(), format!("expected `{TABLE_SCHEMA}`, got `{}`", raw.schema)));
    }
    let mut entries = BTreeMap::new();
    let mut report = ValidationReport::default();
    for (i, e) in raw.entries.into_iter().enumerate() {
        let at = |f: &str| format!("entries[{i}].{f}");
        if e.citation.trim().is_empty() {
            return Err(schema_err(at("citation"), "citation must be non-empty"));
        }
        let group = match (e.rank, e.torsion, e.relations) {
            (None, None, Some(rel)) => {
                let ngens = e.generators.or_else(|| rel.first().map(Vec::len)).ok_or_else(|| {
                    schema_err(at("generators"), "empty relation list needs an explicit generator count")
                })?;
                FGAbGroup::from_relations(ngens, &rel).map_err(|err| schema_err(at("relations"), err.to_string()))?
            }
            (Some(rank), torsion, None) => {
                let torsion = torsion.unwrap_or_default();
                let (g, canonical) = FGAbGroup::normalized(rank, &torsion);
                if !canonical {
                    report.warnings.push(format!(
                        "{}: torsion {:?} normalized to invariant factors {:?}",
                        at("torsion"),
                        torsion,
                        g.torsion()
                    ));
                }
                g
            }
            (_, _, Some(_)) => {
                return Err(schema_err(at("relations"), "give either rank/torsion or relations, not both"))
            }
            _ => return Err(schema_err(at("rank"), "missing group: supply rank (and torsion) or relations")),
        };
        let key = (e.space.clone(), e.degree);
        if entries.contains_key(&key) {
            return Err(schema_err(at("space"), format!("duplicate entry for π_{}({})", e.degree, e.space)));
        }
        let entry = TableEntry { space: e.space, degree: e.degree, group, citation: e.citation, provenance: e.provenance };
        match entry.provenance {
            Provenance::Paper => report.paper_entries.push(entry.label()),
            Provenance::Literature => report.literature_entries.push(entry.label()),
        }
        entries.insert(key, entry);
    }
    report.entry_count = entries.len();
    Ok((HtpyTable { entries }, report))
}

impl HtpyTable {
    pub fn bundled() -> HtpyTable {
        ingest_table(BUNDLED_TABLE).expect("bundled table is valid").0
    }

    pub fn entry(&self, space: &Space, degree: u32) -> Result<&TableEntry, TableError> {
        self.entries
            .get(&(space.clone(), degree))
            .ok_or_else(|| TableError::MissingEntry { space: space.clone(), degree })
    }

    /// π_degree(space); a missing row is an error, never a silent 0.
    pub fn group_lookup(&self, space: &Space, degree: u32) -> Result<FGAbGroup, TableError> {
        self.entry(space, degree).map(|e| e.group.clone())
    }

    pub fn sphere(&self, n: u32, k: u32) -> Result<FGAbGroup, TableError> {
        self.group_lookup(&Space::Sphere(n), k)
    }

    pub fn so(&self, n: u32, k: u32) -> Result<FGAbGroup, TableError> {
        self.group_lookup(&Space::So(n), k)
    }

    pub fn entries(&self) -> impl Iterator<Item = &TableEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(entries: &str) -> String {
        format!(r#"{{"schema": "htpy-table/1", "entries": [{entries}]}}"#)
    }

    #[test]
    fn torsion_is_normalized_with_warning() {
        let d = doc(r#"{"space": {"kind": "custom", "param": "X"}, "degree": 3, "rank": 0, "torsion": [4, 2], "citation": "c", "provenance": "literature"}"#);
        let (t, r) = ingest_table(&d).unwrap();
        assert_eq!(t.group_lookup(&Space::Custom("X".into()), 3).unwrap().torsion(), &[2, 4]);
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn relations_reduce_to_snf() {
        let d = doc(r#"{"space": {"kind": "custom", "param": "X"}, "degree": 1, "relations": [[2, 4], [6, 6]], "citation": "c", "provenance": "literature"}"#);
        let (t, _) = ingest_table(&d).unwrap();
        assert_eq!(t.group_lookup(&Space::Custom("X".into()), 1).unwrap().torsion(), &[2, 6]);
    }

    #[test]
    fn schema_errors() {
        let dup = r#"{"space": {"kind": "sphere", "param": 3}, "degree": 6, "rank": 0, "torsion": [12], "citation": "c", "provenance": "paper"}"#;
        let err = ingest_table(&doc(&format!("{dup}, {dup}"))).unwrap_err();
        assert!(matches!(err, TableError::Schema { ref field, .. } if field == "entries[1].space"));
        let empty = r#"{"space": {"kind": "sphere", "param": 3}, "degree": 6, "rank": 0, "citation": " ", "provenance": "paper"}"#;
        assert!(ingest_table(&doc(empty)).is_err());
        let bad_json = ingest_table("{\n\"schema\": 3}").unwrap_err();
        assert!(matches!(bad_json, TableError::Schema { line: Some(2), .. }));
    }
}
