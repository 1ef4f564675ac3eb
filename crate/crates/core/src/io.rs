//! JSON file formats: complexes with optional parts, edge orientations,
//! Bux–Gonzalez weights and link tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classifier::{LinkTable, WeightAssignment};
use crate::cubical::{Direction, KGammaView, MorseData};
use crate::error::{Error, Result};
use crate::simplicial::{PartiteStructure, SimplicialComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub part: Option<usize>,
}

/// `{"vertices":[{"id":…,"part":…}], "maximal_simplices":[[…]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub vertices: Vec<VertexEntry>,
    #[serde(default)]
    pub maximal_simplices: Vec<Vec<String>>,
}

impl ComplexFile {
    pub fn from_complex(x: &SimplicialComplex, parts: Option<&PartiteStructure>) -> Self {
        ComplexFile {
            vertices: x
                .vertices()
                .iter()
                .map(|v| VertexEntry { id: v.clone(), part: parts.and_then(|p| p.part(v)) })
                .collect(),
            maximal_simplices: x.maximal_named(),
        }
    }

    /// Builds the face-closed complex and, when every vertex carries a
    /// part, the validated partite structure.
    pub fn load(&self) -> Result<LoadedComplex> {
        let names: Vec<&str> = self.vertices.iter().map(|v| v.id.as_str()).collect();
        let complex = SimplicialComplex::new(
            &names,
            &self.maximal_simplices.iter().map(|s| s.iter().map(String::as_str).collect()).collect::<Vec<Vec<&str>>>(),
        )?;
        let with_part = self.vertices.iter().filter(|v| v.part.is_some()).count();
        let parts = if with_part == 0 {
            None
        } else if with_part < self.vertices.len() {
            let v = self.vertices.iter().find(|v| v.part.is_none()).unwrap();
            return Err(Error::validation(format!("vertex `{}` has no part while others do", v.id)));
        } else {
            let map: BTreeMap<String, usize> = self.vertices.iter().map(|v| (v.id.clone(), v.part.unwrap())).collect();
            let p = PartiteStructure::from_map(map);
            p.validate(&complex)?;
            Some(p)
        };
        Ok(LoadedComplex { complex, parts })
    }
}

#[derive(Clone, Debug)]
pub struct LoadedComplex {
    pub complex: SimplicialComplex,
    pub parts: Option<PartiteStructure>,
}

impl LoadedComplex {
    /// The partite structure, required by the caller's operation.
    pub fn require_parts(&self) -> Result<&PartiteStructure> {
        self.parts.as_ref().ok_or_else(|| Error::validation("input has no partite structure"))
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn parse_complex(text: &str) -> Result<LoadedComplex> {
    parse::<ComplexFile>(text, "complex")?.load()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CagePart {
    pub i: usize,
    pub labels: Vec<String>,
}

/// `{"parts":[{"i":0,"labels":[…]}], "orientation":{"label":"up|down"}}`.
/// `parts` is optional; when present it must list the cage labels exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrientationFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<CagePart>>,
    pub orientation: BTreeMap<String, Direction>,
}

impl OrientationFile {
    pub fn from_view(view: &KGammaView, morse: &MorseData) -> Self {
        OrientationFile {
            parts: Some(view.cages().iter().map(|c| CagePart { i: c.part, labels: c.labels.clone() }).collect()),
            orientation: morse.directions().clone(),
        }
    }

    pub fn morse_data(&self, view: &KGammaView) -> Result<MorseData> {
        if let Some(parts) = &self.parts {
            for p in parts {
                let cage =
                    view.cages().get(p.i).ok_or_else(|| Error::validation(format!("cage {} does not exist", p.i)))?;
                let mut given = p.labels.clone();
                let mut actual = cage.labels.clone();
                given.sort();
                actual.sort();
                if given != actual {
                    return Err(Error::validation(format!("cage {} labels do not match the complex", p.i)));
                }
            }
        }
        MorseData::new(view, self.orientation.clone())
    }
}

pub fn parse_orientation(text: &str) -> Result<OrientationFile> {
    parse(text, "orientation")
}

/// `{"weights":{"v":1,…}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsFile {
    pub weights: BTreeMap<String, i64>,
}

pub fn parse_weights(text: &str) -> Result<WeightAssignment> {
    Ok(WeightAssignment(parse::<WeightsFile>(text, "weights")?.weights))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkTableEntry {
    pub vertex: String,
    pub ascending: ComplexFile,
    pub descending: ComplexFile,
}

/// `{"n":2?, "tables":[{"vertex":…,"ascending":complex,"descending":complex}]}`.
/// Homology is computed on load through degree `n + 1` (or the link
/// dimension plus one when `n` is absent).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkTablesFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub tables: Vec<LinkTableEntry>,
}

impl LinkTablesFile {
    pub fn tables(&self) -> Result<Vec<LinkTable>> {
        let mut loaded = Vec::with_capacity(self.tables.len());
        for t in &self.tables {
            loaded.push((t.vertex.as_str(), t.ascending.load()?.complex, t.descending.load()?.complex));
        }
        let top = loaded.iter().map(|(_, a, d)| a.dim().max(d.dim()).max(0) as usize).max().unwrap_or(0);
        let through = self.n.map_or(top + 1, |n| (n + 1).max(top + 1));
        Ok(loaded.iter().map(|(v, a, d)| LinkTable::from_links(v, a, d, through)).collect())
    }
}

pub fn parse_link_tables(text: &str) -> Result<LinkTablesFile> {
    parse(text, "link tables")
}
