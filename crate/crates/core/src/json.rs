//! File formats for lattices, sequences, tables and classifications.

use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::enumerate::{Classification, Verdict};
use crate::error::{Error, Result};
use crate::lattice::{catalog, Lattice};
use crate::sequence::{SequencePresentation, TruncatedTable};
use crate::upset::{UpwardClosedSet, Vector};

/// `{"elements": [...], "leq": [[x, y], ...]}`. Emitted with the covering
/// pairs only; any generating set of pairs is accepted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

impl LatticeJson {
    pub fn from_lattice(l: &Lattice) -> Self {
        LatticeJson {
            elements: l.elements().to_vec(),
            leq: l.cover_labels(),
        }
    }

    pub fn build(&self) -> Result<Lattice> {
        Lattice::new(&self.elements, &self.leq)
    }
}

/// A lattice given inline or by catalog name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeRef {
    Name(String),
    Inline(LatticeJson),
}

impl LatticeRef {
    pub fn resolve(&self) -> Result<Lattice> {
        match self {
            LatticeRef::Name(name) => catalog(name),
            LatticeRef::Inline(json) => json.build(),
        }
    }

    /// The catalog name when it reproduces `l` exactly, else the inline form.
    pub fn for_lattice(l: &Lattice, name: Option<&str>) -> Self {
        match name {
            Some(n) if catalog(n).is_ok_and(|c| &c == l) => LatticeRef::Name(n.to_string()),
            _ => LatticeRef::Inline(LatticeJson::from_lattice(l)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceJson {
    pub lattice: LatticeRef,
    pub levels: IndexMap<String, UpwardClosedSet>,
}

impl SequenceJson {
    pub fn from_presentation(p: &SequencePresentation, lattice: LatticeRef) -> Self {
        let l = p.lattice_arc();
        let levels = (0..l.size())
            .map(|x| (l.label(x).to_string(), p.level(x).clone()))
            .collect();
        SequenceJson { lattice, levels }
    }

    pub fn build(&self) -> Result<SequencePresentation> {
        let l = self.lattice.resolve()?;
        build_levels(Arc::new(l), &self.levels)
    }
}

fn build_levels(l: Arc<Lattice>, levels: &IndexMap<String, UpwardClosedSet>) -> Result<SequencePresentation> {
    let mut ordered: Vec<Option<UpwardClosedSet>> = vec![None; l.size()];
    for (id, u) in levels {
        let x = l.index_of(id)?;
        if ordered[x].replace(u.clone()).is_some() {
            return Err(Error::Format(format!("level of `{id}` given twice")));
        }
    }
    let levels = ordered
        .into_iter()
        .enumerate()
        .map(|(x, u)| u.ok_or_else(|| Error::Format(format!("missing level of `{}`", l.label(x)))))
        .collect::<Result<Vec<_>>>()?;
    SequencePresentation::from_levels(l, levels)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub vector: Vec<u32>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub lattice: LatticeRef,
    #[serde(rename = "T")]
    pub bound: u32,
    pub values: Vec<TableEntry>,
}

impl TableJson {
    pub fn from_table(t: &TruncatedTable, lattice: LatticeRef) -> Self {
        let l = t.lattice_arc();
        let values = t
            .entries()
            .map(|(v, x)| TableEntry {
                vector: v.0.clone(),
                value: l.label(x).to_string(),
            })
            .collect();
        TableJson {
            lattice,
            bound: t.bound(),
            values,
        }
    }

    pub fn build(&self) -> Result<TruncatedTable> {
        let l = Arc::new(self.lattice.resolve()?);
        let entries = self
            .values
            .iter()
            .map(|e| Ok((Vector(e.vector.clone()), l.index_of(&e.value)?)))
            .collect::<Result<Vec<_>>>()?;
        TruncatedTable::new(l, self.bound, entries)
    }
}

/// A sequence file holds either a level family or a truncated table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceFile {
    Levels(SequencePresentation),
    Table(TruncatedTable),
}

impl SequenceFile {
    pub fn lattice(&self) -> &Lattice {
        match self {
            SequenceFile::Levels(p) => p.lattice_arc(),
            SequenceFile::Table(t) => t.lattice_arc(),
        }
    }

    /// The level family; tables are converted with their zero tail.
    pub fn presentation(&self) -> Result<SequencePresentation> {
        match self {
            SequenceFile::Levels(p) => Ok(p.clone()),
            SequenceFile::Table(t) => SequencePresentation::from_truncated_table(t),
        }
    }
}

pub fn parse_lattice(text: &str) -> Result<Lattice> {
    serde_json::from_str::<LatticeJson>(text)?.build()
}

pub fn parse_sequence(text: &str) -> Result<SequenceFile> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Format("expected a JSON object".into()))?;
    if obj.contains_key("levels") {
        Ok(SequenceFile::Levels(
            serde_json::from_value::<SequenceJson>(value)?.build()?,
        ))
    } else if obj.contains_key("T") {
        Ok(SequenceFile::Table(
            serde_json::from_value::<TableJson>(value)?.build()?,
        ))
    } else {
        Err(Error::Format("expected `levels` or `T` and `values`".into()))
    }
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationJson {
    pub verdict: String,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pair: Option<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cap: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sequences: Option<Vec<SequenceJson>>,
}

impl ClassificationJson {
    pub fn from_classification(c: &Classification, lattice: &LatticeRef) -> Self {
        let method = c.method.name().to_string();
        match &c.verdict {
            Verdict::Finite(seqs) => ClassificationJson {
                verdict: "finite".into(),
                method,
                count: Some(seqs.len()),
                pair: None,
                cap: c.cap,
                sequences: Some(
                    seqs.iter()
                        .map(|p| SequenceJson::from_presentation(p, lattice.clone()))
                        .collect(),
                ),
            },
            Verdict::Infinite { pair, family } => {
                let l = family.lattice();
                ClassificationJson {
                    verdict: "infinite".into(),
                    method,
                    count: None,
                    pair: Some((l.label(pair.delta).to_string(), l.label(pair.epsilon).to_string())),
                    cap: None,
                    sequences: None,
                }
            }
        }
    }
}
