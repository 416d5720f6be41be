use std::collections::BTreeMap;
use std::path::Path as FsPath;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::complex::{BoundedComplex, Decomposition};
use super::module::{ProjMap, ProjModule};
use crate::exactla::parse_rat;
use crate::quivalg::{default_max_len, FDAlgebra, QuiverSpec, TermSpec};
use crate::{Error, Result};

/// JSON schema of a two-term complex: an algebra (inline or by file), the
/// vertex labels per degree, the degree-1 to degree-0 differential as a
/// sparse entry list, and the named summand rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub algebra: AlgebraRef,
    pub degrees: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub differential: Vec<DiffEntrySpec>,
    #[serde(default)]
    pub summands: Vec<SummandRowsSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    File { file: String },
    Inline(QuiverSpec),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiffEntrySpec {
    pub row: usize,
    pub col: usize,
    pub element: Vec<TermSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SummandRowsSpec {
    pub name: String,
    pub rows_by_degree: BTreeMap<String, Vec<usize>>,
}

impl ComplexSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Resolves the algebra reference, relative to `base_dir` for file
    /// references.
    pub fn resolve_algebra(
        &self,
        base_dir: &FsPath,
        max_len: Option<usize>,
    ) -> Result<FDAlgebra> {
        let spec = match &self.algebra {
            AlgebraRef::Inline(spec) => spec.clone(),
            AlgebraRef::File { file } => {
                let path = base_dir.join(file);
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    Error::Parse(format!("cannot read algebra file {}: {e}", path.display()))
                })?;
                QuiverSpec::from_json(&text)?
            }
        };
        let (quiver, relations) = spec.build()?;
        let cap = max_len.unwrap_or_else(|| default_max_len(&quiver, &relations));
        FDAlgebra::construct(quiver, relations, cap)
    }

    /// Builds the two-term complex over a resolved algebra.
    pub fn build(&self, algebra: Arc<FDAlgebra>) -> Result<BoundedComplex> {
        for key in self.degrees.keys() {
            if key != "0" && key != "1" {
                return Err(Error::Parse(format!(
                    "complex files are two-term: unexpected degree {key:?}"
                )));
            }
        }
        let module = |key: &str| -> Result<ProjModule> {
            let labels = self.degrees.get(key).cloned().unwrap_or_default();
            let vertices = labels
                .iter()
                .map(|l| algebra.vertex(l))
                .collect::<Result<Vec<_>>>()?;
            ProjModule::new(algebra.clone(), vertices)
        };
        let l0 = module("0")?;
        let l1 = module("1")?;

        let quiver = algebra
            .quiver()
            .ok_or_else(|| Error::Invalid("complex algebra must be presented".into()))?
            .clone();
        let mut entries = vec![vec![algebra.zero_element(); l1.rank()]; l0.rank()];
        for entry in &self.differential {
            if entry.row >= l0.rank() || entry.col >= l1.rank() {
                return Err(Error::Parse(format!(
                    "differential entry ({}, {}) out of range",
                    entry.row, entry.col
                )));
            }
            let mut terms = Vec::new();
            for t in &entry.element {
                if t.path.is_empty() {
                    return Err(Error::Parse("differential term with empty path".into()));
                }
                let ids: Vec<&str> = t.path.iter().map(String::as_str).collect();
                terms.push((parse_rat(&t.coeff)?, quiver.path(&ids)?));
            }
            entries[entry.row][entry.col] = algebra.element_from_terms(&terms)?;
        }
        let phi = ProjMap::new(l1.clone(), l0.clone(), entries)?;
        let complex = BoundedComplex::new(algebra, 0, vec![l0, l1], vec![phi])?;
        if self.summands.is_empty() {
            return Ok(complex);
        }
        let mut names = Vec::new();
        let mut rows = Vec::new();
        for s in &self.summands {
            names.push(s.name.clone());
            let mut by_degree = BTreeMap::new();
            for (key, list) in &s.rows_by_degree {
                let deg: i64 = key
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad degree key {key:?}")))?;
                by_degree.insert(deg, list.clone());
            }
            rows.push(by_degree);
        }
        complex.with_summands(Decomposition { names, rows })
    }
}
