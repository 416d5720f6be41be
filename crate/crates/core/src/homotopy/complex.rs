use std::collections::BTreeMap;
use std::sync::Arc;

use super::module::{ProjMap, ProjModule};
use crate::quivalg::{AlgebraElement, FDAlgebra};
use crate::{Error, Result};

/// Bounded complex of projective modules with homological differentials
/// `d_i : X_i -> X_{i-1}` satisfying `d o d = 0`, optionally carrying a
/// named direct-sum decomposition into subcomplexes.
#[derive(Clone, Debug)]
pub struct BoundedComplex {
    algebra: Arc<FDAlgebra>,
    min_deg: i64,
    modules: Vec<ProjModule>,
    diffs: Vec<ProjMap>,
    summands: Option<Decomposition>,
}

/// Named degreewise partition of the summand rows; the differential must be
/// block diagonal with respect to it.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub names: Vec<String>,
    /// For each summand, the selected rows per degree.
    pub rows: Vec<BTreeMap<i64, Vec<usize>>>,
}

impl BoundedComplex {
    /// `modules[k]` sits in degree `min_deg + k`; `diffs[k]` maps
    /// `modules[k+1]` into `modules[k]`.
    pub fn new(
        algebra: Arc<FDAlgebra>,
        min_deg: i64,
        modules: Vec<ProjModule>,
        diffs: Vec<ProjMap>,
    ) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::Invalid("a complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != modules.len() {
            return Err(Error::Invalid("one differential per adjacent pair required".into()));
        }
        for m in &modules {
            if m.algebra().id() != algebra.id() {
                return Err(Error::AlgebraMismatch);
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source().vertices() != modules[k + 1].vertices()
                || d.target().vertices() != modules[k].vertices()
            {
                return Err(Error::Invalid(format!(
                    "differential {k} does not match its adjacent modules"
                )));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            let dd = diffs[k].compose(&diffs[k + 1])?;
            if !dd.is_zero() {
                return Err(Error::Invalid("d o d is nonzero".into()));
            }
        }
        Ok(Self { algebra, min_deg, modules, diffs, summands: None })
    }

    pub fn with_summands(mut self, dec: Decomposition) -> Result<Self> {
        // per degree the named rows must partition the module
        for (k, module) in self.modules.iter().enumerate() {
            let deg = self.min_deg + k as i64;
            let mut seen = vec![false; module.rank()];
            for rows in &dec.rows {
                for &r in rows.get(&deg).map(Vec::as_slice).unwrap_or(&[]) {
                    if r >= module.rank() || seen[r] {
                        return Err(Error::Invalid(format!(
                            "rows at degree {deg} do not partition the module"
                        )));
                    }
                    seen[r] = true;
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::Invalid(format!(
                    "rows at degree {deg} do not cover the module"
                )));
            }
        }
        // block diagonality of the differential
        for (k, d) in self.diffs.iter().enumerate() {
            let src_deg = self.min_deg + k as i64 + 1;
            let tgt_deg = src_deg - 1;
            let owner = |deg: i64, row: usize| -> usize {
                dec.rows
                    .iter()
                    .position(|rows| {
                        rows.get(&deg).map(|v| v.contains(&row)).unwrap_or(false)
                    })
                    .expect("partition checked above")
            };
            for (t, row) in d.entries().iter().enumerate() {
                for (s, e) in row.iter().enumerate() {
                    if !self.algebra.is_zero_element(e)
                        && owner(tgt_deg, t) != owner(src_deg, s)
                    {
                        return Err(Error::Invalid(
                            "differential is not block diagonal for the decomposition".into(),
                        ));
                    }
                }
            }
        }
        self.summands = Some(dec);
        Ok(self)
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.algebra
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn max_deg(&self) -> i64 {
        self.min_deg + self.modules.len() as i64 - 1
    }

    pub fn summands(&self) -> Option<&Decomposition> {
        self.summands.as_ref()
    }

    /// Module in a degree; zero outside the stored range.
    pub fn module_at(&self, deg: i64) -> ProjModule {
        if deg < self.min_deg || deg > self.max_deg() {
            return ProjModule::zero(self.algebra.clone());
        }
        self.modules[(deg - self.min_deg) as usize].clone()
    }

    /// Differential `X_deg -> X_{deg-1}`, `None` when either side is out of
    /// range.
    pub fn diff_at(&self, deg: i64) -> Option<&ProjMap> {
        if deg <= self.min_deg || deg > self.max_deg() {
            return None;
        }
        Some(&self.diffs[(deg - self.min_deg - 1) as usize])
    }

    /// Suspension-style shift: the degree-`i` part of `self.shift(s)` is the
    /// degree-`i - s` part of `self`; differentials are negated when `s` is
    /// odd.
    pub fn shift(&self, s: i64) -> BoundedComplex {
        let diffs = if s.rem_euclid(2) == 1 {
            self.diffs.iter().map(ProjMap::negate).collect()
        } else {
            self.diffs.clone()
        };
        BoundedComplex {
            algebra: self.algebra.clone(),
            min_deg: self.min_deg + s,
            modules: self.modules.clone(),
            diffs,
            summands: self.summands.clone(),
        }
    }

    /// Degrees where the complex is nonzero.
    pub fn support(&self) -> Vec<i64> {
        (self.min_deg..=self.max_deg())
            .filter(|&d| !self.module_at(d).is_zero())
            .collect()
    }

    pub fn summand_names(&self) -> Vec<String> {
        self.summands.as_ref().map(|d| d.names.clone()).unwrap_or_default()
    }

    /// Extracts one named summand as a standalone complex (degree range is
    /// kept, absent rows give zero modules).
    pub fn summand_subcomplex(&self, name: &str) -> Result<BoundedComplex> {
        let dec = self
            .summands
            .as_ref()
            .ok_or_else(|| Error::Invalid("complex has no declared decomposition".into()))?;
        let idx = dec
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Invalid(format!("no summand named {name:?}")))?;
        let empty: Vec<usize> = Vec::new();
        let rows_at = |deg: i64| -> Vec<usize> {
            dec.rows[idx].get(&deg).cloned().unwrap_or_else(|| empty.clone())
        };
        let modules: Vec<ProjModule> = (self.min_deg..=self.max_deg())
            .map(|deg| self.module_at(deg).select(&rows_at(deg)))
            .collect();
        let diffs: Vec<ProjMap> = (self.min_deg + 1..=self.max_deg())
            .map(|deg| {
                self.diff_at(deg)
                    .expect("in range")
                    .select(&rows_at(deg - 1), &rows_at(deg))
            })
            .collect();
        BoundedComplex::new(self.algebra.clone(), self.min_deg, modules, diffs)
    }

    /// The complex with every summand subcomplex listed separately.
    pub fn summand_complexes(&self) -> Result<Vec<(String, BoundedComplex)>> {
        self.summand_names()
            .iter()
            .map(|n| Ok((n.clone(), self.summand_subcomplex(n)?)))
            .collect()
    }

    /// Stalk complex of one projective in degree 0.
    pub fn stalk(algebra: Arc<FDAlgebra>, vertex: usize) -> Result<BoundedComplex> {
        let module = ProjModule::new(algebra.clone(), vec![vertex])?;
        BoundedComplex::new(algebra, 0, vec![module], vec![])
    }
}

/// Degreewise components of a chain map candidate: for a map of shift `s`
/// the component at degree `i` is the matrix of a map `X_i -> Y_{i-s}`.
#[derive(Clone, Debug)]
pub struct ChainTuple {
    components: BTreeMap<i64, Vec<Vec<AlgebraElement>>>,
}

impl ChainTuple {
    pub fn from_components(components: BTreeMap<i64, Vec<Vec<AlgebraElement>>>) -> Self {
        Self { components }
    }

    pub fn empty() -> Self {
        Self { components: BTreeMap::new() }
    }

    pub fn component(&self, deg: i64) -> Option<&Vec<Vec<AlgebraElement>>> {
        self.components.get(&deg)
    }

    pub fn components(&self) -> &BTreeMap<i64, Vec<Vec<AlgebraElement>>> {
        &self.components
    }

    pub fn insert(&mut self, deg: i64, matrix: Vec<Vec<AlgebraElement>>) {
        self.components.insert(deg, matrix);
    }
}
