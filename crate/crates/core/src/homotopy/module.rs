use std::sync::Arc;

use crate::quivalg::{AlgebraElement, FDAlgebra};
use crate::{Error, Result};

/// Finite direct sum of indecomposable projectives `e_v A`; the empty list
/// is the zero module.
#[derive(Clone, Debug)]
pub struct ProjModule {
    algebra: Arc<FDAlgebra>,
    vertices: Vec<usize>,
}

impl ProjModule {
    pub fn new(algebra: Arc<FDAlgebra>, vertices: Vec<usize>) -> Result<Self> {
        for &v in &vertices {
            if v >= algebra.vertex_count() {
                return Err(Error::UnknownVertex(format!("vertex index {v}")));
            }
        }
        Ok(Self { algebra, vertices })
    }

    pub fn zero(algebra: Arc<FDAlgebra>) -> Self {
        Self { algebra, vertices: Vec::new() }
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.algebra
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn same_algebra(&self, other: &ProjModule) -> bool {
        self.algebra.id() == other.algebra.id()
    }

    /// Restriction to a subset of the summand rows.
    pub fn select(&self, rows: &[usize]) -> ProjModule {
        ProjModule {
            algebra: self.algebra.clone(),
            vertices: rows.iter().map(|&r| self.vertices[r]).collect(),
        }
    }
}

/// Map between direct sums of projectives. The `(t, s)` entry is the
/// component `P(u_s) -> P(v_t)` and is an algebra element of the graded
/// piece from `v_t` to `u_s`, acting by left multiplication.
#[derive(Clone, Debug)]
pub struct ProjMap {
    source: ProjModule,
    target: ProjModule,
    entries: Vec<Vec<AlgebraElement>>,
}

impl ProjMap {
    pub fn new(
        source: ProjModule,
        target: ProjModule,
        entries: Vec<Vec<AlgebraElement>>,
    ) -> Result<Self> {
        if !source.same_algebra(&target) {
            return Err(Error::AlgebraMismatch);
        }
        let alg = source.algebra();
        if entries.len() != target.rank()
            || entries.iter().any(|row| row.len() != source.rank())
        {
            return Err(Error::Invalid("entry matrix shape mismatch".into()));
        }
        for (t, row) in entries.iter().enumerate() {
            for (s, e) in row.iter().enumerate() {
                alg.check_element(e)?;
                if alg.is_zero_element(e) {
                    continue;
                }
                match alg.element_grading(e) {
                    Some((src, tgt))
                        if src == target.vertices()[t] && tgt == source.vertices()[s] => {}
                    _ => {
                        return Err(Error::Invalid(format!(
                            "entry ({t}, {s}) lies outside its graded component"
                        )))
                    }
                }
            }
        }
        Ok(Self { source, target, entries })
    }

    pub fn zero(source: ProjModule, target: ProjModule) -> Result<Self> {
        let alg = source.algebra().clone();
        let entries = vec![vec![alg.zero_element(); source.rank()]; target.rank()];
        Self::new(source, target, entries)
    }

    pub fn identity(module: &ProjModule) -> Self {
        let alg = module.algebra();
        let entries = (0..module.rank())
            .map(|t| {
                (0..module.rank())
                    .map(|s| {
                        if t == s {
                            alg.idempotent_element(module.vertices()[t])
                        } else {
                            alg.zero_element()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { source: module.clone(), target: module.clone(), entries }
    }

    pub fn source(&self) -> &ProjModule {
        &self.source
    }

    pub fn target(&self) -> &ProjModule {
        &self.target
    }

    pub fn entries(&self) -> &Vec<Vec<AlgebraElement>> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        let alg = self.source.algebra();
        self.entries.iter().flatten().all(|e| alg.is_zero_element(e))
    }

    /// Composite `self` after `first` (apply `first`, then `self`).
    pub fn compose(&self, first: &ProjMap) -> Result<ProjMap> {
        if !self.source.same_algebra(first.target())
            || self.source.vertices() != first.target().vertices()
        {
            return Err(Error::ComplexMismatch("composition shape mismatch".into()));
        }
        let alg = self.source.algebra().clone();
        let mut entries =
            vec![vec![alg.zero_element(); first.source().rank()]; self.target.rank()];
        for t in 0..self.target.rank() {
            for s in 0..first.source().rank() {
                let mut acc = alg.zero_element();
                for m in 0..self.source.rank() {
                    let prod = alg.mul(&self.entries[t][m], &first.entries()[m][s]);
                    acc = alg.add_scaled(&acc, &prod, &num::One::one());
                }
                entries[t][s] = acc;
            }
        }
        ProjMap::new(first.source().clone(), self.target.clone(), entries)
    }

    pub fn add(&self, other: &ProjMap) -> Result<ProjMap> {
        if self.source.vertices() != other.source.vertices()
            || self.target.vertices() != other.target.vertices()
        {
            return Err(Error::ComplexMismatch("sum shape mismatch".into()));
        }
        let alg = self.source.algebra().clone();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(ra, rb)| {
                ra.iter()
                    .zip(rb)
                    .map(|(a, b)| alg.add_scaled(a, b, &num::One::one()))
                    .collect()
            })
            .collect();
        ProjMap::new(self.source.clone(), self.target.clone(), entries)
    }

    pub fn negate(&self) -> ProjMap {
        let alg = self.source.algebra().clone();
        let minus_one = -crate::exactla::rat(1);
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| alg.scale(e, &minus_one)).collect())
            .collect();
        ProjMap { source: self.source.clone(), target: self.target.clone(), entries }
    }

    /// Submatrix selecting rows of the target and columns of the source.
    pub fn select(&self, target_rows: &[usize], source_cols: &[usize]) -> ProjMap {
        let entries = target_rows
            .iter()
            .map(|&t| source_cols.iter().map(|&s| self.entries[t][s].clone()).collect())
            .collect();
        ProjMap {
            source: self.source.select(source_cols),
            target: self.target.select(target_rows),
            entries,
        }
    }
}
