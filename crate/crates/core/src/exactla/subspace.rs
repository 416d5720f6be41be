use num::Zero;

use super::{Rat, RationalMatrix};
use crate::{Error, Result};

/// Subspace of a fixed coordinate space, stored as a reduced-echelon basis.
/// Pivot columns are strictly increasing, so equality of subspaces is
/// equality of the stored bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![Rat::zero(); ambient];
                v[i] = num::One::one();
                v
            })
            .collect();
        Self::from_rows(ambient, rows)
    }

    /// Normalizes any spanning set into reduced echelon form.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Rat>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ambient), "bad row length");
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let (red, pivots) = RationalMatrix::from_rows(rows).rref();
        let basis = (0..pivots.len()).map(|r| red.row(r).to_vec()).collect();
        Self { ambient, basis, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating along the basis; zero iff contained.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *o -= &f * b;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Rat::is_zero)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::from_rows(self.ambient, rows)
    }
}

/// Linear map assigning to each vector of `ambient` the coordinates of its
/// class in `ambient / sub`, as a `(dim ambient - dim sub) x N` matrix.
///
/// The coordinates are taken with respect to the representatives returned by
/// [`quotient_representatives`]; applying the map to one of those
/// representatives yields a standard basis vector.
pub fn quotient_coordinates(ambient: &Subspace, sub: &Subspace) -> Result<RationalMatrix> {
    let (_, map) = quotient_with_representatives(ambient, sub)?;
    Ok(map)
}

/// Representatives completing `sub` to `ambient`, lifted to ambient
/// coordinates. Their classes form a basis of the quotient.
pub fn quotient_representatives(ambient: &Subspace, sub: &Subspace) -> Result<Vec<Vec<Rat>>> {
    let (reps, _) = quotient_with_representatives(ambient, sub)?;
    Ok(reps)
}

pub fn quotient_with_representatives(
    ambient: &Subspace,
    sub: &Subspace,
) -> Result<(Vec<Vec<Rat>>, RationalMatrix)> {
    if ambient.ambient_dim() != sub.ambient_dim() || !ambient.contains_subspace(sub) {
        return Err(Error::SubspaceNotContained);
    }
    let n = ambient.ambient_dim();

    // Columns: basis of sub, then greedy completion by ambient basis vectors,
    // then standard vectors to fill out the whole space.
    let mut cols: Vec<Vec<Rat>> = sub.basis().to_vec();
    let mut span = sub.clone();
    let mut reps = Vec::new();
    for v in ambient.basis() {
        if !span.contains(v) {
            span = span.sum(&Subspace::from_rows(n, vec![v.clone()]));
            cols.push(v.clone());
            reps.push(v.clone());
        }
    }
    let q = reps.len();
    for i in 0..n {
        if span.dim() == n {
            break;
        }
        let mut e = vec![Rat::zero(); n];
        e[i] = num::One::one();
        if !span.contains(&e) {
            span = span.sum(&Subspace::from_rows(n, vec![e.clone()]));
            cols.push(e);
        }
    }
    debug_assert_eq!(cols.len(), n);

    // Invert the column matrix and keep the rows matching the representatives.
    let mat = RationalMatrix::from_rows(cols).transpose();
    let inv = invert(&mat);
    let mut rows = Vec::with_capacity(q);
    for r in sub.dim()..sub.dim() + q {
        rows.push(inv.row(r).to_vec());
    }
    let map = if q == 0 {
        RationalMatrix::zero(0, n)
    } else {
        RationalMatrix::from_rows(rows)
    };
    Ok((reps, map))
}

fn invert(m: &RationalMatrix) -> RationalMatrix {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut aug = RationalMatrix::zero(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            *aug.at_mut(r, c) = m.at(r, c).clone();
        }
        *aug.at_mut(r, n + r) = num::One::one();
    }
    let (red, pivots) = aug.rref();
    assert_eq!(pivots.len(), n, "matrix is singular");
    let mut inv = RationalMatrix::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            *inv.at_mut(r, c) = red.at(r, n + c).clone();
        }
    }
    inv
}
