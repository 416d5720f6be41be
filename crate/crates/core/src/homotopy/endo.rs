use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use super::complex::{BoundedComplex, ChainTuple};
use super::hom::{
    compose_tuples, homotopy_hom, homotopy_hom_with_preferred, HomotopyClass, HomotopySpace,
};
use crate::exactla::{Rat, Subspace};
use crate::quivalg::{
    radical_dim_of_table, radical_subspace_of_table, AlgebraElement, BasisElem, BasisLabel,
    FDAlgebra, SparseVec,
};
use crate::{Error, Result};

/// Shift-0 endomorphism table of a complex over the homotopy classes, with
/// multiplication in left-to-right composition order.
fn end_table(x: &BoundedComplex) -> Result<(HomotopySpace, Vec<Vec<SparseVec>>)> {
    let space = homotopy_hom(x, x, 0)?;
    let d = space.dim();
    let reps: Vec<ChainTuple> = (0..d).map(|k| space.representative(k)).collect();
    let mut table = vec![vec![SparseVec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            // product "i then j" is the composite with i applied first
            let composite = compose_tuples(x, x, x, 0, 0, &reps[i], &reps[j])?;
            let coords = space.class_coords(&composite)?;
            table[i][j] = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
    }
    Ok((space, table))
}

/// A complex is indecomposable iff its homotopy endomorphism ring is local,
/// tested as `dim End / rad End = 1`.
pub fn is_indecomposable(x: &BoundedComplex) -> Result<bool> {
    let (space, table) = end_table(x)?;
    if space.dim() == 0 {
        return Ok(false);
    }
    Ok(space.dim() - radical_dim_of_table(&table) == 1)
}

/// Pairwise non-isomorphism of indecomposable complexes: `X` and `Y` are
/// isomorphic iff the span of the composites `g . f` with `f: X -> Y` and
/// `g: Y -> X` is not contained in the radical of `End(X)`.
pub fn summands_pairwise_noniso(xs: &[BoundedComplex]) -> Result<bool> {
    for (i, x) in xs.iter().enumerate() {
        if !is_indecomposable(x)? {
            return Err(Error::NotIndecomposable(format!("summand {i}")));
        }
    }
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if complexes_isomorphic(&xs[i], &xs[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn complexes_isomorphic(x: &BoundedComplex, y: &BoundedComplex) -> Result<bool> {
    let (end_space, end_tab) = end_table(x)?;
    let rad = radical_subspace_of_table(&end_tab);
    let fwd = homotopy_hom(x, y, 0)?;
    let bwd = homotopy_hom(y, x, 0)?;
    if fwd.dim() == 0 || bwd.dim() == 0 {
        return Ok(false);
    }
    let mut span_rows = Vec::new();
    for a in 0..fwd.dim() {
        let f = fwd.representative(a);
        for b in 0..bwd.dim() {
            let g = bwd.representative(b);
            let comp = compose_tuples(x, y, x, 0, 0, &f, &g)?;
            span_rows.push(end_space.class_coords(&comp)?);
        }
    }
    let span = Subspace::from_rows(end_space.dim(), span_rows);
    Ok(!rad.contains_subspace(&span))
}

/// Homotopy endomorphism algebra of a complex with a declared summand
/// decomposition, packaged as a basic algebra whose vertices are the
/// summands. The graded piece from summand `s` to summand `t` is
/// `Hom(X_s, X_t)` in the homotopy category, multiplication composes left
/// to right, and each vertex idempotent is the identity class of its
/// summand.
pub fn endomorphism_algebra(x: &BoundedComplex) -> Result<(FDAlgebra, EndContext)> {
    let subs = x.summand_complexes()?;
    if subs.is_empty() {
        return Err(Error::Invalid("complex has no declared decomposition".into()));
    }
    for (name, sub) in &subs {
        if !is_indecomposable(sub)? {
            return Err(Error::NotBasicDecomposition(format!(
                "summand {name:?} is not indecomposable"
            )));
        }
    }
    let complexes: Vec<BoundedComplex> = subs.iter().map(|(_, c)| c.clone()).collect();
    if !summands_pairwise_noniso(&complexes)? {
        return Err(Error::NotBasicDecomposition(
            "two summands are isomorphic".into(),
        ));
    }

    let k = subs.len();
    let mut pieces: BTreeMap<(usize, usize), HomotopySpace> = BTreeMap::new();
    for s in 0..k {
        for t in 0..k {
            let space = if s == t {
                let id = HomotopyClass::identity(&subs[s].1);
                let (chain, layout) = super::hom::chain_maps(&subs[s].1, &subs[s].1, 0)?;
                let coords = layout.tuple_to_coords(id.tuple())?;
                debug_assert!(chain.contains(&coords));
                homotopy_hom_with_preferred(&subs[s].1, &subs[t].1, 0, &[coords])?
            } else {
                homotopy_hom(&subs[s].1, &subs[t].1, 0)?
            };
            pieces.insert((s, t), space);
        }
    }

    // basis and offsets
    let mut offsets: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut basis: Vec<BasisElem> = Vec::new();
    let mut idempotent = vec![usize::MAX; k];
    for s in 0..k {
        for t in 0..k {
            offsets.insert((s, t), basis.len());
            let space = &pieces[&(s, t)];
            for r in 0..space.dim() {
                if s == t && r == 0 {
                    idempotent[s] = basis.len();
                }
                basis.push(BasisElem {
                    src: s,
                    tgt: t,
                    label: BasisLabel::Named(format!("{}:{}:{}", subs[s].0, subs[t].0, r)),
                });
            }
        }
    }
    for (s, &idx) in idempotent.iter().enumerate() {
        if idx == usize::MAX {
            return Err(Error::NotBasicDecomposition(format!(
                "summand {:?} has a vanishing identity class",
                subs[s].0
            )));
        }
        // the preferred representative really is the identity class
        let id = HomotopyClass::identity(&subs[s].1);
        let coords = pieces[&(s, s)].class_coords(id.tuple())?;
        let expected: Vec<Rat> = (0..pieces[&(s, s)].dim())
            .map(|r| if r == 0 { num::One::one() } else { Rat::zero() })
            .collect();
        if coords != expected {
            return Err(Error::Invalid("identity class is not the leading representative".into()));
        }
    }

    // multiplication table via representative composition
    let dim = basis.len();
    let mut table = vec![vec![SparseVec::new(); dim]; dim];
    for s in 0..k {
        for t in 0..k {
            let bs = &pieces[&(s, t)];
            for i in 0..bs.dim() {
                let bi = bs.representative(i);
                for r in 0..k {
                    let cs = &pieces[&(t, r)];
                    for j in 0..cs.dim() {
                        let cj = cs.representative(j);
                        // "bi then cj": apply bi first
                        let composite =
                            compose_tuples(&subs[s].1, &subs[t].1, &subs[r].1, 0, 0, &bi, &cj)?;
                        let coords = pieces[&(s, r)].class_coords(&composite)?;
                        let row = offsets[&(s, t)] + i;
                        let col = offsets[&(t, r)] + j;
                        table[row][col] = coords
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(kk, c)| (offsets[&(s, r)] + kk, c))
                            .collect();
                    }
                }
            }
        }
    }

    let names: Vec<String> = subs.iter().map(|(n, _)| n.clone()).collect();
    let algebra = FDAlgebra::from_table(names, basis, idempotent, table)?;
    let ctx = EndContext { summands: subs, pieces, offsets, end_dim: dim };
    Ok((algebra, ctx))
}

/// Bookkeeping for converting explicit chain maps between summands into
/// elements of the endomorphism algebra.
pub struct EndContext {
    summands: Vec<(String, BoundedComplex)>,
    pieces: BTreeMap<(usize, usize), HomotopySpace>,
    offsets: BTreeMap<(usize, usize), usize>,
    end_dim: usize,
}

impl EndContext {
    pub fn summand_index(&self, name: &str) -> Result<usize> {
        self.summands
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| Error::Invalid(format!("no summand named {name:?}")))
    }

    pub fn summand_complex(&self, name: &str) -> Result<&BoundedComplex> {
        Ok(&self.summands[self.summand_index(name)?].1)
    }

    pub fn piece(&self, s: usize, t: usize) -> &HomotopySpace {
        &self.pieces[&(s, t)]
    }

    /// Element of the endomorphism algebra represented by a chain map from
    /// summand `src` to summand `tgt`.
    pub fn class_to_element(
        &self,
        algebra: &FDAlgebra,
        src: &str,
        tgt: &str,
        tuple: &ChainTuple,
    ) -> Result<AlgebraElement> {
        let s = self.summand_index(src)?;
        let t = self.summand_index(tgt)?;
        let coords = self.pieces[&(s, t)].class_coords(tuple)?;
        let mut e = algebra.zero_element();
        if algebra.dim() != self.end_dim {
            return Err(Error::AlgebraMismatch);
        }
        for (k, c) in coords.into_iter().enumerate() {
            e.coeffs[self.offsets[&(s, t)] + k] = c;
        }
        Ok(e)
    }
}

/// Per-condition report of the two-term tilting certificate.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TiltingReport {
    /// `Hom(x, x[1]) = 0`.
    pub presilting: bool,
    /// `Hom(x, x[-1]) = 0`.
    pub no_negative: bool,
    /// The declared summands are indecomposable, pairwise non-isomorphic
    /// and as many as the algebra has vertices.
    pub summand_count_ok: bool,
    pub tilting: bool,
}

/// Tilting certificate for a complex concentrated in degrees 0 and 1. The
/// generation condition is certified through the summand-count criterion
/// for two-term presilting complexes.
pub fn two_term_tilting_check(x: &BoundedComplex) -> Result<TiltingReport> {
    if x.support().iter().any(|&d| d != 0 && d != 1) {
        return Err(Error::NotTwoTerm);
    }
    let presilting = homotopy_hom(x, x, 1)?.dim() == 0;
    let no_negative = homotopy_hom(x, x, -1)?.dim() == 0;

    let summand_count_ok = match x.summands() {
        None => false,
        Some(_) => {
            let subs = x.summand_complexes()?;
            let complexes: Vec<BoundedComplex> =
                subs.iter().map(|(_, c)| c.clone()).collect();
            let mut all_indecomposable = true;
            for c in &complexes {
                if !is_indecomposable(c)? {
                    all_indecomposable = false;
                    break;
                }
            }
            if !all_indecomposable {
                false
            } else {
                // count distinct isomorphism classes
                let mut classes: Vec<usize> = Vec::new();
                let mut reps: Vec<&BoundedComplex> = Vec::new();
                for c in &complexes {
                    let mut found = None;
                    for (ci, r) in reps.iter().enumerate() {
                        if complexes_isomorphic(c, r)? {
                            found = Some(ci);
                            break;
                        }
                    }
                    match found {
                        Some(ci) => classes.push(ci),
                        None => {
                            reps.push(c);
                            classes.push(reps.len() - 1);
                        }
                    }
                }
                reps.len() == x.algebra().vertex_count()
            }
        }
    };

    Ok(TiltingReport {
        presilting,
        no_negative,
        summand_count_ok,
        tilting: presilting && no_negative && summand_count_ok,
    })
}
