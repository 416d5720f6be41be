use std::collections::BTreeMap;

use num::Zero;

use super::algebra::{AlgebraElement, FDAlgebra};
use super::quiver::{Quiver, Relation};
use crate::exactla::{Rat, Subspace};
use crate::{Error, Result};

/// Certifies an isomorphism between a presented candidate `kQ/I` and an
/// algebra `e` from an explicit assignment of vertices and arrows.
///
/// `vertex_map` must be a bijection from candidate vertex labels to vertex
/// labels of `e`; the image of an arrow `a: u -> v` must lie in the graded
/// component of `e` housing the maps from `vertex_map(u)` to
/// `vertex_map(v)`. The verdict is true iff (1) every candidate relation
/// evaluates to zero under the induced map, (2) the arrow images together
/// with the idempotents generate `e`, and (3) `kQ/I` has the same dimension
/// as `e`. The conjunction certifies an isomorphism.
pub fn verify_presentation(
    e: &FDAlgebra,
    cand_quiver: &Quiver,
    cand_rels: &[Relation],
    vertex_map: &BTreeMap<String, String>,
    arrow_map: &BTreeMap<String, AlgebraElement>,
    max_len: usize,
) -> Result<bool> {
    // vertex bijection
    if vertex_map.len() != cand_quiver.vertex_count()
        || e.vertex_count() != cand_quiver.vertex_count()
    {
        return Err(Error::Invalid("vertex map must be a bijection onto e's vertices".into()));
    }
    let mut vmap = vec![usize::MAX; cand_quiver.vertex_count()];
    let mut hit = vec![false; e.vertex_count()];
    for (cv, ev) in vertex_map {
        let ci = cand_quiver.vertex(cv)?;
        let ei = e.vertex(ev)?;
        if hit[ei] {
            return Err(Error::Invalid(format!("vertex {ev:?} hit twice")));
        }
        hit[ei] = true;
        vmap[ci] = ei;
    }
    if vmap.contains(&usize::MAX) {
        return Err(Error::Invalid("vertex map misses a candidate vertex".into()));
    }

    // arrow images, graded compatibly with the arrow
    let mut images = Vec::with_capacity(cand_quiver.arrows().len());
    for arrow in cand_quiver.arrows() {
        let img = arrow_map
            .get(&arrow.id)
            .ok_or_else(|| Error::Invalid(format!("arrow {:?} has no image", arrow.id)))?;
        e.check_element(img)?;
        if !e.is_zero_element(img) {
            let (s, t) = e
                .element_grading(img)
                .ok_or_else(|| Error::Invalid(format!("image of {:?} is not graded", arrow.id)))?;
            if s != vmap[arrow.src] || t != vmap[arrow.tgt] {
                return Err(Error::Invalid(format!(
                    "image of {:?} lies in the wrong graded component",
                    arrow.id
                )));
            }
        }
        images.push(img.clone());
    }

    let eval_path = |p: &super::quiver::Path| -> AlgebraElement {
        let mut acc = e.idempotent_element(vmap[p.source()]);
        for &a in p.arrow_indices() {
            acc = e.mul(&acc, &images[a]);
        }
        acc
    };

    // (1) relations vanish
    for r in cand_rels {
        let mut acc = e.zero_element();
        for (c, p) in r.terms() {
            let img = eval_path(p);
            acc = e.add_scaled(&acc, &img, c);
        }
        if !e.is_zero_element(&acc) {
            return Ok(false);
        }
    }

    // (2) idempotents and arrow images generate e
    let mut gens: Vec<Vec<Rat>> = (0..e.vertex_count())
        .map(|v| e.idempotent_element(v).coeffs)
        .collect();
    gens.extend(images.iter().map(|i| i.coeffs.clone()));
    let mut span = Subspace::from_rows(e.dim(), gens);
    loop {
        let mut grown = false;
        let mut new_rows = Vec::new();
        for x in span.basis() {
            for y in span.basis() {
                let p = e.mul(
                    &AlgebraElement { algebra_id: e.id(), coeffs: x.clone() },
                    &AlgebraElement { algebra_id: e.id(), coeffs: y.clone() },
                );
                if !e.is_zero_element(&p) && !span.contains(&p.coeffs) {
                    new_rows.push(p.coeffs);
                    grown = true;
                }
            }
        }
        if !grown {
            break;
        }
        let mut rows = span.basis().to_vec();
        rows.extend(new_rows);
        span = Subspace::from_rows(e.dim(), rows);
    }
    if span.dim() != e.dim() {
        return Ok(false);
    }

    // (3) the candidate itself has the right dimension
    let cand = FDAlgebra::construct(cand_quiver.clone(), cand_rels.to_vec(), max_len)?;
    Ok(cand.dim() == e.dim())
}

/// Recovers a quiver-with-relations presentation of a basic algebra: the
/// Gabriel quiver with chosen arrow representatives, and a generating set of
/// relations read off as the kernel of the path evaluation map up to the
/// radical vanishing length.
pub fn extract_presentation(a: &FDAlgebra) -> Result<(Quiver, Vec<Relation>)> {
    let quiver = a.recover_quiver()?;
    let rad = a.radical();
    let rad2 = a.subspace_product(&rad, &rad);
    let nilpotency = a.radical_layers().len();

    // arrow representatives: complete the (u, v)-piece of J^2 to the piece
    // of J; the added vectors are the arrow images, in the recover_quiver
    // arrow order
    let n = a.vertex_count();
    let mut reps: Vec<AlgebraElement> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let piece = |s: &Subspace| -> Vec<Vec<Rat>> {
                s.basis()
                    .iter()
                    .map(|vec| {
                        let mut g = vec![Rat::zero(); a.dim()];
                        for (i, c) in vec.iter().enumerate() {
                            if !c.is_zero() && a.basis()[i].src == u && a.basis()[i].tgt == v {
                                g[i] = c.clone();
                            }
                        }
                        g
                    })
                    .collect()
            };
            let jp = Subspace::from_rows(a.dim(), piece(&rad));
            let j2p = Subspace::from_rows(a.dim(), piece(&rad2));
            let chosen = crate::exactla::quotient_representatives(&jp, &j2p)
                .expect("J^2 piece sits inside the J piece");
            reps.extend(chosen.into_iter().map(|coeffs| AlgebraElement {
                algebra_id: a.id(),
                coeffs,
            }));
        }
    }
    debug_assert_eq!(reps.len(), quiver.arrows().len());

    // kernel of path evaluation, graded pair by graded pair
    let mut relations = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let mut paths = Vec::new();
            collect_paths(&quiver, u, v, nilpotency, &mut paths);
            if paths.is_empty() {
                continue;
            }
            let evals: Vec<Vec<Rat>> = paths
                .iter()
                .map(|p| {
                    let mut acc = a.idempotent_element(u);
                    for &ai in p.arrow_indices() {
                        acc = a.mul(&acc, &reps[ai]);
                    }
                    acc.coeffs
                })
                .collect();
            // kernel of the matrix whose columns are the evaluations
            let m = crate::exactla::RationalMatrix::from_rows(evals).transpose();
            let kernel = m.kernel();
            for k in kernel.basis() {
                let terms: Vec<(Rat, super::quiver::Path)> = k
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (c.clone(), paths[i].clone()))
                    .collect();
                relations.push(Relation::new(terms, &quiver)?);
            }
        }
    }
    Ok((quiver, relations))
}

fn collect_paths(
    quiver: &Quiver,
    u: usize,
    v: usize,
    max_len: usize,
    out: &mut Vec<super::quiver::Path>,
) {
    let mut frontier = vec![quiver.trivial_path(u)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            let at = p.target(quiver);
            for (ai, arrow) in quiver.arrows().iter().enumerate() {
                if arrow.src == at {
                    let mut arrows = p.arrow_indices().to_vec();
                    arrows.push(ai);
                    next.push(quiver.path_from_indices(p.source(), arrows).unwrap());
                }
            }
        }
        out.extend(next.iter().filter(|p| p.target(quiver) == v && p.len() >= 2).cloned());
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
}
