use num::One;

use super::iqp::IceQuiverWithPotential;
use crate::exactla::Rat;
use crate::quivalg::{FDAlgebra, Path, Quiver, Relation};
use crate::{Error, Result};

/// Cyclic derivative of the potential with respect to one arrow: for every
/// occurrence of the arrow in a cyclic term, the cycle is rotated to start
/// right after that occurrence and the arrow is deleted. Returns `None`
/// when the arrow does not occur.
pub fn cyclic_derivative(iqp: &IceQuiverWithPotential, arrow: usize) -> Option<Relation> {
    let q = &iqp.quiver;
    let mut terms: Vec<(Rat, Path)> = Vec::new();
    for (sign, cycle) in &iqp.potential {
        let arrows = cycle.arrow_indices();
        for (pos, &a) in arrows.iter().enumerate() {
            if a != arrow {
                continue;
            }
            let rotated: Vec<usize> = arrows[pos + 1..]
                .iter()
                .chain(&arrows[..pos])
                .copied()
                .collect();
            let start = q.arrows()[arrow].tgt;
            let path = q
                .path_from_indices(start, rotated)
                .expect("rotation of a cycle stays composable");
            let coeff = if *sign == 1 { Rat::one() } else { -Rat::one() };
            terms.push((coeff, path));
        }
    }
    if terms.is_empty() {
        return None;
    }
    // combine repeated paths, dropping cancellations
    let mut combined: Vec<(Rat, Path)> = Vec::new();
    for (c, p) in terms {
        match combined.iter_mut().find(|(_, q)| *q == p) {
            Some((acc, _)) => *acc += c,
            None => combined.push((c, p)),
        }
    }
    combined.retain(|(c, _)| !num::Zero::is_zero(c));
    if combined.is_empty() {
        return None;
    }
    Some(Relation::new(combined, q).expect("derivative terms are parallel"))
}

/// Frozen Jacobian quotient: restrict to the full subquiver on the mutable
/// vertices, take cyclic derivatives with respect to every arrow having at
/// least one mutable endpoint, delete monomials passing through a frozen
/// vertex, and build the finite-dimensional quotient.
///
/// Returns the algebra together with the mutable-vertex labels in order.
pub fn frozen_jacobian_quotient(
    iqp: &IceQuiverWithPotential,
    max_len: usize,
) -> Result<(FDAlgebra, Vec<String>)> {
    let q = &iqp.quiver;
    let mutable = iqp.mutable_vertices();
    if mutable.is_empty() {
        return Err(Error::InvalidQuiver(
            "all vertices are frozen; the quotient has no vertices".into(),
        ));
    }
    let labels: Vec<String> = mutable.iter().map(|&v| q.vertex_label(v).to_string()).collect();

    // full subquiver on the mutable vertices
    let kept_arrows: Vec<usize> = (0..q.arrows().len())
        .filter(|&a| {
            let arr = &q.arrows()[a];
            !iqp.frozen.contains(&arr.src) && !iqp.frozen.contains(&arr.tgt)
        })
        .collect();
    let sub = Quiver::new(
        labels.clone(),
        kept_arrows
            .iter()
            .map(|&a| {
                let arr = &q.arrows()[a];
                (
                    arr.id.clone(),
                    q.vertex_label(arr.src).to_string(),
                    q.vertex_label(arr.tgt).to_string(),
                )
            })
            .collect(),
    )?;

    let passes_frozen = |p: &Path| -> bool {
        if iqp.frozen.contains(&p.source()) {
            return true;
        }
        for &a in p.arrow_indices() {
            if iqp.frozen.contains(&q.arrows()[a].tgt) {
                return true;
            }
        }
        false
    };

    let mut relations = Vec::new();
    for (a, arr) in q.arrows().iter().enumerate() {
        if iqp.frozen.contains(&arr.src) && iqp.frozen.contains(&arr.tgt) {
            continue;
        }
        let Some(rel) = cyclic_derivative(iqp, a) else {
            continue;
        };
        // drop monomials through frozen vertices and translate into the
        // subquiver
        let mut terms = Vec::new();
        for (c, p) in rel.terms() {
            if passes_frozen(p) {
                continue;
            }
            let ids: Vec<&str> = p
                .arrow_indices()
                .iter()
                .map(|&ai| q.arrows()[ai].id.as_str())
                .collect();
            if ids.is_empty() {
                return Err(Error::InvalidRelation(
                    "cyclic derivative degenerates to an idempotent".into(),
                ));
            }
            terms.push((c.clone(), sub.path(&ids)?));
        }
        if terms.is_empty() {
            continue;
        }
        relations.push(Relation::new(terms, &sub)?);
    }

    let algebra = FDAlgebra::construct(sub, relations, max_len)?;
    Ok((algebra, labels))
}
