//! The cyclic example family: a self-injective Nakayama algebra on `2n`
//! vertices, the two-term tilting complex of projectives over it, and the
//! candidate endomorphism algebra presentation together with the canonical
//! assignment that the pipeline certifies.
//!
//! Conventions: `a1(n)` lives on the cyclic quiver with arrows
//! `a{v}: v -> v-1 (mod 2n)` and all paths of length `2n-1` equal to zero,
//! so with projectives `P(v) = e_v A` the Hom spaces `Hom(P(i), P(j))` are
//! one-dimensional except exactly when `j = i - 1 (mod 2n)`. The candidate
//! `a2(n)` lives on a quiver with inner vertices `C1..Cn` on a cycle and
//! outer vertices `B0..B{n-1}`; relation words are written left-to-right.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exactla::Rat;
use crate::homotopy::ChainTuple;
use crate::quivalg::{FDAlgebra, Quiver, Relation};
use crate::tiltbench::{
    build_two_term, run_pipeline, ApproximationDatum, ArrowImageSpec, Candidate,
    EquivalenceReport, SummandSpec,
};
use crate::{Error, Result};

fn check_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::Invalid(format!("n must be at least 4, got {n}")));
    }
    Ok(())
}

/// Cyclic quiver on vertices "1".."2n" with `a{v}: v -> v-1`.
pub fn a1_quiver(n: usize) -> Quiver {
    let m = 2 * n;
    let vertices: Vec<String> = (1..=m).map(|v| v.to_string()).collect();
    let arrows = (1..=m)
        .map(|v| {
            let down = if v == 1 { m } else { v - 1 };
            (format!("a{v}"), v.to_string(), down.to_string())
        })
        .collect();
    Quiver::new(vertices, arrows).expect("valid cyclic quiver")
}

/// All `2n` monomial relations of length `2n-1`, one starting at each
/// vertex.
pub fn a1_relations(n: usize, quiver: &Quiver) -> Vec<Relation> {
    let m = 2 * n;
    (1..=m)
        .map(|start| {
            let mut ids = Vec::with_capacity(m - 1);
            let mut v = start;
            for _ in 0..m - 1 {
                ids.push(format!("a{v}"));
                v = if v == 1 { m } else { v - 1 };
            }
            let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
            Relation::monomial(quiver.path(&refs).unwrap(), quiver).unwrap()
        })
        .collect()
}

/// Self-injective Nakayama algebra of dimension `2n(2n-1)`.
pub fn a1(n: usize) -> Result<FDAlgebra> {
    check_n(n)?;
    let quiver = a1_quiver(n);
    let relations = a1_relations(n, &quiver);
    FDAlgebra::construct(quiver, relations, 2 * n + 4)
}

/// Candidate quiver: `alpha{i}: Ci -> C{i+1}` cyclically, `gamma{i}: Ci ->
/// B{i-1}`, `beta{i}: Bi -> Ci` with `beta0: B0 -> Cn`.
pub fn a2_quiver(n: usize) -> Quiver {
    let mut vertices: Vec<String> = (1..=n).map(|i| format!("C{i}")).collect();
    vertices.extend((0..n).map(|i| format!("B{i}")));
    let mut arrows = Vec::new();
    for i in 1..=n {
        let next = if i == n { 1 } else { i + 1 };
        arrows.push((format!("alpha{i}"), format!("C{i}"), format!("C{next}")));
    }
    for i in 1..=n {
        arrows.push((format!("gamma{i}"), format!("C{i}"), format!("B{}", i - 1)));
    }
    for i in 0..n {
        let target = if i == 0 { n } else { i };
        arrows.push((format!("beta{i}"), format!("B{i}"), format!("C{target}")));
    }
    Quiver::new(vertices, arrows).expect("valid candidate quiver")
}

/// The three relation families, written left-to-right: the `(n-1)`-fold
/// alpha word equals gamma-then-beta, beta-then-alpha vanishes, and
/// alpha-then-gamma vanishes.
pub fn a2_relations(n: usize, quiver: &Quiver) -> Vec<Relation> {
    let one = Rat::from_integer(1.into());
    let minus_one = Rat::from_integer((-1).into());
    let mut rels = Vec::new();
    for i in 1..=n {
        let mut ids = Vec::with_capacity(n - 1);
        let mut v = i;
        for _ in 0..n - 1 {
            ids.push(format!("alpha{v}"));
            v = if v == n { 1 } else { v + 1 };
        }
        let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        let alpha_path = quiver.path(&refs).unwrap();
        let gb = quiver
            .path(&[&format!("gamma{i}"), &format!("beta{}", i - 1)])
            .unwrap();
        rels.push(
            Relation::new(vec![(one.clone(), alpha_path), (minus_one.clone(), gb)], quiver)
                .unwrap(),
        );
    }
    for i in 0..n {
        let target = if i == 0 { n } else { i };
        let ba = quiver
            .path(&[&format!("beta{i}"), &format!("alpha{target}")])
            .unwrap();
        rels.push(Relation::monomial(ba, quiver).unwrap());
    }
    for i in 1..=n {
        let next = if i == n { 1 } else { i + 1 };
        let ag = quiver
            .path(&[&format!("alpha{i}"), &format!("gamma{next}")])
            .unwrap();
        rels.push(Relation::monomial(ag, quiver).unwrap());
    }
    rels
}

/// Candidate algebra of dimension `n^2 + 4n`.
pub fn a2(n: usize) -> Result<FDAlgebra> {
    check_n(n)?;
    let quiver = a2_quiver(n);
    let relations = a2_relations(n, &quiver);
    FDAlgebra::construct(quiver, relations, 2 * n + 6)
}

fn vertex_label(m: usize, v: usize) -> String {
    ((v + m - 1) % m + 1).to_string()
}

/// One instance of the example family: the base algebra, the candidate
/// algebra, the two-term datum and the canonical assignment, all built over
/// one shared algebra instance.
pub struct D2nInstance {
    pub n: usize,
    pub algebra: Arc<FDAlgebra>,
    pub candidate_algebra: FDAlgebra,
    pub datum: ApproximationDatum,
    pub candidate: Candidate,
}

impl D2nInstance {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        let algebra = Arc::new(a1(n)?);
        let datum = p1_datum_over(&algebra, n)?;
        let candidate = canonical_assignment_over(&algebra, n)?;
        Ok(Self { n, algebra, candidate_algebra: a2(n)?, datum, candidate })
    }
}

/// Two-term datum over `a1(n)`: degree-1 part `⊕ P(odd)`, degree-0 part
/// `⊕ P(even) ⊕ ⊕ P(even)`, differential the length-one arrow path on each
/// `B` block and zero into the `C` blocks. Summands are `B0..B{n-1}` and
/// `C1..Cn`.
pub fn p1_datum(n: usize) -> Result<ApproximationDatum> {
    check_n(n)?;
    let algebra = Arc::new(a1(n)?);
    p1_datum_over(&algebra, n)
}

fn p1_datum_over(algebra: &Arc<FDAlgebra>, n: usize) -> Result<ApproximationDatum> {
    let algebra = algebra.clone();
    let m = 2 * n;

    let l1: Vec<String> = (0..n).map(|i| vertex_label(m, 2 * i + 1)).collect();
    let mut l0: Vec<String> = (0..n).map(|i| vertex_label(m, 2 * i + 2)).collect();
    l0.extend((1..=n).map(|j| vertex_label(m, 2 * j)));

    let quiver = algebra.quiver().unwrap().clone();
    let mut entries: Vec<Vec<crate::quivalg::AlgebraElement>> = Vec::new();
    for t in 0..2 * n {
        let mut row = Vec::new();
        for s in 0..n {
            if t == s {
                let p = quiver
                    .path(&[&format!("a{}", vertex_label(m, 2 * s + 2))])
                    .unwrap();
                row.push(algebra.nf(&p)?);
            } else {
                row.push(algebra.zero_element());
            }
        }
        entries.push(row);
    }

    let mut summands = Vec::new();
    for i in 0..n {
        summands.push(SummandSpec {
            name: format!("B{i}"),
            rows_by_degree: BTreeMap::from([(1, vec![i]), (0, vec![i])]),
        });
    }
    for j in 1..=n {
        summands.push(SummandSpec {
            name: format!("C{j}"),
            rows_by_degree: BTreeMap::from([(0, vec![n + j - 1])]),
        });
    }

    ApproximationDatum::new(algebra, l1, l0, entries, summands)
}

/// The complex built from the datum.
pub fn p1_complex(n: usize) -> Result<crate::homotopy::BoundedComplex> {
    build_two_term(&p1_datum(n)?)
}

/// Explicit homotopy classes for the candidate arrows: `gamma` is the
/// degree-0 inclusion of a `C` stalk into the following `B` summand (the
/// identity path), `alpha` is the length-2 path class between consecutive
/// `C` stalks, `beta` is the length-`(2n-2)` path class from a `B` summand
/// to its `C` partner. The `beta` scalars are solved downstream from the
/// alpha-word relations.
///
/// The arrow images live over the given algebra instance; pair this with a
/// datum over the same instance (see [`D2nInstance`]).
pub fn canonical_assignment_over(algebra: &Arc<FDAlgebra>, n: usize) -> Result<Candidate> {
    check_n(n)?;
    let algebra = algebra.clone();
    let quiver = algebra.quiver().unwrap().clone();
    let m = 2 * n;

    let quiver2 = a2_quiver(n);
    let relations2 = a2_relations(n, &quiver2);

    let mut vertex_map = BTreeMap::new();
    for i in 1..=n {
        vertex_map.insert(format!("C{i}"), format!("C{i}"));
    }
    for i in 0..n {
        vertex_map.insert(format!("B{i}"), format!("B{i}"));
    }

    // a path descending k steps from (the class of) vertex v
    let descend = |v: usize, k: usize| -> crate::quivalg::Path {
        let mut ids = Vec::with_capacity(k);
        let mut at = v + 2 * m; // buffer against underflow
        for _ in 0..k {
            ids.push(format!("a{}", vertex_label(m, at)));
            at -= 1;
        }
        let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        quiver.path(&refs).unwrap()
    };
    let single = |e: crate::quivalg::AlgebraElement| BTreeMap::from([(0i64, vec![vec![e]])]);

    let mut arrows = Vec::new();
    for i in 1..=n {
        // gamma_i: C_i -> B_{i-1}, degree-0 component the trivial path at 2i
        let v = quiver.vertex(&vertex_label(m, 2 * i))?;
        let e = algebra.nf(&quiver.trivial_path(v)).unwrap();
        arrows.push(ArrowImageSpec {
            arrow: format!("gamma{i}"),
            src_summand: format!("C{i}"),
            tgt_summand: format!("B{}", i - 1),
            components: single(e),
        });
    }
    for i in 1..=n {
        // alpha_i: C_i -> C_{i+1}, the length-2 path from 2(i+1) down to 2i
        let next = if i == n { 1 } else { i + 1 };
        let e = algebra.nf(&descend(2 * i + 2, 2)).unwrap();
        arrows.push(ArrowImageSpec {
            arrow: format!("alpha{i}"),
            src_summand: format!("C{i}"),
            tgt_summand: format!("C{next}"),
            components: single(e),
        });
    }
    for i in 0..n {
        // beta_i: B_i -> C_i (beta_0: B_0 -> C_n), the length-(2n-2) path
        // from 2i down to 2i+2
        let target = if i == 0 { n } else { i };
        let e = algebra.nf(&descend(2 * i, m - 2)).unwrap();
        arrows.push(ArrowImageSpec {
            arrow: format!("beta{i}"),
            src_summand: format!("B{i}"),
            tgt_summand: format!("C{target}"),
            components: single(e),
        });
    }

    Ok(Candidate {
        quiver: quiver2,
        relations: relations2,
        vertex_map,
        arrow_images: arrows,
        solve_scalars: scalar_constraints(n),
        max_len: 2 * n + 6,
    })
}

/// For each `i`, the image of `beta{i-1}` is rescaled so that the relation
/// `alpha-word = gamma_i . beta_{i-1}` holds on the nose.
fn scalar_constraints(n: usize) -> Vec<(String, String, Vec<String>)> {
    (1..=n)
        .map(|i| {
            let mut alpha_word = Vec::with_capacity(n - 1);
            let mut v = i;
            for _ in 0..n - 1 {
                alpha_word.push(format!("alpha{v}"));
                v = if v == n { 1 } else { v + 1 };
            }
            (format!("beta{}", i - 1), format!("gamma{i}"), alpha_word)
        })
        .collect()
}

/// Full pipeline run: tilting certificate, endomorphism algebra,
/// presentation verification against `a2(n)`, invariant comparison.
pub fn run_demo(n: usize) -> Result<EquivalenceReport> {
    let instance = D2nInstance::new(n)?;
    run_pipeline(&instance.datum, Some(instance.candidate))
}

/// Single-entry degree-0 chain tuple, for building maps between stalk
/// summands in tests.
pub fn stalk_map(e: crate::quivalg::AlgebraElement) -> ChainTuple {
    ChainTuple::from_components(BTreeMap::from([(0, vec![vec![e]])]))
}
