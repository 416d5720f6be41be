//! Finite-dimensional basic algebras presented by quivers with relations:
//! construction via a truncated two-sided ideal computation with
//! stabilization certificates, and structural invariants (Cartan matrix,
//! radical, socle, self-injectivity and Nakayama permutation, symmetry
//! probes, center dimension, Gabriel quiver recovery, presentation
//! verification).

mod algebra;
mod invariants;
mod presentation;
mod quiver;

pub use algebra::{AlgebraElement, BasisElem, BasisLabel, FDAlgebra, SparseVec};
pub use invariants::{
    radical_dim_of_table, radical_subspace_of_table, SelfInjectivity, SymmetryReport,
    SymmetryVerdict,
};
pub use presentation::{extract_presentation, verify_presentation};
pub use quiver::{
    Arrow, ArrowSpec, Path, Quiver, QuiverSpec, Relation, RelationSpec, TermSpec,
};

/// Default level cap for the truncated ideal computation.
pub fn default_max_len(quiver: &Quiver, relations: &[Relation]) -> usize {
    let longest = relations.iter().map(Relation::max_len).max().unwrap_or(0);
    4 * (quiver.vertex_count() + longest)
}
