use num::Signed;
use serde::Serialize;

use crate::exactla::{int_matrix_det, smith_normal_form};
use crate::quivalg::FDAlgebra;

/// Derived-invariant ledger of one algebra: values preserved by derived
/// equivalence (simple count, Cartan determinant up to sign, center
/// dimension) plus context (dimension, Smith normal form of the Cartan
/// matrix, the self-injectivity certificate).
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InvariantTable {
    pub dimension: usize,
    pub simples: usize,
    pub cartan_det_abs: String,
    pub cartan_snf: Vec<String>,
    pub center_dim: usize,
    pub self_injective: bool,
    pub nakayama_permutation: Option<Vec<String>>,
}

pub fn invariant_table(a: &FDAlgebra) -> InvariantTable {
    let cartan = a.cartan_matrix();
    let det = int_matrix_det(&cartan);
    let snf = smith_normal_form(&cartan);
    let si = a.self_injectivity().ok();
    let (self_injective, nakayama) = match si {
        Some(cert) if cert.self_injective => {
            let perm = cert.nakayama_permutation.unwrap();
            (
                true,
                Some(perm.iter().map(|&v| a.vertex_label(v).to_string()).collect()),
            )
        }
        _ => (false, None),
    };
    InvariantTable {
        dimension: a.dim(),
        simples: a.vertex_count(),
        cartan_det_abs: det.abs().to_string(),
        cartan_snf: snf.iter().map(|d| d.to_string()).collect(),
        center_dim: a.center_dimension(),
        self_injective,
        nakayama_permutation: nakayama,
    }
}

/// Necessary-condition comparison for derived equivalence. A `false`
/// verdict refutes derived equivalence; `true` is consistency only. The
/// Smith normal forms are reported but not enforced.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CompareReport {
    pub table_a: InvariantTable,
    pub table_b: InvariantTable,
    pub consistent: bool,
}

pub fn compare_invariants(a: &FDAlgebra, b: &FDAlgebra) -> CompareReport {
    let table_a = invariant_table(a);
    let table_b = invariant_table(b);
    let consistent = table_a.simples == table_b.simples
        && table_a.cartan_det_abs == table_b.cartan_det_abs
        && table_a.center_dim == table_b.center_dim;
    CompareReport { table_a, table_b, consistent }
}
