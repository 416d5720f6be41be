//! Bounded complexes of projective modules and their homotopy category:
//! Hom spaces, chain maps modulo null-homotopy, composition, shifts,
//! endomorphism algebras of decomposed complexes, indecomposability and
//! isomorphism tests, and the two-term tilting certificate.
//!
//! Shift convention: `x.shift(s)` places the old degree-`i` part in degree
//! `i + s` and negates the differentials when `s` is odd. A map of shift
//! `s` from `x` to `y` has components `X_i -> Y_{i-s}`, so positive shifts
//! probe the suspension direction.

mod complex;
mod endo;
mod hom;
mod module;
mod schema;

pub use complex::{BoundedComplex, ChainTuple, Decomposition};
pub use endo::{
    endomorphism_algebra, is_indecomposable, summands_pairwise_noniso, two_term_tilting_check,
    EndContext, TiltingReport,
};
pub use hom::{
    chain_maps, compose, compose_tuples, hom_space, homotopy_hom, homotopy_hom_with_preferred,
    single_component_tuple, HomotopyClass, HomotopySpace, MapLayout,
};
pub use module::{ProjMap, ProjModule};
pub use schema::{AlgebraRef, ComplexSpec, DiffEntrySpec, SummandRowsSpec};

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;
    use std::sync::Arc;

    use super::*;
    use crate::d2n;
    use crate::quivalg::AlgebraElement;

    fn m(v: usize, n: usize) -> String {
        ((v + 2 * n - 1) % (2 * n) + 1).to_string()
    }

    /// Path descending k steps from vertex v in the cyclic algebra.
    fn descend(a: &crate::quivalg::FDAlgebra, n: usize, v: usize, k: usize) -> AlgebraElement {
        let q = a.quiver().unwrap();
        let mut ids = Vec::new();
        let mut at = v + 4 * n;
        for _ in 0..k {
            ids.push(format!("a{}", m(at, n)));
            at -= 1;
        }
        let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        a.nf(&q.path(&refs).unwrap()).unwrap()
    }

    #[test]
    fn hom_table_of_the_cyclic_algebra() {
        let n = 4;
        let a = Arc::new(d2n::a1(n).unwrap());
        for i in 1..=2 * n {
            for j in 1..=2 * n {
                let p = ProjModule::new(a.clone(), vec![a.vertex(&i.to_string()).unwrap()])
                    .unwrap();
                let q = ProjModule::new(a.clone(), vec![a.vertex(&j.to_string()).unwrap()])
                    .unwrap();
                let dim = hom_space(&p, &q).unwrap().len();
                // zero exactly when j = i - 1 cyclically
                let expected = if (i + 2 * n - 2) % (2 * n) + 1 == j { 0 } else { 1 };
                assert_eq!(dim, expected, "Hom(P({i}), P({j}))");
            }
        }
    }

    #[test]
    fn stalk_endo_dimension() {
        let a = Arc::new(d2n::a1(4).unwrap());
        let x = BoundedComplex::stalk(a.clone(), 0).unwrap();
        let space = homotopy_hom(&x, &x, 0).unwrap();
        assert_eq!(space.dim(), 1);
    }

    #[test]
    fn disjoint_support_vanishes() {
        let x = d2n::p1_complex(4).unwrap();
        for s in [-3, -2, 2, 3] {
            assert_eq!(homotopy_hom(&x, &x, s).unwrap().dim(), 0, "shift {s}");
        }
    }

    #[test]
    fn adjacent_b_summands() {
        let x = d2n::p1_complex(4).unwrap();
        let b0 = x.summand_subcomplex("B0").unwrap();
        let b1 = x.summand_subcomplex("B1").unwrap();
        let (chain, _) = chain_maps(&b0, &b1, 0).unwrap();
        assert_eq!(chain.dim(), 1);
        assert_eq!(homotopy_hom(&b0, &b1, 0).unwrap().dim(), 0);
    }

    #[test]
    fn morphism_case_dimensions() {
        let x = d2n::p1_complex(4).unwrap();
        let c1 = x.summand_subcomplex("C1").unwrap();
        let b0 = x.summand_subcomplex("B0").unwrap();
        let b1 = x.summand_subcomplex("B1").unwrap();
        let c2 = x.summand_subcomplex("C2").unwrap();
        // gamma: C_i -> B_{i-1} survives
        assert_eq!(homotopy_hom(&c1, &b0, 0).unwrap().dim(), 1);
        // beta: B_i -> C_i survives
        assert_eq!(homotopy_hom(&b1, &c1, 0).unwrap().dim(), 1);
        // alpha: C_i -> C_{i+1} survives
        assert_eq!(homotopy_hom(&c1, &c2, 0).unwrap().dim(), 1);
        // no maps C_i -> B_j for j != i-1
        assert_eq!(homotopy_hom(&c1, &b1, 0).unwrap().dim(), 0);
    }

    #[test]
    fn composition_relations() {
        let n = 4;
        let x = d2n::p1_complex(n).unwrap();
        let a = x.algebra().clone();
        let sub = |name: &str| x.summand_subcomplex(name).unwrap();
        let single = |e: AlgebraElement| {
            ChainTuple::from_components(BTreeMap::from([(0i64, vec![vec![e]])]))
        };

        // gamma_2: C2 -> B1 is the inclusion (trivial path at 4)
        let e4 = {
            let q = a.quiver().unwrap();
            a.nf(&q.trivial_path(a.vertex("4").unwrap())).unwrap()
        };
        let gamma2 = HomotopyClass::new(sub("C2"), sub("B1"), 0, single(e4)).unwrap();
        // alpha_1: C1 -> C2 is the length-2 path 4 -> 2
        let alpha1 =
            HomotopyClass::new(sub("C1"), sub("C2"), 0, single(descend(&a, n, 4, 2))).unwrap();
        // gamma after alpha is null-homotopic
        let ga = compose(&gamma2, &alpha1).unwrap();
        let space = homotopy_hom(&sub("C1"), &sub("B1"), 0).unwrap();
        assert!(space.is_null(ga.tuple()).unwrap());

        // beta_0 after gamma_1 equals the alpha word C1 -> C4
        let e2 = {
            let q = a.quiver().unwrap();
            a.nf(&q.trivial_path(a.vertex("2").unwrap())).unwrap()
        };
        let gamma1 = HomotopyClass::new(sub("C1"), sub("B0"), 0, single(e2)).unwrap();
        let beta0 =
            HomotopyClass::new(sub("B0"), sub("C4"), 0, single(descend(&a, n, 0, 2 * n - 2)))
                .unwrap();
        let delta = compose(&beta0, &gamma1).unwrap();

        let alpha2 =
            HomotopyClass::new(sub("C2"), sub("C3"), 0, single(descend(&a, n, 6, 2))).unwrap();
        let alpha3 =
            HomotopyClass::new(sub("C3"), sub("C4"), 0, single(descend(&a, n, 8, 2))).unwrap();
        let word = compose(&alpha3, &compose(&alpha2, &alpha1).unwrap()).unwrap();

        let space = homotopy_hom(&sub("C1"), &sub("C4"), 0).unwrap();
        let d = space.class_coords(delta.tuple()).unwrap();
        let w = space.class_coords(word.tuple()).unwrap();
        assert_eq!(d, w);
        assert!(d.iter().any(|c| !num::Zero::is_zero(c)));

        // alpha after beta vanishes: B0 -> C4 -> C1
        let alpha4 =
            HomotopyClass::new(sub("C4"), sub("C1"), 0, single(descend(&a, n, 2, 2))).unwrap();
        let ab = compose(&alpha4, &beta0).unwrap();
        let space = homotopy_hom(&sub("B0"), &sub("C1"), 0).unwrap();
        assert!(space.is_null(ab.tuple()).unwrap());
    }

    #[test]
    fn identity_acts_as_unit() {
        let x = d2n::p1_complex(4).unwrap();
        let c1 = x.summand_subcomplex("C1").unwrap();
        let c2 = x.summand_subcomplex("C2").unwrap();
        let a = x.algebra().clone();
        let alpha1 = HomotopyClass::new(
            c1.clone(),
            c2.clone(),
            0,
            ChainTuple::from_components(BTreeMap::from([(0i64, vec![vec![descend(&a, 4, 4, 2)]])])),
        )
        .unwrap();
        let id2 = HomotopyClass::identity(&c2);
        let composed = compose(&id2, &alpha1).unwrap();
        let space = homotopy_hom(&c1, &c2, 0).unwrap();
        assert_eq!(
            space.class_coords(alpha1.tuple()).unwrap(),
            space.class_coords(composed.tuple()).unwrap()
        );
    }

    #[test]
    fn nonzero_chain_map_with_zero_class() {
        // every chain map B0 -> B1 is null-homotopic
        let x = d2n::p1_complex(4).unwrap();
        let b0 = x.summand_subcomplex("B0").unwrap();
        let b1 = x.summand_subcomplex("B1").unwrap();
        let (chain, layout) = chain_maps(&b0, &b1, 0).unwrap();
        assert_eq!(chain.dim(), 1);
        let f = layout.coords_to_tuple(&chain.basis()[0]);
        let space = homotopy_hom(&b0, &b1, 0).unwrap();
        assert!(space.is_null(&f).unwrap());
    }

    #[test]
    fn indecomposability_of_summands() {
        let x = d2n::p1_complex(4).unwrap();
        assert!(is_indecomposable(&x.summand_subcomplex("B0").unwrap()).unwrap());
        assert!(is_indecomposable(&x.summand_subcomplex("C1").unwrap()).unwrap());
        assert!(!is_indecomposable(&x).unwrap());
    }

    #[test]
    fn pairwise_noniso_of_the_summands() {
        let x = d2n::p1_complex(4).unwrap();
        let subs: Vec<BoundedComplex> = x
            .summand_complexes()
            .unwrap()
            .into_iter()
            .map(|(_, c)| c)
            .collect();
        assert!(summands_pairwise_noniso(&subs).unwrap());

        let c1 = x.summand_subcomplex("C1").unwrap();
        assert!(!summands_pairwise_noniso(&[c1.clone(), c1.clone()]).unwrap());

        let b0 = x.summand_subcomplex("B0").unwrap();
        assert!(summands_pairwise_noniso(&[b0, c1]).unwrap());
    }

    #[test]
    fn stalk_of_regular_module_is_tilting() {
        let a = Arc::new(d2n::a1(4).unwrap());
        let module = ProjModule::new(a.clone(), (0..8).collect()).unwrap();
        let x = BoundedComplex::new(a.clone(), 0, vec![module], vec![])
            .unwrap()
            .with_summands(Decomposition {
                names: (0..8).map(|v| a.vertex_label(v).to_string()).collect(),
                rows: (0..8).map(|v| BTreeMap::from([(0i64, vec![v])])).collect(),
            })
            .unwrap();
        let report = two_term_tilting_check(&x).unwrap();
        assert!(report.tilting, "{report:?}");
    }

    #[test]
    fn single_summand_fails_the_count() {
        let x = d2n::p1_complex(4).unwrap();
        let c1 = x.summand_subcomplex("C1").unwrap().with_summands(Decomposition {
            names: vec!["C1".into()],
            rows: vec![BTreeMap::from([(0i64, vec![0])])],
        });
        let report = two_term_tilting_check(&c1.unwrap()).unwrap();
        assert!(report.presilting);
        assert!(!report.summand_count_ok);
        assert!(!report.tilting);
    }

    #[test]
    fn zero_differential_with_duplicate_summands_fails() {
        let a = Arc::new(d2n::a1(4).unwrap());
        let l1 = ProjModule::new(a.clone(), vec![0]).unwrap();
        let l0 = ProjModule::new(a.clone(), vec![0]).unwrap();
        let phi = ProjMap::zero(l1.clone(), l0.clone()).unwrap();
        let x = BoundedComplex::new(a.clone(), 0, vec![l0, l1], vec![phi])
            .unwrap()
            .with_summands(Decomposition {
                names: vec!["u".into(), "d".into()],
                rows: vec![
                    BTreeMap::from([(1i64, vec![0])]),
                    BTreeMap::from([(0i64, vec![0])]),
                ],
            })
            .unwrap();
        let report = two_term_tilting_check(&x).unwrap();
        // Hom(x, x[1]) contains the identity-entry map P(1)_1 -> P(1)_0
        assert!(!report.presilting);
        assert!(!report.tilting);
    }

    #[test]
    fn endomorphism_of_single_stalk() {
        let a = Arc::new(d2n::a1(4).unwrap());
        let x = BoundedComplex::stalk(a.clone(), 2)
            .unwrap()
            .with_summands(Decomposition {
                names: vec!["P".into()],
                rows: vec![BTreeMap::from([(0i64, vec![0])])],
            })
            .unwrap();
        let (end, _) = endomorphism_algebra(&x).unwrap();
        assert_eq!(end.dim(), 1);
        assert_eq!(end.vertex_count(), 1);
    }

    #[test]
    fn endomorphism_of_two_stalks() {
        let a = Arc::new(d2n::a1(4).unwrap());
        let module = ProjModule::new(a.clone(), vec![1, 3]).unwrap();
        let x = BoundedComplex::new(a.clone(), 0, vec![module], vec![])
            .unwrap()
            .with_summands(Decomposition {
                names: vec!["C1".into(), "C2".into()],
                rows: vec![
                    BTreeMap::from([(0i64, vec![0])]),
                    BTreeMap::from([(0i64, vec![1])]),
                ],
            })
            .unwrap();
        let (end, _) = endomorphism_algebra(&x).unwrap();
        // stalk Homs are all one-dimensional here
        assert_eq!(end.dim(), 4);
        assert_eq!(end.vertex_count(), 2);
    }

    #[test]
    fn chain_map_layout_round_trip() {
        let x = d2n::p1_complex(4).unwrap();
        let b0 = x.summand_subcomplex("B0").unwrap();
        let (chain, layout) = chain_maps(&b0, &b0, 0).unwrap();
        for basis_vec in chain.basis() {
            let tuple = layout.coords_to_tuple(basis_vec);
            let back = layout.tuple_to_coords(&tuple).unwrap();
            assert_eq!(&back, basis_vec);
        }
    }
}
