//! Ice quivers with potential from Postnikov diagrams: parsing and
//! validation, rotational-symmetry checks, cyclic derivatives, frozen
//! Jacobian quotient algebras, and derived-invariant comparison tables.

mod compare;
mod iqp;
mod jacobian;

pub use compare::{compare_invariants, invariant_table, CompareReport, InvariantTable};
pub use iqp::{canonical_rotation, parse_iqp, IceQuiverWithPotential, IqpSpec, PotentialTermSpec};
pub use jacobian::{cyclic_derivative, frozen_jacobian_quotient};

#[cfg(test)]
mod tests {
    use super::*;

    use crate::quivalg::Quiver;

    fn triangle_json(frozen: &str, rotation: &str) -> String {
        format!(
            r#"{{
                "vertices": ["1", "2", "3"],
                "arrows": [
                    {{"id": "a", "src": "1", "tgt": "2"}},
                    {{"id": "b", "src": "2", "tgt": "3"}},
                    {{"id": "c", "src": "3", "tgt": "1"}}
                ],
                "potential": [{{"sign": 1, "cycle": ["a", "b", "c"]}}],
                "frozen": [{frozen}],
                "rotation": {rotation}
            }}"#
        )
    }

    #[test]
    fn parse_and_validate_triangle() {
        let iqp = parse_iqp(&triangle_json("", "null")).unwrap();
        assert_eq!(iqp.quiver.vertex_count(), 3);
        assert_eq!(iqp.potential.len(), 1);
        assert!(iqp.frozen.is_empty());
    }

    #[test]
    fn non_cycle_term_rejected() {
        let json = r#"{
            "vertices": ["1", "2"],
            "arrows": [{"id": "a", "src": "1", "tgt": "2"}],
            "potential": [{"sign": 1, "cycle": ["a"]}],
            "frozen": []
        }"#;
        assert!(matches!(parse_iqp(json), Err(crate::Error::NonCycleTerm(_))));
    }

    #[test]
    fn unknown_frozen_vertex_rejected() {
        let json = r#"{
            "vertices": ["1", "2", "3"],
            "arrows": [
                {"id": "a", "src": "1", "tgt": "2"},
                {"id": "b", "src": "2", "tgt": "3"},
                {"id": "c", "src": "3", "tgt": "1"}
            ],
            "potential": [{"sign": 1, "cycle": ["a", "b", "c"]}],
            "frozen": ["x"]
        }"#;
        assert!(matches!(parse_iqp(json), Err(crate::Error::UnknownVertex(_))));
    }

    #[test]
    fn derivative_of_triangle() {
        let iqp = parse_iqp(&triangle_json("", "null")).unwrap();
        let b = iqp.quiver.arrow("b").unwrap();
        let rel = cyclic_derivative(&iqp, b).unwrap();
        assert_eq!(rel.terms().len(), 1);
        let ids = rel.terms()[0].1.arrow_ids(&iqp.quiver);
        assert_eq!(ids, vec!["c", "a"]);
    }

    #[test]
    fn derivative_with_shared_prefix() {
        // W = abc - abd on parallel arrows c, d: d/da = bc - bd
        let json = r#"{
            "vertices": ["1", "2", "3"],
            "arrows": [
                {"id": "a", "src": "1", "tgt": "2"},
                {"id": "b", "src": "2", "tgt": "3"},
                {"id": "c", "src": "3", "tgt": "1"},
                {"id": "d", "src": "3", "tgt": "1"}
            ],
            "potential": [
                {"sign": 1, "cycle": ["a", "b", "c"]},
                {"sign": -1, "cycle": ["a", "b", "d"]}
            ],
            "frozen": []
        }"#;
        let iqp = parse_iqp(json).unwrap();
        let a = iqp.quiver.arrow("a").unwrap();
        let rel = cyclic_derivative(&iqp, a).unwrap();
        assert_eq!(rel.terms().len(), 2);
        let mut ids: Vec<Vec<&str>> =
            rel.terms().iter().map(|(_, p)| p.arrow_ids(&iqp.quiver)).collect();
        ids.sort();
        assert_eq!(ids, vec![vec!["b", "c"], vec!["b", "d"]]);
    }

    #[test]
    fn derivative_of_absent_arrow_is_none() {
        let json = r#"{
            "vertices": ["1", "2", "3"],
            "arrows": [
                {"id": "a", "src": "1", "tgt": "2"},
                {"id": "b", "src": "2", "tgt": "3"},
                {"id": "c", "src": "3", "tgt": "1"},
                {"id": "loose", "src": "1", "tgt": "1"}
            ],
            "potential": [{"sign": 1, "cycle": ["a", "b", "c"]}],
            "frozen": []
        }"#;
        let iqp = parse_iqp(json).unwrap();
        let loose = iqp.quiver.arrow("loose").unwrap();
        assert!(cyclic_derivative(&iqp, loose).is_none());
    }

    #[test]
    fn triangle_jacobian_quotient_dimension() {
        let iqp = parse_iqp(&triangle_json("", "null")).unwrap();
        let (alg, labels) = frozen_jacobian_quotient(&iqp, 12).unwrap();
        assert_eq!(alg.dim(), 6);
        assert_eq!(labels, vec!["1", "2", "3"]);
    }

    #[test]
    fn all_frozen_is_rejected() {
        let iqp = parse_iqp(&triangle_json(r#""1", "2", "3""#, "null")).unwrap();
        assert!(frozen_jacobian_quotient(&iqp, 8).is_err());
    }

    #[test]
    fn symmetry_of_triangle_rotation() {
        let iqp = parse_iqp(&triangle_json(
            "",
            r#"{"1": "2", "2": "3", "3": "1"}"#,
        ))
        .unwrap();
        assert!(iqp.check_symmetry());
    }

    #[test]
    fn swap_on_an_arrow_is_not_a_symmetry() {
        let json = r#"{
            "vertices": ["1", "2"],
            "arrows": [{"id": "a", "src": "1", "tgt": "2"}],
            "potential": [],
            "frozen": [],
            "rotation": {"1": "2", "2": "1"}
        }"#;
        let iqp = parse_iqp(json).unwrap();
        assert!(!iqp.check_symmetry());
    }

    #[test]
    fn symmetry_search_without_declared_rotation() {
        let iqp = parse_iqp(&triangle_json("", "null")).unwrap();
        // the 3-cycle admits a non-identity automorphism preserving W
        assert!(iqp.check_symmetry());
    }

    #[test]
    fn symmetry_invariant_under_relabeling() {
        // same triangle with permuted vertex names and arrow list order
        let json = r#"{
            "vertices": ["x", "y", "z"],
            "arrows": [
                {"id": "c", "src": "z", "tgt": "x"},
                {"id": "a", "src": "x", "tgt": "y"},
                {"id": "b", "src": "y", "tgt": "z"}
            ],
            "potential": [{"sign": 1, "cycle": ["b", "c", "a"]}],
            "frozen": [],
            "rotation": {"x": "y", "y": "z", "z": "x"}
        }"#;
        let iqp = parse_iqp(json).unwrap();
        assert!(iqp.check_symmetry());
    }

    #[test]
    fn derivative_is_linear_in_the_potential() {
        // d/d(arrow) of (W1 + W2) agrees with the combined term lists
        let json_sum = r#"{
            "vertices": ["1", "2"],
            "arrows": [
                {"id": "a", "src": "1", "tgt": "2"},
                {"id": "b", "src": "2", "tgt": "1"},
                {"id": "c", "src": "2", "tgt": "1"}
            ],
            "potential": [
                {"sign": 1, "cycle": ["a", "b"]},
                {"sign": 1, "cycle": ["a", "c"]}
            ],
            "frozen": []
        }"#;
        let iqp = parse_iqp(json_sum).unwrap();
        let a = iqp.quiver.arrow("a").unwrap();
        let rel = cyclic_derivative(&iqp, a).unwrap();
        // two parallel length-1 terms: b + c
        assert_eq!(rel.terms().len(), 2);
    }

    #[test]
    fn empty_frozen_set_equals_plain_jacobian() {
        // check no monomial deletion happens with F empty: relations count
        // matches the number of arrows occurring in W
        let iqp = parse_iqp(&triangle_json("", "null")).unwrap();
        let (alg, _) = frozen_jacobian_quotient(&iqp, 12).unwrap();
        let pres = alg.presentation().unwrap();
        assert_eq!(pres.relations.len(), 3);
    }

    fn fixture(name: &str) -> String {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../fixtures")
            .join(name);
        std::fs::read_to_string(path).unwrap()
    }

    #[test]
    fn symmetric_3_6_fixture_checks_out() {
        // ice quiver of the symmetric (3,6) Postnikov diagram given by the
        // weakly separated collection {124, 125, 145, 245}; see the fixture
        // notes in the README
        let iqp = parse_iqp(&fixture("postnikov_3_6.json")).unwrap();
        assert_eq!(iqp.quiver.vertex_count(), 10);
        assert_eq!(iqp.frozen.len(), 6);
        assert!(iqp.check_symmetry());

        let (alg, labels) = frozen_jacobian_quotient(&iqp, 16).unwrap();
        assert_eq!(labels, vec!["124", "125", "145", "245"]);
        // cyclic 4-vertex quotient with all length-3 paths zero
        assert_eq!(alg.dim(), 12);
        let si = alg.self_injectivity().unwrap();
        assert!(si.self_injective);
        // half-turn permutation, matching the rotation on mutable labels
        let perm = si.nakayama_permutation.unwrap();
        let at = |l: &str| alg.vertex(l).unwrap();
        assert_eq!(perm[at("124")], at("145"));
        assert_eq!(perm[at("125")], at("245"));
        assert_eq!(perm[at("145")], at("124"));
        assert_eq!(perm[at("245")], at("125"));
    }

    #[test]
    fn fixture_quotient_is_consistent_with_itself_rotated() {
        // relabeling through the rotation and rebuilding gives an algebra
        // with identical invariants
        let iqp = parse_iqp(&fixture("postnikov_3_6.json")).unwrap();
        let (alg, _) = frozen_jacobian_quotient(&iqp, 16).unwrap();
        let report = compare_invariants(&alg, &alg);
        assert!(report.consistent);
        assert_eq!(report.table_a.cartan_det_abs, report.table_b.cartan_det_abs);
    }

    #[test]
    fn canonical_rotation_is_cyclic_least() {
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "3".into()),
                ("c".into(), "3".into(), "1".into()),
            ],
        )
        .unwrap();
        let bca = q.path(&["b", "c", "a"]).unwrap();
        let canon = canonical_rotation(&bca, &q);
        assert_eq!(canon.arrow_ids(&q), vec!["a", "b", "c"]);
    }
}
