use std::collections::BTreeMap;

use kgamma::classifier::*;
use kgamma::homology::{reduced_homology, reduced_homology_all};
use kgamma::simplicial::standard::{cycle, octahedron, s0, simplex};
use kgamma::simplicial::{
    find_isomorphism, flag_completion, graph_from_edges, octahedralize, PartiteStructure, SimplicialComplex,
};
use proptest::prelude::*;

fn weights(pairs: &[(&str, i64)]) -> WeightAssignment {
    WeightAssignment(pairs.iter().map(|&(v, w)| (v.to_string(), w)).collect())
}

fn triangle_input() -> (SimplicialComplex, PartiteStructure) {
    let l = simplex(&["a", "b", "c"]);
    let p = PartiteStructure::new(BTreeMap::from([("a".into(), 0), ("b".into(), 1), ("c".into(), 2)]), 3).unwrap();
    (l, p)
}

#[test]
fn raag_presentations() {
    let edge = simplex(&["v", "w"]);
    let p = raag_presentation(&edge);
    assert_eq!(p.generators, ["v", "w"]);
    assert_eq!(p.relators.len(), 1);
    assert_eq!(p.word_to_string(&p.relators[0]), p.word_to_string(&[1, 2, -1, -2]));
    let points = s0("v", "w");
    assert!(raag_presentation(&points).relators.is_empty());
    let o = raag_presentation(&octahedron(["x", "y", "z"]));
    assert_eq!((o.generators.len(), o.relators.len()), (6, 12));
}

#[test]
fn bux_gonzalez_edge_is_fp_everywhere() {
    let r = bux_gonzalez_classify(&simplex(&["v", "w"]), &weights(&[("v", 1), ("w", 1)]), 4).unwrap();
    assert!((0..=4).all(|n| r.fp(n) == Status::Verified));
    assert!(r.is_well_formed());
}

#[test]
fn bux_gonzalez_two_points() {
    let r = bux_gonzalez_classify(&s0("v", "w"), &weights(&[("v", 1), ("w", 1)]), 3).unwrap();
    assert_eq!(r.fp(0), Status::Verified);
    assert_eq!(r.fp(1), Status::Refuted);
    assert_eq!(r.verdict, "FP_0 not FP_1");
    assert_eq!(r.f2_status, F2Status::Refuted);
    assert!(r.is_well_formed());
}

#[test]
fn bux_gonzalez_square() {
    let sq = cycle(&["a", "b", "c", "d"]);
    let r = bux_gonzalez_classify(&sq, &WeightAssignment::uniform(&sq, 1), 3).unwrap();
    assert!(r.is_fp_not_next(1));
    assert_eq!(r.verdict, "FP_1 not FP_2");
    // The living subcomplex is the whole square, with H̃₁ = Z.
    assert_eq!(reduced_homology_all(&sq).betti(1), 1);
}

#[test]
fn bux_gonzalez_dead_vertex() {
    // A dead cone point over two living points. The living part is S⁰, so
    // FP_1 already fails at the empty simplex.
    let g = graph_from_edges(&["c", "x", "y"], &[("c", "x"), ("c", "y")]);
    let r = bux_gonzalez_classify(&g, &weights(&[("c", 0), ("x", 1), ("y", 1)]), 3).unwrap();
    assert_eq!(r.fp(0), Status::Verified);
    assert_eq!(r.fp(1), Status::Refuted);
}

#[test]
fn all_zero_weights_fail_fp0() {
    let g = simplex(&["v", "w"]);
    let r = bux_gonzalez_classify(&g, &WeightAssignment::uniform(&g, 0), 2).unwrap();
    assert_eq!(r.fp(0), Status::Refuted);
    assert_eq!(r.verdict, "not FP_0");
    let e = SimplicialComplex::empty();
    let r = bux_gonzalez_classify(&e, &WeightAssignment(BTreeMap::new()), 2).unwrap();
    assert_eq!(r.fp(0), Status::Verified);
}

#[test]
fn weights_must_cover_gamma() {
    let g = simplex(&["v", "w"]);
    assert!(bux_gonzalez_classify(&g, &weights(&[("v", 1)]), 1).is_err());
    assert!(bux_gonzalez_classify(&g, &weights(&[("v", 1), ("w", 1), ("u", 2)]), 1).is_err());
}

fn table(vertex: &str, a: &SimplicialComplex, d: &SimplicialComplex, through: usize) -> LinkTable {
    LinkTable::from_links(vertex, a, d, through)
}

#[test]
fn bb_circle_links() {
    let c = cycle(&["a", "b", "c", "d"]);
    let ts: Vec<_> = (0..4).map(|i| table(&format!("x{i}"), &c, &c, 3)).collect();
    let r = bb_morse_classify(&ts, Some(1)).unwrap();
    assert!(r.is_fp_not_next(1));
    assert_eq!(r.f2_status, F2Status::Refuted);
    let inferred = bb_morse_classify(&ts, None).unwrap();
    assert_eq!(inferred.verdict, r.verdict);
}

#[test]
fn bb_sphere_links() {
    let o = octahedron(["x", "y", "z"]);
    let r = bb_morse_classify(&[table("v", &o, &o, 3)], Some(2)).unwrap();
    assert_eq!(r.verdict, "FP_2 not FP_3");
    assert_eq!(r.f2_status, F2Status::SupportedWithAssumptions);
    assert!(!r.assumptions.is_empty());
    assert!(r.is_well_formed());
}

#[test]
fn bb_guards() {
    let c = cycle(&["a", "b", "c", "d"]);
    let o = octahedron(["x", "y", "z"]);
    let r = bb_morse_classify(&[table("v", &o, &o, 3), table("w", &c, &o, 3)], Some(2)).unwrap();
    assert!(r.hypothesis_violated.is_some());
    assert!(r.fp_status.is_empty());
    assert!(bb_morse_classify(&[], Some(1)).is_err());
    assert!(bb_morse_classify(&[table("v", &o, &o, 2)], Some(2)).is_err());
}

#[test]
fn theorem_b_small_cases() {
    let t = theorem_b_calculator(3).unwrap();
    assert_eq!((t.l, t.rank_bound), (1, 1));
    assert_eq!(t.homology.nonzero_degrees(), [2]);
    let t = theorem_b_calculator(4).unwrap();
    assert_eq!(t.factors.iter().map(|f| f.group.as_str()).collect::<Vec<_>>(), ["G3", "G1"]);
    assert_eq!(t.homology.nonzero_degrees(), [3]);
    assert!(theorem_b_calculator(0).is_err());
}

#[test]
fn theorem_b_through_twelve() {
    for n in 1..=12 {
        let t = theorem_b_calculator(n).unwrap();
        assert_eq!(t.homology.nonzero_degrees(), [n as i64 - 1], "n = {n}");
        assert_eq!(t.homology.betti(n as i64 - 1), 1);
        assert!(t.homology.torsion(n as i64 - 1).is_empty());
        assert_eq!(t.rank_bound, n.div_ceil(3));
        assert_eq!(t.predicted_sphere_dim, n - 1);
        assert!(t.report.is_fp_not_next(n - 1) || n == 1);
    }
}

#[test]
fn theorem_a_on_a_triangle() {
    let (l, p) = triangle_input();
    let r = theorem_a_pipeline(&l, &p, &TheoremAOptions::default());
    assert!(r.failed_stage.is_none(), "{:?}", r.failed_stage);
    assert!(r.granted());
    assert_eq!(r.table.len(), 8);
    let nf = r.not_f2.as_ref().unwrap();
    assert_eq!(nf.status, HypothesisStatus::Unsatisfied);
    let report = r.report.as_ref().unwrap();
    assert!(report.is_fp_not_next(2));
    assert_ne!(report.f2_status, F2Status::RefutedWithAssumptions);
    assert!(report.is_well_formed());
    assert_eq!(r.z3_free.as_ref().unwrap().parameters.q, 125);
}

// The table's corner rows, checked against S(L) and S² built directly
// and matched by an unhinted isomorphism search.
#[test]
fn theorem_a_corner_links() {
    let (l, p) = triangle_input();
    let r = theorem_a_pipeline(&l, &p, &TheoremAOptions::default());
    let view = {
        let (rl, rp) = kgamma::simplicial::build_rl(&l, &p).unwrap();
        kgamma::cubical::build_kgamma(&rl, &rp).unwrap()
    };
    let morse = rl_orientation(&view);
    let s = octahedralize(&l).unwrap();
    let sphere = octahedron(["s", "t", "u"]);
    let (a, d) = kgamma::cubical::ascending_descending_links(&view, &morse, &[0, 0, 0]);
    assert!(find_isomorphism(&a, &s, None).is_some());
    assert!(find_isomorphism(&d, &sphere, None).is_some());
    let (a, d) = kgamma::cubical::ascending_descending_links(&view, &morse, &[1, 1, 1]);
    assert!(find_isomorphism(&a, &sphere, None).is_some());
    assert!(find_isomorphism(&d, &s, None).is_some());
    assert!(r.table.iter().all(|row| row.ascending_matches && row.descending_matches));
}

#[test]
fn theorem_a_names_failing_stage() {
    let l = graph_from_edges(&["a", "b"], &[("a", "b")]);
    let p = PartiteStructure::new(BTreeMap::from([("a".into(), 0), ("b".into(), 0)]), 3).unwrap();
    let r = theorem_a_pipeline(&l, &p, &TheoremAOptions::default());
    let f = r.failed_stage.unwrap();
    assert_eq!(f.stage, "input");
    assert!(f.input_error);
    assert!(!r.fp2_granted);
}

#[test]
fn perfect_model_is_acyclic() {
    let p = binary_icosahedral();
    let pc = presentation_complex(&p).unwrap();
    assert!(reduced_homology_all(&pc).is_zero());
    assert!(pc.f_vector().len() == 3);
}

fn arb_flag_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec((0usize..6, 0usize..6), 1..12).prop_map(|pairs| {
        let edges: Vec<(String, String)> =
            pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (format!("v{a}"), format!("v{b}"))).collect();
        let names: Vec<String> = (0..6).map(|i| format!("v{i}")).collect();
        let simplices: Vec<Vec<String>> = names
            .iter()
            .map(|v| vec![v.clone()])
            .chain(edges.iter().map(|(a, b)| vec![a.clone(), b.clone()]))
            .collect();
        flag_completion(&SimplicialComplex::new(&names, &simplices).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdicts_are_scale_invariant(g in arb_flag_complex(), ws in prop::collection::vec(-2i64..3, 6), k in prop::sample::select(vec![-3i64, -1, 2, 5])) {
        let w = WeightAssignment(g.vertices().iter().zip(&ws).map(|(v, &x)| (v.clone(), x)).collect());
        let scaled = WeightAssignment(w.0.iter().map(|(v, &x)| (v.clone(), k * x)).collect());
        let a = bux_gonzalez_classify(&g, &w, 3).unwrap();
        let b = bux_gonzalez_classify(&g, &scaled, 3).unwrap();
        prop_assert_eq!(&a.verdict, &b.verdict);
        prop_assert_eq!(w.dead(&g), scaled.dead(&g));
        let sa: Vec<_> = a.fp_status.iter().map(|e| e.status).collect();
        let sb: Vec<_> = b.fp_status.iter().map(|e| e.status).collect();
        prop_assert_eq!(sa, sb);
    }

    // With no dead vertices only the empty simplex matters: FP_n iff the
    // whole complex has vanishing reduced homology below n.
    #[test]
    fn nowhere_dead_reduces_to_connectivity(g in arb_flag_complex()) {
        let r = bux_gonzalez_classify(&g, &WeightAssignment::uniform(&g, 1), 3).unwrap();
        let h = reduced_homology(&g, 3);
        for n in 0..=3i64 {
            let expected = (-1..n).all(|d| h.group(d).is_none_or(|x| x.is_zero()));
            prop_assert_eq!(r.fp(n as usize) == Status::Verified, expected, "n = {}", n);
        }
    }

    #[test]
    fn bb_ignores_table_order_and_vertex_names(rot in 0usize..3, prefix in "[a-z]{1,3}") {
        let c = cycle(&["a", "b", "c", "d"]);
        let c2 = c.relabel(|v| format!("{prefix}{v}"));
        let mut ts = vec![table("p", &c, &c, 3), table("q", &c2, &c, 3), table("r", &c, &c2, 3)];
        let base = bb_morse_classify(&ts, Some(1)).unwrap();
        ts.rotate_left(rot);
        let r = bb_morse_classify(&ts, Some(1)).unwrap();
        prop_assert_eq!(base.verdict, r.verdict);
        prop_assert_eq!(base.f2_status, r.f2_status);
    }
}
