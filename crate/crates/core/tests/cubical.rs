use std::collections::{BTreeMap, BTreeSet};

use kgamma::cubical::*;
use kgamma::homology::{homological_connectivity, reduced_homology_all, ACYCLIC};
use kgamma::simplicial::standard::{complete_bipartite, cycle, octahedron, simplex};
use kgamma::simplicial::{
    build_rl, find_isomorphism, flag_completion, graph_from_edges, is_flag, join, octahedralize, PartiteStructure,
    SimplicialComplex,
};
use kgamma::Error;
use proptest::prelude::*;

fn parts_of(pairs: &[(&str, usize)], n: usize) -> PartiteStructure {
    PartiteStructure::new(pairs.iter().map(|&(v, p)| (v.to_string(), p)).collect(), n).unwrap()
}

fn k33() -> (SimplicialComplex, PartiteStructure) {
    let g = complete_bipartite(&["a1", "a2", "a3"], &["b1", "b2", "b3"]);
    let p = parts_of(&[("a1", 0), ("a2", 0), ("a3", 0), ("b1", 1), ("b2", 1), ("b3", 1)], 2);
    (g, p)
}

// Every product cell, by brute force over coordinate choices.
fn all_product_cells(view: &KGammaView) -> Vec<ProductCell> {
    let mut cells = vec![Vec::new()];
    for cage in view.cages() {
        let mut next = Vec::new();
        for c in &cells {
            let mut opts = vec![Coord::Vertex(0), Coord::Vertex(1)];
            opts.extend((0..cage.labels.len()).map(Coord::Edge));
            for o in opts {
                let mut c2: Vec<Coord> = c.clone();
                c2.push(o);
                next.push(c2);
            }
        }
        cells = next;
    }
    cells.into_iter().map(|coords| ProductCell { coords }).collect()
}

// Membership via the union of the tori T_σ over all simplices σ of Γ.
fn in_some_torus(view: &KGammaView, cell: &ProductCell) -> bool {
    let g = view.gamma();
    let parts = view.parts();
    let sigmas = std::iter::once(Vec::new()).chain(g.simplices().cloned());
    sigmas.into_iter().any(|s| {
        let mut edge_of = vec![0usize; view.n()];
        for &v in &s {
            let name = g.vertex_name(v);
            let p = parts.part(name).unwrap();
            edge_of[p] = view.cages()[p].label_index(name).unwrap();
        }
        cell.coords.iter().enumerate().all(|(i, c)| match c {
            Coord::Vertex(_) => true,
            Coord::Edge(e) => *e == edge_of[i],
        })
    })
}

fn chi_oracle(g: &SimplicialComplex) -> i128 {
    1 + g.simplices().map(|s| if s.len() % 2 == 0 { 1 } else { -1 }).sum::<i128>()
}

#[test]
fn cell_counts_examples() {
    let edge = simplex(&["a", "b"]);
    let k = build_kgamma(&edge, &parts_of(&[("a", 0), ("b", 1)], 2)).unwrap();
    assert_eq!(k.cell_counts(), vec![4, 8, 4]);
    assert_eq!(k.euler_characteristic(), 0);
    let two = SimplicialComplex::new(&["a", "b"], &[]).unwrap();
    let k = build_kgamma(&two, &parts_of(&[("a", 0), ("b", 1)], 2)).unwrap();
    assert_eq!(k.cell_counts(), vec![4, 8, 3]);
    assert_eq!(k.euler_characteristic(), -1);
    let (g, p) = k33();
    let k = build_kgamma(&g, &p).unwrap();
    assert_eq!(k.cell_counts(), vec![4, 16, 16]);
    assert_eq!(k.euler_characteristic(), 4);
    assert!(k.cages().iter().all(|c| c.edge_count() == 4));
    assert!(k.enumerate_cells(3).is_empty());
    for d in 0..=2 {
        assert_eq!(k.enumerate_cells(d).len() as u128, k.cell_counts()[d]);
    }
}

#[test]
fn build_rejects_non_flag() {
    let hollow = cycle(&["a", "b", "c"]);
    let p = parts_of(&[("a", 0), ("b", 1), ("c", 2)], 3);
    assert!(matches!(build_kgamma(&hollow, &p), Err(Error::Domain(_))));
}

#[test]
fn link_examples() {
    let (g, p) = k33();
    let k = build_kgamma(&g, &p).unwrap();
    let (lk, _) = k.vertex_link(&[0, 0]);
    let k44 = complete_bipartite(&["v0_0", "a1", "a2", "a3"], &["v0_1", "b1", "b2", "b3"]);
    assert_eq!(lk, k44);
    let edge = simplex(&["a", "b"]);
    let k = build_kgamma(&edge, &parts_of(&[("a", 0), ("b", 1)], 2)).unwrap();
    for x in all_vertices(2) {
        let (lk, _) = k.vertex_link(&x);
        assert_eq!(lk.f_vector(), vec![4, 4]);
        assert!(lk.is_connected());
    }
}

#[test]
fn npc_examples() {
    let (g, p) = k33();
    let report = build_kgamma(&g, &p).unwrap().check_npc();
    assert!(report.npc);
    assert_eq!(report.vertices.len(), 4);
    // A hollow triangle gives a view whose 3-cube filler is missing.
    let hollow = cycle(&["a", "b", "c"]);
    let p3 = parts_of(&[("a", 0), ("b", 1), ("c", 2)], 3);
    let report = KGammaView::unchecked(&hollow, &p3).unwrap().check_npc();
    assert!(!report.npc);
    assert!(report.vertices.iter().all(|v| v.empty_simplex == Some(vec!["a".into(), "b".into(), "c".into()])));
    let pt = SimplicialComplex::new(&["a"], &[]).unwrap();
    let report = build_kgamma(&pt, &parts_of(&[("a", 0)], 1)).unwrap().check_npc();
    assert!(report.npc && report.vertices.len() == 2);
}

fn mixed_orientation(view: &KGammaView) -> MorseData {
    // First half of each cage's labels up, the rest down.
    let mut m = BTreeMap::new();
    for c in view.cages() {
        let half = c.labels.len() / 2;
        for (k, l) in c.labels.iter().enumerate() {
            m.insert(l.clone(), if k < half { Direction::Up } else { Direction::Down });
        }
    }
    MorseData::new(view, m).unwrap()
}

#[test]
fn morse_examples() {
    let (g, p) = k33();
    let k = build_kgamma(&g, &p).unwrap();
    let m = mixed_orientation(&k);
    for x in all_vertices(2) {
        let (up, down) = ascending_descending_links(&k, &m, &x);
        assert_eq!(up.f_vector(), vec![4, 4]);
        assert_eq!(down.f_vector(), vec![4, 4]);
        assert!(up.is_connected() && down.is_connected());
    }
    let all_up = MorseData::uniform(&k, Direction::Up);
    let (up, down) = ascending_descending_links(&k, &all_up, &[0, 0]);
    assert_eq!(up, k.vertex_link(&[0, 0]).0);
    assert!(down.is_empty());
}

#[test]
fn morse_data_validation() {
    let (g, p) = k33();
    let k = build_kgamma(&g, &p).unwrap();
    let mut m: BTreeMap<String, Direction> = MorseData::uniform(&k, Direction::Up).directions().clone();
    m.remove("a1");
    assert!(matches!(MorseData::new(&k, m.clone()), Err(Error::Validation(_))));
    m.insert("a1".into(), Direction::Down);
    m.insert("zz".into(), Direction::Down);
    assert!(matches!(MorseData::new(&k, m), Err(Error::Validation(_))));
}

#[test]
fn rl_links_at_origin() {
    let l = simplex(&["a", "b", "c"]);
    let lp = parts_of(&[("a", 0), ("b", 1), ("c", 2)], 3);
    let (r, rp) = build_rl(&l, &lp).unwrap();
    let k = build_kgamma(&r, &rp).unwrap();
    let mut dirs = BTreeMap::new();
    for c in k.cages() {
        for lab in &c.labels {
            let down = lab.starts_with("v^") || lab.starts_with("v0_");
            dirs.insert(lab.clone(), if down { Direction::Down } else { Direction::Up });
        }
    }
    let m = MorseData::new(&k, dirs).unwrap();
    let (up, down) = ascending_descending_links(&k, &m, &[0, 0, 0]);
    let s = octahedralize(&l).unwrap();
    assert_eq!(up, s);
    assert!(find_isomorphism(&down, &octahedron(["x", "y", "z"]), None).is_some());
}

fn single_edge_factor() -> KGammaView {
    let empty = SimplicialComplex::empty();
    build_kgamma(&empty, &PartiteStructure::new(BTreeMap::new(), 1).unwrap()).unwrap()
}

#[test]
fn product_examples() {
    // Cages with two edges each way: each factor's ascending link is S⁰.
    let g1 = SimplicialComplex::new(&["a1", "a2", "a3"], &[]).unwrap();
    let k1 = build_kgamma(&g1, &parts_of(&[("a1", 0), ("a2", 0), ("a3", 0)], 1)).unwrap();
    let g2 = SimplicialComplex::new(&["b1", "b2", "b3"], &[]).unwrap();
    let k2 = build_kgamma(&g2, &parts_of(&[("b1", 0), ("b2", 0), ("b3", 0)], 1)).unwrap();
    let (m1, m2) = (mixed_orientation(&k1), mixed_orientation(&k2));
    let f1 = MorseFactor { view: &k1, morse: &m1, x: &[0] };
    let f2 = MorseFactor { view: &k2, morse: &m2, x: &[0] };
    let out = product_morse_links(f1, f2, true);
    assert_eq!(out.ascending.f_vector(), vec![4, 4]);
    assert_eq!(out.oracle_agrees, Some(true));

    let k3 = single_edge_factor();
    let m3 = MorseData::uniform(&k3, Direction::Down);
    let f3 = MorseFactor { view: &k3, morse: &m3, x: &[1] };
    let out = product_morse_links(f1, f3, true);
    assert_eq!(homological_connectivity(&out.ascending), ACYCLIC);
    assert_eq!(out.oracle_agrees, Some(true));

    let oct = octahedron(["x", "y", "z"]);
    let s8 = join(&join(&oct, &octahedron(["p", "q", "r"])), &octahedron(["u", "v", "w"]));
    assert_eq!(reduced_homology_all(&s8).nonzero_degrees(), vec![8]);
}

#[test]
fn product_oracle_seeded_cases() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for case in 0..24 {
        let mut factor = |tag: &str| {
            let n = rng.gen_range(1..=2);
            let verts: Vec<String> = (0..rng.gen_range(1..=4)).map(|i| format!("{tag}{i}")).collect();
            let pmap: BTreeMap<String, usize> = verts.iter().map(|v| (v.clone(), rng.gen_range(0..n))).collect();
            let mut edges = Vec::new();
            for a in &verts {
                for b in &verts {
                    if a < b && pmap[a] != pmap[b] && rng.gen_bool(0.6) {
                        edges.push((a.clone(), b.clone()));
                    }
                }
            }
            let g = flag_completion(&graph_from_edges(&verts, &edges));
            let view = build_kgamma(&g, &PartiteStructure::new(pmap, n).unwrap()).unwrap();
            let dirs: BTreeMap<String, Direction> = view
                .cages()
                .iter()
                .flat_map(|c| c.labels.clone())
                .map(|l| (l, if rng.gen_bool(0.5) { Direction::Up } else { Direction::Down }))
                .collect();
            let morse = MorseData::new(&view, dirs).unwrap();
            let x: Vec<u8> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
            (view, morse, x)
        };
        let (v1, m1, x1) = factor("a");
        let (v2, m2, x2) = factor(if case % 3 == 0 { "a" } else { "b" });
        let out = product_morse_links(
            MorseFactor { view: &v1, morse: &m1, x: &x1 },
            MorseFactor { view: &v2, morse: &m2, x: &x2 },
            true,
        );
        assert_eq!(out.oracle_agrees, Some(true), "case {case}");
    }
}

fn arb_partite() -> impl Strategy<Value = (SimplicialComplex, PartiteStructure)> {
    (1usize..=3, 1usize..=5, any::<u64>(), any::<u64>()).prop_map(|(n, nv, pbits, ebits)| {
        let verts: Vec<String> = (0..nv).map(|i| format!("g{i}")).collect();
        let pmap: BTreeMap<String, usize> =
            verts.iter().enumerate().map(|(i, v)| (v.clone(), (pbits >> (2 * i)) as usize % n)).collect();
        let mut edges = Vec::new();
        let mut k = 0;
        for a in &verts {
            for b in &verts {
                if a < b {
                    if pmap[a] != pmap[b] && ebits >> k & 1 == 1 {
                        edges.push((a.clone(), b.clone()));
                    }
                    k += 1;
                }
            }
        }
        (flag_completion(&graph_from_edges(&verts, &edges)), PartiteStructure::new(pmap, n).unwrap())
    })
}

proptest! {
    #[test]
    fn predicate_matches_torus_union((g, p) in arb_partite()) {
        let k = build_kgamma(&g, &p).unwrap();
        let brute: BTreeSet<ProductCell> = all_product_cells(&k).into_iter().filter(|c| in_some_torus(&k, c)).collect();
        let pred: BTreeSet<ProductCell> = all_product_cells(&k).into_iter().filter(|c| k.contains(c)).collect();
        prop_assert_eq!(&brute, &pred);
        let listed: BTreeSet<ProductCell> = (0..=k.n()).flat_map(|d| k.enumerate_cells(d)).collect();
        prop_assert_eq!(&listed, &pred);
        prop_assert_eq!(k.cell_counts()[0], 1u128 << k.n());
    }

    #[test]
    fn euler_characteristic_matches_simplex_sum((g, p) in arb_partite()) {
        let k = build_kgamma(&g, &p).unwrap();
        prop_assert_eq!(k.euler_characteristic(), chi_oracle(&g));
    }

    #[test]
    fn links_are_flag_and_partite((g, p) in arb_partite(), seed in any::<u64>()) {
        let k = build_kgamma(&g, &p).unwrap();
        let report = k.check_npc();
        prop_assert!(report.npc);
        let dirs: BTreeMap<String, Direction> = k.cages().iter().flat_map(|c| c.labels.clone()).enumerate()
            .map(|(i, l)| (l, if seed >> (i % 64) & 1 == 1 { Direction::Up } else { Direction::Down })).collect();
        let m = MorseData::new(&k, dirs).unwrap();
        for x in all_vertices(k.n()) {
            let (lk, lp) = k.vertex_link(&x);
            prop_assert!(is_flag(&lk));
            prop_assert!(lp.validate(&lk).is_ok());
            let (up, down) = ascending_descending_links(&k, &m, &x);
            prop_assert_eq!(up.num_vertices() + down.num_vertices(), lk.num_vertices());
            prop_assert!(up.vertices().iter().all(|v| down.vertex_index(v).is_none()));
        }
    }
}
