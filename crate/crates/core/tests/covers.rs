use std::collections::{BTreeMap, BTreeSet, VecDeque};

use kgamma::covers::*;
use kgamma::cubical::{build_kgamma, Direction, KGammaView, MorseData};
use kgamma::homology::reduced_homology_all;
use kgamma::simplicial::standard::{complete_bipartite, cycle, octahedron};
use kgamma::simplicial::{
    build_rl, find_isomorphism, graph_from_edges, PartiteStructure, SimplicialComplex, CONE_VERTEX_NAMES,
};
use kgamma::Error;
use proptest::prelude::*;

fn parts_of(pairs: &[(&str, usize)], n: usize) -> PartiteStructure {
    PartiteStructure::new(pairs.iter().map(|&(v, p)| (v.to_string(), p)).collect(), n).unwrap()
}

fn k33_view() -> KGammaView {
    let g = complete_bipartite(&["a1", "a2", "a3"], &["b1", "b2", "b3"]);
    let p = parts_of(&[("a1", 0), ("a2", 0), ("a3", 0), ("b1", 1), ("b2", 1), ("b3", 1)], 2);
    build_kgamma(&g, &p).unwrap()
}

fn octahedron_view() -> KGammaView {
    let o = octahedron(["x", "y", "z"]);
    let p = parts_of(&[("x+", 0), ("x-", 0), ("y+", 1), ("y-", 1), ("z+", 2), ("z-", 2)], 3);
    build_kgamma(&o, &p).unwrap()
}

fn mixed_orientation(view: &KGammaView) -> MorseData {
    let mut m = BTreeMap::new();
    for c in view.cages() {
        let half = c.labels.len() / 2;
        for (k, l) in c.labels.iter().enumerate() {
            m.insert(l.clone(), if k < half { Direction::Up } else { Direction::Down });
        }
    }
    MorseData::new(view, m).unwrap()
}

// Composition on raw image arrays: (a∘b)(x) = a(b(x)).
fn comp(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn inv(a: &[usize]) -> Vec<usize> {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x] = i;
    }
    r
}

fn power(a: &[usize], e: u64) -> Vec<usize> {
    (0..e).fold((0..a.len()).collect(), |acc, _| comp(a, &acc))
}

fn orbit_count(a: &[usize]) -> usize {
    let mut seen = vec![false; a.len()];
    let mut n = 0;
    for s in 0..a.len() {
        if !seen[s] {
            n += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = a[x];
            }
        }
    }
    n
}

// Girth oracle: for each edge, shortest path between its ends avoiding it.
fn girth_oracle(n: usize, edges: &[(usize, usize)]) -> Option<usize> {
    let mut best = None;
    for (k, &(u, v)) in edges.iter().enumerate() {
        let mut adj = vec![Vec::new(); n];
        for (m, &(a, b)) in edges.iter().enumerate() {
            if m != k {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut dist = vec![usize::MAX; n];
        dist[u] = 0;
        let mut q = VecDeque::from([u]);
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        if dist[v] != usize::MAX {
            let c = dist[v] + 1;
            best = Some(best.map_or(c, |b: usize| b.min(c)));
        }
    }
    best
}

#[test]
fn rep_for_three_by_three() {
    let rep = make_branching_rep(3, 3, None).unwrap();
    assert_eq!((rep.p, rep.r), (5, 2));
    assert_eq!(rep.lambda.to_string(), "(1 2 3 4 5)");
    assert_eq!(rep.mu.to_string(), "(2 3 5 4)");
    assert!(rep.is_consistent());
    assert_eq!(make_branching_rep(2, 2, None).unwrap().p, 5);
}

#[test]
fn rep_rejects_bad_primes() {
    assert!(matches!(make_branching_rep(3, 1, Some(3)), Err(Error::Domain(_))));
    assert!(matches!(make_branching_rep(1, 1, Some(9)), Err(Error::Domain(_))));
    assert!(make_branching_rep(3, 3, Some(5)).is_ok());
}

#[test]
fn primitive_roots_match_brute_force() {
    for p in [3u64, 5, 7, 11, 13, 101, 401] {
        let order = |g: u64| (1..p).find(|&k| (0..k).fold(1, |a, _| a * g % p) == 1).unwrap();
        let want = (2..p).find(|&g| order(g) == p - 1).unwrap();
        assert_eq!(least_primitive_root(p), want);
    }
}

#[test]
fn commutators_are_p_cycles() {
    for p in [5u64, 7, 11] {
        let rep = make_branching_rep(3, 3, Some(p)).unwrap();
        let table = check_commutator_cycles(&rep);
        assert_eq!(table.entries.len() as u64, (p - 1) * (p - 1));
        // μ has order p − 1, so only the last row degenerates.
        let last = p as i64 - 1;
        assert_eq!(table.failures, (1..=last).map(|m| (m, last)).collect::<Vec<_>>());
        assert!(!table.all_p_cycles);
        let n = p as usize;
        let lam: Vec<usize> = (0..n).map(|y| (y + 1) % n).collect();
        let mu: Vec<usize> = (0..n).map(|y| (y as u64 * rep.r % p) as usize).collect();
        for e in &table.entries {
            let a = power(&lam, e.m as u64);
            let b = power(&mu, e.n as u64);
            let c = comp(&comp(&a, &b), &comp(&inv(&a), &inv(&b)));
            if e.n == last {
                assert!(e.degenerate && orbit_count(&c) == n);
            } else {
                assert_eq!(orbit_count(&c), 1, "p={p} m={} n={}", e.m, e.n);
            }
            let rn = (0..e.n).fold(1i64, |x, _| x * rep.r as i64 % p as i64);
            let exp = ((1 - rn) * e.m).rem_euclid(p as i64) as u64;
            assert_eq!(c, power(&lam, exp));
            assert_eq!(e.exponent, Some(exp));
            assert_eq!((e.opposite_exponent + exp) % p, 0);
        }
    }
}

#[test]
fn first_commutator_at_five_is_lambda_inverse() {
    let rep = make_branching_rep(3, 3, None).unwrap();
    let e = commutator_entry(&rep, 1, 1);
    assert_eq!(e.exponent, Some(4));
    assert!(e.p_cycle);
    let d = commutator_entry(&rep, 2, 0);
    assert!(d.degenerate && !d.p_cycle);
}

#[test]
fn identity_voltages_give_disjoint_copies() {
    let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let id = Permutation::identity(3);
    let g = VoltageGraph::new(names, vec![(0, 1, id.clone()), (1, 2, id.clone()), (2, 0, id)], 3).unwrap();
    let c = derived_cover(&g);
    assert_eq!(c.num_vertices(), 9);
    assert_eq!(c.components().len(), 3);
}

#[test]
fn nontrivial_face_is_inconsistent() {
    let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let t = Permutation::from_cycles(2, &[vec![0, 1]]).unwrap();
    let id = Permutation::identity(2);
    let g = VoltageGraph::new(names, vec![(0, 1, t.clone()), (1, 2, id.clone()), (2, 0, id.clone())], 2).unwrap();
    let x = VoltageComplex { graph: g.clone(), faces: vec![vec![(0, true), (1, true), (2, true)]] };
    assert!(matches!(derived_cover_complex(&x), Err(Error::Consistency(_))));
    let g2 = VoltageGraph::new(g.names.clone(), vec![(0, 1, t.clone()), (1, 2, t), (2, 0, id)], 2).unwrap();
    let x2 = VoltageComplex { graph: g2, faces: vec![vec![(0, true), (1, true), (2, true)]] };
    let lifted = derived_cover_complex(&x2).unwrap();
    assert_eq!(lifted.faces.len(), 2);
    let v: BTreeSet<usize> = lifted.faces.iter().flatten().copied().collect();
    assert_eq!(v.len(), 6);
}

#[test]
fn girth_examples() {
    let k44 = complete_bipartite(&["a", "b", "c", "d"], &["w", "x", "y", "z"]);
    assert_eq!(graph_girth(&k44.adjacency()), Some(4));
    assert!(find_four_cycle(&k44.adjacency()).is_some());
    let tree = graph_from_edges(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("c", "d")]);
    assert_eq!(graph_girth(&tree.adjacency()), None);
    let c7 = cycle(&["1", "2", "3", "4", "5", "6", "7"]);
    assert_eq!(graph_girth(&c7.adjacency()), Some(7));
    assert!(bipartition(&c7.adjacency()).is_none());
}

fn set(v: &[&str]) -> BTreeSet<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn sizeable_branched_link() {
    let view = k33_view();
    let rep = make_branching_rep(3, 3, None).unwrap();
    let b = branched_link_2d(&view, &rep).unwrap();
    let g = b.cover_complex();
    let lifts = |labels: &[&str]| -> BTreeSet<String> {
        labels.iter().flat_map(|l| (1..=5).map(move |s| format!("{l}@{s}"))).collect()
    };
    let r = sizeable_check(
        &g,
        &lifts(&["v0_0", "a1"]),
        &lifts(&["a2", "a3"]),
        &lifts(&["v0_1", "b1"]),
        &lifts(&["b2", "b3"]),
    )
    .unwrap();
    assert!(r.sizeable, "{r:?}");
}

#[test]
fn sizeable_failures() {
    let k44 = complete_bipartite(&["a", "b", "c", "d"], &["w", "x", "y", "z"]);
    let r = sizeable_check(&k44, &set(&["a", "b"]), &set(&["c", "d"]), &set(&["w", "x"]), &set(&["y", "z"])).unwrap();
    assert!(!r.sizeable);
    assert_eq!(r.four_cycle.unwrap().len(), 4);

    let mut edges = Vec::new();
    for base in ["p", "q"] {
        for k in 0..6 {
            edges.push((format!("{base}{k}"), format!("{base}{}", (k + 1) % 6)));
        }
    }
    let names: Vec<String> = ["p", "q"].iter().flat_map(|b| (0..6).map(move |k| format!("{b}{k}"))).collect();
    let e: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let n: Vec<&str> = names.iter().map(String::as_str).collect();
    let g = graph_from_edges(&n, &e);
    let r = sizeable_check(
        &g,
        &set(&["p0", "q0", "p2"]),
        &set(&["p4", "q2", "q4"]),
        &set(&["p1", "q1", "p3"]),
        &set(&["p5", "q3", "q5"]),
    )
    .unwrap();
    assert!(r.girth_at_least_six && !r.sizeable);
    assert!(r.separated_pair.is_some());

    assert!(matches!(
        sizeable_check(&k44, &set(&["a", "b"]), &set(&["c"]), &set(&["w", "x"]), &set(&["y", "z"])),
        Err(Error::Domain(_))
    ));
}

#[test]
fn branch_link_voltages() {
    let view = k33_view();
    let rep = make_branching_rep(3, 3, None).unwrap();
    let lv = link_voltage_assignment(&view, &rep).unwrap();
    assert_eq!(lv.squares, 16);
    assert!(lv.pentagon_ok());
    let g = &lv.graph;
    let idx = |n: &str| g.names.iter().position(|x| x == n).unwrap();
    let base = g.edges.iter().find(|(a, b, _)| *a == idx("v0_0") && *b == idx("v0_1")).unwrap();
    assert!(base.2.is_identity());
    for (k, a) in ["a1", "a2", "a3"].iter().enumerate() {
        for (l, b) in ["b1", "b2", "b3"].iter().enumerate() {
            let cyc = [idx("v0_0"), idx("v0_1"), idx(a), idx(b)];
            let h = g.walk_holonomy(&g.cycle_steps(&cyc).unwrap());
            let want = Permutation::commutator(&rep.lambda.pow(-(k as i64 + 1)), &rep.mu.pow(-(l as i64 + 1)));
            assert_eq!(h, want);
            assert!(h.is_full_cycle());
        }
    }
}

#[test]
fn planar_branched_link() {
    let view = k33_view();
    let rep = make_branching_rep(3, 3, None).unwrap();
    let b = branched_link_2d(&view, &rep).unwrap();
    assert_eq!((b.vertices, b.edges, b.components), (40, 80, 1));
    assert!(b.girth.bipartite && b.girth.girth.unwrap() >= 6);
    assert_eq!(b.four_cycles.len(), 36);
    for c in &b.four_cycles {
        assert!(c.consistent());
        assert_eq!(c.found_lengths, vec![20]);
    }
    let k44 = complete_bipartite(&["v0_0", "a1", "a2", "a3"], &["v0_1", "b1", "b2", "b3"]);
    assert_eq!(b.unchanged.len(), 3);
    for u in &b.unchanged {
        assert!(find_isomorphism(&u.link, &k44, None).is_some(), "{}", u.vertex);
    }
    let cover = b.cover_complex();
    let edges: Vec<(usize, usize)> = cover.edges();
    assert_eq!(girth_oracle(cover.num_vertices(), &edges), b.girth.girth);
}

#[test]
fn planar_morse_links() {
    let view = k33_view();
    let morse = mixed_orientation(&view);
    let setting = BranchSetting::Planar(make_branching_rep(3, 3, None).unwrap());
    for x in [[0u8, 1], [1, 0], [1, 1]] {
        let l = branched_morse_links(&view, &morse, &setting, &x).unwrap();
        assert!(!l.branched);
        for c in [&l.lifts[0].ascending, &l.lifts[0].descending] {
            assert!(find_isomorphism(c, &cycle(&["1", "2", "3", "4"]), None).is_some());
        }
    }
    let l = branched_morse_links(&view, &morse, &setting, &[0, 0]).unwrap();
    assert!(l.branched);
    assert_eq!(l.lifts.len(), 1);
    let names: Vec<String> = (0..20).map(|i| i.to_string()).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    for c in [&l.lifts[0].ascending, &l.lifts[0].descending] {
        assert!(find_isomorphism(c, &cycle(&names), None).is_some());
    }
}

#[test]
fn spatial_certificate_on_octahedron() {
    let view = octahedron_view();
    let c = branch3d_certificate(&view, [Some(5); 3]).unwrap();
    assert!(c.granted, "{:?}", c.witness);
    assert_eq!(c.parameters.q, 125);
    assert_eq!(c.checks.len(), 6);
    for t in &c.checks {
        assert_eq!(t.mode, "product");
        assert!(t.girth.exact && t.girth.girth.unwrap() >= 6);
        assert_eq!((t.components_per_cycle, t.cycle_length), (Some(25), Some(20)));
        assert!(t.projections_trivial);
    }
    let json = serde_json::to_value(&c).unwrap();
    assert_eq!(json["kind"], "z3free");
    assert_eq!(json["parameters"]["q12"], 5);
}

#[test]
fn spatial_rejects_empty_part() {
    let g = complete_bipartite(&["a"], &["b"]);
    let p = parts_of(&[("a", 0), ("b", 1)], 3);
    let view = build_kgamma(&g, &p).unwrap();
    assert!(matches!(branch3d_certificate(&view, [None; 3]), Err(Error::Domain(_))));
}

#[test]
fn spatial_reduced_mode_agrees_with_product() {
    // Large primes push the product fiber past the materialization bound.
    let view = octahedron_view();
    let c = branch3d_certificate(&view, [Some(101), Some(5), Some(103)]).unwrap();
    assert!(c.granted, "{:?}", c.witness);
    for t in &c.checks {
        let q = [101usize, 5, 103];
        let k = ["D", "B", "C"].iter().position(|n| *n == t.vertex_type).unwrap();
        let others: usize = q.iter().product::<usize>() / q[k];
        assert_eq!(t.components_per_cycle, Some(others as u128));
        assert_eq!(t.cycle_length, Some(4 * q[k]));
    }
}

fn rl_triangle() -> KGammaView {
    let l = kgamma::simplicial::standard::simplex(&["a", "b", "c"]);
    let p = parts_of(&[("a", 0), ("b", 1), ("c", 2)], 3);
    let (r, rp) = build_rl(&l, &p).unwrap();
    build_kgamma(&r, &rp).unwrap()
}

// Octahedral vertices up; cone vertices and base labels down.
fn rl_orientation(view: &KGammaView) -> MorseData {
    let mut m = BTreeMap::new();
    for c in view.cages() {
        for (k, l) in c.labels.iter().enumerate() {
            let down = k == 0 || CONE_VERTEX_NAMES.contains(&l.as_str());
            m.insert(l.clone(), if down { Direction::Down } else { Direction::Up });
        }
    }
    MorseData::new(view, m).unwrap()
}

#[test]
fn spatial_morse_links() {
    let view = rl_triangle();
    let morse = rl_orientation(&view);
    let setting = BranchSetting::Spatial(SpatialBranching::new(&view, [None; 3]).unwrap());
    for x in [[0u8, 0, 0], [1, 1, 1]] {
        let l = branched_morse_links(&view, &morse, &setting, &x).unwrap();
        assert_eq!(l.vertex_type, "A");
        let (a, d) = kgamma::cubical::ascending_descending_links(&view, &morse, &x);
        assert_eq!((&l.lifts[0].ascending, &l.lifts[0].descending), (&a, &d));
    }
    for x in branch_vertices() {
        let l = branched_morse_links(&view, &morse, &setting, &x).unwrap();
        assert_eq!(l.multiplicity, 25);
        for lift in &l.lifts {
            for c in [&lift.ascending, &lift.descending] {
                let h = reduced_homology_all(c);
                assert!(h.betti(0) == 0 && h.betti(1) == 0 && h.torsion(1).is_empty(), "{:?} {}", x, h.summary());
            }
        }
    }
}

// Projecting the lifted link to the base link is simplicial, and over each
// link simplex avoiding the deleted direction the total preimage has size q.
#[test]
fn lifted_links_cover_the_base_link() {
    let view = octahedron_view();
    let sb = SpatialBranching::new(&view, [Some(5); 3]).unwrap();
    let setting = BranchSetting::Spatial(sb.clone());
    for x in branch_vertices() {
        let (base, parts) = view.vertex_link(&x);
        let k = branch_pair(&x).unwrap();
        let deleted = 3 - PAIRS[k].0 - PAIRS[k].1;
        let links = lifted_vertex_links(&view, &setting, &x).unwrap();
        assert_eq!(links.len(), 25);
        let mut count: BTreeMap<Vec<String>, usize> = BTreeMap::new();
        for l in &links {
            for s in l.simplices() {
                let mut img: Vec<String> =
                    l.names(s).iter().map(|n| n.split('@').next().unwrap().to_string()).collect();
                img.sort();
                assert!(base.contains_names(&img), "{img:?}");
                *count.entry(img).or_default() += 1;
            }
        }
        for s in base.simplices() {
            let names = base.names(s);
            if names.iter().all(|n| parts.part(n) != Some(deleted)) {
                assert_eq!(count.get(&names), Some(&125), "{names:?}");
            }
        }
    }
}

fn cover_oracle_components(n: usize, edges: &[(usize, usize, Vec<usize>)], q: usize) -> usize {
    let mut adj = vec![Vec::new(); n * q];
    for (u, v, s) in edges {
        for sh in 0..q {
            adj[u * q + sh].push(v * q + s[sh]);
            adj[v * q + s[sh]].push(u * q + sh);
        }
    }
    let mut seen = vec![false; n * q];
    let mut c = 0;
    for s in 0..n * q {
        if !seen[s] {
            c += 1;
            seen[s] = true;
            let mut st = vec![s];
            while let Some(x) = st.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        st.push(y);
                    }
                }
            }
        }
    }
    c
}

fn perm_strategy(q: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..q).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn cycle_preimage_components_equal_orbits(
        (q, perms) in (2usize..7).prop_flat_map(|q| (Just(q), prop::collection::vec(perm_strategy(q), 3..8)))
    ) {
        let n = perms.len();
        let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        let edges: Vec<(usize, usize, Vec<usize>)> =
            perms.iter().enumerate().map(|(i, p)| (i, (i + 1) % n, p.clone())).collect();
        let vg = VoltageGraph::new(
            names,
            edges.iter().map(|(a, b, p)| (*a, *b, Permutation::from_images(p.clone()).unwrap())).collect(),
            q,
        ).unwrap();
        let cyc: Vec<usize> = (0..n).collect();
        let h = vg.walk_holonomy(&vg.cycle_steps(&cyc).unwrap());
        let cover = derived_cover(&vg);
        prop_assert_eq!(cover.components().len(), h.cycle_type().len());
        prop_assert_eq!(cover_oracle_components(n, &edges, q), h.cycle_type().len());
        let hol = perms.iter().fold((0..q).collect::<Vec<_>>(), |acc, p| comp(p, &acc));
        prop_assert_eq!(h.images(), &hol[..]);
    }

    #[test]
    fn covers_of_bipartite_graphs_stay_bipartite(
        (q, raw) in (1usize..5).prop_flat_map(|q| (Just(q), prop::collection::vec((0usize..4, 0usize..4, perm_strategy(q)), 1..12)))
    ) {
        let mut seen = BTreeSet::new();
        let edges: Vec<(usize, usize, Permutation)> = raw
            .into_iter()
            .filter(|(a, b, _)| seen.insert((*a, *b)))
            .map(|(a, b, p)| (a, 4 + b, Permutation::from_images(p).unwrap()))
            .collect();
        let names = (0..8).map(|i| i.to_string()).collect();
        let cover = derived_cover(&VoltageGraph::new(names, edges, q).unwrap());
        let adj = cover.adjacency();
        prop_assert!(bipartition(&adj).is_some());
        if let Some(g) = graph_girth(&adj) {
            prop_assert_eq!(g % 2, 0);
        }
    }

    #[test]
    fn girth_matches_oracle(edges in prop::collection::btree_set((0usize..9, 0usize..9), 0..20)) {
        let edges: Vec<(usize, usize)> = edges.into_iter().filter(|(a, b)| a < b).collect();
        let adj = adjacency_from_edges(9, &edges);
        prop_assert_eq!(graph_girth(&adj), girth_oracle(9, &edges));
        let has4 = find_four_cycle(&adj).is_some();
        if let Some(g) = girth_oracle(9, &edges) {
            if g == 4 { prop_assert!(has4); }
        } else {
            prop_assert!(!has4);
        }
    }
}

#[test]
fn graph_helpers_ignore_names() {
    let g: SimplicialComplex = cycle(&["a", "b", "c", "d", "e", "f"]);
    assert_eq!(graph_girth(&g.adjacency()), Some(6));
}
