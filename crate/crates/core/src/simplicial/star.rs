use std::collections::BTreeSet;

use serde::Serialize;

use super::complex::{Simplex, SimplicialComplex};
use super::ops::union;

/// One step of a star ordering: the intersection of the new vertex's star
/// with the union of the earlier stars.
#[derive(Clone, Debug, Serialize)]
pub struct StarStep {
    pub vertex: String,
    #[serde(skip)]
    pub intersection: SimplicialComplex,
    pub intersection_vertices: Vec<String>,
    pub connected: bool,
    /// 4-cycles covering every edge of the intersection, each meeting the
    /// union of the previous ones; `None` when no such family was found.
    pub four_cycles: Option<Vec<[String; 4]>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StarOrderingCertificate {
    pub ordering: Vec<String>,
    pub steps: Vec<StarStep>,
    pub valid: bool,
    /// Vertices left over when no continuation existed, from the first start tried.
    pub unorderable_residue: Vec<String>,
}

fn closed_star(x: &SimplicialComplex, v: usize) -> BTreeSet<Simplex> {
    x.simplices().filter(|t| x.contains(&union(t, &[v]))).cloned().collect()
}

fn subcomplex_of(x: &SimplicialComplex, set: &BTreeSet<Simplex>) -> SimplicialComplex {
    x.filter(|t| set.contains(t))
}

/// Searches for an ordering `v₁, …, v_q` of `subset` such that each
/// `St(v_m) ∩ ⋃_{l<m} St(v_l)` is nonempty and connected. Starts are tried in
/// name order and each is extended greedily by the least admissible vertex.
pub fn verify_star_ordering<S: AsRef<str>>(x: &SimplicialComplex, subset: &[S]) -> StarOrderingCertificate {
    let mut idx: Vec<usize> = subset.iter().filter_map(|s| x.vertex_index(s.as_ref())).collect();
    idx.sort_unstable();
    idx.dedup();
    let stars: Vec<BTreeSet<Simplex>> = idx.iter().map(|&v| closed_star(x, v)).collect();
    let mut first_residue = None;
    for start in 0..idx.len() {
        let mut order = vec![start];
        let mut union_set = stars[start].clone();
        let mut steps = Vec::new();
        let mut remaining: Vec<usize> = (0..idx.len()).filter(|&i| i != start).collect();
        while !remaining.is_empty() {
            let next = remaining.iter().enumerate().find_map(|(pos, &cand)| {
                let inter: BTreeSet<Simplex> = stars[cand].intersection(&union_set).cloned().collect();
                let sub = subcomplex_of(x, &inter);
                (!sub.is_empty() && sub.is_connected()).then_some((pos, cand, sub))
            });
            let Some((pos, cand, sub)) = next else { break };
            remaining.remove(pos);
            union_set.extend(stars[cand].iter().cloned());
            order.push(cand);
            steps.push(StarStep {
                vertex: x.vertex_name(idx[cand]).to_string(),
                intersection_vertices: sub.vertices().to_vec(),
                connected: true,
                four_cycles: four_cycle_cover(&sub),
                intersection: sub,
            });
        }
        if remaining.is_empty() {
            return StarOrderingCertificate {
                ordering: order.iter().map(|&i| x.vertex_name(idx[i]).to_string()).collect(),
                steps,
                valid: true,
                unorderable_residue: Vec::new(),
            };
        }
        if first_residue.is_none() {
            first_residue = Some(remaining.iter().map(|&i| x.vertex_name(idx[i]).to_string()).collect());
        }
    }
    StarOrderingCertificate {
        ordering: Vec::new(),
        steps: Vec::new(),
        valid: idx.is_empty(),
        unorderable_residue: first_residue.unwrap_or_default(),
    }
}

/// Greedy cover of all edges of `g` by 4-cycles, each new cycle sharing a
/// vertex with the earlier ones.
pub fn four_cycle_cover(g: &SimplicialComplex) -> Option<Vec<[String; 4]>> {
    let adj = g.adjacency();
    let edges = g.edges();
    if edges.is_empty() {
        return None;
    }
    let mut covered_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut covered_vertices: BTreeSet<usize> = BTreeSet::new();
    let mut cycles = Vec::new();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    while covered_edges.len() < edges.len() {
        let mut found = None;
        'search: for &(a, b) in edges.iter().filter(|e| !covered_edges.contains(e)) {
            for &c in adj[b].iter().filter(|&&c| c != a) {
                for &d in adj[a].iter().filter(|&&d| d != b && d != c) {
                    if adj[c].binary_search(&d).is_err() {
                        continue;
                    }
                    let cyc = [a, b, c, d];
                    if cycles.is_empty() || cyc.iter().any(|v| covered_vertices.contains(v)) {
                        found = Some(cyc);
                        break 'search;
                    }
                }
            }
        }
        let cyc = found?;
        for i in 0..4 {
            covered_edges.insert(key(cyc[i], cyc[(i + 1) % 4]));
            covered_vertices.insert(cyc[i]);
        }
        cycles.push(cyc);
    }
    Some(cycles.into_iter().map(|c| c.map(|v| g.vertex_name(v).to_string())).collect())
}
