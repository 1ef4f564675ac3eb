use std::collections::BTreeMap;

use super::complex::SimplicialComplex;

/// Per-vertex invariant: number of simplices of each dimension containing it.
fn vertex_profile(x: &SimplicialComplex) -> Vec<Vec<usize>> {
    let d = (x.dim() + 1).max(0) as usize;
    let mut prof = vec![vec![0usize; d]; x.num_vertices()];
    for s in x.simplices() {
        for &v in s {
            prof[v][s.len() - 1] += 1;
        }
    }
    prof
}

/// Checks that `map` (names of `a` to names of `b`) is a simplicial isomorphism.
pub fn is_isomorphism(a: &SimplicialComplex, b: &SimplicialComplex, map: &BTreeMap<String, String>) -> bool {
    if a.num_vertices() != b.num_vertices() || a.num_simplices() != b.num_simplices() {
        return false;
    }
    let mut image = Vec::with_capacity(a.num_vertices());
    for v in a.vertices() {
        match map.get(v).and_then(|w| b.vertex_index(w)) {
            Some(i) => image.push(i),
            None => return false,
        }
    }
    let mut seen = image.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != image.len() {
        return false;
    }
    a.simplices().all(|s| {
        let mut t: Vec<usize> = s.iter().map(|&v| image[v]).collect();
        t.sort_unstable();
        b.contains(&t)
    })
}

/// Searches for a simplicial isomorphism `a → b`. A candidate `hint` is
/// verified first; otherwise a backtracking search matches vertices with
/// equal profiles while preserving adjacency, and each complete assignment
/// is verified on all simplices.
pub fn find_isomorphism(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    hint: Option<&BTreeMap<String, String>>,
) -> Option<BTreeMap<String, String>> {
    if a.f_vector() != b.f_vector() || a.num_vertices() != b.num_vertices() {
        return None;
    }
    if let Some(h) = hint {
        if is_isomorphism(a, b, h) {
            return Some(h.clone());
        }
    }
    let pa = vertex_profile(a);
    let pb = vertex_profile(b);
    let adj_a = a.adjacency();
    let adj_b = b.adjacency();
    // Order vertices of `a` so each one (after the first of its component)
    // has an already-placed neighbour.
    let mut order = Vec::new();
    let mut placed = vec![false; a.num_vertices()];
    for comp in a.components() {
        let mut queue = std::collections::VecDeque::from([comp[0]]);
        placed[comp[0]] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in &adj_a[u] {
                if !placed[w] {
                    placed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut assign = vec![usize::MAX; a.num_vertices()];
    let mut used = vec![false; b.num_vertices()];
    let mut nodes = 0usize;
    let ok = backtrack(0, &order, &pa, &pb, &adj_a, &adj_b, &mut assign, &mut used, a, b, &mut nodes);
    ok.then(|| {
        a.vertices().iter().enumerate().map(|(i, v)| (v.clone(), b.vertex_name(assign[i]).to_string())).collect()
    })
}

const NODE_LIMIT: usize = 5_000_000;

#[allow(clippy::too_many_arguments)]
fn backtrack(
    depth: usize,
    order: &[usize],
    pa: &[Vec<usize>],
    pb: &[Vec<usize>],
    adj_a: &[Vec<usize>],
    adj_b: &[Vec<usize>],
    assign: &mut [usize],
    used: &mut [bool],
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    nodes: &mut usize,
) -> bool {
    if depth == order.len() {
        let map: BTreeMap<String, String> =
            (0..assign.len()).map(|i| (a.vertex_name(i).to_string(), b.vertex_name(assign[i]).to_string())).collect();
        return is_isomorphism(a, b, &map);
    }
    *nodes += 1;
    if *nodes > NODE_LIMIT {
        return false;
    }
    let u = order[depth];
    // Restrict candidates to neighbours of an already-mapped neighbour's image.
    let anchor = adj_a[u].iter().find(|&&w| assign[w] != usize::MAX).copied();
    let cands: Vec<usize> = match anchor {
        Some(w) => adj_b[assign[w]].clone(),
        None => (0..b.num_vertices()).collect(),
    };
    for c in cands {
        if used[c] || pa[u] != pb[c] {
            continue;
        }
        let consistent =
            adj_a[u].iter().all(|&w| assign[w] == usize::MAX || adj_b[c].binary_search(&assign[w]).is_ok())
                && adj_b[c].iter().filter(|&&z| used[z]).count()
                    == adj_a[u].iter().filter(|&&w| assign[w] != usize::MAX).count();
        if !consistent {
            continue;
        }
        assign[u] = c;
        used[c] = true;
        if backtrack(depth + 1, order, pa, pb, adj_a, adj_b, assign, used, a, b, nodes) {
            return true;
        }
        assign[u] = usize::MAX;
        used[c] = false;
    }
    false
}
