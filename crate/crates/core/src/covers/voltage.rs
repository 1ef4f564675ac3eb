use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::simplicial::{components_of, full_subcomplex_by, SimplicialComplex};

/// A graph with a permutation on every edge. Traversing `(u, v, σ)` from
/// `u` to `v` moves sheet `s` to `σ(s)`; the reverse direction uses `σ⁻¹`.
#[derive(Clone, Debug)]
pub struct VoltageGraph {
    pub names: Vec<String>,
    pub edges: Vec<(usize, usize, Permutation)>,
    pub degree: usize,
}

/// An oriented step along edge `edge`, forward when following `u → v`.
pub type Step = (usize, bool);

impl VoltageGraph {
    pub fn new(names: Vec<String>, edges: Vec<(usize, usize, Permutation)>, degree: usize) -> Result<Self> {
        for (u, v, s) in &edges {
            if *u >= names.len() || *v >= names.len() || u == v {
                return Err(Error::validation(format!("bad voltage edge ({u}, {v})")));
            }
            if s.degree() != degree {
                return Err(Error::validation(format!(
                    "voltage of degree {} on a cover of degree {degree}",
                    s.degree()
                )));
            }
        }
        Ok(VoltageGraph { names, edges, degree })
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    /// Adjacency as `(neighbour, edge index)` pairs.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.names.len()];
        for (i, (u, v, _)) in self.edges.iter().enumerate() {
            inc[*u].push((*v, i));
            inc[*v].push((*u, i));
        }
        inc
    }

    /// Voltage of a step in its direction of travel.
    pub fn step_voltage(&self, (e, forward): Step) -> Permutation {
        let s = &self.edges[e].2;
        if forward {
            s.clone()
        } else {
            s.inverse()
        }
    }

    /// Holonomy `σ_k ∘ … ∘ σ_1` of a walk given as steps.
    pub fn walk_holonomy(&self, walk: &[Step]) -> Permutation {
        walk.iter().fold(Permutation::identity(self.degree), |acc, &st| self.step_voltage(st).compose(&acc))
    }

    /// Steps along a closed vertex sequence `v0 v1 … v_{k−1}` (back to `v0`).
    pub fn cycle_steps(&self, cycle: &[usize]) -> Result<Vec<Step>> {
        let mut index = BTreeMap::new();
        for (i, (u, v, _)) in self.edges.iter().enumerate() {
            index.insert((*u, *v), (i, true));
            index.insert((*v, *u), (i, false));
        }
        (0..cycle.len())
            .map(|i| {
                let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                index
                    .get(&(a, b))
                    .copied()
                    .ok_or_else(|| Error::validation(format!("{} - {} is not an edge", self.names[a], self.names[b])))
            })
            .collect()
    }
}

/// The derived graph: vertices `(v, s)` at index `v·q + s`, and for every
/// base edge `(u, v, σ)` and sheet `s` an edge from `(u, s)` to `(v, σ(s))`.
#[derive(Clone, Debug)]
pub struct DerivedCover {
    pub degree: usize,
    pub base_names: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl DerivedCover {
    pub fn num_vertices(&self) -> usize {
        self.base_names.len() * self.degree
    }

    pub fn base_of(&self, x: usize) -> usize {
        x / self.degree
    }

    pub fn sheet_of(&self, x: usize) -> usize {
        x % self.degree
    }

    /// `name@s` with 1-based sheet.
    pub fn vertex_name(&self, x: usize) -> String {
        format!("{}@{}", self.base_names[self.base_of(x)], self.sheet_of(x) + 1)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        adjacency_from_edges(self.num_vertices(), &self.edges)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        components(&self.adjacency())
    }

    pub fn to_complex(&self) -> SimplicialComplex {
        let names: Vec<String> = (0..self.num_vertices()).map(|x| self.vertex_name(x)).collect();
        let edges: Vec<Vec<String>> =
            self.edges.iter().map(|&(a, b)| vec![names[a].clone(), names[b].clone()]).collect();
        SimplicialComplex::new(&names, &edges).expect("distinct lifted names")
    }
}

pub fn derived_cover(g: &VoltageGraph) -> DerivedCover {
    let q = g.degree;
    let mut edges = Vec::with_capacity(g.edges.len() * q);
    for (u, v, s) in &g.edges {
        for sheet in 0..q {
            edges.push((u * q + sheet, v * q + s.apply(sheet)));
        }
    }
    DerivedCover { degree: q, base_names: g.names.clone(), edges }
}

/// A 2-complex over a voltage graph: each face is a closed walk.
#[derive(Clone, Debug)]
pub struct VoltageComplex {
    pub graph: VoltageGraph,
    pub faces: Vec<Vec<Step>>,
}

#[derive(Clone, Debug)]
pub struct DerivedComplexCover {
    pub graph: DerivedCover,
    /// Lifted faces as closed vertex sequences.
    pub faces: Vec<Vec<usize>>,
}

fn step_ends(g: &VoltageGraph, (e, forward): Step) -> (usize, usize) {
    let (u, v, _) = &g.edges[e];
    if forward {
        (*u, *v)
    } else {
        (*v, *u)
    }
}

/// Lifts a 2-complex. Every face boundary must have trivial holonomy and
/// be a connected closed walk, otherwise this is a consistency error.
pub fn derived_cover_complex(x: &VoltageComplex) -> Result<DerivedComplexCover> {
    let g = &x.graph;
    let q = g.degree;
    for (i, face) in x.faces.iter().enumerate() {
        if face.is_empty() {
            return Err(Error::validation(format!("face {i} is empty")));
        }
        for k in 0..face.len() {
            if step_ends(g, face[k]).1 != step_ends(g, face[(k + 1) % face.len()]).0 {
                return Err(Error::validation(format!("face {i} is not a closed walk")));
            }
        }
        let h = g.walk_holonomy(face);
        if !h.is_identity() {
            return Err(Error::Consistency(format!("face {i} has nontrivial holonomy {h}")));
        }
    }
    let mut faces = Vec::with_capacity(x.faces.len() * q);
    for face in &x.faces {
        for sheet in 0..q {
            let mut s = sheet;
            let mut lifted = Vec::with_capacity(face.len());
            for &st in face {
                lifted.push(step_ends(g, st).0 * q + s);
                s = g.step_voltage(st).apply(s);
            }
            faces.push(lifted);
        }
    }
    Ok(DerivedComplexCover { graph: derived_cover(g), faces })
}

pub fn adjacency_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    adj
}

pub fn components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    components_of(adj)
}

/// Proper 2-colouring, or `None` when an odd cycle exists.
pub fn bipartition(adj: &[Vec<usize>]) -> Option<Vec<u8>> {
    let mut colour = vec![u8::MAX; adj.len()];
    for s in 0..adj.len() {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if colour[w] == u8::MAX {
                    colour[w] = 1 - colour[u];
                    queue.push_back(w);
                } else if colour[w] == colour[u] {
                    return None;
                }
            }
        }
    }
    Some(colour)
}

/// Exact girth by breadth-first search from every vertex; `None` for a forest.
pub fn graph_girth(adj: &[Vec<usize>]) -> Option<usize> {
    let n = adj.len();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        let mut touched = vec![root];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        for t in touched {
            dist[t] = usize::MAX;
            parent[t] = usize::MAX;
        }
        if best == 3 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Some 4-cycle `[a, b, c, d]`, found by counting 2-paths in `O(Σ deg²)`.
pub fn find_four_cycle(adj: &[Vec<usize>]) -> Option<[usize; 4]> {
    let n = adj.len();
    let mut via = vec![usize::MAX; n];
    let mut stamp = vec![usize::MAX; n];
    for v in 0..n {
        for &w in &adj[v] {
            for &x in &adj[w] {
                if x == v {
                    continue;
                }
                if stamp[x] == v {
                    if via[x] != w {
                        return Some([v, via[x], x, w]);
                    }
                } else {
                    stamp[x] = v;
                    via[x] = w;
                }
            }
        }
    }
    None
}

/// Girth information that stays cheap on large graphs: above `exact_limit`
/// vertices only the bipartite, no-4-cycle test is run, which is enough to
/// decide `girth ≥ 6` for bipartite graphs.
#[derive(Clone, Debug, Serialize)]
pub struct GirthReport {
    pub vertices: usize,
    pub bipartite: bool,
    /// Exact girth when computed, `None` for forests or when skipped.
    pub girth: Option<usize>,
    pub exact: bool,
    pub at_least_six: bool,
    pub four_cycle: Option<Vec<String>>,
}

pub fn girth_report(adj: &[Vec<usize>], name: impl Fn(usize) -> String, exact_limit: usize) -> GirthReport {
    let bipartite = bipartition(adj).is_some();
    let four = find_four_cycle(adj);
    let four_cycle = four.map(|c| c.iter().map(|&x| name(x)).collect());
    if adj.len() <= exact_limit {
        let girth = graph_girth(adj);
        GirthReport {
            vertices: adj.len(),
            bipartite,
            girth,
            exact: true,
            at_least_six: girth.is_none_or(|g| g >= 6),
            four_cycle,
        }
    } else {
        GirthReport {
            vertices: adj.len(),
            bipartite,
            girth: None,
            exact: false,
            at_least_six: bipartite && four.is_none(),
            four_cycle,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeableReport {
    pub sizeable: bool,
    pub bipartite: bool,
    pub girth_at_least_six: bool,
    pub four_cycle: Option<Vec<String>>,
    /// A pair `(a, b)` with `a ∈ A^s`, `b ∈ B^t` in different components
    /// of `Γ[A^s ∪ B^t]` for some signs `s, t`.
    pub separated_pair: Option<(String, String)>,
}

/// Checks that a bipartite graph `A ⊔ B` with `A = A⁺ ⊔ A⁻`, `B = B⁺ ⊔ B⁻`
/// has girth at least 6 and that `Γ[A^± ∪ B^±]` connects each opposite pair.
/// The edges of `g` must be 1-dimensional simplices of a graph.
pub fn sizeable_check(
    g: &SimplicialComplex,
    a_plus: &BTreeSet<String>,
    a_minus: &BTreeSet<String>,
    b_plus: &BTreeSet<String>,
    b_minus: &BTreeSet<String>,
) -> Result<SizeableReport> {
    if g.dim() > 1 {
        return Err(Error::domain("sizeable check needs a graph"));
    }
    let sets = [a_plus, a_minus, b_plus, b_minus];
    let total = g.num_vertices();
    let mut seen = BTreeSet::new();
    for s in sets {
        for v in s.iter() {
            if g.vertex_index(v).is_none() {
                return Err(Error::domain(format!("{v} is not a vertex")));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::domain(format!("{v} appears in two classes")));
            }
        }
    }
    if seen.len() != total {
        return Err(Error::domain("the four classes must cover the vertex set"));
    }
    if a_minus.is_empty() || b_minus.is_empty() || a_plus.len() < 2 || b_plus.len() < 2 {
        return Err(Error::domain("need |A⁺|, |B⁺| ≥ 2 and A⁻, B⁻ nonempty"));
    }
    let side_a: BTreeSet<&String> = a_plus.iter().chain(a_minus.iter()).collect();
    for e in g.edges() {
        let (x, y) = (g.vertex_name(e.0), g.vertex_name(e.1));
        if side_a.contains(&x.to_string()) == side_a.contains(&y.to_string()) {
            return Err(Error::domain(format!("edge {x} - {y} does not cross A | B")));
        }
    }
    let adj = g.adjacency();
    let girth = girth_report(&adj, |x| g.vertex_name(x).to_string(), 20_000);
    let mut separated_pair = None;
    for (a, b) in [(a_plus, b_plus), (a_plus, b_minus), (a_minus, b_plus), (a_minus, b_minus)] {
        let sub = full_subcomplex_by(g, |v| a.contains(v) || b.contains(v));
        let comp_of: BTreeMap<String, usize> = sub
            .components()
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(|&v| (sub.vertex_name(v).to_string(), i)).collect::<Vec<_>>())
            .collect();
        if let Some(pair) =
            a.iter().flat_map(|x| b.iter().map(move |y| (x, y))).find(|(x, y)| comp_of[*x] != comp_of[*y])
        {
            separated_pair.get_or_insert((pair.0.clone(), pair.1.clone()));
        }
    }
    Ok(SizeableReport {
        sizeable: girth.bipartite && girth.at_least_six && separated_pair.is_none(),
        bipartite: girth.bipartite,
        girth_at_least_six: girth.at_least_six,
        four_cycle: girth.four_cycle,
        separated_pair,
    })
}
