use super::perm::Permutation;
use super::rep::BranchingRep;
use crate::cubical::{Coord, KGammaView, ProductCell};
use crate::error::{Error, Result};

/// Whether the cell at `x` that is an edge with label `e` in each listed
/// coordinate `(i, e)` lies in `K_Γ`.
pub(crate) fn cell_at(view: &KGammaView, x: &[u8], edges: &[(usize, usize)]) -> bool {
    let mut coords: Vec<Coord> = x.iter().map(|&b| Coord::Vertex(b)).collect();
    for &(i, e) in edges {
        coords[i] = Coord::Edge(e);
    }
    view.contains(&ProductCell { coords })
}

/// The bipartite subgraph of `Lk(x)` spanned by directions `i` and `j`.
/// Vertices of direction `i` come first; edges run from side 0 to side 1.
#[derive(Clone, Debug)]
pub(crate) struct LinkGraph {
    pub dirs: [usize; 2],
    pub names: Vec<String>,
    /// Side (0 or 1) and label index of each vertex.
    pub ends: Vec<(usize, usize)>,
    pub edges: Vec<(usize, usize)>,
}

impl LinkGraph {
    pub fn build(view: &KGammaView, x: &[u8], i: usize, j: usize) -> Self {
        let cages = view.cages();
        let (ni, nj) = (cages[i].edge_count(), cages[j].edge_count());
        let mut names = Vec::with_capacity(ni + nj);
        let mut ends = Vec::with_capacity(ni + nj);
        for (side, d) in [i, j].into_iter().enumerate() {
            for (e, l) in cages[d].labels.iter().enumerate() {
                names.push(l.clone());
                ends.push((side, e));
            }
        }
        let edges = (0..ni)
            .flat_map(|e| (0..nj).map(move |f| (e, f)))
            .filter(|&(e, f)| cell_at(view, x, &[(i, e), (j, f)]))
            .map(|(e, f)| (e, ni + f))
            .collect();
        LinkGraph { dirs: [i, j], names, ends, edges }
    }

    pub fn side_len(&self, side: usize) -> usize {
        self.ends.iter().filter(|e| e.0 == side).count()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        super::voltage::adjacency_from_edges(self.names.len(), &self.edges)
    }

    /// Genuine 4-cycles `[a, b, a', b']` with `a < a'` on side 0 and `b < b'` on side 1.
    pub fn four_cycles(&self) -> Vec<[usize; 4]> {
        let adj = self.adjacency();
        let n0 = self.side_len(0);
        let mut out = Vec::new();
        for a in 0..n0 {
            for a2 in a + 1..n0 {
                let common = crate::simplicial::intersect_sorted(&adj[a], &adj[a2]);
                for (k, &b) in common.iter().enumerate() {
                    for &b2 in &common[k + 1..] {
                        out.push([a, b, a2, b2]);
                    }
                }
            }
        }
        out
    }
}

pub(crate) fn sign(xi: u8) -> i64 {
    if xi == 0 {
        1
    } else {
        -1
    }
}

/// Voltage `[g(e)^{s_i}, g(f)^{s_j}]` on the link edge `d(e, f)` at a vertex
/// whose projected coordinates are `(x_i, x_j)`; `s = +1` at 0 and `−1` at 1.
pub(crate) fn pair_voltage(rep: &BranchingRep, xi: u8, xj: u8, e: usize, f: usize) -> Permutation {
    let a = rep.lambda.pow(-(e as i64) * sign(xi));
    let b = rep.mu.pow(-(f as i64) * sign(xj));
    Permutation::commutator(&a, &b)
}

pub(crate) fn check_rep_sizes(view: &KGammaView, rep: &BranchingRep, i: usize, j: usize) -> Result<()> {
    let sizes = [view.cages()[i].edge_count() - 1, view.cages()[j].edge_count() - 1];
    if sizes.contains(&0) {
        return Err(Error::domain(format!("parts {i} and {j} must both be nonempty")));
    }
    if rep.sizes != sizes {
        return Err(Error::domain(format!(
            "representation built for part sizes {:?}, complex has {:?}",
            rep.sizes, sizes
        )));
    }
    Ok(())
}
