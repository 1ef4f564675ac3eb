use std::collections::BTreeMap;

use serde::Serialize;

use super::link::{check_rep_sizes, pair_voltage, LinkGraph};
use super::perm::Permutation;
use super::rep::BranchingRep;
use super::voltage::{
    adjacency_from_edges, components, derived_cover, girth_report, DerivedCover, GirthReport, VoltageGraph,
};
use crate::cubical::{all_vertices, vertex_name, KGammaView};
use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// Voltages on the link graph of the branch vertex `(0,0)`.
#[derive(Clone, Debug)]
pub struct LinkVoltages {
    pub graph: VoltageGraph,
    /// Squares of `K_Γ` at the branch vertex, one per link edge.
    pub squares: usize,
    /// Squares whose relator product is not the identity.
    pub pentagon_failures: Vec<(String, String)>,
}

impl LinkVoltages {
    pub fn pentagon_ok(&self) -> bool {
        self.pentagon_failures.is_empty()
    }
}

/// Assigns `v(d(e,f)) = [g(e), g(f)]` to every edge of the branch-vertex
/// link and checks `v(d)·g(f)·g(e)·g(f)⁻¹·g(e)⁻¹ = 1` on each square.
pub fn link_voltage_assignment(view: &KGammaView, rep: &BranchingRep) -> Result<LinkVoltages> {
    if view.n() != 2 {
        return Err(Error::domain(format!("planar branching needs n = 2, got {}", view.n())));
    }
    check_rep_sizes(view, rep, 0, 1)?;
    let lg = LinkGraph::build(view, &[0, 0], 0, 1);
    let mut edges = Vec::with_capacity(lg.edges.len());
    let mut pentagon_failures = Vec::new();
    for &(a, b) in &lg.edges {
        let (e, f) = (lg.ends[a].1, lg.ends[b].1);
        let v = pair_voltage(rep, 0, 0, e, f);
        let (ge, gf) = (rep.g(0, e), rep.g(1, f));
        let relator = v.compose(&gf).compose(&ge).compose(&gf.inverse()).compose(&ge.inverse());
        if !relator.is_identity() {
            pentagon_failures.push((lg.names[a].clone(), lg.names[b].clone()));
        }
        edges.push((a, b, v));
    }
    let squares = edges.len();
    let graph = VoltageGraph::new(lg.names, edges, rep.p as usize)?;
    Ok(LinkVoltages { graph, squares, pentagon_failures })
}

/// Preimage of one base 4-cycle, computed from holonomy orbits and
/// independently by searching the lifted edges.
#[derive(Clone, Debug, Serialize)]
pub struct FourCycleLift {
    pub cycle: [String; 4],
    pub holonomy: Permutation,
    /// Lengths `4·|orbit|` of the lifted cycles predicted by the holonomy.
    pub predicted_lengths: Vec<usize>,
    /// Lengths of the components found in the cover.
    pub found_lengths: Vec<usize>,
}

impl FourCycleLift {
    pub fn components(&self) -> usize {
        self.found_lengths.len()
    }

    pub fn consistent(&self) -> bool {
        self.predicted_lengths == self.found_lengths
    }
}

pub(crate) fn lift_cycle(g: &VoltageGraph, cover: &DerivedCover, cycle: &[usize]) -> Result<FourCycleLift> {
    let steps = g.cycle_steps(cycle)?;
    let holonomy = g.walk_holonomy(&steps);
    let mut predicted_lengths: Vec<usize> = holonomy.cycle_type().iter().map(|c| c * cycle.len()).collect();
    predicted_lengths.sort_unstable();
    let q = g.degree;
    let mut local = BTreeMap::new();
    let mut edges = Vec::new();
    for &(e, _) in &steps {
        for s in 0..q {
            let (a, b) = cover.edges[e * q + s];
            let n = local.len();
            let a = *local.entry(a).or_insert(n);
            let n = local.len();
            let b = *local.entry(b).or_insert(n);
            edges.push((a, b));
        }
    }
    let mut found_lengths: Vec<usize> =
        components(&adjacency_from_edges(local.len(), &edges)).iter().map(|c| c.len()).collect();
    found_lengths.sort_unstable();
    let name = |v: usize| g.names[v].clone();
    Ok(FourCycleLift {
        cycle: [name(cycle[0]), name(cycle[1]), name(cycle[2]), name(cycle[3])],
        holonomy,
        predicted_lengths,
        found_lengths,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UnchangedLink {
    pub vertex: String,
    pub f_vector: Vec<usize>,
    #[serde(skip)]
    pub link: SimplicialComplex,
}

/// The branched cover of `K_Γ` branched at `(0,0)`, seen through links.
#[derive(Clone, Debug, Serialize)]
pub struct BranchedLink2d {
    pub p: u64,
    pub branch_vertex: String,
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub girth: GirthReport,
    pub squares: usize,
    pub pentagon_ok: bool,
    pub four_cycles: Vec<FourCycleLift>,
    pub unchanged: Vec<UnchangedLink>,
    #[serde(skip)]
    pub voltages: LinkVoltages,
    #[serde(skip)]
    pub cover: DerivedCover,
}

impl BranchedLink2d {
    pub fn cover_complex(&self) -> SimplicialComplex {
        self.cover.to_complex()
    }

    /// Every base 4-cycle has a connected preimage.
    pub fn four_cycles_connected(&self) -> bool {
        self.four_cycles.iter().all(|c| c.components() == 1)
    }
}

pub fn branched_link_2d(view: &KGammaView, rep: &BranchingRep) -> Result<BranchedLink2d> {
    let voltages = link_voltage_assignment(view, rep)?;
    let g = &voltages.graph;
    let cover = derived_cover(g);
    let adj = cover.adjacency();
    let girth = girth_report(&adj, |x| cover.vertex_name(x), 20_000);
    let lg = LinkGraph::build(view, &[0, 0], 0, 1);
    let four_cycles = lg.four_cycles().iter().map(|c| lift_cycle(g, &cover, c)).collect::<Result<Vec<_>>>()?;
    let unchanged = all_vertices(2)
        .into_iter()
        .filter(|x| x.iter().any(|&b| b != 0))
        .map(|x| {
            let (link, _) = view.vertex_link(&x);
            UnchangedLink { vertex: vertex_name(&x), f_vector: link.f_vector(), link }
        })
        .collect();
    Ok(BranchedLink2d {
        p: rep.p,
        branch_vertex: vertex_name(&[0, 0]),
        vertices: cover.num_vertices(),
        edges: cover.edges.len(),
        components: components(&adj).len(),
        girth,
        squares: voltages.squares,
        pentagon_ok: voltages.pentagon_ok(),
        four_cycles,
        unchanged,
        voltages,
        cover,
    })
}
