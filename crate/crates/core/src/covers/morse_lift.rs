use std::collections::BTreeMap;

use serde::Serialize;

use super::branch3d::{branch_pair, spatial_voltage_graph, SpatialBranching, PAIRS, TYPE_NAMES};
use super::link::{cell_at, check_rep_sizes, pair_voltage, LinkGraph};
use super::rep::BranchingRep;
use super::voltage::{components, derived_cover, DerivedCover, VoltageGraph};
use crate::cubical::{ascending_descending_links, vertex_name, KGammaView, MorseData};
use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// Branching data: planar at `(0,0)`, or spatial along the three projections.
#[derive(Clone, Debug)]
pub enum BranchSetting {
    Planar(BranchingRep),
    Spatial(SpatialBranching),
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftedLink {
    pub ascending_f_vector: Vec<usize>,
    pub descending_f_vector: Vec<usize>,
    #[serde(skip)]
    pub ascending: SimplicialComplex,
    #[serde(skip)]
    pub descending: SimplicialComplex,
}

impl LiftedLink {
    fn new(ascending: SimplicialComplex, descending: SimplicialComplex) -> Self {
        LiftedLink {
            ascending_f_vector: ascending.f_vector(),
            descending_f_vector: descending.f_vector(),
            ascending,
            descending,
        }
    }
}

/// Ascending and descending links at the lifts of one base vertex.
#[derive(Clone, Debug, Serialize)]
pub struct LiftedLinks {
    pub vertex: String,
    pub vertex_type: String,
    pub branched: bool,
    /// Lifted vertices over the base vertex; `lifts` holds one entry per
    /// computed lift, and in reduced mode each stands for
    /// `multiplicity / lifts.len()` identical copies.
    pub multiplicity: u128,
    pub lifts: Vec<LiftedLink>,
}

/// The cover of the link graph on the non-branch directions at `x`,
/// with the deleted direction (if any) kept for re-coning.
struct LiftData {
    lg: LinkGraph,
    cover: DerivedCover,
    comps: Vec<Vec<usize>>,
    comp_of: Vec<usize>,
    /// Per deleted label: cone components as (lifted vertices, lifted edges).
    cones: Vec<(usize, Vec<(Vec<usize>, Vec<(usize, usize)>)>)>,
    deleted_dir: Option<usize>,
    copies: u128,
}

fn find(parent: &mut [usize], mut a: usize) -> usize {
    while parent[a] != a {
        parent[a] = parent[parent[a]];
        a = parent[a];
    }
    a
}

fn lift_data(view: &KGammaView, setting: &BranchSetting, x: &[u8]) -> Result<Option<LiftData>> {
    let (lg, vg, deleted_dir, copies): (LinkGraph, VoltageGraph, Option<usize>, u128) = match setting {
        BranchSetting::Planar(rep) => {
            if view.n() != 2 {
                return Err(Error::domain("planar branching needs n = 2"));
            }
            check_rep_sizes(view, rep, 0, 1)?;
            if x != [0, 0] {
                return Ok(None);
            }
            let lg = LinkGraph::build(view, x, 0, 1);
            let edges =
                lg.edges.iter().map(|&(a, b)| (a, b, pair_voltage(rep, 0, 0, lg.ends[a].1, lg.ends[b].1))).collect();
            let vg = VoltageGraph::new(lg.names.clone(), edges, rep.p as usize)?;
            (lg, vg, None, 1)
        }
        BranchSetting::Spatial(sb) => {
            if view.n() != 3 {
                return Err(Error::domain("spatial branching needs n = 3"));
            }
            let Some(k) = branch_pair(x) else {
                return Ok(None);
            };
            let (i, j) = PAIRS[k];
            let lg = LinkGraph::build(view, x, i, j);
            let product = sb.total_degree() * lg.names.len() as u128 <= 1_000_000;
            let vg = spatial_voltage_graph(sb, x, &lg, if product { None } else { Some(k) });
            let copies = if product { 1 } else { sb.total_degree() / sb.degrees()[k] as u128 };
            (lg, vg, Some(3 - i - j), copies)
        }
    };
    let cover = derived_cover(&vg);
    let comps = components(&cover.adjacency());
    let mut comp_of = vec![0; cover.num_vertices()];
    for (c, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = c;
        }
    }
    let q = cover.degree;
    let mut cones = Vec::new();
    if let Some(k) = deleted_dir {
        let [i, j] = lg.dirs;
        for u in 0..view.cages()[k].edge_count() {
            let lk_vertices: Vec<usize> = (0..lg.names.len())
                .filter(|&a| cell_at(view, x, &[(k, u), (lg.dirs[lg.ends[a].0], lg.ends[a].1)]))
                .collect();
            let lk_edges: Vec<usize> = (0..lg.edges.len())
                .filter(|&e| {
                    let (a, b) = lg.edges[e];
                    cell_at(view, x, &[(k, u), (i, lg.ends[a].1), (j, lg.ends[b].1)])
                })
                .collect();
            let lifted: Vec<usize> = lk_vertices.iter().flat_map(|&a| (0..q).map(move |s| a * q + s)).collect();
            let local: BTreeMap<usize, usize> = lifted.iter().enumerate().map(|(n, &v)| (v, n)).collect();
            let mut parent: Vec<usize> = (0..lifted.len()).collect();
            let lifted_edges: Vec<(usize, usize)> =
                lk_edges.iter().flat_map(|&e| (0..q).map(move |s| e * q + s)).map(|le| cover.edges[le]).collect();
            for &(a, b) in &lifted_edges {
                let (ra, rb) = (find(&mut parent, local[&a]), find(&mut parent, local[&b]));
                parent[ra] = rb;
            }
            let mut groups: BTreeMap<usize, (Vec<usize>, Vec<(usize, usize)>)> = BTreeMap::new();
            for (n, &v) in lifted.iter().enumerate() {
                groups.entry(find(&mut parent, n)).or_default().0.push(v);
            }
            for &(a, b) in &lifted_edges {
                groups.get_mut(&find(&mut parent, local[&a])).unwrap().1.push((a, b));
            }
            cones.push((u, groups.into_values().collect()));
        }
    }
    Ok(Some(LiftData { lg, cover, comps, comp_of, cones, deleted_dir, copies }))
}

impl LiftData {
    /// Lifted link of the lift given by cover component `c`, restricted to
    /// link vertices (and cone vertices) accepted by `keep`.
    fn link(&self, view: &KGammaView, c: usize, keep: &dyn Fn(usize, usize) -> bool) -> SimplicialComplex {
        let q = self.cover.degree;
        let base_keep = |v: usize| {
            let (side, label) = self.lg.ends[self.cover.base_of(v)];
            keep(self.lg.dirs[side], label)
        };
        let mut names = Vec::new();
        let mut local = BTreeMap::new();
        for &v in &self.comps[c] {
            if base_keep(v) {
                local.insert(v, names.len());
                names.push(self.cover.vertex_name(v));
            }
        }
        let mut simplices: Vec<Vec<usize>> = Vec::new();
        for e in 0..self.lg.edges.len() {
            for s in 0..q {
                let (a, b) = self.cover.edges[e * q + s];
                if self.comp_of[a] == c {
                    if let (Some(&la), Some(&lb)) = (local.get(&a), local.get(&b)) {
                        simplices.push(vec![la, lb]);
                    }
                }
            }
        }
        if let Some(k) = self.deleted_dir {
            for (u, groups) in &self.cones {
                if !keep(k, *u) {
                    continue;
                }
                let label = &view.cages()[k].labels[*u];
                let mut n = 0;
                for (verts, edges) in groups {
                    if self.comp_of[verts[0]] != c {
                        continue;
                    }
                    n += 1;
                    let cone = names.len();
                    names.push(format!("{label}@c{n}"));
                    simplices.extend(verts.iter().filter_map(|v| local.get(v)).map(|&lv| vec![cone, lv]));
                    for (a, b) in edges {
                        if let (Some(&la), Some(&lb)) = (local.get(a), local.get(b)) {
                            simplices.push(vec![cone, la, lb]);
                        }
                    }
                }
            }
        }
        SimplicialComplex::from_indexed(names, &simplices)
    }
}

fn vertex_type(setting: &BranchSetting, x: &[u8]) -> (String, bool) {
    match setting {
        BranchSetting::Planar(_) if x == [0, 0] => ("branch".into(), true),
        BranchSetting::Planar(_) => ("regular".into(), false),
        BranchSetting::Spatial(_) => match branch_pair(x) {
            Some(k) => (TYPE_NAMES[k].into(), true),
            None => ("A".into(), false),
        },
    }
}

/// Ascending and descending links at the lifts of `x` in the branched
/// cover. Off the branching locus these are the base links. At a branch
/// vertex the non-branch directions are lifted through the voltage cover,
/// and each lifted component of the link of a deleted direction vertex
/// is coned off by a new vertex inheriting its Morse direction.
pub fn branched_morse_links(
    view: &KGammaView,
    morse: &MorseData,
    setting: &BranchSetting,
    x: &[u8],
) -> Result<LiftedLinks> {
    let (vertex_type, branched) = vertex_type(setting, x);
    let Some(data) = lift_data(view, setting, x)? else {
        let (a, d) = ascending_descending_links(view, morse, x);
        let multiplicity = match setting {
            BranchSetting::Planar(rep) => rep.p as u128,
            BranchSetting::Spatial(sb) => sb.total_degree(),
        };
        return Ok(LiftedLinks {
            vertex: vertex_name(x),
            vertex_type,
            branched,
            multiplicity,
            lifts: vec![LiftedLink::new(a, d)],
        });
    };
    let up = |d: usize, label: usize| morse.ascends_from(&view.cages()[d].labels[label], x[d]);
    let lifts = (0..data.comps.len())
        .map(|c| LiftedLink::new(data.link(view, c, &up), data.link(view, c, &|d, l| !up(d, l))))
        .collect();
    Ok(LiftedLinks {
        vertex: vertex_name(x),
        vertex_type,
        branched,
        multiplicity: data.comps.len() as u128 * data.copies,
        lifts,
    })
}

/// Full links at the lifts of `x`, one per computed lift.
pub fn lifted_vertex_links(view: &KGammaView, setting: &BranchSetting, x: &[u8]) -> Result<Vec<SimplicialComplex>> {
    match lift_data(view, setting, x)? {
        None => Ok(vec![view.vertex_link(x).0]),
        Some(data) => Ok((0..data.comps.len()).map(|c| data.link(view, c, &|_, _| true)).collect()),
    }
}
