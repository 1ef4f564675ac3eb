use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplicial::{find_unspanned_clique, is_flag, PartiteStructure, Simplex, SimplicialComplex};

/// Label of the edge `e_{v⁰ᵢ}` that every cage graph carries.
pub fn base_label(i: usize) -> String {
    format!("v0_{i}")
}

/// The graph `Θᵢ`: two vertices `0` and `1` joined by one edge per label,
/// each directed `0 → 1`. Label 0 is the base label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CageGraph {
    pub part: usize,
    pub labels: Vec<String>,
}

impl CageGraph {
    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// One coordinate of a product cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Vertex(u8),
    /// Index into the cage graph's labels.
    Edge(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductCell {
    pub coords: Vec<Coord>,
}

impl ProductCell {
    pub fn dim(&self) -> usize {
        self.coords.iter().filter(|c| matches!(c, Coord::Edge(_))).count()
    }

    /// Whether the vertex `x` is a corner of this cell.
    pub fn has_corner(&self, x: &[u8]) -> bool {
        self.coords.iter().zip(x).all(|(c, &b)| match c {
            Coord::Vertex(v) => *v == b,
            Coord::Edge(_) => true,
        })
    }
}

/// Name of a vertex of `{0,1}ⁿ`, e.g. `"010"`.
pub fn vertex_name(x: &[u8]) -> String {
    x.iter().map(|b| char::from(b'0' + b)).collect()
}

/// All vertices of `{0,1}ⁿ` in lexicographic order.
pub fn all_vertices(n: usize) -> Vec<Vec<u8>> {
    (0..1usize << n).map(|m| (0..n).map(|i| (m >> (n - 1 - i) & 1) as u8).collect()).collect()
}

/// `K_Γ` as a subcomplex of `∏ Θᵢ`, kept implicit.
#[derive(Clone, Debug)]
pub struct KGammaView {
    gamma: SimplicialComplex,
    parts: PartiteStructure,
    cages: Vec<CageGraph>,
    /// Γ vertex index of each non-base label, per cage.
    label_vertex: Vec<Vec<Option<usize>>>,
    part_of_vertex: Vec<usize>,
    label_of_vertex: Vec<usize>,
}

/// Builds the view of `K_Γ`. Γ must be flag and `parts` must be valid.
pub fn build_kgamma(gamma: &SimplicialComplex, parts: &PartiteStructure) -> Result<KGammaView> {
    if let Some(c) = find_unspanned_clique(gamma) {
        return Err(Error::domain(format!("Γ is not flag: clique {:?} spans no simplex", gamma.names(&c))));
    }
    KGammaView::unchecked(gamma, parts)
}

impl KGammaView {
    /// Builds a view without the flag check, so that the membership
    /// predicate may describe a complex that is not non-positively curved.
    pub fn unchecked(gamma: &SimplicialComplex, parts: &PartiteStructure) -> Result<Self> {
        parts.validate(gamma)?;
        let n = parts.n();
        let part_of_vertex = parts.parts_of(gamma)?;
        let mut cages = Vec::with_capacity(n);
        let mut label_vertex = Vec::with_capacity(n);
        let mut label_of_vertex = vec![0; gamma.num_vertices()];
        let bases: BTreeSet<String> = (0..n).map(base_label).collect();
        if let Some(v) = gamma.vertices().iter().find(|v| bases.contains(*v)) {
            return Err(Error::validation(format!("vertex `{v}` collides with a base edge label")));
        }
        for i in 0..n {
            let members = parts.part_members(gamma, i);
            let mut labels = vec![base_label(i)];
            let mut lv = vec![None];
            for v in members {
                label_of_vertex[v] = labels.len();
                labels.push(gamma.vertex_name(v).to_string());
                lv.push(Some(v));
            }
            cages.push(CageGraph { part: i, labels });
            label_vertex.push(lv);
        }
        Ok(KGammaView {
            gamma: gamma.clone(),
            parts: parts.clone(),
            cages,
            label_vertex,
            part_of_vertex,
            label_of_vertex,
        })
    }

    pub fn n(&self) -> usize {
        self.cages.len()
    }

    pub fn gamma(&self) -> &SimplicialComplex {
        &self.gamma
    }

    pub fn parts(&self) -> &PartiteStructure {
        &self.parts
    }

    pub fn cages(&self) -> &[CageGraph] {
        &self.cages
    }

    /// Membership predicate: the non-base edge labels of the cell span a simplex of Γ.
    pub fn contains(&self, cell: &ProductCell) -> bool {
        if cell.coords.len() != self.n() {
            return false;
        }
        let mut s: Simplex = Vec::new();
        for (i, c) in cell.coords.iter().enumerate() {
            match *c {
                Coord::Vertex(b) if b <= 1 => {}
                Coord::Vertex(_) => return false,
                Coord::Edge(e) => match self.label_vertex[i].get(e) {
                    Some(Some(v)) => s.push(*v),
                    Some(None) => {}
                    None => return false,
                },
            }
        }
        s.sort_unstable();
        s.is_empty() || self.gamma.contains(&s)
    }

    /// Simplices of Γ together with the empty simplex, as (simplex, parts used).
    fn simplices_with_parts(&self) -> Vec<(Simplex, Vec<usize>)> {
        std::iter::once(Vec::new())
            .chain(self.gamma.simplices().cloned())
            .map(|s| {
                let p = s.iter().map(|&v| self.part_of_vertex[v]).collect();
                (s, p)
            })
            .collect()
    }

    /// Cell counts by dimension, `0..=n`.
    pub fn cell_counts(&self) -> Vec<u128> {
        let n = self.n();
        let mut counts = vec![0u128; n + 1];
        for (s, _) in self.simplices_with_parts() {
            let free = n - s.len();
            for k in s.len()..=n {
                counts[k] += binomial(free, k - s.len()) << (n - k);
            }
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.cell_counts().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i128 } else { -(c as i128) }).sum()
    }

    /// All cells of dimension `dim`, in sorted order.
    pub fn enumerate_cells(&self, dim: usize) -> Vec<ProductCell> {
        let n = self.n();
        let mut out = Vec::new();
        if dim > n {
            return out;
        }
        for (s, sp) in self.simplices_with_parts() {
            if s.len() > dim {
                continue;
            }
            let free: Vec<usize> = (0..n).filter(|i| !sp.contains(i)).collect();
            for extra in combinations(&free, dim - s.len()) {
                let rest: Vec<usize> = free.iter().copied().filter(|i| !extra.contains(i)).collect();
                for bits in 0..1usize << rest.len() {
                    let mut coords = vec![Coord::Vertex(0); n];
                    for (&v, &p) in s.iter().zip(&sp) {
                        let e = self.label_of_vertex[v];
                        coords[p] = Coord::Edge(e);
                    }
                    for &i in &extra {
                        coords[i] = Coord::Edge(0);
                    }
                    for (k, &i) in rest.iter().enumerate() {
                        coords[i] = Coord::Vertex((bits >> k & 1) as u8);
                    }
                    out.push(ProductCell { coords });
                }
            }
        }
        out.sort();
        out
    }

    /// Name of the link vertex for label `e` of cage `i`; labels are
    /// distinct across cages, so the label itself is used.
    pub fn link_vertex_name(&self, i: usize, e: usize) -> &str {
        &self.cages[i].labels[e]
    }

    /// Link of the vertex `x`: one vertex per cage edge, and a simplex for
    /// each set of edges in distinct coordinates whose cell at `x` lies in `K_Γ`.
    pub fn vertex_link(&self, x: &[u8]) -> (SimplicialComplex, PartiteStructure) {
        let n = self.n();
        let mut names = Vec::new();
        let mut pmap = std::collections::BTreeMap::new();
        for (i, cage) in self.cages.iter().enumerate() {
            for l in &cage.labels {
                names.push(l.clone());
                pmap.insert(l.clone(), i);
            }
        }
        let mut simplices: Vec<Vec<String>> = Vec::new();
        for (s, sp) in self.simplices_with_parts() {
            let free: Vec<usize> = (0..n).filter(|i| !sp.contains(i)).collect();
            for bits in 0..1usize << free.len() {
                let mut coords: Vec<Coord> = x.iter().map(|&b| Coord::Vertex(b)).collect();
                let mut simplex: Vec<String> = s.iter().map(|&v| self.gamma.vertex_name(v).to_string()).collect();
                for (&v, &p) in s.iter().zip(&sp) {
                    let e = self.label_of_vertex[v];
                    coords[p] = Coord::Edge(e);
                }
                for (k, &i) in free.iter().enumerate() {
                    if bits >> k & 1 == 1 {
                        coords[i] = Coord::Edge(0);
                        simplex.push(base_label(i));
                    }
                }
                if !simplex.is_empty() && self.contains(&ProductCell { coords }) {
                    simplices.push(simplex);
                }
            }
        }
        let link = SimplicialComplex::from_named_simplices(names, simplices);
        (link, PartiteStructure::new(pmap, n).expect("parts below n"))
    }

    /// Checks flagness of the link at every vertex of `{0,1}ⁿ`.
    pub fn check_npc(&self) -> NpcReport {
        let vertices: Vec<VertexNpc> = all_vertices(self.n())
            .into_iter()
            .map(|x| {
                let (lk, _) = self.vertex_link(&x);
                let witness = if is_flag(&lk) { None } else { find_unspanned_clique(&lk).map(|c| lk.names(&c)) };
                VertexNpc { vertex: vertex_name(&x), flag: witness.is_none(), empty_simplex: witness }
            })
            .collect();
        NpcReport { npc: vertices.iter().all(|v| v.flag), vertices }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexNpc {
    pub vertex: String,
    pub flag: bool,
    /// A clique of the link that spans no simplex.
    pub empty_simplex: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NpcReport {
    pub npc: bool,
    pub vertices: Vec<VertexNpc>,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
