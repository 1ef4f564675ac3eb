use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::{Error, Result};

/// A simplex as a strictly increasing list of vertex indices.
pub type Simplex = Vec<usize>;

/// A finite abstract simplicial complex, stored with full face closure.
///
/// Vertices are opaque strings kept in sorted order; simplices refer to
/// vertices by their position in that order. The empty simplex is implicit
/// and never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { vertices: Vec::new(), simplices: BTreeSet::new() }
    }

    /// Builds the face closure of `maximal` over the given vertex set.
    ///
    /// Every vertex named in a simplex must be listed in `vertices`; listed
    /// vertices that appear in no simplex become isolated points.
    pub fn new<S: AsRef<str>>(vertices: &[S], maximal: &[Vec<S>]) -> Result<Self> {
        let names: BTreeSet<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        if names.len() != vertices.len() {
            return Err(Error::validation("duplicate vertex identifier"));
        }
        let vertices: Vec<String> = names.into_iter().collect();
        let index: BTreeMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut tops = Vec::with_capacity(maximal.len());
        for s in maximal {
            let mut idx = Vec::with_capacity(s.len());
            for v in s {
                let i = *index
                    .get(v.as_ref())
                    .ok_or_else(|| Error::validation(format!("simplex names unknown vertex `{}`", v.as_ref())))?;
                idx.push(i);
            }
            idx.sort_unstable();
            if idx.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::validation("simplex contains a repeated vertex"));
            }
            tops.push(idx);
        }
        let mut simplices: BTreeSet<Simplex> = (0..vertices.len()).map(|i| vec![i]).collect();
        for t in tops {
            insert_faces(&mut simplices, &t);
        }
        Ok(SimplicialComplex { vertices, simplices })
    }

    /// Builds a complex whose vertex set is exactly the vertices named in `maximal`.
    pub fn from_maximal<S: AsRef<str>>(maximal: &[Vec<S>]) -> Result<Self> {
        let names: BTreeSet<&str> = maximal.iter().flatten().map(|s| s.as_ref()).collect();
        let names: Vec<&str> = names.into_iter().collect();
        let maximal: Vec<Vec<&str>> = maximal.iter().map(|s| s.iter().map(|v| v.as_ref()).collect()).collect();
        Self::new(&names, &maximal)
    }

    /// Assembles a complex from already face-closed data. `vertices` must be
    /// sorted and unique and `simplices` must contain every singleton.
    pub(crate) fn from_closed(vertices: Vec<String>, simplices: BTreeSet<Simplex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!((0..vertices.len()).all(|i| simplices.contains(&vec![i])));
        SimplicialComplex { vertices, simplices }
    }

    /// Builds a complex from named simplices, closing under faces and
    /// sorting the vertex names.
    pub(crate) fn from_named_simplices<I>(vertices: Vec<String>, simplices: I) -> Self
    where
        I: IntoIterator<Item = Vec<String>>,
    {
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        let index: BTreeMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut set: BTreeSet<Simplex> = (0..vertices.len()).map(|i| vec![i]).collect();
        for s in simplices {
            let mut idx: Vec<usize> = s.iter().map(|v| index[v.as_str()]).collect();
            idx.sort_unstable();
            insert_faces(&mut set, &idx);
        }
        SimplicialComplex { vertices, simplices: set }
    }

    /// Builds a complex from simplices given as indices into `names`,
    /// which need not be sorted. Names must be unique.
    pub(crate) fn from_indexed(names: Vec<String>, simplices: &[Vec<usize>]) -> Self {
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let mut rank = vec![0; names.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let mut set: BTreeSet<Simplex> = (0..names.len()).map(|i| vec![i]).collect();
        for s in simplices {
            let mut idx: Vec<usize> = s.iter().map(|&v| rank[v]).collect();
            idx.sort_unstable();
            insert_faces(&mut set, &idx);
        }
        let mut slots: Vec<Option<String>> = names.into_iter().map(Some).collect();
        let vertices = order.iter().map(|&i| slots[i].take().unwrap()).collect();
        SimplicialComplex { vertices, simplices: set }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    /// All nonempty simplices in lexicographic order of their index lists.
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.simplices.iter()
    }

    pub fn num_simplices(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices_of_dim(&self, k: usize) -> Vec<&Simplex> {
        self.simplices.iter().filter(|s| s.len() == k + 1).collect()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        simplex.is_empty() || self.simplices.contains(simplex)
    }

    /// Looks up a simplex given by vertex names, in any order.
    pub fn simplex_from_names<S: AsRef<str>>(&self, names: &[S]) -> Option<Simplex> {
        let mut idx = names.iter().map(|n| self.vertex_index(n.as_ref())).collect::<Option<Vec<_>>>()?;
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != names.len() {
            return None;
        }
        self.contains(&idx).then_some(idx)
    }

    pub fn contains_names<S: AsRef<str>>(&self, names: &[S]) -> bool {
        self.simplex_from_names(names).is_some()
    }

    pub fn names(&self, simplex: &[usize]) -> Vec<String> {
        simplex.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Dimension, with `-1` for the empty complex.
    pub fn dim(&self) -> i64 {
        self.simplices.iter().map(|s| s.len() as i64 - 1).max().unwrap_or(-1)
    }

    /// Number of simplices per dimension, starting at dimension 0.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; (self.dim() + 1).max(0) as usize];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Sorted neighbour lists of the 1-skeleton.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for s in self.simplices.iter().filter(|s| s.len() == 2) {
            adj[s[0]].push(s[1]);
            adj[s[1]].push(s[0]);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.simplices.iter().filter(|s| s.len() == 2).map(|s| (s[0], s[1])).collect()
    }

    /// Connected components as sorted vertex index lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_of(&self.adjacency())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn maximal_simplices(&self) -> Vec<&Simplex> {
        let mut faces: BTreeSet<Simplex> = BTreeSet::new();
        for s in self.simplices.iter().filter(|s| s.len() >= 2) {
            for skip in 0..s.len() {
                let mut f = s.clone();
                f.remove(skip);
                faces.insert(f);
            }
        }
        self.simplices.iter().filter(|s| !faces.contains(*s)).collect()
    }

    /// Maximal simplices by name, for serialization.
    pub fn maximal_named(&self) -> Vec<Vec<String>> {
        self.maximal_simplices().into_iter().map(|s| self.names(s)).collect()
    }

    /// The subcomplex of simplices accepted by `keep`. `keep` must be closed
    /// under faces for the result to be a complex; vertices whose singleton
    /// is rejected are dropped.
    pub(crate) fn filter<F: Fn(&[usize]) -> bool>(&self, keep: F) -> SimplicialComplex {
        let kept: Vec<usize> = (0..self.vertices.len()).filter(|&v| keep(&[v])).collect();
        let mut new_index = vec![usize::MAX; self.vertices.len()];
        for (j, &v) in kept.iter().enumerate() {
            new_index[v] = j;
        }
        let vertices = kept.iter().map(|&v| self.vertices[v].clone()).collect();
        let simplices =
            self.simplices.iter().filter(|s| keep(s)).map(|s| s.iter().map(|&v| new_index[v]).collect()).collect();
        SimplicialComplex::from_closed(vertices, simplices)
    }

    /// Renames vertices. `rename` must be injective.
    pub fn relabel<F: Fn(&str) -> String>(&self, rename: F) -> SimplicialComplex {
        let new_names: Vec<String> = self.vertices.iter().map(|v| rename(v)).collect();
        SimplicialComplex::from_named_simplices(
            new_names.clone(),
            self.simplices.iter().map(|s| s.iter().map(|&v| new_names[v].clone()).collect()),
        )
    }

    /// The subcomplex of simplices of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        self.filter(|s| s.len() <= k + 1)
    }
}

pub(crate) fn insert_faces(set: &mut BTreeSet<Simplex>, simplex: &[usize]) {
    if simplex.is_empty() || set.contains(simplex) {
        return;
    }
    let n = simplex.len();
    // Faces are enumerated by bitmask; a face already present has all of its
    // own faces present, but filtering on that is slower than the plain loop
    // at the sizes used here.
    for mask in 1u64..(1u64 << n) {
        let face: Simplex = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| simplex[i]).collect();
        set.insert(face);
    }
}

pub(crate) fn components_of(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut comps = Vec::new();
    for start in 0..adj.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// An assignment of each vertex to one of `n` parts such that no edge joins
/// two vertices of the same part.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PartiteStructure {
    part_of: BTreeMap<String, usize>,
    n: usize,
}

impl PartiteStructure {
    pub fn new(part_of: BTreeMap<String, usize>, n: usize) -> Result<Self> {
        if let Some((v, &p)) = part_of.iter().find(|(_, &p)| p >= n) {
            return Err(Error::validation(format!("vertex `{v}` has part {p} but only {n} parts")));
        }
        Ok(PartiteStructure { part_of, n })
    }

    /// Uses one more part than the largest index present.
    pub fn from_map(part_of: BTreeMap<String, usize>) -> Self {
        let n = part_of.values().max().map_or(0, |m| m + 1);
        PartiteStructure { part_of, n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn part(&self, vertex: &str) -> Option<usize> {
        self.part_of.get(vertex).copied()
    }

    pub fn map(&self) -> &BTreeMap<String, usize> {
        &self.part_of
    }

    pub(crate) fn insert(&mut self, vertex: String, part: usize) {
        self.n = self.n.max(part + 1);
        self.part_of.insert(vertex, part);
    }

    /// Checks that every vertex of `x` has a part and that no edge is
    /// internal to a part.
    pub fn validate(&self, x: &SimplicialComplex) -> Result<()> {
        for v in x.vertices() {
            if !self.part_of.contains_key(v) {
                return Err(Error::validation(format!("vertex `{v}` has no part")));
            }
        }
        for (a, b) in x.edges() {
            let (na, nb) = (x.vertex_name(a), x.vertex_name(b));
            if self.part_of[na] == self.part_of[nb] {
                return Err(Error::validation(format!("edge [{na}, {nb}] lies inside part {}", self.part_of[na])));
            }
        }
        Ok(())
    }

    /// Part indices aligned with the vertex order of `x`.
    pub fn parts_of(&self, x: &SimplicialComplex) -> Result<Vec<usize>> {
        x.vertices()
            .iter()
            .map(|v| self.part(v).ok_or_else(|| Error::validation(format!("vertex `{v}` has no part"))))
            .collect()
    }

    /// Vertices of `x` in part `i`, as indices into `x`.
    pub fn part_members(&self, x: &SimplicialComplex, i: usize) -> Vec<usize> {
        (0..x.num_vertices()).filter(|&v| self.part(x.vertex_name(v)) == Some(i)).collect()
    }

    /// Restriction to the vertices of `x`.
    pub fn restrict(&self, x: &SimplicialComplex) -> PartiteStructure {
        let part_of = x.vertices().iter().filter_map(|v| self.part(v).map(|p| (v.clone(), p))).collect();
        PartiteStructure { part_of, n: self.n }
    }
}
