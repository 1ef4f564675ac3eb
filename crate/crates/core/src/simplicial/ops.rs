use std::collections::{BTreeMap, BTreeSet};

use super::complex::{components_of, PartiteStructure, Simplex, SimplicialComplex};
use crate::{Error, Result};

/// The clique complex of the 1-skeleton of `x`.
///
/// Higher simplices of `x` are ignored, so the result is the minimal flag
/// complex with the same 1-skeleton.
pub fn flag_completion(x: &SimplicialComplex) -> SimplicialComplex {
    let adj = x.adjacency();
    let mut out: BTreeSet<Simplex> = BTreeSet::new();
    let mut clique = Vec::new();
    for v in 0..x.num_vertices() {
        clique.push(v);
        let cands: Vec<usize> = adj[v].iter().copied().filter(|&w| w > v).collect();
        grow_cliques(&mut clique, &cands, &adj, &mut out);
        clique.pop();
    }
    SimplicialComplex::from_closed(x.vertices().to_vec(), out)
}

fn grow_cliques(clique: &mut Vec<usize>, cands: &[usize], adj: &[Vec<usize>], out: &mut BTreeSet<Simplex>) {
    out.insert(clique.clone());
    for (i, &w) in cands.iter().enumerate() {
        let next = intersect_sorted(&cands[i + 1..], &adj[w]);
        clique.push(w);
        grow_cliques(clique, &next, adj, out);
        clique.pop();
    }
}

pub(crate) fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// A clique of the 1-skeleton that does not span a simplex, if any.
///
/// Every clique is a simplex iff for each simplex `σ` and each vertex `w`
/// above `max σ` adjacent to all of `σ`, the set `σ ∪ {w}` is a simplex.
pub fn find_unspanned_clique(x: &SimplicialComplex) -> Option<Simplex> {
    let adj = x.adjacency();
    for s in x.simplices() {
        let top = *s.last().unwrap();
        let mut common: Vec<usize> = adj[s[0]].iter().copied().filter(|&w| w > top).collect();
        for &v in &s[1..] {
            if common.is_empty() {
                break;
            }
            common = intersect_sorted(&common, &adj[v]);
        }
        for w in common {
            let mut t = s.clone();
            t.push(w);
            if !x.contains(&t) {
                return Some(t);
            }
        }
    }
    None
}

pub fn is_flag(x: &SimplicialComplex) -> bool {
    find_unspanned_clique(x).is_none()
}

/// `Lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ X}`.
pub fn link(x: &SimplicialComplex, sigma: &[usize]) -> SimplicialComplex {
    x.filter(|t| disjoint(t, sigma) && x.contains(&union(t, sigma)))
}

/// Closed star: every simplex that together with `σ` spans a simplex.
pub fn star(x: &SimplicialComplex, sigma: &[usize]) -> SimplicialComplex {
    x.filter(|t| x.contains(&union(t, sigma)))
}

/// Full subcomplex on a vertex subset given by indices.
pub fn full_subcomplex(x: &SimplicialComplex, vertices: &[usize]) -> SimplicialComplex {
    let mut keep = vec![false; x.num_vertices()];
    for &v in vertices {
        keep[v] = true;
    }
    x.filter(|t| t.iter().all(|&v| keep[v]))
}

/// Full subcomplex on the vertices accepted by a name predicate.
pub fn full_subcomplex_by<F: Fn(&str) -> bool>(x: &SimplicialComplex, keep: F) -> SimplicialComplex {
    let vs: Vec<usize> = (0..x.num_vertices()).filter(|&v| keep(x.vertex_name(v))).collect();
    full_subcomplex(x, &vs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubcomplexKind {
    Link,
    Star,
    Full,
}

/// Link or star of a simplex, or full subcomplex on a vertex set, addressed
/// by vertex names.
pub fn subcomplex_query<S: AsRef<str>>(
    x: &SimplicialComplex,
    kind: SubcomplexKind,
    arg: &[S],
) -> Result<SimplicialComplex> {
    match kind {
        SubcomplexKind::Link | SubcomplexKind::Star => {
            let sigma = x.simplex_from_names(arg).ok_or_else(|| {
                let names: Vec<&str> = arg.iter().map(|a| a.as_ref()).collect();
                Error::domain(format!("{names:?} is not a simplex"))
            })?;
            Ok(if kind == SubcomplexKind::Link { link(x, &sigma) } else { star(x, &sigma) })
        }
        SubcomplexKind::Full => {
            let idx = arg
                .iter()
                .map(|a| {
                    x.vertex_index(a.as_ref()).ok_or_else(|| Error::domain(format!("unknown vertex `{}`", a.as_ref())))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(full_subcomplex(x, &idx))
        }
    }
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_err())
}

pub(crate) fn union(a: &[usize], b: &[usize]) -> Simplex {
    let mut u: Simplex = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

/// Simplicial join. If the vertex names overlap, every vertex of `x` is
/// renamed to `"<name>#L"` and every vertex of `y` to `"<name>#R"`.
pub fn join(x: &SimplicialComplex, y: &SimplicialComplex) -> SimplicialComplex {
    let (x, y) = disjoint_pair(x, y);
    join_disjoint(&x, &y)
}

/// Join of two partite complexes; parts of `y` are shifted past those of `x`.
pub fn join_partite(
    x: &SimplicialComplex,
    px: &PartiteStructure,
    y: &SimplicialComplex,
    py: &PartiteStructure,
) -> (SimplicialComplex, PartiteStructure) {
    let overlap = x.vertices().iter().any(|v| y.vertex_index(v).is_some());
    let (xl, yl) = disjoint_pair(x, y);
    let rename = |v: &str, side: &str| {
        if overlap {
            format!("{v}#{side}")
        } else {
            v.to_string()
        }
    };
    let mut parts = PartiteStructure::default();
    for (v, &p) in px.map() {
        parts.insert(rename(v, "L"), p);
    }
    for (v, &p) in py.map() {
        parts.insert(rename(v, "R"), p + px.n());
    }
    let n = px.n() + py.n();
    let parts = PartiteStructure::new(parts.map().clone(), n).expect("part indices below n");
    (join_disjoint(&xl, &yl), parts)
}

fn disjoint_pair(x: &SimplicialComplex, y: &SimplicialComplex) -> (SimplicialComplex, SimplicialComplex) {
    if x.vertices().iter().any(|v| y.vertex_index(v).is_some()) {
        (x.relabel(|v| format!("{v}#L")), y.relabel(|v| format!("{v}#R")))
    } else {
        (x.clone(), y.clone())
    }
}

fn join_disjoint(x: &SimplicialComplex, y: &SimplicialComplex) -> SimplicialComplex {
    let mut names: Vec<(String, usize, bool)> = x
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i, false))
        .chain(y.vertices().iter().enumerate().map(|(i, v)| (v.clone(), i, true)))
        .collect();
    names.sort();
    let mut xmap = vec![0; x.num_vertices()];
    let mut ymap = vec![0; y.num_vertices()];
    for (j, (_, i, right)) in names.iter().enumerate() {
        if *right {
            ymap[*i] = j;
        } else {
            xmap[*i] = j;
        }
    }
    let empty: Simplex = Vec::new();
    let xs: Vec<&Simplex> = std::iter::once(&empty).chain(x.simplices()).collect();
    let ys: Vec<&Simplex> = std::iter::once(&empty).chain(y.simplices()).collect();
    let mut out = BTreeSet::new();
    for a in &xs {
        for b in &ys {
            if a.is_empty() && b.is_empty() {
                continue;
            }
            let mut s: Simplex = a.iter().map(|&v| xmap[v]).chain(b.iter().map(|&v| ymap[v])).collect();
            s.sort_unstable();
            out.insert(s);
        }
    }
    SimplicialComplex::from_closed(names.into_iter().map(|(n, _, _)| n).collect(), out)
}

/// Vertex name used for the barycentre of a simplex in the subdivision.
pub fn barycentre_name(names: &[String]) -> String {
    format!("<{}>", names.join(","))
}

/// Barycentric subdivision, with each new vertex placed in the part equal to
/// the dimension of the simplex it subdivides.
pub fn barycentric_subdivision(x: &SimplicialComplex) -> (SimplicialComplex, PartiteStructure) {
    let simplices: Vec<&Simplex> = x.simplices().collect();
    let names: Vec<String> = simplices.iter().map(|s| barycentre_name(&x.names(s))).collect();
    let pos: BTreeMap<&Simplex, usize> = simplices.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    // Comparability graph of the face poset; its clique complex is the
    // order complex.
    let mut edges = Vec::new();
    for (i, s) in simplices.iter().enumerate() {
        if s.len() < 2 {
            continue;
        }
        for mask in 1u64..((1u64 << s.len()) - 1) {
            let f: Simplex = (0..s.len()).filter(|&b| mask >> b & 1 == 1).map(|b| s[b]).collect();
            edges.push(vec![names[pos[&f]].clone(), names[i].clone()]);
        }
    }
    let graph = SimplicialComplex::from_named_simplices(names.clone(), edges);
    let mut parts = BTreeMap::new();
    for (i, s) in simplices.iter().enumerate() {
        parts.insert(names[i].clone(), s.len() - 1);
    }
    let n = (x.dim() + 1).max(0) as usize;
    (flag_completion(&graph), PartiteStructure::new(parts, n).expect("dims below n"))
}

pub fn plus_name(v: &str) -> String {
    format!("{v}+")
}

pub fn minus_name(v: &str) -> String {
    format!("{v}-")
}

/// Octahedralisation `S(L)`: each vertex doubled to `v+`, `v-`; a signed set
/// spans a simplex iff the underlying unsigned set does.
pub fn octahedralize(l: &SimplicialComplex) -> Result<SimplicialComplex> {
    if let Some(c) = find_unspanned_clique(l) {
        return Err(Error::domain(format!(
            "octahedralisation needs a flag complex; clique {:?} is unspanned",
            l.names(&c)
        )));
    }
    let mut names: Vec<String> = Vec::with_capacity(2 * l.num_vertices());
    for v in l.vertices() {
        names.push(plus_name(v));
        names.push(minus_name(v));
    }
    names.sort();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let plus: Vec<usize> = l.vertices().iter().map(|v| index[plus_name(v).as_str()]).collect();
    let minus: Vec<usize> = l.vertices().iter().map(|v| index[minus_name(v).as_str()]).collect();
    let mut out = BTreeSet::new();
    for s in l.simplices() {
        for mask in 0u64..(1u64 << s.len()) {
            let mut t: Simplex =
                s.iter().enumerate().map(|(b, &v)| if mask >> b & 1 == 1 { minus[v] } else { plus[v] }).collect();
            t.sort_unstable();
            out.insert(t);
        }
    }
    Ok(SimplicialComplex::from_closed(names, out))
}

/// Octahedralisation carrying the induced partite structure (`v±` in the part of `v`).
pub fn octahedralize_partite(
    l: &SimplicialComplex,
    parts: &PartiteStructure,
) -> Result<(SimplicialComplex, PartiteStructure)> {
    let s = octahedralize(l)?;
    let mut map = BTreeMap::new();
    for v in l.vertices() {
        let p = parts.part(v).ok_or_else(|| Error::validation(format!("vertex `{v}` has no part")))?;
        map.insert(plus_name(v), p);
        map.insert(minus_name(v), p);
    }
    Ok((s, PartiteStructure::new(map, parts.n())?))
}

/// Whether forgetting signs maps every simplex of `s` (an octahedralisation
/// of `l`) onto a simplex of `l`, and is the identity on `l^+`.
pub fn sign_forgetting_is_retraction(s: &SimplicialComplex, l: &SimplicialComplex) -> bool {
    let strip = |name: &str| name.strip_suffix('+').or_else(|| name.strip_suffix('-')).map(str::to_string);
    let image: Option<Vec<usize>> = s.vertices().iter().map(|v| strip(v).and_then(|u| l.vertex_index(&u))).collect();
    let Some(image) = image else { return false };
    s.simplices().all(|t| {
        let mut u: Simplex = t.iter().map(|&v| image[v]).collect();
        u.sort_unstable();
        u.dedup();
        l.contains(&u)
    })
}

/// Per-vertex link summary: link vertex count and link components.
pub(crate) fn vertex_link_components(x: &SimplicialComplex) -> Vec<(usize, Vec<Vec<usize>>)> {
    let adj = x.adjacency();
    let mut link_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); x.num_vertices()];
    for t in x.simplices().filter(|s| s.len() == 3) {
        link_edges[t[0]].push((t[1], t[2]));
        link_edges[t[1]].push((t[0], t[2]));
        link_edges[t[2]].push((t[0], t[1]));
    }
    (0..x.num_vertices())
        .map(|v| {
            let nbrs = &adj[v];
            let local = |w: usize| nbrs.binary_search(&w).unwrap();
            let mut ladj = vec![Vec::new(); nbrs.len()];
            for &(a, b) in &link_edges[v] {
                ladj[local(a)].push(local(b));
                ladj[local(b)].push(local(a));
            }
            let comps = components_of(&ladj).into_iter().map(|c| c.into_iter().map(|i| nbrs[i]).collect()).collect();
            (nbrs.len(), comps)
        })
        .collect()
}

/// Name given to the `k`-th vertex added by link surgery.
pub fn surgery_vertex_name(k: usize) -> String {
    format!("y#{k}")
}

fn check_two_dim_tripartite_flag(x: &SimplicialComplex, parts: &PartiteStructure) -> Result<()> {
    if x.dim() > 2 {
        return Err(Error::domain(format!("expected dimension at most 2, got {}", x.dim())));
    }
    if parts.n() > 3 {
        return Err(Error::domain(format!("expected a tripartite structure, got {} parts", parts.n())));
    }
    parts.validate(x)?;
    if let Some(c) = find_unspanned_clique(x) {
        return Err(Error::domain(format!("complex is not flag: clique {:?} is unspanned", x.names(&c))));
    }
    Ok(())
}

/// Homotopy-equivalent modification after which every vertex link is
/// connected with at least two vertices.
///
/// A vertex whose link is a single point is removed together with its edge.
/// A vertex `x` with disconnected link is repaired by picking the least link
/// vertex `v` and the least link vertex `w` outside the component of `v`, then
/// adding a vertex `y` joined to `v`, `w`, `x` with triangles `[v,y,x]` and
/// `[w,y,x]`. When `v` and `w` lie in different parts a helper vertex in the
/// part of `w` is first attached along `[v,x]`, and the repair then bridges
/// the helper to `w`. New vertices are named `y#0`, `y#1`, ... and placed in
/// the part not used by their triangle partners.
pub fn normalize_links(
    x: &SimplicialComplex,
    parts: &PartiteStructure,
) -> Result<(SimplicialComplex, PartiteStructure)> {
    check_two_dim_tripartite_flag(x, parts)?;
    if x.is_empty() || !x.is_connected() {
        return Err(Error::domain("normalize_links needs a nonempty connected complex"));
    }
    let mut cur = x.clone();
    let mut parts = PartiteStructure::new(parts.restrict(x).map().clone(), 3)?;
    let mut fresh = 0usize;
    loop {
        if cur.num_vertices() == 1 {
            return Err(Error::domain("a single vertex has an empty link and cannot be normalized"));
        }
        let summary = vertex_link_components(&cur);
        if let Some(v) = (0..cur.num_vertices()).find(|&v| summary[v].0 == 1) {
            cur = cur.filter(|s| !s.contains(&v));
            continue;
        }
        let Some(xv) = (0..cur.num_vertices()).find(|&v| summary[v].1.len() > 1) else {
            break;
        };
        // Components are sorted by least member, so the first holds the least link vertex.
        let comps = &summary[xv].1;
        let v = comps[0][0];
        let w = comps[1..].iter().map(|c| c[0]).min().unwrap();
        let name = |i: usize| cur.vertex_name(i).to_string();
        let (xn, vn, wn) = (name(xv), name(v), name(w));
        let (px, pv, pw) = (parts.part(&xn).unwrap(), parts.part(&vn).unwrap(), parts.part(&wn).unwrap());
        let third = |a: usize, b: usize| (0..3).find(|&p| p != a && p != b).unwrap();
        let mut new_tris: Vec<Vec<String>> = Vec::new();
        let bridge_from = if pv == pw {
            vn.clone()
        } else {
            let helper = surgery_vertex_name(fresh);
            fresh += 1;
            parts.insert(helper.clone(), pw);
            new_tris.push(vec![vn.clone(), helper.clone(), xn.clone()]);
            helper
        };
        let y = surgery_vertex_name(fresh);
        fresh += 1;
        parts.insert(y.clone(), third(px, pw));
        new_tris.push(vec![bridge_from, y.clone(), xn.clone()]);
        new_tris.push(vec![wn, y, xn]);
        let mut names: Vec<String> = cur.vertices().to_vec();
        let mut simplices: Vec<Vec<String>> = cur.simplices().map(|s| cur.names(s)).collect();
        for t in new_tris {
            names.extend(t.iter().cloned());
            simplices.push(t);
        }
        cur = SimplicialComplex::from_named_simplices(names, simplices);
    }
    let parts = PartiteStructure::new(parts.restrict(&cur).map().clone(), 3)?;
    Ok((cur, parts))
}

pub const CONE_VERTEX_NAMES: [&str; 3] = ["v^0", "v^1", "v^2"];

/// Checks the hypotheses placed on `L` before building `R(L)`.
pub fn check_rl_input(l: &SimplicialComplex, parts: &PartiteStructure) -> Result<()> {
    check_two_dim_tripartite_flag(l, parts)?;
    if l.is_empty() || !l.is_connected() {
        return Err(Error::domain("L must be nonempty and connected"));
    }
    for (v, (count, comps)) in vertex_link_components(l).into_iter().enumerate() {
        if count < 2 || comps.len() != 1 {
            return Err(Error::domain(format!(
                "link of vertex `{}` must be connected with at least two vertices (has {} vertices, {} components); run normalize_links first",
                l.vertex_name(v),
                count,
                comps.len()
            )));
        }
    }
    Ok(())
}

/// `R(L)`: the flag completion of `S(L)` together with three vertices
/// `v^0, v^1, v^2` of types 0, 1, 2, each joined to every vertex of a
/// different type.
pub fn build_rl(l: &SimplicialComplex, parts: &PartiteStructure) -> Result<(SimplicialComplex, PartiteStructure)> {
    check_rl_input(l, parts)?;
    let (s, sparts) = octahedralize_partite(l, &PartiteStructure::new(parts.map().clone(), 3)?)?;
    let mut names: Vec<String> = s.vertices().to_vec();
    let mut simplices: Vec<Vec<String>> = s.simplices().map(|t| s.names(t)).collect();
    let mut pmap = sparts.map().clone();
    for (i, c) in CONE_VERTEX_NAMES.iter().enumerate() {
        names.push(c.to_string());
        pmap.insert(c.to_string(), i);
    }
    for (i, c) in CONE_VERTEX_NAMES.iter().enumerate() {
        for (v, &p) in &pmap {
            if p != i {
                simplices.push(vec![c.to_string(), v.clone()]);
            }
        }
    }
    let raw = SimplicialComplex::from_named_simplices(names, simplices);
    let parts = PartiteStructure::new(pmap, 3)?;
    parts.validate(&raw)?;
    Ok((flag_completion(&raw), parts))
}

/// Convenience: the 1-skeleton of a simplex set as a complex on the given names.
pub fn graph_from_edges<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> SimplicialComplex {
    let names: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
    SimplicialComplex::from_named_simplices(
        names,
        edges.iter().map(|(a, b)| vec![a.as_ref().to_string(), b.as_ref().to_string()]),
    )
}
