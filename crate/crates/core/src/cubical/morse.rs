use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::kgamma::{Coord, KGammaView, ProductCell};
use crate::error::{Error, Result};
use crate::simplicial::{full_subcomplex_by, join, SimplicialComplex};

/// Orientation of a cage edge: `Up` points toward vertex 1, `Down` toward 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    /// Change of the height function along the edge from 0 to 1.
    pub fn sign(self) -> i64 {
        match self {
            Direction::Up => 1,
            Direction::Down => -1,
        }
    }
}

/// An orientation of every cage edge, keyed by edge label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseData {
    directions: BTreeMap<String, Direction>,
}

impl MorseData {
    /// Requires exactly one direction per edge label of the view.
    pub fn new(view: &KGammaView, directions: BTreeMap<String, Direction>) -> Result<Self> {
        for cage in view.cages() {
            for l in &cage.labels {
                if !directions.contains_key(l) {
                    return Err(Error::validation(format!("edge `{l}` has no orientation")));
                }
            }
        }
        let known = view.cages().iter().map(|c| c.labels.len()).sum::<usize>();
        if directions.len() != known {
            let extra = directions
                .keys()
                .find(|k| !view.cages().iter().any(|c| c.label_index(k).is_some()))
                .cloned()
                .unwrap_or_default();
            return Err(Error::validation(format!("orientation names unknown edge `{extra}`")));
        }
        Ok(MorseData { directions })
    }

    /// Every edge oriented the same way.
    pub fn uniform(view: &KGammaView, d: Direction) -> Self {
        let directions = view.cages().iter().flat_map(|c| c.labels.iter().map(move |l| (l.clone(), d))).collect();
        MorseData { directions }
    }

    pub fn direction(&self, label: &str) -> Direction {
        self.directions[label]
    }

    pub fn directions(&self) -> &BTreeMap<String, Direction> {
        &self.directions
    }

    /// Whether the edge with this label leaves the endpoint `xi` upward.
    pub fn ascends_from(&self, label: &str, xi: u8) -> bool {
        matches!((xi, self.direction(label)), (0, Direction::Up) | (1, Direction::Down))
    }
}

/// Ascending and descending links at `x`: the full subcomplexes of the
/// vertex link on edges leaving `xᵢ` upward, respectively downward.
pub fn ascending_descending_links(
    view: &KGammaView,
    morse: &MorseData,
    x: &[u8],
) -> (SimplicialComplex, SimplicialComplex) {
    let (lk, parts) = view.vertex_link(x);
    let up = |v: &str| morse.ascends_from(v, x[parts.part(v).unwrap()]);
    (full_subcomplex_by(&lk, up), full_subcomplex_by(&lk, |v| !up(v)))
}

/// A Morse complex `K_Γ` with a chosen vertex.
#[derive(Clone, Copy, Debug)]
pub struct MorseFactor<'a> {
    pub view: &'a KGammaView,
    pub morse: &'a MorseData,
    pub x: &'a [u8],
}

#[derive(Clone, Debug)]
pub struct ProductLinks {
    pub ascending: SimplicialComplex,
    pub descending: SimplicialComplex,
    /// Present when the explicit product was also built: whether its
    /// links, computed from the height function, equal the joins.
    pub oracle_agrees: Option<bool>,
}

/// Links at `(x₁, x₂)` of `K₁ × K₂` with height `f₁ + f₂`, as joins of the
/// factor links. With `oracle`, the product cells are also enumerated and
/// the links recomputed from the definition: a cell contributes when the
/// base vertex is the unique minimum (or maximum) of the height on it.
pub fn product_morse_links(a: MorseFactor<'_>, b: MorseFactor<'_>, oracle: bool) -> ProductLinks {
    let (a_up, a_down) = ascending_descending_links(a.view, a.morse, a.x);
    let (b_up, b_down) = ascending_descending_links(b.view, b.morse, b.x);
    let ascending = join(&a_up, &b_up);
    let descending = join(&a_down, &b_down);
    let oracle_agrees = oracle.then(|| {
        let (up, down) = explicit_product_links(a, b);
        up == ascending && down == descending
    });
    ProductLinks { ascending, descending, oracle_agrees }
}

fn corner_cells(f: MorseFactor<'_>) -> Vec<ProductCell> {
    (0..=f.view.n()).flat_map(|d| f.view.enumerate_cells(d)).filter(|c| c.has_corner(f.x)).collect()
}

/// Edge coordinates of a cell with their label and height slope from the corner.
fn edges_at(f: MorseFactor<'_>, cell: &ProductCell) -> Vec<(String, i64)> {
    cell.coords
        .iter()
        .enumerate()
        .filter_map(|(i, c)| match c {
            Coord::Edge(e) => {
                let label = f.view.cages()[i].labels[*e].clone();
                let slope = f.morse.direction(&label).sign() * if f.x[i] == 0 { 1 } else { -1 };
                Some((label, slope))
            }
            Coord::Vertex(_) => None,
        })
        .collect()
}

fn explicit_product_links(a: MorseFactor<'_>, b: MorseFactor<'_>) -> (SimplicialComplex, SimplicialComplex) {
    let ca = corner_cells(a);
    let cb = corner_cells(b);
    // Simplices as (label, from the second factor) pairs.
    let mut up: Vec<Vec<(String, bool)>> = Vec::new();
    let mut down: Vec<Vec<(String, bool)>> = Vec::new();
    for c1 in &ca {
        let e1 = edges_at(a, c1);
        for c2 in &cb {
            let e2 = edges_at(b, c2);
            let edges: Vec<((String, bool), i64)> = e1
                .iter()
                .map(|(l, s)| ((l.clone(), false), *s))
                .chain(e2.iter().map(|(l, s)| ((l.clone(), true), *s)))
                .collect();
            if edges.is_empty() {
                continue;
            }
            // Heights of all other corners relative to the base corner.
            let k = edges.len();
            let heights: Vec<i64> =
                (1..1usize << k).map(|m| (0..k).filter(|j| m >> j & 1 == 1).map(|j| edges[j].1).sum()).collect();
            let names: Vec<(String, bool)> = edges.into_iter().map(|(l, _)| l).collect();
            if heights.iter().all(|&h| h > 0) {
                up.push(names);
            } else if heights.iter().all(|&h| h < 0) {
                down.push(names);
            }
        }
    }
    (named_complex(up), named_complex(down))
}

/// Names vertices as `join` does: plain labels unless the two sides share one.
fn named_complex(simplices: Vec<Vec<(String, bool)>>) -> SimplicialComplex {
    let side = |right: bool| simplices.iter().flatten().filter(move |(_, r)| *r == right).map(|(l, _)| l);
    let left: std::collections::BTreeSet<&String> = side(false).collect();
    let overlap = side(true).any(|l| left.contains(l));
    let name = |(l, right): &(String, bool)| {
        if overlap {
            format!("{l}#{}", if *right { 'R' } else { 'L' })
        } else {
            l.clone()
        }
    };
    let named: Vec<Vec<String>> = simplices.iter().map(|s| s.iter().map(name).collect()).collect();
    let mut verts: Vec<String> = named.iter().flatten().cloned().collect();
    verts.sort();
    verts.dedup();
    SimplicialComplex::from_named_simplices(verts, named)
}
