use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use super::matrix::{sparse_smith, IntegerMatrix, SparseCol};
use crate::simplicial::{Simplex, SimplicialComplex};

/// One reduced homology group `Z^betti ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: i64,
    pub betti: usize,
    #[serde(serialize_with = "ser_torsion")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

fn ser_torsion<S: Serializer>(t: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for v in t {
        match v.to_u64() {
            Some(u) => seq.serialize_element(&u)?,
            None => seq.serialize_element(&v.to_string())?,
        }
    }
    seq.end()
}

/// Reduced homology in consecutive degrees. The empty complex is reported
/// as a single group `Z` in degree −1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn group(&self, degree: i64) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.degree == degree)
    }

    pub fn betti(&self, degree: i64) -> usize {
        self.group(degree).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, degree: i64) -> Vec<BigInt> {
        self.group(degree).map_or_else(Vec::new, |g| g.torsion.clone())
    }

    /// True when every reported group vanishes.
    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// Degrees with nonzero homology.
    pub fn nonzero_degrees(&self) -> Vec<i64> {
        self.groups.iter().filter(|g| !g.is_zero()).map(|g| g.degree).collect()
    }

    /// Short text form such as `H0=0 H1=Z^2+Z/2`.
    pub fn summary(&self) -> String {
        self.groups
            .iter()
            .map(|g| {
                let mut parts = Vec::new();
                if g.betti == 1 {
                    parts.push("Z".to_string());
                } else if g.betti > 1 {
                    parts.push(format!("Z^{}", g.betti));
                }
                parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
                let body = if parts.is_empty() { "0".to_string() } else { parts.join("+") };
                format!("H{}={}", g.degree, body)
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn simplices_by_dim(x: &SimplicialComplex, top: usize) -> Vec<Vec<&Simplex>> {
    let mut out: Vec<Vec<&Simplex>> = vec![Vec::new(); top + 1];
    for s in x.simplices() {
        if s.len() <= top + 1 {
            out[s.len() - 1].push(s);
        }
    }
    out
}

/// Sparse columns of the augmented boundary `∂_k`; `∂_0` maps every vertex
/// to the single generator of degree −1.
fn boundary_columns(by_dim: &[Vec<&Simplex>], k: usize) -> (Vec<SparseCol>, usize) {
    if k == 0 {
        return (by_dim[0].iter().map(|_| vec![(0, 1)]).collect(), 1);
    }
    let index: HashMap<&[usize], usize> = by_dim[k - 1].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let cols = by_dim[k]
        .iter()
        .map(|s| {
            let mut col: SparseCol = (0..s.len())
                .map(|i| {
                    let face: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                    (index[face.as_slice()], if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    (cols, by_dim[k - 1].len())
}

/// Augmented boundary matrix `∂_k : C_k → C_{k−1}` as a dense matrix.
pub fn boundary_matrix(x: &SimplicialComplex, k: usize) -> IntegerMatrix {
    let by_dim = simplices_by_dim(x, k);
    let (cols, nrows) = boundary_columns(&by_dim, k);
    let mut m = IntegerMatrix::zeros(nrows, cols.len());
    for (c, col) in cols.iter().enumerate() {
        for &(r, v) in col {
            m.set(r, c, BigInt::from(v));
        }
    }
    m
}

struct Reduced {
    rank: usize,
    torsion: Vec<BigInt>,
    /// Rows holding unit pivots, known only when the fast path succeeded.
    pivot_rows: Option<Vec<usize>>,
}

fn reduce(mut cols: Vec<SparseCol>, nrows: usize, cleared: &[usize]) -> Reduced {
    let original = cols.clone();
    for &c in cleared {
        cols[c].clear();
    }
    let mut lows = Vec::new();
    if let Some(rank) = unit_pivot_rank_with_lows(&mut cols, nrows, &mut lows) {
        return Reduced { rank, torsion: Vec::new(), pivot_rows: Some(lows) };
    }
    let snf = sparse_smith(&original, nrows);
    Reduced { rank: snf.rank(), torsion: snf.torsion(), pivot_rows: None }
}

fn unit_pivot_rank_with_lows(cols: &mut [SparseCol], nrows: usize, lows: &mut Vec<usize>) -> Option<usize> {
    let rank = super::matrix::unit_pivot_rank(cols, nrows)?;
    lows.extend(cols.iter().filter_map(|c| c.last().map(|&(r, _)| r)));
    Some(rank)
}

/// Reduced integral homology in degrees `0..=max_dim`.
pub fn reduced_homology(x: &SimplicialComplex, max_dim: usize) -> HomologyResult {
    if x.is_empty() {
        return HomologyResult { groups: vec![HomologyGroup { degree: -1, betti: 1, torsion: Vec::new() }] };
    }
    let top = max_dim + 1;
    let by_dim = simplices_by_dim(x, top);
    let mut reduced: Vec<Option<Reduced>> = (0..=top).map(|_| None).collect();
    // High degree first, so pivots of ∂_{k+1} can clear columns of ∂_k.
    let mut cleared: Vec<usize> = Vec::new();
    for k in (0..=top).rev() {
        let (cols, nrows) = boundary_columns(&by_dim, k);
        let r = reduce(cols, nrows, &cleared);
        cleared = r.pivot_rows.clone().unwrap_or_default();
        reduced[k] = Some(r);
    }
    let groups = (0..=max_dim)
        .map(|k| {
            let here = reduced[k].as_ref().unwrap();
            let above = reduced[k + 1].as_ref().unwrap();
            HomologyGroup {
                degree: k as i64,
                betti: by_dim[k].len() - here.rank - above.rank,
                torsion: above.torsion.clone(),
            }
        })
        .collect();
    HomologyResult { groups }
}

/// Reduced homology in every degree up to the dimension of `x`.
pub fn reduced_homology_all(x: &SimplicialComplex) -> HomologyResult {
    reduced_homology(x, x.dim().max(0) as usize)
}

/// Level reported for complexes with no reduced homology in any degree.
pub const ACYCLIC: i64 = i64::MAX;

/// `−2` for the empty complex, otherwise the largest `n ≥ −1` with
/// `H̃_i = 0` for `0 ≤ i ≤ n`; [`ACYCLIC`] when all groups vanish.
pub fn homological_connectivity(x: &SimplicialComplex) -> i64 {
    if x.is_empty() {
        return -2;
    }
    let h = reduced_homology_all(x);
    match h.nonzero_degrees().first() {
        Some(&d) => d - 1,
        None => ACYCLIC,
    }
}

/// Whether `x` is homologically `n`-connected, computing only the degrees needed.
pub fn is_homologically_connected(x: &SimplicialComplex, n: i64) -> bool {
    if n <= -2 {
        return true;
    }
    if x.is_empty() {
        return false;
    }
    if n == -1 {
        return true;
    }
    reduced_homology(x, n as usize).is_zero()
}
