use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// A letter is `+(g+1)` for generator `g` and `-(g+1)` for its inverse.
pub type Letter = i32;
pub type Word = Vec<Letter>;

pub fn letter(generator: usize, inverse: bool) -> Letter {
    let l = generator as Letter + 1;
    if inverse {
        -l
    } else {
        l
    }
}

pub fn generator_of(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

pub fn inverse_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

/// Free reduction followed by cyclic reduction.
pub fn cyclically_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let (mut i, mut j) = (0, out.len());
    while j >= i + 2 && out[i] == -out[j - 1] {
        i += 1;
        j -= 1;
    }
    out[i..j].to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let p = GroupPresentation { generators, relators };
        p.validate()?;
        Ok(p)
    }

    /// Parses relators written over single-character or named generators,
    /// e.g. `["a", "b"]` with relator `"a a a B A B A"`; an uppercase first
    /// letter (or a trailing `^-1`) denotes an inverse.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let find = |tok: &str| -> Result<Letter> {
            if let Some(base) = tok.strip_suffix("^-1") {
                if let Some(i) = gens.iter().position(|g| g == base) {
                    return Ok(letter(i, true));
                }
            }
            if let Some(i) = gens.iter().position(|g| g == tok) {
                return Ok(letter(i, false));
            }
            let lower = tok.to_lowercase();
            if lower != tok {
                if let Some(i) = gens.iter().position(|g| *g == lower) {
                    return Ok(letter(i, true));
                }
            }
            Err(Error::Parse(format!("unknown generator `{tok}`")))
        };
        let relators = relators
            .iter()
            .map(|r| r.split_whitespace().map(find).collect::<Result<Word>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(gens, relators)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.generators.len();
        for r in &self.relators {
            if let Some(&l) = r.iter().find(|&&l| l == 0 || generator_of(l) >= n) {
                return Err(Error::validation(format!("relator letter {l} names no generator")));
            }
        }
        Ok(())
    }

    pub fn word_to_string(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&l| {
                let g = &self.generators[generator_of(l)];
                if l < 0 {
                    format!("{g}^-1")
                } else {
                    g.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Presentation of π₁ of a connected multigraph with optional 2-cells.
/// Generators are the edges outside a breadth-first spanning tree rooted at
/// vertex 0; `cells` are closed walks given as sequences of signed edge
/// indices (`+(e+1)` traverses edge `e` from its first to second endpoint).
pub fn graph_presentation(
    num_vertices: usize,
    edges: &[(usize, usize)],
    edge_names: &[String],
    cells: &[Vec<i64>],
) -> Result<GroupPresentation> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); num_vertices];
    for (e, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    let mut in_tree = vec![false; edges.len()];
    let mut seen = vec![false; num_vertices];
    if num_vertices > 0 {
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::domain("fundamental group requested for a disconnected complex"));
    }
    let mut gen_of = vec![usize::MAX; edges.len()];
    let mut generators = Vec::new();
    for e in 0..edges.len() {
        if !in_tree[e] {
            gen_of[e] = generators.len();
            generators.push(edge_names[e].clone());
        }
    }
    let relators = cells
        .iter()
        .map(|cell| {
            let w: Word = cell
                .iter()
                .filter_map(|&s| {
                    let e = (s.unsigned_abs() - 1) as usize;
                    (!in_tree[e]).then(|| letter(gen_of[e], s < 0))
                })
                .collect();
            cyclically_reduce(&w)
        })
        .filter(|w| !w.is_empty())
        .collect();
    GroupPresentation::new(generators, relators)
}

/// Spanning-tree presentation of π₁ of a connected simplicial complex:
/// generators are non-tree edges (named `a-b`), relators are triangle boundaries.
pub fn pi1_presentation(x: &SimplicialComplex) -> Result<GroupPresentation> {
    if x.is_empty() {
        return Err(Error::domain("fundamental group of the empty complex"));
    }
    let edges = x.edges();
    let names: Vec<String> = edges.iter().map(|&(a, b)| format!("{}-{}", x.vertex_name(a), x.vertex_name(b))).collect();
    let index: std::collections::HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let signed = |a: usize, b: usize| -> i64 {
        if a < b {
            index[&(a, b)] as i64 + 1
        } else {
            -(index[&(b, a)] as i64 + 1)
        }
    };
    let cells: Vec<Vec<i64>> = x
        .simplices_of_dim(2)
        .into_iter()
        .map(|t| vec![signed(t[0], t[1]), signed(t[1], t[2]), signed(t[2], t[0])])
        .collect();
    graph_presentation(x.num_vertices(), &edges, &names, &cells)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplifyStatus {
    /// Every generator was eliminated, so the group is trivial.
    Trivialized,
    /// The budget ran out or no further elimination applied.
    Unknown,
}

/// Result of Tietze simplification. `eliminated` lists, in order, each
/// removed original generator with the word (over original generators) it
/// was replaced by, so images of the simplified generators extend back to
/// the original presentation.
#[derive(Clone, Debug, Serialize)]
pub struct Simplified {
    pub presentation: GroupPresentation,
    /// Original index of each surviving generator.
    pub kept: Vec<usize>,
    pub eliminated: Vec<(usize, Word)>,
    pub status: SimplifyStatus,
    pub steps: usize,
}

/// Repeatedly removes a generator that occurs exactly once in some relator,
/// choosing the shortest such relator first, for at most `budget` steps.
pub fn simplify(p: &GroupPresentation, budget: usize) -> Simplified {
    const MAX_TOTAL_LENGTH: usize = 1 << 20;
    let n = p.generators.len();
    let mut alive = vec![true; n];
    let mut rels: Vec<Word> = p.relators.iter().map(|r| cyclically_reduce(r)).collect();
    let mut eliminated = Vec::new();
    let mut steps = 0;
    loop {
        rels.retain(|r| !r.is_empty());
        rels.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        rels.dedup();
        if steps >= budget {
            break;
        }
        let mut choice = None;
        'outer: for (ri, r) in rels.iter().enumerate() {
            let mut counts = std::collections::BTreeMap::new();
            for &l in r {
                *counts.entry(generator_of(l)).or_insert(0usize) += 1;
            }
            for (&g, &c) in &counts {
                if c == 1 {
                    choice = Some((ri, g));
                    break 'outer;
                }
            }
        }
        let Some((ri, g)) = choice else { break };
        let r = rels.remove(ri);
        let pos = r.iter().position(|&l| generator_of(l) == g).unwrap();
        // r = u g^ε v, so g^ε = (v u)^{-1}.
        let mut vu: Word = r[pos + 1..].to_vec();
        vu.extend_from_slice(&r[..pos]);
        let replacement = if r[pos] > 0 { inverse_word(&vu) } else { vu };
        let inv_replacement = inverse_word(&replacement);
        let mut total = 0;
        for rel in rels.iter_mut() {
            let mut out = Vec::with_capacity(rel.len());
            for &l in rel.iter() {
                if generator_of(l) == g {
                    out.extend_from_slice(if l > 0 { &replacement } else { &inv_replacement });
                } else {
                    out.push(l);
                }
            }
            *rel = cyclically_reduce(&out);
            total += rel.len();
        }
        alive[g] = false;
        eliminated.push((g, replacement));
        steps += 1;
        if total > MAX_TOTAL_LENGTH {
            break;
        }
    }
    let kept: Vec<usize> = (0..n).filter(|&g| alive[g]).collect();
    let mut new_index = vec![usize::MAX; n];
    for (i, &g) in kept.iter().enumerate() {
        new_index[g] = i;
    }
    let relators: Vec<Word> =
        rels.iter().map(|r| r.iter().map(|&l| letter(new_index[generator_of(l)], l < 0)).collect()).collect();
    let status = if kept.is_empty() { SimplifyStatus::Trivialized } else { SimplifyStatus::Unknown };
    Simplified {
        presentation: GroupPresentation {
            generators: kept.iter().map(|&g| p.generators[g].clone()).collect(),
            relators,
        },
        kept,
        eliminated,
        status,
        steps,
    }
}

impl Simplified {
    /// Extends values of the kept generators to all original generators
    /// by substituting the eliminations in reverse order.
    pub fn extend_assignment<T: Clone>(
        &self,
        kept_values: &[T],
        identity: &T,
        mul: impl Fn(&T, &T) -> T,
        inv: impl Fn(&T) -> T,
    ) -> Vec<T> {
        let n = self.kept.len() + self.eliminated.len();
        let mut vals: Vec<Option<T>> = vec![None; n];
        for (i, &g) in self.kept.iter().enumerate() {
            vals[g] = Some(kept_values[i].clone());
        }
        for (g, w) in self.eliminated.iter().rev() {
            let mut acc = identity.clone();
            for &l in w {
                let v = vals[generator_of(l)].as_ref().expect("substitution order");
                let v = if l < 0 { inv(v) } else { v.clone() };
                acc = mul(&acc, &v);
            }
            vals[*g] = Some(acc);
        }
        vals.into_iter().map(|v| v.expect("every generator assigned")).collect()
    }
}
