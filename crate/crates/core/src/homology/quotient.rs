use serde::Serialize;

use super::presentation::{generator_of, GroupPresentation, Letter};
use crate::covers::Permutation;
use crate::error::{Error, Result};

/// Default cap on the nominal number of assignments examined.
pub const DEFAULT_SEARCH_LIMIT: u128 = 50_000_000;

/// A homomorphism to a symmetric group, given by generator images, that
/// kills every relator and is not trivial.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientWitness {
    pub degree: usize,
    pub images: Vec<(String, Permutation)>,
}

impl QuotientWitness {
    /// Re-checks the witness against a presentation.
    pub fn verify(&self, p: &GroupPresentation) -> bool {
        let perms: Vec<Permutation> = self.images.iter().map(|(_, g)| g.clone()).collect();
        perms.len() == p.generators.len()
            && perms.iter().any(|g| !g.is_identity())
            && p.relators.iter().all(|r| eval(r, &perms, self.degree).is_identity())
    }
}

fn eval(w: &[Letter], perms: &[Permutation], degree: usize) -> Permutation {
    w.iter().fold(Permutation::identity(degree), |acc, &l| {
        let g = &perms[generator_of(l)];
        acc.compose(&if l < 0 { g.inverse() } else { g.clone() })
    })
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One permutation of each cycle type, with cycles on consecutive points.
fn class_representatives(d: usize) -> Vec<Permutation> {
    partitions(d, d)
        .into_iter()
        .map(|parts| {
            let mut start = 0;
            let cycles: Vec<Vec<usize>> = parts
                .iter()
                .map(|&len| {
                    let c = (start..start + len).collect();
                    start += len;
                    c
                })
                .collect();
            Permutation::from_cycles(d, &cycles).unwrap()
        })
        .collect()
}

fn all_permutations(d: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    permute(&mut cur, 0, &mut out);
    out.sort();
    out
}

fn permute(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == cur.len() {
        out.push(Permutation::from_images(cur.clone()).unwrap());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permute(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Nominal number of assignments the search may visit up to `max_degree`.
pub fn search_size(generators: usize, max_degree: usize) -> u128 {
    (2..=max_degree)
        .map(|d| {
            if generators == 0 {
                return 0;
            }
            let reps = partitions(d, d).len() as u128;
            factorial(d).checked_pow(generators as u32 - 1).and_then(|x| x.checked_mul(reps)).unwrap_or(u128::MAX)
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Exhaustive search for a nontrivial permutation representation of degree
/// `2..=max_degree` satisfying every relator. The first generator ranges
/// over conjugacy-class representatives, which loses nothing since any
/// solution can be conjugated to such a form.
pub fn finite_quotient_witness(
    p: &GroupPresentation,
    max_degree: usize,
    limit: u128,
) -> Result<Option<QuotientWitness>> {
    p.validate()?;
    let n = p.generators.len();
    let size = search_size(n, max_degree);
    if size > limit {
        return Err(Error::Resource {
            what: format!("permutation search over {n} generators up to degree {max_degree}"),
            bound: size,
        });
    }
    if n == 0 {
        return Ok(None);
    }
    // A relator is checked once every generator it mentions is assigned.
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (ri, r) in p.relators.iter().enumerate() {
        let last = r.iter().map(|&l| generator_of(l)).max().unwrap_or(0);
        due[last].push(ri);
    }
    for d in 2..=max_degree {
        let reps = class_representatives(d);
        let all = all_permutations(d);
        let mut assigned: Vec<Permutation> = Vec::with_capacity(n);
        if search(p, &due, d, &reps, &all, &mut assigned) {
            return Ok(Some(QuotientWitness {
                degree: d,
                images: p.generators.iter().cloned().zip(assigned).collect(),
            }));
        }
    }
    Ok(None)
}

fn search(
    p: &GroupPresentation,
    due: &[Vec<usize>],
    d: usize,
    reps: &[Permutation],
    all: &[Permutation],
    assigned: &mut Vec<Permutation>,
) -> bool {
    let k = assigned.len();
    if k == p.generators.len() {
        return assigned.iter().any(|g| !g.is_identity());
    }
    let choices = if k == 0 { reps } else { all };
    for g in choices {
        assigned.push(g.clone());
        let ok = due[k].iter().all(|&ri| eval(&p.relators[ri], assigned, d).is_identity());
        if ok && search(p, due, d, reps, all, assigned) {
            return true;
        }
        assigned.pop();
    }
    false
}
