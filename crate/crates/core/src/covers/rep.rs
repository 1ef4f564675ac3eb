use serde::Serialize;

use super::perm::Permutation;
use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Least prime strictly greater than `n`.
pub fn next_prime_above(n: u64) -> u64 {
    (n + 1..).find(|&k| is_prime(k)).unwrap()
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let (mut r, mut b) = (1u64 % m, b % m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Least generator of the multiplicative group mod the prime `p`.
pub fn least_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1)).unwrap()
}

/// The representation of `π₁(Θ₁ ∨ Θ₂)` into `S_p` sending every `aᵢ` to
/// `λ` and every `bⱼ` to `μ`, expressed through edge labels: the `k`-th
/// label of side 0 carries `λ^{−k}`, the `k`-th label of side 1 carries
/// `μ^{−k}`, and base labels carry the identity.
#[derive(Clone, Debug, Serialize)]
pub struct BranchingRep {
    pub p: u64,
    pub r: u64,
    pub lambda: Permutation,
    pub mu: Permutation,
    pub sizes: [usize; 2],
}

/// Builds the representation for parts of the given sizes. Without an
/// explicit `p`, the least prime above `1 + max(sizes)` is used.
pub fn make_branching_rep(n1: usize, n2: usize, p: Option<u64>) -> Result<BranchingRep> {
    let bound = 1 + n1.max(n2) as u64;
    let p = match p {
        Some(p) if !is_prime(p) => return Err(Error::domain(format!("p = {p} is not prime"))),
        Some(p) if p <= bound => {
            return Err(Error::domain(format!("p = {p} must exceed 1 + max(|V1|, |V2|) = {bound}")))
        }
        Some(p) => p,
        None => next_prime_above(bound),
    };
    let r = least_primitive_root(p);
    let n = p as usize;
    let lambda = Permutation::from_fn(n, |y| (y + 1) % n)?;
    // Fixes the first point and conjugates λ to λ^r.
    let mu = Permutation::from_fn(n, |y| (y as u64 * r % p) as usize)?;
    Ok(BranchingRep { p, r, lambda, mu, sizes: [n1, n2] })
}

impl BranchingRep {
    /// Permutation attached to label `k` (0 = base) on side 0 or 1.
    pub fn g(&self, side: usize, k: usize) -> Permutation {
        let base = if side == 0 { &self.lambda } else { &self.mu };
        base.pow(-(k as i64))
    }

    /// Whether `μλμ⁻¹ = λ^r` and `λ` is a `p`-cycle.
    pub fn is_consistent(&self) -> bool {
        self.mu.compose(&self.lambda).compose(&self.mu.inverse()) == self.lambda.pow(self.r as i64)
            && self.lambda.is_full_cycle()
            && self.mu.apply(0) == 0
    }

    /// `(1 − r^n)·m mod p`, the exponent of `[λ^m, μ^n]` as a power of `λ`.
    pub fn commutator_exponent(&self, m: i64, n: i64) -> u64 {
        let p = self.p as i64;
        let rn = if n >= 0 {
            pow_mod(self.r, n as u64, self.p) as i64
        } else {
            pow_mod(pow_mod(self.r, self.p - 2, self.p), n.unsigned_abs(), self.p) as i64
        };
        ((1 - rn).rem_euclid(p) * m.rem_euclid(p)).rem_euclid(p) as u64
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorEntry {
    pub m: i64,
    pub n: i64,
    /// Exponent `e` with `[λ^m, μ^n] = λ^e`, if the commutator is a power of `λ`.
    pub exponent: Option<u64>,
    /// `(r^n − 1)m mod p`, the opposite sign convention.
    pub opposite_exponent: u64,
    pub p_cycle: bool,
    pub degenerate: bool,
}

/// Evaluates `[λ^m, μ^n] = λ^m μ^n λ^{−m} μ^{−n}` by permutation arithmetic.
pub fn commutator_entry(rep: &BranchingRep, m: i64, n: i64) -> CommutatorEntry {
    let c = Permutation::commutator(&rep.lambda.pow(m), &rep.mu.pow(n));
    // λ is y ↦ y+1, so a power λ^e is determined by the image of 0.
    let e = c.apply(0) as u64;
    let exponent = (rep.lambda.pow(e as i64) == c).then_some(e);
    let predicted = rep.commutator_exponent(m, n);
    let p = rep.p as i64;
    CommutatorEntry {
        m,
        n,
        exponent,
        opposite_exponent: ((p - predicted as i64) % p) as u64,
        p_cycle: c.is_full_cycle(),
        degenerate: c.is_identity(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorTable {
    pub p: u64,
    pub r: u64,
    pub entries: Vec<CommutatorEntry>,
    /// Every entry is a `p`-cycle equal to `λ^{(1−r^n)m}`.
    pub all_p_cycles: bool,
    /// Pairs `(m, n)` whose commutator is not a `p`-cycle. Since `μ` has
    /// order `p − 1`, the row `n = p − 1` is always trivial.
    pub failures: Vec<(i64, i64)>,
}

/// The table over `1 ≤ m, n ≤ p − 1`.
pub fn check_commutator_cycles(rep: &BranchingRep) -> CommutatorTable {
    let p = rep.p as i64;
    let entries: Vec<CommutatorEntry> =
        (1..p).flat_map(|m| (1..p).map(move |n| (m, n))).map(|(m, n)| commutator_entry(rep, m, n)).collect();
    let failures: Vec<(i64, i64)> = entries
        .iter()
        .filter(|e| !(e.p_cycle && e.exponent == Some(rep.commutator_exponent(e.m, e.n))))
        .map(|e| (e.m, e.n))
        .collect();
    CommutatorTable { p: rep.p, r: rep.r, all_p_cycles: failures.is_empty(), entries, failures }
}
