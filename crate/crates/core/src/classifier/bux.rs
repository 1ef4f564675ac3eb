use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use super::report::{F2Status, FinitenessReport, FpEntry, Status};
use crate::error::{Error, Result};
use crate::homology::{homological_connectivity, letter, GroupPresentation, ACYCLIC};
use crate::simplicial::{full_subcomplex_by, link, SimplicialComplex};

/// `A_Γ`: a generator per vertex and `[v, w]` per edge.
pub fn raag_presentation(gamma: &SimplicialComplex) -> GroupPresentation {
    let relators = gamma
        .edges()
        .into_iter()
        .map(|(a, b)| vec![letter(a, false), letter(b, false), letter(a, true), letter(b, true)])
        .collect();
    GroupPresentation { generators: gamma.vertices().to_vec(), relators }
}

/// An integer label per vertex, defining `A_Γ → Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightAssignment(pub BTreeMap<String, i64>);

impl WeightAssignment {
    pub fn uniform(gamma: &SimplicialComplex, w: i64) -> Self {
        WeightAssignment(gamma.vertices().iter().map(|v| (v.clone(), w)).collect())
    }

    pub fn validate(&self, gamma: &SimplicialComplex) -> Result<()> {
        if let Some(v) = gamma.vertices().iter().find(|v| !self.0.contains_key(*v)) {
            return Err(Error::validation(format!("vertex `{v}` has no weight")));
        }
        if let Some(v) = self.0.keys().find(|v| gamma.vertex_index(v).is_none()) {
            return Err(Error::validation(format!("weight given for unknown vertex `{v}`")));
        }
        Ok(())
    }

    /// The dead subcomplex `Γ†`, spanned by label-0 vertices.
    pub fn dead(&self, gamma: &SimplicialComplex) -> SimplicialComplex {
        full_subcomplex_by(gamma, |v| self.0[v] == 0)
    }

    /// The living subcomplex, spanned by vertices with nonzero label.
    pub fn living(&self, gamma: &SimplicialComplex) -> SimplicialComplex {
        full_subcomplex_by(gamma, |v| self.0[v] != 0)
    }
}

#[derive(Clone, Debug, Serialize)]
struct DeadSimplexRow {
    simplex: Vec<String>,
    dim: i64,
    connectivity: Option<i64>,
}

/// Finiteness of `ker(A_Γ → Z)` from the connectivity of
/// `living ∩ Lk(σ, Γ)` over all dead simplices `σ`, including the empty one.
pub fn bux_gonzalez_classify(
    gamma: &SimplicialComplex,
    w: &WeightAssignment,
    n_max: usize,
) -> Result<FinitenessReport> {
    w.validate(gamma)?;
    let mut report = FinitenessReport::new();
    if gamma.is_empty() {
        let ev = report.add_evidence("empty_complex", "A_Γ is trivial".into(), json!(null));
        report.fp_status = (0..=n_max).map(|n| FpEntry { n, status: Status::Verified, evidence: vec![ev] }).collect();
        report.f2_status = F2Status::Verified;
        report.f2_evidence.push(ev);
        report.verdict = format!("FP_{n_max} (checked through {n_max})");
        return Ok(report);
    }
    let dead = w.dead(gamma);
    let living = w.living(gamma);
    let mut rows = vec![(Vec::<String>::new(), -1i64, homological_connectivity(&living))];
    for s in dead.simplices() {
        let names = dead.names(s);
        let idx = gamma.simplex_from_names(&names).expect("dead simplex lies in Γ");
        let lk = link(gamma, &idx);
        let c = homological_connectivity(&full_subcomplex_by(&lk, |v| w.0[v] != 0));
        rows.push((names, s.len() as i64 - 1, c));
    }
    let table: Vec<DeadSimplexRow> = rows
        .iter()
        .map(|(s, d, c)| DeadSimplexRow { simplex: s.clone(), dim: *d, connectivity: (*c != ACYCLIC).then_some(*c) })
        .collect();
    let ev = report.add_evidence(
        "dead_simplex_connectivity",
        format!("{} dead simplices (with the empty one); connectivity null means acyclic", rows.len()),
        json!(table),
    );
    let mut first_failure = None;
    for n in 0..=n_max {
        let fail = rows.iter().find(|(_, d, c)| *c < n as i64 - d - 2);
        let status = if fail.is_none() { Status::Verified } else { Status::Refuted };
        if let (Some((s, d, c)), None) = (fail, &first_failure) {
            first_failure = Some((n, s.clone(), *d, *c));
        }
        report.fp_status.push(FpEntry { n, status, evidence: vec![ev] });
    }
    if let Some((n, s, d, c)) = &first_failure {
        let fe = report.add_evidence(
            "first_failure",
            format!("FP_{n} fails at σ = {s:?}: connectivity {c} < {}", *n as i64 - d - 2),
            json!({"n": n, "simplex": s, "dim": d, "connectivity": c}),
        );
        report.fp_status[*n].evidence.push(fe);
    }
    let se = report.add_evidence(
        "living_simply_connected",
        "homological stand-in for simple connectivity of the living subcomplex".into(),
        json!({"connectivity": rows[0].2.min(i64::MAX - 1)}),
    );
    // F₂ needs the living subcomplex simply connected; homology alone can refute it.
    report.f2_status = if rows[0].2 < 1 { F2Status::Refuted } else { F2Status::Unknown };
    if report.f2_status == F2Status::Refuted {
        report.f2_evidence.push(se);
    }
    report.verdict = match first_failure {
        None => format!("FP_{n_max} (checked through {n_max})"),
        Some((0, ..)) => "not FP_0".to_string(),
        Some((n, ..)) => format!("FP_{} not FP_{n}", n - 1),
    };
    Ok(report)
}
