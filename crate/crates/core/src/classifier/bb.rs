use serde::Serialize;
use serde_json::json;

use super::report::{F2Status, FinitenessReport, FpEntry, Status};
use crate::error::{Error, Result};
use crate::homology::{reduced_homology, HomologyResult};
use crate::simplicial::SimplicialComplex;

/// Reduced homology of the ascending and descending links at one vertex
/// (or vertex type) of a Morse complex.
#[derive(Clone, Debug, Serialize)]
pub struct LinkTable {
    pub vertex: String,
    pub ascending: HomologyResult,
    pub descending: HomologyResult,
    /// Highest degree the tables were computed through.
    pub computed_through: i64,
    /// A structural reason both links are simply connected, when known.
    pub simply_connected_reason: Option<String>,
}

impl LinkTable {
    pub fn from_links(vertex: &str, asc: &SimplicialComplex, desc: &SimplicialComplex, through: usize) -> Self {
        LinkTable {
            vertex: vertex.to_string(),
            ascending: reduced_homology(asc, through),
            descending: reduced_homology(desc, through),
            computed_through: through as i64,
            simply_connected_reason: None,
        }
    }

    fn zero_in(&self, d: i64) -> bool {
        let z = |h: &HomologyResult| h.group(d).is_none_or(|g| g.is_zero());
        z(&self.ascending) && z(&self.descending)
    }
}

/// The Bestvina–Brady criterion on link homology tables. With `n` given,
/// checks that every table vanishes below `n` and in degree `n + 1`, and
/// is nonzero somewhere in degree `n`. Without `n`, the least degree with
/// nonzero homology is used.
pub fn bb_morse_classify(tables: &[LinkTable], n: Option<usize>) -> Result<FinitenessReport> {
    if tables.is_empty() {
        return Err(Error::domain("no link tables"));
    }
    let through = tables.iter().map(|t| t.computed_through).min().unwrap();
    let first_nonzero = (-1..=through).find(|&d| !tables.iter().all(|t| t.zero_in(d)));
    let mut report = FinitenessReport::new();
    let data: Vec<_> = tables
        .iter()
        .map(|t| json!({"vertex": t.vertex, "ascending": t.ascending.summary(), "descending": t.descending.summary()}))
        .collect();
    let ev = report.add_evidence(
        "link_homology",
        format!("{} link tables through degree {through}", tables.len()),
        json!(data),
    );
    let Some(n) = n.map(|n| n as i64).or(first_nonzero.map(|d| d.max(0))) else {
        // Acyclic through the computed range: FP up to that degree.
        let top = through.max(0) as usize;
        report.fp_status = (0..=top).map(|k| FpEntry { n: k, status: Status::Verified, evidence: vec![ev] }).collect();
        report.verdict = format!("FP_{top} (links acyclic through degree {through})");
        return Ok(report);
    };
    if through < n + 1 {
        return Err(Error::domain(format!("tables computed through degree {through}, need {}", n + 1)));
    }
    if let Some(d) = (-1..n).find(|&d| !tables.iter().all(|t| t.zero_in(d))) {
        report.hypothesis_violated = Some(format!("some link has nonzero homology in degree {d} < n = {n}"));
        report.verdict = "no verdict".into();
        return Ok(report);
    }
    let nonzero_n = tables.iter().any(|t| !t.zero_in(n));
    let zero_next = tables.iter().all(|t| t.zero_in(n + 1));
    let nu = n as usize;
    report.fp_status = (0..=nu).map(|k| FpEntry { n: k, status: Status::Verified, evidence: vec![ev] }).collect();
    if nonzero_n && zero_next {
        report.fp_status.push(FpEntry { n: nu + 1, status: Status::Refuted, evidence: vec![ev] });
        report.verdict = format!("FP_{n} not FP_{}", n + 1);
    } else if !nonzero_n {
        report.verdict = format!("FP_{}", n + 1);
        report.fp_status.push(FpEntry { n: nu + 1, status: Status::Verified, evidence: vec![ev] });
    } else {
        report.hypothesis_violated = Some(format!("some link has nonzero homology in degree {}", n + 1));
        report.verdict = format!("FP_{n}");
    }
    if report.fp(2) == Status::Refuted {
        report.f2_status = F2Status::Refuted;
        report.f2_evidence.push(ev);
    } else if report.fp(2) == Status::Verified {
        let reasons: Vec<&str> = tables.iter().filter_map(|t| t.simply_connected_reason.as_deref()).collect();
        let ce = report.add_evidence(
            "simple_connectivity",
            "H̃₀ = H̃₁ = 0 for every link; structural reasons attached where known".into(),
            json!(reasons),
        );
        report.f2_status = F2Status::SupportedWithAssumptions;
        report.f2_evidence = vec![ev, ce];
        report
            .assumptions
            .push("every ascending and descending link is simply connected; only H̃₀ = H̃₁ = 0 is computed".into());
    }
    Ok(report)
}
