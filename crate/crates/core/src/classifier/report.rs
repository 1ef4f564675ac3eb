use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Refuted,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum F2Status {
    Verified,
    Refuted,
    /// Holds if the listed assumptions hold.
    RefutedWithAssumptions,
    SupportedWithAssumptions,
    Unknown,
}

/// One computed fact a verdict rests on.
#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub kind: String,
    pub summary: String,
    pub data: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct FpEntry {
    pub n: usize,
    pub status: Status,
    /// Indices into `FinitenessReport::evidence`.
    pub evidence: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinitenessReport {
    pub fp_status: Vec<FpEntry>,
    pub f2_status: F2Status,
    pub f2_evidence: Vec<usize>,
    pub assumptions: Vec<String>,
    pub evidence: Vec<Evidence>,
    /// Short statement such as `"FP_1 not FP_2"`.
    pub verdict: String,
    /// Set when the criterion's hypotheses fail and no verdict is drawn.
    pub hypothesis_violated: Option<String>,
}

impl FinitenessReport {
    pub(crate) fn new() -> Self {
        FinitenessReport {
            fp_status: Vec::new(),
            f2_status: F2Status::Unknown,
            f2_evidence: Vec::new(),
            assumptions: Vec::new(),
            evidence: Vec::new(),
            verdict: String::new(),
            hypothesis_violated: None,
        }
    }

    pub(crate) fn add_evidence(&mut self, kind: &str, summary: String, data: serde_json::Value) -> usize {
        self.evidence.push(Evidence { kind: kind.to_string(), summary, data });
        self.evidence.len() - 1
    }

    pub fn fp(&self, n: usize) -> Status {
        self.fp_status.iter().find(|e| e.n == n).map_or(Status::Unknown, |e| e.status)
    }

    /// Whether the report says FP_n holds and FP_{n+1} fails.
    pub fn is_fp_not_next(&self, n: usize) -> bool {
        (0..=n).all(|k| self.fp(k) == Status::Verified) && self.fp(n + 1) == Status::Refuted
    }

    /// Every verified or refuted entry cites evidence, and assumption-backed
    /// conclusions are never marked verified.
    pub fn is_well_formed(&self) -> bool {
        let cites = |ev: &[usize]| !ev.is_empty() && ev.iter().all(|&i| i < self.evidence.len());
        self.fp_status.iter().all(|e| e.status == Status::Unknown || cites(&e.evidence))
            && match self.f2_status {
                F2Status::Unknown => true,
                F2Status::Verified | F2Status::Refuted => cites(&self.f2_evidence),
                _ => cites(&self.f2_evidence) && !self.assumptions.is_empty(),
            }
    }
}
