use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::json;

use super::bb::{bb_morse_classify, LinkTable};
use super::report::{F2Status, FinitenessReport, Status};
use crate::covers::{
    branched_morse_links, certificate_for, Branch3dCertificate, BranchSetting, Permutation, SpatialBranching,
};
use crate::cubical::{
    all_vertices, ascending_descending_links, base_label, build_kgamma, vertex_name, Direction, KGammaView, MorseData,
};
use crate::error::{Error, Result};
use crate::homology::{
    finite_quotient_witness, generator_of, pi1_presentation, reduced_homology, simplify, GroupPresentation,
    QuotientWitness, SimplifyStatus, DEFAULT_SEARCH_LIMIT,
};
use crate::simplicial::{
    barycentric_subdivision, build_rl, find_isomorphism, full_subcomplex_by, join, normalize_links,
    octahedralize_partite, PartiteStructure, SimplicialComplex, CONE_VERTEX_NAMES,
};

/// `⟨s, t | s³ = t⁵ = (st)²⟩`, the binary icosahedral group: perfect, of order 120.
pub fn binary_icosahedral() -> GroupPresentation {
    GroupPresentation::parse(&["s", "t"], &["s s s T S T S", "t t t t t T S T S"]).expect("fixed presentation")
}

/// Triangulated presentation complex: one base vertex, each generator a
/// loop of three edges, and each relator a disc glued along its boundary
/// word through an inner ring of vertices and a centre.
pub fn presentation_complex(p: &GroupPresentation) -> Result<SimplicialComplex> {
    p.validate()?;
    if p.relators.iter().any(|r| r.is_empty()) {
        return Err(Error::domain("empty relator"));
    }
    let base = "o".to_string();
    let loop_vertices = |g: usize| [base.clone(), format!("{}1", p.generators[g]), format!("{}2", p.generators[g])];
    let mut names = vec![base.clone()];
    let mut simplices: Vec<Vec<String>> = Vec::new();
    for g in 0..p.generators.len() {
        let [a, b, c] = loop_vertices(g);
        names.extend([b.clone(), c.clone()]);
        simplices.extend([vec![a.clone(), b.clone()], vec![b, c.clone()], vec![c, a]]);
    }
    for (ri, r) in p.relators.iter().enumerate() {
        let mut boundary = Vec::with_capacity(3 * r.len());
        for &l in r {
            let lv = loop_vertices(generator_of(l));
            if l > 0 {
                boundary.extend_from_slice(&lv);
            } else {
                boundary.extend([lv[0].clone(), lv[2].clone(), lv[1].clone()]);
            }
        }
        let k = boundary.len();
        let ring: Vec<String> = (0..k).map(|j| format!("r{ri}.{j}")).collect();
        let centre = format!("r{ri}.c");
        names.extend(ring.iter().cloned());
        names.push(centre.clone());
        for j in 0..k {
            let n = (j + 1) % k;
            simplices.push(vec![boundary[j].clone(), boundary[n].clone(), ring[n].clone()]);
            simplices.push(vec![boundary[j].clone(), ring[j].clone(), ring[n].clone()]);
            simplices.push(vec![centre.clone(), ring[j].clone(), ring[n].clone()]);
        }
    }
    SimplicialComplex::new(&names, &simplices)
}

/// A connected 2-dimensional tripartite flag complex with connected
/// vertex links whose fundamental group is given by `p`.
pub fn flag_model(p: &GroupPresentation) -> Result<(SimplicialComplex, PartiteStructure)> {
    let (b, parts) = barycentric_subdivision(&presentation_complex(p)?);
    normalize_links(&b, &parts)
}

/// Parameters of the Theorem A pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremAOptions {
    /// Branching primes `q₁₂, q₂₃, q₃₁`; `None` picks the least valid prime.
    pub q: [Option<u64>; 3],
    /// Step budget for Tietze simplification of `π₁(S(L))`.
    pub simplify_budget: usize,
    pub max_quotient_degree: usize,
    pub search_limit: u128,
}

impl Default for TheoremAOptions {
    fn default() -> Self {
        TheoremAOptions {
            q: [None; 3],
            simplify_budget: 1_000_000,
            max_quotient_degree: 5,
            search_limit: DEFAULT_SEARCH_LIMIT,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StageRecord {
    pub stage: String,
    pub summary: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageFailure {
    pub stage: String,
    pub error: String,
    /// The input itself was rejected, as opposed to a certificate failing.
    pub input_error: bool,
}

/// One row of the table of ascending and descending links at the vertices of `K_𝓡(L)`.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub vertex: String,
    pub ascending: String,
    pub descending: String,
    pub ascending_matches: bool,
    pub descending_matches: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisStatus {
    /// A nontrivial finite quotient of `π₁(S(L))` was found.
    Satisfied,
    /// `π₁(S(L))` simplified to the trivial group.
    Unsatisfied,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct NotF2Check {
    pub status: HypothesisStatus,
    pub generators: usize,
    pub relators: usize,
    pub simplified_generators: usize,
    pub simplified_relators: Vec<String>,
    /// Witness on the simplified presentation.
    pub witness: Option<QuotientWitness>,
    /// The witness, extended to every original generator, kills every
    /// original relator.
    pub witness_verified_on_original: bool,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremAResult {
    pub l_f_vector: Vec<usize>,
    pub normalized_f_vector: Vec<usize>,
    pub s_f_vector: Vec<usize>,
    pub rl_f_vector: Vec<usize>,
    pub stages: Vec<StageRecord>,
    pub failed_stage: Option<StageFailure>,
    pub table: Vec<TableRow>,
    pub z3_free: Option<Branch3dCertificate>,
    pub link_tables: Vec<LinkTable>,
    pub multiplicities: Vec<(String, u128)>,
    pub fp2_granted: bool,
    pub z3_free_granted: bool,
    pub not_f2: Option<NotF2Check>,
    pub report: Option<FinitenessReport>,
}

impl TheoremAResult {
    /// FP₂ and Z³-freeness certificates granted and every table row matched.
    pub fn granted(&self) -> bool {
        self.failed_stage.is_none()
            && self.fp2_granted
            && self.z3_free_granted
            && self.table.iter().all(|r| r.ascending_matches && r.descending_matches)
    }
}

/// Orientation of `K_𝓡(L)`: edges of `S(L)` vertices point toward 1, the
/// cone vertices and the base edges toward 0.
pub fn rl_orientation(view: &KGammaView) -> MorseData {
    let mut m = BTreeMap::new();
    for c in view.cages() {
        for (k, l) in c.labels.iter().enumerate() {
            let down = k == 0 || CONE_VERTEX_NAMES.contains(&l.as_str());
            m.insert(l.clone(), if down { Direction::Down } else { Direction::Up });
        }
    }
    MorseData::new(view, m).expect("every label oriented")
}

fn discrete(names: &[String]) -> SimplicialComplex {
    let singletons: Vec<Vec<String>> = names.iter().map(|v| vec![v.clone()]).collect();
    SimplicialComplex::new(names, &singletons).expect("distinct names")
}

fn join_all(factors: &[SimplicialComplex]) -> SimplicialComplex {
    factors.iter().skip(1).fold(factors[0].clone(), |acc, f| join(&acc, f))
}

/// Expected links at `x`, built from `S(L)` and its parts. Writing `Vᵢ⁺`
/// for part `i` of `S(L)` and `S⁰ᵢ` for the cone vertex and base label of
/// part `i`: directions with `xᵢ = 0` contribute `Vᵢ⁺` upward and `S⁰ᵢ`
/// downward, and the reverse for `xᵢ = 1`. The `S(L)` directions on one
/// side span the full subcomplex of `S(L)` on their parts; the `S⁰`
/// directions join freely.
fn expected_links(s: &SimplicialComplex, sparts: &PartiteStructure, x: &[u8]) -> [(SimplicialComplex, String); 2] {
    let side = |bit: u8| {
        let sl_parts: Vec<usize> = (0..3).filter(|&i| x[i] == bit).collect();
        let cone_parts: Vec<usize> = (0..3).filter(|&i| x[i] != bit).collect();
        let mut factors = Vec::new();
        let mut desc = Vec::new();
        if sl_parts.len() > 1 {
            let keep = |v: &str| sparts.part(v).is_some_and(|p| sl_parts.contains(&p));
            factors.push(full_subcomplex_by(s, keep));
            desc.push(if sl_parts.len() == 3 {
                "S(L)".to_string()
            } else {
                format!("Γ({})", sl_parts.iter().map(|i| format!("V{i}+")).collect::<Vec<_>>().join("∪"))
            });
        } else if let Some(&i) = sl_parts.first() {
            let members: Vec<String> =
                sparts.part_members(s, i).into_iter().map(|v| s.vertex_name(v).to_string()).collect();
            factors.push(discrete(&members));
            desc.push(format!("V{i}+"));
        }
        for &i in &cone_parts {
            factors.push(discrete(&[CONE_VERTEX_NAMES[i].to_string(), base_label(i)]));
            desc.push(format!("S0_{i}"));
        }
        (join_all(&factors), desc.join("*"))
    };
    [side(0), side(1)]
}

fn check_table(
    view: &KGammaView,
    morse: &MorseData,
    s: &SimplicialComplex,
    sparts: &PartiteStructure,
) -> Vec<TableRow> {
    all_vertices(3)
        .iter()
        .map(|x| {
            let (asc, desc) = ascending_descending_links(view, morse, x);
            let [(ea, da), (ed, dd)] = expected_links(s, sparts, x);
            let matches = |a: &SimplicialComplex, e: &SimplicialComplex| {
                let id: BTreeMap<String, String> = a.vertices().iter().map(|v| (v.clone(), v.clone())).collect();
                find_isomorphism(a, e, Some(&id)).is_some()
            };
            TableRow {
                vertex: vertex_name(x),
                ascending: da,
                descending: dd,
                ascending_matches: matches(&asc, &ea),
                descending_matches: matches(&desc, &ed),
            }
        })
        .collect()
}

/// Builds `K_𝓡(L)` with its orientation and compares the eight vertex
/// links with the expected joins. `L` must already have connected links.
pub fn verify_link_table(l: &SimplicialComplex, parts: &PartiteStructure) -> Result<Vec<TableRow>> {
    let (s, sparts) = octahedralize_partite(l, parts)?;
    let (r, rparts) = build_rl(l, parts)?;
    let view = build_kgamma(&r, &rparts)?;
    Ok(check_table(&view, &rl_orientation(&view), &s, &sparts))
}

fn not_f2_check(s: &SimplicialComplex, opts: &TheoremAOptions) -> Result<NotF2Check> {
    let pres = pi1_presentation(s)?;
    let simp = simplify(&pres, opts.simplify_budget);
    let sp = &simp.presentation;
    let mut check = NotF2Check {
        status: HypothesisStatus::Undetermined,
        generators: pres.generators.len(),
        relators: pres.relators.len(),
        simplified_generators: sp.generators.len(),
        simplified_relators: sp.relators.iter().map(|r| sp.word_to_string(r)).collect(),
        witness: None,
        witness_verified_on_original: false,
        note: String::new(),
    };
    if simp.status == SimplifyStatus::Trivialized {
        check.status = HypothesisStatus::Unsatisfied;
        check.note = "π₁(S(L)) is trivial".into();
        return Ok(check);
    }
    match finite_quotient_witness(sp, opts.max_quotient_degree, opts.search_limit) {
        Ok(Some(w)) => {
            let kept: Vec<Permutation> = w.images.iter().map(|(_, g)| g.clone()).collect();
            let all =
                simp.extend_assignment(&kept, &Permutation::identity(w.degree), |a, b| a.compose(b), |a| a.inverse());
            let extended =
                QuotientWitness { degree: w.degree, images: pres.generators.iter().cloned().zip(all).collect() };
            check.witness_verified_on_original = extended.verify(&pres);
            if check.witness_verified_on_original {
                check.status = HypothesisStatus::Satisfied;
                check.note = format!("nontrivial action on {} points", w.degree);
            } else {
                check.note = "witness failed on the original presentation".into();
            }
            check.witness = Some(w);
        }
        Ok(None) => {
            check.note = format!("no nontrivial quotient of degree ≤ {}", opts.max_quotient_degree);
        }
        Err(e) => check.note = e.to_string(),
    }
    Ok(check)
}

struct Pipeline {
    result: TheoremAResult,
}

impl Pipeline {
    fn stage<T>(&mut self, name: &str, r: Result<T>, summary: impl FnOnce(&T) -> String) -> Option<T> {
        match r {
            Ok(v) => {
                self.result.stages.push(StageRecord { stage: name.into(), summary: summary(&v) });
                Some(v)
            }
            Err(e) => {
                let input_error = self.result.stages.len() <= 1
                    && matches!(e, Error::Validation(_) | Error::Domain(_) | Error::Parse(_));
                self.result.failed_stage = Some(StageFailure { stage: name.into(), error: e.to_string(), input_error });
                None
            }
        }
    }
}

/// Runs the Theorem A construction on a 2-dimensional tripartite flag
/// complex `L`. Any failing stage stops the run and is named in the result.
pub fn theorem_a_pipeline(l: &SimplicialComplex, parts: &PartiteStructure, opts: &TheoremAOptions) -> TheoremAResult {
    let mut p = Pipeline {
        result: TheoremAResult {
            l_f_vector: l.f_vector(),
            normalized_f_vector: Vec::new(),
            s_f_vector: Vec::new(),
            rl_f_vector: Vec::new(),
            stages: Vec::new(),
            failed_stage: None,
            table: Vec::new(),
            z3_free: None,
            link_tables: Vec::new(),
            multiplicities: Vec::new(),
            fp2_granted: false,
            z3_free_granted: false,
            not_f2: None,
            report: None,
        },
    };
    let _ = run(&mut p, l, parts, opts);
    p.result
}

fn run(p: &mut Pipeline, l: &SimplicialComplex, parts: &PartiteStructure, opts: &TheoremAOptions) -> Option<()> {
    let shape = if l.dim() == 2 && parts.n() <= 3 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "L must be 2-dimensional with at most 3 parts, got dimension {} and {} parts",
            l.dim(),
            parts.n()
        )))
    };
    p.stage("input", shape, |_| "2-dimensional, at most 3 parts".into())?;
    let (nl, nparts) =
        p.stage("normalize_links", normalize_links(l, parts), |(x, _)| format!("f-vector {:?}", x.f_vector()))?;
    p.result.normalized_f_vector = nl.f_vector();
    let h1 = reduced_homology(&nl, 1);
    let (s, sparts) =
        p.stage("octahedralize", octahedralize_partite(&nl, &nparts), |(x, _)| format!("f-vector {:?}", x.f_vector()))?;
    p.result.s_f_vector = s.f_vector();
    let (r, rparts) = p.stage("build_rl", build_rl(&nl, &nparts), |(x, _)| format!("f-vector {:?}", x.f_vector()))?;
    p.result.rl_f_vector = r.f_vector();
    let view = p.stage("build_kgamma", build_kgamma(&r, &rparts), |v| format!("cells {:?}", v.cell_counts()))?;
    let morse = rl_orientation(&view);
    p.result.stages.push(StageRecord {
        stage: "orientation".into(),
        summary: "S(L) edges up; cone vertices and base edges down".into(),
    });

    p.result.table = check_table(&view, &morse, &s, &sparts);
    let bad = p.result.table.iter().find(|r| !(r.ascending_matches && r.descending_matches)).map(|r| r.vertex.clone());
    let table = match bad {
        None => Ok(()),
        Some(v) => Err(Error::Consistency(format!("links at {v} differ from the table"))),
    };
    p.stage("link_table", table, |_| "all 8 vertices match".into())?;

    let sb = p.stage("branch3d", SpatialBranching::new(&view, opts.q), |sb| format!("degrees {:?}", sb.degrees()))?;
    let cert = certificate_for(&sb, &view);
    p.result.z3_free_granted = cert.granted;
    p.result.z3_free = Some(cert);

    let setting = BranchSetting::Spatial(sb);
    let mut tables = Vec::new();
    for x in all_vertices(3) {
        let links = p.stage("branched_links", branched_morse_links(&view, &morse, &setting, &x), |l| {
            format!("{}: {} lifts", l.vertex, l.multiplicity)
        })?;
        p.result.multiplicities.push((links.vertex.clone(), links.multiplicity));
        let many = links.lifts.len() > 1;
        for (k, lift) in links.lifts.iter().enumerate() {
            let name = if many { format!("{}#{k}", links.vertex) } else { links.vertex.clone() };
            tables.push(LinkTable::from_links(&name, &lift.ascending, &lift.descending, 3));
        }
    }
    let mut report = p.stage("classify", bb_morse_classify(&tables, Some(2)), |r| r.verdict.clone())?;
    p.result.fp2_granted = report.fp(2) == Status::Verified && report.hypothesis_violated.is_none();
    if h1.betti(1) == 0 && h1.torsion(1).is_empty() {
        report.add_evidence("l_homology", "H₁(L) = 0, so H₁(S(L)) = 0".into(), json!(h1.summary()));
    }
    p.result.link_tables = tables;

    let check = p.stage("pi1", not_f2_check(&s, opts), |c| c.note.clone())?;
    if check.status == HypothesisStatus::Satisfied {
        let ev = report.add_evidence(
            "quotient_witness",
            format!("π₁(S(L)) acts nontrivially on {} points", check.witness.as_ref().map_or(0, |w| w.degree)),
            serde_json::to_value(&check.witness).unwrap_or_default(),
        );
        report.f2_status = F2Status::RefutedWithAssumptions;
        report.f2_evidence = vec![ev];
        report.assumptions = vec![
            "a nontrivial π₁(S(L)) survives in the ascending link at (0,0,0) of the branched cover and obstructs finite presentability"
                .into(),
        ];
        report.verdict = format!("{}; not F_2 (with assumptions)", report.verdict);
    }
    p.result.not_f2 = Some(check);
    p.result.report = Some(report);
    Some(())
}
