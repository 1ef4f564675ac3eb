use std::collections::BTreeSet;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use kgamma::classifier::{
    bb_morse_classify, bux_gonzalez_classify, theorem_a_pipeline, theorem_b_calculator, LinkTable, TheoremAOptions,
};
use kgamma::covers::{
    branched_link_2d, branched_morse_links, make_branching_rep, sizeable_check, BranchSetting, SpatialBranching,
};
use kgamma::cubical::{all_vertices, build_kgamma, Direction, KGammaView, MorseData};
use kgamma::io::{parse_complex, parse_link_tables, parse_orientation, parse_weights, LoadedComplex};

/// A finished command: the JSON report, a one-line summary, and whether
/// every certificate it issues was granted.
pub struct Outcome {
    pub granted: bool,
    pub summary: String,
    pub report: Value,
}

impl Outcome {
    fn new(command: &str, granted: bool, summary: String, result: Value) -> Self {
        let report = json!({"command": command, "granted": granted, "result": result});
        Outcome { granted, summary: format!("{command}: {summary}"), report }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<LoadedComplex> {
    parse_complex(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_view(path: &Path) -> Result<KGammaView> {
    let c = load(path)?;
    Ok(build_kgamma(&c.complex, c.require_parts()?)?)
}

pub fn npc(input: &Path) -> Result<Outcome> {
    let view = load_view(input)?;
    let r = view.check_npc();
    let summary = if r.npc { "all vertex links flag".into() } else { "a vertex link is not flag".into() };
    Ok(Outcome::new("npc", r.npc, summary, serde_json::to_value(&r)?))
}

pub fn kgamma(input: &Path) -> Result<Outcome> {
    let view = load_view(input)?;
    let counts: Vec<String> = view.cell_counts().iter().map(u128::to_string).collect();
    let result = json!({
        "n": view.n(),
        "cages": view.cages(),
        "cell_counts": counts,
        "euler_characteristic": view.euler_characteristic().to_string(),
    });
    Ok(Outcome::new("kgamma", true, format!("cells by dimension {counts:?}"), result))
}

fn lifted(labels: &[String], p: u64) -> BTreeSet<String> {
    labels.iter().flat_map(|l| (1..=p).map(move |s| format!("{l}@{s}"))).collect()
}

/// Splits the labels of one cage into `plus` and the rest.
fn split(view: &KGammaView, part: usize, plus: &[String]) -> Result<(Vec<String>, Vec<String>)> {
    let labels = &view.cages()[part].labels;
    let plus: Vec<String> = if plus.is_empty() { labels.iter().take(2).cloned().collect() } else { plus.to_vec() };
    if let Some(l) = plus.iter().find(|l| !labels.contains(l)) {
        bail!("label `{l}` is not in part {part}");
    }
    let minus = labels.iter().filter(|l| !plus.contains(l)).cloned().collect();
    Ok((plus, minus))
}

pub fn branch2d(input: &Path, p: Option<u64>, a_plus: &[String], b_plus: &[String]) -> Result<Outcome> {
    let view = load_view(input)?;
    if view.n() != 2 {
        bail!("branch2d needs a bipartite complex, found {} parts", view.n());
    }
    let sizes: Vec<usize> = view.cages().iter().map(|c| c.labels.len() - 1).collect();
    let rep = make_branching_rep(sizes[0], sizes[1], p)?;
    let b = branched_link_2d(&view, &rep)?;
    let (ap, am) = split(&view, 0, a_plus)?;
    let (bp, bm) = split(&view, 1, b_plus)?;
    let sizeable = sizeable_check(
        &b.cover_complex(),
        &lifted(&ap, rep.p),
        &lifted(&am, rep.p),
        &lifted(&bp, rep.p),
        &lifted(&bm, rep.p),
    )?;
    let granted = b.girth.at_least_six && b.pentagon_ok && b.four_cycles_connected() && sizeable.sizeable;
    let summary = format!(
        "p = {}, cover {} vertices / {} edges, girth {}, sizeable {}",
        rep.p,
        b.vertices,
        b.edges,
        b.girth.girth.map_or("≥ 6".to_string(), |g| g.to_string()),
        sizeable.sizeable
    );
    let result = json!({
        "p": rep.p,
        "r": rep.r,
        "link": b,
        "four_cycles_connected": b.four_cycles_connected(),
        "sizeable": {"a_plus": ap, "a_minus": am, "b_plus": bp, "b_minus": bm, "report": sizeable},
    });
    Ok(Outcome::new("branch2d", granted, summary, result))
}

pub fn branch3d(input: &Path, q: [Option<u64>; 3]) -> Result<Outcome> {
    let view = load_view(input)?;
    if view.n() != 3 {
        bail!("branch3d needs a tripartite complex, found {} parts", view.n());
    }
    let sb = SpatialBranching::new(&view, q)?;
    let cert = kgamma::covers::certificate_for(&sb, &view);
    let summary = match &cert.witness {
        None => format!("granted, q = {}", cert.parameters.q),
        Some(w) => format!("denied: {w}"),
    };
    Ok(Outcome::new("branch3d", cert.granted, summary, serde_json::to_value(&cert)?))
}

pub fn morse(
    input: &Path,
    orientation: Option<&Path>,
    branched: bool,
    p: Option<u64>,
    q: [Option<u64>; 3],
    n: Option<usize>,
) -> Result<Outcome> {
    let view = load_view(input)?;
    let morse = match orientation {
        Some(path) => parse_orientation(&read(path)?)?.morse_data(&view)?,
        None => MorseData::uniform(&view, Direction::Up),
    };
    let setting = match (branched, view.n()) {
        (false, _) => None,
        (true, 2) => {
            let c = view.cages();
            Some(BranchSetting::Planar(make_branching_rep(c[0].labels.len() - 1, c[1].labels.len() - 1, p)?))
        }
        (true, 3) => Some(BranchSetting::Spatial(SpatialBranching::new(&view, q)?)),
        (true, k) => bail!("branched links need 2 or 3 parts, found {k}"),
    };
    let through = view.n() + 1;
    let mut tables = Vec::new();
    let mut lifts = Vec::new();
    for x in all_vertices(view.n()) {
        match &setting {
            None => {
                let (a, d) = kgamma::cubical::ascending_descending_links(&view, &morse, &x);
                tables.push(LinkTable::from_links(&kgamma::cubical::vertex_name(&x), &a, &d, through));
            }
            Some(s) => {
                let l = branched_morse_links(&view, &morse, s, &x)?;
                let many = l.lifts.len() > 1;
                for (k, lift) in l.lifts.iter().enumerate() {
                    let name = if many { format!("{}#{k}", l.vertex) } else { l.vertex.clone() };
                    tables.push(LinkTable::from_links(&name, &lift.ascending, &lift.descending, through));
                }
                lifts.push(
                    json!({"vertex": l.vertex, "type": l.vertex_type, "multiplicity": l.multiplicity.to_string()}),
                );
            }
        }
    }
    let verdict = bb_morse_classify(&tables, n).map_err(|e| anyhow!(e))?;
    let summary = verdict.verdict.clone();
    let result = json!({"tables": tables, "lifts": lifts, "classification": verdict});
    Ok(Outcome::new("morse", true, summary, result))
}

pub fn classify(
    input: Option<&Path>,
    weights: Option<&Path>,
    tables: Option<&Path>,
    n: Option<usize>,
) -> Result<Outcome> {
    let report = match (input, weights, tables) {
        (Some(input), Some(w), None) => {
            let c = load(input)?;
            let w = parse_weights(&read(w)?)?;
            bux_gonzalez_classify(&c.complex, &w, n.unwrap_or(3))?
        }
        (None, None, Some(t)) => {
            let file = parse_link_tables(&read(t)?)?;
            bb_morse_classify(&file.tables()?, n.or(file.n))?
        }
        _ => bail!("classify needs either --input with --weights, or --tables"),
    };
    let granted = report.hypothesis_violated.is_none();
    Ok(Outcome::new("classify", granted, report.verdict.clone(), serde_json::to_value(&report)?))
}

pub fn thm_a(input: &Path, q: [Option<u64>; 3], budget: usize, max_degree: usize) -> Result<Outcome> {
    let c = load(input)?;
    let opts = TheoremAOptions { q, simplify_budget: budget, max_quotient_degree: max_degree, ..Default::default() };
    let r = theorem_a_pipeline(&c.complex, c.require_parts()?, &opts);
    if let Some(f) = r.failed_stage.as_ref().filter(|f| f.input_error) {
        bail!("stage {}: {}", f.stage, f.error);
    }
    let summary = match (&r.failed_stage, &r.report, &r.not_f2) {
        (Some(f), ..) => format!("stage {} failed: {}", f.stage, f.error),
        (None, Some(rep), Some(nf)) => {
            format!("{}; Z3-free {}; not-F2 hypothesis {:?}", rep.verdict, r.z3_free_granted, nf.status)
        }
        _ => "incomplete".into(),
    };
    Ok(Outcome::new("thm-a", r.granted(), summary, serde_json::to_value(&r)?))
}

pub fn thm_b(n: usize) -> Result<Outcome> {
    let t = theorem_b_calculator(n)?;
    let summary = format!("n = {n}: reduced homology {}, rank bound {}", t.homology.summary(), t.rank_bound);
    Ok(Outcome::new("thm-b", t.concentrated, summary, serde_json::to_value(&t)?))
}
