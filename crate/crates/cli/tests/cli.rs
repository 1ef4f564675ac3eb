use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgamma")).args(args).output().expect("binary runs")
}

/// Runs with `--out` into a temporary file and returns (exit code, report).
fn report(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut full: Vec<&str> = args.to_vec();
    let out_s = out.display().to_string();
    full.extend(["--out", &out_s]);
    let o = run(&full);
    let code = o.status.code().unwrap();
    let text =
        std::fs::read_to_string(&out).unwrap_or_else(|_| panic!("no report: {}", String::from_utf8_lossy(&o.stderr)));
    (code, serde_json::from_str(&text).unwrap())
}

#[test]
fn npc_on_flag_and_non_flag_inputs() {
    let (code, r) = report(&["npc", "--input", &data("k33.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["npc"], true);
    assert_eq!(r["result"]["vertices"].as_array().unwrap().len(), 4);

    let o = run(&["npc", "--input", &data("hollow_triangle.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("not flag") && err.contains("\"a\""), "{err}");
}

#[test]
fn input_errors_exit_two() {
    let o = run(&["kgamma", "--input", &data("intra_part.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[a, b]"));

    let o = run(&["kgamma", "--input", &data("malformed.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    let o = run(&["kgamma", "--input", &data("square.json")]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["kgamma", "--input", &data("missing.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn kgamma_counts() {
    let (code, r) = report(&["kgamma", "--input", &data("triangle.json")]);
    assert_eq!(code, 0);
    let counts: Vec<u64> =
        r["result"]["cell_counts"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().parse().unwrap()).collect();
    // Cells of ∏Θᵢ with |Θᵢ| = 2 edges each, all allowed since Γ is a full simplex.
    assert_eq!(counts, [8, 24, 24, 8]);
}

#[test]
fn branch2d_k33() {
    let (code, r) = report(&["branch2d", "--gamma", &data("k33.json"), "--p", "5"]);
    assert_eq!(code, 0);
    let link = &r["result"]["link"];
    assert_eq!(link["vertices"], 40);
    assert_eq!(link["edges"], 80);
    assert_eq!(link["girth"]["at_least_six"], true);
    assert_eq!(r["result"]["sizeable"]["report"]["sizeable"], true);

    let o = run(&["branch2d", "--input", &data("k33.json"), "--p", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn branch3d_octahedron() {
    let (code, r) =
        report(&["branch3d", "--input", &data("octahedron.json"), "--q12", "5", "--q23", "5", "--q31", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["kind"], "z3free");
    assert_eq!(r["result"]["granted"], true);
}

#[test]
fn morse_k33_orientation() {
    let (code, r) = report(&["morse", "--input", &data("k33.json"), "--orientation", &data("k33_orientation.json")]);
    assert_eq!(code, 0);
    let tables = r["result"]["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 4);
    assert_eq!(r["result"]["classification"]["verdict"], "FP_1 not FP_2");

    let (code, r) = report(&[
        "morse",
        "--input",
        &data("k33.json"),
        "--orientation",
        &data("k33_orientation.json"),
        "--branched",
        "--p",
        "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["classification"]["verdict"], "FP_1 not FP_2");
}

#[test]
fn classify_both_modes() {
    let (code, r) = report(&["classify", "--input", &data("square.json"), "--weights", &data("square_weights.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "FP_1 not FP_2");

    let (code, r) = report(&["classify", "--tables", &data("circle_tables.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["verdict"], "FP_1 not FP_2");

    let o = run(&["classify", "--input", &data("square.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thm_a_triangle() {
    let (code, r) = report(&["thm-a", "--input", &data("triangle.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["fp2_granted"], true);
    assert_eq!(r["result"]["z3_free_granted"], true);
    assert_eq!(r["result"]["not_f2"]["status"], "unsatisfied");

    let o = run(&["thm-a", "--input", &data("k33.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thm_b_nine() {
    let (code, r) = report(&["thm-b", "--n", "9"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["rank_bound"], 3);
    let groups = r["result"]["homology"].as_array().unwrap();
    for g in groups {
        let nonzero = g["betti"].as_u64().unwrap() > 0 || !g["torsion"].as_array().unwrap().is_empty();
        assert_eq!(nonzero, g["degree"] == 8, "{g}");
    }
    assert!(groups.iter().any(|g| g["degree"] == 8 && g["betti"] == 1));
}

#[test]
fn reports_are_byte_deterministic() {
    let (k33, triangle) = (data("k33.json"), data("triangle.json"));
    for args in
        [vec!["branch2d", "--input", &k33, "--p", "5"], vec!["thm-a", "--input", &triangle], vec!["thm-b", "--n", "4"]]
    {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
}
