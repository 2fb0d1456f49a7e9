use std::process::{Command, Output};

use serde_json::Value;

fn mds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mds")).args(args).env_remove("MDS_BUDGET").output().expect("spawn mds")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = mds(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn count_json_schema() {
    let v = json(&["count", "--k", "2", "--n", "4", "--q", "3", "--format", "json"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["k", "n", "q", "gamma", "gamma_tilde", "method", "elapsed_ms"]);
    assert_eq!(v["gamma"], "8");
    assert_eq!(v["gamma_tilde"], "1");
    assert_eq!(v["method"], "matrix-scan");
}

#[test]
fn count_methods_agree() {
    let v = json(&["count", "--k", "3", "--n", "6", "--q", "4", "--method", "both"]);
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0]["gamma"], "486");
    assert_eq!(arr[0]["gamma"], arr[1]["gamma"]);
}

#[test]
fn exit_codes() {
    assert_eq!(mds(&["count", "--k", "3", "--n", "8", "--q", "16"]).status.code(), Some(2));
    assert_eq!(mds(&["count", "--k", "2", "--n", "4", "--q", "6"]).status.code(), Some(1));
    assert_eq!(mds(&["count", "--k", "2"]).status.code(), Some(1));
    assert_eq!(mds(&["count", "--k", "4", "--n", "4", "--q", "2"]).status.code(), Some(1));
    assert_eq!(mds(&["count", "--k", "2", "--n", "4", "--q", "2", "--threads", "0"]).status.code(), Some(1));
    assert_eq!(mds(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mds"))
        .args(["count", "--k", "2", "--n", "5", "--q", "3"])
        .env("MDS_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    // the flag wins over the environment
    let o = Command::new(env!("CARGO_BIN_EXE_mds"))
        .args(["count", "--k", "2", "--n", "5", "--q", "3", "--budget", "1000"])
        .env("MDS_BUDGET", "10")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn asympt_payload() {
    let v = json(&["asympt", "--k", "3", "--n", "10"]);
    assert_eq!(v["b1"], "110");
    assert_eq!(v["b2"], "5561");
    let v = json(&["asympt", "--k", "3", "--n", "6"]);
    assert_eq!(v["a2"], "152");
}

#[test]
fn asympt_csv_columns() {
    let o = mds(&["asympt", "--k", "2", "--n", "5", "--q-list", "2,3,4,5,7,8", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,gamma,predicted,residual,normalized_residual"));
    assert_eq!(lines.count(), 6);
}

#[test]
fn sections_csv() {
    let o = mds(&["sections", "--k", "2", "--n", "4", "--q", "2", "--max-r", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "r,subset_id,norm,ann_in_g\n1,1,16,true\n2,3,24,true\n2,12,26,false\n");
    let all = mds(&["sections", "--k", "2", "--n", "4", "--q", "2", "--max-r", "2", "--exhaustive"]);
    assert_eq!(stdout(&all).lines().count(), 1 + 6 + 15);
}

#[test]
fn incl_excl_against_census() {
    let v = json(&["incl-excl", "--k", "2", "--n", "4", "--q", "2", "--verify-against-census"]);
    assert_eq!(v["e_terms"][0], "96");
    assert_eq!(v["e_terms"][1], "366");
    assert_eq!(v["gamma_reconstructed"], "0");
    assert_eq!(v["agrees"], true);
    let v = json(&["incl-excl", "--k", "2", "--n", "4", "--q", "3", "--verify-against-census"]);
    assert_eq!(v["gamma_reconstructed"], "8");
}

#[test]
fn code_spectrum_and_higher_weight() {
    let o = mds(&["code", "--k", "2", "--n", "4", "--q", "2"]);
    assert_eq!(stdout(&o), "weight,multiplicity\n16,35\n20,28\n");
    let v = json(&["code", "--k", "2", "--n", "4", "--q", "2", "--dr", "2", "--dr-mode", "exhaustive", "--format", "json"]);
    assert_eq!(v["length"], 35);
    assert_eq!(v["dimension"], 6);
    assert_eq!(v["d_r"]["value"], 24);
    let v = json(&["code", "--k", "2", "--n", "4", "--q", "2", "--dr", "3", "--format", "json"]);
    assert_eq!(v["d_r"]["value"], 28);
}

#[test]
fn sampled_spectrum_is_seeded() {
    let a = mds(&["code", "--k", "3", "--n", "6", "--q", "2", "--spectrum", "sample:2000:5"]);
    let b = mds(&["code", "--k", "3", "--n", "6", "--q", "2", "--spectrum", "sample:2000", "--seed", "5", "--threads", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let first: u64 = stdout(&a).lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
    assert!(first >= 512);
    assert_eq!(mds(&["code", "--k", "2", "--n", "4", "--q", "2", "--spectrum", "sample"]).status.code(), Some(1));
}

#[test]
fn weight_of_a_form() {
    let v = json(&["weight", "--k", "2", "--n", "4", "--q", "2", "--form", r#"[{"index":[1,2],"coeff":1},{"index":[3,4],"coeff":1}]"#, "--method", "both"]);
    assert_eq!(v["weight_direct"], 20);
    assert_eq!(v["weight_recursive"], 20);
    assert_eq!(v["decomposable"], false);
    let v = json(&["weight", "--k", "2", "--n", "4", "--q", "2", "--form", r#"[{"index":[1,2],"coeff":1}]"#]);
    assert_eq!(v["weight_direct"], 16);
    assert_eq!(v["decomposable"], true);
    let bad = mds(&["weight", "--k", "2", "--n", "4", "--q", "2", "--form", r#"[{"index":[2,1],"coeff":1}]"#]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn grassmann_count_matches_gaussian_binomial() {
    let v = json(&["grassmann-count", "--k", "2", "--n", "4", "--q", "3"]);
    assert_eq!(v["count"], "130");
    assert_eq!(v["gaussian_binomial"], "130");
}

#[test]
fn verify_quick_suites() {
    for suite in ["fields", "plucker", "asymptotics"] {
        let o = mds(&["verify", "--suite", suite, "--scale", "quick"]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    let v = json(&["verify", "--suite", "asymptotics", "--format", "json"]);
    let a2 = v.as_array().unwrap().iter().find(|c| c["name"] == "a2 table").unwrap();
    assert_eq!(a2["status"], "PASS");
}

/// Output files are identical for the same configuration at any worker count,
/// once the timing field is masked.
#[test]
fn output_is_deterministic() {
    let dir = std::env::temp_dir().join(format!("mds-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mask = |s: String| s.lines().filter(|l| !l.contains("elapsed_ms")).collect::<Vec<_>>().join("\n");
    let mut seen = Vec::new();
    for threads in ["1", "2", "5"] {
        let path = dir.join(format!("count-{threads}.json"));
        let o = mds(&["count", "--k", "3", "--n", "6", "--q", "5", "--threads", threads, "--output", path.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
        seen.push(mask(std::fs::read_to_string(&path).unwrap()));
        let path = dir.join(format!("sections-{threads}.csv"));
        mds(&["sections", "--k", "2", "--n", "5", "--q", "3", "--max-r", "3", "--threads", threads, "--output", path.to_str().unwrap()]);
        seen.push(std::fs::read_to_string(&path).unwrap());
    }
    assert_eq!(seen[0], seen[2]);
    assert_eq!(seen[0], seen[4]);
    assert_eq!(seen[1], seen[3]);
    assert_eq!(seen[1], seen[5]);
    assert!(seen[0].contains("\"gamma\": \"6144\""));
    std::fs::remove_dir_all(&dir).ok();
}
