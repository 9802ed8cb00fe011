use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");

fn golden(name: &str) -> PathBuf {
    Path::new(GOLDEN).join(name)
}

fn spg(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn generate(args: &[&str]) -> String {
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    let o = spg(&full, None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    stdout(&o)
}

#[test]
fn generators_match_goldens() {
    let expected = std::fs::read_to_string(golden("figure1.json")).unwrap();
    assert_eq!(generate(&["figure1"]), expected);
    let expected = std::fs::read_to_string(golden("hirsch_4_2.json")).unwrap();
    assert_eq!(generate(&["hirsch-path", "--n", "4", "--d", "2"]), expected);
}

#[test]
fn output_is_byte_stable() {
    let args = ["cyclic", "--n", "14", "--d", "8"];
    assert_eq!(generate(&args), generate(&args));
}

#[test]
fn spindle_diameter_is_twice_m_squared() {
    for m in 1..=4usize {
        let doc = generate(&["spindle", "--m", &m.to_string()]);
        let o = spg(&["diameter", "-"], Some(&doc));
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), (2 * m * m).to_string());
    }
}

#[test]
fn figure1_fails_one_subset() {
    let file = golden("figure1.json");
    let o = spg(
        &[
            "check",
            file.to_str().unwrap(),
            "--properties",
            "one-subset",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    let expected = std::fs::read_to_string(golden("check_figure1_one_subset.txt")).unwrap();
    assert_eq!(stdout(&o), expected);
}

#[test]
fn figure1_main_properties_hold_with_the_brute_oracle() {
    let file = golden("figure1.json");
    let o = spg(
        &[
            "check",
            file.to_str().unwrap(),
            "--properties",
            "main",
            "--brute",
            "--json",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.as_object().unwrap().len(), 4);
    assert!(report
        .as_object()
        .unwrap()
        .values()
        .all(|v| v["status"] == "holds"));
}

#[test]
fn cyclic_theorem_properties() {
    let props = "strong-adjacency,endpoint-count,one-subset";
    let doc = generate(&["cyclic", "--n", "14", "--d", "8"]);
    let o = spg(&["check", "-", "--properties", props], Some(&doc));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // no Hamiltonian path of the 9-facet dual avoids short chords
    let doc = generate(&["cyclic", "--n", "12", "--d", "8"]);
    let o = spg(&["check", "-", "--properties", props, "--json"], Some(&doc));
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["strong-adjacency"]["status"], "fails");
    assert_eq!(report["endpoint-count"]["status"], "holds");
    assert_eq!(report["one-subset"]["status"], "holds");
}

#[test]
fn distance_by_index_and_label() {
    let file = golden("figure1.json");
    let f = file.to_str().unwrap();
    let o = spg(
        &[
            "distance", f, "--from", "1,2,3", "--to", "2,4,6", "--labels",
        ],
        None,
    );
    assert_eq!(stdout(&o).trim(), "1");
    let o = spg(&["distance", f, "--from", "0,1,2", "--to", "2,3,4"], None);
    assert_eq!(stdout(&o).trim(), "2");
    let o = spg(&["distance", f, "--from", "0,1,3", "--to", "2,3,4"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("DSetNotPresent"), "{}", stderr(&o));
}

#[test]
fn restrict_reports_surviving_blocks() {
    let file = golden("figure1.json");
    let o = spg(&["restrict", file.to_str().unwrap(), "--face", "0"], None);
    assert_eq!(o.status.code(), Some(0));
    let view: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(view["surviving_blocks"], serde_json::json!([0, 3, 5]));
    assert_eq!(view["connected"], true);
}

#[test]
fn moves_write_canonical_documents() {
    let doc = generate(&["spindle", "--m", "2"]);
    let o = spg(&["contract", "-", "--edge", "0,1"], Some(&doc));
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = spg(&["diameter", "-"], Some(&stdout(&o)));
    assert_eq!(stdout(&o).trim(), "7");
    let o = spg(&["add-edge", "-", "--edge", "0,1"], Some(&doc));
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).starts_with("error: EdgeExists"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn layering_of_the_spindle() {
    let doc = generate(&["spindle", "--m", "1"]);
    let first: Value = serde_json::from_str(&doc).unwrap();
    let root = first["vertices"][0][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let o = spg(&["layer", "-", "--root", &root], Some(&doc));
    let layering: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // one layer per distance 0..=diameter
    assert_eq!(layering["layers"].as_array().unwrap().len(), 3);
    let holds = layering["verdict"]["status"] == "holds";
    assert_eq!(o.status.code(), Some(if holds { 0 } else { 1 }));
}

#[test]
fn search_then_replay() {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let trace = dir.join("cli_search_trace.json");
    let doc = generate(&["spindle", "--m", "2"]);
    let o = spg(
        &[
            "search",
            "-",
            "--targets",
            "dimension-reduction",
            "--out",
            trace.to_str().unwrap(),
        ],
        Some(&doc),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("diameter 8 -> 3\n"), "{}", stdout(&o));
    let o = spg(&["replay", trace.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = spg(
        &["check", "-", "--properties", "dimension-reduction"],
        Some(&stdout(&o)),
    );
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn search_with_zero_budget_exhausts() {
    let doc = generate(&["spindle", "--m", "2"]);
    let o = spg(&["search", "-", "--budget", "0"], Some(&doc));
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("BudgetExhausted"));
    let trace: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(trace["steps"], serde_json::json!([]));
}

#[test]
fn oracles() {
    let max_clf = |extra: &[&str]| {
        let mut args = vec!["oracle", "max-clf", "--n", "5", "--d", "2"];
        args.extend_from_slice(extra);
        let o = spg(&args, None);
        assert_eq!(o.status.code(), Some(0));
        let result: Value = serde_json::from_str(&stdout(&o)).unwrap();
        result["diameter"].as_u64().unwrap()
    };
    // one-subset families meet the n - d bound; general ones are at least as long
    let one_subset = max_clf(&["--one-subset"]);
    assert_eq!(one_subset, 3);
    assert!(max_clf(&[]) >= one_subset);
    let file = golden("figure1.json");
    let o = spg(&["oracle", "diameter", file.to_str().unwrap()], None);
    assert_eq!(stdout(&o).trim(), "2");
    let doc = generate(&["spindle", "--m", "2"]);
    let o = spg(&["oracle", "dimension-reduction", "-"], Some(&doc));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(spg(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(spg(&["generate", "spindle"], None).status.code(), Some(2));
    assert_eq!(
        spg(&["contract", "-", "--edge", "1"], None).status.code(),
        Some(2)
    );
    let o = spg(&["generate", "spindle", "--m", "0"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: BadParameter"));
    let o = spg(&["diameter", "-"], Some("{\"format\": \"spg/2\"}"));
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).starts_with("error: SyntaxError"),
        "{}",
        stderr(&o)
    );
    let o = spg(
        &["check", "-", "--properties", "nope"],
        Some(&generate(&["figure1"])),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error: UnknownProperty"));
}
