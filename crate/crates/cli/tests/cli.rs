use std::io::Cursor;
use std::process::Command;

use serde_json::Value;
use stmatch::solver::verify_st_matching;
use stmatch::BipartiteGraph;
use stmatch_cli::{run, Response, EXIT_INCONCLUSIVE, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE};

const K23: &str = r#"{"u":2,"v":3,"edges":[[0,0],[0,1],[0,2],[1,0],[1,1],[1,2]]}"#;

fn call(args: &[&str], stdin: &str) -> Response {
    let argv = std::iter::once("stmatch").chain(args.iter().copied());
    run(argv, &mut Cursor::new(stdin.as_bytes().to_vec()))
}

fn json(response: &Response) -> Value {
    response
        .value()
        .unwrap_or_else(|| panic!("not JSON: {}", response.stdout))
}

fn edges(value: &Value) -> Vec<(usize, usize)> {
    serde_json::from_value(value.clone()).unwrap()
}

#[test]
fn threshold_for_two_two_three() {
    let out = call(&["threshold", "--h", "2", "--k", "2", "--d", "3"], "");
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(json(&out)["threshold"], "5/3");
    let limit = call(&["threshold", "--h", "2", "--k", "2"], "");
    assert_eq!(json(&limit)["threshold"], "2");
}

#[test]
fn check_on_complete_graph_reports_left_side() {
    let out = call(&["check", "--alpha", "5/3"], K23);
    assert_eq!(out.code, EXIT_NEGATIVE);
    let value = json(&out);
    assert_eq!(value["status"], "violated");
    assert_eq!(value["deficiency"], "-1/3");
    assert_eq!(value["witness"]["members"], serde_json::json!([0, 1]));
    assert_eq!(call(&["check", "--alpha", "3/2"], K23).code, EXIT_OK);
}

#[test]
fn solve_on_complete_graph_is_verified() {
    let out = call(&["solve", "--s", "2", "--t", "4"], K23);
    assert_eq!(out.code, EXIT_OK);
    let value = json(&out);
    let g = BipartiteGraph::from_json_str(K23).unwrap();
    verify_st_matching(&g, 2, 4, &edges(&value["cover"]["edges"])).unwrap();
    assert_eq!(call(&["solve", "--s", "2", "--t", "3"], K23).code, EXIT_NEGATIVE);
}

#[test]
fn solve_budget_exhaustion_is_inconclusive() {
    let k67 = serde_json::to_string(&BipartiteGraph::complete(6, 7)).unwrap();
    let out = call(&["solve", "--s", "3", "--t", "4", "--budget", "3"], &k67);
    assert_eq!(out.code, EXIT_INCONCLUSIVE);
    assert_eq!(json(&out)["status"], "budget_exceeded");
}

#[test]
fn tight_gadget_round_trip() {
    for (h, k, d, n) in [("2", "2", "3", "1"), ("2", "2", "3", "2"), ("2", "4", "3", "1")] {
        let gen = call(&["gen-tight", "--h", h, "--k", k, "--d", d, "--n", n], "");
        assert_eq!(gen.code, EXIT_OK);
        let doc = json(&gen);
        assert!(doc["meta"]["predicted_ratio"].is_string());
        // metadata supplies α, s and t
        let check = call(&["check"], &gen.stdout);
        assert_eq!(check.code, EXIT_OK, "{}", check.stdout);
        let solve = call(&["solve"], &gen.stdout);
        assert_eq!(solve.code, EXIT_NEGATIVE, "{}", solve.stdout);
    }
}

#[test]
fn star_cover_and_fg() {
    let path = r#"{"u":2,"v":3,"edges":[[0,0],[0,1],[1,1],[1,2]]}"#;
    let out = call(&["star-cover", "--k", "2"], path);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(edges(&json(&out)["cover"]["edges"]).len(), 3);
    let out = call(&["star-cover", "--k", "1"], path);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert_eq!(json(&out)["violation"]["status"], "violated");

    let out = call(&["fg", "--edge", "0,1", "--alpha", "1"], K23);
    assert_eq!(out.code, EXIT_OK);
    let value = json(&out);
    assert_eq!(value["f"], "2");
    assert_eq!(value["g"], "2");
    assert_eq!(value["redundant"], true);
}

#[test]
fn double_check_reports_side() {
    let out = call(&["double-check", "--alpha", "1"], K23);
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert_eq!(json(&out)["side"], "right");
}

#[test]
fn usage_errors_exit_three_with_json() {
    for args in [
        vec!["threshold", "--h", "x", "--k", "2"],
        vec!["bogus"],
        vec!["check", "--alpha", "1/0"],
        vec!["check"],
        vec!["fg", "--edge", "0;1", "--alpha", "1"],
        vec!["fg", "--edge", "1,0", "--alpha", "1"],
        vec!["threshold", "--h", "2", "--k", "2", "--d", "2"],
        vec!["solve", "--s", "0", "--t", "1"],
    ] {
        let input = if args[0] == "fg" { r#"{"u":2,"v":1,"edges":[[0,0]]}"# } else { K23 };
        let out = call(&args, input);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}: {}", out.stdout);
        assert!(json(&out)["error"].is_string());
    }
    let out = call(&["check", "--alpha", "1"], "{not json");
    assert_eq!(out.code, EXIT_USAGE);
    assert_eq!(call(&["--help"], "").code, EXIT_OK);
}

#[test]
fn campaigns_through_the_cli() {
    let out = call(
        &["verify-main", "--h", "2", "--k", "2", "--d", "3", "--u-max", "3", "--v-max", "4", "--workers", "1"],
        "",
    );
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(json(&out)["graphs_examined"].as_u64().unwrap() > 0);

    let out = call(&["verify-counter", "--h", "2", "--k", "2", "--d", "3", "--n-max", "2"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    let out = call(&["verify-tree", "--alpha", "5/3", "--u-max", "3", "--v-max", "4"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    let out = call(&["verify-stars", "--k", "2", "--u-max", "3", "--v-max", "3"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    let out = call(&["props", "--union-triples", "50", "--oracle", "20", "--redundancy-graphs", "10"], "");
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert_eq!(json(&out)["checks"]["union_identity"], 50);
}

#[test]
fn injected_gadget_is_a_counterexample() {
    let dir = std::env::temp_dir().join(format!("stmatch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("g1.json");
    let gen = call(&["gen-tight", "--h", "2", "--k", "2", "--d", "3", "--n", "1"], "");
    std::fs::write(&file, &gen.stdout).unwrap();
    let out = call(
        &[
            "verify-main", "--h", "2", "--k", "2", "--d", "3", "--u-max", "1", "--v-max", "1",
            "--alpha", "11/7", "--inject", file.to_str().unwrap(),
        ],
        "",
    );
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(out.code, EXIT_NEGATIVE);
    assert_eq!(json(&out)["counterexamples"].as_array().unwrap().len(), 1);
}

#[test]
fn binary_exit_status_matches() {
    let status = Command::new(env!("CARGO_BIN_EXE_stmatch"))
        .args(["threshold", "--h", "2", "--k", "2", "--d", "3"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_OK));
    let value: Value = serde_json::from_slice(&status.stdout).unwrap();
    assert_eq!(value["threshold"], "5/3");
    let status = Command::new(env!("CARGO_BIN_EXE_stmatch")).arg("nope").output().unwrap();
    assert_eq!(status.status.code(), Some(EXIT_USAGE));
}
