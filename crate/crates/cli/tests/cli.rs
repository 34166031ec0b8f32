mod common;

use common::*;
use serde_json::Value;

fn ok(out: &std::process::Output) {
    assert!(
        out.status.success(),
        "exit {:?}; stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn gen_complete_header() {
    let out = run(&["gen", "complete", "-n", "5", "-r", "3"]);
    ok(&out);
    let text = stdout(&out);
    let lines = data_lines(&text);
    assert_eq!(lines[0], "5 3 10");
    assert_eq!(lines.len(), 11);
    assert!(text.starts_with("# manifest: {"));
}

#[test]
fn gen_complete_below_uniformity_is_edgeless() {
    let out = run(&["gen", "complete", "-n", "2", "-r", "3"]);
    ok(&out);
    assert_eq!(data_lines(&stdout(&out)), vec!["2 3 0"]);
}

#[test]
fn gen_random_is_reproducible() {
    let s = Scratch::new();
    let a = s.path("a.txt");
    let b = s.path("b.txt");
    for p in [&a, &b] {
        ok(&run(&[
            "gen",
            "random",
            "-n",
            "6",
            "-r",
            "3",
            "-m",
            "8",
            "--seed",
            "7",
            "-o",
            p.to_str().unwrap(),
        ]));
    }
    let (ta, tb) = (
        std::fs::read_to_string(&a).unwrap(),
        std::fs::read_to_string(&b).unwrap(),
    );
    assert_eq!(data_lines(&ta), data_lines(&tb));
    assert_eq!(data_lines(&ta)[0], "6 3 8");
    let other = run(&[
        "gen", "random", "-n", "6", "-r", "3", "-m", "8", "--seed", "8",
    ]);
    assert_ne!(data_lines(&stdout(&other)), data_lines(&ta));
}

#[test]
fn gen_rejects_bad_parameters() {
    assert_eq!(
        run(&["gen", "random", "-n", "4", "-r", "3", "-m", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["gen", "random", "-n", "4", "-r", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["gen", "complete", "-n", "4", "-r", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn gen_json_mirror_round_trips() {
    let s = Scratch::new();
    let out = run(&["gen", "complete", "-n", "4", "-r", "3", "--json"]);
    ok(&out);
    let v = json(&out);
    validate(&schema("hypergraph"), &v).unwrap();
    assert_eq!(v["hypergraph"]["edges"].as_array().unwrap().len(), 4);
    let path = s.write("h.json", &stdout(&out));
    let solved = run(&["solve", path.to_str().unwrap(), "--random", "-p", "2"]);
    ok(&solved);
}

#[test]
fn solve_single_triple() {
    let s = Scratch::new();
    let h = s.complete(3, 3);
    let o = s.write("o.txt", "3 3 1\n0 1 2\n");
    let out = run(&[
        "solve",
        h.to_str().unwrap(),
        "--orientation",
        o.to_str().unwrap(),
        "-p",
        "2",
        "--exact",
    ]);
    ok(&out);
    let v = json(&out);
    validate(&schema("solve"), &v).unwrap();
    assert_eq!(v["gamma"], 2);
    assert_eq!(v["set"], serde_json::json!([0, 1]));
    assert_eq!(v["proven_optimal"], true);
    assert_eq!(v["witnesses"]["2"], 0);
}

#[test]
fn solve_edgeless_takes_everything() {
    let s = Scratch::new();
    let h = s.write("e.txt", "4 3 0\n");
    let out = run(&["solve", h.to_str().unwrap(), "--random", "-p", "1"]);
    ok(&out);
    let v = json(&out);
    assert_eq!(v["gamma"], 4);
    assert_eq!(v["set"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn solve_greedy_reports_a_dominating_set() {
    let s = Scratch::new();
    let h = s.complete(9, 3);
    for seed in 0..10 {
        let out = run(&[
            "solve",
            h.to_str().unwrap(),
            "--random",
            "--seed",
            &seed.to_string(),
            "-p",
            "2",
            "--greedy",
        ]);
        ok(&out);
        let v = json(&out);
        validate(&schema("solve"), &v).unwrap();
        assert_eq!(v["method"], "greedy");
        assert_eq!(v["certificate_verified"], true);
        assert_eq!(v["proven_optimal"], false);
        // every vertex outside the set carries a witness edge
        let set: Vec<u64> = v["set"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect();
        let witnessed = v["witnesses"].as_object().unwrap().len();
        assert_eq!(set.len() + witnessed, 9);
    }
}

#[test]
fn solve_with_foreign_orientation_exits_3() {
    let s = Scratch::new();
    let h = s.complete(3, 3);
    let wrong_vertex = s.write("o1.txt", "3 3 1\n0 1 3\n");
    let wrong_header = s.write("o2.txt", "4 3 1\n0 1 2\n");
    for o in [wrong_vertex, wrong_header] {
        let out = run(&[
            "solve",
            h.to_str().unwrap(),
            "--orientation",
            o.to_str().unwrap(),
            "-p",
            "2",
        ]);
        assert_eq!(out.status.code(), Some(3));
    }
    let garbage = s.write("g.txt", "3 3 1\n0 x 2\n");
    let out = run(&["solve", garbage.to_str().unwrap(), "--random", "-p", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solve_usage_errors_exit_2() {
    let s = Scratch::new();
    let h = s.complete(4, 3);
    let hp = h.to_str().unwrap();
    // prefix length must stay below r
    assert_eq!(
        run(&["solve", hp, "--random", "-p", "3"]).status.code(),
        Some(2)
    );
    // an orientation source is required
    assert_eq!(run(&["solve", hp, "-p", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["solve", hp, "--random", "-p", "1", "--exact", "--greedy"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["solve", "/nonexistent/h.txt", "--random", "-p", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn orient_output_is_accepted_by_solve() {
    let s = Scratch::new();
    let h = s.complete(5, 3);
    let o = s.path("o.txt");
    ok(&run(&[
        "orient",
        h.to_str().unwrap(),
        "--seed",
        "11",
        "-o",
        o.to_str().unwrap(),
    ]));
    let text = std::fs::read_to_string(&o).unwrap();
    assert!(text.starts_with("# manifest: {"));
    assert_eq!(data_lines(&text)[0], "5 3 10");
    let out = run(&[
        "solve",
        h.to_str().unwrap(),
        "--orientation",
        o.to_str().unwrap(),
        "-p",
        "1",
    ]);
    ok(&out);
    assert_eq!(json(&out)["certificate_verified"], true);
}

#[test]
fn gamma_upper_triangle() {
    let s = Scratch::new();
    let h = s.complete(3, 2);
    let w = s.path("w.txt");
    let out = run(&[
        "gamma-upper",
        h.to_str().unwrap(),
        "-p",
        "1",
        "--exact",
        "--witness-out",
        w.to_str().unwrap(),
    ]);
    ok(&out);
    let v = json(&out);
    validate(&schema("gamma-upper"), &v).unwrap();
    assert_eq!(v["value"], 2);
    assert_eq!(v["exact"], true);
    assert_eq!(v["orientations_examined"], 8);
    // the witness file is a valid orientation whose own value is 2
    let solved = run(&[
        "solve",
        h.to_str().unwrap(),
        "--orientation",
        w.to_str().unwrap(),
        "-p",
        "1",
    ]);
    ok(&solved);
    assert_eq!(json(&solved)["gamma"], 2);
}

#[test]
fn gamma_upper_refuses_over_cap() {
    let s = Scratch::new();
    let h = s.complete(4, 3);
    let out = run(&[
        "gamma-upper",
        h.to_str().unwrap(),
        "-p",
        "2",
        "--cap",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1296"));
}

#[test]
fn gamma_upper_search_writes_witness_and_trace() {
    let s = Scratch::new();
    let h = s.complete(6, 3);
    let (w, t) = (s.path("w.txt"), s.path("t.csv"));
    let out = run(&[
        "gamma-upper",
        h.to_str().unwrap(),
        "-p",
        "2",
        "--search",
        "--restarts",
        "3",
        "--max-steps",
        "15",
        "--seed",
        "4",
        "--witness-out",
        w.to_str().unwrap(),
        "--trace-out",
        t.to_str().unwrap(),
    ]);
    ok(&out);
    let v = json(&out);
    validate(&schema("gamma-upper"), &v).unwrap();
    assert_eq!(v["exact"], false);
    let trace = std::fs::read_to_string(&t).unwrap();
    let rows = data_lines(&trace);
    assert_eq!(rows[0], "restart,step,value");
    let restarts: std::collections::BTreeSet<&str> = rows[1..]
        .iter()
        .map(|r| r.split(',').next().unwrap())
        .collect();
    assert_eq!(restarts.len(), 3);
    let solved = run(&[
        "solve",
        h.to_str().unwrap(),
        "--orientation",
        w.to_str().unwrap(),
        "-p",
        "2",
    ]);
    assert_eq!(json(&solved)["gamma"], v["value"]);
}

#[test]
fn bounds_table() {
    let out = run(&["bounds", "-r", "2", "--n-min", "2", "--n-max", "40"]);
    ok(&out);
    let text = stdout(&out);
    let lines = data_lines(&text);
    assert_eq!(
        lines[0],
        "n,r,p,thm2i_upper,gpl_closed,t_star,certified_lower,asymptotic_informational"
    );
    let rows: Vec<Vec<&str>> = lines[1..].iter().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 39);
    let row21 = rows.iter().find(|r| r[0] == "21").unwrap();
    assert_eq!(row21[6], "3");
    for r in &rows {
        let upper: f64 = r[3].parse().unwrap();
        if !r[6].is_empty() {
            assert!(r[6].parse::<f64>().unwrap() <= upper);
        }
    }
}

#[test]
fn bounds_json_has_informational_column() {
    let out = run(&[
        "bounds", "-r", "3", "--n-min", "3", "--n-max", "12", "--format", "json",
    ]);
    ok(&out);
    let v = json(&out);
    validate(&schema("bounds"), &v).unwrap();
    for row in v["rows"].as_array().unwrap() {
        let n = row["n"].as_f64().unwrap();
        let info = row["asymptotic_informational"].as_f64().unwrap();
        assert!(info > 0.0);
        // c(3) * sqrt(ln n) with c(3) computed here from its closed form
        let c3 = (2.0 / std::f64::consts::E) * (2.0 * (1.5f64).ln()).powf(-0.5);
        assert!((info - c3 * n.ln().sqrt()).abs() < 1e-12);
    }
    assert_eq!(
        run(&["bounds", "-r", "3", "--n-min", "9", "--n-max", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_eq1_passes() {
    let out = run(&["verify", "eq1", "--n", "4", "--r", "3"]);
    ok(&out);
    let v = json(&out);
    validate(&schema("verify"), &v).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_prefix_identity_passes() {
    let out = run(&["verify", "prefix-identity", "--budget", "100"]);
    ok(&out);
    assert_eq!(json(&out)["suites"][0]["failures"], 0);
}

#[test]
fn verify_unknown_suite_exits_2() {
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn color_report() {
    let s = Scratch::new();
    let h = s.complete(6, 3);
    let out = run(&["color", h.to_str().unwrap(), "-p", "2"]);
    ok(&out);
    let v = json(&out);
    validate(&schema("color"), &v).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 1);
    assert_eq!(v["complement_chromatic_number"], 1);
    assert_eq!(v["clique_number"], 6);
    assert_eq!(v["independence_number"], 2);
}

#[test]
fn explore_emits_csv() {
    let out = run(&[
        "explore",
        "single-prefix",
        "--n-min",
        "3",
        "--n-max",
        "5",
        "--restarts",
        "1",
        "--max-steps",
        "5",
    ]);
    ok(&out);
    let text = stdout(&out);
    let lines = data_lines(&text);
    assert!(lines[0].starts_with("preset,n,r,p,"));
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.starts_with("single-prefix,")));
}

#[test]
fn manifests_name_their_outputs() {
    let s = Scratch::new();
    let o = s.path("b.json");
    ok(&run(&[
        "bounds",
        "-r",
        "2",
        "--n-min",
        "3",
        "--n-max",
        "4",
        "--format",
        "json",
        "-o",
        o.to_str().unwrap(),
    ]));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&o).unwrap()).unwrap();
    assert_eq!(v["manifest"]["outputs"][0], o.to_str().unwrap());
    assert_eq!(v["manifest"]["command"], "bounds");
}

#[test]
fn schema_checker_rejects_malformed_reports() {
    let s = schema("solve");
    assert!(validate(&s, &serde_json::json!({})).is_err());
    let out = run(&[
        "bounds", "-r", "2", "--n-min", "3", "--n-max", "3", "--format", "json",
    ]);
    let mut v = json(&out);
    validate(&schema("bounds"), &v).unwrap();
    v["rows"][0]["n"] = serde_json::json!("three");
    assert!(validate(&schema("bounds"), &v).is_err());
    v["schema_version"] = serde_json::json!(2);
    assert!(validate(&schema("bounds"), &v).is_err());
}
