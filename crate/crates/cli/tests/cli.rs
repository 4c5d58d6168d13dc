//! Drives the installed binary end to end: verdicts and exit codes,
//! witness and JSON output, batch directories, budget handling, the
//! generator against the committed golden instances, the selftest, and
//! the bench tables.

use std::path::{Path, PathBuf};
use std::process::Command;
use treembed_core::text::{parse_pattern, parse_tree};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_treembed"));
    // keep an ambient budget override out of the tests
    c.env_remove("TREEMBED_BUDGET");
    c
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn run(cmd: &mut Command) -> (String, String, i32) {
    let out = cmd.output().expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("stdout is text"),
        String::from_utf8(out.stderr).expect("stderr is text"),
        out.status.code().expect("no signal"),
    )
}

#[test]
fn figure_matrix_verdicts_and_exit_codes() {
    let expected = [
        ("t0.tree", ["yes", "no", "no", "no"]),
        ("t1.tree", ["yes", "yes", "no", "no"]),
        ("t2.tree", ["yes", "yes", "yes", "no"]),
        ("t3.tree", ["yes", "yes", "yes", "yes"]),
    ];
    for (tree, by_kind) in expected {
        for (kind, want) in ["std", "inj", "anc", "lca"].iter().zip(by_kind) {
            let (stdout, stderr, code) = run(bin()
                .arg("check")
                .args(["--kind", kind])
                .arg("--tree")
                .arg(golden(tree))
                .arg("--pattern")
                .arg(golden("p0.pat")));
            assert_eq!(stdout.trim(), want, "{tree} kind {kind}: {stderr}");
            assert_eq!(code, 0, "{tree} kind {kind}");
        }
    }
}

#[test]
fn witness_lines_accompany_yes() {
    let (stdout, _, code) = run(bin()
        .arg("check")
        .args(["--kind", "lca", "--witness"])
        .arg("--tree")
        .arg(golden("t3.tree"))
        .arg("--pattern")
        .arg(golden("p0.pat")));
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "yes");
    assert_eq!(lines.len(), 6, "one line per pattern node:\n{stdout}");
    for line in &lines[1..] {
        assert!(line.contains(" -> "), "witness line: {line}");
    }
}

#[test]
fn json_report_has_the_documented_fields() {
    let (stdout, _, code) = run(bin()
        .arg("check")
        .args(["--kind", "lca", "--witness", "--json"])
        .arg("--tree")
        .arg(golden("t3.tree"))
        .arg("--pattern")
        .arg(golden("p0.pat")));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("valid JSON");
    assert_eq!(v["verdict"], "yes");
    assert_eq!(v["kind"], "lca");
    assert!(v["algorithm"].is_string());
    let witness = v["witness"].as_array().expect("witness array");
    assert_eq!(witness.len(), 5);
    for pair in witness {
        assert!(pair["pattern"].is_string() && pair["tree"].is_string());
    }
    assert!(v["stats"]["nodes_explored"].is_u64());
    assert!(v["stats"]["elapsed_ms"].is_u64());
    // single-instance reports carry no source paths
    assert!(v.get("tree").is_none() && v.get("pattern").is_none());
}

#[test]
fn budget_exhaustion_is_unknown_and_the_flag_beats_the_environment() {
    let tree = golden("fig_inj_tree.golden");
    let pattern = golden("fig_inj_pattern.golden");
    let base = |cmd: &mut Command| {
        cmd.arg("check")
            .args(["--kind", "inj"])
            .arg("--tree")
            .arg(&tree)
            .arg("--pattern")
            .arg(&pattern);
    };

    let mut cmd = bin();
    base(&mut cmd);
    let (stdout, _, code) = run(cmd.args(["--budget", "1"]));
    assert_eq!((stdout.trim(), code), ("unknown", 2));

    let mut cmd = bin();
    base(&mut cmd);
    let (stdout, _, code) = run(cmd.env("TREEMBED_BUDGET", "1"));
    assert_eq!((stdout.trim(), code), ("unknown", 2));

    let mut cmd = bin();
    base(&mut cmd);
    let (stdout, _, code) = run(cmd
        .env("TREEMBED_BUDGET", "1")
        .args(["--budget", "10000000"]));
    assert_eq!((stdout.trim(), code), ("yes", 0));

    let mut cmd = bin();
    base(&mut cmd);
    let (_, stderr, code) = run(cmd.env("TREEMBED_BUDGET", "lots"));
    assert_eq!(code, 1, "{stderr}");
    assert!(stderr.contains("TREEMBED_BUDGET"), "{stderr}");
}

#[test]
fn batch_directories_report_every_pair_in_sorted_order() {
    let dir = tempfile::tempdir().expect("tempdir");
    // created out of name order on purpose; output must be sorted
    for name in ["d.tree", "b.tree", "a.tree", "c.tree"] {
        let source = match name {
            "a.tree" => "t0.tree",
            "b.tree" => "t1.tree",
            "c.tree" => "t2.tree",
            _ => "t3.tree",
        };
        std::fs::copy(golden(source), dir.path().join(name)).unwrap();
    }

    let (stdout, _, code) = run(bin()
        .arg("check")
        .args(["--kind", "lca"])
        .arg("--tree")
        .arg(dir.path())
        .arg("--pattern")
        .arg(golden("p0.pat")));
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 4);
    for (line, (name, verdict)) in lines.iter().zip([
        ("a.tree", "no"),
        ("b.tree", "no"),
        ("c.tree", "no"),
        ("d.tree", "yes"),
    ]) {
        assert!(
            line.contains(name) && line.ends_with(verdict),
            "expected {name} -> {verdict}, got: {line}"
        );
    }

    let (stdout, _, code) = run(bin()
        .arg("check")
        .args(["--kind", "lca", "--json"])
        .arg("--tree")
        .arg(dir.path())
        .arg("--pattern")
        .arg(golden("p0.pat")));
    assert_eq!(code, 0);
    let first: serde_json::Value = serde_json::from_str(stdout.lines().next().unwrap()).unwrap();
    assert!(first["tree"].as_str().unwrap().ends_with("a.tree"));
    assert!(first["pattern"].as_str().unwrap().ends_with("p0.pat"));
}

#[test]
fn parse_errors_name_the_file_and_position() {
    let dir = tempfile::tempdir().expect("tempdir");
    let bad = dir.path().join("bad.tree");
    std::fs::write(&bad, "f(").unwrap();
    let (_, stderr, code) = run(bin()
        .arg("check")
        .args(["--kind", "std"])
        .arg("--tree")
        .arg(&bad)
        .arg("--pattern")
        .arg(golden("p0.pat")));
    assert_eq!(code, 1);
    assert!(
        stderr.contains("bad.tree") && stderr.contains("1:3"),
        "{stderr}"
    );
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    let (_, stderr, code) = run(bin().arg("check").args(["--kind", "wat"]));
    assert_eq!(code, 1);
    assert!(stderr.contains("possible values"), "{stderr}");

    let (stdout, _, code) = run(bin().arg("--help"));
    assert_eq!(code, 0);
    assert!(stdout.contains("check") && stdout.contains("selftest"));
}

#[test]
fn gen_rejects_a_formula_without_clauses() {
    let dir = tempfile::tempdir().expect("tempdir");
    let cnf = dir.path().join("empty.cnf");
    std::fs::write(&cnf, "p cnf 3 0\n").unwrap();
    let (_, stderr, code) = run(bin()
        .arg("gen")
        .args(["--reduction", "inj"])
        .arg("--cnf")
        .arg(&cnf)
        .arg("--out-tree")
        .arg(dir.path().join("t"))
        .arg("--out-pattern")
        .arg(dir.path().join("p")));
    assert_eq!(code, 1);
    assert!(stderr.contains("no clauses"), "{stderr}");
}

#[test]
fn selftest_passes_and_prints_per_suite_counts() {
    let (stdout, _, code) =
        run(bin()
            .arg("selftest")
            .args(["--max-tree-nodes", "3", "--max-pattern-nodes", "3"]));
    assert_eq!(code, 0, "{stdout}");
    for name in [
        "oracle-equivalence",
        "hierarchy",
        "collapse",
        "path-pattern",
        "sat-round-trip",
    ] {
        assert!(stdout.contains(name), "missing {name}:\n{stdout}");
    }
    assert!(stdout.contains("all suites passed"));
    assert!(!stdout.contains(" 0 cases"));
}

#[test]
fn selftest_lenient_counting_reports_the_counterexamples() {
    let (stdout, _, code) = run(bin().arg("selftest").args([
        "--max-tree-nodes",
        "3",
        "--max-pattern-nodes",
        "3",
        "--lenient-counting",
    ]));
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("height-one-lenient"), "{stdout}");
    assert!(stdout.contains("counting says yes"), "{stdout}");
}

#[test]
fn bench_emits_rows_for_each_size() {
    let (stdout, _, code) =
        run(bin()
            .arg("bench")
            .args(["--suite", "reduction-growth", "--sizes", "2,3", "--json"]));
    assert_eq!(code, 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let rows = rows.as_array().expect("array of rows");
    assert_eq!(rows.len(), 4, "two solvers per size");
    for row in rows {
        assert!(row["elapsed_ms"].is_number());
        assert!(["yes", "no", "unknown"].contains(&row["verdict"].as_str().unwrap()));
    }

    let (stdout, _, code) = run(bin()
        .arg("bench")
        .args(["--suite", "lca-scale", "--sizes", "60"]));
    assert_eq!(code, 0);
    assert!(stdout.contains("oracle spot-check"), "{stdout}");
    assert!(stdout.contains("lca-scale"), "{stdout}");
}

#[test]
fn gen_reproduces_the_committed_goldens() {
    let dir = tempfile::tempdir().expect("tempdir");
    for (reduction, tree_golden, pattern_golden, note) in [
        ("anc", "fig_anc_tree.golden", "fig_anc_pattern.golden", ""),
        (
            "inj",
            "fig_inj_tree.golden",
            "fig_inj_pattern.golden",
            "tree: 25 nodes",
        ),
    ] {
        let out_tree = dir.path().join(format!("{reduction}.tree"));
        let out_pattern = dir.path().join(format!("{reduction}.pat"));
        let (stdout, stderr, code) = run(bin()
            .arg("gen")
            .args(["--reduction", reduction])
            .arg("--cnf")
            .arg(golden("fig_reduction.cnf"))
            .arg("--out-tree")
            .arg(&out_tree)
            .arg("--out-pattern")
            .arg(&out_pattern));
        assert_eq!(code, 0, "{stderr}");
        assert!(stdout.contains(note), "{stdout}");

        let got_tree = parse_tree(&std::fs::read_to_string(&out_tree).unwrap()).unwrap();
        let want_tree = parse_tree(&std::fs::read_to_string(golden(tree_golden)).unwrap()).unwrap();
        assert_eq!(got_tree.canonical_key(), want_tree.canonical_key());
        let got_pattern = parse_pattern(&std::fs::read_to_string(&out_pattern).unwrap()).unwrap();
        let want_pattern =
            parse_pattern(&std::fs::read_to_string(golden(pattern_golden)).unwrap()).unwrap();
        assert_eq!(got_pattern.canonical_key(), want_pattern.canonical_key());

        // the figure formula is satisfiable, so the instance embeds
        let kind = if reduction == "anc" { "anc" } else { "inj" };
        let (stdout, _, code) = run(bin()
            .arg("check")
            .args(["--kind", kind])
            .arg("--tree")
            .arg(&out_tree)
            .arg("--pattern")
            .arg(&out_pattern));
        assert_eq!((stdout.trim(), code), ("yes", 0));
    }
}
