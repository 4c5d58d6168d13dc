//! End-to-end acceptance: eight numbered checks covering the figure
//! matrix, exhaustive and randomized equivalence suites, SAT round
//! trips, the counting-rule arbitration, witness validity, large-input
//! timing, and degree reduction. Each check prints one line; the test
//! fails at the end if any check failed, after running all of them.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! per-check lines on success too.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::time::{Duration, Instant};
use treembed_core::oracle::verify;
use treembed_core::poly::{check_anc_bounded, check_lca, check_std, dispatch, CountingRule};
use treembed_core::random::{
    deep_random_tree, planted_pattern, random_cnf, random_pattern, random_tree, spine_pattern,
    PlantConfig,
};
use treembed_core::reductions::{gen_inj_reduction, reduce_degree, ReductionKind};
use treembed_core::solver::{solve_inj, SearchConfig};
use treembed_core::suite::{
    collapse_suite, height_one_suite, hierarchy_suite, oracle_equivalence_suite,
    path_pattern_suite, sat_round_trip_suite, SuiteLimits, SuiteReport,
};
use treembed_core::text::{parse_pattern, parse_tree, render_pattern, render_tree};
use treembed_core::tree::{EdgeKind, Label, PatternBuilder, TreeBuilder};
use treembed_core::{EmbeddingKind, Verdict};

struct Outcome {
    number: u32,
    label: &'static str,
    ok: bool,
    elapsed: Duration,
    detail: String,
}

fn run_criterion(
    number: u32,
    label: &'static str,
    budget: Option<Duration>,
    body: impl FnOnce() -> (bool, String),
) -> Outcome {
    let start = Instant::now();
    let (mut ok, mut detail) = body();
    let elapsed = start.elapsed();
    if let Some(b) = budget {
        if elapsed >= b {
            ok = false;
            write!(detail, "; exceeded the {b:?} budget").unwrap();
        }
    }
    let outcome = Outcome {
        number,
        label,
        ok,
        elapsed,
        detail,
    };
    println!(
        "criterion {} ({}): {} ({:.2?}) - {}",
        outcome.number,
        outcome.label,
        if outcome.ok { "PASS" } else { "FAIL" },
        outcome.elapsed,
        clip(&outcome.detail)
    );
    outcome
}

fn clip(s: &str) -> &str {
    match s.char_indices().nth(300) {
        Some((i, _)) => &s[..i],
        None => s,
    }
}

fn suite_summary(r: &SuiteReport) -> String {
    let mut out = format!(
        "{}: {} cases, {} failures",
        r.name, r.cases, r.failure_count
    );
    if let Some(first) = r.failures.first() {
        write!(out, "; first: {first}").unwrap();
    }
    out
}

fn figure_matrix() -> (bool, String) {
    let p = parse_pattern("f/a[.//b/c]//b").expect("pinned pattern parses");
    let rows = [
        ("f(a(b(c)))", [true, false, false, false]),
        ("f(a(b(b(c))))", [true, true, false, false]),
        ("f(a(g(b,b(c))))", [true, true, true, false]),
        ("f(a(b,g(b(c))))", [true, true, true, true]),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for (text, expect) in rows {
        let t = parse_tree(text).expect("pinned tree parses");
        for (kind, want) in EmbeddingKind::ALL.into_iter().zip(expect) {
            let res = dispatch(&t, &p, kind);
            if res.verdict != Verdict::from(want) {
                ok = false;
                write!(
                    detail,
                    "[{text} {kind}: got {}, want {}] ",
                    res.verdict,
                    Verdict::from(want)
                )
                .unwrap();
            }
            if res.verdict == Verdict::Yes {
                let h = res.witness.expect("yes comes with a witness");
                if verify(&t, &p, &h, kind) != Ok(true) {
                    ok = false;
                    write!(detail, "[{text} {kind}: witness rejected] ").unwrap();
                }
            }
        }
    }
    if ok {
        detail = "16 verdicts exact, witnesses verified".to_string();
    }
    (ok, detail)
}

fn witness_audit(earlier: &[SuiteReport]) -> (bool, String) {
    let mut ok = true;
    let mut detail = String::new();
    let suite_hits: u64 = earlier
        .iter()
        .map(|r| r.failures.iter().filter(|f| f.contains("witness")).count() as u64)
        .sum();
    if suite_hits > 0 {
        ok = false;
        write!(
            detail,
            "{suite_hits} witness failures inside earlier suites; "
        )
        .unwrap();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x517E55);
    let mut verified = 0u64;
    for case in 0..150u64 {
        let size = rng.gen_range(2..=40);
        let t = random_tree(&mut rng, size, &["a", "b", "c"]);
        let p = if case % 2 == 0 {
            let cfg = PlantConfig {
                target_nodes: rng.gen_range(1..=10),
                close_under_lca: case % 4 == 0,
                wildcard_prob: 0.2,
                desc_prob: 0.3,
                max_degree: None,
            };
            planted_pattern(&mut rng, &t, &cfg)
        } else {
            let nodes = rng.gen_range(1..=8);
            random_pattern(&mut rng, nodes, &["a", "b", "c", "*"], 0.2, 0.3, None)
        };
        for kind in EmbeddingKind::ALL {
            let res = dispatch(&t, &p, kind);
            if res.verdict != Verdict::Yes {
                continue;
            }
            match res.witness {
                Some(h) if verify(&t, &p, &h, kind) == Ok(true) => verified += 1,
                _ => {
                    ok = false;
                    write!(
                        detail,
                        "[{} vs {} under {kind}: bad or missing witness] ",
                        render_tree(&t),
                        render_pattern(&p)
                    )
                    .unwrap();
                }
            }
        }
    }
    for phi_case in 0..10 {
        let phi = random_cnf(&mut rng, 3, phi_case % 3 + 1);
        for gen in [ReductionKind::Inj, ReductionKind::Anc, ReductionKind::InjH2] {
            let (t, p) = gen.generate(&phi);
            let kind = gen.embedding_kind();
            let res = dispatch(&t, &p, kind);
            if res.verdict != Verdict::Yes {
                continue;
            }
            match res.witness {
                Some(h) if verify(&t, &p, &h, kind) == Ok(true) => verified += 1,
                _ => {
                    ok = false;
                    write!(detail, "[reduction {gen}: bad or missing witness] ").unwrap();
                }
            }
        }
    }
    if ok {
        detail =
            format!("no witness failures in criteria 1-5; {verified} fresh witnesses verified");
    }
    (ok, detail)
}

fn performance() -> (bool, String) {
    let mut ok = true;
    let mut detail = String::new();

    let mut rng = ChaCha8Rng::seed_from_u64(0xA11_0C8);
    let big = random_tree(&mut rng, 100_000, &["a", "b", "c", "d"]);
    let big_p = planted_pattern(
        &mut rng,
        &big,
        &PlantConfig {
            target_nodes: 640,
            close_under_lca: true,
            wildcard_prob: 0.1,
            desc_prob: 0.3,
            max_degree: None,
        },
    );

    let start = Instant::now();
    let lca = check_lca(&big, &big_p);
    let lca_time = start.elapsed();
    if lca.verdict != Verdict::Yes || lca_time >= Duration::from_secs(10) {
        ok = false;
    }
    match &lca.witness {
        Some(h) if verify(&big, &big_p, h, EmbeddingKind::Lca) == Ok(true) => {}
        _ => ok = false,
    }
    write!(
        detail,
        "lca {:?} on 100000x{} ({}); ",
        lca_time,
        big_p.node_count(),
        lca.verdict
    )
    .unwrap();

    let start = Instant::now();
    let std_res = check_std(&big, &big_p);
    let std_time = start.elapsed();
    if std_res.verdict != Verdict::Yes || std_time >= Duration::from_secs(5) {
        ok = false;
    }
    write!(detail, "std {:?} ({}); ", std_time, std_res.verdict).unwrap();

    let mid = deep_random_tree(&mut rng, 10_000, &["a", "b", "c", "d", "e", "f"], 40);
    let mid_p = spine_pattern(&mut rng, &mid, 0.55, 0.5);
    let start = Instant::now();
    match check_anc_bounded(&mid, &mid_p) {
        Ok(res) => {
            let anc_time = start.elapsed();
            if res.verdict != Verdict::Yes || anc_time >= Duration::from_secs(10) {
                ok = false;
            }
            write!(
                detail,
                "anc {:?} on 10000x{} deg<=2 ({})",
                anc_time,
                mid_p.node_count(),
                res.verdict
            )
            .unwrap();
        }
        Err(e) => {
            ok = false;
            write!(detail, "anc bounded refused: {e}").unwrap();
        }
    }
    (ok, detail)
}

fn degree_reduction() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xDE6);
    let cfg = SearchConfig::default();
    let mut ok = true;
    let mut detail = String::new();
    let mut checked = 0u32;
    for case in 0..200u32 {
        let (t, p) = if case % 5 == 4 {
            let vars = rng.gen_range(1..=3);
            let clauses = rng.gen_range(1..=3);
            let phi = random_cnf(&mut rng, vars, clauses);
            gen_inj_reduction(&phi)
        } else {
            let mut tb = TreeBuilder::new();
            let tr = tb.root("r");
            for _ in 0..rng.gen_range(1..=4) {
                let size = rng.gen_range(1..=12);
                let sub = random_tree(&mut rng, size, &["a", "b", "c"]);
                tb.graft(tr, &sub, sub.root());
            }
            let mut pb = PatternBuilder::new();
            let pr = pb.root(Label::symbol("r"));
            for _ in 0..rng.gen_range(0..=3) {
                let size = rng.gen_range(1..=5);
                let sub = random_pattern(&mut rng, size, &["a", "b", "c", "*"], 0.2, 0.3, Some(2));
                pb.graft(pr, EdgeKind::Desc, &sub, sub.root());
            }
            (
                tb.finish().expect("built tree is valid"),
                pb.finish().expect("built pattern is valid"),
            )
        };
        let before = solve_inj(&t, &p, &cfg);
        let (t2, p2) = match reduce_degree(&t, &p) {
            Ok(pair) => pair,
            Err(e) => {
                ok = false;
                write!(detail, "[case {case}: transform refused: {e}] ").unwrap();
                continue;
            }
        };
        let after = solve_inj(&t2, &p2, &cfg);
        checked += 1;
        if before.verdict != after.verdict {
            ok = false;
            write!(
                detail,
                "[{} vs {}: {} before, {} after] ",
                render_tree(&t),
                render_pattern(&p),
                before.verdict,
                after.verdict
            )
            .unwrap();
        }
        if p2.max_degree() > 2 {
            ok = false;
            write!(
                detail,
                "[case {case}: degree {} after reduction] ",
                p2.max_degree()
            )
            .unwrap();
        }
    }
    if ok {
        detail = format!("{checked} instances, verdicts preserved, degree <= 2");
    }
    (ok, detail)
}

#[test]
fn acceptance() {
    let limits = SuiteLimits::default();
    let mut outcomes: Vec<Outcome> = Vec::new();
    let mut reports: Vec<SuiteReport> = Vec::new();

    outcomes.push(run_criterion(
        1,
        "figure matrix",
        Some(Duration::from_secs(1)),
        figure_matrix,
    ));

    outcomes.push(run_criterion(
        2,
        "oracle equivalence",
        Some(Duration::from_secs(300)),
        || {
            let r = oracle_equivalence_suite(&limits);
            let out = (r.passed(), suite_summary(&r));
            reports.push(r);
            out
        },
    ));

    outcomes.push(run_criterion(3, "hierarchy and collapse", None, || {
        let parts = [
            hierarchy_suite(&limits),
            collapse_suite(&limits),
            path_pattern_suite(&limits),
        ];
        let ok = parts.iter().all(SuiteReport::passed);
        let detail = parts
            .iter()
            .map(suite_summary)
            .collect::<Vec<_>>()
            .join("; ");
        reports.extend(parts);
        (ok, detail)
    }));

    outcomes.push(run_criterion(
        4,
        "sat round trips",
        Some(Duration::from_secs(600)),
        || {
            let r = sat_round_trip_suite();
            let out = (r.passed() && r.cases >= 3 * 500, suite_summary(&r));
            reports.push(r);
            out
        },
    ));

    outcomes.push(run_criterion(
        5,
        "counting arbitration",
        Some(Duration::from_secs(60)),
        || {
            let strict = height_one_suite(&limits, CountingRule::Strict);
            let lenient = height_one_suite(&limits, CountingRule::Lenient);
            let ok = strict.passed() && lenient.failure_count > 0;
            let mut detail = suite_summary(&strict);
            write!(
                detail,
                "; lenient reading disagrees {} times, e.g. {}",
                lenient.failure_count,
                lenient
                    .failures
                    .first()
                    .map(String::as_str)
                    .unwrap_or("(none)")
            )
            .unwrap();
            reports.push(strict);
            (ok, detail)
        },
    ));

    outcomes.push(run_criterion(6, "witness validity", None, || {
        witness_audit(&reports)
    }));

    outcomes.push(run_criterion(7, "large-input timing", None, performance));

    outcomes.push(run_criterion(8, "degree reduction", None, degree_reduction));

    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.ok)
        .map(|o| format!("criterion {} ({}): {}", o.number, o.label, clip(&o.detail)))
        .collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}
