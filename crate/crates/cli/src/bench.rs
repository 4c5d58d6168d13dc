//! The `bench` subcommand: size-vs-time rows for the polynomial
//! checkers on growing random instances, and for the backtracking
//! solvers on generated hard instances, where the growth trend is the
//! point of the exercise.

use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;
use treembed_core::oracle::brute_force;
use treembed_core::poly::{check_anc_bounded, check_lca};
use treembed_core::random::{
    deep_random_tree, planted_pattern, random_cnf, random_pattern, random_tree, spine_pattern,
    PlantConfig,
};
use treembed_core::reductions::{gen_anc_reduction, gen_inj_reduction};
use treembed_core::solver::{solve_anc, solve_inj, SearchConfig};
use treembed_core::{CheckResult, EmbeddingKind, Verdict};

#[derive(Args)]
pub struct BenchArgs {
    /// Which family of instances to time
    #[arg(long, value_enum)]
    suite: SuiteArg,
    /// Comma-separated sizes: node counts, or n (= clause count) for
    /// reduction-growth
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Emit the rows as a JSON array
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    /// check_lca on uniform random trees with planted patterns
    LcaScale,
    /// the bounded anc checker on deep trees with degree-2 patterns
    AncBounded,
    /// the backtracking solvers on generated hard instances, n = k
    ReductionGrowth,
}

#[derive(Serialize)]
struct Row {
    suite: &'static str,
    size: usize,
    tree_nodes: usize,
    pattern_nodes: usize,
    algorithm: &'static str,
    verdict: &'static str,
    elapsed_ms: f64,
}

pub fn run(args: &BenchArgs) -> Result<u8, String> {
    let rows = match args.suite {
        SuiteArg::LcaScale => {
            spot_check(args.json)?;
            lca_scale(args.sizes.as_deref().unwrap_or(&[1000, 10_000, 100_000]))
        }
        SuiteArg::AncBounded => anc_bounded(args.sizes.as_deref().unwrap_or(&[1000, 3000, 10_000])),
        SuiteArg::ReductionGrowth => {
            reduction_growth(args.sizes.as_deref().unwrap_or(&[2, 3, 4, 5]))
        }
    };
    if args.json {
        println!("{}", serde_json::to_string(&rows).expect("rows serialize"));
    } else {
        println!(
            "{:<16} {:>8} {:>10} {:>13} {:<12} {:<8} {:>12}",
            "suite", "size", "tree_nodes", "pattern_nodes", "algorithm", "verdict", "elapsed_ms"
        );
        for r in &rows {
            println!(
                "{:<16} {:>8} {:>10} {:>13} {:<12} {:<8} {:>12.3}",
                r.suite,
                r.size,
                r.tree_nodes,
                r.pattern_nodes,
                r.algorithm,
                r.verdict,
                r.elapsed_ms
            );
        }
    }
    Ok(0)
}

fn row(
    suite: &'static str,
    size: usize,
    tree_nodes: usize,
    pattern_nodes: usize,
    res: &CheckResult,
    elapsed_ms: f64,
) -> Row {
    Row {
        suite,
        size,
        tree_nodes,
        pattern_nodes,
        algorithm: res.algorithm.as_str(),
        verdict: res.verdict.as_str(),
        elapsed_ms,
    }
}

/// The scaling runs are far beyond the oracle's reach, so agreement
/// with it is checked once on oracle-sized instances before timing.
fn spot_check(quiet_stdout: bool) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x13CA5);
    for i in 0..25 {
        let t = random_tree(&mut rng, 12, &["a", "b", "c"]);
        let p = if i % 2 == 0 {
            planted_pattern(
                &mut rng,
                &t,
                &PlantConfig {
                    target_nodes: 4,
                    close_under_lca: true,
                    wildcard_prob: 0.2,
                    desc_prob: 0.3,
                    max_degree: None,
                },
            )
        } else {
            random_pattern(&mut rng, 5, &["a", "b", "c"], 0.2, 0.3, None)
        };
        let fast = check_lca(&t, &p);
        let slow = brute_force(&t, &p, EmbeddingKind::Lca).map_err(|e| e.to_string())?;
        if fast.verdict != slow.verdict {
            return Err(format!(
                "lca checker disagrees with the oracle on spot-check instance {i}: \
                 {} vs {}",
                fast.verdict, slow.verdict
            ));
        }
    }
    let note = "oracle spot-check: 25 instances agree";
    if quiet_stdout {
        eprintln!("{note}");
    } else {
        println!("{note}");
    }
    Ok(())
}

fn lca_scale(sizes: &[usize]) -> Vec<Row> {
    let mut rows = Vec::new();
    for &size in sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(0x13CA ^ size as u64);
        let t = random_tree(&mut rng, size.max(1), &["a", "b", "c", "d"]);
        let p = planted_pattern(
            &mut rng,
            &t,
            &PlantConfig {
                target_nodes: (size / 100).max(8),
                close_under_lca: true,
                wildcard_prob: 0.1,
                desc_prob: 0.3,
                max_degree: None,
            },
        );
        let start = Instant::now();
        let res = check_lca(&t, &p);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        rows.push(row(
            "lca-scale",
            size,
            t.node_count(),
            p.node_count(),
            &res,
            ms,
        ));
    }
    rows
}

fn anc_bounded(sizes: &[usize]) -> Vec<Row> {
    let mut rows = Vec::new();
    for &size in sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(0xA6C ^ size as u64);
        let t = deep_random_tree(&mut rng, size.max(2), &["a", "b", "c", "d", "e", "f"], 40);
        let p = spine_pattern(&mut rng, &t, 0.55, 0.5);
        let start = Instant::now();
        let outcome = check_anc_bounded(&t, &p);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let res = outcome.unwrap_or_else(|_| CheckResult {
            verdict: Verdict::Unknown,
            witness: None,
            algorithm: treembed_core::Algorithm::AncBounded,
            stats: treembed_core::SearchStats::default(),
        });
        rows.push(row(
            "anc-bounded",
            size,
            t.node_count(),
            p.node_count(),
            &res,
            ms,
        ));
    }
    rows
}

fn reduction_growth(sizes: &[usize]) -> Vec<Row> {
    let cfg = SearchConfig::default();
    let mut rows = Vec::new();
    for &n in sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6047 ^ n as u64);
        let phi = random_cnf(&mut rng, n.max(1) as u32, n.max(1));

        let (t, p) = gen_inj_reduction(&phi);
        let start = Instant::now();
        let res = solve_inj(&t, &p, &cfg);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        rows.push(row(
            "reduction-growth",
            n,
            t.node_count(),
            p.node_count(),
            &res,
            ms,
        ));

        let (t, p) = gen_anc_reduction(&phi);
        let start = Instant::now();
        let res = solve_anc(&t, &p, &cfg);
        let ms = start.elapsed().as_secs_f64() * 1e3;
        rows.push(row(
            "reduction-growth",
            n,
            t.node_count(),
            p.node_count(),
            &res,
            ms,
        ));
    }
    rows
}
