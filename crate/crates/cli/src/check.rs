//! The `check` subcommand: parse one tree and one pattern (or whole
//! directories of them), route each pair to a decision procedure, and
//! report verdicts. Directory inputs form the cartesian product of
//! trees and patterns, decided in parallel and printed in input order.

use crate::report;
use clap::{Args, ValueEnum};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use treembed_core::oracle::brute_force;
use treembed_core::poly::{
    check_anc_bounded_with, check_inj_height1, check_lca, check_std, dispatch_with, DispatchConfig,
    PolyError,
};
use treembed_core::solver::{solve_anc, solve_inj};
use treembed_core::text::{parse_pattern, parse_tree};
use treembed_core::{Algorithm, CheckResult, EmbeddingKind, Pattern, SearchStats, Tree, Verdict};

#[derive(Args)]
pub struct CheckArgs {
    /// Embedding kind to decide
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Tree file, or a directory of tree files
    #[arg(long)]
    tree: PathBuf,
    /// Pattern file, or a directory of pattern files
    #[arg(long)]
    pattern: PathBuf,
    /// Decision procedure; auto routes to the cheapest sound one
    #[arg(long, value_enum, default_value_t = AlgoArg::Auto)]
    algorithm: AlgoArg,
    /// Print the embedding on yes verdicts (plain single-instance
    /// output and JSON reports)
    #[arg(long)]
    witness: bool,
    /// Emit one JSON report per instance
    #[arg(long)]
    json: bool,
    /// Node budget for backtracking search; exhaustion yields verdict
    /// "unknown" and exit code 2. Overrides TREEMBED_BUDGET.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Std,
    Inj,
    Anc,
    Lca,
}

impl KindArg {
    fn kind(self) -> EmbeddingKind {
        match self {
            KindArg::Std => EmbeddingKind::Std,
            KindArg::Inj => EmbeddingKind::Inj,
            KindArg::Anc => EmbeddingKind::Anc,
            KindArg::Lca => EmbeddingKind::Lca,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    /// Route by kind and pattern shape
    Auto,
    /// Exhaustive search over all mappings, small instances only
    Oracle,
    /// The polynomial checker for the kind, refusing inputs it does
    /// not cover
    Poly,
    /// The backtracking solver (kinds inj and anc)
    Exact,
}

pub fn run(args: &CheckArgs) -> Result<u8, String> {
    let budget = resolve_budget(args.budget)?;
    let mut cfg = DispatchConfig::default();
    if let Some(b) = budget {
        cfg.search.node_budget = b;
        cfg.anc_pair_budget = b;
    }
    let kind = args.kind.kind();

    let batch = args.tree.is_dir() || args.pattern.is_dir();
    let trees = load_inputs(&args.tree, "tree", parse_tree)?;
    let patterns = load_inputs(&args.pattern, "pattern", parse_pattern)?;

    let pairs: Vec<(usize, usize)> = (0..trees.len())
        .flat_map(|ti| (0..patterns.len()).map(move |pi| (ti, pi)))
        .collect();

    let decide_one = |&(ti, pi): &(usize, usize)| {
        let (tname, t) = &trees[ti];
        let (pname, p) = &patterns[pi];
        decide(args.algorithm, kind, t, p, &cfg)
            .map(|res| (ti, pi, res))
            .map_err(|e| format!("{tname} / {pname}: {e}"))
    };
    let results: Vec<Result<(usize, usize, CheckResult), String>> = if pairs.len() > 1 {
        pairs.par_iter().map(decide_one).collect()
    } else {
        pairs.iter().map(decide_one).collect()
    };

    let mut any_unknown = false;
    for item in results {
        let (ti, pi, res) = item?;
        any_unknown |= res.verdict == Verdict::Unknown;
        let (tname, t) = &trees[ti];
        let (pname, p) = &patterns[pi];
        let res = &res;
        if args.json {
            let paths = batch.then_some((tname.as_str(), pname.as_str()));
            let rep = report::build(kind, t, p, res, args.witness, paths);
            println!(
                "{}",
                serde_json::to_string(&rep).expect("report serializes")
            );
        } else if batch {
            println!("{tname} {pname}: {}", res.verdict);
        } else {
            println!("{}", res.verdict);
            if args.witness {
                if let Some(h) = &res.witness {
                    print!("{}", h.render(p, t));
                }
            }
        }
    }
    Ok(if any_unknown { 2 } else { 0 })
}

/// A file parses to one named instance, a directory to its sorted
/// files. Parse errors carry the file name and position.
fn load_inputs<T>(
    path: &Path,
    what: &str,
    parse: impl Fn(&str) -> Result<T, treembed_core::text::ParseError>,
) -> Result<Vec<(String, T)>, String> {
    let mut files = Vec::new();
    if path.is_dir() {
        for entry in std::fs::read_dir(path).map_err(|e| format!("{}: {e}", path.display()))? {
            let entry = entry.map_err(|e| format!("{}: {e}", path.display()))?;
            if entry.path().is_file() {
                files.push(entry.path());
            }
        }
        files.sort();
        if files.is_empty() {
            return Err(format!(
                "{}: directory holds no {what} files",
                path.display()
            ));
        }
    } else {
        files.push(path.to_path_buf());
    }
    let mut out = Vec::with_capacity(files.len());
    for file in files {
        let text =
            std::fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
        let parsed = parse(&text).map_err(|e| format!("{}: {e}", file.display()))?;
        out.push((file.display().to_string(), parsed));
    }
    Ok(out)
}

fn resolve_budget(flag: Option<u64>) -> Result<Option<u64>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("TREEMBED_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| format!("TREEMBED_BUDGET must be an integer, got '{s}'")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("TREEMBED_BUDGET: {e}")),
    }
}

fn decide(
    algo: AlgoArg,
    kind: EmbeddingKind,
    t: &Tree,
    p: &Pattern,
    cfg: &DispatchConfig,
) -> Result<CheckResult, String> {
    match algo {
        AlgoArg::Auto => Ok(dispatch_with(t, p, kind, cfg)),
        AlgoArg::Oracle => brute_force(t, p, kind).map_err(|e| e.to_string()),
        AlgoArg::Exact => match kind {
            EmbeddingKind::Inj => Ok(solve_inj(t, p, &cfg.search)),
            EmbeddingKind::Anc => Ok(solve_anc(t, p, &cfg.search)),
            EmbeddingKind::Std | EmbeddingKind::Lca => {
                Err("the backtracking solvers cover kinds inj and anc; \
                 use --algorithm auto or poly for std and lca"
                    .to_string())
            }
        },
        AlgoArg::Poly => match kind {
            EmbeddingKind::Std => Ok(check_std(t, p)),
            EmbeddingKind::Lca => Ok(check_lca(t, p)),
            EmbeddingKind::Anc => poly_outcome(
                check_anc_bounded_with(t, p, cfg.anc_pair_budget),
                Algorithm::AncBounded,
            ),
            EmbeddingKind::Inj => poly_outcome(check_inj_height1(t, p), Algorithm::InjHeightOne),
        },
    }
}

/// Budget exhaustion is an unknown verdict; a shape the checker does
/// not cover is an input error.
fn poly_outcome(
    res: Result<CheckResult, PolyError>,
    algorithm: Algorithm,
) -> Result<CheckResult, String> {
    match res {
        Ok(res) => Ok(res),
        Err(PolyError::BudgetExceeded { .. }) => Ok(CheckResult {
            verdict: Verdict::Unknown,
            witness: None,
            algorithm,
            stats: SearchStats::default(),
        }),
        Err(e @ PolyError::HeightTooLarge { .. }) => {
            Err(format!("{e}; use --algorithm auto or exact"))
        }
    }
}
