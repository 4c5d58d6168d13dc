//! The `selftest` subcommand: run the cross-checking suites (every
//! decision procedure against the exhaustive oracle and against each
//! other) and report per-suite case counts.

use clap::Args;
use treembed_core::poly::CountingRule;
use treembed_core::suite::{
    collapse_suite, height_one_suite, hierarchy_suite, oracle_equivalence_suite,
    path_pattern_suite, sat_round_trip_suite, SuiteLimits, SuiteReport,
};

#[derive(Args)]
pub struct SelftestArgs {
    /// Largest tree in the exhaustive sweeps
    #[arg(long, default_value_t = 5)]
    max_tree_nodes: usize,
    /// Largest pattern in the exhaustive sweeps
    #[arg(long, default_value_t = 4)]
    max_pattern_nodes: usize,
    /// Seed for the randomized portions
    #[arg(long, default_value_t = 0x5EED)]
    seed: u64,
    /// Also run the height-1 counting check under the lenient
    /// occurrence-counting reading; this reading is wrong and the run
    /// reports its counterexample family
    #[arg(long)]
    lenient_counting: bool,
}

pub fn run(args: &SelftestArgs) -> Result<u8, String> {
    let limits = SuiteLimits {
        exhaustive_tree_nodes: args.max_tree_nodes,
        exhaustive_pattern_nodes: args.max_pattern_nodes,
        seed: args.seed,
        ..SuiteLimits::default()
    };
    let mut reports = vec![
        oracle_equivalence_suite(&limits),
        hierarchy_suite(&limits),
        collapse_suite(&limits),
        path_pattern_suite(&limits),
        sat_round_trip_suite(),
    ];
    if args.lenient_counting {
        reports.push(height_one_suite(&limits, CountingRule::Lenient));
    }

    let mut failed = 0usize;
    for report in &reports {
        print_report(report);
        if !report.passed() {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all suites passed");
        Ok(0)
    } else {
        println!("{failed} suite(s) failed");
        Ok(1)
    }
}

fn print_report(report: &SuiteReport) {
    println!(
        "{}: {} cases, {} failures",
        report.name, report.cases, report.failure_count
    );
    for line in &report.failures {
        println!("  {line}");
    }
    let shown = report.failures.len() as u64;
    if report.failure_count > shown {
        println!("  ... and {} more", report.failure_count - shown);
    }
}
