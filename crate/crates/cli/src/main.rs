//! `treembed`: decide tree pattern embeddings, generate hard instances
//! from CNF formulas, cross-check the deciders against each other, and
//! time them on growing inputs.
//!
//! Exit codes are a stable contract: 0 when every requested instance
//! was decided (and, for selftest, every suite passed), 2 when at
//! least one verdict is unknown because a search budget ran out, and 1
//! for usage or input errors.

use clap::{Parser, Subcommand};
use std::process::ExitCode;

mod bench;
mod check;
mod gen;
mod report;
mod selftest;

#[derive(Parser)]
#[command(
    name = "treembed",
    version,
    about = "Decide embeddings of tree patterns into unordered labeled trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a pattern embeds into a tree
    Check(check::CheckArgs),
    /// Generate a hard tree/pattern instance from a CNF formula
    Gen(gen::GenArgs),
    /// Run the cross-checking suites against the exhaustive oracle
    Selftest(selftest::SelftestArgs),
    /// Time the deciders on instances of growing size
    Bench(bench::BenchArgs),
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors by default; this tool reserves
    // 2 for undecided verdicts, so usage problems are remapped to 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage_error = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage_error { 1 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Check(args) => check::run(&args),
        Command::Gen(args) => gen::run(&args),
        Command::Selftest(args) => selftest::run(&args),
        Command::Bench(args) => bench::run(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
