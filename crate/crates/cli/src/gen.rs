//! The `gen` subcommand: read a DIMACS CNF formula and write the
//! tree/pattern instance of the chosen hardness construction, so the
//! formula is satisfiable exactly when the pattern embeds.

use clap::{Args, ValueEnum};
use std::path::PathBuf;
use treembed_core::reductions::ReductionKind;
use treembed_core::text::{parse_dimacs, render_pattern, render_tree};

#[derive(Args)]
pub struct GenArgs {
    /// Which construction to run; inj/anc/inj-h2 use clause and
    /// variable labels, the -wc/-nowc/anc-wc variants a single label
    #[arg(long, value_enum)]
    reduction: ReductionArg,
    /// DIMACS CNF input file
    #[arg(long)]
    cnf: PathBuf,
    /// Where to write the tree
    #[arg(long)]
    out_tree: PathBuf,
    /// Where to write the pattern
    #[arg(long)]
    out_pattern: PathBuf,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ReductionArg {
    Inj,
    Anc,
    InjH2,
    InjWc,
    InjNowc,
    AncWc,
}

impl ReductionArg {
    fn kind(self) -> ReductionKind {
        match self {
            ReductionArg::Inj => ReductionKind::Inj,
            ReductionArg::Anc => ReductionKind::Anc,
            ReductionArg::InjH2 => ReductionKind::InjH2,
            ReductionArg::InjWc => ReductionKind::InjWc,
            ReductionArg::InjNowc => ReductionKind::InjNowc,
            ReductionArg::AncWc => ReductionKind::AncWc,
        }
    }
}

pub fn run(args: &GenArgs) -> Result<u8, String> {
    let text =
        std::fs::read_to_string(&args.cnf).map_err(|e| format!("{}: {e}", args.cnf.display()))?;
    let phi = parse_dimacs(&text).map_err(|e| format!("{}: {e}", args.cnf.display()))?;
    if phi.clause_count() == 0 {
        return Err(format!(
            "{}: the formula has no clauses, nothing to reduce",
            args.cnf.display()
        ));
    }
    let (t, p) = args.reduction.kind().generate(&phi);
    std::fs::write(&args.out_tree, render_tree(&t) + "\n")
        .map_err(|e| format!("{}: {e}", args.out_tree.display()))?;
    std::fs::write(&args.out_pattern, render_pattern(&p) + "\n")
        .map_err(|e| format!("{}: {e}", args.out_pattern.display()))?;
    println!(
        "tree: {} nodes -> {}",
        t.node_count(),
        args.out_tree.display()
    );
    println!(
        "pattern: {} nodes -> {}",
        p.node_count(),
        args.out_pattern.display()
    );
    Ok(0)
}
