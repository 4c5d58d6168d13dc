//! Cross-checking suites: each one runs a family of instances through
//! independent deciders and reports every disagreement or witness
//! failure. The CLI selftest and the acceptance tests both run these.

use crate::enumerate::{all_height1_patterns, all_patterns, all_trees, cnf_round_trip_suite};
use crate::oracle::{brute_force, verify, CheckResult, EmbeddingKind, Verdict};
use crate::poly::{
    check_inj_height1, check_lca, check_std, dispatch, height_one_counting_verdict, CountingRule,
};
use crate::random::{planted_pattern, random_pattern, random_tree, PlantConfig};
use crate::reductions::{sat_brute_force, ReductionKind};
use crate::solver::{solve_anc, solve_inj, SearchConfig};
use crate::text::{render_pattern, render_tree};
use crate::tree::{EdgeKind, Label, Pattern, PatternBuilder, Tree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TREE_LABELS: [&str; 2] = ["a", "b"];
const PATTERN_LABELS: [&str; 3] = ["a", "b", "*"];
const RANDOM_LABELS: [&str; 3] = ["a", "b", "c"];

/// How far a suite searches: the exhaustive bounds and the random
/// sample on top.
#[derive(Clone, Debug)]
pub struct SuiteLimits {
    pub exhaustive_tree_nodes: usize,
    pub exhaustive_pattern_nodes: usize,
    pub random_cases: usize,
    pub random_tree_nodes: usize,
    pub random_pattern_nodes: usize,
    pub seed: u64,
}

impl Default for SuiteLimits {
    fn default() -> SuiteLimits {
        SuiteLimits {
            exhaustive_tree_nodes: 5,
            exhaustive_pattern_nodes: 4,
            random_cases: 1000,
            random_tree_nodes: 30,
            random_pattern_nodes: 8,
            seed: 0x5EED,
        }
    }
}

const FAILURE_CAP: usize = 20;

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: u64,
    pub failure_count: u64,
    /// The first [`FAILURE_CAP`] failure descriptions.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> SuiteReport {
        SuiteReport {
            name,
            cases: 0,
            failure_count: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < FAILURE_CAP {
            self.failures.push(msg);
        }
    }
}

fn describe(t: &Tree, p: &Pattern, kind: EmbeddingKind) -> String {
    format!(
        "tree={} pattern={} kind={}",
        render_tree(t),
        render_pattern(p),
        kind
    )
}

/// Flags a yes without a valid witness, and any unknown.
fn check_witness(
    report: &mut SuiteReport,
    t: &Tree,
    p: &Pattern,
    kind: EmbeddingKind,
    res: &CheckResult,
) {
    match res.verdict {
        Verdict::Yes => match &res.witness {
            None => report.fail(format!(
                "{}: yes verdict without a witness ({})",
                describe(t, p, kind),
                res.algorithm
            )),
            Some(h) => {
                if verify(t, p, h, kind) != Ok(true) {
                    report.fail(format!(
                        "{}: witness from {} fails verification",
                        describe(t, p, kind),
                        res.algorithm
                    ));
                }
            }
        },
        Verdict::No => {}
        Verdict::Unknown => report.fail(format!(
            "{}: unknown verdict from {}",
            describe(t, p, kind),
            res.algorithm
        )),
    }
}

/// Dispatcher against the exhaustive oracle, all four kinds, over every
/// small instance. Witnesses from the dispatcher are verified.
pub fn oracle_equivalence_suite(limits: &SuiteLimits) -> SuiteReport {
    let mut report = SuiteReport::new("oracle-equivalence");
    let trees = all_trees(limits.exhaustive_tree_nodes, &TREE_LABELS);
    let patterns = all_patterns(limits.exhaustive_pattern_nodes, &PATTERN_LABELS);
    for t in &trees {
        for p in &patterns {
            for kind in EmbeddingKind::ALL {
                report.cases += 1;
                let fast = dispatch(t, p, kind);
                let slow = brute_force(t, p, kind).expect("suite sizes fit the oracle caps");
                if fast.verdict != slow.verdict {
                    report.fail(format!(
                        "{}: {} says {}, oracle says {}",
                        describe(t, p, kind),
                        fast.algorithm,
                        fast.verdict,
                        slow.verdict
                    ));
                }
                check_witness(&mut report, t, p, kind, &fast);
            }
        }
    }
    report
}

fn hierarchy_violation(
    report: &mut SuiteReport,
    t: &Tree,
    p: &Pattern,
    verdicts: &[(EmbeddingKind, Verdict)],
) {
    for pair in verdicts.windows(2) {
        let (weak, wv) = pair[0];
        let (strong, sv) = pair[1];
        if sv == Verdict::Yes && wv == Verdict::No {
            report.fail(format!(
                "tree={} pattern={}: {} embeds but {} does not",
                render_tree(t),
                render_pattern(p),
                strong,
                weak
            ));
        }
    }
}

/// A yes under a stronger kind implies a yes under every weaker kind.
/// Runs the exhaustive universe plus seeded random instances, half of
/// them planted so yes verdicts actually occur at the strong end.
pub fn hierarchy_suite(limits: &SuiteLimits) -> SuiteReport {
    let mut report = SuiteReport::new("hierarchy");
    let run = |report: &mut SuiteReport, t: &Tree, p: &Pattern| {
        report.cases += 1;
        let verdicts: Vec<(EmbeddingKind, Verdict)> = EmbeddingKind::ALL
            .into_iter()
            .map(|kind| {
                let res = dispatch(t, p, kind);
                check_witness(report, t, p, kind, &res);
                (kind, res.verdict)
            })
            .collect();
        hierarchy_violation(report, t, p, &verdicts);
    };

    let trees = all_trees(limits.exhaustive_tree_nodes, &TREE_LABELS);
    let patterns = all_patterns(limits.exhaustive_pattern_nodes, &PATTERN_LABELS);
    for t in &trees {
        for p in &patterns {
            run(&mut report, t, p);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
    for case in 0..limits.random_cases {
        let size = rng.gen_range(1..=limits.random_tree_nodes);
        let t = random_tree(&mut rng, size, &RANDOM_LABELS);
        let target = rng.gen_range(1..=limits.random_pattern_nodes);
        let p = if case % 2 == 0 {
            planted_pattern(
                &mut rng,
                &t,
                &PlantConfig {
                    target_nodes: target,
                    close_under_lca: case % 4 == 0,
                    wildcard_prob: 0.2,
                    desc_prob: 0.3,
                    max_degree: None,
                },
            )
        } else {
            random_pattern(&mut rng, target, &RANDOM_LABELS, 0.2, 0.3, None)
        };
        run(&mut report, &t, &p);
    }
    report
}

/// Keeps those nodes of `t` whose whole ancestor line is kept, so the
/// pattern is a connected top fragment with child edges only.
fn connected_plant(rng: &mut impl Rng, t: &Tree, keep_prob: f64, wildcard_prob: f64) -> Pattern {
    let mut keep = vec![false; t.node_count()];
    keep[t.root().index()] = true;
    let mut b = PatternBuilder::new();
    let mut image = vec![None; t.node_count()];
    for &v in t.preorder() {
        if v == t.root() {
            image[v.index()] = Some(b.root(t.label(v).clone()));
            continue;
        }
        let parent = t.parent(v).expect("non-root node").0;
        if !keep[parent.index()] || !rng.gen_bool(keep_prob) {
            continue;
        }
        keep[v.index()] = true;
        let label = if wildcard_prob > 0.0 && rng.gen_bool(wildcard_prob) {
            Label::Wildcard
        } else {
            t.label(v).clone()
        };
        let pp = image[parent.index()].expect("kept parents are built first");
        image[v.index()] = Some(b.child(pp, EdgeKind::Child, label));
    }
    b.finish().expect("kept fragment is a tree")
}

/// Without descendant edges the three injective kinds coincide. Each
/// instance is decided by three independent procedures (injective
/// search, ancestor search, lca table) which must agree; small
/// instances are compared against the oracle per kind as well.
pub fn collapse_suite(limits: &SuiteLimits) -> SuiteReport {
    let mut report = SuiteReport::new("collapse");
    let cfg = SearchConfig::default();
    let run = |report: &mut SuiteReport, t: &Tree, p: &Pattern, against_oracle: bool| {
        report.cases += 1;
        let inj = solve_inj(t, p, &cfg);
        let anc = solve_anc(t, p, &cfg);
        let lca = check_lca(t, p);
        if inj.verdict != anc.verdict || anc.verdict != lca.verdict {
            report.fail(format!(
                "tree={} pattern={}: inj search {}, anc search {}, lca table {}",
                render_tree(t),
                render_pattern(p),
                inj.verdict,
                anc.verdict,
                lca.verdict
            ));
        }
        for (kind, res) in [
            (EmbeddingKind::Inj, &inj),
            (EmbeddingKind::Anc, &anc),
            (EmbeddingKind::Lca, &lca),
        ] {
            check_witness(report, t, p, kind, res);
            if against_oracle {
                let slow = brute_force(t, p, kind).expect("suite sizes fit the oracle caps");
                if res.verdict != slow.verdict {
                    report.fail(format!(
                        "{}: {} says {}, oracle says {}",
                        describe(t, p, kind),
                        res.algorithm,
                        res.verdict,
                        slow.verdict
                    ));
                }
            }
        }
    };

    let trees = all_trees(limits.exhaustive_tree_nodes, &TREE_LABELS);
    let patterns = all_patterns(limits.exhaustive_pattern_nodes, &PATTERN_LABELS);
    for t in &trees {
        for p in patterns.iter().filter(|p| !p.has_desc_edges()) {
            run(&mut report, t, p, true);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed ^ 0xC0111A55E);
    for case in 0..limits.random_cases {
        let tree_size = rng.gen_range(1..=limits.random_tree_nodes);
        let t = random_tree(&mut rng, tree_size, &RANDOM_LABELS);
        let p = if case % 2 == 0 {
            connected_plant(&mut rng, &t, 0.6, 0.2)
        } else {
            let size = rng.gen_range(1..=limits.random_pattern_nodes);
            random_pattern(&mut rng, size, &RANDOM_LABELS, 0.2, 0.0, None)
        };
        run(&mut report, &t, &p, false);
    }
    report
}

/// On path patterns all four kinds coincide. The plain table decider,
/// both searches and the lca table must agree on every kind; small
/// instances are compared against the oracle as well.
pub fn path_pattern_suite(limits: &SuiteLimits) -> SuiteReport {
    let mut report = SuiteReport::new("path-pattern");
    let cfg = SearchConfig::default();
    let run = |report: &mut SuiteReport, t: &Tree, p: &Pattern, against_oracle: bool| {
        report.cases += 1;
        let results = [
            (EmbeddingKind::Std, check_std(t, p)),
            (EmbeddingKind::Inj, solve_inj(t, p, &cfg)),
            (EmbeddingKind::Anc, solve_anc(t, p, &cfg)),
            (EmbeddingKind::Lca, check_lca(t, p)),
        ];
        let first = results[0].1.verdict;
        for (kind, res) in &results {
            if res.verdict != first {
                report.fail(format!(
                    "tree={} pattern={}: verdicts split on a path pattern, {} from {} vs {}",
                    render_tree(t),
                    render_pattern(p),
                    res.verdict,
                    res.algorithm,
                    first
                ));
            }
            check_witness(report, t, p, *kind, res);
            if against_oracle {
                let slow = brute_force(t, p, *kind).expect("suite sizes fit the oracle caps");
                if res.verdict != slow.verdict {
                    report.fail(format!(
                        "{}: {} says {}, oracle says {}",
                        describe(t, p, *kind),
                        res.algorithm,
                        res.verdict,
                        slow.verdict
                    ));
                }
            }
        }
    };

    let trees = all_trees(limits.exhaustive_tree_nodes, &TREE_LABELS);
    let patterns = all_patterns(limits.exhaustive_pattern_nodes, &PATTERN_LABELS);
    for t in &trees {
        for p in patterns.iter().filter(|p| p.is_path()) {
            run(&mut report, t, p, true);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(limits.seed ^ 0x9A70_A77E);
    for _ in 0..limits.random_cases {
        let tree_size = rng.gen_range(1..=limits.random_tree_nodes);
        let t = random_tree(&mut rng, tree_size, &RANDOM_LABELS);
        let size = rng.gen_range(1..=limits.random_pattern_nodes);
        let p = random_pattern(&mut rng, size, &RANDOM_LABELS, 0.25, 0.4, Some(1));
        run(&mut report, &t, &p, false);
    }
    report
}

/// Every formula in the fixed family must round-trip: the generated
/// instance embeds exactly when the formula is satisfiable. The
/// injective families are decided by the injective search, the
/// ancestor families by the ancestor search. Small formulas also go
/// through the three single-label generators.
pub fn sat_round_trip_suite() -> SuiteReport {
    let mut report = SuiteReport::new("sat-round-trip");
    let cfg = SearchConfig::default();
    for phi in cnf_round_trip_suite() {
        let sat = sat_brute_force(&phi).expect("suite formulas stay under the variable cap");
        for gen in ReductionKind::ALL {
            let small = phi.num_vars() <= 2 && phi.clause_count() <= 2;
            let core = matches!(
                gen,
                ReductionKind::Inj | ReductionKind::Anc | ReductionKind::InjH2
            );
            if !core && !small {
                continue;
            }
            report.cases += 1;
            let (t, p) = gen.generate(&phi);
            let kind = gen.embedding_kind();
            let res = match kind {
                EmbeddingKind::Anc => solve_anc(&t, &p, &cfg),
                _ => solve_inj(&t, &p, &cfg),
            };
            if res.verdict != Verdict::from(sat) {
                report.fail(format!(
                    "formula {:?} (vars={}) via {}: {} but satisfiable={}",
                    phi.clauses(),
                    phi.num_vars(),
                    gen,
                    res.verdict,
                    sat
                ));
            }
            check_witness(&mut report, &t, &p, kind, &res);
        }
    }
    report
}

/// Height-1 injective instances under three procedures: the matching
/// decider, the counting rules, and the oracle. With
/// [`CountingRule::Strict`] all three agree; with
/// [`CountingRule::Lenient`] the counting side accepts instances the
/// oracle rejects, and the report lists them.
pub fn height_one_suite(limits: &SuiteLimits, rule: CountingRule) -> SuiteReport {
    let mut report = SuiteReport::new(match rule {
        CountingRule::Strict => "height-one-strict",
        CountingRule::Lenient => "height-one-lenient",
    });
    let trees = all_trees(limits.exhaustive_tree_nodes, &TREE_LABELS);
    let patterns = all_height1_patterns(limits.exhaustive_pattern_nodes, &PATTERN_LABELS);
    for t in &trees {
        for p in &patterns {
            report.cases += 1;
            let matching = check_inj_height1(t, p).expect("suite patterns have height <= 1");
            let counting = height_one_counting_verdict(t, p, rule).expect("height <= 1");
            let slow =
                brute_force(t, p, EmbeddingKind::Inj).expect("suite sizes fit the oracle caps");
            if matching.verdict != slow.verdict {
                report.fail(format!(
                    "{}: matching says {}, oracle says {}",
                    describe(t, p, EmbeddingKind::Inj),
                    matching.verdict,
                    slow.verdict
                ));
            }
            if Verdict::from(counting) != slow.verdict {
                report.fail(format!(
                    "{}: counting says {}, oracle says {}",
                    describe(t, p, EmbeddingKind::Inj),
                    Verdict::from(counting),
                    slow.verdict
                ));
            }
            check_witness(&mut report, t, p, EmbeddingKind::Inj, &matching);
        }
    }
    report
}
