//! Exhaustive generators for small instances: every unordered tree or
//! pattern up to a node budget (one representative per isomorphism
//! class), every height-1 pattern up to a child budget, and every small
//! CNF formula. These feed the equivalence suites, which check the fast
//! deciders against the brute-force oracle over a complete universe
//! instead of a sample.

use crate::random::random_cnf;
use crate::text::CnfFormula;
use crate::tree::{EdgeKind, Label, Pattern, PatternBuilder, Tree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every tree with at most `max_nodes` nodes over the given labels, one
/// representative per unordered isomorphism class.
pub fn all_trees(max_nodes: usize, labels: &[&str]) -> Vec<Tree> {
    let labels: Vec<Label> = labels.iter().map(|&s| Label::from(s)).collect();
    structure_pools(max_nodes, &labels, &[EdgeKind::Child])
        .into_iter()
        .flatten()
        .map(|p| Tree::from_pattern(p).expect("child-only symbol pattern is a tree"))
        .collect()
}

/// Every pattern with at most `max_nodes` nodes over the given labels
/// ("*" means wildcard), with both edge kinds, one representative per
/// unordered isomorphism class.
pub fn all_patterns(max_nodes: usize, labels: &[&str]) -> Vec<Pattern> {
    let labels = pattern_labels(labels);
    structure_pools(max_nodes, &labels, &[EdgeKind::Child, EdgeKind::Desc])
        .into_iter()
        .flatten()
        .collect()
}

/// Every pattern of height at most 1 with at most `max_children` root
/// children over the given labels ("*" means wildcard), one
/// representative per unordered isomorphism class.
pub fn all_height1_patterns(max_children: usize, labels: &[&str]) -> Vec<Pattern> {
    let labels = pattern_labels(labels);
    let mut leaves: Vec<(EdgeKind, &Label)> = Vec::new();
    for kind in [EdgeKind::Child, EdgeKind::Desc] {
        for label in &labels {
            leaves.push((kind, label));
        }
    }
    let mut out = Vec::new();
    for root_label in &labels {
        let mut chosen: Vec<usize> = Vec::new();
        let mut emit = |seq: &[usize]| {
            let mut b = PatternBuilder::new();
            let root = b.root(root_label.clone());
            for &ix in seq {
                let (kind, label) = leaves[ix];
                b.child(root, kind, label.clone());
            }
            out.push(b.finish().expect("flat structure is a tree"));
        };
        emit(&chosen);
        grow_multiset(leaves.len(), max_children, 0, &mut chosen, &mut emit);
    }
    out
}

fn pattern_labels(labels: &[&str]) -> Vec<Label> {
    labels
        .iter()
        .map(|&s| {
            if s == "*" {
                Label::Wildcard
            } else {
                Label::from(s)
            }
        })
        .collect()
}

/// pools[s] holds every structure with exactly s nodes. A structure is
/// a root label plus a multiset of (edge kind, child subtree) pairs, so
/// emitting each multiset exactly once (as a non-decreasing index
/// sequence over the smaller pools) yields each isomorphism class once.
fn structure_pools(max_nodes: usize, labels: &[Label], kinds: &[EdgeKind]) -> Vec<Vec<Pattern>> {
    let mut pools: Vec<Vec<Pattern>> = vec![Vec::new(); max_nodes + 1];
    for size in 1..=max_nodes {
        let mut batch: Vec<Pattern> = Vec::new();
        {
            let mut items: Vec<(usize, EdgeKind, &Pattern)> = Vec::new();
            for (s, pool) in pools.iter().enumerate().take(size).skip(1) {
                for sub in pool {
                    for &kind in kinds {
                        items.push((s, kind, sub));
                    }
                }
            }
            let mut chosen: Vec<usize> = Vec::new();
            compose_children(&items, size - 1, 0, &mut chosen, &mut |seq: &[usize]| {
                for label in labels {
                    let mut b = PatternBuilder::new();
                    let root = b.root(label.clone());
                    for &ix in seq {
                        let (_, kind, sub) = items[ix];
                        b.graft(root, kind, sub, sub.root());
                    }
                    batch.push(b.finish().expect("composed structure is a tree"));
                }
            });
        }
        pools[size] = batch;
    }
    pools
}

/// Emits every non-decreasing index sequence whose item sizes sum to
/// exactly `budget`.
fn compose_children(
    items: &[(usize, EdgeKind, &Pattern)],
    budget: usize,
    min_item: usize,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if budget == 0 {
        emit(chosen);
        return;
    }
    for ix in min_item..items.len() {
        if items[ix].0 <= budget {
            chosen.push(ix);
            compose_children(items, budget - items[ix].0, ix, chosen, emit);
            chosen.pop();
        }
    }
}

/// Emits every non-empty non-decreasing index sequence of length at
/// most `max_len` over `count` item types. The empty sequence is the
/// caller's to handle.
fn grow_multiset(
    count: usize,
    max_len: usize,
    min_item: usize,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if chosen.len() == max_len {
        return;
    }
    for ix in min_item..count {
        chosen.push(ix);
        emit(chosen);
        grow_multiset(count, max_len, ix, chosen, emit);
        chosen.pop();
    }
}

/// Every formula with at most `max_vars` variables and at most
/// `max_clauses` clauses, where clauses have 1..=3 distinct variables
/// and the highest variable index occurs somewhere (so no formula
/// appears once per padded variable count).
pub fn all_small_cnf(max_vars: u32, max_clauses: usize) -> Vec<CnfFormula> {
    let mut out = Vec::new();
    for n in 1..=max_vars {
        let clauses = all_clauses(n);
        let mut chosen: Vec<usize> = Vec::new();
        choose_subsets(
            clauses.len(),
            max_clauses,
            0,
            &mut chosen,
            &mut |ixs: &[usize]| {
                let uses_top = ixs
                    .iter()
                    .any(|&i| clauses[i].iter().any(|&lit| lit.unsigned_abs() == n));
                if !uses_top {
                    return;
                }
                let picked: Vec<Vec<i32>> = ixs.iter().map(|&i| clauses[i].clone()).collect();
                out.push(CnfFormula::new(n, picked).expect("enumerated literals are in range"));
            },
        );
    }
    out
}

/// Every clause over variables 1..=n with 1..=min(3, n) distinct
/// variables, in a fixed order.
fn all_clauses(n: u32) -> Vec<Vec<i32>> {
    let max_width = (n as usize).min(3);
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let width = mask.count_ones() as usize;
        if width > max_width {
            continue;
        }
        let vars: Vec<i32> = (1..=n as i32)
            .filter(|&v| mask & (1 << (v - 1)) != 0)
            .collect();
        for signs in 0..(1u32 << width) {
            let clause: Vec<i32> = vars
                .iter()
                .enumerate()
                .map(|(i, &v)| if signs & (1 << i) != 0 { -v } else { v })
                .collect();
            out.push(clause);
        }
    }
    out
}

/// Emits every non-empty ascending index subset of size at most
/// `max_take` over `count` elements.
fn choose_subsets(
    count: usize,
    max_take: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    for ix in start..count {
        chosen.push(ix);
        emit(chosen);
        if chosen.len() < max_take {
            choose_subsets(count, max_take, ix + 1, chosen, emit);
        }
        chosen.pop();
    }
}

/// The fixed formula family for the SAT round-trip suite: every formula
/// with at most 2 variables and 2 clauses, topped up with seeded random
/// formulas of at most 4 variables and 4 clauses to 520 total. The seed
/// is a constant so every run checks the same family.
pub fn cnf_round_trip_suite() -> Vec<CnfFormula> {
    let mut out = all_small_cnf(2, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(0x7EE5EED);
    while out.len() < 520 {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=4);
        out.push(random_cnf(&mut rng, n, k));
    }
    out
}
