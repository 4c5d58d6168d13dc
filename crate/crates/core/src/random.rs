//! Seeded instance sampling: trees by uniform attachment, free random
//! patterns, patterns planted inside a given tree so the identity
//! selection is a witness, and random CNF formulas. Everything takes
//! the generator by reference, so callers control seeding.

use crate::text::CnfFormula;
use crate::tree::{EdgeKind, Label, NodeId, Pattern, PatternBuilder, Tree, TreeBuilder};
use rand::Rng;

/// Uniform-attachment tree: node i picks its parent uniformly among
/// nodes 0..i, labels drawn uniformly.
pub fn random_tree(rng: &mut impl Rng, node_count: usize, labels: &[&str]) -> Tree {
    assert!(node_count >= 1, "a tree has at least one node");
    assert!(!labels.is_empty(), "need at least one label");
    let mut b = TreeBuilder::new();
    let mut ids = Vec::with_capacity(node_count);
    ids.push(b.root(labels[rng.gen_range(0..labels.len())]));
    while ids.len() < node_count {
        let parent = ids[rng.gen_range(0..ids.len())];
        ids.push(b.child(parent, labels[rng.gen_range(0..labels.len())]));
    }
    b.finish().expect("attachment construction is a tree")
}

/// Uniform attachment keeps trees logarithmically shallow; drawing the
/// parent from a trailing window of `window` recent nodes makes them
/// deep, height on the order of node_count / (window / 2).
pub fn deep_random_tree(
    rng: &mut impl Rng,
    node_count: usize,
    labels: &[&str],
    window: usize,
) -> Tree {
    assert!(node_count >= 1, "a tree has at least one node");
    assert!(!labels.is_empty(), "need at least one label");
    assert!(window >= 1, "window must cover at least the previous node");
    let mut b = TreeBuilder::new();
    let mut ids = Vec::with_capacity(node_count);
    ids.push(b.root(labels[rng.gen_range(0..labels.len())]));
    while ids.len() < node_count {
        let low = ids.len().saturating_sub(window);
        let parent = ids[rng.gen_range(low..ids.len())];
        ids.push(b.child(parent, labels[rng.gen_range(0..labels.len())]));
    }
    b.finish().expect("attachment construction is a tree")
}

/// Free random pattern by uniform attachment. Each non-root edge is a
/// descendant edge with probability `desc_prob`, each label a wildcard
/// with probability `wildcard_prob`. With `max_degree` set, parents are
/// drawn only among nodes that still have room.
pub fn random_pattern(
    rng: &mut impl Rng,
    node_count: usize,
    labels: &[&str],
    wildcard_prob: f64,
    desc_prob: f64,
    max_degree: Option<usize>,
) -> Pattern {
    assert!(node_count >= 1, "a pattern has at least one node");
    assert!(!labels.is_empty(), "need at least one label");
    if let Some(cap) = max_degree {
        assert!(
            cap >= 1 || node_count == 1,
            "degree cap leaves no room to grow"
        );
    }
    let mut b = PatternBuilder::new();
    let root = b.root(sample_label(rng, labels, wildcard_prob));
    let mut open = vec![root];
    let mut child_count = vec![0usize; node_count];
    for _ in 1..node_count {
        let slot = rng.gen_range(0..open.len());
        let parent = open[slot];
        let kind = if rng.gen_bool(desc_prob) {
            EdgeKind::Desc
        } else {
            EdgeKind::Child
        };
        let id = b.child(parent, kind, sample_label(rng, labels, wildcard_prob));
        child_count[parent.index()] += 1;
        if max_degree.is_some_and(|cap| child_count[parent.index()] >= cap) {
            open.swap_remove(slot);
        }
        open.push(id);
    }
    b.finish().expect("attachment construction is a tree")
}

fn sample_label(rng: &mut impl Rng, labels: &[&str], wildcard_prob: f64) -> Label {
    if wildcard_prob > 0.0 && rng.gen_bool(wildcard_prob) {
        Label::Wildcard
    } else {
        Label::from(labels[rng.gen_range(0..labels.len())])
    }
}

/// Knobs for [`planted_pattern`].
#[derive(Clone, Debug)]
pub struct PlantConfig {
    /// How many tree nodes to select; the root is always selected and
    /// the count is clamped to the tree size. Closure may add more.
    pub target_nodes: usize,
    /// Also select the lowest common ancestor of every selected pair.
    /// The identity selection is then lca-preserving, not only
    /// ancestor-preserving.
    pub close_under_lca: bool,
    /// Probability of relabeling a selected node to a wildcard.
    pub wildcard_prob: f64,
    /// Probability of weakening a depth-1 step to a descendant edge.
    /// Steps that skip unselected nodes are descendant edges always.
    pub desc_prob: f64,
    /// Drop selected nodes whose pattern parent is already this full.
    /// The pattern may then end up smaller than `target_nodes`.
    pub max_degree: Option<usize>,
}

/// Samples a pattern by selecting nodes of `t` and connecting each to
/// its nearest selected proper ancestor. Sending every selected node to
/// itself satisfies the ancestor-preserving conditions by construction,
/// so the result embeds into `t` under kinds std, inj, and anc; with
/// `close_under_lca` it embeds under lca as well.
pub fn planted_pattern(rng: &mut impl Rng, t: &Tree, cfg: &PlantConfig) -> Pattern {
    let n = t.node_count();
    let target = cfg.target_nodes.clamp(1, n);
    let mut selected = vec![false; n];
    selected[t.root().index()] = true;
    let mut others: Vec<NodeId> = t.node_ids().filter(|&v| v != t.root()).collect();
    for i in 0..(target - 1).min(others.len()) {
        let j = rng.gen_range(i..others.len());
        others.swap(i, j);
        selected[others[i].index()] = true;
    }
    if cfg.close_under_lca {
        // Lowest common ancestors of preorder-consecutive selected
        // pairs complete the closure in one pass.
        let mut by_rank: Vec<NodeId> = t.node_ids().filter(|v| selected[v.index()]).collect();
        by_rank.sort_by_key(|&v| t.preorder_rank(v));
        for w in by_rank.windows(2) {
            selected[t.lca(w[0], w[1]).index()] = true;
        }
    }

    let mut b = PatternBuilder::new();
    let mut image: Vec<Option<NodeId>> = vec![None; n];
    let mut built_children = vec![0usize; n];
    for &v in t.preorder() {
        if !selected[v.index()] {
            continue;
        }
        let label = if cfg.wildcard_prob > 0.0 && rng.gen_bool(cfg.wildcard_prob) {
            Label::Wildcard
        } else {
            t.label(v).clone()
        };
        if v == t.root() {
            image[v.index()] = Some(b.root(label));
            continue;
        }
        let direct = t.parent(v).expect("non-root node").0;
        // Nearest ancestor that made it into the pattern; selected
        // nodes dropped by the cap are skipped like unselected ones.
        let mut anc = direct;
        while image[anc.index()].is_none() {
            anc = t.parent(anc).expect("the built root ends the walk").0;
        }
        if cfg
            .max_degree
            .is_some_and(|cap| built_children[anc.index()] >= cap)
        {
            continue;
        }
        let kind = if anc != direct || rng.gen_bool(cfg.desc_prob) {
            EdgeKind::Desc
        } else {
            EdgeKind::Child
        };
        let parent = image[anc.index()].expect("ancestors precede descendants in preorder");
        image[v.index()] = Some(b.child(parent, kind, label));
        built_children[anc.index()] += 1;
    }
    b.finish().expect("selection forms a tree")
}

/// Random formula with exactly `num_clauses` clauses of 1..=min(3, n)
/// distinct variables each.
/// Degree-two pattern laid along a deepest root-to-leaf chain of `t`.
/// Kept chain nodes form the spine, joined by a child edge when the
/// chain is contiguous and a desc edge across skips; a spine node may
/// carry one off-chain leaf predicate, so no node exceeds two
/// children. Labels are copied from the tree, which keeps the identity
/// placement a valid ancestor-preserving embedding: the spine images
/// lie on one root-to-leaf path and each predicate image hangs off it
/// below exactly the spine prefix above its attachment point.
pub fn spine_pattern(rng: &mut impl Rng, t: &Tree, keep_prob: f64, predicate_prob: f64) -> Pattern {
    let mut depth = vec![0usize; t.node_count()];
    let mut deepest = t.root();
    for &v in t.preorder() {
        if let Some((u, _)) = t.parent(v) {
            depth[v.index()] = depth[u.index()] + 1;
            if depth[v.index()] > depth[deepest.index()] {
                deepest = v;
            }
        }
    }
    let mut chain = vec![deepest];
    while let Some((u, _)) = t.parent(*chain.last().unwrap()) {
        chain.push(u);
    }
    chain.reverse();

    let mut b = PatternBuilder::new();
    let mut tip = b.root(t.label(chain[0]).clone());
    let mut tip_pos = 0usize;
    for i in 1..chain.len() {
        if !rng.gen_bool(keep_prob) {
            continue;
        }
        let kind = if i == tip_pos + 1 {
            EdgeKind::Child
        } else {
            EdgeKind::Desc
        };
        let node = b.child(tip, kind, t.label(chain[i]).clone());
        if rng.gen_bool(predicate_prob) {
            let next = chain.get(i + 1).copied();
            let side: Vec<NodeId> = t
                .children(chain[i])
                .iter()
                .map(|&(c, _)| c)
                .filter(|&c| Some(c) != next)
                .collect();
            if !side.is_empty() {
                let c = side[rng.gen_range(0..side.len())];
                let leaf_kind = if rng.gen_bool(0.5) {
                    EdgeKind::Child
                } else {
                    EdgeKind::Desc
                };
                b.child(node, leaf_kind, t.label(c).clone());
            }
        }
        tip = node;
        tip_pos = i;
    }
    b.finish().expect("spine construction is a tree")
}

pub fn random_cnf(rng: &mut impl Rng, num_vars: u32, num_clauses: usize) -> CnfFormula {
    assert!(num_vars >= 1, "need at least one variable");
    let width_cap = (num_vars as usize).min(3);
    let clauses = (0..num_clauses)
        .map(|_| {
            let width = rng.gen_range(1..=width_cap);
            let mut vars: Vec<i32> = (1..=num_vars as i32).collect();
            for i in 0..width {
                let j = rng.gen_range(i..vars.len());
                vars.swap(i, j);
            }
            let mut clause: Vec<i32> = vars[..width]
                .iter()
                .map(|&v| if rng.gen_bool(0.5) { -v } else { v })
                .collect();
            clause.sort_by_key(|l| l.abs());
            clause
        })
        .collect();
    CnfFormula::new(num_vars, clauses).expect("sampled literals are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{verify, EmbeddingKind, Verdict};
    use crate::poly::dispatch;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let draw = || {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let t = random_tree(&mut rng, 25, &["a", "b", "c"]);
            let p = random_pattern(&mut rng, 8, &["a", "b"], 0.3, 0.3, None);
            (t.canonical_key(), p.canonical_key())
        };
        assert_eq!(draw(), draw());
    }

    #[test]
    fn random_pattern_honors_the_degree_cap() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let p = random_pattern(&mut rng, 60, &["a", "b"], 0.5, 0.5, Some(2));
            assert!(p.max_degree() <= 2);
            assert_eq!(p.node_count(), 60);
        }
        let path = random_pattern(&mut rng, 30, &["a"], 0.0, 0.2, Some(1));
        assert!(path.is_path());
    }

    #[test]
    fn random_tree_has_the_requested_size_and_alphabet() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let t = random_tree(&mut rng, 40, &["x", "y"]);
        assert_eq!(t.node_count(), 40);
        for v in t.node_ids() {
            let name = t.label(v).to_string();
            assert!(name == "x" || name == "y");
        }
    }

    #[test]
    fn window_attachment_produces_deep_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let t = deep_random_tree(&mut rng, 2000, &["a", "b"], 20);
        assert_eq!(t.node_count(), 2000);
        assert!(t.height() > 50, "height {} is too shallow", t.height());
    }

    #[test]
    fn spine_patterns_stay_degree_two_and_embed() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for round in 0..10 {
            let t = deep_random_tree(&mut rng, 300, &["a", "b", "c"], 8);
            let p = spine_pattern(&mut rng, &t, 0.6, 0.5);
            assert!(p.max_degree() <= 2, "round {round}");
            assert!(
                p.node_count() > t.height() / 3,
                "round {round}: {} nodes on height {}",
                p.node_count(),
                t.height()
            );
            let res = dispatch(&t, &p, EmbeddingKind::Anc);
            assert_eq!(res.verdict, Verdict::Yes, "round {round}");
            let h = res.witness.expect("yes verdict carries a witness");
            assert_eq!(verify(&t, &p, &h, EmbeddingKind::Anc), Ok(true));
        }
    }

    #[test]
    fn planted_patterns_admit_ancestor_embeddings() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for round in 0..30 {
            let t = random_tree(&mut rng, 40, &["a", "b", "c"]);
            let cfg = PlantConfig {
                target_nodes: 4 + round % 9,
                close_under_lca: false,
                wildcard_prob: 0.25,
                desc_prob: 0.4,
                max_degree: None,
            };
            let p = planted_pattern(&mut rng, &t, &cfg);
            let res = dispatch(&t, &p, EmbeddingKind::Anc);
            assert_eq!(res.verdict, Verdict::Yes, "round {round}");
            let h = res.witness.expect("yes verdict carries a witness");
            assert_eq!(verify(&t, &p, &h, EmbeddingKind::Anc), Ok(true));
        }
    }

    #[test]
    fn lca_closed_plants_admit_lca_embeddings() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for round in 0..30 {
            let t = random_tree(&mut rng, 50, &["a", "b"]);
            let cfg = PlantConfig {
                target_nodes: 10,
                close_under_lca: true,
                wildcard_prob: 0.1,
                desc_prob: 0.5,
                max_degree: None,
            };
            let p = planted_pattern(&mut rng, &t, &cfg);
            let res = dispatch(&t, &p, EmbeddingKind::Lca);
            assert_eq!(res.verdict, Verdict::Yes, "round {round}");
            let h = res.witness.expect("yes verdict carries a witness");
            assert_eq!(verify(&t, &p, &h, EmbeddingKind::Lca), Ok(true));
        }
    }

    #[test]
    fn capped_plants_stay_narrow_and_still_embed() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for round in 0..20 {
            let t = random_tree(&mut rng, 60, &["a", "b"]);
            let cfg = PlantConfig {
                target_nodes: 20,
                close_under_lca: false,
                wildcard_prob: 0.2,
                desc_prob: 0.4,
                max_degree: Some(2),
            };
            let p = planted_pattern(&mut rng, &t, &cfg);
            assert!(p.max_degree() <= 2, "round {round}");
            let res = dispatch(&t, &p, EmbeddingKind::Anc);
            assert_eq!(res.verdict, Verdict::Yes, "round {round}");
        }
    }

    #[test]
    fn random_cnf_has_distinct_vars_per_clause() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..50 {
            let phi = random_cnf(&mut rng, 4, 4);
            assert_eq!(phi.clause_count(), 4);
            for clause in phi.clauses() {
                assert!((1..=3).contains(&clause.len()));
                let mut vars: Vec<u32> = clause.iter().map(|l| l.unsigned_abs()).collect();
                vars.dedup();
                assert_eq!(vars.len(), clause.len());
            }
        }
    }
}
