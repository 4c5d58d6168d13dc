//! Complete backtracking deciders for injective and ancestor-preserving
//! embeddings on unrestricted instances.
//!
//! Both searches assign pattern nodes in a depth-first preorder and try
//! candidate images in Dewey order, so verdicts, witnesses and explored
//! counts are deterministic. A node budget turns long searches into an
//! explicit `unknown` verdict, never a `no`.

use crate::oracle::{Algorithm, CheckResult, Embedding, EmbeddingKind, SearchStats, Verdict};
use crate::tree::{EdgeKind, NodeId, Pattern, Tree};
use fixedbitset::FixedBitSet;
use std::time::Instant;

/// Order in which a pattern node's children are assigned.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ChildOrder {
    /// Largest subtree first: fail on the hardest constraint early.
    SubtreeDesc,
    SubtreeAsc,
    /// Stored (input) order.
    Input,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Maximum number of admitted partial assignments before the
    /// search gives up with an unknown verdict.
    pub node_budget: u64,
    pub order: ChildOrder,
    pub find_witness: bool,
    /// Skip candidates whose subtree has fewer unused nodes than the
    /// pattern subtree needs. Pure accelerator.
    pub prune_subtree_size: bool,
    /// Skip candidates whose subtree is shorter than the pattern
    /// subtree. Pure accelerator.
    pub prune_height: bool,
    /// Skip candidates with fewer children than the pattern node has
    /// child-edge children, which need distinct images among them.
    /// Pure accelerator.
    pub prune_degree: bool,
    /// Require identical sibling subtrees (same edge kind, same
    /// canonical form) to take images in increasing preorder position.
    /// Interchangeable subtrees can always be swapped into that order,
    /// so no verdict changes; permutations of them are searched once.
    pub prune_symmetry: bool,
}

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            order: ChildOrder::SubtreeDesc,
            find_witness: true,
            prune_subtree_size: true,
            prune_height: true,
            prune_degree: true,
            prune_symmetry: true,
        }
    }
}

/// Decide injective embedding by backtracking search.
pub fn solve_inj(t: &Tree, p: &Pattern, cfg: &SearchConfig) -> CheckResult {
    solve(t, p, cfg, false, Algorithm::ExactInj, EmbeddingKind::Inj)
}

/// Decide ancestor-preserving embedding by backtracking search. Each
/// assignment is admitted only if it keeps ancestorship preserved and
/// reflected against every already-assigned node.
pub fn solve_anc(t: &Tree, p: &Pattern, cfg: &SearchConfig) -> CheckResult {
    solve(t, p, cfg, true, Algorithm::ExactAnc, EmbeddingKind::Anc)
}

fn solve(
    t: &Tree,
    p: &Pattern,
    cfg: &SearchConfig,
    check_anc: bool,
    algorithm: Algorithm,
    kind: EmbeddingKind,
) -> CheckResult {
    let start = Instant::now();
    let done = |verdict, witness, explored| CheckResult {
        verdict,
        witness,
        algorithm,
        stats: SearchStats {
            nodes_explored: explored,
            elapsed: start.elapsed(),
        },
    };
    // Both kinds are injective; more pattern than tree nodes is a no.
    if p.node_count() > t.node_count() {
        return done(Verdict::No, None, 0);
    }
    let child_need = (0..p.node_count())
        .map(|i| {
            p.children(NodeId::new(i))
                .iter()
                .filter(|&&(_, kind)| kind == EdgeKind::Child)
                .count()
        })
        .collect();
    let (order, sym_pred) = assignment_plan(p, cfg.order);
    let mut search = Search {
        t,
        p,
        cfg,
        check_anc,
        order,
        sym_pred,
        child_need,
        images: vec![None; p.node_count()],
        used: FixedBitSet::with_capacity(t.node_count()),
        explored: 0,
    };
    match search.step(0) {
        Flow::Budget => done(Verdict::Unknown, None, search.explored),
        Flow::Exhausted => done(Verdict::No, None, search.explored),
        Flow::Found => {
            let witness = cfg.find_witness.then(|| {
                Embedding::new(
                    search
                        .images
                        .iter()
                        .map(|img| img.expect("search completed the mapping"))
                        .collect(),
                )
            });
            if let Some(w) = &witness {
                debug_assert_eq!(crate::oracle::verify(t, p, w, kind), Ok(true));
            }
            done(Verdict::Yes, witness, search.explored)
        }
    }
}

/// Depth-first preorder of the pattern with children visited per the
/// configured policy; parents always precede their children. Also
/// pairs each node with its nearest earlier-assigned sibling of
/// identical edge kind and subtree form, for symmetry breaking.
fn assignment_plan(p: &Pattern, order: ChildOrder) -> (Vec<NodeId>, Vec<Option<NodeId>>) {
    let keys = p.node_canonical_keys();
    let mut out = Vec::with_capacity(p.node_count());
    let mut sym_pred = vec![None; p.node_count()];
    let mut stack = vec![p.root()];
    let mut kids: Vec<(NodeId, EdgeKind)> = Vec::new();
    while let Some(m) = stack.pop() {
        out.push(m);
        kids.clear();
        kids.extend_from_slice(p.children(m));
        match order {
            ChildOrder::Input => {}
            ChildOrder::SubtreeDesc => {
                kids.sort_by_key(|&(c, _)| std::cmp::Reverse(p.subtree_size(c)))
            }
            ChildOrder::SubtreeAsc => kids.sort_by_key(|&(c, _)| p.subtree_size(c)),
        }
        for (i, &(c, kind)) in kids.iter().enumerate() {
            sym_pred[c.index()] = kids[..i]
                .iter()
                .rev()
                .find(|&&(c2, kind2)| kind2 == kind && keys[c2.index()] == keys[c.index()])
                .map(|&(c2, _)| c2);
        }
        stack.extend(kids.iter().rev().map(|&(c, _)| c));
    }
    (out, sym_pred)
}

enum Flow {
    Found,
    Exhausted,
    Budget,
}

struct Search<'a> {
    t: &'a Tree,
    p: &'a Pattern,
    cfg: &'a SearchConfig,
    check_anc: bool,
    order: Vec<NodeId>,
    /// Per pattern node, the nearest earlier-assigned identical sibling.
    sym_pred: Vec<Option<NodeId>>,
    /// Per pattern node, how many child-edge children it has.
    child_need: Vec<usize>,
    images: Vec<Option<NodeId>>,
    /// Used tree nodes, indexed by preorder rank so subtree occupancy
    /// is a contiguous range count.
    used: FixedBitSet,
    explored: u64,
}

impl Search<'_> {
    fn step(&mut self, i: usize) -> Flow {
        if i == self.order.len() {
            return Flow::Found;
        }
        let t = self.t;
        let p = self.p;
        let m = self.order[i];
        match p.parent(m) {
            None => self.try_candidate(i, m, t.root()),
            Some((pm, EdgeKind::Child)) => {
                let parent_img = self.images[pm.index()].expect("parent assigned first");
                for ci in 0..t.children(parent_img).len() {
                    let n = t.children(parent_img)[ci].0;
                    match self.try_candidate(i, m, n) {
                        Flow::Exhausted => continue,
                        other => return other,
                    }
                }
                Flow::Exhausted
            }
            Some((pm, EdgeKind::Desc)) => {
                let parent_img = self.images[pm.index()].expect("parent assigned first");
                let range = t.subtree_range(parent_img);
                for rank in range.start + 1..range.end {
                    let n = t.preorder()[rank];
                    match self.try_candidate(i, m, n) {
                        Flow::Exhausted => continue,
                        other => return other,
                    }
                }
                Flow::Exhausted
            }
        }
    }

    /// Exhausted here means only that this candidate failed.
    fn try_candidate(&mut self, i: usize, m: NodeId, n: NodeId) -> Flow {
        let t = self.t;
        let p = self.p;
        let rank = t.preorder_rank(n);
        if self.used.contains(rank) {
            return Flow::Exhausted;
        }
        if !p.label(m).matches(t.label(n)) {
            return Flow::Exhausted;
        }
        if m == p.root() && n != t.root() {
            return Flow::Exhausted;
        }
        if self.cfg.prune_height && p.subtree_height(m) > t.subtree_height(n) {
            return Flow::Exhausted;
        }
        if self.cfg.prune_degree && t.degree(n) < self.child_need[m.index()] {
            return Flow::Exhausted;
        }
        if self.cfg.prune_symmetry {
            if let Some(m2) = self.sym_pred[m.index()] {
                let n2 = self.images[m2.index()].expect("identical sibling assigned first");
                if rank <= t.preorder_rank(n2) {
                    return Flow::Exhausted;
                }
            }
        }
        if self.cfg.prune_subtree_size {
            let range = t.subtree_range(n);
            let free = range.len() - self.used.count_ones(range);
            if p.subtree_size(m) > free {
                return Flow::Exhausted;
            }
        }
        if self.check_anc {
            let ok = self.order[..i].iter().all(|&m2| {
                let n2 = self.images[m2.index()].expect("assigned prefix");
                t.is_ancestor(n2, n) == p.is_ancestor(m2, m)
                    && t.is_ancestor(n, n2) == p.is_ancestor(m, m2)
            });
            if !ok {
                return Flow::Exhausted;
            }
        }
        if self.explored == self.cfg.node_budget {
            return Flow::Budget;
        }
        self.explored += 1;
        self.images[m.index()] = Some(n);
        self.used.insert(rank);
        let flow = self.step(i + 1);
        if matches!(flow, Flow::Exhausted) {
            self.images[m.index()] = None;
            self.used.remove(rank);
        }
        flow
    }
}
