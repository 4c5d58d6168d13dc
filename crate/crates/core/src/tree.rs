//! Arena-backed unordered labeled trees and tree patterns.
//!
//! A [`Pattern`] is a rooted structure whose edges are either child edges
//! (the image must be a child) or descendant edges (the image must be a
//! proper descendant). A [`Tree`] is a pattern with no descendant edges
//! and no wildcard labels. Both are immutable after construction and
//! cheap to share across threads.
//!
//! Children keep their insertion order so node addresses are stable, but
//! no algorithm in this crate depends on that order; equality is
//! unordered isomorphism via [`Pattern::canonical_key`].

use std::collections::HashSet;
use std::fmt;
use std::ops::{Deref, Range};
use std::sync::Arc;
use thiserror::Error;

/// Node label: a symbol over a per-instance alphabet, or the wildcard.
///
/// The wildcard is legal only in patterns and matches every tree label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Wildcard,
    Symbol(Arc<str>),
}

impl Label {
    pub fn symbol(name: &str) -> Label {
        Label::Symbol(Arc::from(name))
    }

    pub fn is_wildcard(&self) -> bool {
        matches!(self, Label::Wildcard)
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match self {
            Label::Wildcard => None,
            Label::Symbol(s) => Some(s),
        }
    }

    /// Label compatibility with `self` as the pattern label: wildcard
    /// matches anything, symbols must be equal.
    pub fn matches(&self, tree_label: &Label) -> bool {
        match self {
            Label::Wildcard => true,
            Label::Symbol(s) => tree_label.as_symbol() == Some(s),
        }
    }
}

impl From<&str> for Label {
    fn from(name: &str) -> Label {
        Label::symbol(name)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Wildcard => f.write_str("*"),
            Label::Symbol(s) => f.write_str(s),
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense index of a node within one structure's arena.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub(crate) fn new(index: usize) -> NodeId {
        NodeId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum EdgeKind {
    Child,
    Desc,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("node index {node} out of bounds for {node_count} nodes")]
    InvalidNode { node: usize, node_count: usize },
    #[error("cycle through node {node:?}")]
    CycleDetected { node: NodeId },
    #[error("node {node:?} has more than one incoming edge")]
    MultipleParents { node: NodeId },
    #[error("node {node:?} is not reachable from the root")]
    DisconnectedNode { node: NodeId },
    #[error("edge {parent:?} -> {child:?} is both a child edge and a descendant edge")]
    DisjointnessViolation { parent: NodeId, child: NodeId },
    #[error("node {node:?} is labeled '*', which trees do not allow")]
    WildcardInTree { node: NodeId },
    #[error("descendant edge {parent:?} -> {child:?} is not allowed in a tree")]
    DescEdgeInTree { parent: NodeId, child: NodeId },
}

/// Unvalidated structure description: labels plus edge lists.
///
/// [`StructureData::validate`] is the single gate every structure in
/// this crate passes through; builders and parsers funnel into the same
/// checks. Children are ordered: child edges first (list order), then
/// descendant edges (list order).
#[derive(Debug, Clone)]
pub struct StructureData {
    pub labels: Vec<Label>,
    pub root: usize,
    pub child_edges: Vec<(usize, usize)>,
    pub desc_edges: Vec<(usize, usize)>,
}

impl StructureData {
    pub fn validate(self) -> Result<Pattern, StructureError> {
        let n = self.labels.len();
        let check = |node: usize| {
            if node < n {
                Ok(())
            } else {
                Err(StructureError::InvalidNode {
                    node,
                    node_count: n,
                })
            }
        };
        check(self.root)?;
        let mut children: Vec<Vec<(usize, EdgeKind)>> = vec![Vec::new(); n];
        for &(u, v) in &self.child_edges {
            check(u)?;
            check(v)?;
            children[u].push((v, EdgeKind::Child));
        }
        for &(u, v) in &self.desc_edges {
            check(u)?;
            check(v)?;
            children[u].push((v, EdgeKind::Desc));
        }
        assemble(self.labels, self.root, children)
    }

    pub fn validate_tree(self) -> Result<Tree, StructureError> {
        Tree::from_pattern(self.validate()?)
    }
}

/// Shared invariant checks plus derived-array computation.
///
/// `children` lists fix the stored child order. Checks: child and
/// descendant edge sets are disjoint, every non-root node has exactly
/// one incoming edge, the root has none, and all nodes are reachable.
fn assemble(
    labels: Vec<Label>,
    root: usize,
    children: Vec<Vec<(usize, EdgeKind)>>,
) -> Result<Pattern, StructureError> {
    let n = labels.len();
    debug_assert!(root < n && children.len() == n);

    let mut seen_pairs: HashSet<(usize, usize)> = HashSet::new();
    let mut pred_count = vec![0usize; n];
    for (u, list) in children.iter().enumerate() {
        for &(v, _) in list {
            if !seen_pairs.insert((u, v)) {
                return Err(StructureError::DisjointnessViolation {
                    parent: NodeId::new(u),
                    child: NodeId::new(v),
                });
            }
            pred_count[v] += 1;
        }
    }
    for (v, &c) in pred_count.iter().enumerate() {
        if v != root && c > 1 {
            return Err(StructureError::MultipleParents {
                node: NodeId::new(v),
            });
        }
    }
    if pred_count[root] > 0 {
        // The root having an incoming edge forces a cycle once every
        // other node has at most one.
        return Err(StructureError::CycleDetected {
            node: NodeId::new(root),
        });
    }

    // Preorder walk in stored child order (children pushed reversed, so
    // the stack pops them first to last); fills parent and depth too.
    let mut parent: Vec<Option<(NodeId, EdgeKind)>> = vec![None; n];
    let mut depth = vec![0u32; n];
    let mut pre = vec![0u32; n];
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut stack = vec![root];
    visited[root] = true;
    while let Some(u) = stack.pop() {
        pre[u] = order.len() as u32;
        order.push(NodeId::new(u));
        for &(v, kind) in children[u].iter().rev() {
            // One incoming edge per node and none into the root leaves a
            // unique path to every reachable node; no revisits possible.
            debug_assert!(!visited[v]);
            visited[v] = true;
            parent[v] = Some((NodeId::new(u), kind));
            depth[v] = depth[u] + 1;
            stack.push(v);
        }
    }
    if order.len() < n {
        // Unreachable component: walking predecessors inside it either
        // finds a node with no incoming edge or loops around a cycle.
        let start = (0..n).find(|&v| !visited[v]).expect("unvisited node");
        let mut cur = start;
        for _ in 0..=n {
            let pred = children
                .iter()
                .position(|list| list.iter().any(|&(w, _)| w == cur));
            match pred {
                Some(p) => {
                    debug_assert!(!visited[p], "visited nodes have visited successors");
                    cur = p;
                }
                None => {
                    return Err(StructureError::DisconnectedNode {
                        node: NodeId::new(cur),
                    })
                }
            }
        }
        return Err(StructureError::CycleDetected {
            node: NodeId::new(cur),
        });
    }

    // Subtree interval ends in preorder ranks, and per-node subtree height.
    let mut end = vec![0u32; n];
    let mut subtree_height = vec![0u32; n];
    for &id in order.iter().rev() {
        let u = id.index();
        let mut e = pre[u] + 1;
        let mut h = 0u32;
        for &(v, _) in &children[u] {
            e = e.max(end[v]);
            h = h.max(subtree_height[v] + 1);
        }
        end[u] = e;
        subtree_height[u] = h;
    }

    let desc_edge_count = children
        .iter()
        .flatten()
        .filter(|&&(_, k)| k == EdgeKind::Desc)
        .count();
    let wildcard_count = labels.iter().filter(|l| l.is_wildcard()).count();
    let max_degree = children.iter().map(Vec::len).max().unwrap_or(0);
    let children = children
        .into_iter()
        .map(|list| list.into_iter().map(|(v, k)| (NodeId::new(v), k)).collect())
        .collect();

    Ok(Pattern {
        labels,
        root: NodeId::new(root),
        children,
        parent,
        depth,
        pre,
        end,
        order,
        subtree_height,
        desc_edge_count,
        wildcard_count,
        max_degree,
    })
}

/// A rooted unordered labeled tree pattern.
#[derive(Clone)]
pub struct Pattern {
    labels: Vec<Label>,
    root: NodeId,
    children: Vec<Vec<(NodeId, EdgeKind)>>,
    parent: Vec<Option<(NodeId, EdgeKind)>>,
    depth: Vec<u32>,
    pre: Vec<u32>,
    end: Vec<u32>,
    order: Vec<NodeId>,
    subtree_height: Vec<u32>,
    desc_edge_count: usize,
    wildcard_count: usize,
    max_degree: usize,
}

impl Pattern {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn label(&self, n: NodeId) -> &Label {
        &self.labels[n.index()]
    }

    /// Children with their edge kinds, in stored (insertion) order.
    pub fn children(&self, n: NodeId) -> &[(NodeId, EdgeKind)] {
        &self.children[n.index()]
    }

    pub fn parent(&self, n: NodeId) -> Option<(NodeId, EdgeKind)> {
        self.parent[n.index()]
    }

    pub fn degree(&self, n: NodeId) -> usize {
        self.children[n.index()].len()
    }

    pub fn depth(&self, n: NodeId) -> usize {
        self.depth[n.index()] as usize
    }

    /// Height of the whole structure: maximum node depth.
    pub fn height(&self) -> usize {
        self.subtree_height[self.root.index()] as usize
    }

    /// Height of the subtree rooted at `n`.
    pub fn subtree_height(&self, n: NodeId) -> usize {
        self.subtree_height[n.index()] as usize
    }

    pub fn subtree_size(&self, n: NodeId) -> usize {
        let i = n.index();
        (self.end[i] - self.pre[i]) as usize
    }

    /// Reflexive ancestor test in constant time via preorder intervals.
    pub fn is_ancestor(&self, a: NodeId, b: NodeId) -> bool {
        let (a, b) = (a.index(), b.index());
        self.pre[a] <= self.pre[b] && self.pre[b] < self.end[a]
    }

    /// Proper (strict) ancestor test.
    pub fn is_proper_ancestor(&self, a: NodeId, b: NodeId) -> bool {
        a != b && self.is_ancestor(a, b)
    }

    /// Lowest common ancestor by lifting the deeper node, then walking
    /// both up in lockstep. Runs in O(height).
    pub fn lca(&self, a: NodeId, b: NodeId) -> NodeId {
        let mut a = a;
        let mut b = b;
        while self.depth(a) > self.depth(b) {
            a = self.parent(a).expect("deeper node has a parent").0;
        }
        while self.depth(b) > self.depth(a) {
            b = self.parent(b).expect("deeper node has a parent").0;
        }
        while a != b {
            a = self.parent(a).expect("non-root has a parent").0;
            b = self.parent(b).expect("non-root has a parent").0;
        }
        a
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.node_count()).map(NodeId::new)
    }

    /// Nodes in preorder following the stored child order.
    pub fn preorder(&self) -> &[NodeId] {
        &self.order
    }

    pub fn preorder_rank(&self, n: NodeId) -> usize {
        self.pre[n.index()] as usize
    }

    /// Preorder-rank interval covered by the subtree of `n` (half-open).
    pub fn subtree_range(&self, n: NodeId) -> Range<usize> {
        let i = n.index();
        self.pre[i] as usize..self.end[i] as usize
    }

    pub fn has_desc_edges(&self) -> bool {
        self.desc_edge_count > 0
    }

    pub fn desc_edge_count(&self) -> usize {
        self.desc_edge_count
    }

    pub fn has_wildcards(&self) -> bool {
        self.wildcard_count > 0
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// True when every node has at most one child.
    pub fn is_path(&self) -> bool {
        self.max_degree <= 1
    }

    /// Canonical form: children sorted by edge kind (child before
    /// descendant), then by their own canonical key. Two patterns are
    /// unordered-isomorphic iff their keys are equal.
    pub fn canonical_key(&self) -> String {
        let mut keys = self.node_canonical_keys();
        keys.swap_remove(self.root.index())
    }

    /// Per-node canonical keys, computed bottom-up.
    pub(crate) fn node_canonical_keys(&self) -> Vec<String> {
        let mut keys: Vec<String> = vec![String::new(); self.node_count()];
        for &id in self.order.iter().rev() {
            let u = id.index();
            let mut parts: Vec<String> = self.children[u]
                .iter()
                .map(|&(v, kind)| {
                    let mark = match kind {
                        EdgeKind::Child => "/",
                        EdgeKind::Desc => "//",
                    };
                    format!("{mark}{}", keys[v.index()])
                })
                .collect();
            parts.sort();
            let mut key = self.labels[u].to_string();
            if !parts.is_empty() {
                key.push('(');
                key.push_str(&parts.join(","));
                key.push(')');
            }
            keys[u] = key;
        }
        keys
    }

    /// Children of `n` in canonical order, given precomputed node keys.
    pub(crate) fn children_canonical(&self, n: NodeId, keys: &[String]) -> Vec<(NodeId, EdgeKind)> {
        let mut list = self.children[n.index()].to_vec();
        list.sort_by(|a, b| {
            let ka = (a.1 == EdgeKind::Desc, &keys[a.0.index()]);
            let kb = (b.1 == EdgeKind::Desc, &keys[b.0.index()]);
            ka.cmp(&kb)
        });
        list
    }

    pub fn isomorphic(&self, other: &Pattern) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    /// Copy with every label rewritten, keeping the structure.
    pub fn map_labels(&self, mut f: impl FnMut(&Label) -> Label) -> Pattern {
        let mut out = self.clone();
        for l in &mut out.labels {
            *l = f(l);
        }
        out.wildcard_count = out.labels.iter().filter(|l| l.is_wildcard()).count();
        out
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({})", self.canonical_key())
    }
}

/// A tree: a pattern with no descendant edges and no wildcards.
#[derive(Clone)]
pub struct Tree {
    inner: Pattern,
}

impl Tree {
    pub fn from_pattern(p: Pattern) -> Result<Tree, StructureError> {
        for n in p.node_ids() {
            if p.label(n).is_wildcard() {
                return Err(StructureError::WildcardInTree { node: n });
            }
            for &(v, kind) in p.children(n) {
                if kind == EdgeKind::Desc {
                    return Err(StructureError::DescEdgeInTree {
                        parent: n,
                        child: v,
                    });
                }
            }
        }
        Ok(Tree { inner: p })
    }

    pub fn as_pattern(&self) -> &Pattern {
        &self.inner
    }

    pub fn into_pattern(self) -> Pattern {
        self.inner
    }

    /// Children without edge kinds; trees only have child edges.
    pub fn child_nodes(&self, n: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.inner.children(n).iter().map(|&(v, _)| v)
    }
}

impl Deref for Tree {
    type Target = Pattern;

    fn deref(&self) -> &Pattern {
        &self.inner
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({})", self.canonical_key())
    }
}

/// Incremental pattern constructor. The handles it returns are the
/// final dense node ids; children keep their insertion order.
pub struct PatternBuilder {
    labels: Vec<Label>,
    children: Vec<Vec<(usize, EdgeKind)>>,
}

impl PatternBuilder {
    pub fn new() -> PatternBuilder {
        PatternBuilder {
            labels: Vec::new(),
            children: Vec::new(),
        }
    }

    /// Create the root; must be the first node and called exactly once.
    pub fn root(&mut self, label: impl Into<Label>) -> NodeId {
        assert!(self.labels.is_empty(), "root must be the first node");
        self.push(label.into())
    }

    pub fn child(&mut self, parent: NodeId, kind: EdgeKind, label: impl Into<Label>) -> NodeId {
        let id = self.push(label.into());
        self.children[parent.index()].push((id.index(), kind));
        id
    }

    /// Copy the subtree of `src` rooted at `src_node` below `parent`.
    /// Returns the id of the copied subtree root.
    pub fn graft(
        &mut self,
        parent: NodeId,
        kind: EdgeKind,
        src: &Pattern,
        src_node: NodeId,
    ) -> NodeId {
        let top = self.child(parent, kind, src.label(src_node).clone());
        let mut stack = vec![(src_node, top)];
        while let Some((s, d)) = stack.pop() {
            for &(v, k) in src.children(s) {
                let c = self.child(d, k, src.label(v).clone());
                stack.push((v, c));
            }
        }
        top
    }

    pub fn finish(self) -> Result<Pattern, StructureError> {
        if self.labels.is_empty() {
            return Err(StructureError::InvalidNode {
                node: 0,
                node_count: 0,
            });
        }
        assemble(self.labels, 0, self.children)
    }

    fn push(&mut self, label: Label) -> NodeId {
        let id = NodeId::new(self.labels.len());
        self.labels.push(label);
        self.children.push(Vec::new());
        id
    }
}

impl Default for PatternBuilder {
    fn default() -> Self {
        Self::new()
    }
}

/// Tree constructor: child edges and symbol labels only.
pub struct TreeBuilder {
    inner: PatternBuilder,
}

impl TreeBuilder {
    pub fn new() -> TreeBuilder {
        TreeBuilder {
            inner: PatternBuilder::new(),
        }
    }

    pub fn root(&mut self, label: &str) -> NodeId {
        self.inner.root(Label::symbol(label))
    }

    pub fn child(&mut self, parent: NodeId, label: &str) -> NodeId {
        self.inner
            .child(parent, EdgeKind::Child, Label::symbol(label))
    }

    /// Copy the subtree of `src` rooted at `src_node` below `parent`.
    pub fn graft(&mut self, parent: NodeId, src: &Tree, src_node: NodeId) -> NodeId {
        self.inner
            .graft(parent, EdgeKind::Child, src.as_pattern(), src_node)
    }

    pub fn finish(self) -> Result<Tree, StructureError> {
        Tree::from_pattern(self.inner.finish()?)
    }
}

impl Default for TreeBuilder {
    fn default() -> Self {
        Self::new()
    }
}
