//! Shared vocabulary for embedding checks, the mapping verifier, and an
//! exhaustive reference decider for small instances.
//!
//! Everything else in the crate is measured against this module: the
//! verifier spells out the embedding conditions one by one, and
//! [`brute_force`] decides existence by trying every mapping. Neither
//! aims to be fast.

use crate::text::dewey_of;
use crate::tree::{EdgeKind, NodeId, Pattern, Tree};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::{Duration, Instant};
use thiserror::Error;

/// The four embedding kinds, declared weakest to strongest, so the
/// derived order is the strength order: std < inj < anc < lca.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum EmbeddingKind {
    Std,
    Inj,
    Anc,
    Lca,
}

impl EmbeddingKind {
    pub const ALL: [EmbeddingKind; 4] = [
        EmbeddingKind::Std,
        EmbeddingKind::Inj,
        EmbeddingKind::Anc,
        EmbeddingKind::Lca,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EmbeddingKind::Std => "std",
            EmbeddingKind::Inj => "inj",
            EmbeddingKind::Anc => "anc",
            EmbeddingKind::Lca => "lca",
        }
    }

    /// Kinds that require the mapping to be injective (all but std).
    pub fn is_injective(self) -> bool {
        self != EmbeddingKind::Std
    }
}

impl fmt::Display for EmbeddingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown embedding kind '{0}', expected std, inj, anc or lca")]
pub struct UnknownKind(pub String);

impl FromStr for EmbeddingKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<EmbeddingKind, UnknownKind> {
        match s {
            "std" => Ok(EmbeddingKind::Std),
            "inj" => Ok(EmbeddingKind::Inj),
            "anc" => Ok(EmbeddingKind::Anc),
            "lca" => Ok(EmbeddingKind::Lca),
            other => Err(UnknownKind(other.to_string())),
        }
    }
}

/// A total mapping from pattern nodes to tree nodes, indexed by the
/// pattern node id.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Embedding {
    images: Vec<NodeId>,
}

impl Embedding {
    pub fn new(images: Vec<NodeId>) -> Embedding {
        Embedding { images }
    }

    pub fn image(&self, m: NodeId) -> NodeId {
        self.images[m.index()]
    }

    pub fn images(&self) -> &[NodeId] {
        &self.images
    }

    /// One line per pattern node in preorder, "<pattern> -> <tree>",
    /// both sides as Dewey addresses.
    pub fn render(&self, p: &Pattern, t: &Tree) -> String {
        let mut out = String::new();
        for &m in p.preorder() {
            writeln!(out, "{} -> {}", dewey_of(p, m), dewey_of(t, self.image(m))).unwrap();
        }
        out
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which decision procedure produced a result.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Algorithm {
    BruteForce,
    StdTable,
    LcaMatching,
    AncBounded,
    InjHeightOne,
    ExactInj,
    ExactAnc,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::BruteForce => "brute-force",
            Algorithm::StdTable => "std-table",
            Algorithm::LcaMatching => "lca-matching",
            Algorithm::AncBounded => "anc-bounded",
            Algorithm::InjHeightOne => "inj-height1",
            Algorithm::ExactInj => "exact-inj",
            Algorithm::ExactAnc => "exact-anc",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SearchStats {
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Outcome of a decision procedure. A witness is present exactly on
/// yes verdicts and passes [`verify`] for the requested kind.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub verdict: Verdict,
    pub witness: Option<Embedding>,
    pub algorithm: Algorithm,
    pub stats: SearchStats,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("mapping covers {found} pattern nodes, the pattern has {expected}")]
    PartialMapping { expected: usize, found: usize },
    #[error("mapping sends a pattern node to {node:?}, which is not in the tree")]
    ForeignNode { node: NodeId },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(
        "instance too large for exhaustive search: \
         pattern has {pattern_nodes} nodes (limit {max_pattern}), \
         tree has {tree_nodes} (limit {max_tree})"
    )]
    InstanceTooLarge {
        pattern_nodes: usize,
        tree_nodes: usize,
        max_pattern: usize,
        max_tree: usize,
    },
}

/// Check a total mapping against the embedding conditions.
///
/// All kinds require: the pattern root maps to the tree root, child
/// edges map to child edges, descendant edges map to proper
/// descendants, and non-wildcard labels match. On top of that `inj`
/// requires the mapping injective, `anc` requires ancestorship
/// preserved and reflected over all node pairs, and `lca` requires
/// lowest common ancestors preserved over all node pairs.
pub fn verify(
    t: &Tree,
    p: &Pattern,
    h: &Embedding,
    kind: EmbeddingKind,
) -> Result<bool, EmbeddingError> {
    if h.images().len() != p.node_count() {
        return Err(EmbeddingError::PartialMapping {
            expected: p.node_count(),
            found: h.images().len(),
        });
    }
    if let Some(&bad) = h.images().iter().find(|n| n.index() >= t.node_count()) {
        return Err(EmbeddingError::ForeignNode { node: bad });
    }
    Ok(holds(t, p, h, kind))
}

fn holds(t: &Tree, p: &Pattern, h: &Embedding, kind: EmbeddingKind) -> bool {
    if h.image(p.root()) != t.root() {
        return false;
    }
    for m in p.node_ids() {
        if !p.label(m).matches(t.label(h.image(m))) {
            return false;
        }
        for &(c, edge) in p.children(m) {
            let ok = match edge {
                EdgeKind::Child => t.parent(h.image(c)).map(|(x, _)| x) == Some(h.image(m)),
                EdgeKind::Desc => t.is_proper_ancestor(h.image(m), h.image(c)),
            };
            if !ok {
                return false;
            }
        }
    }
    match kind {
        EmbeddingKind::Std => true,
        EmbeddingKind::Inj => {
            let mut seen = vec![false; t.node_count()];
            h.images().iter().all(|n| {
                let fresh = !seen[n.index()];
                seen[n.index()] = true;
                fresh
            })
        }
        EmbeddingKind::Anc => p.node_ids().all(|a| {
            p.node_ids()
                .all(|b| t.is_ancestor(h.image(a), h.image(b)) == p.is_ancestor(a, b))
        }),
        EmbeddingKind::Lca => p.node_ids().all(|a| {
            p.node_ids()
                .filter(|&b| b > a)
                .all(|b| t.lca(h.image(a), h.image(b)) == h.image(p.lca(a, b)))
        }),
    }
}

pub const DEFAULT_MAX_PATTERN_NODES: usize = 8;
pub const DEFAULT_MAX_TREE_NODES: usize = 12;

/// Decide existence by exhaustive search, under the default size caps.
pub fn brute_force(t: &Tree, p: &Pattern, kind: EmbeddingKind) -> Result<CheckResult, OracleError> {
    brute_force_with_limits(
        t,
        p,
        kind,
        DEFAULT_MAX_PATTERN_NODES,
        DEFAULT_MAX_TREE_NODES,
    )
}

/// Exhaustive search with explicit size caps. Runtime is bounded by
/// |tree| ^ |pattern|, so keep the caps small.
///
/// Deterministic: pattern nodes are assigned in preorder and candidate
/// tree nodes tried in preorder, so the witness is the first mapping in
/// that enumeration, the Dewey-lexicographically least one.
pub fn brute_force_with_limits(
    t: &Tree,
    p: &Pattern,
    kind: EmbeddingKind,
    max_pattern: usize,
    max_tree: usize,
) -> Result<CheckResult, OracleError> {
    if p.node_count() > max_pattern || t.node_count() > max_tree {
        return Err(OracleError::InstanceTooLarge {
            pattern_nodes: p.node_count(),
            tree_nodes: t.node_count(),
            max_pattern,
            max_tree,
        });
    }
    let start = Instant::now();
    let mut search = Search {
        t,
        p,
        kind,
        images: vec![None; p.node_count()],
        used: vec![false; t.node_count()],
        explored: 0,
    };
    let found = search.extend(0);
    let witness = found.then(|| {
        Embedding::new(
            search
                .images
                .iter()
                .map(|img| img.expect("search completed the mapping"))
                .collect(),
        )
    });
    if let Some(w) = &witness {
        debug_assert_eq!(verify(t, p, w, kind), Ok(true));
    }
    Ok(CheckResult {
        verdict: Verdict::from(found),
        witness,
        algorithm: Algorithm::BruteForce,
        stats: SearchStats {
            nodes_explored: search.explored,
            elapsed: start.elapsed(),
        },
    })
}

struct Search<'a> {
    t: &'a Tree,
    p: &'a Pattern,
    kind: EmbeddingKind,
    images: Vec<Option<NodeId>>,
    used: Vec<bool>,
    explored: u64,
}

impl Search<'_> {
    fn extend(&mut self, step: usize) -> bool {
        if step == self.p.node_count() {
            return true;
        }
        let m = self.p.preorder()[step];
        for i in 0..self.t.node_count() {
            let n = self.t.preorder()[i];
            if !self.admissible(step, m, n) {
                continue;
            }
            self.images[m.index()] = Some(n);
            self.used[n.index()] = true;
            self.explored += 1;
            if self.extend(step + 1) {
                return true;
            }
            self.images[m.index()] = None;
            self.used[n.index()] = false;
        }
        false
    }

    /// Mapping `m -> n` keeps the partial assignment consistent. Every
    /// check is against already-assigned nodes only; in preorder the
    /// parent of `m`, and the pattern lca of `m` with any assigned
    /// node, are always already assigned.
    fn admissible(&self, step: usize, m: NodeId, n: NodeId) -> bool {
        let img = |x: NodeId| self.images[x.index()].expect("assigned before use");
        if !self.p.label(m).matches(self.t.label(n)) {
            return false;
        }
        match self.p.parent(m) {
            None => {
                if n != self.t.root() {
                    return false;
                }
            }
            Some((pm, EdgeKind::Child)) => {
                if self.t.parent(n).map(|(x, _)| x) != Some(img(pm)) {
                    return false;
                }
            }
            Some((pm, EdgeKind::Desc)) => {
                if !self.t.is_proper_ancestor(img(pm), n) {
                    return false;
                }
            }
        }
        match self.kind {
            EmbeddingKind::Std => true,
            EmbeddingKind::Inj => !self.used[n.index()],
            // Both directions of the ancestor equivalence; a duplicate
            // image fails it, so no separate injectivity check.
            EmbeddingKind::Anc => self.p.preorder()[..step].iter().all(|&m2| {
                self.t.is_ancestor(img(m2), n) == self.p.is_ancestor(m2, m)
                    && self.t.is_ancestor(n, img(m2)) == self.p.is_ancestor(m, m2)
            }),
            EmbeddingKind::Lca => self.p.preorder()[..step]
                .iter()
                .all(|&m2| self.t.lca(img(m2), n) == img(self.p.lca(m2, m))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_pattern, parse_tree};

    fn p0() -> Pattern {
        parse_pattern("f/a[.//b/c]//b").unwrap()
    }

    fn figure_trees() -> [Tree; 4] {
        [
            parse_tree("f(a(b(c)))").unwrap(),
            parse_tree("f(a(b(b(c))))").unwrap(),
            parse_tree("f(a(g(b,b(c))))").unwrap(),
            parse_tree("f(a(b,g(b(c))))").unwrap(),
        ]
    }

    fn ids(indices: &[usize]) -> Embedding {
        Embedding::new(indices.iter().map(|&i| NodeId::new(i)).collect())
    }

    #[test]
    fn doubled_image_is_std_but_not_inj() {
        // p0 nodes in build order: f, a, b (with child c), c, b.
        // t0 = f(a(b(c))); both pattern b-nodes land on the only b.
        let [t0, ..] = figure_trees();
        let h = ids(&[0, 1, 2, 3, 2]);
        assert_eq!(verify(&t0, &p0(), &h, EmbeddingKind::Std), Ok(true));
        assert_eq!(verify(&t0, &p0(), &h, EmbeddingKind::Inj), Ok(false));
    }

    #[test]
    fn comparable_images_are_inj_but_not_anc() {
        // t1 = f(a(b(b(c)))); the two b-images sit on one root path.
        let [_, t1, ..] = figure_trees();
        let h = ids(&[0, 1, 3, 4, 2]);
        assert_eq!(verify(&t1, &p0(), &h, EmbeddingKind::Inj), Ok(true));
        assert_eq!(verify(&t1, &p0(), &h, EmbeddingKind::Anc), Ok(false));
    }

    #[test]
    fn identity_on_itself_passes_all_kinds() {
        let t = parse_tree("f(a(g(b,b(c)),d),e(d))").unwrap();
        let p = t.as_pattern().clone();
        let h = Embedding::new(t.node_ids().collect());
        for kind in EmbeddingKind::ALL {
            assert_eq!(verify(&t, &p, &h, kind), Ok(true), "{kind}");
        }
    }

    #[test]
    fn verify_rejects_malformed_mappings() {
        let t = parse_tree("a(b)").unwrap();
        let p = parse_pattern("a/b").unwrap();
        assert_eq!(
            verify(&t, &p, &ids(&[0]), EmbeddingKind::Std),
            Err(EmbeddingError::PartialMapping {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            verify(&t, &p, &ids(&[0, 9]), EmbeddingKind::Std),
            Err(EmbeddingError::ForeignNode {
                node: NodeId::new(9)
            })
        );
    }

    #[test]
    fn verify_enforces_root_edges_and_labels() {
        let t = parse_tree("f(a(b))").unwrap();
        let p = parse_pattern("f/a").unwrap();
        // Root sent elsewhere.
        assert_eq!(verify(&t, &p, &ids(&[1, 2]), EmbeddingKind::Std), Ok(false));
        // Child edge stretched to a grandchild.
        assert_eq!(verify(&t, &p, &ids(&[0, 2]), EmbeddingKind::Std), Ok(false));
        // Wrong label.
        let q = parse_pattern("f/b").unwrap();
        assert_eq!(verify(&t, &q, &ids(&[0, 1]), EmbeddingKind::Std), Ok(false));
        // Desc edge must be proper: image equal to the parent's image fails.
        let d = parse_pattern("f//f").unwrap();
        assert_eq!(verify(&t, &d, &ids(&[0, 0]), EmbeddingKind::Std), Ok(false));
    }

    #[test]
    fn brute_force_matches_figure_matrix() {
        let p = p0();
        let expected: [[bool; 4]; 4] = [
            [true, false, false, false],
            [true, true, false, false],
            [true, true, true, false],
            [true, true, true, true],
        ];
        for (t, row) in figure_trees().iter().zip(expected) {
            for (kind, want) in EmbeddingKind::ALL.into_iter().zip(row) {
                let res = brute_force(t, &p, kind).unwrap();
                assert_eq!(res.verdict, Verdict::from(want), "{kind} on {t}");
                assert_eq!(res.witness.is_some(), want);
                if let Some(w) = &res.witness {
                    assert_eq!(verify(t, &p, w, kind), Ok(true));
                }
            }
        }
    }

    #[test]
    fn brute_force_on_single_nodes() {
        let t = parse_tree("a").unwrap();
        let p = parse_pattern("a").unwrap();
        for kind in EmbeddingKind::ALL {
            let res = brute_force(&t, &p, kind).unwrap();
            assert_eq!(res.verdict, Verdict::Yes);
            assert_eq!(res.witness.unwrap().images(), &[NodeId::new(0)]);
        }
        let q = parse_pattern("b").unwrap();
        assert_eq!(
            brute_force(&t, &q, EmbeddingKind::Std).unwrap().verdict,
            Verdict::No
        );
    }

    #[test]
    fn brute_force_witness_is_first_in_preorder() {
        let t = parse_tree("f(b,b)").unwrap();
        let p = parse_pattern("f//b").unwrap();
        let res = brute_force(&t, &p, EmbeddingKind::Std).unwrap();
        let w = res.witness.unwrap();
        assert_eq!(w.images(), &[NodeId::new(0), NodeId::new(1)]);
        // Same instance again: identical witness.
        let again = brute_force(&t, &p, EmbeddingKind::Std).unwrap();
        assert_eq!(again.witness.unwrap(), w);
    }

    #[test]
    fn brute_force_respects_size_caps() {
        let t = parse_tree("r(a,a,a,a,a,a,a,a,a,a,a,a)").unwrap();
        let p = parse_pattern("r").unwrap();
        assert!(matches!(
            brute_force(&t, &p, EmbeddingKind::Std),
            Err(OracleError::InstanceTooLarge { tree_nodes: 13, .. })
        ));
        assert!(brute_force_with_limits(&t, &p, EmbeddingKind::Std, 8, 13).is_ok());
    }

    #[test]
    fn witness_renders_in_dewey_lines() {
        let t = parse_tree("f(a(b(c)))").unwrap();
        let p = parse_pattern("f//b/c").unwrap();
        let res = brute_force(&t, &p, EmbeddingKind::Lca).unwrap();
        let text = res.witness.unwrap().render(&p, &t);
        assert_eq!(text, "\u{3b5} -> \u{3b5}\n0 -> 0.0\n0.0 -> 0.0.0\n");
    }

    #[test]
    fn kind_order_reflects_strength() {
        assert!(EmbeddingKind::Lca > EmbeddingKind::Anc);
        assert!(EmbeddingKind::Anc > EmbeddingKind::Inj);
        assert!(EmbeddingKind::Inj > EmbeddingKind::Std);
        assert_eq!("anc".parse::<EmbeddingKind>(), Ok(EmbeddingKind::Anc));
        assert!("xyz".parse::<EmbeddingKind>().is_err());
    }
}
