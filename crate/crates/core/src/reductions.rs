//! CNF-to-instance generators mirroring the hardness constructions,
//! plus a brute-force SAT oracle so generated instances can be checked
//! round-trip: deciding the generated (tree, pattern) pair must agree
//! with deciding the formula.
//!
//! Conventions shared by all generators: variable i yields labels
//! "x{i}", clause j yields "c{j}" (both 1-based), filler nodes are
//! labeled "a" or "bot", selector leaves "s{i}".

use crate::oracle::EmbeddingKind;
use crate::text::CnfFormula;
use crate::tree::{EdgeKind, Label, Pattern, PatternBuilder, Tree, TreeBuilder};
use std::collections::HashSet;
use thiserror::Error;

pub const MAX_SAT_VARS: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("{num_vars} variables exceed the brute-force limit of {max}")]
    TooManyVariables { num_vars: u32, max: u32 },
    #[error("instance lacks the root shape this transform requires")]
    ShapeMismatch,
    #[error("path length must be at least 1")]
    InvalidSize,
}

/// The instance families this module can generate.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub enum ReductionKind {
    /// Chains of clause slots; decided by injective embedding.
    Inj,
    /// Height-1 pattern; decided by ancestor-preserving embedding.
    Anc,
    /// Height-2 pattern; decided by injective embedding.
    InjH2,
    /// Single-label alphabet, wildcard-only pattern, injective.
    InjWc,
    /// Single-label alphabet, wildcard-free pattern, injective.
    InjNowc,
    /// Single-label alphabet, wildcard-only pattern, anc.
    AncWc,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 6] = [
        ReductionKind::Inj,
        ReductionKind::Anc,
        ReductionKind::InjH2,
        ReductionKind::InjWc,
        ReductionKind::InjNowc,
        ReductionKind::AncWc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReductionKind::Inj => "inj",
            ReductionKind::Anc => "anc",
            ReductionKind::InjH2 => "inj-h2",
            ReductionKind::InjWc => "inj-wc",
            ReductionKind::InjNowc => "inj-nowc",
            ReductionKind::AncWc => "anc-wc",
        }
    }

    /// The embedding kind whose decision the generated instance encodes.
    pub fn embedding_kind(self) -> EmbeddingKind {
        match self {
            ReductionKind::Anc | ReductionKind::AncWc => EmbeddingKind::Anc,
            _ => EmbeddingKind::Inj,
        }
    }

    pub fn generate(self, phi: &CnfFormula) -> (Tree, Pattern) {
        match self {
            ReductionKind::Inj => gen_inj_reduction(phi),
            ReductionKind::Anc => gen_anc_reduction(phi),
            ReductionKind::InjH2 => gen_inj_h2_reduction(phi),
            ReductionKind::InjWc => gen_inj_wc_reduction(phi),
            ReductionKind::InjNowc => gen_inj_nowc_reduction(phi),
            ReductionKind::AncWc => gen_anc_wc_reduction(phi),
        }
    }
}

impl std::fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown reduction kind: {0}")]
pub struct UnknownReduction(pub String);

impl std::str::FromStr for ReductionKind {
    type Err = UnknownReduction;

    fn from_str(s: &str) -> Result<ReductionKind, UnknownReduction> {
        ReductionKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| UnknownReduction(s.to_string()))
    }
}

/// Exhaustive satisfiability check over all valuations.
pub fn sat_brute_force(phi: &CnfFormula) -> Result<bool, ReductionError> {
    let n = phi.num_vars();
    if n > MAX_SAT_VARS {
        return Err(ReductionError::TooManyVariables {
            num_vars: n,
            max: MAX_SAT_VARS,
        });
    }
    let satisfied = |valuation: u64| {
        phi.clauses().iter().all(|clause| {
            clause.iter().any(|&lit| {
                let bit = valuation >> (lit.unsigned_abs() - 1) & 1;
                (lit > 0) == (bit == 1)
            })
        })
    };
    Ok((0..1u64 << n).any(satisfied))
}

fn clauses_with_literal(phi: &CnfFormula, lit: i32) -> Vec<usize> {
    (1..=phi.clause_count())
        .filter(|&j| phi.clauses()[j - 1].contains(&lit))
        .collect()
}

fn var_label(i: u32) -> String {
    format!("x{i}")
}

fn clause_label(j: usize) -> String {
    format!("c{j}")
}

/// Injective-embedding instance. Per variable the tree holds two
/// chains of k clause slots, one for each polarity; slot j carries
/// the clause label when clause j contains that literal and "bot"
/// otherwise. The pattern requests, per variable, a chain of k
/// wildcards below an "x{i}" head (consuming one polarity chain
/// whole) plus one free node per clause label.
pub fn gen_inj_reduction(phi: &CnfFormula) -> (Tree, Pattern) {
    let n = phi.num_vars();
    let k = phi.clause_count();
    let mut tb = TreeBuilder::new();
    let root = tb.root("r");
    for i in 1..=n {
        for lit in [i as i32, -(i as i32)] {
            let mut cur = tb.child(root, &var_label(i));
            for j in 1..=k {
                let label = if phi.clauses()[j - 1].contains(&lit) {
                    clause_label(j)
                } else {
                    "bot".to_string()
                };
                cur = tb.child(cur, &label);
            }
        }
    }
    let mut pb = PatternBuilder::new();
    let proot = pb.root("r");
    for i in 1..=n {
        let mut cur = pb.child(proot, EdgeKind::Desc, var_label(i).as_str());
        for _ in 0..k {
            cur = pb.child(cur, EdgeKind::Child, Label::Wildcard);
        }
    }
    for j in 1..=k {
        pb.child(proot, EdgeKind::Desc, clause_label(j).as_str());
    }
    (tb.finish().unwrap(), pb.finish().unwrap())
}

/// Anc-embedding instance with a height-1 pattern. Per variable the
/// tree holds two heads "x{i}", each with leaf children for the
/// clauses containing that polarity. The pattern requests each head
/// label once by child edge and each clause label once by desc edge;
/// ancestor preservation forbids taking a clause from below a chosen
/// head.
pub fn gen_anc_reduction(phi: &CnfFormula) -> (Tree, Pattern) {
    let n = phi.num_vars();
    let k = phi.clause_count();
    let mut tb = TreeBuilder::new();
    let root = tb.root("r");
    for i in 1..=n {
        for lit in [i as i32, -(i as i32)] {
            let head = tb.child(root, &var_label(i));
            for j in clauses_with_literal(phi, lit) {
                tb.child(head, &clause_label(j));
            }
        }
    }
    let mut pb = PatternBuilder::new();
    let proot = pb.root("r");
    for i in 1..=n {
        pb.child(proot, EdgeKind::Child, var_label(i).as_str());
    }
    for j in 1..=k {
        pb.child(proot, EdgeKind::Desc, clause_label(j).as_str());
    }
    (tb.finish().unwrap(), pb.finish().unwrap())
}

/// Injective-embedding instance with a height-2 pattern. Per variable
/// the tree stacks a positive node over a negative node; the positive
/// node carries k clause slots (labels of the positive clauses, "a"
/// filler), the negative node carries a selector leaf "s{i}" and k+1
/// slots for the negative clauses. The pattern requests, per
/// variable, a wildcard with k+1 wildcard children and the selector
/// somewhere below, which consumes one of the two stacked nodes'
/// child sets, plus one free node per clause label.
pub fn gen_inj_h2_reduction(phi: &CnfFormula) -> (Tree, Pattern) {
    let n = phi.num_vars();
    let k = phi.clause_count();
    let mut tb = TreeBuilder::new();
    let root = tb.root("a");
    for i in 1..=n {
        let xp = tb.child(root, "a");
        let xn = tb.child(xp, "a");
        tb.child(xn, &format!("s{i}"));
        let neg = clauses_with_literal(phi, -(i as i32));
        for s in 0..=k {
            let label = neg.get(s).map(|&j| clause_label(j));
            tb.child(xn, label.as_deref().unwrap_or("a"));
        }
        let pos = clauses_with_literal(phi, i as i32);
        for s in 0..k {
            let label = pos.get(s).map(|&j| clause_label(j));
            tb.child(xp, label.as_deref().unwrap_or("a"));
        }
    }
    let mut pb = PatternBuilder::new();
    let proot = pb.root(Label::Wildcard);
    for i in 1..=n {
        let g = pb.child(proot, EdgeKind::Desc, Label::Wildcard);
        pb.child(g, EdgeKind::Desc, format!("s{i}").as_str());
        for _ in 0..=k {
            pb.child(g, EdgeKind::Child, Label::Wildcard);
        }
    }
    for j in 1..=k {
        pb.child(proot, EdgeKind::Desc, clause_label(j).as_str());
    }
    (tb.finish().unwrap(), pb.finish().unwrap())
}

/// Two hubs with k+3 leaf children each, connected by a path of
/// length s; every node is labeled "a". Distinct s give trees that do
/// not embed injectively into one another, which is what makes them
/// usable as label substitutes.
pub fn gadget_t(k: usize, s: usize) -> Result<Tree, ReductionError> {
    if s == 0 {
        return Err(ReductionError::InvalidSize);
    }
    let mut tb = TreeBuilder::new();
    let top = tb.root("a");
    for _ in 0..k + 3 {
        tb.child(top, "a");
    }
    let mut cur = top;
    for _ in 0..s {
        cur = tb.child(cur, "a");
    }
    for _ in 0..k + 3 {
        tb.child(cur, "a");
    }
    Ok(tb.finish().unwrap())
}

/// Rebuild `src` with every leaf whose label maps to a gadget index
/// replaced by `gadget_t(k, index)` grafted in its place (keeping the
/// leaf's incoming edge kind), and every other label passed through
/// `plain`.
fn replace_gadget_leaves(
    src: &Pattern,
    k: usize,
    leaf_index: impl Fn(&Label) -> Option<usize>,
    plain: impl Fn(&Label) -> Label,
) -> Pattern {
    let mut b = PatternBuilder::new();
    let root = b.root(plain(src.label(src.root())));
    let mut stack = vec![(src.root(), root)];
    while let Some((s, d)) = stack.pop() {
        for &(c, kind) in src.children(s) {
            if src.degree(c) == 0 {
                if let Some(idx) = leaf_index(src.label(c)) {
                    let g = gadget_t(k, idx).expect("gadget indices start at 1");
                    b.graft(d, kind, g.as_pattern(), g.root());
                    continue;
                }
            }
            let nd = b.child(d, kind, plain(src.label(c)));
            stack.push((c, nd));
        }
    }
    b.finish().expect("rebuild preserves well-formedness")
}

/// Gadget index for the single-label variants: clause label "c{j}"
/// maps to j, selector-style labels map past the clause range.
fn indexed_label(label: &Label, selector: char, k: usize) -> Option<usize> {
    let name = label.as_symbol()?;
    let (head, digits) = name.split_at(1);
    let i: usize = digits.parse().ok()?;
    match head.chars().next() {
        Some('c') => Some(i),
        Some(c) if c == selector => Some(k + i),
        _ => None,
    }
}

fn gadgetized_inj(phi: &CnfFormula) -> (Tree, Pattern) {
    let (t, p) = gen_inj_h2_reduction(phi);
    let k = phi.clause_count();
    let leaf = |l: &Label| indexed_label(l, 's', k);
    let t2 = replace_gadget_leaves(t.as_pattern(), k, leaf, |_| Label::symbol("a"));
    let p2 = replace_gadget_leaves(&p, k, leaf, |l| l.clone());
    (Tree::from_pattern(t2).unwrap(), p2)
}

/// Single-label tree, wildcard-only pattern, injective embedding.
pub fn gen_inj_wc_reduction(phi: &CnfFormula) -> (Tree, Pattern) {
    let (t, p) = gadgetized_inj(phi);
    (t, p.map_labels(|_| Label::Wildcard))
}

/// Single-label tree, wildcard-free pattern, injective embedding.
pub fn gen_inj_nowc_reduction(phi: &CnfFormula) -> (Tree, Pattern) {
    let (t, p) = gadgetized_inj(phi);
    (t, p.map_labels(|_| Label::symbol("a")))
}

/// Intermediate step of the single-label anc instance: each variable
/// head is demoted to an "a" node whose first child is a fresh
/// "x{i}" leaf, and the pattern requests that leaf through a wildcard
/// child instead of requesting the head label directly.
pub(crate) fn anc_wc_skeleton(phi: &CnfFormula) -> (Tree, Pattern) {
    let (t0, p0) = gen_anc_reduction(phi);
    let mut tb = TreeBuilder::new();
    let root = tb.root("a");
    for &(head, _) in t0.children(t0.root()) {
        let h = tb.child(root, "a");
        tb.child(h, t0.label(head).as_symbol().unwrap());
        for &(leaf, _) in t0.children(head) {
            tb.child(h, t0.label(leaf).as_symbol().unwrap());
        }
    }
    let mut pb = PatternBuilder::new();
    let proot = pb.root(Label::Wildcard);
    for &(c, kind) in p0.children(p0.root()) {
        match kind {
            EdgeKind::Child => {
                let w = pb.child(proot, EdgeKind::Child, Label::Wildcard);
                pb.child(w, EdgeKind::Child, p0.label(c).clone());
            }
            EdgeKind::Desc => {
                pb.child(proot, EdgeKind::Desc, p0.label(c).clone());
            }
        }
    }
    (tb.finish().unwrap(), pb.finish().unwrap())
}

/// Single-label tree, wildcard-only pattern, anc embedding.
pub fn gen_anc_wc_reduction(phi: &CnfFormula) -> (Tree, Pattern) {
    let (t, p) = anc_wc_skeleton(phi);
    let k = phi.clause_count();
    let leaf = |l: &Label| indexed_label(l, 'x', k);
    let t2 = replace_gadget_leaves(t.as_pattern(), k, leaf, |_| Label::symbol("a"));
    let p2 =
        replace_gadget_leaves(&p, k, leaf, |_| Label::Wildcard).map_labels(|_| Label::Wildcard);
    (Tree::from_pattern(t2).unwrap(), p2)
}

/// Rewrite an instance whose pattern root carries only desc-edge
/// children into one whose pattern is a spine of degree at most 2:
/// the m predicates hang off a chain of m fresh labels, and the tree
/// root is replaced by the same chain over its child forest. The
/// injective-embedding verdict is preserved: spine nodes pair up
/// forcedly and consume each other, so the predicates compete for the
/// original forest exactly as before.
pub fn reduce_degree(t: &Tree, p: &Pattern) -> Result<(Tree, Pattern), ReductionError> {
    if !p.label(p.root()).matches(t.label(t.root())) {
        return Err(ReductionError::ShapeMismatch);
    }
    if p.children(p.root())
        .iter()
        .any(|&(_, kind)| kind == EdgeKind::Child)
    {
        return Err(ReductionError::ShapeMismatch);
    }
    let m = p.degree(p.root());
    if m == 0 {
        return Ok((t.clone(), p.clone()));
    }
    let taken: HashSet<&str> = p
        .node_ids()
        .filter_map(|n| p.label(n).as_symbol())
        .collect();
    let mut prefix = String::from("A");
    while (1..=m).any(|i| taken.contains(format!("{prefix}{i}").as_str())) {
        prefix.push('A');
    }
    let spine = |i: usize| format!("{prefix}{i}");

    let mut tb = TreeBuilder::new();
    let mut cur = tb.root(&spine(1));
    for i in 2..=m {
        cur = tb.child(cur, &spine(i));
    }
    for &(c, _) in t.children(t.root()) {
        tb.graft(cur, t, c);
    }

    let mut pb = PatternBuilder::new();
    let mut pcur = pb.root(spine(1).as_str());
    for (i, &(c, _)) in p.children(p.root()).iter().enumerate() {
        if i > 0 {
            pcur = pb.child(pcur, EdgeKind::Child, spine(i + 1).as_str());
        }
        pb.graft(pcur, EdgeKind::Desc, p, c);
    }
    Ok((tb.finish().unwrap(), pb.finish().unwrap()))
}
