//! Deciders for embedding unordered tree patterns into trees.
//!
//! A pattern maps into a tree through a function that sends the pattern
//! root to the tree root, child edges to child edges, descendant edges
//! to proper descendants, and each non-wildcard label to an equal label.
//! Four embedding kinds refine this, weakest to strongest:
//!
//! * `std`: no further requirement,
//! * `inj`: the mapping is injective,
//! * `anc`: ancestorship is preserved and reflected,
//! * `lca`: lowest common ancestors are preserved.
//!
//! [`oracle`] holds the shared vocabulary (kinds, verdicts, witnesses),
//! an exhaustive reference decider, and the witness verifier. [`poly`]
//! has the fast deciders and the dispatcher, [`solver`] the exact
//! backtracking search for the hard kinds, [`reductions`] the
//! formula-to-instance constructions, and [`text`] the concrete syntax.
//! [`enumerate`], [`random`], and [`suite`] generate instances and run
//! the cross-checking suites built from them.

pub mod enumerate;
pub mod matching;
pub mod oracle;
pub mod poly;
pub mod random;
pub mod reductions;
pub mod solver;
pub mod suite;
pub mod text;
pub mod tree;

pub use oracle::{Algorithm, CheckResult, Embedding, EmbeddingKind, SearchStats, Verdict};
pub use text::{CnfFormula, DeweyPath};
pub use tree::{EdgeKind, Label, NodeId, Pattern, Tree};
