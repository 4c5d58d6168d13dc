//! Concrete syntax: term notation for trees, an XPath-like dialect for
//! patterns, Dewey node addresses, and DIMACS CNF.
//!
//! Trees are terms: `tree := label ( '(' tree (',' tree)* ')' )?`.
//!
//! Patterns follow a small XPath-like dialect:
//!
//! ```text
//! step  := label pred* tail?
//! pred  := '[' ( './/' step | ('./')? step ) ']'
//! tail  := '//' step | '/' step
//! label := [A-Za-z0-9_]+ | '*'
//! ```
//!
//! `/` and bare or `./` predicates create child edges; `//` and `.//`
//! create descendant edges. Whitespace is insignificant between tokens.
//! Rendering is canonical: children are ordered child edges first, then
//! by canonical form, so unordered-isomorphic structures render to the
//! same string and `parse(render(x))` is isomorphic to `x`.

use crate::tree::{EdgeKind, Label, NodeId, Pattern, PatternBuilder, Tree, TreeBuilder};
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("{line}:{col}: expected {expected}")]
    Syntax {
        offset: usize,
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("{line}:{col}: '*' is not allowed as a tree label")]
    WildcardInTree {
        offset: usize,
        line: usize,
        col: usize,
    },
}

/// Byte-level cursor. The grammar is pure ASCII, so byte positions are
/// always character boundaries and arbitrary UTF-8 input stays safe.
struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Scanner<'a> {
        Scanner { text, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.text.as_bytes()[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r' | b'\n')) {
            self.bump();
        }
    }

    fn skip_line(&mut self) {
        while let Some(c) = self.peek() {
            self.bump();
            if c == b'\n' {
                break;
            }
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.bump();
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn unsigned(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(c) = self.peek() {
            if !c.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((c - b'0') as u64))
                .ok_or_else(|| self.error_at(start, "a smaller number"))?;
            self.bump();
        }
        if self.pos == start {
            Err(self.error("a number"))
        } else {
            Ok(value)
        }
    }

    fn signed(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let neg = self.peek() == Some(b'-');
        if neg {
            self.bump();
        }
        let mag = self.unsigned()?;
        if mag > i64::MAX as u64 {
            return Err(self.error_at(start, "a smaller number"));
        }
        Ok(if neg { -(mag as i64) } else { mag as i64 })
    }

    fn error(&self, expected: impl Into<String>) -> ParseError {
        self.error_at(self.pos, expected)
    }

    fn error_at(&self, offset: usize, expected: impl Into<String>) -> ParseError {
        let (line, col) = line_col(self.text, offset);
        ParseError::Syntax {
            offset,
            line,
            col,
            expected: expected.into(),
        }
    }

    fn wildcard_error(&self) -> ParseError {
        let (line, col) = line_col(self.text, self.pos);
        ParseError::WildcardInTree {
            offset: self.pos,
            line,
            col,
        }
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let prefix = &text.as_bytes()[..offset];
    let line = 1 + prefix.iter().filter(|&&b| b == b'\n').count();
    let line_start = prefix
        .iter()
        .rposition(|&b| b == b'\n')
        .map_or(0, |i| i + 1);
    let col = 1 + text[line_start..offset].chars().count();
    (line, col)
}

fn tree_label<'a>(s: &mut Scanner<'a>) -> Result<&'a str, ParseError> {
    if s.peek() == Some(b'*') {
        return Err(s.wildcard_error());
    }
    s.ident().ok_or_else(|| s.error("a label"))
}

pub fn parse_tree(text: &str) -> Result<Tree, ParseError> {
    let mut s = Scanner::new(text);
    let mut b = TreeBuilder::new();
    s.skip_ws();
    let mut cur = b.root(tree_label(&mut s)?);
    let mut parents: Vec<NodeId> = Vec::new();
    // A '(' may only follow a freshly read label, not a closed ')'.
    let mut can_open = true;
    loop {
        s.skip_ws();
        match s.peek() {
            None => break,
            Some(b'(') if can_open => {
                s.bump();
                parents.push(cur);
                s.skip_ws();
                cur = b.child(*parents.last().unwrap(), tree_label(&mut s)?);
                can_open = true;
            }
            Some(b',') if !parents.is_empty() => {
                s.bump();
                s.skip_ws();
                cur = b.child(*parents.last().unwrap(), tree_label(&mut s)?);
                can_open = true;
            }
            Some(b')') if !parents.is_empty() => {
                s.bump();
                cur = parents.pop().unwrap();
                can_open = false;
            }
            Some(_) => {
                let expected = match (parents.is_empty(), can_open) {
                    (true, true) => "'(' or end of input",
                    (true, false) => "end of input",
                    (false, true) => "'(', ',' or ')'",
                    (false, false) => "',' or ')'",
                };
                return Err(s.error(expected));
            }
        }
    }
    if !parents.is_empty() {
        return Err(s.error("')'"));
    }
    Ok(b.finish().expect("parser emits valid trees"))
}

fn pattern_label(s: &mut Scanner<'_>) -> Result<Label, ParseError> {
    if s.peek() == Some(b'*') {
        s.bump();
        return Ok(Label::Wildcard);
    }
    s.ident()
        .map(Label::symbol)
        .ok_or_else(|| s.error("a label or '*'"))
}

pub fn parse_pattern(text: &str) -> Result<Pattern, ParseError> {
    let mut s = Scanner::new(text);
    let mut b = PatternBuilder::new();
    s.skip_ws();
    let mut cur = b.root(pattern_label(&mut s)?);
    // Nodes whose '[' is still open; ']' returns to them. A tail step
    // moves `cur` without pushing, which ends the previous step.
    let mut open_preds: Vec<NodeId> = Vec::new();
    loop {
        s.skip_ws();
        match s.peek() {
            None => break,
            Some(b'[') => {
                s.bump();
                s.skip_ws();
                let kind = if s.eat(".//") {
                    EdgeKind::Desc
                } else {
                    s.eat("./");
                    EdgeKind::Child
                };
                s.skip_ws();
                open_preds.push(cur);
                let label = pattern_label(&mut s)?;
                cur = b.child(cur, kind, label);
            }
            Some(b']') if !open_preds.is_empty() => {
                s.bump();
                cur = open_preds.pop().unwrap();
            }
            Some(b'/') => {
                let kind = if s.eat("//") {
                    EdgeKind::Desc
                } else {
                    s.bump();
                    EdgeKind::Child
                };
                s.skip_ws();
                let label = pattern_label(&mut s)?;
                cur = b.child(cur, kind, label);
            }
            Some(_) => {
                let expected = if open_preds.is_empty() {
                    "'[', '/', '//' or end of input"
                } else {
                    "'[', '/', '//' or ']'"
                };
                return Err(s.error(expected));
            }
        }
    }
    if !open_preds.is_empty() {
        return Err(s.error("']'"));
    }
    Ok(b.finish().expect("parser emits valid patterns"))
}

enum Tok {
    Node(NodeId),
    Lit(&'static str),
}

pub fn render_tree(t: &Tree) -> String {
    let keys = t.as_pattern().node_canonical_keys();
    let mut out = String::new();
    let mut stack = vec![Tok::Node(t.root())];
    while let Some(tok) = stack.pop() {
        match tok {
            Tok::Lit(s) => out.push_str(s),
            Tok::Node(n) => {
                write!(out, "{}", t.label(n)).unwrap();
                let kids = t.as_pattern().children_canonical(n, &keys);
                if kids.is_empty() {
                    continue;
                }
                out.push('(');
                stack.push(Tok::Lit(")"));
                for (i, &(c, _)) in kids.iter().enumerate().rev() {
                    stack.push(Tok::Node(c));
                    if i > 0 {
                        stack.push(Tok::Lit(","));
                    }
                }
            }
        }
    }
    out
}

pub fn render_pattern(p: &Pattern) -> String {
    let keys = p.node_canonical_keys();
    let mut out = String::new();
    let mut stack = vec![Tok::Node(p.root())];
    while let Some(tok) = stack.pop() {
        match tok {
            Tok::Lit(s) => out.push_str(s),
            Tok::Node(n) => {
                write!(out, "{}", p.label(n)).unwrap();
                let kids = p.children_canonical(n, &keys);
                let Some((&(tail, tail_kind), preds)) = kids.split_last() else {
                    continue;
                };
                stack.push(Tok::Node(tail));
                stack.push(Tok::Lit(match tail_kind {
                    EdgeKind::Child => "/",
                    EdgeKind::Desc => "//",
                }));
                for &(c, kind) in preds.iter().rev() {
                    stack.push(Tok::Lit("]"));
                    stack.push(Tok::Node(c));
                    stack.push(Tok::Lit(match kind {
                        EdgeKind::Child => "[",
                        EdgeKind::Desc => "[.//",
                    }));
                }
            }
        }
    }
    out
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_tree(self))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_pattern(self))
    }
}

impl FromStr for Tree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Tree, ParseError> {
        parse_tree(s)
    }
}

impl FromStr for Pattern {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Pattern, ParseError> {
        parse_pattern(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("literal 0 cannot appear inside a clause")]
    ZeroLiteral,
    #[error("literal {literal} references a variable beyond {num_vars}")]
    OutOfRange { literal: i32, num_vars: u32 },
}

/// A CNF formula as signed variable indices, 1-based.
///
/// Clauses may be empty; an empty clause is unsatisfiable. Variables
/// need not all occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Vec<i32>>) -> Result<CnfFormula, CnfError> {
        for clause in &clauses {
            for &lit in clause {
                if lit == 0 {
                    return Err(CnfError::ZeroLiteral);
                }
                if lit.unsigned_abs() > num_vars {
                    return Err(CnfError::OutOfRange {
                        literal: lit,
                        num_vars,
                    });
                }
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                write!(out, "{lit} ").unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Parse DIMACS CNF: 'c' comment lines, a "p cnf V C" header, then
/// whitespace-separated literals with '0' ending each clause. The
/// clause count must match the header exactly.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    let mut s = Scanner::new(text);
    loop {
        s.skip_ws();
        if s.peek() == Some(b'c') {
            s.skip_line();
        } else {
            break;
        }
    }
    if !s.eat("p") {
        return Err(s.error("a 'p cnf V C' header or a 'c' comment"));
    }
    s.skip_ws();
    if !s.eat("cnf") {
        return Err(s.error("'cnf'"));
    }
    s.skip_ws();
    let vars_offset = s.pos;
    let num_vars = s.unsigned()?;
    if num_vars > i32::MAX as u64 {
        return Err(s.error_at(vars_offset, "at most 2147483647 variables"));
    }
    let num_vars = num_vars as u32;
    s.skip_ws();
    let num_clauses = s.unsigned()?;

    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut in_clause = false;
    loop {
        s.skip_ws();
        match s.peek() {
            None => break,
            Some(b'c') => {
                s.skip_line();
            }
            Some(_) => {
                let offset = s.pos;
                let lit = s.signed()?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut current));
                    in_clause = false;
                } else {
                    if lit.unsigned_abs() > num_vars as u64 {
                        return Err(
                            s.error_at(offset, format!("a literal within \u{b1}{num_vars}"))
                        );
                    }
                    current.push(lit as i32);
                    in_clause = true;
                }
            }
        }
    }
    if in_clause {
        return Err(s.error("'0' ending the last clause"));
    }
    if clauses.len() as u64 != num_clauses {
        return Err(s.error(format!(
            "{num_clauses} clauses as declared in the header, found {}",
            clauses.len()
        )));
    }
    Ok(CnfFormula::new(num_vars, clauses).expect("literals checked during parsing"))
}

/// Root-to-node address: the sequence of 0-based child indices in
/// stored child order. Empty addresses the root; displays as ε.
///
/// Lexicographic order on paths equals preorder on nodes, which the
/// searches rely on for deterministic witnesses.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeweyPath {
    indices: Vec<u32>,
}

impl DeweyPath {
    pub fn root() -> DeweyPath {
        DeweyPath::default()
    }

    pub fn from_indices(indices: Vec<u32>) -> DeweyPath {
        DeweyPath { indices }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn is_root(&self) -> bool {
        self.indices.is_empty()
    }

    /// Inverse of `Display`: "ε" or dot-joined indices.
    pub fn parse(text: &str) -> Option<DeweyPath> {
        if text == "\u{3b5}" {
            return Some(DeweyPath::root());
        }
        let indices = text
            .split('.')
            .map(|part| part.parse::<u32>().ok())
            .collect::<Option<Vec<u32>>>()?;
        Some(DeweyPath { indices })
    }
}

impl fmt::Display for DeweyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return f.write_str("\u{3b5}");
        }
        for (i, ix) in self.indices.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{ix}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DeweyPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("path {path} does not address a node")]
pub struct InvalidPath {
    pub path: DeweyPath,
}

pub fn dewey_of(s: &Pattern, n: NodeId) -> DeweyPath {
    let mut indices = Vec::new();
    let mut cur = n;
    while let Some((parent, _)) = s.parent(cur) {
        let pos = s
            .children(parent)
            .iter()
            .position(|&(c, _)| c == cur)
            .expect("node listed under its parent");
        indices.push(pos as u32);
        cur = parent;
    }
    indices.reverse();
    DeweyPath { indices }
}

pub fn node_at(s: &Pattern, path: &DeweyPath) -> Result<NodeId, InvalidPath> {
    let mut cur = s.root();
    for &ix in path.indices() {
        match s.children(cur).get(ix as usize) {
            Some(&(child, _)) => cur = child,
            None => return Err(InvalidPath { path: path.clone() }),
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_four_node_chain() {
        let t = parse_tree("f(a(b(c)))").unwrap();
        assert_eq!(t.node_count(), 4);
        assert!(t.is_path());
        assert_eq!(t.height(), 3);
        let names: Vec<_> = t
            .preorder()
            .iter()
            .map(|&n| t.label(n).as_symbol().unwrap().to_string())
            .collect();
        assert_eq!(names, ["f", "a", "b", "c"]);
    }

    #[test]
    fn parses_single_node_tree() {
        let t = parse_tree("r").unwrap();
        assert_eq!(t.node_count(), 1);
        assert_eq!(t.label(t.root()).as_symbol(), Some("r"));
    }

    #[test]
    fn parses_branching_tree() {
        let t = parse_tree("f(a(g(b,b(c))))").unwrap();
        assert_eq!(t.node_count(), 6);
        assert_eq!(t.max_degree(), 2);
        let a = t.children(t.root())[0].0;
        let g = t.children(a)[0].0;
        assert_eq!(t.label(g).as_symbol(), Some("g"));
        assert_eq!(t.degree(g), 2);
    }

    #[test]
    fn parses_mixed_edge_pattern() {
        let p = parse_pattern("f/a[.//b/c]//b").unwrap();
        assert_eq!(p.node_count(), 5);
        assert_eq!(p.desc_edge_count(), 2);
        assert!(!p.has_wildcards());
        assert_eq!(p.height(), 3);
        assert_eq!(p.max_degree(), 2);
        let (a, kind) = p.children(p.root())[0];
        assert_eq!(kind, EdgeKind::Child);
        assert_eq!(p.label(a).as_symbol(), Some("a"));
        let kids = p.children(a);
        assert_eq!(kids.len(), 2);
        assert!(kids.iter().all(|&(_, k)| k == EdgeKind::Desc));
        // Predicate subtree b/c appears before the tail b in stored order.
        let (b_chain, _) = kids[0];
        assert_eq!(p.subtree_size(b_chain), 2);
        let (b_tail, _) = kids[1];
        assert_eq!(p.subtree_size(b_tail), 1);
    }

    #[test]
    fn parses_wildcard_pattern() {
        let p = parse_pattern("*").unwrap();
        assert_eq!(p.node_count(), 1);
        assert!(p.label(p.root()).is_wildcard());
    }

    #[test]
    fn parses_degree_six_root() {
        let p = parse_pattern("r[x1][x2][x3][.//c1][.//c2][.//c3]").unwrap();
        assert_eq!(p.node_count(), 7);
        assert_eq!(p.degree(p.root()), 6);
        let child_edges = p
            .children(p.root())
            .iter()
            .filter(|&&(_, k)| k == EdgeKind::Child)
            .count();
        assert_eq!(child_edges, 3);
        assert_eq!(p.desc_edge_count(), 3);
        assert_eq!(p.height(), 1);
    }

    #[test]
    fn dot_slash_predicate_is_child_edge() {
        let bare = parse_pattern("a[b]").unwrap();
        let dotted = parse_pattern("a[./b]").unwrap();
        assert!(bare.isomorphic(&dotted));
        assert_eq!(bare.children(bare.root())[0].1, EdgeKind::Child);
    }

    #[test]
    fn whitespace_is_insignificant() {
        let t = parse_tree(" f ( a , b ) ").unwrap();
        assert_eq!(t.node_count(), 3);
        let p = parse_pattern(" f / a [ .//b ] // c ").unwrap();
        assert_eq!(p.node_count(), 4);
    }

    #[test]
    fn renders_single_node() {
        assert_eq!(render_tree(&parse_tree("a").unwrap()), "a");
        assert_eq!(render_pattern(&parse_pattern("a").unwrap()), "a");
    }

    #[test]
    fn renders_canonically() {
        let p = parse_pattern("f/a[.//b/c]//b").unwrap();
        assert_eq!(render_pattern(&p), "f/a[.//b]//b/c");
        let t = parse_tree("f(a(g(b(c),b)))").unwrap();
        assert_eq!(render_tree(&t), "f(a(g(b,b(c))))");
    }

    #[test]
    fn canonical_render_is_order_independent() {
        let a = parse_tree("g(b(x,y),c)").unwrap();
        let b = parse_tree("g(c,b(y,x))").unwrap();
        assert_eq!(render_tree(&a), render_tree(&b));
    }

    #[test]
    fn round_trips_through_render() {
        for text in [
            "f/a[.//b/c]//b",
            "r[x1][x2][x3][.//c1][.//c2][.//c3]",
            "*",
            "a[*][./b]//c[.//d]/e",
            "x1/*/*/*",
        ] {
            let p = parse_pattern(text).unwrap();
            let again = parse_pattern(&render_pattern(&p)).unwrap();
            assert!(p.isomorphic(&again), "{text}");
        }
        for text in ["a", "f(a(b(c)))", "f(a(g(b,b(c))),e(d,d),h)"] {
            let t = parse_tree(text).unwrap();
            let again = parse_tree(&render_tree(&t)).unwrap();
            assert!(t.as_pattern().isomorphic(again.as_pattern()), "{text}");
        }
    }

    #[test]
    fn rejects_wildcard_in_tree_with_position() {
        match parse_tree("f(*)") {
            Err(ParseError::WildcardInTree { offset, line, col }) => {
                assert_eq!((offset, line, col), (2, 1, 3));
            }
            other => panic!("expected WildcardInTree, got {other:?}"),
        }
        assert!(matches!(
            parse_tree("*"),
            Err(ParseError::WildcardInTree { offset: 0, .. })
        ));
    }

    #[test]
    fn tree_syntax_errors_carry_positions() {
        match parse_tree("f(") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected Syntax, got {other:?}"),
        }
        assert!(parse_tree("").is_err());
        assert!(parse_tree("f()").is_err());
        assert!(parse_tree("f(a,,b)").is_err());
        assert!(parse_tree("f(a))").is_err());
        assert!(parse_tree("f a").is_err());
        assert!(parse_tree("f(a)(b)").is_err());
        assert!(parse_tree("\u{e9}").is_err());
    }

    #[test]
    fn pattern_syntax_errors() {
        assert!(parse_pattern("").is_err());
        assert!(parse_pattern("a[").is_err());
        assert!(parse_pattern("a[]").is_err());
        assert!(parse_pattern("a]").is_err());
        assert!(parse_pattern("a/").is_err());
        assert!(parse_pattern("a//").is_err());
        assert!(parse_pattern("a b").is_err());
        assert!(parse_pattern("a[.b]").is_err());
        assert!(parse_pattern("/a").is_err());
    }

    #[test]
    fn parses_three_clause_dimacs() {
        let f = parse_dimacs("p cnf 3 3\n1 -3 0\n1 -2 3 0\n-1 -2 0").unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.clauses(), &[vec![1, -3], vec![1, -2, 3], vec![-1, -2]]);
    }

    #[test]
    fn dimacs_allows_comments_and_line_breaks() {
        let f = parse_dimacs("c intro\np cnf 2 2\n1\n2 0\nc between\n-1 -2 0\n").unwrap();
        assert_eq!(f.clauses(), &[vec![1, 2], vec![-1, -2]]);
    }

    #[test]
    fn dimacs_round_trips() {
        let f = parse_dimacs("p cnf 3 3\n1 -3 0\n1 -2 3 0\n-1 -2 0").unwrap();
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }

    #[test]
    fn dimacs_errors() {
        assert!(parse_dimacs("").is_err());
        assert!(parse_dimacs("hello").is_err());
        assert!(parse_dimacs("p cnf x 1\n1 0").is_err());
        // Literal beyond the declared variable count.
        assert!(parse_dimacs("p cnf 2 1\n1 -3 0").is_err());
        // Fewer and more clauses than declared.
        assert!(parse_dimacs("p cnf 2 2\n1 0").is_err());
        assert!(parse_dimacs("p cnf 1 1\n1 0 -1 0").is_err());
        // Missing final terminator.
        assert!(parse_dimacs("p cnf 1 1\n1").is_err());
    }

    #[test]
    fn dimacs_accepts_empty_clause() {
        let f = parse_dimacs("p cnf 2 2\n1 0\n0").unwrap();
        assert_eq!(f.clauses(), &[vec![1], vec![]]);
    }

    #[test]
    fn cnf_formula_validates_literals() {
        assert!(CnfFormula::new(2, vec![vec![1, -2]]).is_ok());
        assert_eq!(
            CnfFormula::new(2, vec![vec![0]]),
            Err(CnfError::ZeroLiteral)
        );
        assert_eq!(
            CnfFormula::new(2, vec![vec![3]]),
            Err(CnfError::OutOfRange {
                literal: 3,
                num_vars: 2
            })
        );
    }

    #[test]
    fn dewey_round_trips_every_node() {
        let t = parse_tree("f(a(g(b,b(c)),d),e(d))").unwrap();
        for n in t.node_ids() {
            let path = dewey_of(&t, n);
            assert_eq!(node_at(&t, &path).unwrap(), n);
        }
        assert!(dewey_of(&t, t.root()).is_root());
    }

    #[test]
    fn dewey_displays_and_parses() {
        let t = parse_tree("f(a(g(b,b(c)),d),e(d))").unwrap();
        let rendered: Vec<String> = t
            .preorder()
            .iter()
            .map(|&n| dewey_of(&t, n).to_string())
            .collect();
        assert_eq!(
            rendered,
            ["\u{3b5}", "0", "0.0", "0.0.0", "0.0.1", "0.0.1.0", "0.1", "1", "1.0"]
        );
        for text in &rendered {
            let path = DeweyPath::parse(text).unwrap();
            assert!(node_at(&t, &path).is_ok());
        }
        assert_eq!(DeweyPath::parse("1.x"), None);
    }

    #[test]
    fn dewey_order_equals_preorder() {
        let t = parse_tree("f(a(g(b,b(c)),d),e(d))").unwrap();
        let mut by_dewey: Vec<NodeId> = t.node_ids().collect();
        by_dewey.sort_by_key(|&n| dewey_of(&t, n));
        assert_eq!(by_dewey.as_slice(), t.preorder());
    }

    #[test]
    fn node_at_rejects_bad_paths() {
        let t = parse_tree("f(a,b)").unwrap();
        let bad = DeweyPath::from_indices(vec![2]);
        assert!(node_at(&t, &bad).is_err());
        let deep = DeweyPath::from_indices(vec![0, 0]);
        assert!(node_at(&t, &deep).is_err());
    }
}
