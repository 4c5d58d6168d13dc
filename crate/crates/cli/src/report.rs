//! The JSON report emitted by `check`. One object per instance; batch
//! mode adds the source paths so lines stay self-describing.

use serde::Serialize;
use treembed_core::text::dewey_of;
use treembed_core::{CheckResult, EmbeddingKind, Pattern, Tree};

#[derive(Serialize)]
pub struct WitnessPair {
    pub pattern: String,
    pub tree: String,
}

#[derive(Serialize)]
pub struct RunReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    pub verdict: &'static str,
    pub kind: &'static str,
    pub algorithm: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessPair>>,
    pub stats: ReportStats,
}

#[derive(Serialize)]
pub struct ReportStats {
    pub nodes_explored: u64,
    pub elapsed_ms: u128,
}

pub fn build(
    kind: EmbeddingKind,
    t: &Tree,
    p: &Pattern,
    res: &CheckResult,
    want_witness: bool,
    paths: Option<(&str, &str)>,
) -> RunReport {
    let witness = if want_witness {
        res.witness.as_ref().map(|h| {
            p.preorder()
                .iter()
                .map(|&m| WitnessPair {
                    pattern: dewey_of(p, m).to_string(),
                    tree: dewey_of(t, h.image(m)).to_string(),
                })
                .collect()
        })
    } else {
        None
    };
    RunReport {
        tree: paths.map(|(t, _)| t.to_string()),
        pattern: paths.map(|(_, p)| p.to_string()),
        verdict: res.verdict.as_str(),
        kind: kind.as_str(),
        algorithm: res.algorithm.as_str(),
        witness,
        stats: ReportStats {
            nodes_explored: res.stats.nodes_explored,
            elapsed_ms: res.stats.elapsed.as_millis(),
        },
    }
}
