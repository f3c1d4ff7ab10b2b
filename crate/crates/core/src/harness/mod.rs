//! Desk-scale verification: graph enumeration, exhaustive reference
//! searches, theorem campaigns over enumerated graphs, and randomized
//! property suites.
//!
//! Every campaign produces a [`CampaignReport`]. Work fans out over a rayon
//! pool in fixed-size chunks and the per-graph outcomes are folded in stream
//! order, so the report does not depend on the worker count.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteGraph, GraphError};
use crate::conditions::ConditionError;
use crate::gadgets::GadgetError;
use crate::solver::SolverError;

mod campaigns;
mod enumerate;
mod exhaustive;
mod properties;

pub use campaigns::{
    verify_prop_counter, verify_star_cover_theorem, verify_theorem_main, verify_tree_lemma,
    TheoremMainConfig, DEFAULT_BUDGET,
};
pub use enumerate::{enumerate_bipartite, Dedup, EnumerationBounds, GraphStream, DEFAULT_EDGE_CAP};
pub use exhaustive::{exhaustive_k_star_covering, exhaustive_st_matching, MAX_SUBSET_EDGES};
pub use properties::{property_suite, PropertyConfig};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("enumeration bounds: {0}")]
    Bounds(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("worker pool: {0}")]
    Pool(String),
}

/// One recorded instance: the graph plus whatever certificate or explanation
/// applies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub graph: BipartiteGraph,
    pub detail: serde_json::Value,
}

impl Finding {
    pub fn new(graph: &BipartiteGraph, detail: serde_json::Value) -> Self {
        Finding {
            graph: graph.clone(),
            detail,
        }
    }
}

/// Result of a campaign. It passes iff `counterexamples` is empty; it is
/// conclusive iff `inconclusive` is empty as well.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub campaign: String,
    pub graphs_examined: u64,
    /// Instances that met the campaign's hypothesis (condition holders,
    /// qualifying graphs, applicable samples).
    pub condition_holders: u64,
    pub skipped: u64,
    /// Applicable instance counts per individual check.
    pub checks: BTreeMap<String, u64>,
    pub counterexamples: Vec<Finding>,
    pub inconclusive: Vec<Finding>,
    pub elapsed_ms: u64,
}

impl CampaignReport {
    pub fn new(campaign: impl Into<String>) -> Self {
        CampaignReport {
            campaign: campaign.into(),
            graphs_examined: 0,
            condition_holders: 0,
            skipped: 0,
            checks: BTreeMap::new(),
            counterexamples: Vec::new(),
            inconclusive: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn conclusive(&self) -> bool {
        self.inconclusive.is_empty()
    }

    /// The report with timing zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Self {
        CampaignReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }

    pub fn count(&self, check: &str) -> u64 {
        self.checks.get(check).copied().unwrap_or(0)
    }

    fn absorb(&mut self, outcome: Outcome) {
        if outcome.skipped {
            self.skipped += 1;
            return;
        }
        self.graphs_examined += 1;
        self.condition_holders += u64::from(outcome.holder);
        for (name, n) in outcome.checks {
            *self.checks.entry(name.to_string()).or_default() += n;
        }
        self.counterexamples.extend(outcome.counterexamples);
        self.inconclusive.extend(outcome.inconclusive);
    }
}

/// What one instance contributed to a report.
#[derive(Debug, Default)]
struct Outcome {
    skipped: bool,
    holder: bool,
    checks: Vec<(&'static str, u64)>,
    counterexamples: Vec<Finding>,
    inconclusive: Vec<Finding>,
}

impl Outcome {
    fn skipped() -> Self {
        Outcome {
            skipped: true,
            ..Outcome::default()
        }
    }

    fn check(&mut self, name: &'static str) {
        self.checks.push((name, 1));
    }

    fn fail(&mut self, graph: &BipartiteGraph, detail: serde_json::Value) {
        self.counterexamples.push(Finding::new(graph, detail));
    }

    /// An error inside a per-instance pipeline is a defect, never a pass.
    fn from_error(graph: &BipartiteGraph, error: impl std::fmt::Display) -> Self {
        let mut outcome = Outcome::default();
        outcome.fail(graph, serde_json::json!({ "error": error.to_string() }));
        outcome
    }
}

const CHUNK: usize = 2048;

fn pool(workers: usize) -> Result<rayon::ThreadPool, HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))
}

/// Maps `process` over `items` on `workers` threads (0 = rayon default) and
/// folds the outcomes in input order.
fn run<I, X, F>(name: &str, workers: usize, items: I, process: F) -> Result<CampaignReport, HarnessError>
where
    I: Iterator<Item = X>,
    X: Send,
    F: Fn(X) -> Outcome + Sync,
{
    let start = Instant::now();
    let pool = pool(workers)?;
    let mut report = CampaignReport::new(name);
    let mut items = items.peekable();
    while items.peek().is_some() {
        let chunk: Vec<X> = items.by_ref().take(CHUNK).collect();
        let outcomes: Vec<Outcome> = pool.install(|| chunk.into_par_iter().map(&process).collect());
        for outcome in outcomes {
            report.absorb(outcome);
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
