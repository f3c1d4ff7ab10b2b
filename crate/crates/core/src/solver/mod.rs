//! Exact search and construction procedures.
//!
//! * [`find_st_matching`]: backtracking search for an `(s, t)`-matching, i.e.
//!   an edge set in which every left vertex has exactly `s` edges and every
//!   component is a tree with at most `t` edges.
//! * [`find_k_star_covering`]: builds a covering of all vertices by stars with
//!   at most `k` edges, or reports that the double-sided `1/k` condition fails.
//! * [`critical_link_augment`]: greedy growth of a forest set on a tree under
//!   the critical link property.
//!
//! Each construction has an independent verifier that never shares code with
//! the search that produced the certificate.

use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteGraph, Component, GraphError};
use crate::conditions::ConditionError;

mod critical_link;
mod st_matching;
mod star_cover;

pub use critical_link::{
    check_critical_link_property, critical_link_augment, critical_link_augment_observed,
    CriticalLinkState, LinkViolation,
};
pub use st_matching::{find_st_matching, verify_st_matching, StRejection, StSearch};
pub use star_cover::{
    find_k_star_covering, find_k_star_covering_observed, verify_k_star_covering, StarRejection,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Condition(#[from] ConditionError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

/// A candidate `(s, t)`-matching or `k`-star covering: the chosen edges and the
/// components of `(U, V, F)` that carry at least one edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestCover {
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<Component>,
}

impl ForestCover {
    pub fn from_edges(
        graph: &BipartiteGraph,
        mut edges: Vec<(usize, usize)>,
    ) -> Result<Self, GraphError> {
        edges.sort_unstable();
        let sub = graph.spanning_subgraph(&edges)?;
        let components = sub
            .components()
            .into_iter()
            .filter(|c| c.edge_count > 0)
            .collect();
        Ok(ForestCover { edges, components })
    }
}
