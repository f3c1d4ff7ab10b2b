use serde::{Deserialize, Serialize};

use super::SolverError;
use crate::bigraph::{BipartiteGraph, GraphError, Side, VertexSet};

/// Working sets of the augmentation: the forest set `F`, pending candidates
/// `Z`, deferred candidates `η`, and `W = {v ∈ V : |Γ(v)∖F| ≥ 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalLinkState {
    #[serde(rename = "F")]
    pub forest: VertexSet,
    #[serde(rename = "Z")]
    pub candidates: VertexSet,
    #[serde(rename = "eta")]
    pub deferred: VertexSet,
    #[serde(rename = "W")]
    pub w: VertexSet,
    pub iterations: usize,
}

impl CriticalLinkState {
    fn new(graph: &BipartiteGraph, forest: Vec<usize>, candidates: Vec<usize>) -> Self {
        let mut state = CriticalLinkState {
            forest: VertexSet::from_indices(Side::Left, forest),
            candidates: VertexSet::from_indices(Side::Left, candidates),
            deferred: VertexSet::empty(Side::Left),
            w: VertexSet::empty(Side::Right),
            iterations: 0,
        };
        state.refresh_w(graph);
        state
    }

    fn refresh_w(&mut self, graph: &BipartiteGraph) {
        let w = (0..graph.v_count()).filter(|&v| {
            graph
                .neighbors_right(v)
                .iter()
                .filter(|&&u| !self.forest.contains(u))
                .count()
                >= 2
        });
        self.w = VertexSet::from_indices(Side::Right, w);
    }
}

/// Runs the augmentation with no observer.
pub fn critical_link_augment(
    graph: &BipartiteGraph,
    h: usize,
) -> Result<CriticalLinkState, SolverError> {
    critical_link_augment_observed(graph, h, |_| {})
}

/// Grows `F ⊆ U_h` on a tree whose left degrees are all at least `h`.
///
/// Starts from the vertices of degree `h` with exactly `h − 1` leaf
/// neighbours; the other degree-`h` vertices form `Z`. Repeatedly takes the
/// smallest `u ∈ Z`: if `|Γ(u) ∩ Γ(U∖(F ∪ {u}))| = 1`, `u` joins `F` and the
/// deferred set returns to `Z`, otherwise `u` is deferred. `observer` sees
/// the state after every iteration.
pub fn critical_link_augment_observed<O>(
    graph: &BipartiteGraph,
    h: usize,
    mut observer: O,
) -> Result<CriticalLinkState, SolverError>
where
    O: FnMut(&CriticalLinkState),
{
    if h == 0 {
        return Err(SolverError::InvalidParams("h must be at least 1".into()));
    }
    if !graph.is_tree() {
        return Err(SolverError::Precondition("graph is not a tree".into()));
    }
    if let Some(u) = (0..graph.u_count()).find(|&u| graph.degree_left(u) < h) {
        return Err(SolverError::Precondition(format!(
            "left vertex {u} has degree {} < h = {h}",
            graph.degree_left(u)
        )));
    }

    let degree_h: Vec<usize> = (0..graph.u_count())
        .filter(|&u| graph.degree_left(u) == h)
        .collect();
    let (forest, candidates): (Vec<usize>, Vec<usize>) =
        degree_h.iter().partition(|&&u| {
            let leaves = graph
                .neighbors_left(u)
                .iter()
                .filter(|&&v| graph.degree_right(v) == 1)
                .count();
            leaves == h - 1
        });
    let mut state = CriticalLinkState::new(graph, forest, candidates);

    let mut in_forest = vec![false; graph.u_count()];
    for u in state.forest.iter() {
        in_forest[u] = true;
    }
    let mut zset: Vec<usize> = state.candidates.members().to_vec();
    let mut eta: Vec<usize> = Vec::new();
    // how many vertices of U∖F each right vertex sees
    let mut outside: Vec<usize> = (0..graph.v_count())
        .map(|v| {
            graph
                .neighbors_right(v)
                .iter()
                .filter(|&&u| !in_forest[u])
                .count()
        })
        .collect();

    while !zset.is_empty() {
        let u = zset.remove(0);
        // v ∈ Γ(U∖(F ∪ {u})) iff some vertex other than u outside F sees v
        let links = graph
            .neighbors_left(u)
            .iter()
            .filter(|&&v| outside[v] >= 2)
            .count();
        if links == 1 {
            in_forest[u] = true;
            for &v in graph.neighbors_left(u) {
                outside[v] -= 1;
            }
            zset.append(&mut eta);
            zset.sort_unstable();
        } else {
            eta.push(u);
        }
        state.iterations += 1;
        state.forest = VertexSet::from_indices(Side::Left, (0..graph.u_count()).filter(|&x| in_forest[x]));
        state.candidates = VertexSet::from_indices(Side::Left, zset.iter().copied());
        state.deferred = VertexSet::from_indices(Side::Left, eta.iter().copied());
        state.refresh_w(graph);
        observer(&state);
    }
    Ok(state)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum LinkViolation {
    #[error("invalid forest set: {message}")]
    InvalidSet { message: String },
    #[error("component with left {left:?} and right {right:?} has {links} link vertices")]
    Component {
        left: Vec<usize>,
        right: Vec<usize>,
        links: usize,
    },
}

/// Each component of `G[F ∪ Γ(F)]` must contain exactly one vertex of
/// `Γ(U∖F)`. Reports the first component (by smallest left vertex) that
/// does not.
pub fn check_critical_link_property(
    graph: &BipartiteGraph,
    forest: &VertexSet,
) -> Result<(), LinkViolation> {
    let invalid = |e: GraphError| LinkViolation::InvalidSet {
        message: e.to_string(),
    };
    if forest.side() != Side::Left {
        return Err(invalid(GraphError::WrongSide {
            expected: Side::Left,
            found: forest.side(),
        }));
    }
    let gamma = graph.neighborhood(forest).map_err(invalid)?;
    let rest = VertexSet::all(graph, Side::Left).difference(forest);
    let links = graph.neighborhood(&rest).map_err(invalid)?;
    let (sub, maps) = graph.induced_subgraph(forest, &gamma).map_err(invalid)?;
    for component in sub.components() {
        let left: Vec<usize> = component
            .left
            .iter()
            .map(|&x| maps.left_new_to_old[x])
            .collect();
        let right: Vec<usize> = component
            .right
            .iter()
            .map(|&y| maps.right_new_to_old[y])
            .collect();
        let count = right.iter().filter(|&&v| links.contains(v)).count();
        if count != 1 {
            return Err(LinkViolation::Component {
                left,
                right,
                links: count,
            });
        }
    }
    Ok(())
}
