use serde::{Deserialize, Serialize};

use super::{ForestCover, SolverError};
use crate::bigraph::{BipartiteGraph, Side, VertexSet};
use crate::conditions::{check_double_sided, f_report};
use crate::flow::FlowNetwork;
use crate::Rational;

/// Builds a `k`-star covering of `graph`, or returns `None` when the
/// double-sided `1/k` condition fails (in which case none exists).
pub fn find_k_star_covering(
    graph: &BipartiteGraph,
    k: usize,
) -> Result<Option<ForestCover>, SolverError> {
    find_k_star_covering_observed(graph, k, |_| {})
}

/// As [`find_k_star_covering`], calling `observer` with the current working
/// graph after every edge deletion. Each observed graph satisfies the
/// double-sided `1/k` condition.
///
/// Procedure: delete edges greedily while the condition survives. If what
/// remains still has an edge `uv` with both ends of degree ≥ 2, that edge is
/// critical, so some set `S ∋ u` (on one side) has `h(S) < 1` with `v` owned
/// by `u` alone; `T = S∖u` is then tight, `h(T) = 0`. `G[T ∪ Γ(T)]` is covered
/// by stars of exactly `k` edges centred in `Γ(T)` via a capacity-`k`
/// matching, and the rest `G[(U∖T) ∪ (V∖Γ(T))]` again satisfies the condition
/// and is handled recursively. Otherwise every component is already a star.
pub fn find_k_star_covering_observed<F>(
    graph: &BipartiteGraph,
    k: usize,
    mut observer: F,
) -> Result<Option<ForestCover>, SolverError>
where
    F: FnMut(&BipartiteGraph),
{
    if k == 0 {
        return Err(SolverError::InvalidParams("k must be at least 1".into()));
    }
    let alpha = Rational::new(1, k as i64);
    if !check_double_sided(graph, &alpha)?.holds() {
        return Ok(None);
    }
    let mut out = Vec::new();
    let left: Vec<usize> = (0..graph.u_count()).collect();
    let right: Vec<usize> = (0..graph.v_count()).collect();
    let mut ctx = Context {
        k,
        alpha,
        out: &mut out,
        observer: &mut observer,
    };
    ctx.cover(graph.clone(), &left, &right)?;
    Ok(Some(ForestCover::from_edges(graph, out)?))
}

struct Context<'a, F> {
    k: usize,
    alpha: Rational,
    out: &'a mut Vec<(usize, usize)>,
    observer: &'a mut F,
}

impl<F: FnMut(&BipartiteGraph)> Context<'_, F> {
    /// `left`/`right` map local indices of `graph` to the caller's indices.
    fn cover(
        &mut self,
        graph: BipartiteGraph,
        left: &[usize],
        right: &[usize],
    ) -> Result<(), SolverError> {
        let mut current = graph.clone();
        for &(u, v) in graph.edges() {
            let candidate = current.without_edge(u, v)?;
            if check_double_sided(&candidate, &self.alpha)?.holds() {
                current = candidate;
                (self.observer)(&current);
            }
        }
        let split = current.edges().iter().copied().find(|&(u, v)| {
            current.degree_left(u) >= 2 && current.degree_right(v) >= 2
        });
        let Some((u, v)) = split else {
            self.out
                .extend(current.edges().iter().map(|&(u, v)| (left[u], right[v])));
            return Ok(());
        };

        let one = Rational::from_integer(1);
        let report = f_report(&current, u, v, &self.alpha)?;
        if report.minimum.as_ref().is_some_and(|m| *m < one) {
            let tight = report.witness.difference(&VertexSet::from_indices(Side::Left, [u]));
            return self.split(&current, tight, left, right, false);
        }
        let mirror = current.mirror();
        let report = f_report(&mirror, v, u, &self.alpha)?;
        if report.minimum.as_ref().is_some_and(|m| *m < one) {
            let tight = report.witness.difference(&VertexSet::from_indices(Side::Left, [v]));
            return self.split(&mirror, tight, right, left, true);
        }
        Err(SolverError::Internal(format!(
            "edge ({u}, {v}) survived peeling but is redundant on both sides"
        )))
    }

    /// `graph` is oriented so that `tight ⊆ U`; `flipped` records whether
    /// that orientation is the mirror of the caller's.
    fn split(
        &mut self,
        graph: &BipartiteGraph,
        tight: VertexSet,
        left: &[usize],
        right: &[usize],
        flipped: bool,
    ) -> Result<(), SolverError> {
        let gamma = graph.neighborhood(&tight)?;
        if tight.is_empty() || gamma.len() * self.k != tight.len() {
            return Err(SolverError::Internal(format!(
                "set {:?} is not tight: |T| = {}, |Γ(T)| = {}",
                tight.members(),
                tight.len(),
                gamma.len()
            )));
        }
        let emit = |out: &mut Vec<(usize, usize)>, x: usize, y: usize| {
            out.push(if flipped {
                (right[y], left[x])
            } else {
                (left[x], right[y])
            });
        };

        let (inner, maps) = graph.induced_subgraph(&tight, &gamma)?;
        for (x, y) in blow_up_matching(&inner, self.k)? {
            emit(
                self.out,
                maps.left_new_to_old[x],
                maps.right_new_to_old[y],
            );
        }

        let rest_left = VertexSet::all(graph, Side::Left).difference(&tight);
        let rest_right = VertexSet::all(graph, Side::Right).difference(&gamma);
        let (rest, maps) = graph.induced_subgraph(&rest_left, &rest_right)?;
        let rl: Vec<usize> = maps.left_new_to_old.iter().map(|&x| left[x]).collect();
        let rr: Vec<usize> = maps.right_new_to_old.iter().map(|&y| right[y]).collect();
        if flipped {
            self.cover(rest.mirror(), &rr, &rl)
        } else {
            self.cover(rest, &rl, &rr)
        }
    }
}

/// Matches every left vertex of `graph` to one neighbour, using each right
/// vertex at most `k` times (Hall's theorem on the `k`-fold blow-up of `V`).
fn blow_up_matching(
    graph: &BipartiteGraph,
    k: usize,
) -> Result<Vec<(usize, usize)>, SolverError> {
    let (nu, nv) = (graph.u_count(), graph.v_count());
    let (source, sink) = (nu + nv, nu + nv + 1);
    let mut net = FlowNetwork::new(nu + nv + 2);
    for x in 0..nu {
        net.add_arc(source, x, 1);
        for &y in graph.neighbors_left(x) {
            net.add_arc(x, nu + y, 1);
        }
    }
    for y in 0..nv {
        net.add_arc(nu + y, sink, k as i64);
    }
    if net.max_flow(source, sink) != nu as i64 {
        return Err(SolverError::Internal(
            "tight set has no capacity-k matching".into(),
        ));
    }
    Ok((0..nu)
        .map(|x| (x, net.flow_targets(x)[0] - nu))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum StarRejection {
    #[error("({u}, {v}) is not an edge of the graph")]
    NotAnEdge { u: usize, v: usize },
    #[error("edge ({u}, {v}) listed twice")]
    DuplicateEdge { u: usize, v: usize },
    #[error("{side} vertex {vertex} is not covered")]
    Uncovered { side: Side, vertex: usize },
    #[error("component with left {left:?} and right {right:?} is not a star")]
    NotAStar { left: Vec<usize>, right: Vec<usize> },
    #[error("star with {edges} edges exceeds the limit {limit}")]
    TooManyEdges { edges: usize, limit: usize },
}

/// Checks that `edges` form vertex-disjoint stars of at most `k` edges that
/// together cover every vertex of `graph`.
pub fn verify_k_star_covering(
    graph: &BipartiteGraph,
    k: usize,
    edges: &[(usize, usize)],
) -> Result<(), StarRejection> {
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| !graph.has_edge(u, v)) {
        return Err(StarRejection::NotAnEdge { u, v });
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(StarRejection::DuplicateEdge {
            u: w[0].0,
            v: w[0].1,
        });
    }
    let sub = graph
        .spanning_subgraph(&sorted)
        .expect("edges validated above");
    for component in sub.components() {
        if component.edge_count == 0 {
            let (side, vertex) = match component.left.first() {
                Some(&u) => (Side::Left, u),
                None => (Side::Right, component.right[0]),
            };
            return Err(StarRejection::Uncovered { side, vertex });
        }
        let is_tree = component.edge_count + 1 == component.vertex_count();
        if !is_tree || (component.left.len() > 1 && component.right.len() > 1) {
            return Err(StarRejection::NotAStar {
                left: component.left,
                right: component.right,
            });
        }
        if component.edge_count > k {
            return Err(StarRejection::TooManyEdges {
                edges: component.edge_count,
                limit: k,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn covers(graph: &BipartiteGraph, k: usize) -> bool {
        match find_k_star_covering(graph, k).unwrap() {
            Some(cover) => {
                assert_eq!(verify_k_star_covering(graph, k, &cover.edges), Ok(()));
                true
            }
            None => false,
        }
    }

    #[test]
    fn small_cases() {
        assert!(covers(&BipartiteGraph::complete(2, 2), 1));
        assert!(covers(&BipartiteGraph::complete(3, 5), 2));
        assert!(!covers(&BipartiteGraph::complete(1, 3), 2));
        assert!(covers(&BipartiteGraph::complete(1, 3), 3));
        assert!(!covers(&BipartiteGraph::new(2, 1, []).unwrap(), 5));
        assert!(covers(&BipartiteGraph::new(0, 0, []).unwrap(), 1));
    }

    #[test]
    fn path_needs_tight_split() {
        // the path u0 v0 u1 v1 u2 v2
        let g = BipartiteGraph::new(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]).unwrap();
        assert!(covers(&g, 1));
        assert!(covers(&g, 2));
    }

    #[test]
    fn observed_graphs_satisfy_condition() {
        let g = BipartiteGraph::complete(4, 6);
        let alpha = Rational::new(1, 2);
        let mut seen = 0;
        let cover = find_k_star_covering_observed(&g, 2, |h| {
            seen += 1;
            assert!(check_double_sided(h, &alpha).unwrap().holds());
        })
        .unwrap()
        .unwrap();
        assert!(seen > 0);
        assert_eq!(verify_k_star_covering(&g, 2, &cover.edges), Ok(()));
    }

    #[test]
    fn verifier_cases() {
        let g = BipartiteGraph::complete(2, 2);
        assert_eq!(
            verify_k_star_covering(&g, 1, &[(0, 0)]),
            Err(StarRejection::Uncovered {
                side: Side::Left,
                vertex: 1
            })
        );
        assert_eq!(
            verify_k_star_covering(&g, 3, &[(0, 0), (0, 1), (1, 1)]),
            Err(StarRejection::NotAStar {
                left: vec![0, 1],
                right: vec![0, 1]
            })
        );
        assert_eq!(
            verify_k_star_covering(&g, 1, &[(0, 0), (1, 0), (1, 1)]),
            Err(StarRejection::NotAStar {
                left: vec![0, 1],
                right: vec![0, 1]
            })
        );
        let star = BipartiteGraph::complete(1, 3);
        assert_eq!(
            verify_k_star_covering(&star, 2, star.edges()),
            Err(StarRejection::TooManyEdges { edges: 3, limit: 2 })
        );
        assert_eq!(
            verify_k_star_covering(&star, 3, &[(0, 0), (0, 0)]),
            Err(StarRejection::DuplicateEdge { u: 0, v: 0 })
        );
        assert_eq!(
            verify_k_star_covering(&star, 3, &[(0, 7)]),
            Err(StarRejection::NotAnEdge { u: 0, v: 7 })
        );
    }
}
