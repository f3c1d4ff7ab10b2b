use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

use super::{ForestCover, SolverError};
use crate::bigraph::BipartiteGraph;
use crate::unionfind::RollbackUnionFind;

/// Outcome of [`find_st_matching`]. Running out of budget is never reported
/// as nonexistence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StSearch {
    Found { cover: ForestCover, nodes: u64 },
    NotFound { nodes: u64 },
    BudgetExceeded { nodes: u64 },
}

impl StSearch {
    pub fn cover(&self) -> Option<&ForestCover> {
        match self {
            StSearch::Found { cover, .. } => Some(cover),
            _ => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            StSearch::Found { nodes, .. }
            | StSearch::NotFound { nodes }
            | StSearch::BudgetExceeded { nodes } => *nodes,
        }
    }
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    graph: &'a BipartiteGraph,
    s: usize,
    t: usize,
    order: Vec<usize>,
    uf: RollbackUnionFind,
    chosen: Vec<(usize, usize)>,
    nodes: u64,
    budget: u64,
    scratch: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn right(&self, v: usize) -> usize {
        self.graph.u_count() + v
    }

    /// Every unplaced left vertex still needs `s` neighbours in distinct
    /// components whose cheapest completion stays within `t` edges.
    fn feasible(&mut self, from: usize) -> bool {
        for i in from..self.order.len() {
            let u = self.order[i];
            self.scratch.clear();
            for &v in self.graph.neighbors_left(u) {
                let x = self.right(v);
                let root = self.uf.find(x);
                self.scratch.push((root, self.uf.edge_count(x)));
            }
            self.scratch.sort_unstable();
            self.scratch.dedup_by_key(|e| e.0);
            if self.scratch.len() < self.s {
                return false;
            }
            let mut sizes: Vec<usize> = self.scratch.iter().map(|e| e.1).collect();
            sizes.sort_unstable();
            let cheapest: usize = sizes[..self.s].iter().sum();
            if cheapest + self.s > self.t {
                return false;
            }
        }
        true
    }

    fn place(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            return Step::Found;
        }
        let u = self.order[depth];
        let neighbors = self.graph.neighbors_left(u);
        let mut combo: Vec<usize> = (0..self.s).collect();
        loop {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            let checkpoint = self.uf.time();
            let mut ok = true;
            for &i in &combo {
                if !self.uf.add_edge(u, self.graph.u_count() + neighbors[i]) {
                    ok = false;
                    break;
                }
            }
            ok = ok && self.uf.edge_count(u) <= self.t && self.feasible(depth + 1);
            if ok {
                let mark = self.chosen.len();
                self.chosen.extend(combo.iter().map(|&i| (u, neighbors[i])));
                match self.place(depth + 1) {
                    Step::Exhausted => self.chosen.truncate(mark),
                    done => return done,
                }
            }
            self.uf.rollback(checkpoint);
            if !next_combination(&mut combo, neighbors.len()) {
                return Step::Exhausted;
            }
        }
    }
}

/// Advances `combo` to the next `combo.len()`-subset of `0..n` in
/// lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
        return false;
    };
    combo[i] += 1;
    for j in i + 1..k {
        combo[j] = combo[j - 1] + 1;
    }
    true
}

/// Exhaustive search for an `(s, t)`-matching.
///
/// Left vertices are placed in descending degree order (ties by index) and
/// each tries its `s`-subsets of neighbours lexicographically. A rollback
/// union-find with per-component edge counts rejects cycles and oversized
/// components, and a branch is cut as soon as some unplaced vertex can no
/// longer be completed. `budget` caps the number of placements tried.
pub fn find_st_matching(
    graph: &BipartiteGraph,
    s: usize,
    t: usize,
    budget: u64,
) -> Result<StSearch, SolverError> {
    if s == 0 || s > t {
        return Err(SolverError::InvalidParams(format!(
            "need 1 ≤ s ≤ t, got s={s} t={t}"
        )));
    }
    if (0..graph.u_count()).any(|u| graph.degree_left(u) < s) {
        return Ok(StSearch::NotFound { nodes: 0 });
    }
    let mut order: Vec<usize> = (0..graph.u_count()).collect();
    order.sort_by_key(|&u| (Reverse(graph.degree_left(u)), u));
    let mut search = Search {
        graph,
        s,
        t,
        order,
        uf: RollbackUnionFind::new(graph.u_count() + graph.v_count()),
        chosen: Vec::new(),
        nodes: 0,
        budget,
        scratch: Vec::new(),
    };
    if !search.feasible(0) {
        return Ok(StSearch::NotFound { nodes: 0 });
    }
    Ok(match search.place(0) {
        Step::Found => StSearch::Found {
            cover: ForestCover::from_edges(graph, search.chosen)?,
            nodes: search.nodes,
        },
        Step::Exhausted => StSearch::NotFound {
            nodes: search.nodes,
        },
        Step::OutOfBudget => StSearch::BudgetExceeded {
            nodes: search.nodes,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum StRejection {
    #[error("({u}, {v}) is not an edge of the graph")]
    NotAnEdge { u: usize, v: usize },
    #[error("edge ({u}, {v}) listed twice")]
    DuplicateEdge { u: usize, v: usize },
    #[error("left vertex {u} has {found} chosen edges, expected {expected}")]
    Degree { u: usize, expected: usize, found: usize },
    #[error("chosen edges contain a cycle")]
    Cycle,
    #[error("component with {edges} edges exceeds the limit {limit}")]
    ComponentTooLarge { edges: usize, limit: usize },
}

/// Checks the three defining conditions directly: left degrees equal `s`,
/// `(U, V, F)` is a forest, and every component has at most `t` edges.
pub fn verify_st_matching(
    graph: &BipartiteGraph,
    s: usize,
    t: usize,
    edges: &[(usize, usize)],
) -> Result<(), StRejection> {
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| !graph.has_edge(u, v)) {
        return Err(StRejection::NotAnEdge { u, v });
    }
    let sub = match BipartiteGraph::new(graph.u_count(), graph.v_count(), edges.iter().copied()) {
        Ok(sub) => sub,
        Err(crate::GraphError::DuplicateEdge(u, v)) => {
            return Err(StRejection::DuplicateEdge { u, v })
        }
        Err(e) => unreachable!("edges already validated: {e}"),
    };
    for u in 0..graph.u_count() {
        if sub.degree_left(u) != s {
            return Err(StRejection::Degree {
                u,
                expected: s,
                found: sub.degree_left(u),
            });
        }
    }
    if !sub.is_forest() {
        return Err(StRejection::Cycle);
    }
    if let Some(c) = sub.components().iter().find(|c| c.edge_count > t) {
        return Err(StRejection::ComponentTooLarge {
            edges: c.edge_count,
            limit: t,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: u64 = 1_000_000;

    fn chain(q: usize) -> BipartiteGraph {
        // I_q with h = 2: the path v0 - u0 - v1 - u1 - ... - v_q
        let edges = (0..q).flat_map(|i| [(i, i), (i, i + 1)]);
        BipartiteGraph::new(q, q + 1, edges).unwrap()
    }

    #[test]
    fn k23_has_a_2_4_matching() {
        let g = BipartiteGraph::complete(2, 3);
        let result = find_st_matching(&g, 2, 4, BUDGET).unwrap();
        let cover = result.cover().expect("K_{2,3} has a (2,4)-matching");
        assert_eq!(verify_st_matching(&g, 2, 4, &cover.edges), Ok(()));
        assert_eq!(cover.components.len(), 1);
        assert_eq!(cover.components[0].edge_count, 4);
    }

    #[test]
    fn k22_forces_a_cycle() {
        let g = BipartiteGraph::complete(2, 2);
        assert!(matches!(
            find_st_matching(&g, 2, 4, BUDGET).unwrap(),
            StSearch::NotFound { .. }
        ));
    }

    #[test]
    fn chain_matching_iff_short() {
        for k in 1..=4 {
            for q in 1..=6 {
                let g = chain(q);
                let found = find_st_matching(&g, 2, 2 * k, BUDGET).unwrap().cover().is_some();
                assert_eq!(found, q <= k, "q={q} k={k}");
            }
        }
    }

    #[test]
    fn degree_shortfall_is_immediate() {
        let g = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        assert_eq!(
            find_st_matching(&g, 2, 4, BUDGET).unwrap(),
            StSearch::NotFound { nodes: 0 }
        );
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let g = BipartiteGraph::complete(3, 6);
        assert!(matches!(
            find_st_matching(&g, 2, 2, 1).unwrap(),
            StSearch::BudgetExceeded { nodes: 2 }
        ));
    }

    #[test]
    fn invalid_params() {
        let g = BipartiteGraph::complete(1, 1);
        assert!(find_st_matching(&g, 0, 1, BUDGET).is_err());
        assert!(find_st_matching(&g, 3, 2, BUDGET).is_err());
    }

    #[test]
    fn empty_left_side_is_trivially_matched() {
        let g = BipartiteGraph::new(0, 3, []).unwrap();
        let result = find_st_matching(&g, 1, 1, BUDGET).unwrap();
        assert_eq!(result.cover().unwrap().edges, vec![]);
    }

    #[test]
    fn verifier_cases() {
        let g = BipartiteGraph::complete(2, 3);
        assert_eq!(
            verify_st_matching(&g, 2, 4, &[(0, 0), (0, 1), (1, 1), (1, 2)]),
            Ok(())
        );
        assert_eq!(
            verify_st_matching(&g, 2, 3, &[(0, 0), (0, 1), (1, 1), (1, 2)]),
            Err(StRejection::ComponentTooLarge { edges: 4, limit: 3 })
        );
        assert!(matches!(
            verify_st_matching(&g, 1, 4, &[]),
            Err(StRejection::Degree { u: 0, .. })
        ));
        let k22 = BipartiteGraph::complete(2, 2);
        assert_eq!(
            verify_st_matching(&k22, 2, 4, k22.edges()),
            Err(StRejection::Cycle)
        );
        assert_eq!(
            verify_st_matching(&k22, 1, 1, &[(0, 0), (0, 0)]),
            Err(StRejection::DuplicateEdge { u: 0, v: 0 })
        );
        assert_eq!(
            verify_st_matching(&chain(1), 1, 1, &[(0, 5)]),
            Err(StRejection::NotAnEdge { u: 0, v: 5 })
        );
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }
}
