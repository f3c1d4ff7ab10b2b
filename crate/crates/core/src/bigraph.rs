//! Immutable bipartite graphs `G = (U, V, E)` with left part `U` and right part `V`.
//!
//! Vertices are dense 0-based indices per side and neighbour lists are kept in
//! ascending order, so every derived object (neighbourhoods, components,
//! witnesses) is deterministic. Graphs never change after construction;
//! deletions produce a new graph together with index maps.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::scalar::ExactInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("left vertex {index} out of range (|U| = {count})")]
    LeftOutOfRange { index: usize, count: usize },
    #[error("right vertex {index} out of range (|V| = {count})")]
    RightOutOfRange { index: usize, count: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("expected a {expected} vertex set, got a {found} one")]
    WrongSide { expected: Side, found: Side },
    #[error("duplicate vertex {0} in vertex set")]
    DuplicateVertex(usize),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// A set of vertices on one side, stored as a sorted list of distinct indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet {
    side: Side,
    members: Vec<usize>,
}

impl VertexSet {
    pub fn empty(side: Side) -> Self {
        VertexSet {
            side,
            members: Vec::new(),
        }
    }

    /// Builds a set, validating every index against `graph`. Duplicates are rejected.
    pub fn new(
        graph: &BipartiteGraph,
        side: Side,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GraphError> {
        let count = graph.side_count(side);
        let mut seen = BTreeSet::new();
        for index in members {
            if index >= count {
                return Err(match side {
                    Side::Left => GraphError::LeftOutOfRange { index, count },
                    Side::Right => GraphError::RightOutOfRange { index, count },
                });
            }
            if !seen.insert(index) {
                return Err(GraphError::DuplicateVertex(index));
            }
        }
        Ok(VertexSet {
            side,
            members: seen.into_iter().collect(),
        })
    }

    pub fn left(
        graph: &BipartiteGraph,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GraphError> {
        Self::new(graph, Side::Left, members)
    }

    pub fn right(
        graph: &BipartiteGraph,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GraphError> {
        Self::new(graph, Side::Right, members)
    }

    /// Every vertex of `side`.
    pub fn all(graph: &BipartiteGraph, side: Side) -> Self {
        VertexSet {
            side,
            members: (0..graph.side_count(side)).collect(),
        }
    }

    /// Sorts and deduplicates without range validation; consumers validate
    /// against the graph they are applied to.
    pub fn from_indices(side: Side, members: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = members.into_iter().collect();
        VertexSet {
            side,
            members: set.into_iter().collect(),
        }
    }

    /// Trusted constructor for indices already known to be sorted, distinct and in range.
    pub(crate) fn from_sorted(side: Side, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { side, members }
    }

    pub(crate) fn from_mask(side: Side, mask: &[bool]) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        VertexSet { side, members }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.side == other.side && self.members.iter().all(|&m| other.contains(m))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.side, other.side, "union of sets on different sides");
        let merged: BTreeSet<usize> = self.iter().chain(other.iter()).collect();
        VertexSet::from_sorted(self.side, merged.into_iter().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.side, other.side, "intersection of sets on different sides");
        let members = self.iter().filter(|&m| other.contains(m)).collect();
        VertexSet::from_sorted(self.side, members)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        assert_eq!(self.side, other.side, "difference of sets on different sides");
        let members = self.iter().filter(|&m| !other.contains(m)).collect();
        VertexSet::from_sorted(self.side, members)
    }

    /// Same members, tagged with the other side (used when mirroring a graph).
    pub fn mirrored(&self) -> VertexSet {
        VertexSet {
            side: self.side.opposite(),
            members: self.members.clone(),
        }
    }
}

/// Canonical wire format: `{"u": <int>, "v": <int>, "edges": [[u, v], ...]}`.
///
/// Unknown keys (such as gadget metadata) are ignored on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub u: usize,
    pub v: usize,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    u_count: usize,
    v_count: usize,
    edges: Vec<(usize, usize)>,
    adj_u: Vec<Vec<usize>>,
    adj_v: Vec<Vec<usize>>,
}

/// Old/new index correspondence produced by [`BipartiteGraph::induced_subgraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMaps {
    pub left_new_to_old: Vec<usize>,
    pub right_new_to_old: Vec<usize>,
    pub left_old_to_new: Vec<Option<usize>>,
    pub right_old_to_new: Vec<Option<usize>>,
}

impl IndexMaps {
    fn identity(u_count: usize, v_count: usize) -> Self {
        IndexMaps {
            left_new_to_old: (0..u_count).collect(),
            right_new_to_old: (0..v_count).collect(),
            left_old_to_new: (0..u_count).map(Some).collect(),
            right_old_to_new: (0..v_count).map(Some).collect(),
        }
    }
}

/// One connected component, listing its vertices on each side in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub edge_count: usize,
}

impl Component {
    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }
}

impl BipartiteGraph {
    pub fn new(
        u_count: usize,
        v_count: usize,
        edge_list: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut adj_u = vec![Vec::new(); u_count];
        let mut adj_v = vec![Vec::new(); v_count];
        let mut seen = BTreeSet::new();
        for (u, v) in edge_list {
            if u >= u_count {
                return Err(GraphError::LeftOutOfRange {
                    index: u,
                    count: u_count,
                });
            }
            if v >= v_count {
                return Err(GraphError::RightOutOfRange {
                    index: v,
                    count: v_count,
                });
            }
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj_u[u].push(v);
            adj_v[v].push(u);
        }
        adj_u.iter_mut().for_each(|n| n.sort_unstable());
        adj_v.iter_mut().for_each(|n| n.sort_unstable());
        Ok(BipartiteGraph {
            u_count,
            v_count,
            edges: seen.into_iter().collect(),
            adj_u,
            adj_v,
        })
    }

    /// Complete bipartite graph `K_{m,n}`.
    pub fn complete(m: usize, n: usize) -> Self {
        let edges = (0..m).flat_map(|u| (0..n).map(move |v| (u, v)));
        Self::new(m, n, edges).expect("complete graph is well formed")
    }

    pub fn u_count(&self) -> usize {
        self.u_count
    }

    pub fn v_count(&self) -> usize {
        self.v_count
    }

    pub fn side_count(&self, side: Side) -> usize {
        match side {
            Side::Left => self.u_count,
            Side::Right => self.v_count,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(u, v)` order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.u_count && self.adj_u[u].binary_search(&v).is_ok()
    }

    pub fn neighbors_left(&self, u: usize) -> &[usize] {
        &self.adj_u[u]
    }

    pub fn neighbors_right(&self, v: usize) -> &[usize] {
        &self.adj_v[v]
    }

    pub fn neighbors(&self, side: Side, x: usize) -> &[usize] {
        match side {
            Side::Left => &self.adj_u[x],
            Side::Right => &self.adj_v[x],
        }
    }

    pub fn degree_left(&self, u: usize) -> usize {
        self.adj_u[u].len()
    }

    pub fn degree_right(&self, v: usize) -> usize {
        self.adj_v[v].len()
    }

    pub fn max_left_degree(&self) -> usize {
        self.adj_u.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_left_degree(&self) -> Option<usize> {
        self.adj_u.iter().map(Vec::len).min()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj_u.iter().any(Vec::is_empty) || self.adj_v.iter().any(Vec::is_empty)
    }

    /// `Γ(S)`: the union of the neighbour lists of `S`, on the opposite side.
    pub fn neighborhood(&self, set: &VertexSet) -> Result<VertexSet, GraphError> {
        self.check_set(set, set.side())?;
        Ok(self.neighborhood_unchecked(set.side(), set.members()))
    }

    pub(crate) fn neighborhood_unchecked(&self, side: Side, members: &[usize]) -> VertexSet {
        let mut mask = vec![false; self.side_count(side.opposite())];
        for &x in members {
            for &y in self.neighbors(side, x) {
                mask[y] = true;
            }
        }
        VertexSet::from_mask(side.opposite(), &mask)
    }

    pub(crate) fn neighborhood_size(&self, side: Side, members: &[usize]) -> usize {
        let mut mask = vec![false; self.side_count(side.opposite())];
        let mut count = 0;
        for &x in members {
            for &y in self.neighbors(side, x) {
                if !mask[y] {
                    mask[y] = true;
                    count += 1;
                }
            }
        }
        count
    }

    /// `h(S, α) = |Γ(S)| − α|S|` for a left set `S`.
    pub fn deficiency<T: ExactInt>(
        &self,
        set: &VertexSet,
        alpha: &Ratio<T>,
    ) -> Result<Ratio<T>, GraphError> {
        self.check_set(set, Side::Left)?;
        Ok(self.deficiency_unchecked(set.members(), alpha))
    }

    pub(crate) fn deficiency_unchecked<T: ExactInt>(
        &self,
        members: &[usize],
        alpha: &Ratio<T>,
    ) -> Ratio<T> {
        let gamma = T::from_usize(self.neighborhood_size(Side::Left, members))
            .expect("count fits the scalar type");
        let size = T::from_usize(members.len()).expect("count fits the scalar type");
        Ratio::from_integer(gamma) - alpha * Ratio::from_integer(size)
    }

    fn check_set(&self, set: &VertexSet, expected: Side) -> Result<(), GraphError> {
        if set.side() != expected {
            return Err(GraphError::WrongSide {
                expected,
                found: set.side(),
            });
        }
        let count = self.side_count(expected);
        if let Some(&index) = set.members().iter().find(|&&m| m >= count) {
            return Err(match expected {
                Side::Left => GraphError::LeftOutOfRange { index, count },
                Side::Right => GraphError::RightOutOfRange { index, count },
            });
        }
        Ok(())
    }

    /// `G[A ∪ B]`: keeps exactly the edges with both endpoints retained.
    pub fn induced_subgraph(
        &self,
        left: &VertexSet,
        right: &VertexSet,
    ) -> Result<(BipartiteGraph, IndexMaps), GraphError> {
        self.check_set(left, Side::Left)?;
        self.check_set(right, Side::Right)?;
        let mut left_old_to_new = vec![None; self.u_count];
        for (new, &old) in left.members().iter().enumerate() {
            left_old_to_new[old] = Some(new);
        }
        let mut right_old_to_new = vec![None; self.v_count];
        for (new, &old) in right.members().iter().enumerate() {
            right_old_to_new[old] = Some(new);
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((left_old_to_new[u]?, right_old_to_new[v]?)));
        let graph = BipartiteGraph::new(left.len(), right.len(), edges)?;
        let maps = IndexMaps {
            left_new_to_old: left.members().to_vec(),
            right_new_to_old: right.members().to_vec(),
            left_old_to_new,
            right_old_to_new,
        };
        Ok((graph, maps))
    }

    /// `G − uv`, with the same vertex indices.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<BipartiteGraph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let edges = self.edges.iter().copied().filter(|&e| e != (u, v));
        BipartiteGraph::new(self.u_count, self.v_count, edges)
    }

    /// Spanning subgraph `(U, V, F)` for an edge subset `F ⊆ E`.
    pub fn spanning_subgraph(&self, edges: &[(usize, usize)]) -> Result<BipartiteGraph, GraphError> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| !self.has_edge(u, v)) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        BipartiteGraph::new(self.u_count, self.v_count, edges.iter().copied())
    }

    /// The same graph with the roles of `U` and `V` exchanged.
    pub fn mirror(&self) -> BipartiteGraph {
        BipartiteGraph {
            u_count: self.v_count,
            v_count: self.u_count,
            edges: {
                let mut e: Vec<_> = self.edges.iter().map(|&(u, v)| (v, u)).collect();
                e.sort_unstable();
                e
            },
            adj_u: self.adj_v.clone(),
            adj_v: self.adj_u.clone(),
        }
    }

    /// Connected components; isolated vertices are singleton components.
    ///
    /// Components are ordered by their smallest left vertex, then (for
    /// right-only singletons) by right index.
    pub fn components(&self) -> Vec<Component> {
        let mut left_seen = vec![false; self.u_count];
        let mut right_seen = vec![false; self.v_count];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        let starts = (0..self.u_count)
            .map(|u| (Side::Left, u))
            .chain((0..self.v_count).map(|v| (Side::Right, v)));
        for (side, start) in starts {
            let seen = match side {
                Side::Left => &mut left_seen[start],
                Side::Right => &mut right_seen[start],
            };
            if *seen {
                continue;
            }
            *seen = true;
            let mut comp = Component {
                left: Vec::new(),
                right: Vec::new(),
                edge_count: 0,
            };
            stack.push((side, start));
            while let Some((s, x)) = stack.pop() {
                match s {
                    Side::Left => {
                        comp.left.push(x);
                        comp.edge_count += self.adj_u[x].len();
                        for &y in &self.adj_u[x] {
                            if !right_seen[y] {
                                right_seen[y] = true;
                                stack.push((Side::Right, y));
                            }
                        }
                    }
                    Side::Right => {
                        comp.right.push(x);
                        for &y in &self.adj_v[x] {
                            if !left_seen[y] {
                                left_seen[y] = true;
                                stack.push((Side::Left, y));
                            }
                        }
                    }
                }
            }
            comp.left.sort_unstable();
            comp.right.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// True iff `|E| = |U| + |V| − #components`.
    pub fn is_forest(&self) -> bool {
        let vertices = self.u_count + self.v_count;
        self.edges.len() + self.components().len() == vertices
    }

    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.is_connected()
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            u: self.u_count,
            v: self.v_count,
            edges: self.edges.clone(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        Self::new(json.u, json.v, json.edges.iter().copied())
    }

    pub fn from_json_str(text: &str) -> Result<Self, GraphError> {
        let json: GraphJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        Self::from_json(&json)
    }

    pub fn identity_maps(&self) -> IndexMaps {
        IndexMaps::identity(self.u_count, self.v_count)
    }
}

impl Serialize for BipartiteGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BipartiteGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = GraphJson::deserialize(deserializer)?;
        BipartiteGraph::from_json(&json).map_err(serde::de::Error::custom)
    }
}
