//! Brute-force reference searches. They share no code with the solvers so
//! that agreement between the two is meaningful.

use crate::bigraph::BipartiteGraph;

/// Largest edge count [`exhaustive_st_matching`] accepts (it scans `2^|E|`
/// subsets).
pub const MAX_SUBSET_EDGES: usize = 24;

/// First edge subset, in increasing bitmask order over the sorted edge list,
/// that is an `(s, t)`-matching, or `Some(None)` if there is none. Returns
/// `None` without searching when `|E|` exceeds [`MAX_SUBSET_EDGES`].
pub fn exhaustive_st_matching(
    graph: &BipartiteGraph,
    s: usize,
    t: usize,
) -> Option<Option<Vec<(usize, usize)>>> {
    let edges = graph.edges();
    let m = edges.len();
    if m > MAX_SUBSET_EDGES {
        return None;
    }
    let nu = graph.u_count();
    let n = nu + graph.v_count();
    let mut parent = vec![0usize; n];
    let mut count = vec![0usize; n];
    'subsets: for mask in 0u64..1 << m {
        if mask.count_ones() as usize != s * nu {
            continue;
        }
        let mut degree = vec![0usize; nu];
        for (i, &(u, _)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                degree[u] += 1;
            }
        }
        if degree.iter().any(|&d| d != s) {
            continue;
        }
        for x in 0..n {
            parent[x] = x;
            count[x] = 0;
        }
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 0 {
                continue;
            }
            let (a, b) = (root(&mut parent, u), root(&mut parent, nu + v));
            if a == b {
                continue 'subsets;
            }
            parent[b] = a;
            count[a] += count[b] + 1;
            if count[a] > t {
                continue 'subsets;
            }
        }
        let chosen = edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        return Some(Some(chosen));
    }
    Some(None)
}

/// Include/exclude search over the sorted edge list for a `k`-star covering.
///
/// A partial choice is kept a disjoint union of stars of at most `k` edges:
/// an edge may join two uncovered vertices, or attach an uncovered vertex to
/// the centre of an existing star (or to either end of a single-edge star).
/// A branch dies when a vertex's last edge is skipped while it is uncovered.
pub fn exhaustive_k_star_covering(graph: &BipartiteGraph, k: usize) -> Option<Vec<(usize, usize)>> {
    let nu = graph.u_count();
    let n = nu + graph.v_count();
    let edges: Vec<(usize, usize)> = graph.edges().iter().map(|&(u, v)| (u, nu + v)).collect();
    let mut last = vec![None; n];
    for (i, &(x, y)) in edges.iter().enumerate() {
        last[x] = Some(i);
        last[y] = Some(i);
    }
    if last.iter().any(Option::is_none) || k == 0 {
        return None;
    }
    let mut search = StarSearch {
        k,
        edges: &edges,
        last: last.into_iter().map(|l| l.unwrap_or(0)).collect(),
        adjacent: vec![Vec::new(); n],
        chosen: Vec::new(),
    };
    if search.run(0) {
        Some(
            search
                .chosen
                .iter()
                .map(|&i| (edges[i].0, edges[i].1 - nu))
                .collect(),
        )
    } else {
        None
    }
}

struct StarSearch<'a> {
    k: usize,
    edges: &'a [(usize, usize)],
    last: Vec<usize>,
    adjacent: Vec<Vec<usize>>,
    chosen: Vec<usize>,
}

impl StarSearch<'_> {
    fn can_attach(&self, x: usize, y: usize) -> bool {
        let (dx, dy) = (self.adjacent[x].len(), self.adjacent[y].len());
        match (dx, dy) {
            (0, 0) => true,
            (0, _) => self.accepts_leaf(y),
            (_, 0) => self.accepts_leaf(x),
            _ => false,
        }
    }

    /// Whether covered vertex `c` can take one more leaf and stay a centre.
    fn accepts_leaf(&self, c: usize) -> bool {
        let degree = self.adjacent[c].len();
        if degree + 1 > self.k {
            return false;
        }
        degree >= 2 || self.adjacent[self.adjacent[c][0]].len() == 1
    }

    fn run(&mut self, i: usize) -> bool {
        if i == self.edges.len() {
            return true;
        }
        let (x, y) = self.edges[i];
        if self.can_attach(x, y) {
            self.adjacent[x].push(y);
            self.adjacent[y].push(x);
            self.chosen.push(i);
            if self.run(i + 1) {
                return true;
            }
            self.chosen.pop();
            self.adjacent[x].pop();
            self.adjacent[y].pop();
        }
        let stranded = |z: usize| self.last[z] == i && self.adjacent[z].is_empty();
        if stranded(x) || stranded(y) {
            return false;
        }
        self.run(i + 1)
    }
}
