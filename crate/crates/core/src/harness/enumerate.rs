use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::bigraph::BipartiteGraph;

/// Default cap on `|U|·|V|` for any enumerated size pair.
pub const DEFAULT_EDGE_CAP: usize = 48;

/// How much of the labelling symmetry the enumeration removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dedup {
    /// Every labelled graph.
    None,
    /// Left vertices in non-increasing degree order and right labels in
    /// order of first appearance. Every isomorphism class keeps at least one
    /// representative; many classes keep several.
    Symmetry,
}

/// Which graphs [`enumerate_bipartite`] produces: every size pair
/// `(|U|, |V|)` in the given ranges (optionally with `|U| + |V| ≤ total_max`)
/// and left degrees at most `d_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBounds {
    pub u_min: usize,
    pub u_max: usize,
    pub v_min: usize,
    pub v_max: usize,
    pub total_max: Option<usize>,
    pub d_max: usize,
    pub connected_only: bool,
    pub dedup: Dedup,
    pub edge_cap: usize,
}

impl EnumerationBounds {
    /// Labelled graphs with exactly `u` left and `v` right vertices.
    pub fn exact(u: usize, v: usize, d_max: usize) -> Self {
        EnumerationBounds {
            u_min: u,
            u_max: u,
            v_min: v,
            v_max: v,
            total_max: None,
            d_max,
            connected_only: false,
            dedup: Dedup::None,
            edge_cap: DEFAULT_EDGE_CAP,
        }
    }

    /// Graphs with `1 ≤ |U| ≤ u_max`, `1 ≤ |V| ≤ v_max`, up to symmetry.
    pub fn up_to(u_max: usize, v_max: usize, d_max: usize) -> Self {
        EnumerationBounds {
            u_min: 1,
            u_max,
            v_min: 1,
            v_max,
            total_max: None,
            d_max,
            connected_only: false,
            dedup: Dedup::Symmetry,
            edge_cap: DEFAULT_EDGE_CAP,
        }
    }

    /// Campaign defaults: `|U| ≤ 5`, `|V| ≤ 8`, left degree ≤ `d_max`.
    pub fn campaign_default(d_max: usize) -> Self {
        Self::up_to(5, 8, d_max)
    }

    pub fn with_total_max(mut self, total: usize) -> Self {
        self.total_max = Some(total);
        self
    }

    pub fn with_dedup(mut self, dedup: Dedup) -> Self {
        self.dedup = dedup;
        self
    }

    pub fn connected(mut self) -> Self {
        self.connected_only = true;
        self
    }

    pub fn with_mins(mut self, u_min: usize, v_min: usize) -> Self {
        self.u_min = u_min;
        self.v_min = v_min;
        self
    }

    /// The size pairs visited, in enumeration order.
    pub fn size_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for u in self.u_min..=self.u_max {
            for v in self.v_min..=self.v_max {
                if self.total_max.is_none_or(|t| u + v <= t) {
                    pairs.push((u, v));
                }
            }
        }
        pairs
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.v_max > 63 {
            return Err(HarnessError::Bounds(format!(
                "v_max = {} exceeds 63",
                self.v_max
            )));
        }
        if let Some(&(u, v)) = self
            .size_pairs()
            .iter()
            .find(|&&(u, v)| u * v > self.edge_cap)
        {
            return Err(HarnessError::Bounds(format!(
                "|U|·|V| = {u}·{v} exceeds the cap of {} potential edges",
                self.edge_cap
            )));
        }
        Ok(())
    }
}

/// Deterministic stream of the graphs described by `bounds`.
pub fn enumerate_bipartite(bounds: &EnumerationBounds) -> Result<GraphStream, HarnessError> {
    bounds.validate()?;
    Ok(GraphStream {
        bounds: bounds.clone(),
        pairs: bounds.size_pairs(),
        pair: 0,
        started: false,
        stack: Vec::new(),
        chosen: Vec::new(),
    })
}

struct Level {
    candidates: Vec<(u64, usize)>,
    pos: usize,
}

pub struct GraphStream {
    bounds: EnumerationBounds,
    pairs: Vec<(usize, usize)>,
    pair: usize,
    started: bool,
    stack: Vec<Level>,
    chosen: Vec<u64>,
}

impl GraphStream {
    /// Neighbourhood masks allowed for the next left vertex, each with the
    /// number of right labels in use afterwards.
    fn candidates(&self, v: usize, prev_degree: usize, used: usize) -> Vec<(u64, usize)> {
        let top = self.bounds.d_max.min(v);
        let mut out = Vec::new();
        match self.bounds.dedup {
            Dedup::None => {
                for mask in 0u64..1 << v {
                    if mask.count_ones() as usize <= top {
                        out.push((mask, v));
                    }
                }
            }
            Dedup::Symmetry => {
                for degree in (0..=top.min(prev_degree)).rev() {
                    for fresh in 0..=degree.min(v - used) {
                        let old = degree - fresh;
                        if old > used {
                            continue;
                        }
                        let fresh_mask = ((1u64 << fresh) - 1) << used;
                        for_each_subset(used, old, |m| out.push((m | fresh_mask, used + fresh)));
                    }
                }
            }
        }
        out
    }

    fn emit(&self, u: usize, v: usize) -> BipartiteGraph {
        let edges = self.chosen.iter().enumerate().flat_map(|(x, &mask)| {
            (0..v).filter(move |&y| mask >> y & 1 == 1).map(move |y| (x, y))
        });
        debug_assert_eq!(self.chosen.len(), u);
        BipartiteGraph::new(u, v, edges).expect("masks stay within range")
    }
}

/// Calls `f` on every `size`-subset of `0..n` (as a bitmask) in colex order.
fn for_each_subset(n: usize, size: usize, mut f: impl FnMut(u64)) {
    if size > n {
        return;
    }
    if size == 0 {
        f(0);
        return;
    }
    // Gosper's hack
    let mut mask: u64 = (1 << size) - 1;
    let limit: u64 = 1 << n;
    while mask < limit {
        f(mask);
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

impl Iterator for GraphStream {
    type Item = BipartiteGraph;

    fn next(&mut self) -> Option<BipartiteGraph> {
        loop {
            let &(u, v) = self.pairs.get(self.pair)?;
            if !self.started {
                self.started = true;
                if u == 0 {
                    self.pair += 1;
                    self.started = false;
                    let g = BipartiteGraph::new(0, v, []).expect("empty graph");
                    if !self.bounds.connected_only || g.is_connected() {
                        return Some(g);
                    }
                    continue;
                }
                let level = self.candidates(v, usize::MAX, 0);
                self.stack.push(Level {
                    candidates: level,
                    pos: 0,
                });
            }
            let depth = self.stack.len();
            let Some(top) = self.stack.last_mut() else {
                self.pair += 1;
                self.started = false;
                continue;
            };
            if top.pos == top.candidates.len() {
                self.stack.pop();
                continue;
            }
            let (mask, used) = top.candidates[top.pos];
            top.pos += 1;
            self.chosen.truncate(depth - 1);
            self.chosen.push(mask);
            if depth == u {
                let g = self.emit(u, v);
                if !self.bounds.connected_only || g.is_connected() {
                    return Some(g);
                }
            } else {
                let level = self.candidates(v, mask.count_ones() as usize, used);
                self.stack.push(Level {
                    candidates: level,
                    pos: 0,
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn count(bounds: &EnumerationBounds) -> usize {
        enumerate_bipartite(bounds).unwrap().count()
    }

    #[test]
    fn labelled_counts() {
        assert_eq!(count(&EnumerationBounds::exact(1, 1, 1)), 2);
        assert_eq!(count(&EnumerationBounds::exact(1, 1, 1).connected()), 1);
        assert_eq!(count(&EnumerationBounds::exact(2, 2, 2)), 16);
        // degree bound 1: each left vertex picks ∅ or one of 3 → 4^2
        assert_eq!(count(&EnumerationBounds::exact(2, 3, 1)), 16);
    }

    #[test]
    fn labelled_stream_has_no_duplicates() {
        let graphs: Vec<_> = enumerate_bipartite(&EnumerationBounds::exact(2, 3, 3))
            .unwrap()
            .collect();
        let distinct: BTreeSet<_> = graphs.iter().map(|g| g.edges().to_vec()).collect();
        assert_eq!(graphs.len(), 64);
        assert_eq!(distinct.len(), 64);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(enumerate_bipartite(&EnumerationBounds::up_to(7, 7, 3)).is_err());
        assert!(enumerate_bipartite(&EnumerationBounds::up_to(9, 9, 3).with_total_max(10)).is_ok());
    }

    #[test]
    fn empty_bounds_yield_nothing() {
        let mut b = EnumerationBounds::up_to(3, 3, 2);
        b.u_min = 4;
        assert_eq!(count(&b), 0);
    }

    #[test]
    fn zero_left_vertices() {
        let b = EnumerationBounds::exact(0, 3, 2);
        assert_eq!(count(&b), 1);
    }

    #[test]
    fn subsets_in_colex_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |m| seen.push(m));
        assert_eq!(seen, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        let mut seen = Vec::new();
        for_each_subset(3, 0, |m| seen.push(m));
        assert_eq!(seen, vec![0]);
    }
}
