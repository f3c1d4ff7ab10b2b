//! Integer max-flow (Dinic) with residual reachability for min-cut recovery.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    original: i64,
    rev: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    graph: Vec<Vec<Arc>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            graph: vec![Vec::new(); nodes],
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64) {
        debug_assert!(cap >= 0);
        let rev_from = self.graph[to].len();
        let rev_to = self.graph[from].len();
        self.graph[from].push(Arc {
            to,
            cap,
            original: cap,
            rev: rev_from,
        });
        self.graph[to].push(Arc {
            to: from,
            cap: 0,
            original: 0,
            rev: rev_to,
        });
    }

    fn levels(&self, source: usize, sink: usize, level: &mut [i32]) -> bool {
        level.fill(-1);
        level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for arc in &self.graph[x] {
                if arc.cap > 0 && level[arc.to] < 0 {
                    level[arc.to] = level[x] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        level[sink] >= 0
    }

    fn augment(
        &mut self,
        x: usize,
        sink: usize,
        pushed: i64,
        level: &[i32],
        next: &mut [usize],
    ) -> i64 {
        if x == sink {
            return pushed;
        }
        while next[x] < self.graph[x].len() {
            let i = next[x];
            let Arc { to, cap, rev, .. } = self.graph[x][i];
            if cap > 0 && level[to] == level[x] + 1 {
                let got = self.augment(to, sink, pushed.min(cap), level, next);
                if got > 0 {
                    self.graph[x][i].cap -= got;
                    self.graph[to][rev].cap += got;
                    return got;
                }
            }
            next[x] += 1;
        }
        0
    }

    /// Saturates the network and returns the max-flow value.
    pub fn max_flow(&mut self, source: usize, sink: usize) -> i64 {
        let n = self.graph.len();
        let mut level = vec![-1; n];
        let mut next = vec![0; n];
        let mut total = 0i64;
        while self.levels(source, sink, &mut level) {
            next.fill(0);
            loop {
                let pushed = self.augment(source, sink, i64::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }

    /// Nodes reachable from `source` in the residual network. After
    /// [`max_flow`](Self::max_flow) this is the source side of the unique
    /// inclusion-minimal minimum cut.
    /// Heads of the original arcs out of `from` that carry positive flow.
    pub fn flow_targets(&self, from: usize) -> Vec<usize> {
        self.graph[from]
            .iter()
            .filter(|arc| arc.original > 0 && arc.cap < arc.original)
            .map(|arc| arc.to)
            .collect()
    }

    pub fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.graph.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(x) = stack.pop() {
            for arc in &self.graph[x] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    stack.push(arc.to);
                }
            }
        }
        seen
    }
}
