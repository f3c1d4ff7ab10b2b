//! Union-find with undo, tracking the number of edges inside each component.
//!
//! No path compression, so every union can be rolled back exactly. Union by
//! size keeps `find` logarithmic.

#[derive(Debug, Clone)]
struct Undo {
    child: usize,
    root: usize,
    root_size: usize,
    root_edges: usize,
}

#[derive(Debug, Clone)]
pub struct RollbackUnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    edges: Vec<usize>,
    history: Vec<Undo>,
}

impl RollbackUnionFind {
    pub fn new(n: usize) -> Self {
        RollbackUnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            edges: vec![0; n],
            history: Vec::new(),
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Edges recorded in the component of `x`.
    pub fn edge_count(&self, x: usize) -> usize {
        self.edges[self.find(x)]
    }

    pub fn component_size(&self, x: usize) -> usize {
        self.size[self.find(x)]
    }

    /// Checkpoint for [`rollback`](Self::rollback).
    pub fn time(&self) -> usize {
        self.history.len()
    }

    /// Joins the components of `a` and `b` with one new edge. Returns `false`
    /// (and changes nothing) if they are already connected, i.e. the edge would
    /// close a cycle.
    pub fn add_edge(&mut self, a: usize, b: usize) -> bool {
        let (mut x, mut y) = (self.find(a), self.find(b));
        if x == y {
            return false;
        }
        if self.size[x] < self.size[y] {
            std::mem::swap(&mut x, &mut y);
        }
        self.history.push(Undo {
            child: y,
            root: x,
            root_size: self.size[x],
            root_edges: self.edges[x],
        });
        self.parent[y] = x;
        self.size[x] += self.size[y];
        self.edges[x] += self.edges[y] + 1;
        true
    }

    pub fn rollback(&mut self, time: usize) {
        while self.history.len() > time {
            let undo = self.history.pop().expect("history is nonempty");
            self.parent[undo.child] = undo.child;
            self.size[undo.root] = undo.root_size;
            self.edges[undo.root] = undo.root_edges;
        }
    }
}
