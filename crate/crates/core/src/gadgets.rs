//! Tight-family constructions: graphs of maximum left degree `d` that satisfy
//! the neighbourhood condition at ratios approaching the threshold from below
//! yet contain no `(h, hk)`-matching.
//!
//! Left vertices play the role of hyperedges on the right vertex set. Building
//! blocks:
//!
//! * `I_q`: a chain of `q` hyperedges of size `h`, consecutive ones sharing
//!   one vertex; `I_0` is a single anchor vertex.
//! * star edge: one hyperedge of size `h + 1` on two ports, `h − 2` fresh
//!   vertices and an anchor carrying `I_a`.
//! * triangle edge: one hyperedge of size `d` on two ports and `d − 2`
//!   anchors, `b + r − 2` of them carrying `I_{a+1}` and `h − b` carrying `I_a`.
//! * `H`: a centre of degree `d` whose spine vertices carry `L_i = I_{a+1}`
//!   (`i ≤ b + r`) and `M_j = I_a` (`j ≤ h − b`).
//! * `J_n`: an odd cycle of `2n + 1` junctions whose sides alternate star and
//!   triangle edges, with two star edges meeting at `v_1`.
//! * `G_n`: `H` with `L_1` cut back to its spine vertex `v_1`, glued to `J_n`
//!   at `v_1`.
//!
//! Here `k = ah + b` with `b ∈ 1..=h` and `r = d − h`.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bigraph::BipartiteGraph;
use crate::scalar::{format_rational, int, ratio_from, ExactInt};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GadgetError {
    #[error("invalid gadget parameters: {0}")]
    InvalidParams(String),
}

fn invalid<T>(message: impl Into<String>) -> Result<T, GadgetError> {
    Err(GadgetError::InvalidParams(message.into()))
}

/// Parameters of a tight family member `G_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GadgetSpec {
    h: usize,
    k: usize,
    d: usize,
    n: usize,
}

impl GadgetSpec {
    /// Requires `k ≥ 2`, `d > h ≥ 2` and `n ≥ 1`.
    pub fn new(h: usize, k: usize, d: usize, n: usize) -> Result<Self, GadgetError> {
        if h < 2 {
            return invalid(format!("h = {h}: the construction needs h ≥ 2"));
        }
        if k < 2 {
            return invalid(format!("k = {k}: need k ≥ 2"));
        }
        if d <= h {
            return invalid(format!("d = {d}: need d > h = {h}"));
        }
        if n < 1 {
            return invalid("n must be at least 1");
        }
        Ok(GadgetSpec { h, k, d, n })
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.d - self.h
    }

    /// Quotient in `k = ah + b`, `b ∈ 1..=h`.
    pub fn a(&self) -> usize {
        (self.k - 1) / self.h
    }

    pub fn b(&self) -> usize {
        self.k - self.a() * self.h
    }

    /// Closed-form `|U_n|`.
    pub fn predicted_left_count(&self) -> usize {
        let (k, n, a, r) = (self.k, self.n, self.a(), self.r());
        (n + 1) * (k + 1 + (a + 1) * (r - 1)) + a + 1
    }

    /// Closed-form `|V_n| = (h − 1)|U_n| + (n + 1)(r + 1)`.
    pub fn predicted_right_count(&self) -> usize {
        (self.h - 1) * self.predicted_left_count() + (self.n + 1) * (self.r() + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetStats {
    pub left: usize,
    pub right: usize,
    pub max_left_degree: usize,
    /// Left/right vertices contributed by `J_n` apart from `v_1`, for `G_n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub augment_left: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub augment_right: Option<usize>,
}

/// A constructed graph with its named right-side port vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub graph: BipartiteGraph,
    pub ports: BTreeMap<String, usize>,
    pub stats: GadgetStats,
    pub spec: Option<GadgetSpec>,
}

impl Gadget {
    fn finish(builder: Builder, ports: &[(&str, usize)], spec: Option<GadgetSpec>) -> Self {
        let graph = BipartiteGraph::new(builder.u_count, builder.v_count, builder.edges)
            .expect("builder emits valid distinct edges");
        let stats = GadgetStats {
            left: graph.u_count(),
            right: graph.v_count(),
            max_left_degree: graph.max_left_degree(),
            augment_left: None,
            augment_right: None,
        };
        Gadget {
            graph,
            ports: ports.iter().map(|&(n, v)| (n.to_string(), v)).collect(),
            stats,
            spec,
        }
    }

    /// Canonical graph JSON plus a `"meta"` object with the spec, ports and
    /// (for tight-family members) the predicted ratio as `"p/q"`.
    pub fn to_json_with_meta(&self) -> serde_json::Value {
        let mut value = serde_json::to_value(self.graph.to_json()).expect("graph serializes");
        let meta = serde_json::json!({
            "spec": self.spec.map(|s| serde_json::json!({
                "h": s.h, "k": s.k, "d": s.d, "n": s.n,
                "a": s.a(), "b": s.b(), "r": s.r(),
            })),
            "ports": self.ports,
            "predicted_ratio": self
                .spec
                .map(|s| format_rational(&tight_family_ratio::<i64>(&s))),
            "stats": self.stats,
        });
        value["meta"] = meta;
        value
    }
}

#[derive(Default)]
struct Builder {
    u_count: usize,
    v_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn right(&mut self) -> usize {
        self.v_count += 1;
        self.v_count - 1
    }

    fn left(&mut self, neighbors: &[usize]) -> usize {
        let u = self.u_count;
        self.u_count += 1;
        self.edges.extend(neighbors.iter().map(|&v| (u, v)));
        u
    }

    /// Hangs `I_q` off `anchor` (as its first path vertex); returns the far end.
    fn chain(&mut self, anchor: usize, q: usize, h: usize) -> usize {
        let mut prev = anchor;
        for _ in 0..q {
            let next = self.right();
            let mut hyperedge = vec![prev, next];
            hyperedge.extend((0..h - 2).map(|_| self.right()));
            self.left(&hyperedge);
            prev = next;
        }
        prev
    }

    fn star_edge(&mut self, v: usize, w: usize, h: usize, a: usize) {
        let mut hyperedge = vec![v, w];
        hyperedge.extend((0..h - 2).map(|_| self.right()));
        let anchor = self.right();
        hyperedge.push(anchor);
        self.left(&hyperedge);
        self.chain(anchor, a, h);
    }

    fn triangle_edge(&mut self, v: usize, w: usize, h: usize, r: usize, a: usize, b: usize) {
        let long: Vec<usize> = (0..b + r - 2).map(|_| self.right()).collect();
        let short: Vec<usize> = (0..h - b).map(|_| self.right()).collect();
        let mut hyperedge = vec![v, w];
        hyperedge.extend(&long);
        hyperedge.extend(&short);
        self.left(&hyperedge);
        for &x in &long {
            self.chain(x, a + 1, h);
        }
        for &x in &short {
            self.chain(x, a, h);
        }
    }

    /// `H` (or `H'` when `trim_first`), returning `v_1`.
    fn base(&mut self, h: usize, r: usize, a: usize, b: usize, trim_first: bool) -> usize {
        let spine: Vec<usize> = (0..h + r).map(|_| self.right()).collect();
        self.left(&spine);
        for (i, &x) in spine.iter().enumerate() {
            let q = if i < b + r { a + 1 } else { a };
            if !(trim_first && i == 0) {
                self.chain(x, q, h);
            }
        }
        spine[0]
    }

    /// `J_n` on junction `j_0 = v1`.
    fn augment(&mut self, v1: usize, n: usize, h: usize, r: usize, a: usize, b: usize) {
        let mut junctions = vec![v1];
        junctions.extend((0..2 * n).map(|_| self.right()));
        let m = junctions.len();
        for i in 0..m {
            let (x, y) = (junctions[i], junctions[(i + 1) % m]);
            if i % 2 == 0 {
                self.star_edge(x, y, h, a);
            } else {
                self.triangle_edge(x, y, h, r, a, b);
            }
        }
    }
}

fn check_h(h: usize) -> Result<(), GadgetError> {
    if h < 2 {
        return invalid(format!("h = {h}: need h ≥ 2"));
    }
    Ok(())
}

fn check_split(h: usize, r: usize, b: usize) -> Result<(), GadgetError> {
    check_h(h)?;
    if r < 1 {
        return invalid("r = d − h must be at least 1");
    }
    if !(1..=h).contains(&b) {
        return invalid(format!("b = {b} outside 1..={h}"));
    }
    Ok(())
}

/// `I_q` with ports `v` (first path vertex) and `w` (last).
pub fn chain_gadget(q: usize, h: usize) -> Result<Gadget, GadgetError> {
    check_h(h)?;
    if q < 1 {
        return invalid("q must be at least 1");
    }
    let mut builder = Builder::default();
    let v = builder.right();
    let w = builder.chain(v, q, h);
    Ok(Gadget::finish(builder, &[("v", v), ("w", w)], None))
}

pub fn star_edge(h: usize, a: usize) -> Result<Gadget, GadgetError> {
    check_h(h)?;
    let mut builder = Builder::default();
    let (v, w) = (builder.right(), builder.right());
    builder.star_edge(v, w, h, a);
    Ok(Gadget::finish(builder, &[("v", v), ("w", w)], None))
}

pub fn triangle_edge(h: usize, r: usize, a: usize, b: usize) -> Result<Gadget, GadgetError> {
    check_h(h)?;
    if b + r < 2 || b > h {
        return invalid(format!("need b + r ≥ 2 and b ≤ h, got b={b} r={r} h={h}"));
    }
    let mut builder = Builder::default();
    let (v, w) = (builder.right(), builder.right());
    builder.triangle_edge(v, w, h, r, a, b);
    Ok(Gadget::finish(builder, &[("v", v), ("w", w)], None))
}

pub fn base_graph(h: usize, r: usize, a: usize, b: usize) -> Result<Gadget, GadgetError> {
    check_split(h, r, b)?;
    let mut builder = Builder::default();
    let v1 = builder.base(h, r, a, b, false);
    Ok(Gadget::finish(builder, &[("v_1", v1)], None))
}

pub fn augment_gadget(
    n: usize,
    h: usize,
    r: usize,
    a: usize,
    b: usize,
) -> Result<Gadget, GadgetError> {
    check_split(h, r, b)?;
    if n < 1 {
        return invalid("n must be at least 1");
    }
    let mut builder = Builder::default();
    let v1 = builder.right();
    builder.augment(v1, n, h, r, a, b);
    Ok(Gadget::finish(builder, &[("v_1", v1)], None))
}

/// `G_n` for the given parameters.
pub fn tight_family(h: usize, k: usize, d: usize, n: usize) -> Result<Gadget, GadgetError> {
    let spec = GadgetSpec::new(h, k, d, n)?;
    let (r, a, b) = (spec.r(), spec.a(), spec.b());
    let mut builder = Builder::default();
    let v1 = builder.base(h, r, a, b, true);
    let (base_left, base_right) = (builder.u_count, builder.v_count);
    builder.augment(v1, n, h, r, a, b);
    let (left, right) = (builder.u_count, builder.v_count);
    let mut gadget = Gadget::finish(builder, &[("v_1", v1)], Some(spec));
    gadget.stats.augment_left = Some(left - base_left);
    gadget.stats.augment_right = Some(right - base_right);
    Ok(gadget)
}

/// `R_{G_n}(U_n) = |V_n| / |U_n|`, exactly:
/// `h − 1 + (n+1)(r+1) / ((n+1)(k + 1 + (a+1)(r−1)) + a + 1)`.
pub fn tight_family_ratio<T: ExactInt>(spec: &GadgetSpec) -> Ratio<T> {
    let numerator = ((spec.n + 1) * (spec.r() + 1)) as i64;
    int::<T>(spec.h as i64 - 1) + ratio_from::<T>(numerator, spec.predicted_left_count() as i64)
}
