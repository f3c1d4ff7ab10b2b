//! Parametric neighbourhood conditions.
//!
//! For a left set `S` and `α = p/q ≥ 0` the deficiency is
//! `h(S, α) = |Γ(S)| − α|S|`. Minimising `q|Γ(S)| − p|S|` over a family of
//! left sets is a closure (project-selection) problem: selecting a left vertex
//! earns `p`, and every right vertex it drags into `Γ(S)` costs `q`. One
//! maximum flow on
//!
//! ```text
//! source --p--> u --∞--> v --q--> sink
//! ```
//!
//! gives the minimum, and the residual source side of the cut is the
//! inclusion-minimal minimiser. Vertices forced into `S` get an infinite
//! source arc; excluded vertices are dropped from the network.
//!
//! [`min_deficiency_oracle`] evaluates the same contract by subset enumeration
//! and is the cross-check for the flow reduction.

use num_rational::Ratio;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteGraph, GraphError, Side, VertexSet};
use crate::flow::FlowNetwork;
use crate::scalar::{ceil_div, format_rational, ratio_from, serde_opt_ratio, serde_ratio, ExactInt};

/// Largest admissible denominator of `α`.
pub const MAX_ALPHA_DENOMINATOR: i64 = 1_000_000;

/// Default bound on `|U|` for [`min_deficiency_oracle`].
pub const DEFAULT_ORACLE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConditionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("alpha must be nonnegative, got {0}")]
    NegativeAlpha(String),
    #[error("alpha denominator of {0} exceeds {MAX_ALPHA_DENOMINATOR}")]
    DenominatorTooLarge(String),
    #[error("alpha {0} is too large for integer cut capacities")]
    AlphaTooLarge(String),
    #[error("oracle cap exceeded: |U| = {size} > {cap}")]
    OracleCapExceeded { size: usize, cap: usize },
    #[error("graph does not satisfy the {alpha}-neighbourhood condition (witness {witness:?})")]
    ConditionFails { alpha: String, witness: Vec<usize> },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Restricts the family of left sets a minimisation ranges over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetConstraints {
    pub forced_in: VertexSet,
    pub excluded: VertexSet,
    pub require_nonempty: bool,
}

impl Default for SubsetConstraints {
    fn default() -> Self {
        SubsetConstraints {
            forced_in: VertexSet::empty(Side::Left),
            excluded: VertexSet::empty(Side::Left),
            require_nonempty: true,
        }
    }
}

impl SubsetConstraints {
    /// All nonempty left sets.
    pub fn nonempty() -> Self {
        Self::default()
    }

    /// All left sets, including `∅`.
    pub fn any() -> Self {
        SubsetConstraints {
            require_nonempty: false,
            ..Self::default()
        }
    }

    pub fn forcing(mut self, vertices: impl IntoIterator<Item = usize>) -> Self {
        let extra = VertexSet::from_indices(Side::Left, vertices);
        self.forced_in = self.forced_in.union(&extra);
        self
    }

    pub fn excluding(mut self, vertices: impl IntoIterator<Item = usize>) -> Self {
        let extra = VertexSet::from_indices(Side::Left, vertices);
        self.excluded = self.excluded.union(&extra);
        self
    }

    /// The family `F_uv = {A : u ∈ A, v ∉ Γ(A∖u)}`.
    pub fn f_family(graph: &BipartiteGraph, u: usize, v: usize) -> Self {
        let others = graph.neighbors_right(v).iter().copied().filter(|&w| w != u);
        Self::any().forcing([u]).excluding(others)
    }

    fn validate(&self, graph: &BipartiteGraph) -> Result<(), GraphError> {
        for set in [&self.forced_in, &self.excluded] {
            if set.side() != Side::Left {
                return Err(GraphError::WrongSide {
                    expected: Side::Left,
                    found: set.side(),
                });
            }
            VertexSet::left(graph, set.iter())?;
        }
        Ok(())
    }

    /// `∅` when the constraints admit no set at all.
    fn is_contradictory(&self, graph: &BipartiteGraph) -> bool {
        if !self.forced_in.intersection(&self.excluded).is_empty() {
            return true;
        }
        self.require_nonempty
            && self.forced_in.is_empty()
            && self.excluded.len() == graph.u_count()
    }
}

/// Minimum of `h(S, α)` over a constrained family, with a minimiser.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct DeficiencyReport<T: ExactInt> {
    /// `None` exactly when the family is empty.
    #[serde(with = "serde_opt_ratio")]
    pub minimum: Option<Ratio<T>>,
    pub witness: VertexSet,
}

impl<T: ExactInt> DeficiencyReport<T> {
    fn empty_family() -> Self {
        DeficiencyReport {
            minimum: None,
            witness: VertexSet::empty(Side::Left),
        }
    }

    pub fn family_empty(&self) -> bool {
        self.minimum.is_none()
    }
}

/// `(p, q)` with `α = p/q`, validated for use as integer capacities.
fn alpha_parts<T: ExactInt>(alpha: &Ratio<T>) -> Result<(i64, i64), ConditionError> {
    let text = || format_rational(alpha);
    if alpha.is_negative() {
        return Err(ConditionError::NegativeAlpha(text()));
    }
    let q = alpha
        .denom()
        .to_i64()
        .filter(|&q| q <= MAX_ALPHA_DENOMINATOR)
        .ok_or_else(|| ConditionError::DenominatorTooLarge(text()))?;
    let p = alpha
        .numer()
        .to_i64()
        .filter(|&p| p <= i64::MAX >> 24)
        .ok_or_else(|| ConditionError::AlphaTooLarge(text()))?;
    Ok((p, q))
}

/// Solves `min q|Γ(S)| − p|S|` over `forced ⊆ S ⊆ available` by one max flow.
/// Returns the minimum and the inclusion-minimal minimiser.
fn closure_min(
    graph: &BipartiteGraph,
    p: i64,
    q: i64,
    available: &[bool],
    forced: &[bool],
) -> Result<(i64, Vec<usize>), ConditionError> {
    let nu = graph.u_count();
    let nv = graph.v_count();
    let overflow = || ConditionError::AlphaTooLarge(format!("{p}/{q}"));
    let infinite = (nu as i64)
        .checked_mul(p)
        .and_then(|a| (nv as i64).checked_mul(q).and_then(|b| a.checked_add(b)))
        .and_then(|s| s.checked_add(1))
        .ok_or_else(overflow)?;
    let (source, sink) = (0, 1);
    let left = |u: usize| 2 + u;
    let right = |v: usize| 2 + nu + v;
    let mut net = FlowNetwork::new(2 + nu + nv);
    let mut touched = vec![false; nv];
    let mut selectable = 0i64;
    for u in (0..nu).filter(|&u| available[u]) {
        selectable += 1;
        net.add_arc(source, left(u), if forced[u] { infinite } else { p });
        for &v in graph.neighbors_left(u) {
            net.add_arc(left(u), right(v), infinite);
            touched[v] = true;
        }
    }
    for v in (0..nv).filter(|&v| touched[v]) {
        net.add_arc(right(v), sink, q);
    }
    let cut = net.max_flow(source, sink);
    let reach = net.residual_reachable(source);
    let witness = (0..nu).filter(|&u| reach[left(u)]).collect();
    Ok((cut - p * selectable, witness))
}

/// Exact minimum of `h(S, α)` over the constrained family, via max flow.
///
/// The witness is the inclusion-minimal minimiser. When `∅` is the minimal
/// minimiser but nonempty sets are required, the nonempty minimum is found by
/// splitting the family on its smallest member (one flow per candidate) and the
/// first minimising split wins.
pub fn min_deficiency<T: ExactInt>(
    graph: &BipartiteGraph,
    alpha: &Ratio<T>,
    constraints: &SubsetConstraints,
) -> Result<DeficiencyReport<T>, ConditionError> {
    let (p, q) = alpha_parts(alpha)?;
    constraints.validate(graph)?;
    if constraints.is_contradictory(graph) {
        return Ok(DeficiencyReport::empty_family());
    }
    let nu = graph.u_count();
    let mut available = vec![true; nu];
    constraints.excluded.iter().for_each(|u| available[u] = false);
    let mut forced = vec![false; nu];
    constraints.forced_in.iter().for_each(|u| forced[u] = true);

    let (mut best, mut witness) = closure_min(graph, p, q, &available, &forced)?;
    if witness.is_empty() && constraints.require_nonempty {
        let mut found = None;
        for u in 0..nu {
            if !available[u] {
                continue;
            }
            let mut only_u = vec![false; nu];
            only_u[u] = true;
            let (value, w) = closure_min(graph, p, q, &available, &only_u)?;
            if found.as_ref().is_none_or(|(b, _)| value < *b) {
                found = Some((value, w));
            }
            available[u] = false;
        }
        (best, witness) = found.expect("family is nonempty");
    }
    Ok(DeficiencyReport {
        minimum: Some(ratio_from(best, q)),
        witness: VertexSet::from_sorted(Side::Left, witness),
    })
}

/// Same contract as [`min_deficiency`] by exhaustive enumeration of subsets,
/// for `|U| ≤ cap`. Ties go to the first minimiser in bitmask order.
pub fn min_deficiency_oracle<T: ExactInt>(
    graph: &BipartiteGraph,
    alpha: &Ratio<T>,
    constraints: &SubsetConstraints,
    cap: usize,
) -> Result<DeficiencyReport<T>, ConditionError> {
    let nu = graph.u_count();
    if nu > cap || nu >= 63 {
        return Err(ConditionError::OracleCapExceeded { size: nu, cap });
    }
    if alpha.is_negative() {
        return Err(ConditionError::NegativeAlpha(format_rational(alpha)));
    }
    constraints.validate(graph)?;
    let forced: u64 = constraints.forced_in.iter().map(|u| 1u64 << u).sum();
    let excluded: u64 = constraints.excluded.iter().map(|u| 1u64 << u).sum();
    let words = graph.v_count().div_ceil(64).max(1);
    let mut best: Option<(Ratio<T>, u64)> = None;
    let mut gamma = vec![0u64; words];
    for mask in 0u64..(1u64 << nu) {
        if mask & forced != forced || mask & excluded != 0 {
            continue;
        }
        if constraints.require_nonempty && mask == 0 {
            continue;
        }
        gamma.fill(0);
        for u in (0..nu).filter(|&u| mask >> u & 1 == 1) {
            for &v in graph.neighbors_left(u) {
                gamma[v / 64] |= 1 << (v % 64);
            }
        }
        let size: u32 = gamma.iter().map(|w| w.count_ones()).sum();
        let value = Ratio::from_integer(T::from_u32(size).expect("fits"))
            - alpha * Ratio::from_integer(T::from_u32(mask.count_ones()).expect("fits"));
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, mask));
        }
    }
    Ok(match best {
        None => DeficiencyReport::empty_family(),
        Some((value, mask)) => DeficiencyReport {
            minimum: Some(value),
            witness: VertexSet::from_sorted(
                Side::Left,
                (0..nu).filter(|&u| mask >> u & 1 == 1).collect(),
            ),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case", bound = "")]
pub enum ConditionOutcome<T: ExactInt> {
    Holds,
    Violated {
        witness: VertexSet,
        #[serde(with = "serde_ratio")]
        deficiency: Ratio<T>,
    },
}

impl<T: ExactInt> ConditionOutcome<T> {
    pub fn holds(&self) -> bool {
        matches!(self, ConditionOutcome::Holds)
    }
}

/// Does `|Γ(S)| ≥ α|S|` hold for every `S ⊆ U`? On failure the witness is the
/// inclusion-minimal set of minimum (negative) deficiency.
pub fn check_condition<T: ExactInt>(
    graph: &BipartiteGraph,
    alpha: &Ratio<T>,
) -> Result<ConditionOutcome<T>, ConditionError> {
    // The unconstrained minimum is negative iff some nonempty set is deficient.
    let report = min_deficiency(graph, alpha, &SubsetConstraints::any())?;
    let minimum = report.minimum.expect("family containing ∅ is nonempty");
    Ok(if minimum.is_negative() {
        ConditionOutcome::Violated {
            witness: report.witness,
            deficiency: minimum,
        }
    } else {
        ConditionOutcome::Holds
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case", bound = "")]
pub enum DoubleSidedOutcome<T: ExactInt> {
    Holds,
    Violated {
        side: Side,
        witness: VertexSet,
        #[serde(with = "serde_ratio")]
        deficiency: Ratio<T>,
    },
}

impl<T: ExactInt> DoubleSidedOutcome<T> {
    pub fn holds(&self) -> bool {
        matches!(self, DoubleSidedOutcome::Holds)
    }
}

/// The condition on both `U` and `V`; the left side is reported first.
pub fn check_double_sided<T: ExactInt>(
    graph: &BipartiteGraph,
    alpha: &Ratio<T>,
) -> Result<DoubleSidedOutcome<T>, ConditionError> {
    if let ConditionOutcome::Violated {
        witness,
        deficiency,
    } = check_condition(graph, alpha)?
    {
        return Ok(DoubleSidedOutcome::Violated {
            side: Side::Left,
            witness,
            deficiency,
        });
    }
    Ok(match check_condition(&graph.mirror(), alpha)? {
        ConditionOutcome::Holds => DoubleSidedOutcome::Holds,
        ConditionOutcome::Violated {
            witness,
            deficiency,
        } => DoubleSidedOutcome::Violated {
            side: Side::Right,
            witness: witness.mirrored(),
            deficiency,
        },
    })
}

fn require_edge(graph: &BipartiteGraph, u: usize, v: usize) -> Result<(), ConditionError> {
    if graph.has_edge(u, v) {
        Ok(())
    } else {
        Err(GraphError::NotAnEdge(u, v).into())
    }
}

/// `f(uv, α)` with its minimiser from `F_uv`.
pub fn f_report<T: ExactInt>(
    graph: &BipartiteGraph,
    u: usize,
    v: usize,
    alpha: &Ratio<T>,
) -> Result<DeficiencyReport<T>, ConditionError> {
    require_edge(graph, u, v)?;
    min_deficiency(graph, alpha, &SubsetConstraints::f_family(graph, u, v))
}

/// `f(uv, α) = min { h(A, α) : u ∈ A, v ∉ Γ(A∖u) }`. `F_uv` always contains `{u}`.
pub fn f_value<T: ExactInt>(
    graph: &BipartiteGraph,
    u: usize,
    v: usize,
    alpha: &Ratio<T>,
) -> Result<Ratio<T>, ConditionError> {
    Ok(f_report(graph, u, v, alpha)?
        .minimum
        .expect("F_uv contains {u}"))
}

/// `g(uv, α)` with its minimiser from `G_uv`; `None` witness for pendant `v`.
pub fn g_report<T: ExactInt>(
    graph: &BipartiteGraph,
    u: usize,
    v: usize,
    alpha: &Ratio<T>,
) -> Result<(Ratio<T>, Option<VertexSet>), ConditionError> {
    require_edge(graph, u, v)?;
    alpha_parts(alpha)?;
    if graph.degree_right(v) == 1 {
        return Ok((Ratio::one(), None));
    }
    // Every A ∈ G_uv contains some other neighbour w of v.
    let mut best: Option<DeficiencyReport<T>> = None;
    for &w in graph.neighbors_right(v).iter().filter(|&&w| w != u) {
        let family = SubsetConstraints::any().forcing([w]).excluding([u]);
        let report = min_deficiency(graph, alpha, &family)?;
        if best
            .as_ref()
            .is_none_or(|b| report.minimum < b.minimum)
        {
            best = Some(report);
        }
    }
    let best = best.expect("d(v) ≥ 2");
    Ok((best.minimum.expect("contains {w}"), Some(best.witness)))
}

/// `g(uv, α) = min { h(A, α) : A ⊆ U∖u, v ∈ Γ(A) }`, and `1` when `d(v) = 1`.
pub fn g_value<T: ExactInt>(
    graph: &BipartiteGraph,
    u: usize,
    v: usize,
    alpha: &Ratio<T>,
) -> Result<Ratio<T>, ConditionError> {
    Ok(g_report(graph, u, v, alpha)?.0)
}

/// Whether deleting `uv` preserves the `α`-condition, decided as `f(uv, α) ≥ 1`.
/// The graph itself must satisfy the condition.
pub fn is_redundant<T: ExactInt>(
    graph: &BipartiteGraph,
    u: usize,
    v: usize,
    alpha: &Ratio<T>,
) -> Result<bool, ConditionError> {
    require_edge(graph, u, v)?;
    if let ConditionOutcome::Violated { witness, .. } = check_condition(graph, alpha)? {
        return Err(ConditionError::ConditionFails {
            alpha: format_rational(alpha),
            witness: witness.members().to_vec(),
        });
    }
    Ok(f_value(graph, u, v, alpha)? >= Ratio::one())
}

/// Parameters `(h, k, d)` of the bounded-degree threshold, with `r = d − h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdParams {
    h: u64,
    k: u64,
    d: u64,
}

impl ThresholdParams {
    pub fn new(h: u64, k: u64, d: u64) -> Result<Self, ConditionError> {
        if h < 2 || k < 1 || d <= h {
            return Err(ConditionError::InvalidParams(format!(
                "need k ≥ 1 and d > h ≥ 2, got h={h} k={k} d={d}"
            )));
        }
        Ok(ThresholdParams { h, k, d })
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn r(&self) -> u64 {
        self.d - self.h
    }
}

fn to_i64(x: u64) -> Result<i64, ConditionError> {
    i64::try_from(x).map_err(|_| ConditionError::InvalidParams(format!("{x} is too large")))
}

/// `h − 1 + (d − h + 1) / (k + 1 + (d − h − 1)⌈k/h⌉)`: the neighbourhood ratio
/// that guarantees an `(h, hk)`-matching when left degrees are at most `d`.
pub fn threshold_main<T: ExactInt>(params: ThresholdParams) -> Result<Ratio<T>, ConditionError> {
    let ThresholdParams { h, k, d } = params;
    let c = ceil_div(k, h);
    let numer = to_i64(d - h + 1)?;
    let denom = (d - h - 1)
        .checked_mul(c)
        .and_then(|x| x.checked_add(k + 1))
        .ok_or_else(|| ConditionError::InvalidParams("threshold overflow".into()))?;
    Ok(crate::scalar::int::<T>(to_i64(h)? - 1) + ratio_from::<T>(numer, to_i64(denom)?))
}

/// `h − 1 + 1/⌈k/h⌉`, the degree-free threshold (limit of [`threshold_main`]
/// as `d → ∞`).
pub fn threshold_summary<T: ExactInt>(h: u64, k: u64) -> Result<Ratio<T>, ConditionError> {
    if h < 2 || k < 1 {
        return Err(ConditionError::InvalidParams(format!(
            "need k ≥ 1 and h ≥ 2, got h={h} k={k}"
        )));
    }
    let c = ceil_div(k, h);
    Ok(crate::scalar::int::<T>(to_i64(h)? - 1) + ratio_from::<T>(1, to_i64(c)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_bigint::BigInt;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn k23() -> BipartiteGraph {
        BipartiteGraph::complete(2, 3)
    }

    #[test]
    fn threshold_values() {
        let t = |h, k, d| threshold_main::<i64>(ThresholdParams::new(h, k, d).unwrap()).unwrap();
        assert_eq!(t(2, 2, 3), r(5, 3));
        assert_eq!(t(2, 4, 3), r(7, 5));
        // 2 + 2/(4 + 0·1)
        assert_eq!(t(3, 3, 4), r(5, 2));
        assert_eq!(threshold_summary::<i64>(2, 2).unwrap(), r(2, 1));
        assert_eq!(threshold_summary::<i64>(2, 4).unwrap(), r(3, 2));
        assert_eq!(threshold_summary::<i64>(3, 7).unwrap(), r(7, 3));
    }

    #[test]
    fn threshold_rejects_bad_params() {
        assert!(ThresholdParams::new(1, 2, 3).is_err());
        assert!(ThresholdParams::new(2, 0, 3).is_err());
        assert!(ThresholdParams::new(2, 2, 2).is_err());
        assert!(threshold_summary::<i64>(2, 0).is_err());
        assert!(threshold_summary::<i64>(1, 1).is_err());
    }

    #[test]
    fn threshold_generic_scalars_agree() {
        let p = ThresholdParams::new(3, 7, 1_000_000).unwrap();
        let small = threshold_main::<i64>(p).unwrap();
        let big = threshold_main::<BigInt>(p).unwrap();
        assert_eq!(format_rational(&small), format_rational(&big));
    }

    #[test]
    fn min_deficiency_k23() {
        let report = min_deficiency(&k23(), &r(5, 3), &SubsetConstraints::nonempty()).unwrap();
        assert_eq!(report.minimum, Some(r(-1, 3)));
        assert_eq!(report.witness.members(), &[0, 1]);
    }

    #[test]
    fn min_deficiency_star_is_zero_at_center() {
        let star = BipartiteGraph::complete(1, 3);
        let report = min_deficiency(&star, &r(3, 1), &SubsetConstraints::nonempty()).unwrap();
        assert_eq!(report.minimum, Some(r(0, 1)));
        assert_eq!(report.witness.members(), &[0]);
    }

    #[test]
    fn min_deficiency_allows_empty_set() {
        let report = min_deficiency(&k23(), &r(1, 1), &SubsetConstraints::any()).unwrap();
        assert_eq!(report.minimum, Some(r(0, 1)));
        assert!(report.witness.is_empty());
        // nonempty: singletons give 3 − 1 = 2, the pair gives 3 − 2 = 1
        let report = min_deficiency(&k23(), &r(1, 1), &SubsetConstraints::nonempty()).unwrap();
        assert_eq!(report.minimum, Some(r(1, 1)));
        assert_eq!(report.witness.members(), &[0, 1]);
    }

    #[test]
    fn contradictory_constraints_flag_empty_family() {
        let g = k23();
        let c = SubsetConstraints::any().forcing([0]).excluding([0]);
        assert!(min_deficiency(&g, &r(1, 1), &c).unwrap().family_empty());
        assert!(min_deficiency_oracle(&g, &r(1, 1), &c, 20)
            .unwrap()
            .family_empty());
        let all_out = SubsetConstraints::nonempty().excluding([0, 1]);
        assert!(min_deficiency(&g, &r(1, 1), &all_out).unwrap().family_empty());
    }

    #[test]
    fn alpha_validation() {
        let g = k23();
        let c = SubsetConstraints::nonempty();
        assert!(matches!(
            min_deficiency(&g, &r(-1, 2), &c),
            Err(ConditionError::NegativeAlpha(_))
        ));
        assert!(matches!(
            min_deficiency(&g, &r(1, 1_000_001), &c),
            Err(ConditionError::DenominatorTooLarge(_))
        ));
        let bad = SubsetConstraints::any().forcing([7]);
        assert!(matches!(
            min_deficiency(&g, &r(1, 1), &bad),
            Err(ConditionError::Graph(GraphError::LeftOutOfRange { .. }))
        ));
    }

    #[test]
    fn oracle_cap() {
        let g = BipartiteGraph::complete(21, 1);
        assert!(matches!(
            min_deficiency_oracle(&g, &r(1, 1), &SubsetConstraints::nonempty(), DEFAULT_ORACLE_CAP),
            Err(ConditionError::OracleCapExceeded { size: 21, cap: 20 })
        ));
    }

    #[test]
    fn oracle_agrees_on_k23() {
        let report =
            min_deficiency_oracle(&k23(), &r(5, 3), &SubsetConstraints::nonempty(), 20).unwrap();
        assert_eq!(report.minimum, Some(r(-1, 3)));
    }

    #[test]
    fn check_condition_cases() {
        match check_condition(&k23(), &r(5, 3)).unwrap() {
            ConditionOutcome::Violated {
                witness,
                deficiency,
            } => {
                assert_eq!(witness.members(), &[0, 1]);
                assert_eq!(deficiency, r(-1, 3));
            }
            ConditionOutcome::Holds => panic!("K_{{2,3}} fails at 5/3"),
        }
        assert!(check_condition(&k23(), &r(3, 2)).unwrap().holds());
        // K_{1,3} plus an isolated left vertex
        let g = BipartiteGraph::new(2, 3, [(0, 0), (0, 1), (0, 2)]).unwrap();
        match check_condition(&g, &r(1, 1)).unwrap() {
            ConditionOutcome::Violated { witness, .. } => assert_eq!(witness.members(), &[1]),
            ConditionOutcome::Holds => panic!("isolated vertex must violate"),
        }
    }

    #[test]
    fn double_sided_cases() {
        let star = BipartiteGraph::complete(1, 3);
        match check_double_sided(&star, &r(1, 2)).unwrap() {
            DoubleSidedOutcome::Violated {
                side,
                witness,
                deficiency,
            } => {
                assert_eq!(side, Side::Right);
                assert_eq!(witness.members(), &[0, 1, 2]);
                assert_eq!(witness.side(), Side::Right);
                assert_eq!(deficiency, r(-1, 2));
            }
            DoubleSidedOutcome::Holds => panic!("3 leaves share one neighbour"),
        }
        assert!(check_double_sided(&BipartiteGraph::complete(1, 1), &r(1, 1))
            .unwrap()
            .holds());
        assert!(check_double_sided(&star, &r(1, 3)).unwrap().holds());
    }

    #[test]
    fn f_values() {
        assert_eq!(
            f_value(&BipartiteGraph::complete(1, 1), 0, 0, &r(1, 1)).unwrap(),
            r(0, 1)
        );
        for (u, v) in k23().edges().to_vec() {
            assert_eq!(f_value(&k23(), u, v, &r(3, 2)).unwrap(), r(3, 2));
        }
        assert_eq!(
            f_value(&BipartiteGraph::complete(1, 2), 0, 0, &r(1, 1)).unwrap(),
            r(1, 1)
        );
        assert!(matches!(
            f_value(&BipartiteGraph::new(1, 2, [(0, 0)]).unwrap(), 0, 1, &r(1, 1)),
            Err(ConditionError::Graph(GraphError::NotAnEdge(0, 1)))
        ));
    }

    #[test]
    fn g_values() {
        let pendant = BipartiteGraph::complete(1, 2);
        assert_eq!(g_value(&pendant, 0, 1, &r(7, 3)).unwrap(), r(1, 1));
        assert_eq!(g_value(&k23(), 0, 0, &r(3, 2)).unwrap(), r(3, 2));
        let c4 = BipartiteGraph::complete(2, 2);
        let (value, witness) = g_report(&c4, 0, 0, &r(1, 1)).unwrap();
        assert_eq!(value, r(1, 1));
        assert_eq!(witness.unwrap().members(), &[1]);
    }

    #[test]
    fn redundancy_cases() {
        let k12 = BipartiteGraph::complete(1, 2);
        assert!(is_redundant(&k12, 0, 0, &r(1, 1)).unwrap());
        assert!(is_redundant(&k12, 0, 1, &r(1, 1)).unwrap());
        assert!(!is_redundant(&BipartiteGraph::complete(1, 1), 0, 0, &r(1, 1)).unwrap());
        for (u, v) in k23().edges().to_vec() {
            assert!(is_redundant(&k23(), u, v, &r(3, 2)).unwrap());
        }
        assert!(matches!(
            is_redundant(&k23(), 0, 0, &r(5, 3)),
            Err(ConditionError::ConditionFails { .. })
        ));
    }
}
