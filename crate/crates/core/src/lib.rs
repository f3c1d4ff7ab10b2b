//! Neighbourhood conditions, `(s, t)`-matchings and `k`-star coverings in
//! bipartite graphs.
//!
//! * [`bigraph`]: immutable bipartite graphs and direct deficiency evaluation.
//! * [`conditions`]: minimum deficiency over constrained subset families by
//!   max-flow, the `f`/`g` redundancy measures and the matching thresholds.
//! * [`solver`]: exact `(s, t)`-matching search, `k`-star covering
//!   construction and the critical-link augmentation on trees.
//! * [`gadgets`]: the tight families showing the threshold cannot be lowered.
//! * [`harness`]: small-graph enumeration and verification campaigns.
//!
//! All arithmetic is exact. The algorithms are generic over the integer type
//! behind the fractions; [`Rational`] is the default instantiation.

pub mod bigraph;
pub mod conditions;
mod flow;
pub mod gadgets;
pub mod harness;
pub mod scalar;
pub mod solver;
pub mod unionfind;

pub use num_rational::Ratio;

/// Exact fraction over `i64`; the instantiation used throughout the CLI.
pub type Rational = Ratio<i64>;

/// Exact fraction over arbitrary-precision integers.
pub type BigRational = Ratio<num_bigint::BigInt>;

pub use bigraph::{BipartiteGraph, GraphError, Side, VertexSet};
pub use conditions::{ConditionError, ConditionOutcome, DeficiencyReport, SubsetConstraints};
pub use scalar::{format_rational, parse_rational, ExactInt};
