use serde_json::json;

use super::{enumerate_bipartite, exhaustive_k_star_covering, run, EnumerationBounds, HarnessError, Outcome};
use crate::bigraph::{BipartiteGraph, Side, VertexSet};
use crate::conditions::{
    check_condition, check_double_sided, min_deficiency, threshold_main, ConditionOutcome,
    SubsetConstraints, ThresholdParams,
};
use crate::gadgets::{tight_family, tight_family_ratio};
use crate::scalar::format_rational;
use crate::solver::{
    find_k_star_covering, find_st_matching, verify_k_star_covering, verify_st_matching, StSearch,
};
use crate::Rational;

/// Default node budget per `(s, t)`-matching search in campaigns.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Parameters of the main-theorem campaign.
#[derive(Debug, Clone)]
pub struct TheoremMainConfig {
    pub h: u64,
    pub k: u64,
    pub d: u64,
    pub bounds: EnumerationBounds,
    /// Replaces the threshold; used by the detector self-test.
    pub alpha: Option<Rational>,
    /// Extra graphs checked before the enumerated ones.
    pub inject: Vec<BipartiteGraph>,
    pub budget: u64,
    pub workers: usize,
}

impl TheoremMainConfig {
    pub fn new(h: u64, k: u64, d: u64, bounds: EnumerationBounds) -> Self {
        TheoremMainConfig {
            h,
            k,
            d,
            bounds,
            alpha: None,
            inject: Vec::new(),
            budget: DEFAULT_BUDGET,
            workers: 0,
        }
    }
}

/// For every graph with left degrees at most `d` that satisfies the
/// condition at the threshold (or the override), searches for an
/// `(h, hk)`-matching. A proven absence is a counterexample; an exhausted
/// budget is inconclusive.
pub fn verify_theorem_main(config: &TheoremMainConfig) -> Result<super::CampaignReport, HarnessError> {
    let params = ThresholdParams::new(config.h, config.k, config.d)?;
    let alpha = match config.alpha {
        Some(a) => a,
        None => threshold_main::<i64>(params)?,
    };
    let (s, t) = (config.h as usize, (config.h * config.k) as usize);
    let d = config.d as usize;
    let stream = config
        .inject
        .clone()
        .into_iter()
        .chain(enumerate_bipartite(&config.bounds)?);
    run("theorem_main", config.workers, stream, |g| {
        if g.max_left_degree() > d {
            return Outcome::skipped();
        }
        let mut outcome = Outcome::default();
        match check_condition(&g, &alpha) {
            Err(e) => return Outcome::from_error(&g, e),
            Ok(ConditionOutcome::Violated { .. }) => return outcome,
            Ok(ConditionOutcome::Holds) => outcome.holder = true,
        }
        match find_st_matching(&g, s, t, config.budget) {
            Err(e) => return Outcome::from_error(&g, e),
            Ok(StSearch::Found { cover, .. }) => {
                outcome.check("matching_found");
                if let Err(reason) = verify_st_matching(&g, s, t, &cover.edges) {
                    outcome.fail(&g, json!({ "invalid_matching": reason.to_string() }));
                }
            }
            Ok(StSearch::NotFound { nodes }) => outcome.fail(
                &g,
                json!({
                    "alpha": format_rational(&alpha),
                    "no_matching": { "s": s, "t": t, "nodes": nodes },
                }),
            ),
            Ok(StSearch::BudgetExceeded { nodes }) => {
                outcome
                    .inconclusive
                    .push(super::Finding::new(&g, json!({ "budget_exceeded": nodes })));
            }
        }
        outcome
    })
}

/// Builds `G_n` for each `n` and checks that it satisfies the condition at
/// its own ratio with `U_n` attaining deficiency 0, has no `(h, hk)`-matching,
/// and that its ratio lies below the threshold and increases with `n`.
pub fn verify_prop_counter(
    h: u64,
    k: u64,
    d: u64,
    ns: impl IntoIterator<Item = usize>,
    budget: u64,
    workers: usize,
) -> Result<super::CampaignReport, HarnessError> {
    let threshold = threshold_main::<i64>(ThresholdParams::new(h, k, d)?)?;
    let mut gadgets = Vec::new();
    for n in ns {
        gadgets.push(tight_family(h as usize, k as usize, d as usize, n)?);
    }
    let ratios: Vec<Rational> = gadgets
        .iter()
        .map(|g| tight_family_ratio::<i64>(&g.spec.expect("tight family carries its spec")))
        .collect();
    let (s, t) = (h as usize, (h * k) as usize);
    let items: Vec<usize> = (0..gadgets.len()).collect();
    run("prop_counter", workers, items.into_iter(), |i| {
        let g = &gadgets[i].graph;
        let ratio = ratios[i];
        let mut outcome = Outcome::default();

        let n = gadgets[i].spec.map(|s| s.n());
        if ratio >= threshold {
            outcome.fail(g, json!({ "n": n, "ratio_not_below_threshold": format_rational(&ratio) }));
        }
        outcome.check("ratio_below_threshold");
        if i > 0 && ratio <= ratios[i - 1] {
            outcome.fail(g, json!({ "n": n, "ratio_not_increasing": format_rational(&ratio) }));
        }
        outcome.check("ratio_increasing");

        match check_condition(g, &ratio) {
            Ok(ConditionOutcome::Holds) => outcome.holder = true,
            Ok(ConditionOutcome::Violated { witness, deficiency }) => outcome.fail(
                g,
                json!({ "n": n, "condition_fails": witness.members(), "deficiency": format_rational(&deficiency) }),
            ),
            Err(e) => return Outcome::from_error(g, e),
        }
        let all = VertexSet::all(g, Side::Left);
        let attained = g.deficiency(&all, &ratio).map(|x| x == Rational::from_integer(0));
        let minimum = min_deficiency(g, &ratio, &SubsetConstraints::nonempty()).map(|r| r.minimum);
        match (attained, minimum) {
            (Ok(true), Ok(Some(m))) if m == Rational::from_integer(0) => {}
            (a, m) => outcome.fail(
                g,
                json!({ "n": n, "minimum_not_at_U": format!("{a:?} {m:?}") }),
            ),
        }
        outcome.check("minimum_at_U");

        match find_st_matching(g, s, t, budget) {
            Ok(StSearch::NotFound { .. }) => {}
            Ok(StSearch::Found { cover, .. }) => outcome.fail(
                g,
                json!({ "n": n, "matching_exists": cover.edges }),
            ),
            Ok(StSearch::BudgetExceeded { nodes }) => outcome
                .inconclusive
                .push(super::Finding::new(g, json!({ "n": n, "budget_exceeded": nodes }))),
            Err(e) => return Outcome::from_error(g, e),
        }
        outcome.check("no_matching");
        outcome
    })
}

/// Structural implication: a graph without isolated vertices, with
/// `h(U, α) ∈ [0, 1)`, `h(S, α) > h(U, α)` for every proper nonempty `S`, and
/// no `α`-redundant edge, must be a tree.
pub fn verify_tree_lemma(
    alpha: &Rational,
    bounds: &EnumerationBounds,
    workers: usize,
) -> Result<super::CampaignReport, HarnessError> {
    if *alpha <= Rational::from_integer(0) {
        return Err(HarnessError::InvalidParams("alpha must be positive".into()));
    }
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    run("tree_lemma", workers, enumerate_bipartite(bounds)?, |g| {
        if g.has_isolated_vertex() {
            return Outcome::skipped();
        }
        let mut outcome = Outcome::default();
        let all = VertexSet::all(&g, Side::Left);
        let h_u = g.deficiency(&all, alpha).expect("U is a left set");
        if h_u < zero || h_u >= one {
            return outcome;
        }
        // min over proper nonempty S: every such S misses some vertex
        for u in 0..g.u_count() {
            let family = SubsetConstraints::nonempty().excluding([u]);
            match min_deficiency(&g, alpha, &family) {
                Ok(report) => {
                    if report.minimum.is_some_and(|m| m <= h_u) {
                        return outcome;
                    }
                }
                Err(e) => return Outcome::from_error(&g, e),
            }
        }
        for &(u, v) in g.edges() {
            let without = g.without_edge(u, v).expect("edge of g");
            match check_condition(&without, alpha) {
                Ok(ConditionOutcome::Holds) => return outcome,
                Ok(_) => {}
                Err(e) => return Outcome::from_error(&g, e),
            }
        }
        outcome.holder = true;
        outcome.check("qualifying");
        if !g.is_tree() {
            outcome.fail(&g, json!({ "not_a_tree": { "h_U": format_rational(&h_u) } }));
        }
        outcome
    })
}

/// Three-way agreement for `k`-star coverings: the double-sided `1/k`
/// condition, the constructive solver (with its output verified), and the
/// exhaustive search.
pub fn verify_star_cover_theorem(
    k: usize,
    bounds: &EnumerationBounds,
    workers: usize,
) -> Result<super::CampaignReport, HarnessError> {
    if k == 0 {
        return Err(HarnessError::InvalidParams("k must be at least 1".into()));
    }
    let alpha = Rational::new(1, k as i64);
    run("star_cover_theorem", workers, enumerate_bipartite(bounds)?, |g| {
        let mut outcome = Outcome::default();
        let condition = match check_double_sided(&g, &alpha) {
            Ok(o) => o.holds(),
            Err(e) => return Outcome::from_error(&g, e),
        };
        outcome.holder = condition;
        let constructed = match find_k_star_covering(&g, k) {
            Ok(c) => c,
            Err(e) => return Outcome::from_error(&g, e),
        };
        if let Some(cover) = &constructed {
            if let Err(reason) = verify_k_star_covering(&g, k, &cover.edges) {
                outcome.fail(&g, json!({ "k": k, "invalid_cover": reason.to_string() }));
            }
        }
        let exhaustive = exhaustive_k_star_covering(&g, k);
        if let Some(edges) = &exhaustive {
            if let Err(reason) = verify_k_star_covering(&g, k, edges) {
                outcome.fail(&g, json!({ "k": k, "invalid_oracle_cover": reason.to_string() }));
            }
        }
        outcome.check(if condition { "cover_exists" } else { "no_cover" });
        if constructed.is_some() != condition || exhaustive.is_some() != condition {
            outcome.fail(
                &g,
                json!({
                    "k": k,
                    "double_sided": condition,
                    "solver": constructed.is_some(),
                    "exhaustive": exhaustive.is_some(),
                }),
            );
        }
        outcome
    })
}
