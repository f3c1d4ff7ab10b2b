use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{run, CampaignReport, HarnessError, Outcome};
use crate::bigraph::{BipartiteGraph, Side, VertexSet};
use crate::conditions::{
    check_condition, f_value, g_value, is_redundant, min_deficiency, min_deficiency_oracle,
    SubsetConstraints, DEFAULT_ORACLE_CAP,
};
use crate::scalar::format_rational;
use crate::Rational;

/// Sample sizes for [`property_suite`]. The whole suite is a deterministic
/// function of this value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyConfig {
    pub seed: u64,
    /// Random `(G, A, B, α)` instances for the deficiency union identity.
    pub union_triples: usize,
    /// Random graphs for flow-versus-enumeration agreement.
    pub oracle_graphs: usize,
    /// Random graphs for the `f`/`g` redundancy properties.
    pub redundancy_graphs: usize,
    /// Largest `|U|` for the oracle corpus.
    pub max_left: usize,
    pub max_right: usize,
    pub workers: usize,
}

impl Default for PropertyConfig {
    fn default() -> Self {
        PropertyConfig {
            seed: 2024,
            union_triples: 10_000,
            oracle_graphs: 500,
            redundancy_graphs: 300,
            max_left: 12,
            max_right: 10,
            workers: 0,
        }
    }
}

enum Instance {
    Union {
        graph: BipartiteGraph,
        a: VertexSet,
        b: VertexSet,
        alpha: Rational,
    },
    Oracle {
        graph: BipartiteGraph,
        alpha: Rational,
        edge: Option<(usize, usize)>,
        /// `(u, v, w)` with `u ≠ w` both adjacent to `v`.
        pair: Option<(usize, usize, usize)>,
    },
    Redundancy {
        graph: BipartiteGraph,
        alpha: Rational,
    },
}

fn random_graph(rng: &mut ChaCha8Rng, max_left: usize, max_right: usize, cover_left: bool) -> BipartiteGraph {
    let u = rng.gen_range(1..=max_left);
    let v = rng.gen_range(1..=max_right);
    let percent = rng.gen_range(15..=65);
    let mut edges = Vec::new();
    for x in 0..u {
        let mut any = false;
        for y in 0..v {
            if rng.gen_range(0..100) < percent {
                edges.push((x, y));
                any = true;
            }
        }
        if cover_left && !any {
            edges.push((x, rng.gen_range(0..v)));
        }
    }
    BipartiteGraph::new(u, v, edges).expect("distinct in-range edges")
}

fn random_alpha(rng: &mut ChaCha8Rng) -> Rational {
    let q = rng.gen_range(1..=4);
    Rational::new(rng.gen_range(1..=3 * q), q)
}

fn random_left_set(rng: &mut ChaCha8Rng, graph: &BipartiteGraph) -> VertexSet {
    let members = (0..graph.u_count()).filter(|_| rng.gen_bool(0.5));
    VertexSet::from_indices(Side::Left, members)
}

fn generate(config: &PropertyConfig) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();
    for _ in 0..config.union_triples {
        let graph = random_graph(&mut rng, 10, 10, false);
        let a = random_left_set(&mut rng, &graph);
        let b = random_left_set(&mut rng, &graph);
        let alpha = random_alpha(&mut rng);
        out.push(Instance::Union { graph, a, b, alpha });
    }
    for _ in 0..config.oracle_graphs {
        let graph = random_graph(&mut rng, config.max_left, config.max_right, false);
        let alpha = random_alpha(&mut rng);
        let edge = (!graph.edges().is_empty())
            .then(|| graph.edges()[rng.gen_range(0..graph.edge_count())]);
        let shared: Vec<usize> = (0..graph.v_count())
            .filter(|&v| graph.degree_right(v) >= 2)
            .collect();
        let pair = (!shared.is_empty()).then(|| {
            let v = shared[rng.gen_range(0..shared.len())];
            let nbrs = graph.neighbors_right(v);
            let i = rng.gen_range(0..nbrs.len());
            let j = (i + rng.gen_range(1..nbrs.len())) % nbrs.len();
            (nbrs[i], v, nbrs[j])
        });
        out.push(Instance::Oracle {
            graph,
            alpha,
            edge,
            pair,
        });
    }
    for _ in 0..config.redundancy_graphs {
        let graph = random_graph(&mut rng, 7, 7, true);
        let tight = min_ratio(&graph);
        let alpha = if rng.gen_bool(0.5) {
            tight
        } else {
            tight * Rational::new(rng.gen_range(2..=4), 5)
        };
        out.push(Instance::Redundancy { graph, alpha });
    }
    out
}

fn left_masks(graph: &BipartiteGraph) -> Vec<u64> {
    (0..graph.u_count())
        .map(|u| graph.neighbors_left(u).iter().fold(0, |m, &v| m | 1 << v))
        .collect()
}

fn gamma(masks: &[u64], set: u64) -> u64 {
    (0..masks.len())
        .filter(|&u| set >> u & 1 == 1)
        .fold(0, |m, u| m | masks[u])
}

/// `min { h(S, α) : pred(S) }` by scanning all subsets.
fn brute_min(graph: &BipartiteGraph, alpha: &Rational, pred: impl Fn(u64, u64) -> bool) -> Option<Rational> {
    let masks = left_masks(graph);
    (0u64..1 << graph.u_count())
        .filter_map(|s| {
            let g = gamma(&masks, s);
            pred(s, g).then(|| {
                Rational::from_integer(g.count_ones() as i64)
                    - alpha * Rational::from_integer(s.count_ones() as i64)
            })
        })
        .min()
}

/// `min |Γ(S)| / |S|` over nonempty `S`.
fn min_ratio(graph: &BipartiteGraph) -> Rational {
    let masks = left_masks(graph);
    (1u64..1 << graph.u_count())
        .map(|s| Rational::new(gamma(&masks, s).count_ones() as i64, s.count_ones() as i64))
        .min()
        .expect("U is nonempty")
}

fn union_identity(outcome: &mut Outcome, graph: &BipartiteGraph, a: &VertexSet, b: &VertexSet, alpha: &Rational) {
    let h = |s: &VertexSet| graph.deficiency(s, alpha).expect("left set");
    let n = |s: &VertexSet| graph.neighborhood(s).expect("left set");
    let lhs = h(&a.union(b));
    let overlap = n(a).intersection(&n(b)).len() as i64 - n(&a.intersection(b)).len() as i64;
    let rhs = h(a) + h(b) - h(&a.intersection(b)) - Rational::from_integer(overlap);
    outcome.check("union_identity");
    if lhs != rhs {
        outcome.fail(
            graph,
            json!({
                "union_identity": { "a": a.members(), "b": b.members(), "alpha": format_rational(alpha),
                            "lhs": format_rational(&lhs), "rhs": format_rational(&rhs) }
            }),
        );
    }
}

fn oracle_agreement(
    outcome: &mut Outcome,
    graph: &BipartiteGraph,
    alpha: &Rational,
    edge: Option<(usize, usize)>,
    pair: Option<(usize, usize, usize)>,
) -> Result<(), HarnessError> {
    let mut families = vec![
        ("oracle_any", SubsetConstraints::any()),
        ("oracle_nonempty", SubsetConstraints::nonempty()),
    ];
    if let Some((u, v)) = edge {
        families.push(("oracle_f_family", SubsetConstraints::f_family(graph, u, v)));
    }
    if let Some((u, _, w)) = pair {
        families.push((
            "oracle_g_family",
            SubsetConstraints::any().forcing([w]).excluding([u]),
        ));
    }
    for (name, family) in families {
        let flow = min_deficiency(graph, alpha, &family)?;
        let brute = min_deficiency_oracle(graph, alpha, &family, DEFAULT_ORACLE_CAP)?;
        outcome.check(name);
        let witness_ok = match &flow.minimum {
            Some(m) => graph.deficiency(&flow.witness, alpha)? == *m,
            None => true,
        };
        if flow.minimum != brute.minimum || !witness_ok {
            outcome.fail(
                graph,
                json!({ name: { "alpha": format_rational(alpha),
                    "flow": flow.minimum.map(|m| format_rational(&m)),
                    "oracle": brute.minimum.map(|m| format_rational(&m)) } }),
            );
        }
    }
    let masks = left_masks(graph);
    if let Some((u, v)) = edge {
        let direct = brute_min(graph, alpha, |s, _| {
            s >> u & 1 == 1 && gamma(&masks, s & !(1 << u)) >> v & 1 == 0
        });
        outcome.check("f_value");
        if Some(f_value(graph, u, v, alpha)?) != direct {
            outcome.fail(graph, json!({ "f_value": [u, v], "alpha": format_rational(alpha) }));
        }
        let direct = if graph.degree_right(v) == 1 {
            Some(Rational::from_integer(1))
        } else {
            brute_min(graph, alpha, |s, g| s >> u & 1 == 0 && g >> v & 1 == 1)
        };
        outcome.check("g_value");
        if Some(g_value(graph, u, v, alpha)?) != direct {
            outcome.fail(graph, json!({ "g_value": [u, v], "alpha": format_rational(alpha) }));
        }
    }
    Ok(())
}

fn redundancy_properties(outcome: &mut Outcome, graph: &BipartiteGraph, alpha: &Rational) -> Result<(), HarnessError> {
    if !check_condition(graph, alpha)?.holds() {
        return Ok(());
    }
    outcome.holder = true;
    let alpha_s = format_rational(alpha);
    for &(u, v) in graph.edges() {
        let direct = check_condition(&graph.without_edge(u, v)?, alpha)?.holds();
        outcome.check("redundancy_criterion");
        if is_redundant(graph, u, v, alpha)? != direct {
            outcome.fail(graph, json!({ "redundancy_criterion": [u, v], "alpha": alpha_s }));
        }
    }
    for v in 0..graph.v_count() {
        for &u in graph.neighbors_right(v) {
            for &w in graph.neighbors_right(v).iter().filter(|&&w| w != u) {
                outcome.check("g_at_most_f");
                if g_value(graph, u, v, alpha)? > f_value(graph, w, v, alpha)? {
                    outcome.fail(graph, json!({ "g_at_most_f": [u, v, w], "alpha": alpha_s }));
                }
            }
        }
    }
    // one pass suffices: deleting edges never makes another edge redundant
    let mut peeled = graph.clone();
    for &(u, v) in graph.edges() {
        let candidate = peeled.without_edge(u, v)?;
        if check_condition(&candidate, alpha)?.holds() {
            peeled = candidate;
        }
    }
    let one = Rational::from_integer(1);
    for &(u, v) in peeled.edges() {
        let g = g_value(&peeled, u, v, alpha)?;
        outcome.check("peeled_g");
        let pendant = peeled.degree_right(v) == 1;
        if g > one || (g == one) != pendant {
            outcome.fail(
                &peeled,
                json!({ "peeled_g": [u, v], "alpha": alpha_s, "g": format_rational(&g) }),
            );
        }
    }
    Ok(())
}

/// Randomized checks of the deficiency union identity, flow/enumeration
/// agreement for constrained minima and `f`/`g`, and the three redundancy
/// properties of `f` and `g`.
pub fn property_suite(config: &PropertyConfig) -> Result<CampaignReport, HarnessError> {
    if config.max_left > DEFAULT_ORACLE_CAP || config.max_left == 0 || config.max_right == 0 {
        return Err(HarnessError::InvalidParams(format!(
            "need 1 ≤ max_left ≤ {DEFAULT_ORACLE_CAP} and max_right ≥ 1"
        )));
    }
    if config.max_right > 63 {
        return Err(HarnessError::InvalidParams("max_right must be at most 63".into()));
    }
    let instances = generate(config);
    run("properties", config.workers, instances.into_iter(), |instance| {
        let mut outcome = Outcome::default();
        let result = match &instance {
            Instance::Union { graph, a, b, alpha } => {
                union_identity(&mut outcome, graph, a, b, alpha);
                Ok(())
            }
            Instance::Oracle {
                graph,
                alpha,
                edge,
                pair,
            } => oracle_agreement(&mut outcome, graph, alpha, *edge, *pair),
            Instance::Redundancy { graph, alpha } => {
                redundancy_properties(&mut outcome, graph, alpha)
            }
        };
        match result {
            Ok(()) => outcome,
            Err(e) => {
                let graph = match &instance {
                    Instance::Union { graph, .. }
                    | Instance::Oracle { graph, .. }
                    | Instance::Redundancy { graph, .. } => graph,
                };
                Outcome::from_error(graph, e)
            }
        }
    })
}
