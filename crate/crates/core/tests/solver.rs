use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stmatch::conditions::check_double_sided;
use stmatch::harness::{
    enumerate_bipartite, exhaustive_k_star_covering, exhaustive_st_matching, EnumerationBounds,
};
use stmatch::solver::{
    check_critical_link_property, critical_link_augment, critical_link_augment_observed,
    find_k_star_covering, find_k_star_covering_observed, find_st_matching, verify_k_star_covering,
    verify_st_matching, LinkViolation, SolverError, StSearch,
};
use stmatch::{BipartiteGraph, Rational, Side, VertexSet};

const BUDGET: u64 = 10_000_000;

#[test]
fn st_matching_agrees_with_subset_scan() {
    let bounds = EnumerationBounds::up_to(4, 5, 4);
    let mut compared = 0;
    for g in enumerate_bipartite(&bounds).unwrap() {
        if g.edge_count() > 14 {
            continue;
        }
        for (s, t) in [(1, 1), (1, 2), (2, 2), (2, 3), (2, 4), (3, 6)] {
            let expected = exhaustive_st_matching(&g, s, t).unwrap();
            match find_st_matching(&g, s, t, BUDGET).unwrap() {
                StSearch::Found { cover, .. } => {
                    assert!(expected.is_some(), "{g:?} ({s},{t}): solver found one, scan did not");
                    verify_st_matching(&g, s, t, &cover.edges).unwrap();
                }
                StSearch::NotFound { .. } => {
                    assert!(expected.is_none(), "{g:?} ({s},{t}): scan found {expected:?}")
                }
                StSearch::BudgetExceeded { .. } => panic!("budget exceeded on {g:?}"),
            }
            compared += 1;
        }
    }
    assert!(compared > 10_000, "only {compared} comparisons");
}

#[test]
fn st_matching_rejects_bad_parameters() {
    let g = BipartiteGraph::complete(2, 2);
    assert!(matches!(find_st_matching(&g, 0, 1, BUDGET), Err(SolverError::InvalidParams(_))));
    assert!(matches!(find_st_matching(&g, 3, 2, BUDGET), Err(SolverError::InvalidParams(_))));
}

#[test]
fn st_matching_budget_is_reported() {
    let g = BipartiteGraph::complete(6, 7);
    match find_st_matching(&g, 3, 4, 5).unwrap() {
        StSearch::BudgetExceeded { nodes } => assert!(nodes >= 5),
        other => panic!("expected budget exhaustion, got {other:?}"),
    }
}

#[test]
fn star_cover_equivalence_on_small_graphs() {
    let bounds = EnumerationBounds::up_to(5, 5, 5).with_total_max(8).with_mins(0, 0);
    for g in enumerate_bipartite(&bounds).unwrap() {
        for k in 1..=3 {
            let condition = check_double_sided(&g, &Rational::new(1, k as i64)).unwrap().holds();
            let built = find_k_star_covering(&g, k).unwrap();
            let oracle = exhaustive_k_star_covering(&g, k);
            assert_eq!(built.is_some(), condition, "{g:?} k={k}");
            assert_eq!(oracle.is_some(), condition, "{g:?} k={k}");
            if let Some(cover) = built {
                verify_k_star_covering(&g, k, &cover.edges).unwrap();
            }
        }
    }
}

#[test]
fn peeling_preserves_the_condition() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut observed = 0;
    for _ in 0..200 {
        let (u, v) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let edges: Vec<_> = (0..u)
            .flat_map(|x| (0..v).map(move |y| (x, y)))
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        let g = BipartiteGraph::new(u, v, edges).unwrap();
        for k in 1..=3usize {
            let alpha = Rational::new(1, k as i64);
            let mut sizes = Vec::new();
            let result = find_k_star_covering_observed(&g, k, |working| {
                assert!(check_double_sided(working, &alpha).unwrap().holds());
                sizes.push(working.edge_count());
            })
            .unwrap();
            if result.is_some() {
                assert!(sizes.iter().all(|&m| m < g.edge_count()));
            }
            observed += sizes.len();
        }
    }
    assert!(observed > 100);
}

#[test]
fn star_cover_rejects_k_zero() {
    assert!(find_k_star_covering(&BipartiteGraph::complete(1, 1), 0).is_err());
}

/// A random tree whose left vertices have degree in `h..=h + 2`.
fn random_tree(rng: &mut ChaCha8Rng, h: usize, left: usize) -> BipartiteGraph {
    let mut edges = Vec::new();
    let mut v_count = 0;
    for u in 0..left {
        let extra = h + rng.gen_range(0..=2) - usize::from(u > 0);
        if u > 0 {
            edges.push((u, rng.gen_range(0..v_count)));
        }
        for _ in 0..extra {
            edges.push((u, v_count));
            v_count += 1;
        }
    }
    BipartiteGraph::new(left, v_count, edges).unwrap()
}

fn links(g: &BipartiteGraph, forest: &VertexSet, u: usize) -> usize {
    let mut others = VertexSet::all(g, Side::Left).difference(forest);
    others = others.difference(&VertexSet::from_indices(Side::Left, [u]));
    let gamma = g.neighborhood(&others).unwrap();
    g.neighbors_left(u).iter().filter(|&&v| gamma.contains(v)).count()
}

#[test]
fn critical_link_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..200 {
        let h = rng.gen_range(1..=3);
        let left = rng.gen_range(2..=12);
        let g = random_tree(&mut rng, h, left);
        assert!(g.is_tree());
        let mut states = Vec::new();
        let last = critical_link_augment_observed(&g, h, |s| states.push(s.clone())).unwrap();
        let all = VertexSet::all(&g, Side::Left);
        // F = U leaves no link vertex at all; the property is vacuous there
        if last.forest == all {
            continue;
        }
        for state in &states {
            if state.forest.is_empty() || state.forest == all {
                continue;
            }
            check_critical_link_property(&g, &state.forest)
                .unwrap_or_else(|e| panic!("{g:?} h={h} F={:?}: {e}", state.forest));
            checked += 1;
        }
        // maximal: no remaining degree-h vertex has exactly one link
        for u in (0..g.u_count()).filter(|&u| g.degree_left(u) == h && !last.forest.contains(u)) {
            assert_ne!(links(&g, &last.forest, u), 1, "{g:?} h={h}: {u} could still join");
        }
        assert!(last.candidates.is_empty());
    }
    assert!(checked > 50, "only {checked} nontrivial states");
}

#[test]
fn critical_link_preconditions() {
    let cycle = BipartiteGraph::complete(2, 2);
    assert!(matches!(critical_link_augment(&cycle, 1), Err(SolverError::Precondition(_))));
    let star = BipartiteGraph::complete(1, 3);
    assert!(matches!(critical_link_augment(&star, 4), Err(SolverError::Precondition(_))));
    assert!(matches!(critical_link_augment(&star, 0), Err(SolverError::InvalidParams(_))));
}

#[test]
fn critical_link_checker_reports_components() {
    // path u0 - v0 - u1 - v1 - u2: with F = {u0, u1}, the only link is v1
    let g = BipartiteGraph::new(3, 2, [(0, 0), (1, 0), (1, 1), (2, 1)]).unwrap();
    let f = VertexSet::from_indices(Side::Left, [0, 1]);
    assert!(check_critical_link_property(&g, &f).is_ok());
    // {u0, u2}: two components, each meeting Γ(u1) once
    let f = VertexSet::from_indices(Side::Left, [0, 2]);
    assert!(check_critical_link_property(&g, &f).is_ok());
    let f = VertexSet::all(&g, Side::Left);
    assert!(matches!(
        check_critical_link_property(&g, &f),
        Err(LinkViolation::Component { links: 0, .. })
    ));
    let wrong = VertexSet::from_indices(Side::Right, [0]);
    assert!(matches!(check_critical_link_property(&g, &wrong), Err(LinkViolation::InvalidSet { .. })));
}
