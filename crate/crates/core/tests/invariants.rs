//! Cross-module properties: randomized (proptest) plus a few exhaustive
//! sweeps at n = 4 where the whole space fits in a loop.

#[path = "support/naive.rs"]
mod naive;

use std::collections::BTreeSet;

use dhg_core::canon::{are_isomorphic, canonical_code};
use dhg_core::constructions::{
    escher_h1, escher_h2, formula, r3_construction, r4_construction, transitive_tournament,
    FormulaId,
};
use dhg_core::embed::{contains, count_copies, count_embeddings, extension_free, is_free};
use dhg_core::graph::{DirectedHypergraph, Edge};
use dhg_core::normalize::{link_partition, normalize};
use dhg_core::patterns::{catalog, is_degenerate, pattern, two_edge_family, Pattern, PatternName};
use dhg_core::search::{census, census_opt, max_edges, max_edges_opt, SearchMode, SearchOptions};
use proptest::prelude::*;

fn all_edges(n: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for head in 0..n {
                if head != a && head != b {
                    out.push(Edge::new(a, b, head).unwrap());
                }
            }
        }
    }
    out
}

fn graph_strategy(max_n: usize, max_picks: usize) -> impl Strategy<Value = DirectedHypergraph> {
    (0..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(any::<prop::sample::Index>(), 0..=max_picks).prop_map(move |picks| {
            let universe = all_edges(n);
            let mut g = DirectedHypergraph::new(n);
            for i in picks {
                if universe.is_empty() {
                    break;
                }
                let _ = g.insert(universe[i.index(universe.len())]);
            }
            g
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (DirectedHypergraph, Vec<usize>)> {
    graph_strategy(max_n, 24).prop_flat_map(|g| {
        let perm = Just((0..g.n()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn apply_perm(g: &DirectedHypergraph, perm: &[usize]) -> DirectedHypergraph {
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| Edge::new(perm[e.lo()], perm[e.hi()], perm[e.head()]).unwrap())
        .collect();
    DirectedHypergraph::from_edges(g.n(), edges).unwrap()
}

proptest! {
    #[test]
    fn canonical_code_is_permutation_invariant((g, perm) in graph_and_perm(6)) {
        let relabeled = apply_perm(&g, &perm);
        prop_assert_eq!(
            canonical_code(&g).unwrap(),
            canonical_code(&relabeled).unwrap()
        );
        prop_assert!(are_isomorphic(&g, &relabeled).unwrap());
    }

    #[test]
    fn insert_then_remove_is_identity(
        g in graph_strategy(6, 24),
        pick in any::<prop::sample::Index>(),
    ) {
        let universe = all_edges(g.n());
        prop_assume!(!universe.is_empty());
        let e = universe[pick.index(universe.len())];
        let before = g.edges().to_vec();
        let mut h = g.clone();
        if g.contains_edge(e) {
            prop_assert!(h.insert(e).is_err());
        } else {
            h.insert(e).unwrap();
            prop_assert_eq!(h.edge_count(), before.len() + 1);
            h.remove(e).unwrap();
        }
        prop_assert_eq!(h.edges(), &before[..]);
    }

    #[test]
    fn oriented_flag_matches_brute_force(g in graph_strategy(6, 30)) {
        let mut per_triple = std::collections::BTreeMap::new();
        for e in g.edges() {
            *per_triple.entry(e.triple()).or_insert(0usize) += 1;
        }
        let brute = per_triple.values().all(|&k| k <= 1);
        prop_assert_eq!(g.is_oriented(), brute);
        let double = [pattern(PatternName::DoubleTriple).unwrap()];
        prop_assert_eq!(g.is_oriented(), is_free(&g, &double));
    }

    #[test]
    fn degree_sums_count_edges(g in graph_strategy(8, 48)) {
        let m = g.edge_count();
        let tails: usize = (0..g.n()).map(|x| g.tail_degree(x)).sum();
        let directed: usize = (0..g.n()).map(|x| g.directed_degree(x)).sum();
        prop_assert_eq!(tails, m);
        prop_assert_eq!(directed, 2 * m);
    }

    #[test]
    fn containment_is_isomorphism_invariant(
        (g, perm) in graph_and_perm(6),
        p in prop::sample::select(catalog()),
    ) {
        let relabeled = apply_perm(&g, &perm);
        let embeddings = count_embeddings(&g, &p);
        prop_assert_eq!(contains(&g, &p), embeddings > 0);
        prop_assert_eq!(contains(&relabeled, &p), embeddings > 0);
        prop_assert_eq!(count_embeddings(&relabeled, &p), embeddings);
    }

    #[test]
    fn containment_is_monotone(
        g in graph_strategy(5, 18),
        p in prop::sample::select(catalog()),
        pick in any::<prop::sample::Index>(),
    ) {
        prop_assume!(g.edge_count() > 0);
        let e = g.edges()[pick.index(g.edge_count())];
        let mut smaller = g.clone();
        smaller.remove(e).unwrap();
        if contains(&smaller, &p) {
            prop_assert!(contains(&g, &p));
        }
    }

    #[test]
    fn link_partition_covers_the_rest(
        g in graph_strategy(7, 40),
        pick in any::<prop::sample::Index>(),
    ) {
        prop_assume!(g.n() > 0);
        let x = pick.index(g.n());
        let lp = link_partition(&g, x).unwrap();
        let mut seen = BTreeSet::new();
        for &v in lp.u.iter().chain(&lp.c).chain(&lp.m) {
            prop_assert!(v != x);
            prop_assert!(seen.insert(v), "vertex {} listed twice", v);
        }
        prop_assert_eq!(seen.len(), g.n() - 1);
        if g.is_oriented() {
            prop_assert!(lp.m.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extension_check_agrees_while_growing(
        n in 3usize..=6,
        p in prop::sample::select(catalog()),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..40),
    ) {
        let universe = all_edges(n);
        let fam = std::slice::from_ref(&p);
        let mut g = DirectedHypergraph::new(n);
        for i in picks {
            let e = universe[i.index(universe.len())];
            if g.contains_edge(e) {
                continue;
            }
            g.insert(e).unwrap();
            let quick = extension_free(&g, fam, &[e]);
            prop_assert_eq!(quick, is_free(&g, fam));
            if !quick {
                g.remove(e).unwrap();
            }
        }
    }

    #[test]
    fn normalization_is_idempotent(
        n in 4usize..=6,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..40),
    ) {
        let e = [pattern(PatternName::Escher).unwrap()];
        let universe = all_edges(n);
        let mut g = DirectedHypergraph::new(n);
        for i in picks {
            let cand = universe[i.index(universe.len())];
            if g.contains_edge(cand) {
                continue;
            }
            g.insert(cand).unwrap();
            if !extension_free(&g, &e, &[cand]) {
                g.remove(cand).unwrap();
            }
        }
        let first = normalize(&g).unwrap();
        prop_assert!(first.r.is_empty());
        prop_assert!(first.graph.edge_count() >= g.edge_count());
        prop_assert!(first.log.len() <= n);
        prop_assert!(is_free(&first.graph, &e));
        let second = normalize(&first.graph).unwrap();
        prop_assert!(second.log.is_empty(), "second pass must be a fixed point");
        prop_assert_eq!(second.graph.edges(), first.graph.edges());
    }
}

#[test]
fn self_embedding_counts_equal_automorphisms() {
    let mut pool = catalog();
    pool.push(pattern(PatternName::Tt(5)).unwrap());
    pool.push(pattern(PatternName::Tt(6)).unwrap());
    pool.extend(two_edge_family());
    for p in pool {
        assert_eq!(
            count_embeddings(p.graph(), &p),
            p.automorphism_count(),
            "self-embeddings of {}",
            p.name()
        );
        assert_eq!(count_copies(p.graph(), &p), 1, "one copy of {} in itself", p.name());
    }
}

#[test]
fn extension_check_agrees_exhaustively_at_four() {
    let family: Vec<Pattern> = catalog();
    naive::enumerate_all(4, SearchMode::Standard, |g| {
        for e in g.edges() {
            let mut smaller = g.clone();
            smaller.remove(*e).unwrap();
            for p in &family {
                let fam = std::slice::from_ref(p);
                if is_free(&smaller, fam) {
                    assert_eq!(
                        extension_free(g, fam, &[*e]),
                        is_free(g, fam),
                        "extension check of {} diverges on {:?} plus {:?}",
                        p.name(),
                        smaller.edges(),
                        e
                    );
                }
            }
        }
    });
}

#[test]
fn search_value_is_monotone() {
    for p in catalog() {
        let fam = std::slice::from_ref(&p);
        let mut last = 0;
        for n in 2..=5 {
            let v = max_edges(n, fam, SearchMode::Oriented, None).unwrap().value;
            assert!(v >= last, "oriented value dropped at n = {n} for {}", p.name());
            last = v;
        }
        let mut last = 0;
        for n in 2..=4 {
            let v = max_edges(n, fam, SearchMode::Standard, None).unwrap().value;
            assert!(v >= last, "standard value dropped at n = {n} for {}", p.name());
            last = v;
        }
    }
}

#[test]
fn forbidding_more_never_helps() {
    let pool = catalog();
    for p in &pool {
        for q in &pool {
            let single = max_edges(4, std::slice::from_ref(p), SearchMode::Standard, None)
                .unwrap()
                .value;
            let both = max_edges(4, &[p.clone(), q.clone()], SearchMode::Standard, None)
                .unwrap()
                .value;
            assert!(both <= single, "adding {} below {} raised the value", q.name(), p.name());
        }
    }
}

#[test]
fn seeding_preserves_values_and_saves_work() {
    let cases: Vec<(Pattern, DirectedHypergraph, usize, SearchMode)> = vec![
        (
            pattern(PatternName::R3).unwrap(),
            r3_construction(5, None).unwrap(),
            5,
            SearchMode::Oriented,
        ),
        (
            pattern(PatternName::Escher).unwrap(),
            escher_h1(4).unwrap(),
            4,
            SearchMode::Standard,
        ),
        (
            // r3_construction(4) has tail degree 1 everywhere, so no vertex
            // carries the complete tail star TT4- needs.
            pattern(PatternName::Tt4Minus).unwrap(),
            r3_construction(4, None).unwrap(),
            4,
            SearchMode::Standard,
        ),
    ];
    for (p, seed, n, mode) in cases {
        let fam = std::slice::from_ref(&p);
        assert!(is_free(&seed, fam), "seed for {} is not free", p.name());
        let plain = max_edges(n, fam, mode, None).unwrap();
        let seeded = max_edges(n, fam, mode, Some(&seed)).unwrap();
        assert_eq!(plain.value, seeded.value, "seed changed the value for {}", p.name());
        assert!(
            seeded.stats.nodes <= plain.stats.nodes,
            "seed increased the node count for {}",
            p.name()
        );
    }
}

#[test]
fn naive_oracle_spot_checks_at_three() {
    for name in [PatternName::Escher, PatternName::DoubleTriple, PatternName::Tt4Minus] {
        let p = pattern(name).unwrap();
        let fam = std::slice::from_ref(&p);
        let (value, classes) = naive::naive_extremal(3, fam, SearchMode::Standard);
        let bnb = max_edges(3, fam, SearchMode::Standard, None).unwrap();
        assert_eq!(bnb.value, value);
        let cen = census(3, fam, SearchMode::Standard, value).unwrap();
        let codes: BTreeSet<_> = cen.classes.iter().map(|c| c.code.clone()).collect();
        assert_eq!(codes, classes);
    }
}

#[test]
fn default_parameters_are_optimal_to_200() {
    let b2 = |t: u64| t * t.saturating_sub(1) / 2;
    for n in 0..=200u64 {
        let r4_default = formula(FormulaId::R4Extremal, n as usize, None).unwrap();
        let r4_best = (0..=n).map(|t| b2(t) * (n - t)).max().unwrap();
        assert_eq!(r4_default, r4_best, "r4 default parameter at n = {n}");

        let r3_default = formula(FormulaId::R3Extremal, n as usize, None).unwrap();
        let r3_best = (0..=n).map(|a| (n - a) * b2(a) + a * b2(n - a)).max().unwrap();
        assert_eq!(r3_default, r3_best, "r3 default parameter at n = {n}");

        if n % 3 == 2 {
            assert_eq!(
                (n / 3) * b2((2 * n).div_ceil(3)),
                n.div_ceil(3) * b2(2 * n / 3),
                "two-construction identity at n = {n}"
            );
        }
    }
    // The identity is constructional, not just numeric: both parameter
    // choices really build graphs of the same size.
    for n in (2..=50usize).filter(|n| n % 3 == 2) {
        let hi = (2 * n).div_ceil(3);
        let lo = 2 * n / 3;
        assert_eq!(
            r4_construction(n, Some(hi)).unwrap().edge_count(),
            r4_construction(n, Some(lo)).unwrap().edge_count(),
        );
    }
}

#[test]
fn census_is_deterministic_across_job_counts() {
    let fam = [pattern(PatternName::Escher).unwrap()];
    let lone = SearchOptions { jobs: 1, force: false };
    let pool = SearchOptions { jobs: 3, force: false };
    let a = census_opt(4, &fam, SearchMode::Standard, 6, &lone, None).unwrap();
    let b = census_opt(4, &fam, SearchMode::Standard, 6, &pool, None).unwrap();
    assert_eq!(a.classes.len(), b.classes.len());
    for (x, y) in a.classes.iter().zip(&b.classes) {
        assert_eq!(x.code, y.code);
        assert_eq!(x.representative.edges(), y.representative.edges());
    }

    let fam = [pattern(PatternName::R3).unwrap()];
    let a = max_edges_opt(5, &fam, SearchMode::Oriented, None, &lone, None).unwrap();
    let b = max_edges_opt(5, &fam, SearchMode::Oriented, None, &pool, None).unwrap();
    assert_eq!(a.value, b.value);
}

#[test]
fn empty_graphs_are_degenerate_by_convention() {
    for n in 0..4 {
        let g = DirectedHypergraph::new(n);
        let part = is_degenerate(&g).unwrap().expect("empty graphs are degenerate");
        assert!(part.validates(&g));
    }
}

#[test]
fn construction_sizes_honor_their_formulas() {
    for n in [0usize, 1, 2, 3, 7, 30, 100] {
        assert_eq!(
            transitive_tournament(n).edge_count() as u64,
            formula(FormulaId::EOriented, n, None).unwrap()
        );
        if n >= 4 {
            assert_eq!(
                escher_h2(n).unwrap().edge_count() as u64,
                formula(FormulaId::EStandard, n, None).unwrap()
            );
        }
    }
}
