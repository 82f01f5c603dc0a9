mod common;

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use proptest::prelude::*;
use tnsd::colouring::{is_tnsd, TotalColouring};
use tnsd::density::{mad_below, max_average_degree};
use tnsd::discharging::{apply_rules, verify_ghost_conditions};
use tnsd::generate::{canonical_code, connected_graphs_up_to};
use tnsd::io::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};
use tnsd::polynomial::{
    coefficient, evaluate_product, expand_product, product_coefficient, Factor, LinearForm, Monomial,
};
use tnsd::rational::Rational;
use tnsd::solver::{find_tnsd, tnsd_index, Budget, SearchOutcome};
use tnsd::sumsets::{distinct_sums, lemma_lower_bound, ListSystem};
use tnsd::Graph;

use common::{arb_graph, arb_sparse_graph, atlas, brute_mad, naive_colourable, naive_index, naive_is_tnsd};

#[test]
fn atlas_graph6_decodes_to_the_recorded_invariants() {
    for row in atlas() {
        let g = parse_graph6(row.graph6.as_bytes()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (row.n, row.m), "{}", row.graph6);
        assert_eq!(g.is_connected(), row.connected, "{}", row.graph6);
        assert_eq!(g.max_degree(), row.max_degree, "{}", row.graph6);
        assert_eq!(g.girth(), row.girth, "{}", row.graph6);
        assert_eq!(to_graph6(&g), row.graph6);
    }
}

#[test]
fn enumeration_matches_the_atlas() {
    let expected: HashSet<(usize, u64)> = atlas()
        .iter()
        .filter(|r| r.connected)
        .map(|r| {
            let g = parse_graph6(r.graph6.as_bytes()).unwrap();
            (r.n, canonical_code(&g).unwrap())
        })
        .collect();
    let ours: HashSet<(usize, u64)> =
        connected_graphs_up_to(7).unwrap().iter().map(|g| (g.vertex_count(), canonical_code(g).unwrap())).collect();
    assert_eq!(ours.len(), 996);
    assert_eq!(ours, expected);
}

#[test]
fn atlas_mad_and_index_agree_with_oracles() {
    for row in atlas().iter().filter(|r| r.n <= 6) {
        let g = parse_graph6(row.graph6.as_bytes()).unwrap();
        assert_eq!(max_average_degree(&g).unwrap().value, brute_mad(&g), "{}", row.graph6);
        if row.n + row.m <= 9 {
            assert_eq!(tnsd_index(&g, Budget::unlimited()).unwrap().exact(), Some(naive_index(&g)), "{}", row.graph6);
        }
    }
}

#[test]
fn named_indices() {
    let cases = [(Graph::path(2), 3), (Graph::path(3), 3), (Graph::star(3), 4), (Graph::cycle(3), 5)];
    for (g, want) in cases {
        assert_eq!(naive_index(&g), want);
        assert_eq!(tnsd_index(&g, Budget::unlimited()).unwrap().exact(), Some(want));
    }
}

fn witness_is_densest(g: &Graph) {
    let mad = max_average_degree(g).unwrap();
    let keep: BTreeSet<usize> = mad.witness.iter().copied().collect();
    let inside = g.edges().iter().filter(|(u, v)| keep.contains(u) && keep.contains(v)).count();
    assert_eq!(Rational::new(2 * inside as i64, keep.len() as i64), mad.value);
}

fn polynomial_factors() -> impl Strategy<Value = (usize, Vec<Factor>)> {
    (1usize..=3).prop_flat_map(|vars| {
        let form = (proptest::collection::vec(-2i64..=2, vars), -3i64..=3, 1u32..=2)
            .prop_map(|(c, k, m)| Factor::new(LinearForm::new(c, k), m));
        (Just(vars), proptest::collection::vec(form, 1..=3))
    })
}

fn list_systems() -> impl Strategy<Value = ListSystem> {
    (1usize..=3).prop_flat_map(|t| {
        proptest::collection::vec(proptest::collection::btree_set(1i64..=7, t..=5), t)
            .prop_map(|lists| ListSystem::new(lists).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mad_equals_subset_enumeration(g in arb_graph(9)) {
        prop_assert_eq!(max_average_degree(&g).unwrap().value, brute_mad(&g));
        witness_is_densest(&g);
    }

    #[test]
    fn mad_below_agrees_with_mad(g in arb_sparse_graph(12), num in 1i64..=20) {
        let bound = Rational::new(num, 3);
        prop_assert_eq!(mad_below(&g, &bound).unwrap(), brute_mad(&g) < bound);
    }

    #[test]
    fn graph6_and_edge_lists_round_trip(g in arb_graph(12)) {
        prop_assert_eq!(&parse_graph6(to_graph6(&g).as_bytes()).unwrap(), &g);
        prop_assert_eq!(&parse_edge_list(to_edge_list(&g).as_bytes()).unwrap(), &g);
    }

    #[test]
    fn canonical_code_ignores_labels(g in arb_graph(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = g.vertices().collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&g.relabel(&perm)).unwrap());
    }

    #[test]
    fn solver_agrees_with_enumeration(g in arb_graph(4), k in 1u32..=5) {
        prop_assume!(g.vertex_count() + g.edge_count() <= 8);
        let outcome = find_tnsd(&g, k, Budget::unlimited()).unwrap();
        prop_assert_eq!(matches!(outcome, SearchOutcome::Found(_)), naive_colourable(&g, k));
        if let SearchOutcome::Found(c) = outcome {
            prop_assert!(independent_check(&g, &c));
            prop_assert!(is_tnsd(&g, &c).unwrap());
        }
    }

    #[test]
    fn verifier_agrees_with_direct_check(g in arb_graph(5), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let vertex: Vec<u32> = g.vertices().map(|_| rng.gen_range(1..=5)).collect();
        let edge: Vec<u32> = (0..g.edge_count()).map(|_| rng.gen_range(1..=5)).collect();
        let c = TotalColouring::from_parts(
            5,
            vertex.iter().map(|&x| Some(x)).collect(),
            edge.iter().map(|&x| Some(x)).collect(),
        ).unwrap();
        prop_assert_eq!(is_tnsd(&g, &c).unwrap(), naive_is_tnsd(&g, &vertex, &edge));
    }

    #[test]
    fn expansion_agrees_with_evaluation((vars, factors) in polynomial_factors(), point in proptest::collection::vec(-4i64..=4, 3)) {
        let p = expand_product(&factors).unwrap();
        let point = &point[..vars];
        prop_assert_eq!(p.evaluate(point).unwrap(), evaluate_product(&factors, point));
        for m in p.terms().keys() {
            prop_assert_eq!(product_coefficient(&factors, m).unwrap(), coefficient(&p, m).unwrap());
        }
        let absent = Monomial::new(vec![9; vars]);
        prop_assert_eq!(product_coefficient(&factors, &absent).unwrap(), BigInt::from(0));
    }

    #[test]
    fn distinct_sums_by_brute_force(s in list_systems()) {
        let lists: Vec<Vec<i64>> = s.lists().iter().map(|l| l.iter().copied().collect()).collect();
        let mut sums = BTreeSet::new();
        let mut idx = vec![0usize; lists.len()];
        'outer: loop {
            let pick: Vec<i64> = idx.iter().enumerate().map(|(i, &j)| lists[i][j]).collect();
            if pick.iter().collect::<HashSet<_>>().len() == pick.len() {
                sums.insert(pick.iter().sum::<i64>());
            }
            for i in 0..idx.len() {
                idx[i] += 1;
                if idx[i] < lists[i].len() {
                    continue 'outer;
                }
                idx[i] = 0;
            }
            break;
        }
        prop_assert_eq!(&distinct_sums(&s), &sums);
        if s.is_admissible() {
            prop_assert!(sums.len() as i64 >= lemma_lower_bound(&s).unwrap());
        }
    }

    #[test]
    fn discharging_conserves_charge(g in arb_sparse_graph(30)) {
        let ledger = apply_rules(&g);
        prop_assert!(ledger.is_conserved());
        let total = Rational::from_integer(2 * g.edge_count() as i64)
            - Rational::new(14 * g.vertex_count() as i64, 3);
        prop_assert_eq!(ledger.total_final(), total);
        prop_assert!(verify_ghost_conditions(&g, &ledger).unwrap().conservation);
    }
}

/// Properness and sum distinction straight from the stored colours.
fn independent_check(g: &Graph, c: &TotalColouring) -> bool {
    let vertex: Option<Vec<u32>> = c.vertex_colours().iter().copied().collect();
    let edge: Option<Vec<u32>> = c.edge_colours().iter().copied().collect();
    match (vertex, edge) {
        (Some(v), Some(e)) => naive_is_tnsd(g, &v, &e),
        _ => false,
    }
}
