mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use shapefib::presentation::shape1;
use shapefib::space::*;
use shapefib::{EdgeImage, FinGraph};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn components_match_the_subset_definition(x in graph(8, 9)) {
        let fast = canonical(pi0(&x).members());
        let slow = pi0_by_definition(&x, PI0_DEFINITION_BOUND).unwrap();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn fiber_is_the_pullback_along_a_point(f in map(5, 6), pick in any::<usize>()) {
        let y = pick % f.target().vertex_count();
        let fib = fiber(&f, y).unwrap();
        let point = f.target().point_inclusion(y).unwrap();
        let (p, pa, _) = pullback(&f, &point).unwrap();
        let from_pullback: BTreeSet<usize> = p.vertices().map(|v| pa.vertex(v)).collect();
        prop_assert_eq!(from_pullback.len(), p.vertex_count());
        let from_fiber: BTreeSet<usize> = fib.source_vertices().iter().copied().collect();
        prop_assert_eq!(from_pullback, from_fiber);
        // edges of the pullback are the edges of the source collapsed onto y
        let collapsed = f.source().edges().filter(|&e| f.edge(e) == EdgeImage::Degenerate(y)).count();
        prop_assert_eq!(p.edge_count(), collapsed);
        prop_assert_eq!(fib.subgraph.edge_count(), collapsed);
    }

    #[test]
    fn flat_is_discrete_and_its_counit_detects_discreteness(x in graph(6, 5)) {
        let (fx, counit) = flat(&x);
        prop_assert!(is_discrete(&fx));
        prop_assert!(is_discrete_by_paths(&fx));
        prop_assert_eq!(counit.is_isomorphism(), is_discrete(&x));
        prop_assert_eq!(is_discrete(&x), is_discrete_by_paths(&x));
    }

    #[test]
    fn cycle_rank_is_edges_minus_vertices_plus_components(x in graph(7, 9)) {
        let p = shape1(&x);
        let total: usize = p.ranks().iter().sum();
        prop_assert_eq!(total + x.vertex_count(), x.edge_count() + pi0(&x).count);
        prop_assert!(p.forest_is_spanning());
    }

    #[test]
    fn connected_rank(x in connected_graph(7, 5)) {
        prop_assert_eq!(shape1(&x).component_count(), 1);
        prop_assert_eq!(shape1(&x).rank(0) + x.vertex_count(), x.edge_count() + 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pullbacks_are_universal(
        a in graph(3, 2),
        b in graph(3, 2),
        y in graph(3, 3),
        apex in graph(4, 3),
        seed in any::<u64>(),
    ) {
        let mut r = rng(seed);
        let f = random_map(&mut r, &a, &y);
        let g = random_map(&mut r, &b, &y);
        let (_, pa, pb) = pullback(&f, &g).unwrap();
        prop_assert!(check_pullback_universal(&f, &g, &pa, &pb, &apex).is_ok());
    }
}

#[test]
fn products_with_a_point() {
    for x in [FinGraph::cycle(4), FinGraph::bouquet(2), FinGraph::star(3)] {
        let (p, pa, _) = product(&x, &FinGraph::point());
        assert_eq!(p.vertex_count(), x.vertex_count());
        assert_eq!(p.edge_count(), x.edge_count());
        assert!(pa.is_isomorphism());
    }
}
