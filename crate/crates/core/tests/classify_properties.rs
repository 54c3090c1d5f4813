mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use shapefib::classify::*;
use shapefib::covers::{is_cover, total_space, MonodromyAction};
use shapefib::space::{pi0, pullback};
use shapefib::{Dart, EdgeImage, FinGraph, GraphMap};

const SEED: u64 = 0x5eed_0100;

fn fibration(f: &GraphMap) -> bool {
    classify(f).shape1.fibration.is_true()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn flag_identities(f in map(5, 6)) {
        let c = classify(&f);
        prop_assert!(c.shape0.satisfies_flag_identities(), "{:?}", c.shape0);
        prop_assert!(c.shape1.satisfies_flag_identities(), "{:?}", c.shape1);
        prop_assert!(c.shape1.fibration.is_decided());
    }

    #[test]
    fn constant_fiber_shape_is_sufficient(f in map(5, 6)) {
        if constant_fiber_criterion(&f) {
            prop_assert!(fibration(&f));
        }
    }

    #[test]
    fn covers_are_etale_fibrations(base in connected_graph(4, 3), n in 1usize..=3, seed in any::<u64>()) {
        let mut r = rng(seed);
        let rank = shapefib::presentation::shape1(&base).rank(0);
        let perms = (0..rank).map(|_| random_perm(&mut r, n)).collect();
        let m = MonodromyAction::new(base.clone(), 0, n, perms).unwrap();
        let p = total_space(&m);
        prop_assert!(is_cover(p.map()));
        let c = classify(p.map());
        prop_assert!(c.shape1.etale.is_true());
        prop_assert!(c.shape1.fibration.is_true());
        prop_assert_eq!(etale_family_check(p.map()).unwrap(), true);
    }
}

#[test]
fn fibrations_compose_and_pull_back() {
    let mut r = rng(SEED);
    let (mut composites, mut pullbacks) = (0, 0);
    for _ in 0..3000 {
        let sizes: Vec<usize> = (0..4).map(|_| rand::Rng::gen_range(&mut r, 1..=3)).collect();
        let x = random_graph(&mut r, sizes[0] + 1, sizes[0] + 1);
        let y = random_graph(&mut r, sizes[1], sizes[1]);
        let z = random_graph(&mut r, sizes[2], sizes[2]);
        let b = random_graph(&mut r, sizes[3], sizes[3]);
        let f = random_map(&mut r, &x, &y);
        let g = random_map(&mut r, &y, &z);
        let h = random_edge_map(&mut r, &b, &y);
        let f_fib = fibration(&f);
        if f_fib && fibration(&g) {
            composites += 1;
            assert!(fibration(&f.then(&g).unwrap()), "composite of {f:?} and {g:?}");
        }
        if let (true, Some(h)) = (f_fib, h) {
            pullbacks += 1;
            let (_, _, pb) = pullback(&f, &h).unwrap();
            assert!(fibration(&pb), "pullback of {f:?} along {h:?}");
        }
    }
    assert!(composites > 40 && pullbacks > 150, "{composites} composites, {pullbacks} pullbacks");
}

/// The graph pullback only models the homotopy pullback when no two edges
/// over the same cell are both moving: interval times circle has rank 4, and
/// pulling a fibration back along a map that collapses a loop loses the property.
#[test]
fn pullbacks_along_collapsing_maps_are_not_homotopy_pullbacks() {
    let (p, _, _) = shapefib::space::product(&FinGraph::interval(), &FinGraph::bouquet(1));
    assert_eq!(shapefib::presentation::shape1(&p).rank(0), 4);

    let circle = FinGraph::bouquet(1);
    let a = FinGraph::new(2, &[(0, 1), (0, 1)]).unwrap();
    let f = GraphMap::new(a, circle.clone(), vec![0, 0], vec![EdgeImage::Degenerate(0), EdgeImage::Edge(Dart::forward(0))]).unwrap();
    assert!(fibration(&f));
    let two_loops = FinGraph::new(2, &[(0, 0), (1, 1)]).unwrap();
    let g = GraphMap::new(two_loops, circle, vec![0, 0], vec![EdgeImage::Edge(Dart::backward(0)), EdgeImage::Degenerate(0)]).unwrap();
    let (_, _, pb) = pullback(&f, &g).unwrap();
    assert!(!fibration(&pb));
}

/// Components of a graph pullback against the set pullback of components,
/// whenever one leg is a level-0 fibration.
#[test]
fn components_of_pullbacks_along_level_zero_fibrations() {
    let mut r = rng(SEED + 1);
    let mut checked = 0;
    for _ in 0..800 {
        let a = random_sized(&mut r, 4, 4);
        let b = random_sized(&mut r, 4, 4);
        let y = random_sized(&mut r, 3, 3);
        let f = random_map(&mut r, &a, &y);
        let g = random_map(&mut r, &b, &y);
        if !classify(&f).shape0.fibration.is_true() {
            continue;
        }
        checked += 1;
        let (p, pa, pb) = pullback(&f, &g).unwrap();
        let (ca, cb, cy, cp) = (pi0(&a), pi0(&b), pi0(&y), pi0(&p));
        let set_pullback: BTreeSet<(usize, usize)> = (0..ca.count)
            .flat_map(|i| (0..cb.count).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let va = ca.of_vertex.iter().position(|&c| c == i).unwrap();
                let vb = cb.of_vertex.iter().position(|&c| c == j).unwrap();
                cy.of_vertex[f.vertex(va)] == cy.of_vertex[g.vertex(vb)]
            })
            .collect();
        let mut image = vec![None; cp.count];
        for v in p.vertices() {
            let pair = (ca.of_vertex[pa.vertex(v)], cb.of_vertex[pb.vertex(v)]);
            image[cp.of_vertex[v]] = Some(pair);
        }
        let image: Vec<(usize, usize)> = image.into_iter().map(Option::unwrap).collect();
        let distinct: BTreeSet<(usize, usize)> = image.iter().copied().collect();
        assert_eq!(distinct.len(), image.len(), "two pullback components over one pair");
        assert_eq!(distinct, set_pullback);
    }
    assert!(checked > 100, "{checked}");
}

/// All set partitions of `items`, as block index per item.
fn partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn go(items: &[usize], i: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == items.len() {
            out.push(blocks.clone());
            return;
        }
        for k in 0..=blocks.len() {
            if k == blocks.len() {
                blocks.push(vec![items[i]]);
            } else {
                blocks[k].push(items[i]);
            }
            go(items, i + 1, blocks, out);
            if blocks[k].len() == 1 {
                blocks.pop();
            } else {
                blocks[k].pop();
            }
        }
    }
    let mut out = Vec::new();
    go(items, 0, &mut Vec::new(), &mut out);
    out
}

/// Every factorization `X -> X/P -> Y` through a vertex quotient refining the
/// fibers, with parallel same-image edges kept apart or merged, that is
/// connected followed by modal at level 0.
fn brute_force_factorizations(f: &GraphMap) -> Vec<(Vec<Vec<usize>>, bool)> {
    let x = f.source();
    let fibers: Vec<Vec<usize>> = f.target().vertices().map(|y| x.vertices().filter(|&v| f.vertex(v) == y).collect()).collect();
    let mut choices: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for fib in fibers.iter().filter(|f| !f.is_empty()) {
        let mut next = Vec::new();
        for c in &choices {
            for p in partitions(fib) {
                let mut c = c.clone();
                c.extend(p);
                next.push(c);
            }
        }
        choices = next;
    }
    let mut found = Vec::new();
    for blocks in choices {
        let mut block_of = vec![0; x.vertex_count()];
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                block_of[v] = i;
            }
        }
        for merge in [false, true] {
            if let Some((left, right)) = quotient_factorization(f, &blocks, &block_of, merge) {
                if classify(&left).shape0.connected.is_true() && classify(&right).shape0.modal.is_true() {
                    found.push((canonical(blocks.clone()), merge));
                }
            }
        }
    }
    found
}

fn quotient_factorization(f: &GraphMap, blocks: &[Vec<usize>], block_of: &[usize], merge: bool) -> Option<(GraphMap, GraphMap)> {
    let x = f.source();
    let mut endpoints = Vec::new();
    let mut key_of_edge: Vec<(usize, usize, EdgeImage)> = Vec::new();
    let mut left_edges = Vec::new();
    for e in x.edges() {
        let (a, b) = x.endpoints(e);
        match f.edge(e) {
            EdgeImage::Degenerate(_) => {
                if block_of[a] != block_of[b] {
                    return None;
                }
                left_edges.push(EdgeImage::Degenerate(block_of[a]));
            }
            img => {
                let key = (block_of[a], block_of[b], img);
                let existing = if merge { key_of_edge.iter().position(|k| *k == key) } else { None };
                let idx = existing.unwrap_or_else(|| {
                    endpoints.push((block_of[a], block_of[b]));
                    key_of_edge.push(key);
                    endpoints.len() - 1
                });
                left_edges.push(EdgeImage::Edge(Dart::forward(idx)));
            }
        }
    }
    let m = FinGraph::new(blocks.len(), &endpoints).ok()?;
    let left = GraphMap::new(x.clone(), m.clone(), block_of.to_vec(), left_edges).ok()?;
    let right_vertices = blocks.iter().map(|b| f.vertex(b[0])).collect();
    let right_edges = key_of_edge.iter().map(|k| k.2).collect();
    let right = GraphMap::new(m, f.target().clone(), right_vertices, right_edges).ok()?;
    Some((left, right))
}

#[test]
fn level_zero_factorization_is_unique() {
    let mut r = rng(SEED + 2);
    for _ in 0..150 {
        let x = random_sized(&mut r, 6, 6);
        let y = random_sized(&mut r, 3, 3);
        let f = random_map(&mut r, &x, &y);
        let (mid, left, right) = factor0(&f);
        assert!(classify(&left).shape0.connected.is_true());
        assert!(classify(&right).shape0.modal.is_true());
        assert_eq!(left.then(&right).unwrap(), f);
        let found = brute_force_factorizations(&f);
        let mut expected: Vec<Vec<usize>> = vec![Vec::new(); mid.vertex_count()];
        for v in x.vertices() {
            expected[left.vertex(v)].push(v);
        }
        let unique: BTreeSet<Vec<Vec<usize>>> = found.iter().map(|(b, _)| b.clone()).collect();
        assert_eq!(unique.len(), 1, "{found:?} for {f:?}");
        assert_eq!(unique.into_iter().next().unwrap(), canonical(expected));
        // merging parallel edges only survives when there is nothing to merge
        let edge_count = |merge: bool| found.iter().any(|(_, m)| *m == merge);
        assert!(edge_count(false));
    }
}
