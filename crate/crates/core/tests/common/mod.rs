#![allow(dead_code)]

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use std::collections::HashSet;

use rand_chacha::ChaCha8Rng;
use shapefib::group::Perm;
use shapefib::word::{Letter, Word};
use shapefib::{EdgeImage, FinGraph, GraphMap};

/// Longest word the membership oracles look at.
pub const MAX_LEN: usize = 8;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Graphs with loops and parallel edges.
pub fn graph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = FinGraph> {
    (1..=max_vertices, prop::collection::vec((0..max_vertices, 0..max_vertices), 0..=max_edges)).prop_map(
        |(n, edges)| {
            let edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a % n, b % n)).collect();
            FinGraph::new(n, &edges).unwrap()
        },
    )
}

pub fn connected_graph(max_vertices: usize, extra_edges: usize) -> impl Strategy<Value = FinGraph> {
    (1..=max_vertices, any::<u64>(), 0..=extra_edges).prop_map(|(n, seed, extra)| random_connected(&mut rng(seed), n, extra))
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, m: usize) -> FinGraph {
    let edges: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    FinGraph::new(n, &edges).unwrap()
}

/// A random spanning tree plus `extra` random edges.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, extra: usize) -> FinGraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    edges.extend((0..extra).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))));
    FinGraph::new(n, &edges).unwrap()
}

/// A random graph map: random vertex images, each edge sent to a random
/// compatible dart or collapsed. Falls back to a constant map.
pub fn random_map<R: Rng>(rng: &mut R, x: &FinGraph, y: &FinGraph) -> GraphMap {
    for _ in 0..20 {
        let vm: Vec<usize> = x.vertices().map(|_| rng.gen_range(0..y.vertex_count())).collect();
        let images: Option<Vec<EdgeImage>> = x
            .edges()
            .map(|e| {
                let (a, b) = x.endpoints(e);
                let mut options: Vec<EdgeImage> =
                    y.darts_between(vm[a], vm[b]).into_iter().map(EdgeImage::Edge).collect();
                if vm[a] == vm[b] {
                    options.push(EdgeImage::Degenerate(vm[a]));
                }
                options.choose(rng).copied()
            })
            .collect();
        if let Some(images) = images {
            return GraphMap::new(x.clone(), y.clone(), vm, images).unwrap();
        }
    }
    let w = rng.gen_range(0..y.vertex_count());
    let collapsed = x.edges().map(|_| EdgeImage::Degenerate(w)).collect();
    GraphMap::new(x.clone(), y.clone(), vec![w; x.vertex_count()], collapsed).unwrap()
}

/// A random map that collapses no edge, if one turns up.
pub fn random_edge_map<R: Rng>(rng: &mut R, x: &FinGraph, y: &FinGraph) -> Option<GraphMap> {
    (0..20).map(|_| random_map(rng, x, y)).find(|m| !m.has_degenerate_edges())
}

/// A random map between random graphs.
pub fn map(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = GraphMap> {
    (graph(max_vertices, max_edges), graph(max_vertices, max_edges), any::<u64>())
        .prop_map(|(x, y, seed)| random_map(&mut rng(seed), &x, &y))
}

/// Canonical form of a partition: blocks sorted, each sorted.
pub fn canonical(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

/// A random graph with up to `max_vertices` vertices (at least one) and up to `max_edges` edges.
pub fn random_sized<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> FinGraph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    random_graph(rng, n, m)
}

pub fn random_perm<R: Rng>(r: &mut R, n: usize) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(r);
    Perm::from_images(images).unwrap()
}

pub fn random_word<R: Rng>(r: &mut R, max_len: usize) -> Word {
    let len = r.gen_range(1..=max_len);
    Word::from_letters((0..len).map(|_| Letter::new(r.gen_range(0..2), r.gen())))
}

/// Where the point goes when the letters of `w` act one after another.
pub fn act(perms: &[Perm], point: usize, w: &Word) -> usize {
    w.letters().iter().fold(point, |i, l| {
        let p = &perms[l.generator];
        if l.inverse {
            p.inverse().apply(i)
        } else {
            p.apply(i)
        }
    })
}

pub fn symmetrized(gens: &[Word]) -> Vec<Word> {
    gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect()
}

/// Nielsen reduction conditions on a generator set, checked literally.
pub fn is_nielsen_reduced(gens: &[Word]) -> bool {
    if gens.iter().any(Word::is_empty) {
        return false;
    }
    let s = symmetrized(gens);
    // no generator is repeated up to inversion
    if s.iter().collect::<HashSet<_>>().len() != s.len() {
        return false;
    }
    for u in &s {
        for v in &s {
            if *v == u.inverse() {
                continue;
            }
            if u.concat(v).len() < u.len().max(v.len()) {
                return false;
            }
            for w in &s {
                if *w == v.inverse() {
                    continue;
                }
                if u.concat(v).concat(w).len() + v.len() <= u.len() + w.len() {
                    return false;
                }
            }
        }
    }
    true
}

/// Elements of the generated subgroup of length at most `MAX_LEN`, from all
/// freely reduced products of generators. For a reduced set the length of a
/// product never drops below the length of its prefixes, so prefixes longer
/// than `MAX_LEN` are dropped.
pub fn short_elements(gens: &[Word]) -> HashSet<Word> {
    let s = symmetrized(gens);
    let mut out: HashSet<Word> = HashSet::from([Word::empty()]);
    let mut frontier: Vec<(Word, Option<usize>)> = vec![(Word::empty(), None)];
    for _ in 0..MAX_LEN {
        let mut next = Vec::new();
        for (w, last) in &frontier {
            for (k, g) in s.iter().enumerate() {
                if last.is_some_and(|j| j ^ 1 == k) {
                    continue;
                }
                let v = w.concat(g);
                if v.len() <= MAX_LEN {
                    out.insert(v.clone());
                    next.push((v, Some(k)));
                }
            }
        }
        frontier = next;
    }
    out
}
