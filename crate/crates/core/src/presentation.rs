//! Presented fundamental groupoids of graphs and the functors between them.
//!
//! `∫₁X` is presented by a spanning forest. Each component `C` has a base
//! vertex `x_C` (its lowest vertex) and its vertex group is free on the cotree
//! edges of `C`. A morphism `u -> v` of `C` is encoded by the loop
//! `T(u) · μ · T(v)⁻¹` at the base, where `T(v)` is the tree path from `x_C`
//! to `v`. Under this encoding composition is concatenation of words and the
//! word of any edge path is just the sequence of its cotree letters.

use std::collections::VecDeque;

use serde::Serialize;

use crate::automaton::SubgroupAutomaton;
use crate::error::{input, Result};
use crate::graph::{Dart, FinGraph, GraphMap};
use crate::space::{pi0, Components};
use crate::verdict::Verdict;
use crate::word::{Letter, Word};

/// Default cap on the centralizer power searched when deciding natural isomorphism.
pub const CONJUGATOR_POWER_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresGroupoid {
    graph: FinGraph,
    components: Components,
    bases: Vec<usize>,
    /// Dart from the BFS parent into each vertex; `None` at bases.
    parent: Vec<Option<Dart>>,
    /// Local generator index of each cotree edge.
    generator_of_edge: Vec<Option<usize>>,
    /// Cotree edges of each component, ascending.
    generators: Vec<Vec<usize>>,
}

/// Presentation of the fundamental groupoid by a breadth-first spanning
/// forest: lowest vertex first, incident edges scanned in ascending id.
pub fn shape1(x: &FinGraph) -> PresGroupoid {
    let components = pi0(x);
    let stars = x.stars();
    let mut bases = vec![usize::MAX; components.count];
    let mut parent = vec![None; x.vertex_count()];
    let mut visited = vec![false; x.vertex_count()];
    let mut tree = vec![false; x.edge_count()];
    for v in x.vertices() {
        let c = components.of_vertex[v];
        if bases[c] != usize::MAX {
            continue;
        }
        bases[c] = v;
        visited[v] = true;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &d in &stars[u] {
                let w = x.head(d);
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = Some(d);
                    tree[d.edge] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut generators = vec![Vec::new(); components.count];
    let mut generator_of_edge = vec![None; x.edge_count()];
    for e in x.edges() {
        if !tree[e] {
            let c = components.of_vertex[x.endpoints(e).0];
            generator_of_edge[e] = Some(generators[c].len());
            generators[c].push(e);
        }
    }
    PresGroupoid { graph: x.clone(), components, bases, parent, generator_of_edge, generators }
}

impl PresGroupoid {
    pub fn graph(&self) -> &FinGraph {
        &self.graph
    }

    pub fn components(&self) -> &Components {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.count
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.components.of_vertex[v]
    }

    pub fn base(&self, c: usize) -> usize {
        self.bases[c]
    }

    pub fn bases(&self) -> &[usize] {
        &self.bases
    }

    /// Free rank of the vertex group of component `c`.
    pub fn rank(&self, c: usize) -> usize {
        self.generators[c].len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        (0..self.component_count()).map(|c| self.rank(c)).collect()
    }

    /// Cotree edges of component `c`; the `i`-th is generator `i`.
    pub fn generator_edges(&self, c: usize) -> &[usize] {
        &self.generators[c]
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.generator_of_edge[e].is_none()
    }

    pub fn tree_edges(&self) -> Vec<usize> {
        self.graph.edges().filter(|&e| self.is_tree_edge(e)).collect()
    }

    /// The generator letter read along a dart, if the dart is on a cotree edge.
    pub fn letter(&self, d: Dart) -> Option<Letter> {
        self.generator_of_edge[d.edge].map(|g| Letter::new(g, d.reversed))
    }

    /// Word of an edge path: its cotree letters in order.
    pub fn path_word(&self, path: &[Dart]) -> Word {
        Word::from_letters(path.iter().filter_map(|&d| self.letter(d)))
    }

    /// Tree path from the base of `v`'s component to `v`.
    pub fn tree_path(&self, v: usize) -> Vec<Dart> {
        let mut path = Vec::new();
        let mut cur = v;
        while let Some(d) = self.parent[cur] {
            path.push(d);
            cur = self.graph.tail(d);
        }
        path.reverse();
        path
    }

    /// The loop `T(a) · e · T(b)⁻¹` at the base represented by generator `i` of component `c`.
    pub fn generator_loop(&self, c: usize, i: usize) -> Vec<Dart> {
        let e = self.generators[c][i];
        let (a, b) = self.graph.endpoints(e);
        let mut path = self.tree_path(a);
        path.push(Dart::forward(e));
        path.extend(self.tree_path(b).iter().rev().map(|d| d.inverse()));
        path
    }

    /// Euler characteristic check: rank = edges − vertices + 1 in every component.
    pub fn satisfies_euler_formula(&self) -> bool {
        let mut vertices = vec![0usize; self.component_count()];
        let mut edges = vec![0usize; self.component_count()];
        for v in self.graph.vertices() {
            vertices[self.component_of(v)] += 1;
        }
        for e in self.graph.edges() {
            edges[self.component_of(self.graph.endpoints(e).0)] += 1;
        }
        (0..self.component_count()).all(|c| self.rank(c) + vertices[c] == edges[c] + 1)
    }

    /// Whether the tree edges form a spanning forest: acyclic, with each
    /// non-base vertex reached by exactly one parent dart.
    pub fn forest_is_spanning(&self) -> bool {
        let tree = self.tree_edges();
        let n = self.graph.vertex_count();
        tree.len() + self.component_count() == n
            && self.graph.vertices().all(|v| {
                let path = self.tree_path(v);
                let start = path.first().map_or(v, |&d| self.graph.tail(d));
                start == self.base(self.component_of(v)) && path.len() < n.max(1)
            })
    }
}

/// A functor between presented groupoids.
///
/// For each source component `C`, `generator_images[C][i]` encodes the image of
/// the generator loop at `x_C`, and `transports[v]` encodes the image of the
/// tree path `x_C -> v`. Both are words in the vertex group of the target
/// component, in the encoding described in the module docs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupoidFunctor {
    source: PresGroupoid,
    target: PresGroupoid,
    object_map: Vec<usize>,
    transports: Vec<Word>,
    generator_images: Vec<Vec<Word>>,
}

/// The functor `∫₁f`.
pub fn induce_functor(f: &GraphMap) -> GroupoidFunctor {
    let source = shape1(f.source());
    let target = shape1(f.target());
    let image_word = |path: &[Dart]| {
        let imaged: Vec<Dart> = path.iter().filter_map(|&d| f.dart(d)).collect();
        target.path_word(&imaged)
    };
    let transports: Vec<Word> = source.graph.vertices().map(|v| image_word(&source.tree_path(v))).collect();
    let generator_images = (0..source.component_count())
        .map(|c| {
            source.generators[c]
                .iter()
                .map(|&e| {
                    let (a, b) = source.graph.endpoints(e);
                    let mid = image_word(&[Dart::forward(e)]);
                    transports[a].concat(&mid).concat(&transports[b].inverse())
                })
                .collect()
        })
        .collect();
    GroupoidFunctor {
        object_map: f.vertex_map().to_vec(),
        source,
        target,
        transports,
        generator_images,
    }
}

impl GroupoidFunctor {
    pub fn identity(p: &PresGroupoid) -> Self {
        GroupoidFunctor {
            source: p.clone(),
            target: p.clone(),
            object_map: p.graph.vertices().collect(),
            transports: vec![Word::empty(); p.graph.vertex_count()],
            generator_images: (0..p.component_count())
                .map(|c| (0..p.rank(c)).map(Word::generator).collect())
                .collect(),
        }
    }

    pub fn source(&self) -> &PresGroupoid {
        &self.source
    }

    pub fn target(&self) -> &PresGroupoid {
        &self.target
    }

    pub fn object(&self, v: usize) -> usize {
        self.object_map[v]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn transport(&self, v: usize) -> &Word {
        &self.transports[v]
    }

    pub fn generator_images(&self, c: usize) -> &[Word] {
        &self.generator_images[c]
    }

    /// Target component of each source component.
    pub fn component_map(&self) -> Vec<usize> {
        (0..self.source.component_count())
            .map(|c| self.target.component_of(self.object_map[self.source.base(c)]))
            .collect()
    }

    /// Image of the morphism `u -> v` with encoded word `a`.
    pub fn apply(&self, u: usize, a: &Word, v: usize) -> Word {
        let c = self.source.component_of(u);
        debug_assert_eq!(c, self.source.component_of(v));
        self.transports[u]
            .inverse()
            .concat(&a.substitute(&self.generator_images[c]))
            .concat(&self.transports[v])
    }

    /// Folded image of the vertex group of source component `c` in its target component's group.
    pub fn image_subgroup(&self, c: usize) -> SubgroupAutomaton {
        let d = self.target.component_of(self.object_map[self.source.base(c)]);
        SubgroupAutomaton::from_generators(self.target.rank(d), &self.generator_images[c])
    }

    /// Whether the induced map on vertex groups of component `c` is injective.
    pub fn is_injective_on(&self, c: usize) -> bool {
        self.image_subgroup(c).rank() == self.source.rank(c)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        if self.target != other.source {
            return input("composition of functors with mismatched target/source");
        }
        let object_map = self.object_map.iter().map(|&v| other.object_map[v]).collect();
        let base_image = |v: usize| self.object_map[self.source.base(self.source.component_of(v))];
        let transports = self
            .source
            .graph
            .vertices()
            .map(|v| other.apply(base_image(v), &self.transports[v], self.object_map[v]))
            .collect();
        let generator_images = (0..self.source.component_count())
            .map(|c| {
                let b = self.object_map[self.source.base(c)];
                self.generator_images[c].iter().map(|w| other.apply(b, w, b)).collect()
            })
            .collect();
        Ok(GroupoidFunctor {
            source: self.source.clone(),
            target: other.target.clone(),
            object_map,
            transports,
            generator_images,
        })
    }

    /// Whether this functor is an equivalence of groupoids: bijective on
    /// components and an isomorphism on every vertex group.
    pub fn is_equivalence(&self) -> bool {
        let map = self.component_map();
        let mut hit = vec![false; self.target.component_count()];
        for &d in &map {
            if std::mem::replace(&mut hit[d], true) {
                return false;
            }
        }
        hit.iter().all(|&h| h)
            && (0..self.source.component_count()).all(|c| {
                let k = self.image_subgroup(c);
                k.is_whole_group() && k.rank() == self.source.rank(c)
            })
    }

    /// Decides whether `self ≅ other` by a natural isomorphism. On success the
    /// certificate holds the component of the transformation at each source base.
    pub fn natural_isomorphism(&self, other: &GroupoidFunctor) -> NaturalIso {
        self.natural_isomorphism_capped(other, CONJUGATOR_POWER_CAP)
    }

    pub fn natural_isomorphism_capped(&self, other: &GroupoidFunctor, cap: usize) -> NaturalIso {
        if self.source != other.source || self.target != other.target {
            return NaturalIso { verdict: Verdict::False, at_bases: Vec::new() };
        }
        let (mine, theirs) = (self.component_map(), other.component_map());
        let same_components = self
            .source
            .graph
            .vertices()
            .all(|v| self.target.component_of(self.object_map[v]) == self.target.component_of(other.object_map[v]));
        if !same_components || mine != theirs {
            return NaturalIso { verdict: Verdict::False, at_bases: Vec::new() };
        }
        let mut at_bases = Vec::new();
        for c in 0..self.source.component_count() {
            let pairs: Vec<(Word, Word)> = self.generator_images[c]
                .iter()
                .cloned()
                .zip(other.generator_images[c].iter().cloned())
                .collect();
            match solve_conjugacy(&pairs, cap) {
                Ok(Some(w)) => at_bases.push(w),
                Ok(None) => return NaturalIso { verdict: Verdict::False, at_bases: Vec::new() },
                Err(bound) => {
                    return NaturalIso {
                        verdict: Verdict::Undecided { bound, what: "conjugator power" },
                        at_bases: Vec::new(),
                    }
                }
            }
        }
        NaturalIso { verdict: Verdict::True, at_bases }
    }
}

/// Outcome of a natural-isomorphism search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaturalIso {
    pub verdict: Verdict,
    /// Component at each source base, encoded as a word of the target group.
    pub at_bases: Vec<Word>,
}

/// Finds `c` with `c⁻¹ · a · c = b` for every pair `(a, b)`.
///
/// All solutions of one nontrivial equation form a coset `p·⟨ρ⟩^k·d·q⁻¹` of a
/// cyclic centralizer; a common solution of the others, if it exists, has
/// `|k|` at most the total length of the input plus four, since conjugating a
/// non-commuting element by `ρ^k` grows its length linearly in `k`. `Err`
/// carries that bound when it exceeds `cap`.
pub fn solve_conjugacy(pairs: &[(Word, Word)], cap: usize) -> std::result::Result<Option<Word>, usize> {
    let Some(pivot) = pairs.iter().position(|(a, _)| !a.is_empty()) else {
        return Ok(pairs.iter().all(|(_, b)| b.is_empty()).then(Word::empty));
    };
    let (a, b) = &pairs[pivot];
    let (p, alpha) = a.cyclic_reduction();
    let (q, beta) = b.cyclic_reduction();
    if alpha.len() != beta.len() {
        return Ok(None);
    }
    let n = alpha.len();
    let letters = alpha.letters();
    let Some(shift) = (0..n).find(|&j| {
        letters[j..].iter().chain(&letters[..j]).copied().eq(beta.letters().iter().copied())
    }) else {
        return Ok(None);
    };
    let d = Word::from_letters(letters[..shift].iter().copied());
    let root_len = (1..=n)
        .find(|&l| n % l == 0 && (l..n).all(|i| letters[i] == letters[i - l]))
        .expect("n divides n");
    let root = Word::from_letters(letters[..root_len].iter().copied());
    let bound = pairs.iter().map(|(a, b)| a.len() + b.len()).sum::<usize>() + 4;
    if bound > cap {
        return Err(bound);
    }
    let q_inv = q.inverse();
    for k in 0..=bound as i64 {
        for k in if k == 0 { vec![0] } else { vec![k, -k] } {
            let c = p.concat(&root.pow(k)).concat(&d).concat(&q_inv);
            if pairs.iter().all(|(a, b)| &a.conjugate_by(&c) == b) {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}
