//! Stallings-folded subgroup automata over a free group.
//!
//! A subgroup `H ≤ F(x_0, .., x_{r-1})` is represented by a rooted graph whose
//! edges are labelled by generators, folded so that no vertex has two outgoing
//! or two incoming edges with the same label. A reduced word lies in `H` iff
//! reading it from the root stays inside the graph and returns to the root.

use std::collections::{HashMap, HashSet, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::word::{Letter, Word};

/// Labelled edge `source --label--> target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LabelledEdge {
    pub source: usize,
    pub label: usize,
    pub target: usize,
}

/// Canonically numbered, so structural equality is isomorphism of rooted automata.
#[derive(Debug, Clone, Serialize)]
pub struct SubgroupAutomaton {
    ambient_rank: usize,
    vertex_count: usize,
    edges: Vec<LabelledEdge>,
    #[serde(skip)]
    out: Vec<HashMap<usize, usize>>,
    #[serde(skip)]
    inc: Vec<HashMap<usize, usize>>,
}

impl PartialEq for SubgroupAutomaton {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank
            && self.vertex_count == other.vertex_count
            && self.edges == other.edges
    }
}

impl Eq for SubgroupAutomaton {}

impl std::hash::Hash for SubgroupAutomaton {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.ambient_rank, self.vertex_count, &self.edges).hash(state);
    }
}

impl SubgroupAutomaton {
    /// Folded automaton of the subgroup generated by `generators`.
    pub fn from_generators(ambient_rank: usize, generators: &[Word]) -> Self {
        let mut vertex_count = 1;
        let mut edges = Vec::new();
        for w in generators {
            let letters = w.letters();
            let mut cur = 0;
            for (i, l) in letters.iter().enumerate() {
                let next = if i + 1 == letters.len() {
                    0
                } else {
                    vertex_count += 1;
                    vertex_count - 1
                };
                edges.push(oriented(cur, *l, next));
                cur = next;
            }
        }
        Self::fold_raw(ambient_rank, vertex_count, edges)
    }

    /// Folds an arbitrary rooted labelled graph (root is vertex 0). Edges are
    /// processed in the given order.
    pub fn fold_raw(ambient_rank: usize, vertex_count: usize, edges: Vec<LabelledEdge>) -> Self {
        assert!(vertex_count >= 1, "automaton needs a root");
        let mut uf = UnionFind::<usize>::new(vertex_count);
        let mut edges = edges;
        loop {
            let mut merged = false;
            let mut out: HashMap<(usize, usize), usize> = HashMap::new();
            let mut inc: HashMap<(usize, usize), usize> = HashMap::new();
            for e in &edges {
                let (s, t) = (uf.find(e.source), uf.find(e.target));
                if let Some(&t2) = out.get(&(s, e.label)) {
                    if uf.find(t2) != t {
                        uf.union(t2, t);
                        merged = true;
                        continue;
                    }
                } else {
                    out.insert((s, e.label), t);
                }
                if let Some(&s2) = inc.get(&(t, e.label)) {
                    if uf.find(s2) != s {
                        uf.union(s2, s);
                        merged = true;
                    }
                } else {
                    inc.insert((t, e.label), s);
                }
            }
            let mut seen = HashSet::new();
            edges = edges
                .into_iter()
                .map(|e| LabelledEdge {
                    source: uf.find(e.source),
                    label: e.label,
                    target: uf.find(e.target),
                })
                .filter(|e| seen.insert(*e))
                .collect();
            if !merged {
                break;
            }
        }
        Self::canonical(ambient_rank, uf.find(0), edges)
    }

    /// Renumbers vertices in breadth-first order from `root`, visiting
    /// outgoing labels first then incoming labels, each in increasing order.
    /// Folded automata are deterministic, so this is a canonical form.
    fn canonical(ambient_rank: usize, root: usize, edges: Vec<LabelledEdge>) -> Self {
        let mut out: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        let mut inc: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for e in &edges {
            out.entry(e.source).or_default().push((e.label, e.target));
            inc.entry(e.target).or_default().push((e.label, e.source));
        }
        let mut order = HashMap::new();
        order.insert(root, 0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let mut nbrs: Vec<(bool, usize, usize)> = Vec::new();
            nbrs.extend(out.get(&v).into_iter().flatten().map(|&(l, t)| (false, l, t)));
            nbrs.extend(inc.get(&v).into_iter().flatten().map(|&(l, s)| (true, l, s)));
            nbrs.sort();
            for (_, _, w) in nbrs {
                if !order.contains_key(&w) {
                    order.insert(w, order.len());
                    queue.push_back(w);
                }
            }
        }
        let mut renamed: Vec<LabelledEdge> = edges
            .iter()
            .filter(|e| order.contains_key(&e.source))
            .map(|e| LabelledEdge { source: order[&e.source], label: e.label, target: order[&e.target] })
            .collect();
        renamed.sort();
        Self::from_folded_edges(ambient_rank, order.len(), renamed)
    }

    fn from_folded_edges(ambient_rank: usize, vertex_count: usize, edges: Vec<LabelledEdge>) -> Self {
        let mut out = vec![HashMap::new(); vertex_count];
        let mut inc = vec![HashMap::new(); vertex_count];
        for e in &edges {
            out[e.source].insert(e.label, e.target);
            inc[e.target].insert(e.label, e.source);
        }
        SubgroupAutomaton { ambient_rank, vertex_count, edges, out, inc }
    }

    /// Refolds with edges processed in the given permutation of the current
    /// edge order. Folded automata are fixed points, so this is the identity.
    pub fn refold_in_order(&self, order: &[usize]) -> Self {
        let edges = order.iter().map(|&i| self.edges[i]).collect();
        Self::fold_raw(self.ambient_rank, self.vertex_count, edges)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[LabelledEdge] {
        &self.edges
    }

    /// Free rank of the subgroup: edges − vertices + 1.
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    /// True when every vertex has an outgoing and an incoming edge for every
    /// label, i.e. the subgroup has finite index equal to the vertex count.
    pub fn is_complete(&self) -> bool {
        (0..self.vertex_count).all(|v| {
            (0..self.ambient_rank).all(|l| self.out[v].contains_key(&l) && self.inc[v].contains_key(&l))
        })
    }

    /// Index of the subgroup when finite.
    pub fn index(&self) -> Option<usize> {
        self.is_complete().then_some(self.vertex_count)
    }

    /// Whether this is the whole free group.
    pub fn is_whole_group(&self) -> bool {
        self.vertex_count == 1 && self.is_complete()
    }

    fn step(&self, v: usize, l: Letter) -> Option<usize> {
        if l.inverse {
            self.inc[v].get(&l.generator).copied()
        } else {
            self.out[v].get(&l.generator).copied()
        }
    }

    /// Reads `w` from the root as far as possible. Returns the vertex reached
    /// and the unread suffix. Two words lie in the same right coset `H·w`
    /// exactly when these agree.
    pub fn coset_key(&self, w: &Word) -> (usize, Word) {
        let letters = w.letters();
        let mut v = 0;
        for (i, &l) in letters.iter().enumerate() {
            match self.step(v, l) {
                Some(next) => v = next,
                None => return (v, Word::from_letters(letters[i..].iter().copied())),
            }
        }
        (v, Word::empty())
    }

    /// Vertex reached by reading `w` from the root, if the whole word can be read.
    pub fn trace(&self, w: &Word) -> Option<usize> {
        match self.coset_key(w) {
            (v, rest) if rest.is_empty() => Some(v),
            _ => None,
        }
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.trace(w) == Some(0)
    }

    /// Free basis read off a breadth-first spanning tree: one generator per non-tree edge.
    pub fn generators(&self) -> Vec<Word> {
        let mut to_root: Vec<Option<Word>> = vec![None; self.vertex_count];
        to_root[0] = Some(Word::empty());
        let mut tree = HashSet::new();
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for (i, e) in self.edges.iter().enumerate() {
                let (w, letter) = if e.source == v {
                    (e.target, Letter::new(e.label, false))
                } else if e.target == v {
                    (e.source, Letter::new(e.label, true))
                } else {
                    continue;
                };
                if to_root[w].is_none() {
                    let mut path = to_root[v].clone().expect("visited");
                    path.push(letter);
                    to_root[w] = Some(path);
                    tree.insert(i);
                    queue.push_back(w);
                }
            }
        }
        self.edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !tree.contains(i))
            .map(|(_, e)| {
                let mut w = to_root[e.source].clone().expect("connected");
                w.push(Letter::new(e.label, false));
                w.concat(&to_root[e.target].clone().expect("connected").inverse())
            })
            .collect()
    }

    /// `other ≤ self`.
    pub fn contains_subgroup(&self, other: &SubgroupAutomaton) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    /// Equality of subgroups by mutual generator membership.
    pub fn subgroup_equal(&self, other: &SubgroupAutomaton) -> bool {
        self.contains_subgroup(other) && other.contains_subgroup(self)
    }

    /// Distinct right cosets `H·w` with a representative of length at most
    /// `radius`, shortest representatives first, stopping after `limit`
    /// cosets. Breadth-first search of the coset graph, so each coset is
    /// visited once.
    pub fn enumerate_cosets(&self, radius: usize, limit: usize) -> Vec<Word> {
        let mut seen = HashSet::from([self.coset_key(&Word::empty())]);
        let mut reps = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..self.ambient_rank {
                    for inverse in [false, true] {
                        let mut v = w.clone();
                        v.push(Letter::new(g, inverse));
                        if reps.len() >= limit {
                            return reps;
                        }
                        if seen.insert(self.coset_key(&v)) {
                            reps.push(v.clone());
                            next.push(v);
                        }
                    }
                }
            }
            frontier = next;
        }
        reps.truncate(limit);
        reps
    }
}

fn oriented(source: usize, l: Letter, target: usize) -> LabelledEdge {
    if l.inverse {
        LabelledEdge { source: target, label: l.generator, target: source }
    } else {
        LabelledEdge { source, label: l.generator, target }
    }
}

/// Stallings fold of the subgroup generated by `generators`.
pub fn fold(ambient_rank: usize, generators: &[Word]) -> SubgroupAutomaton {
    SubgroupAutomaton::from_generators(ambient_rank, generators)
}

pub fn membership(a: &SubgroupAutomaton, w: &Word) -> bool {
    a.contains(w)
}

pub fn subgroup_equal(a: &SubgroupAutomaton, b: &SubgroupAutomaton) -> bool {
    a.subgroup_equal(b)
}
