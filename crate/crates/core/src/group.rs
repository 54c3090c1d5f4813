//! Permutations and finite permutation groups.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{input, Result};

/// A permutation of `0..n`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return input(format!("{images:?} is not a permutation"));
            }
        }
        Ok(Perm(images))
    }

    /// Parses 1-based cycle notation such as `(12)(354)`, `(1 2)(3 5 4)` or
    /// `()`. Inside a cycle, points are single digits unless separated by
    /// spaces or commas.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let s = s.trim();
        if s == "id" {
            return Ok(Perm(images));
        }
        let mut rest = s;
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return input(format!("expected `(` in cycle notation `{s}`"));
            };
            let Some(close) = body.find(')') else {
                return input(format!("unclosed cycle in `{s}`"));
            };
            let inner = &body[..close];
            rest = body[close + 1..].trim_start();
            let points: Vec<&str> = if inner.contains([' ', ',']) {
                inner.split([' ', ',']).filter(|t| !t.is_empty()).collect()
            } else {
                inner.char_indices().map(|(i, c)| &inner[i..i + c.len_utf8()]).collect()
            };
            let mut cycle = Vec::with_capacity(points.len());
            for p in points {
                let k: usize = p.parse().map_err(|_| crate::Error::Input(format!("bad point `{p}` in `{s}`")))?;
                if k == 0 || k > n {
                    return input(format!("point {k} out of range 1..={n} in `{s}`"));
                }
                if std::mem::replace(&mut seen[k - 1], true) {
                    return input(format!("point {k} repeated in `{s}`"));
                }
                cycle.push(k - 1);
            }
            for (i, &a) in cycle.iter().enumerate() {
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        other.compose(self)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.0[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.0[cur];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Lengths of all cycles including fixed points, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.0[cur];
                len += 1;
            }
            if len > 0 {
                out.push(len);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        let sep = if self.0.len() > 9 { " " } else { "" };
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", pts.join(sep))?;
        }
        Ok(())
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Perm(cur.clone()));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// A finite group given by permuting generators, with its elements and Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    /// `table[a][b]` is the index of `elements[a] ∘ elements[b]`.
    table: Vec<Vec<usize>>,
}

impl FinGroup {
    /// Closes the generators under composition. Element 0 is the identity.
    pub fn generated_by(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return input("generator degree differs from the group degree");
        }
        let mut elements = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, usize> = HashMap::from([(elements[0].clone(), 0)]);
        let mut i = 0;
        while i < elements.len() {
            for g in &generators {
                let h = g.compose(&elements[i]);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elements.len());
                    elements.push(h);
                }
            }
            i += 1;
        }
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&a.compose(b)]).collect())
            .collect();
        Ok(FinGroup { degree, generators, elements, table })
    }

    pub fn trivial() -> Self {
        Self::generated_by(1, vec![]).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Self {
        let images = (0..n).map(|i| (i + 1) % n).collect();
        Self::generated_by(n, vec![Perm(images)]).expect("cyclic group")
    }

    /// `C₂ × C₂` acting on four points.
    pub fn klein() -> Self {
        Self::generated_by(4, vec![Perm(vec![1, 0, 3, 2]), Perm(vec![2, 3, 0, 1])]).expect("Klein group")
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm((0..n).map(|i| if i < 2 { 1 - i } else { i }).collect()));
            gens.push(Perm((0..n).map(|i| (i + 1) % n).collect()));
        }
        Self::generated_by(n.max(1), gens).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.iter().position(|e| e == p)
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.table[a].iter().position(|&c| c == 0).expect("group element has an inverse")
    }

    /// Index of each generator among the elements.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index_of(g).expect("generator is an element")).collect()
    }
}

/// All homomorphisms `g -> h`, each as the list of images of `g`'s elements.
pub fn homomorphisms(g: &FinGroup, h: &FinGroup) -> Vec<Vec<usize>> {
    let gens = g.generator_indices();
    // Express every element of g as a product of generators, breadth-first.
    let mut word: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    let mut order = vec![0];
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let a = order[i];
        for (k, &s) in gens.iter().enumerate() {
            let b = g.mul(s, a);
            if !seen[b] {
                seen[b] = true;
                word[b] = Some((k, a));
                order.push(b);
            }
        }
        i += 1;
    }
    let choices = vec![(0..h.order()).collect::<Vec<_>>(); gens.len()];
    let mut out = Vec::new();
    for images in crate::graph::cartesian(&choices) {
        let mut map = vec![usize::MAX; g.order()];
        map[0] = 0;
        for &b in &order[1..] {
            let (k, a) = word[b].expect("reached");
            map[b] = h.mul(images[k], map[a]);
        }
        let is_hom = (0..g.order()).all(|a| (0..g.order()).all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])));
        if is_hom {
            out.push(map);
        }
    }
    out
}
