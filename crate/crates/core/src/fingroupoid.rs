//! Explicit finite groupoids with composition tables.
//!
//! Here the truncations `‖−‖₋₁` and `‖−‖₀` are computable outright, so every
//! modal notion can be decided by brute force. Composition is written
//! diagrammatically: `compose(f, g)` is "`f` then `g`" and needs
//! `dst(f) == src(g)`.

use std::collections::HashMap;
use std::fmt;

use petgraph::unionfind::UnionFind;
use rand::Rng;
use serde::Serialize;

use crate::classify::ModalFlags;
use crate::error::{input, Error, Result};
use crate::group::{homomorphisms, FinGroup};
use crate::space::Components;
use crate::verdict::Verdict;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinGroupoid {
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<usize>,
    dst: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    /// Morphisms leaving each object, ascending.
    #[serde(skip)]
    out: Vec<Vec<usize>>,
    /// Position of each morphism in `out[src]`.
    #[serde(skip)]
    slot: Vec<usize>,
    /// `table[f][slot[g]]` is `f` then `g`.
    #[serde(skip)]
    table: Vec<Vec<usize>>,
}

fn out_lists(n: usize, src: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut out = vec![Vec::new(); n];
    let mut slot = vec![0; src.len()];
    for (f, &s) in src.iter().enumerate() {
        slot[f] = out[s].len();
        out[s].push(f);
    }
    (out, slot)
}

impl FinGroupoid {
    /// Builds a groupoid from labelled objects, labelled morphisms
    /// `(label, src, dst)`, the identity of each object and composition
    /// triples `(f, g, f then g)`. Every law is checked.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identities: Vec<usize>,
        compositions: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = objects.len();
        let m = morphisms.len();
        if identities.len() != n {
            return input(format!("{} identities given for {n} objects", identities.len()));
        }
        for (label, s, d) in &morphisms {
            if *s >= n || *d >= n {
                return input(format!("morphism {label} has an endpoint outside the {n} objects"));
            }
        }
        let (src, dst): (Vec<usize>, Vec<usize>) = morphisms.iter().map(|&(_, s, d)| (s, d)).unzip();
        let labels: Vec<String> = morphisms.into_iter().map(|(l, _, _)| l).collect();
        let (out, slot) = out_lists(n, &src);
        let mut table: Vec<Vec<usize>> = (0..m).map(|f| vec![NONE; out[dst[f]].len()]).collect();
        for &(f, g, h) in compositions {
            if f >= m || g >= m || h >= m {
                return input(format!("composition ({f}, {g}, {h}) names an unknown morphism"));
            }
            if dst[f] != src[g] {
                return input(format!("{} and {} are not composable", labels[f], labels[g]));
            }
            if src[h] != src[f] || dst[h] != dst[g] {
                return input(format!("{} ; {} = {} has the wrong endpoints", labels[f], labels[g], labels[h]));
            }
            let cell = &mut table[f][slot[g]];
            if *cell != NONE && *cell != h {
                return input(format!("{} ; {} is given twice", labels[f], labels[g]));
            }
            *cell = h;
        }
        for f in 0..m {
            if let Some(k) = table[f].iter().position(|&c| c == NONE) {
                let g = out[dst[f]][k];
                return input(format!("{} ; {} is missing", labels[f], labels[g]));
            }
        }
        for (x, &e) in identities.iter().enumerate() {
            if e >= m || src[e] != x || dst[e] != x {
                return input(format!("identity of {} is not a loop at it", objects[x]));
            }
        }
        let mut g = FinGroupoid {
            objects,
            morphisms: labels,
            src,
            dst,
            identity: identities,
            inverse: vec![NONE; m],
            out,
            slot,
            table,
        };
        g.fill_inverses()?;
        g.check_laws()?;
        Ok(g)
    }

    /// Unchecked constructor for internal constructions that are lawful by design.
    pub(crate) fn build(
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        identities: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let (src, dst): (Vec<usize>, Vec<usize>) = morphisms.iter().map(|&(_, s, d)| (s, d)).unzip();
        let labels: Vec<String> = morphisms.into_iter().map(|(l, _, _)| l).collect();
        let (out, slot) = out_lists(objects.len(), &src);
        let table = (0..labels.len()).map(|f| out[dst[f]].iter().map(|&g| compose(f, g)).collect()).collect();
        let mut g = FinGroupoid {
            objects,
            morphisms: labels,
            src,
            dst,
            identity: identities,
            inverse: vec![NONE; 0],
            out,
            slot,
            table,
        };
        g.inverse = vec![NONE; g.morphisms.len()];
        g.fill_inverses().expect("internal construction has inverses");
        g
    }

    fn fill_inverses(&mut self) -> Result<()> {
        for f in 0..self.morphisms.len() {
            let (s, d) = (self.src[f], self.dst[f]);
            let inv = self.out[d]
                .iter()
                .copied()
                .find(|&g| self.dst[g] == s && self.compose(f, g) == self.identity[s] && self.compose(g, f) == self.identity[d]);
            match inv {
                Some(g) => self.inverse[f] = g,
                None => return input(format!("{} has no inverse", self.morphisms[f])),
            }
        }
        Ok(())
    }

    /// Checks unit and associativity laws on every composable pair and triple.
    pub fn check_laws(&self) -> Result<()> {
        for f in self.morphism_ids() {
            if self.compose(self.identity[self.src[f]], f) != f || self.compose(f, self.identity[self.dst[f]]) != f {
                return input(format!("unit law fails at {}", self.morphisms[f]));
            }
            for &g in &self.out[self.dst[f]] {
                let fg = self.compose(f, g);
                for &h in &self.out[self.dst[g]] {
                    if self.compose(fg, h) != self.compose(f, self.compose(g, h)) {
                        return input(format!(
                            "associativity fails at ({}, {}, {})",
                            self.morphisms[f], self.morphisms[g], self.morphisms[h]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        Self::discrete(0)
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        Self::build(
            (0..n).map(|i| i.to_string()).collect(),
            (0..n).map(|i| (format!("id{i}"), i, i)).collect(),
            (0..n).collect(),
            |f, _| f,
        )
    }

    /// One object with the given automorphism group.
    pub fn delooping(g: &FinGroup) -> Self {
        Self::from_blocks(&[(1, g.clone())])
    }

    /// A disjoint union of connected blocks `k × k × G`: `k` objects, all
    /// isomorphic, with vertex group `G`. Object `i` of block `c` is
    /// labelled `c.i` and the morphism `(i, g, j)` is `c.i.g.j`.
    pub fn from_blocks(blocks: &[(usize, FinGroup)]) -> Self {
        let mut objects = Vec::new();
        let mut morphisms = Vec::new();
        let mut identities = Vec::new();
        // per morphism: (block, i, g, j); per block: (object offset, morphism offset)
        let mut info = Vec::new();
        let mut offsets = Vec::new();
        for (c, (k, grp)) in blocks.iter().enumerate() {
            let o0 = objects.len();
            let m0 = morphisms.len();
            offsets.push((o0, m0));
            for i in 0..*k {
                objects.push(format!("{c}.{i}"));
            }
            for i in 0..*k {
                for j in 0..*k {
                    for g in 0..grp.order() {
                        if i == j && g == grp.identity() {
                            identities.push(morphisms.len());
                        }
                        morphisms.push((format!("{c}.{i}.{g}.{j}"), o0 + i, o0 + j));
                        info.push((c, i, g, j));
                    }
                }
            }
        }
        let index = |c: usize, i: usize, g: usize, j: usize| {
            let (k, grp) = &blocks[c];
            offsets[c].1 + (i * k + j) * grp.order() + g
        };
        Self::build(objects, morphisms, identities, |f, h| {
            let (c, i, a, _) = info[f];
            let (_, _, b, l) = info[h];
            index(c, i, blocks[c].1.mul(a, b), l)
        })
    }

    /// The product groupoid; object `(a, b)` is `a * |B| + b`, and likewise for morphisms.
    pub fn product(a: &FinGroupoid, b: &FinGroupoid) -> Self {
        let nb = b.object_count();
        let mb = b.morphism_count();
        let objects = a
            .object_ids()
            .flat_map(|x| b.object_ids().map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", a.objects[x], b.objects[y]))
            .collect();
        let mut morphisms = Vec::with_capacity(a.morphism_count() * mb);
        for f in a.morphism_ids() {
            for g in b.morphism_ids() {
                morphisms.push((
                    format!("({},{})", a.morphisms[f], b.morphisms[g]),
                    a.src[f] * nb + b.src[g],
                    a.dst[f] * nb + b.dst[g],
                ));
            }
        }
        let identities = a
            .object_ids()
            .flat_map(|x| b.object_ids().map(move |y| a.identity[x] * mb + b.identity[y]))
            .collect();
        Self::build(objects, morphisms, identities, |p, q| {
            a.compose(p / mb, q / mb) * mb + b.compose(p % mb, q % mb)
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_ids(&self) -> std::ops::Range<usize> {
        0..self.objects.len()
    }

    pub fn morphism_ids(&self) -> std::ops::Range<usize> {
        0..self.morphisms.len()
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn morphism_label(&self, f: usize) -> &str {
        &self.morphisms[f]
    }

    pub fn object_by_label(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|l| l == label)
    }

    pub fn morphism_by_label(&self, label: &str) -> Option<usize> {
        self.morphisms.iter().position(|l| l == label)
    }

    pub fn check_object(&self, x: usize) -> Result<()> {
        if x < self.objects.len() {
            Ok(())
        } else {
            Err(Error::UnknownId { kind: "object", id: x.to_string() })
        }
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn dst(&self, f: usize) -> usize {
        self.dst[f]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverse[f]
    }

    /// `f` then `g`.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        debug_assert_eq!(self.dst[f], self.src[g]);
        self.table[f][self.slot[g]]
    }

    pub fn out(&self, x: usize) -> &[usize] {
        &self.out[x]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.out[a].iter().copied().filter(|&f| self.dst[f] == b).collect()
    }

    pub fn automorphisms(&self, x: usize) -> Vec<usize> {
        self.hom(x, x)
    }

    /// Every composition triple `(f, g, f then g)`.
    pub fn compositions(&self) -> Vec<(usize, usize, usize)> {
        self.morphism_ids()
            .flat_map(|f| self.out[self.dst[f]].iter().map(move |&g| (f, g, self.compose(f, g))))
            .collect()
    }

    /// Isomorphism classes, numbered by first object.
    pub fn components(&self) -> Components {
        let mut uf = UnionFind::<usize>::new(self.object_count());
        for f in self.morphism_ids() {
            uf.union(self.src[f], self.dst[f]);
        }
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let of_vertex = self
            .object_ids()
            .map(|x| {
                let next = ids.len();
                *ids.entry(uf.find(x)).or_insert(next)
            })
            .collect();
        Components { of_vertex, count: ids.len() }
    }

    pub fn is_inhabited(&self) -> bool {
        !self.objects.is_empty()
    }

    /// No morphisms besides identities between any two objects.
    pub fn is_discrete(&self) -> bool {
        self.morphisms.len() == self.objects.len()
    }

    /// Every vertex group is trivial.
    pub fn is_set(&self) -> bool {
        self.object_ids().all(|x| self.out[x].iter().filter(|&&f| self.dst[f] == x).count() == 1)
    }

    pub fn is_contractible(&self) -> bool {
        self.is_inhabited() && self.components().count == 1 && self.is_set()
    }

    /// Empty or contractible.
    pub fn is_prop(&self) -> bool {
        !self.is_inhabited() || self.is_contractible()
    }
}

impl fmt::Display for FinGroupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "groupoid with {} objects, {} morphisms", self.object_count(), self.morphism_count())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinFunctor {
    #[serde(skip)]
    source: FinGroupoid,
    #[serde(skip)]
    target: FinGroupoid,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl FinFunctor {
    /// Checks endpoints, identities and every composable pair.
    pub fn new(source: FinGroupoid, target: FinGroupoid, objects: Vec<usize>, morphisms: Vec<usize>) -> Result<Self> {
        if objects.len() != source.object_count() || morphisms.len() != source.morphism_count() {
            return input("functor maps do not cover the source");
        }
        if let Some(&y) = objects.iter().find(|&&y| y >= target.object_count()) {
            return Err(Error::UnknownId { kind: "object", id: y.to_string() });
        }
        if let Some(&g) = morphisms.iter().find(|&&g| g >= target.morphism_count()) {
            return Err(Error::UnknownId { kind: "morphism", id: g.to_string() });
        }
        let f = FinFunctor { source, target, objects, morphisms };
        let (s, t) = (&f.source, &f.target);
        for m in s.morphism_ids() {
            let g = f.morphisms[m];
            if t.src(g) != f.objects[s.src(m)] || t.dst(g) != f.objects[s.dst(m)] {
                return input(format!("image of {} has the wrong endpoints", s.morphism_label(m)));
            }
        }
        for x in s.object_ids() {
            if f.morphisms[s.identity(x)] != t.identity(f.objects[x]) {
                return input(format!("identity of {} is not preserved", s.object_label(x)));
            }
        }
        for (a, b, c) in s.compositions() {
            if t.compose(f.morphisms[a], f.morphisms[b]) != f.morphisms[c] {
                return input(format!(
                    "composition {} ; {} is not preserved",
                    s.morphism_label(a),
                    s.morphism_label(b)
                ));
            }
        }
        Ok(f)
    }

    fn unchecked(source: FinGroupoid, target: FinGroupoid, objects: Vec<usize>, morphisms: Vec<usize>) -> Self {
        FinFunctor { source, target, objects, morphisms }
    }

    pub fn identity(g: &FinGroupoid) -> Self {
        Self::unchecked(g.clone(), g.clone(), g.object_ids().collect(), g.morphism_ids().collect())
    }

    /// The unique functor to the point.
    pub fn to_point(g: &FinGroupoid) -> Self {
        Self::unchecked(g.clone(), FinGroupoid::point(), vec![0; g.object_count()], vec![0; g.morphism_count()])
    }

    /// The functor from the point picking out `y`.
    pub fn point_at(g: &FinGroupoid, y: usize) -> Result<Self> {
        g.check_object(y)?;
        Ok(Self::unchecked(FinGroupoid::point(), g.clone(), vec![y], vec![g.identity(y)]))
    }

    pub fn source(&self) -> &FinGroupoid {
        &self.source
    }

    pub fn target(&self) -> &FinGroupoid {
        &self.target
    }

    pub fn object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn morphism(&self, m: usize) -> usize {
        self.morphisms[m]
    }

    pub fn object_map(&self) -> &[usize] {
        &self.objects
    }

    pub fn morphism_map(&self) -> &[usize] {
        &self.morphisms
    }

    /// `self` then `other`.
    pub fn then(&self, other: &FinFunctor) -> Result<FinFunctor> {
        if self.target != other.source {
            return input("functors are not composable");
        }
        Ok(Self::unchecked(
            self.source.clone(),
            other.target.clone(),
            self.objects.iter().map(|&y| other.objects[y]).collect(),
            self.morphisms.iter().map(|&g| other.morphisms[g]).collect(),
        ))
    }

    pub fn is_essentially_surjective(&self) -> bool {
        let comps = self.target.components();
        let mut hit = vec![false; comps.count];
        for &y in &self.objects {
            hit[comps.of_vertex[y]] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Bijective on every hom-set.
    pub fn is_fully_faithful(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        s.object_ids().all(|a| {
            s.object_ids().all(|b| {
                let hom = s.hom(a, b);
                let mut images: Vec<usize> = hom.iter().map(|&m| self.morphisms[m]).collect();
                images.sort_unstable();
                images.dedup();
                images.len() == hom.len() && images.len() == t.hom(self.objects[a], self.objects[b]).len()
            })
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_essentially_surjective() && self.is_fully_faithful()
    }

    /// The induced map on components.
    pub fn pi0_map(&self) -> Vec<usize> {
        let (cs, ct) = (self.source.components(), self.target.components());
        let mut map = vec![NONE; cs.count];
        for x in self.source.object_ids() {
            map[cs.of_vertex[x]] = ct.of_vertex[self.objects[x]];
        }
        map
    }

    pub fn is_pi0_surjective(&self) -> bool {
        self.is_essentially_surjective()
    }

    /// Whether `Aut(x) -> Aut(F x)` is onto.
    pub fn is_pi1_surjective_at(&self, x: usize) -> bool {
        let mut images: Vec<usize> = self.source.automorphisms(x).iter().map(|&m| self.morphisms[m]).collect();
        images.sort_unstable();
        images.dedup();
        images.len() == self.target.automorphisms(self.objects[x]).len()
    }

    /// A natural isomorphism `self => other`, as its components, if any.
    pub fn natural_isomorphism(&self, other: &FinFunctor) -> Option<Vec<usize>> {
        if self.source != other.source || self.target != other.target {
            return None;
        }
        let (s, t) = (&self.source, &self.target);
        let comps = s.components();
        let mut out = vec![NONE; s.object_count()];
        for members in comps.members() {
            let base = members[0];
            // a path from the base to every member
            let mut path = vec![NONE; s.object_count()];
            path[base] = s.identity(base);
            let mut queue = vec![base];
            while let Some(a) = queue.pop() {
                for &m in s.out(a) {
                    if path[s.dst(m)] == NONE {
                        path[s.dst(m)] = s.compose(path[a], m);
                        queue.push(s.dst(m));
                    }
                }
            }
            let found = t.hom(self.objects[base], other.objects[base]).into_iter().find_map(|c| {
                let mut comp = out.clone();
                for &x in &members {
                    // c_x = F(p)⁻¹ ; c ; G(p)
                    let p = path[x];
                    comp[x] = t.compose(t.compose(t.inverse(self.morphisms[p]), c), other.morphisms[p]);
                }
                let natural = members.iter().all(|&x| {
                    s.out(x).iter().all(|&m| {
                        t.compose(self.morphisms[m], comp[s.dst(m)]) == t.compose(comp[x], other.morphisms[m])
                    })
                });
                natural.then_some(comp)
            });
            out = found?;
        }
        Some(out)
    }
}

/// The truncation level: `‖−‖₋₁` or `‖−‖₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Level {
    #[serde(rename = "-1")]
    Prop,
    #[serde(rename = "0")]
    Set,
}

impl Level {
    pub fn from_int(n: i32) -> Result<Self> {
        match n {
            -1 => Ok(Level::Prop),
            0 => Ok(Level::Set),
            _ => input(format!("truncation level {n} is not supported, use -1 or 0")),
        }
    }

    pub fn as_int(self) -> i32 {
        match self {
            Level::Prop => -1,
            Level::Set => 0,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_int())
    }
}

/// The groupoid of elements of a set-valued functor on `base`. Objects are
/// pairs `(y, e)` with `e` in the set over `y`; morphisms are `(o, m)` for
/// `m` leaving the base object of `o`.
struct Elements {
    groupoid: FinGroupoid,
    /// Base object and element of each object.
    objects: Vec<(usize, usize)>,
    /// `index[y][e]` is the object `(y, e)`.
    index: Vec<Vec<usize>>,
    /// First morphism of each object.
    offset: Vec<usize>,
    /// Base morphism of each morphism.
    base_morphism: Vec<usize>,
}

impl Elements {
    /// `labels[y]` names the elements over `y`; `act(y, e, m)` transports
    /// `e` along `m : y -> y'`.
    fn new(base: &FinGroupoid, labels: Vec<Vec<String>>, act: impl Fn(usize, usize, usize) -> usize) -> Self {
        let mut objects = Vec::new();
        let mut object_labels = Vec::new();
        let mut index = Vec::with_capacity(base.object_count());
        for (y, els) in labels.iter().enumerate() {
            index.push((objects.len()..objects.len() + els.len()).collect::<Vec<_>>());
            for (e, l) in els.iter().enumerate() {
                objects.push((y, e));
                object_labels.push(l.clone());
            }
        }
        let mut offset = Vec::with_capacity(objects.len());
        let mut morphisms = Vec::new();
        let mut base_morphism = Vec::new();
        for (o, &(y, e)) in objects.iter().enumerate() {
            offset.push(morphisms.len());
            for &m in base.out(y) {
                let d = index[base.dst(m)][act(y, e, m)];
                morphisms.push((format!("{}/{}", object_labels[o], base.morphism_label(m)), o, d));
                base_morphism.push(m);
            }
        }
        let identities = objects.iter().enumerate().map(|(o, &(y, _))| offset[o] + base.slot[base.identity(y)]).collect();
        let groupoid = FinGroupoid::build(object_labels, morphisms.clone(), identities, |f, g| {
            let o = morphisms[f].1;
            let c = base.compose(base_morphism[f], base_morphism[g]);
            offset[o] + base.slot[c]
        });
        Elements { groupoid, objects, index, offset, base_morphism }
    }

    fn morphism_at(&self, base: &FinGroupoid, o: usize, m: usize) -> usize {
        self.offset[o] + base.slot[m]
    }

    fn projection(&self, base: &FinGroupoid) -> FinFunctor {
        FinFunctor::unchecked(
            self.groupoid.clone(),
            base.clone(),
            self.objects.iter().map(|&(y, _)| y).collect(),
            self.base_morphism.clone(),
        )
    }
}

/// The homotopy fiber of a functor over an object `y`: objects are
/// `(x, h : F x -> y)`, morphisms `(x, h) -> (x', h')` are `m : x -> x'`
/// with `F(m) ; h' = h`.
#[derive(Debug, Clone, Serialize)]
pub struct HomotopyFiberG {
    pub base_object: usize,
    pub groupoid: FinGroupoid,
    /// Source object and morphism to the base, per object.
    pub objects: Vec<(usize, usize)>,
    #[serde(skip)]
    pub projection: FinFunctor,
    /// Object index of `(x, h)` for each `x`, keyed by `h`.
    #[serde(skip)]
    index: Vec<HashMap<usize, usize>>,
}

impl HomotopyFiberG {
    pub fn object_of(&self, x: usize, h: usize) -> Option<usize> {
        self.index[x].get(&h).copied()
    }
}

pub fn hfiber(f: &FinFunctor, y: usize) -> Result<HomotopyFiberG> {
    let (s, t) = (f.source(), f.target());
    t.check_object(y)?;
    let homs: Vec<Vec<usize>> = s.object_ids().map(|x| t.hom(f.object(x), y)).collect();
    let positions: Vec<HashMap<usize, usize>> =
        homs.iter().map(|hs| hs.iter().enumerate().map(|(i, &h)| (h, i)).collect()).collect();
    let labels = s
        .object_ids()
        .map(|x| homs[x].iter().map(|&h| format!("({},{})", s.object_label(x), t.morphism_label(h))).collect())
        .collect();
    let el = Elements::new(s, labels, |x, e, m| {
        let h = t.compose(t.inverse(f.morphism(m)), homs[x][e]);
        positions[s.dst(m)][&h]
    });
    let objects = el.objects.iter().map(|&(x, e)| (x, homs[x][e])).collect();
    let index = s
        .object_ids()
        .map(|x| homs[x].iter().enumerate().map(|(e, &h)| (h, el.index[x][e])).collect())
        .collect();
    Ok(HomotopyFiberG { base_object: y, projection: el.projection(s), groupoid: el.groupoid, objects, index })
}

/// The discrete groupoid of isomorphism classes with its unit.
pub fn trunc0(g: &FinGroupoid) -> (FinGroupoid, FinFunctor) {
    let comps = g.components();
    let mut labels = vec![String::new(); comps.count];
    for x in g.object_ids().rev() {
        labels[comps.of_vertex[x]] = format!("[{}]", g.object_label(x));
    }
    let n = comps.count;
    let t = FinGroupoid::build(labels, (0..n).map(|i| (format!("id{i}"), i, i)).collect(), (0..n).collect(), |f, _| f);
    let morphisms = g.morphism_ids().map(|m| comps.of_vertex[g.src(m)]).collect();
    let unit = FinFunctor::unchecked(g.clone(), t.clone(), comps.of_vertex, morphisms);
    (t, unit)
}

/// The point if `g` is inhabited, else empty, with its unit.
pub fn trunc_prop(g: &FinGroupoid) -> (FinGroupoid, FinFunctor) {
    let t = if g.is_inhabited() { FinGroupoid::point() } else { FinGroupoid::empty() };
    let unit = FinFunctor::unchecked(g.clone(), t.clone(), vec![0; g.object_count()], vec![0; g.morphism_count()]);
    (t, unit)
}

pub fn truncate(g: &FinGroupoid, level: Level) -> (FinGroupoid, FinFunctor) {
    match level {
        Level::Prop => trunc_prop(g),
        Level::Set => trunc0(g),
    }
}

/// `‖F‖ : ‖X‖ -> ‖Y‖` together with the units of source and target.
pub fn trunc_functor(f: &FinFunctor, level: Level) -> (FinFunctor, FinFunctor, FinFunctor) {
    let (tx, ux) = truncate(f.source(), level);
    let (ty, uy) = truncate(f.target(), level);
    let mut objects = vec![0; tx.object_count()];
    for x in f.source().object_ids() {
        objects[ux.object(x)] = uy.object(f.object(x));
    }
    let morphisms = objects.iter().map(|&c| ty.identity(c)).collect();
    (FinFunctor::unchecked(tx, ty, objects, morphisms), ux, uy)
}

/// Whether `g` is modal for the level: a set, or a proposition.
pub fn is_modal(g: &FinGroupoid, level: Level) -> bool {
    truncate(g, level).1.is_equivalence()
}

/// The comparison maps of the modal prism over `y`: `δ : fib_F(y) -> fib_‖F‖(‖y‖)`
/// and `γ : ‖fib_F(y)‖ -> fib_‖F‖(‖y‖)`.
#[derive(Debug, Clone)]
pub struct PrismG {
    pub fiber: HomotopyFiberG,
    pub truncated_fiber: HomotopyFiberG,
    pub delta: FinFunctor,
    pub gamma: FinFunctor,
}

pub fn prism(f: &FinFunctor, y: usize, level: Level) -> Result<PrismG> {
    let fiber = hfiber(f, y)?;
    let (tf, ux, uy) = trunc_functor(f, level);
    let truncated_fiber = hfiber(&tf, uy.object(y))?;
    let h = &fiber.groupoid;
    let k = &truncated_fiber.groupoid;
    let delta_obj: Vec<usize> = fiber
        .objects
        .iter()
        .map(|&(x, m)| {
            // the unit sends h : F x -> y to a morphism of the truncation
            truncated_fiber.object_of(ux.object(x), uy.morphism(m)).expect("unit lands in the fiber")
        })
        .collect();
    // K is discrete, so every morphism goes to an identity
    let delta_mor = h.morphism_ids().map(|m| k.identity(delta_obj[h.src(m)])).collect();
    let delta = FinFunctor::unchecked(h.clone(), k.clone(), delta_obj.clone(), delta_mor);
    let (th, uh) = truncate(h, level);
    let mut gamma_obj = vec![0; th.object_count()];
    for o in h.object_ids() {
        gamma_obj[uh.object(o)] = delta_obj[o];
    }
    let gamma_mor = gamma_obj.iter().map(|&c| k.identity(c)).collect();
    let gamma = FinFunctor::unchecked(th, k.clone(), gamma_obj, gamma_mor);
    Ok(PrismG { fiber, truncated_fiber, delta, gamma })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncClassification {
    pub level: Level,
    pub flags: ModalFlags,
    /// Objects of the target over which `γ` is not an equivalence.
    pub fibration_failures: Vec<usize>,
}

/// The five classes at a truncation level, each straight from its definition.
pub fn classify_trunc(f: &FinFunctor, level: Level) -> TruncClassification {
    let mut modal = true;
    let mut connected = true;
    let mut etale = true;
    let mut fibration_failures = Vec::new();
    for y in f.target().object_ids() {
        let p = prism(f, y, level).expect("object in range");
        modal &= is_modal(&p.fiber.groupoid, level);
        connected &= truncate(&p.fiber.groupoid, level).0.object_count() == 1;
        etale &= p.delta.is_equivalence();
        if !p.gamma.is_equivalence() {
            fibration_failures.push(y);
        }
    }
    let equivalence = trunc_functor(f, level).0.is_equivalence();
    TruncClassification {
        level,
        flags: ModalFlags {
            modal: Verdict::from_bool(modal),
            connected: Verdict::from_bool(connected),
            etale: Verdict::from_bool(etale),
            equivalence: Verdict::from_bool(equivalence),
            fibration: Verdict::from_bool(fibration_failures.is_empty()),
        },
        fibration_failures,
    }
}

/// A factorization `F = left ; right` through `mid`.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub mid: FinGroupoid,
    pub left: FinFunctor,
    pub right: FinFunctor,
}

struct Mids {
    fibers: Vec<HomotopyFiberG>,
    fiber_components: Vec<Components>,
    modal: Elements,
    etale: Elements,
    /// `γ` on the element sets: the class over `y` of each fiber component.
    gamma: Vec<Vec<usize>>,
}

/// Builds `Σ_y ‖fib_F(y)‖` and `Y ×_{‖Y‖} ‖X‖` over `Y`.
fn mids(f: &FinFunctor, level: Level) -> Mids {
    let (s, t) = (f.source(), f.target());
    let fibers: Vec<HomotopyFiberG> = t.object_ids().map(|y| hfiber(f, y).expect("in range")).collect();
    let fiber_components: Vec<Components> = fibers.iter().map(|h| h.groupoid.components()).collect();
    let src_comps = s.components();
    let tgt_comps = t.components();
    let pi0 = f.pi0_map();
    let src_reps: Vec<usize> = src_comps.members().iter().map(|m| m[0]).collect();
    match level {
        Level::Set => {
            let modal_labels = fibers
                .iter()
                .zip(&fiber_components)
                .enumerate()
                .map(|(y, (h, c))| {
                    c.members()
                        .iter()
                        .map(|m| format!("{}:[{}]", t.object_label(y), h.groupoid.object_label(m[0])))
                        .collect()
                })
                .collect();
            let modal = Elements::new(t, modal_labels, |y, e, k| {
                let rep = fiber_components[y].members()[e][0];
                let (x, h) = fibers[y].objects[rep];
                let y2 = t.dst(k);
                let o = fibers[y2].object_of(x, t.compose(h, k)).expect("transport lands in the fiber");
                fiber_components[y2].of_vertex[o]
            });
            let over: Vec<Vec<usize>> = t
                .object_ids()
                .map(|y| (0..src_comps.count).filter(|&c| pi0[c] == tgt_comps.of_vertex[y]).collect())
                .collect();
            let etale_labels = t
                .object_ids()
                .map(|y| {
                    over[y]
                        .iter()
                        .map(|&c| format!("{}:[{}]", t.object_label(y), s.object_label(src_reps[c])))
                        .collect()
                })
                .collect();
            let etale = Elements::new(t, etale_labels, |y, e, k| {
                let c = over[y][e];
                over[t.dst(k)].iter().position(|&d| d == c).expect("same component")
            });
            let gamma = t
                .object_ids()
                .map(|y| {
                    fiber_components[y]
                        .members()
                        .iter()
                        .map(|m| {
                            let (x, _) = fibers[y].objects[m[0]];
                            over[y].iter().position(|&c| c == src_comps.of_vertex[x]).expect("γ lands over y")
                        })
                        .collect()
                })
                .collect();
            Mids { fibers, fiber_components, modal, etale, gamma }
        }
        Level::Prop => {
            let star = |b: bool, y: usize| if b { vec![format!("{}:*", t.object_label(y))] } else { vec![] };
            let modal = Elements::new(t, t.object_ids().map(|y| star(fibers[y].groupoid.is_inhabited(), y)).collect(), |_, _, _| 0);
            let etale = Elements::new(t, t.object_ids().map(|y| star(s.is_inhabited(), y)).collect(), |_, _, _| 0);
            let gamma = t.object_ids().map(|y| if fibers[y].groupoid.is_inhabited() { vec![0] } else { vec![] }).collect();
            Mids { fibers, fiber_components, modal, etale, gamma }
        }
    }
}

fn left_factor(f: &FinFunctor, el: &Elements, element_of: impl Fn(usize) -> usize) -> FinFunctor {
    let (s, t) = (f.source(), f.target());
    let objects: Vec<usize> = s.object_ids().map(|x| el.index[f.object(x)][element_of(x)]).collect();
    let morphisms = s.morphism_ids().map(|m| el.morphism_at(t, objects[s.src(m)], f.morphism(m))).collect();
    FinFunctor::unchecked(s.clone(), el.groupoid.clone(), objects, morphisms)
}

/// `X -> Σ_y ‖fib_F(y)‖ -> Y`: a connected map followed by a modal one.
pub fn factor_connected_modal(f: &FinFunctor, level: Level) -> Factorization {
    let m = mids(f, level);
    let left = left_factor(f, &m.modal, |x| match level {
        Level::Set => {
            let y = f.object(x);
            let o = m.fibers[y].object_of(x, f.target().identity(y)).expect("(x, id) is in the fiber");
            m.fiber_components[y].of_vertex[o]
        }
        Level::Prop => 0,
    });
    Factorization { mid: m.modal.groupoid.clone(), right: m.modal.projection(f.target()), left }
}

/// `X -> Y ×_{‖Y‖} ‖X‖ -> Y`: an equivalence followed by an étale map.
pub fn factor_equiv_etale(f: &FinFunctor, level: Level) -> Factorization {
    let m = mids(f, level);
    let comps = f.source().components();
    let left = left_factor(f, &m.etale, |x| match level {
        Level::Set => {
            let y = f.object(x);
            // position of the class of x among the classes over y
            (0..comps.count)
                .filter(|&c| f.pi0_map()[c] == f.target().components().of_vertex[y])
                .position(|c| c == comps.of_vertex[x])
                .expect("class lies over y")
        }
        Level::Prop => 0,
    });
    Factorization { mid: m.etale.groupoid.clone(), right: m.etale.projection(f.target()), left }
}

/// `tot(γ)`, the map over `Y` between the two middle groupoids.
pub fn tot_gamma(f: &FinFunctor, level: Level) -> FinFunctor {
    let m = mids(f, level);
    let t = f.target();
    let a = &m.modal;
    let objects: Vec<usize> = a.objects.iter().map(|&(y, e)| m.etale.index[y][m.gamma[y][e]]).collect();
    let morphisms = a
        .groupoid
        .morphism_ids()
        .map(|g| m.etale.morphism_at(t, objects[a.groupoid.src(g)], a.base_morphism[g]))
        .collect();
    FinFunctor::unchecked(a.groupoid.clone(), m.etale.groupoid.clone(), objects, morphisms)
}

/// The homotopy pullback of `f : X -> Y` and `g : B -> Y`: objects
/// `(x, b, h : F x -> G b)`, morphisms pairs `(m, n)` with `F(m) ; h' = h ; G(n)`.
#[derive(Debug, Clone)]
pub struct HomotopyPullback {
    pub groupoid: FinGroupoid,
    pub objects: Vec<(usize, usize, usize)>,
    pub left: FinFunctor,
    pub right: FinFunctor,
}

fn same_target(f: &FinFunctor, g: &FinFunctor) -> Result<()> {
    if f.target() != g.target() {
        return input("the two functors have different targets");
    }
    Ok(())
}

pub fn hpullback(f: &FinFunctor, g: &FinFunctor) -> Result<HomotopyPullback> {
    same_target(f, g)?;
    let (x, b, y) = (f.source(), g.source(), f.target());
    let prod = FinGroupoid::product(x, b);
    let (nb, mb) = (b.object_count(), b.morphism_count());
    let homs: Vec<Vec<usize>> = prod.object_ids().map(|p| y.hom(f.object(p / nb), g.object(p % nb))).collect();
    let positions: Vec<HashMap<usize, usize>> =
        homs.iter().map(|hs| hs.iter().enumerate().map(|(i, &h)| (h, i)).collect()).collect();
    let labels = prod
        .object_ids()
        .map(|p| {
            homs[p]
                .iter()
                .map(|&h| format!("({},{},{})", x.object_label(p / nb), b.object_label(p % nb), y.morphism_label(h)))
                .collect()
        })
        .collect();
    let el = Elements::new(&prod, labels, |p, e, mn| {
        let (m, n) = (mn / mb, mn % mb);
        let h = y.compose(y.compose(y.inverse(f.morphism(m)), homs[p][e]), g.morphism(n));
        positions[prod.dst(mn)][&h]
    });
    let objects: Vec<(usize, usize, usize)> = el.objects.iter().map(|&(p, e)| (p / nb, p % nb, homs[p][e])).collect();
    let left = FinFunctor::unchecked(
        el.groupoid.clone(),
        x.clone(),
        objects.iter().map(|o| o.0).collect(),
        el.base_morphism.iter().map(|mn| mn / mb).collect(),
    );
    let right = FinFunctor::unchecked(
        el.groupoid.clone(),
        b.clone(),
        objects.iter().map(|o| o.1).collect(),
        el.base_morphism.iter().map(|mn| mn % mb).collect(),
    );
    Ok(HomotopyPullback { groupoid: el.groupoid, objects, left, right })
}

/// Components of the homotopy pullback, found without building its
/// composition table: `(m, id)` and `(id, n)` generate every morphism.
pub fn hpullback_components(f: &FinFunctor, g: &FinFunctor) -> Result<(Vec<(usize, usize, usize)>, Components)> {
    same_target(f, g)?;
    let (x, b, y) = (f.source(), g.source(), f.target());
    let mut objects = Vec::new();
    let mut index = HashMap::new();
    for a in x.object_ids() {
        for c in b.object_ids() {
            for h in y.hom(f.object(a), g.object(c)) {
                index.insert((a, c, h), objects.len());
                objects.push((a, c, h));
            }
        }
    }
    let mut uf = UnionFind::<usize>::new(objects.len());
    for (i, &(a, c, h)) in objects.iter().enumerate() {
        for &m in x.out(a) {
            let h2 = y.compose(y.inverse(f.morphism(m)), h);
            uf.union(i, index[&(x.dst(m), c, h2)]);
        }
        for &n in b.out(c) {
            let h2 = y.compose(h, g.morphism(n));
            uf.union(i, index[&(a, b.dst(n), h2)]);
        }
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let of_vertex = (0..objects.len())
        .map(|i| {
            let next = ids.len();
            *ids.entry(uf.find(i)).or_insert(next)
        })
        .collect();
    Ok((objects, Components { of_vertex, count: ids.len() }))
}

/// Whether `‖−‖₀` sends the homotopy pullback of `f` and `g` to the pullback
/// of sets: `π₀(X ×ʰ B) -> π₀X ×_{π₀Y} π₀B` is a bijection.
pub fn pullback_preserved(f: &FinFunctor, g: &FinFunctor) -> Result<bool> {
    let (objects, comps) = hpullback_components(f, g)?;
    let (cx, cb) = (f.source().components(), g.source().components());
    let (pf, pg) = (f.pi0_map(), g.pi0_map());
    let mut image: Vec<Option<(usize, usize)>> = vec![None; comps.count];
    for (i, &(a, c, _)) in objects.iter().enumerate() {
        let pair = (cx.of_vertex[a], cb.of_vertex[c]);
        match image[comps.of_vertex[i]] {
            None => image[comps.of_vertex[i]] = Some(pair),
            Some(p) if p == pair => {}
            Some(_) => unreachable!("components map to one class pair"),
        }
    }
    let mut image: Vec<(usize, usize)> = image.into_iter().map(|p| p.expect("nonempty component")).collect();
    image.sort_unstable();
    let injective = image.windows(2).all(|w| w[0] != w[1]);
    let set_pullback = (0..cx.count).flat_map(|i| (0..cb.count).map(move |j| (i, j))).filter(|&(i, j)| pf[i] == pg[j]).count();
    Ok(injective && image.len() == set_pullback)
}

/// An equivalence `a -> b`, if one exists, found by matching components
/// with isomorphic vertex groups.
pub fn find_equivalence(a: &FinGroupoid, b: &FinGroupoid) -> Option<FinFunctor> {
    let (ca, cb) = (a.components(), b.components());
    if ca.count != cb.count {
        return None;
    }
    let (ma, mb) = (ca.members(), cb.members());
    let mut used = vec![false; cb.count];
    let mut objects = vec![NONE; a.object_count()];
    let mut morphisms = vec![NONE; a.morphism_count()];
    for comp in &ma {
        let base = comp[0];
        let (d, iso) = (0..cb.count).filter(|&d| !used[d]).find_map(|d| {
            group_isomorphism(a, base, b, mb[d][0]).map(|iso| (d, iso))
        })?;
        used[d] = true;
        let target = mb[d][0];
        // send every object to the target base, conjugating by tree paths
        let mut path = HashMap::from([(base, a.identity(base))]);
        let mut queue = vec![base];
        while let Some(u) = queue.pop() {
            for &m in a.out(u) {
                if !path.contains_key(&a.dst(m)) {
                    path.insert(a.dst(m), a.compose(path[&u], m));
                    queue.push(a.dst(m));
                }
            }
        }
        let auts = a.automorphisms(base);
        for &u in comp {
            objects[u] = target;
        }
        for &u in comp {
            for &m in a.out(u) {
                let loop_ = a.compose(a.compose(path[&u], m), a.inverse(path[&a.dst(m)]));
                let k = auts.iter().position(|&g| g == loop_).expect("loop at base");
                morphisms[m] = iso[k];
            }
        }
    }
    let f = FinFunctor::unchecked(a.clone(), b.clone(), objects, morphisms);
    f.is_equivalence().then_some(f)
}

pub fn are_equivalent(a: &FinGroupoid, b: &FinGroupoid) -> bool {
    find_equivalence(a, b).is_some()
}

/// An isomorphism `Aut(x) -> Aut(y)`, as images of `a.automorphisms(x)` in order.
fn group_isomorphism(a: &FinGroupoid, x: usize, b: &FinGroupoid, y: usize) -> Option<Vec<usize>> {
    let (ga, gb) = (a.automorphisms(x), b.automorphisms(y));
    if ga.len() != gb.len() {
        return None;
    }
    let pos: HashMap<usize, usize> = ga.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    // a generating set, greedily
    let mut gens = Vec::new();
    let mut span = vec![a.identity(x)];
    for &g in &ga {
        if !span.contains(&g) {
            gens.push(g);
            span = closure(a, &gens, x);
        }
    }
    let order_of = |g: &FinGroupoid, e: usize, id: usize| {
        let mut k = 1;
        let mut p = e;
        while p != id {
            p = g.compose(p, e);
            k += 1;
        }
        k
    };
    let choices: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = order_of(a, g, a.identity(x));
            gb.iter().copied().filter(|&h| order_of(b, h, b.identity(y)) == o).collect()
        })
        .collect();
    'outer: for images in crate::graph::cartesian(&choices) {
        // extend along words in the generators
        let mut map = vec![NONE; ga.len()];
        map[pos[&a.identity(x)]] = b.identity(y);
        let mut queue = vec![a.identity(x)];
        while let Some(u) = queue.pop() {
            for (&g, &h) in gens.iter().zip(&images) {
                let v = a.compose(u, g);
                let w = b.compose(map[pos[&u]], h);
                match map[pos[&v]] {
                    NONE => {
                        map[pos[&v]] = w;
                        queue.push(v);
                    }
                    existing if existing != w => continue 'outer,
                    _ => {}
                }
            }
        }
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let hom = ga.iter().all(|&u| ga.iter().all(|&v| map[pos[&a.compose(u, v)]] == b.compose(map[pos[&u]], map[pos[&v]])));
        if sorted.len() == ga.len() && hom {
            return Some(map);
        }
    }
    None
}

fn closure(g: &FinGroupoid, gens: &[usize], x: usize) -> Vec<usize> {
    let mut span = vec![g.identity(x)];
    let mut i = 0;
    while i < span.len() {
        for &s in gens {
            let v = g.compose(span[i], s);
            if !span.contains(&v) {
                span.push(v);
            }
        }
        i += 1;
    }
    span
}

/// Classifications at both levels and of `‖F‖₀` at level −1, with the five
/// implications that hold because every proposition is a set.
#[derive(Debug, Clone, Serialize)]
pub struct ModalityComparison {
    pub prop: ModalFlags,
    pub set: ModalFlags,
    /// `‖F‖₀` classified at level −1.
    pub truncated_prop: ModalFlags,
    pub implications: [bool; 5],
}

impl ModalityComparison {
    pub fn holds(&self) -> bool {
        self.implications.iter().all(|&b| b)
    }
}

pub fn compare_modalities(f: &FinFunctor) -> ModalityComparison {
    let prop = classify_trunc(f, Level::Prop).flags;
    let set = classify_trunc(f, Level::Set).flags;
    let truncated_prop = classify_trunc(&trunc_functor(f, Level::Set).0, Level::Prop).flags;
    let implies = |a: Verdict, b: Verdict| !a.is_true() || b.is_true();
    let implications = [
        implies(prop.modal, set.modal),
        implies(prop.etale, set.etale),
        implies(set.equivalence, prop.equivalence),
        implies(set.connected, prop.connected),
        implies(set.fibration.and(truncated_prop.fibration), prop.fibration),
    ];
    ModalityComparison { prop, set, truncated_prop, implications }
}

/// Level-0 characterizations of fibrations, computed independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NineWay {
    /// `γ` is an equivalence over every object.
    pub a: bool,
    /// `‖fib_F(y)‖₀ ≃ fib_{‖F‖₀}(‖y‖)` for every `y`.
    pub b: bool,
    /// `‖−‖₀` preserves every fiber and each sampled pullback.
    pub c: bool,
    /// The two factorizations agree.
    pub d: bool,
    /// The modal factor is étale.
    pub e: bool,
    /// The equivalence factor is connected.
    pub f: bool,
    /// `‖fib_F‖₀` is locally constant: automorphisms act trivially on fiber components.
    pub g: bool,
    /// `tot(γ)` is a fibration, checked only when `d` holds.
    pub h: Option<bool>,
    /// `π₁`-surjectivity everywhere, checked only for `π₀`-surjective `F`.
    pub i: Option<bool>,
}

impl NineWay {
    pub fn agree(&self) -> bool {
        let v = self.a;
        [self.b, self.c, self.d, self.e, self.f, self.g].iter().all(|&x| x == v)
            && self.h.unwrap_or(true)
            && self.i.is_none_or(|x| x == v)
    }
}

pub fn nine_way(f: &FinFunctor, bases: &[FinFunctor]) -> Result<NineWay> {
    let t = f.target();
    let cls = classify_trunc(f, Level::Set);
    let a = cls.flags.fibration.is_true();
    let (tf, _, uy) = trunc_functor(f, Level::Set);
    let mut b = true;
    let mut c = true;
    let mut g = true;
    for y in t.object_ids() {
        let h = hfiber(f, y)?;
        let k = hfiber(&tf, uy.object(y))?;
        b &= are_equivalent(&trunc0(&h.groupoid).0, &k.groupoid);
        c &= pullback_preserved(f, &FinFunctor::point_at(t, y)?)?;
        let comps = h.groupoid.components();
        for k in t.automorphisms(y) {
            g &= h.objects.iter().enumerate().all(|(o, &(x, m))| {
                let moved = h.object_of(x, t.compose(m, k)).expect("transport stays in the fiber");
                comps.of_vertex[moved] == comps.of_vertex[o]
            });
        }
    }
    for base in bases {
        c &= pullback_preserved(f, base)?;
    }
    let d = tot_gamma(f, Level::Set).is_equivalence();
    let e = classify_trunc(&factor_connected_modal(f, Level::Set).right, Level::Set).flags.etale.is_true();
    let ff = classify_trunc(&factor_equiv_etale(f, Level::Set).left, Level::Set).flags.connected.is_true();
    let h = d.then(|| classify_trunc(&tot_gamma(f, Level::Set), Level::Set).flags.fibration.is_true());
    let i = f
        .is_pi0_surjective()
        .then(|| f.source().object_ids().all(|x| f.is_pi1_surjective_at(x)));
    Ok(NineWay { a, b, c, d, e, f: ff, g, h, i })
}

/// The groups used for random blocks.
pub fn corpus_groups() -> Vec<FinGroup> {
    vec![
        FinGroup::trivial(),
        FinGroup::cyclic(2),
        FinGroup::cyclic(3),
        FinGroup::cyclic(4),
        FinGroup::klein(),
        FinGroup::symmetric(3),
    ]
}

/// Random finite groupoids and functors with bounded size.
pub struct Corpus {
    groups: Vec<FinGroup>,
    /// `homs[i][j]`: all homomorphisms from group `i` to group `j`.
    homs: Vec<Vec<Vec<Vec<usize>>>>,
    pub max_objects: usize,
    pub max_morphisms: usize,
}

/// A groupoid presented as blocks, with the group index of each block.
#[derive(Debug, Clone)]
pub struct BlockGroupoid {
    pub groupoid: FinGroupoid,
    /// `(object count, group index)` per block.
    pub blocks: Vec<(usize, usize)>,
}

impl Default for Corpus {
    fn default() -> Self {
        Self::new(6, 24)
    }
}

impl Corpus {
    pub fn new(max_objects: usize, max_morphisms: usize) -> Self {
        let groups = corpus_groups();
        let homs = groups.iter().map(|g| groups.iter().map(|h| homomorphisms(g, h)).collect()).collect();
        Corpus { groups, homs, max_objects, max_morphisms }
    }

    pub fn groupoid<R: Rng>(&self, rng: &mut R) -> BlockGroupoid {
        let mut blocks = Vec::new();
        let (mut objs, mut mors) = (0, 0);
        let target_objects = rng.gen_range(1..=self.max_objects);
        for _ in 0..self.max_objects * 4 {
            if objs >= target_objects {
                break;
            }
            let k = rng.gen_range(1..=3.min(self.max_objects - objs));
            let gi = rng.gen_range(0..self.groups.len());
            let size = k * k * self.groups[gi].order();
            if mors + size <= self.max_morphisms {
                blocks.push((k, gi));
                objs += k;
                mors += size;
            }
        }
        if blocks.is_empty() {
            blocks.push((1, 0));
        }
        let spec: Vec<(usize, FinGroup)> = blocks.iter().map(|&(k, g)| (k, self.groups[g].clone())).collect();
        BlockGroupoid { groupoid: FinGroupoid::from_blocks(&spec), blocks }
    }

    /// A random functor between block groupoids; `y` must be inhabited.
    pub fn functor<R: Rng>(&self, rng: &mut R, x: &BlockGroupoid, y: &BlockGroupoid) -> FinFunctor {
        let (sx, sy) = (&x.groupoid, &y.groupoid);
        let y_offsets: Vec<usize> = y.blocks.iter().scan(0, |acc, &(k, _)| {
            let o = *acc;
            *acc += k;
            Some(o)
        }).collect();
        let mut objects = Vec::with_capacity(sx.object_count());
        let mut morphisms = vec![NONE; sx.morphism_count()];
        let mut first_object = 0;
        let mut first_morphism = 0;
        for &(k, gi) in &x.blocks {
            let d = rng.gen_range(0..y.blocks.len());
            let (kd, hi) = y.blocks[d];
            let img: Vec<usize> = (0..k).map(|_| y_offsets[d] + rng.gen_range(0..kd)).collect();
            // images of the tree morphisms 0 -> j
            let tree: Vec<usize> = (0..k)
                .map(|j| {
                    if j == 0 {
                        sy.identity(img[0])
                    } else {
                        let hom = sy.hom(img[0], img[j]);
                        hom[rng.gen_range(0..hom.len())]
                    }
                })
                .collect();
            let homs = &self.homs[gi][hi];
            let rho = &homs[rng.gen_range(0..homs.len())];
            // vertex group at img[0] in block order: (a, h, a) sits at a fixed stride
            let auts = sy.automorphisms(img[0]);
            let order = self.groups[gi].order();
            for i in 0..k {
                for j in 0..k {
                    for g in 0..order {
                        let m = first_morphism + (i * k + j) * order + g;
                        let loop_ = auts[rho[g]];
                        morphisms[m] = sy.compose(sy.compose(sy.inverse(tree[i]), loop_), tree[j]);
                    }
                }
            }
            objects.extend(img);
            first_object += k;
            first_morphism += k * k * order;
        }
        debug_assert_eq!(first_object, sx.object_count());
        FinFunctor::unchecked(sx.clone(), sy.clone(), objects, morphisms)
    }

    /// A random functor into `y` from a fresh random groupoid.
    pub fn functor_into<R: Rng>(&self, rng: &mut R, y: &BlockGroupoid) -> FinFunctor {
        let x = self.groupoid(rng);
        self.functor(rng, &x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bz(n: usize) -> FinGroupoid {
        FinGroupoid::delooping(&FinGroup::cyclic(n))
    }

    /// The homomorphism `Z/4 -> Z/2`, reduction mod 2.
    fn bz4_to_bz2() -> FinFunctor {
        let (a, b) = (bz(4), bz(2));
        let c4 = FinGroup::cyclic(4);
        let c2 = FinGroup::cyclic(2);
        let hom = homomorphisms(&c4, &c2).into_iter().find(|h| h.iter().any(|&x| x != 0)).unwrap();
        FinFunctor::new(a, b, vec![0], hom).unwrap()
    }

    #[test]
    fn blocks_are_lawful() {
        let g = FinGroupoid::from_blocks(&[(2, FinGroup::symmetric(3)), (1, FinGroup::cyclic(2))]);
        g.check_laws().unwrap();
        assert_eq!(g.object_count(), 3);
        assert_eq!(g.morphism_count(), 24 + 2);
        assert_eq!(g.components().count, 2);
        FinGroupoid::product(&bz(2), &g).check_laws().unwrap();
    }

    #[test]
    fn rejects_broken_tables() {
        let objects = vec!["a".to_string()];
        let morphisms = vec![("e".to_string(), 0, 0), ("s".to_string(), 0, 0)];
        // s ; s = s breaks the inverse law
        let bad = FinGroupoid::new(objects.clone(), morphisms.clone(), vec![0], &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)]);
        assert!(bad.is_err());
        let missing = FinGroupoid::new(objects.clone(), morphisms.clone(), vec![0], &[(0, 0, 0), (0, 1, 1), (1, 0, 1)]);
        assert!(missing.is_err());
        let good = FinGroupoid::new(objects, morphisms, vec![0], &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]).unwrap();
        assert_eq!(good.inverse(1), 1);
    }

    #[test]
    fn truncations() {
        assert_eq!(trunc0(&FinGroupoid::discrete(3)).0.object_count(), 3);
        assert_eq!(trunc0(&bz(2)).0.object_count(), 1);
        let g = FinGroupoid::from_blocks(&[(2, FinGroup::trivial()), (1, FinGroup::trivial())]);
        assert_eq!(trunc0(&g).0.object_count(), 2);
        assert_eq!(trunc_prop(&FinGroupoid::empty()).0.object_count(), 0);
        assert_eq!(trunc_prop(&bz(2)).0.object_count(), 1);
    }

    #[test]
    fn homotopy_fibers() {
        let id = FinFunctor::identity(&bz(2));
        let h = hfiber(&id, 0).unwrap();
        assert_eq!(h.groupoid.object_count(), 2);
        assert!(h.groupoid.is_contractible());

        let pt = FinFunctor::point_at(&bz(2), 0).unwrap();
        let h = hfiber(&pt, 0).unwrap();
        assert_eq!(h.groupoid.object_count(), 2);
        assert!(h.groupoid.is_discrete());

        let h = hfiber(&bz4_to_bz2(), 0).unwrap();
        assert_eq!(h.groupoid.object_count(), 2);
        assert_eq!(h.groupoid.components().count, 1);
        assert_eq!(h.groupoid.automorphisms(0).len(), 2);
        h.groupoid.check_laws().unwrap();
    }

    #[test]
    fn classification_examples() {
        let f = classify_trunc(&bz4_to_bz2(), Level::Set);
        assert!(f.flags.fibration.is_true());
        let f = classify_trunc(&FinFunctor::point_at(&bz(2), 0).unwrap(), Level::Set);
        assert!(f.flags.fibration.is_false());
        assert_eq!(f.fibration_failures, vec![0]);
        for level in [Level::Prop, Level::Set] {
            assert_eq!(classify_trunc(&FinFunctor::identity(&bz(3)), level).flags, ModalFlags::all_true());
        }
    }

    #[test]
    fn factorizations() {
        let two = FinFunctor::to_point(&FinGroupoid::discrete(2));
        let (cm, ee) = (factor_connected_modal(&two, Level::Set), factor_equiv_etale(&two, Level::Set));
        assert!(cm.mid.is_discrete() && cm.mid.object_count() == 2);
        assert!(ee.mid.is_discrete() && ee.mid.object_count() == 2);

        let pt = FinFunctor::point_at(&bz(2), 0).unwrap();
        let cm = factor_connected_modal(&pt, Level::Set);
        let ee = factor_equiv_etale(&pt, Level::Set);
        assert!(are_equivalent(&cm.mid, &FinGroupoid::point()));
        assert!(are_equivalent(&ee.mid, &bz(2)));
        assert!(!are_equivalent(&cm.mid, &ee.mid));
        for fac in [&cm, &ee] {
            fac.mid.check_laws().unwrap();
            assert!(fac.left.then(&fac.right).unwrap().natural_isomorphism(&pt).is_some());
        }
        assert!(!tot_gamma(&pt, Level::Set).is_equivalence());
    }

    #[test]
    fn equivalence_search() {
        let a = FinGroupoid::from_blocks(&[(3, FinGroup::cyclic(2))]);
        assert!(are_equivalent(&a, &bz(2)));
        assert!(!are_equivalent(&bz(4), &FinGroupoid::delooping(&FinGroup::klein())));
        assert!(are_equivalent(&FinGroupoid::empty(), &FinGroupoid::empty()));
        let s3 = FinGroupoid::from_blocks(&[(2, FinGroup::symmetric(3))]);
        assert!(find_equivalence(&s3, &FinGroupoid::delooping(&FinGroup::symmetric(3))).is_some());
    }

    #[test]
    fn pullback_of_point_over_bz2() {
        let pt = FinFunctor::point_at(&bz(2), 0).unwrap();
        let p = hpullback(&pt, &pt).unwrap();
        p.groupoid.check_laws().unwrap();
        assert_eq!(p.groupoid.object_count(), 2);
        assert!(p.groupoid.is_discrete());
        assert!(!pullback_preserved(&pt, &pt).unwrap());
    }

    #[test]
    fn corpus_functors_are_valid() {
        let corpus = Corpus::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let x = corpus.groupoid(&mut rng);
            let y = corpus.groupoid(&mut rng);
            assert!(x.groupoid.object_count() <= 6 && x.groupoid.morphism_count() <= 24);
            let f = corpus.functor(&mut rng, &x, &y);
            FinFunctor::new(f.source().clone(), f.target().clone(), f.object_map().to_vec(), f.morphism_map().to_vec())
                .unwrap();
        }
    }

    #[test]
    fn nine_way_small_cases() {
        let pt = FinFunctor::point_at(&bz(2), 0).unwrap();
        let r = nine_way(&pt, &[]).unwrap();
        assert!(!r.a && r.agree(), "{r:?}");
        let r = nine_way(&bz4_to_bz2(), std::slice::from_ref(&pt)).unwrap();
        assert!(r.a && r.agree(), "{r:?}");
    }

    #[test]
    fn identity_compares() {
        assert!(compare_modalities(&FinFunctor::identity(&bz(2))).holds());
    }
}
