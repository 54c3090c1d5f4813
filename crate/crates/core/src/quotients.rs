//! Finite group actions on graphs and their homotopy quotients at the shape level.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::covers::is_cover;
use crate::error::{input, Error, Result};
use crate::fingroupoid::{find_equivalence, hfiber, FinFunctor, FinGroupoid};
use crate::graph::{Dart, EdgeImage, FinGraph, GraphMap};
use crate::group::{all_perms, homomorphisms, FinGroup, Perm};
use crate::presentation::{induce_functor, shape1, GroupoidFunctor, PresGroupoid};
use crate::space::pi0;
use crate::word::Word;
use crate::automaton::SubgroupAutomaton;

/// Default bound on the group order for quotient constructions.
pub const GROUP_ORDER_BOUND: usize = 64;

/// An action of a finite group on a graph by automorphisms. Element `g`
/// acts by `maps[g]`, and `g ∘ h` acts as `h` first, then `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphAction {
    group: FinGroup,
    space: FinGraph,
    maps: Vec<GraphMap>,
}

impl GraphAction {
    /// `generator_maps[i]` is the action of `group.generators()[i]`. The
    /// action axioms are checked on every pair of elements.
    pub fn new(group: FinGroup, space: FinGraph, generator_maps: Vec<GraphMap>) -> Result<Self> {
        if generator_maps.len() != group.generators().len() {
            return input(format!(
                "{} generator maps given for {} generators",
                generator_maps.len(),
                group.generators().len()
            ));
        }
        for (i, m) in generator_maps.iter().enumerate() {
            if m.source() != &space || m.target() != &space || !m.is_isomorphism() {
                return input(format!("generator {} does not act by a graph automorphism", i + 1));
            }
        }
        let gens = group.generator_indices();
        let mut maps: Vec<Option<GraphMap>> = vec![None; group.order()];
        maps[group.identity()] = Some(space.identity());
        let mut queue = vec![group.identity()];
        while let Some(a) = queue.pop() {
            for (k, &s) in gens.iter().enumerate() {
                let b = group.mul(s, a);
                if maps[b].is_none() {
                    let m = maps[a].as_ref().expect("reached").then(&generator_maps[k])?;
                    maps[b] = Some(m);
                    queue.push(b);
                }
            }
        }
        let maps: Vec<GraphMap> = maps.into_iter().map(|m| m.expect("generators reach every element")).collect();
        for a in 0..group.order() {
            for b in 0..group.order() {
                if maps[group.mul(a, b)] != maps[b].then(&maps[a])? {
                    return input(format!(
                        "the generator maps do not respect the relation {} ∘ {} = {}",
                        group.element(a),
                        group.element(b),
                        group.element(group.mul(a, b))
                    ));
                }
            }
        }
        Ok(GraphAction { group, space, maps })
    }

    /// An action on a graph without parallel edges, given by vertex permutations.
    pub fn from_vertex_perms(group: FinGroup, space: FinGraph, perms: Vec<Perm>) -> Result<Self> {
        let maps = perms
            .into_iter()
            .map(|p| GraphMap::from_vertex_map(space.clone(), space.clone(), p.images().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, space, maps)
    }

    pub fn trivial(group: FinGroup, space: FinGraph) -> Self {
        let maps = vec![space.identity(); group.order()];
        GraphAction { group, space, maps }
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn space(&self) -> &FinGraph {
        &self.space
    }

    pub fn map(&self, g: usize) -> &GraphMap {
        &self.maps[g]
    }

    pub fn act(&self, g: usize, v: usize) -> usize {
        self.maps[g].vertex(v)
    }

    pub fn act_dart(&self, g: usize, d: Dart) -> Dart {
        self.maps[g].dart(d).expect("automorphisms do not collapse edges")
    }

    pub fn orbit(&self, v: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = (0..self.group.order()).map(|g| self.act(g, v)).collect();
        set.into_iter().collect()
    }

    pub fn stabilizer(&self, v: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.act(g, v) == v).collect()
    }

    /// No element but the identity fixes a vertex or an edge, in either orientation.
    pub fn is_free(&self) -> bool {
        (1..self.group.order()).all(|g| {
            self.space.vertices().all(|v| self.act(g, v) != v)
                && self.space.edges().all(|e| self.act_dart(g, Dart::forward(e)).edge != e)
        })
    }

    /// Rejects groups above `bound`, naming the flag that raises it.
    pub fn check_bound(&self, bound: usize) -> Result<()> {
        if self.group.order() > bound {
            return Err(Error::SizeBound {
                what: "group order",
                actual: self.group.order(),
                bound,
                flag: "--max-group",
            });
        }
        Ok(())
    }
}

/// A morphism `x -> y` of the action groupoid on `∫₁X`: a group element `g`
/// and a path `g·x -> y`, written as an encoded word of `∫₁X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionMorphism {
    pub source: usize,
    pub element: usize,
    pub target: usize,
    pub path: Word,
}

/// The action groupoid `∫₁X ⫽ G`: objects are vertices, morphisms are
/// [`ActionMorphism`]s, composed by `(g, p) ; (h, q) = (h ∘ g, h·p ; q)`.
#[derive(Debug, Clone)]
pub struct ActionGroupoid {
    action: GraphAction,
    shape: PresGroupoid,
    functors: Vec<GroupoidFunctor>,
}

impl ActionGroupoid {
    pub fn new(action: &GraphAction) -> Self {
        let functors = action.maps.iter().map(induce_functor).collect();
        ActionGroupoid { shape: shape1(&action.space), action: action.clone(), functors }
    }

    pub fn action(&self) -> &GraphAction {
        &self.action
    }

    pub fn shape(&self) -> &PresGroupoid {
        &self.shape
    }

    /// The morphism `(g, p)`, if `g·x` and `y` lie in one component.
    pub fn morphism(&self, x: usize, g: usize, y: usize, path: Word) -> Option<ActionMorphism> {
        let gx = self.action.act(g, x);
        (self.shape.component_of(gx) == self.shape.component_of(y)).then_some(ActionMorphism {
            source: x,
            element: g,
            target: y,
            path,
        })
    }

    pub fn identity(&self, x: usize) -> ActionMorphism {
        ActionMorphism { source: x, element: self.action.group.identity(), target: x, path: Word::empty() }
    }

    /// `f` then `g`.
    pub fn compose(&self, f: &ActionMorphism, g: &ActionMorphism) -> Result<ActionMorphism> {
        if f.target != g.source {
            return input("action morphisms are not composable");
        }
        let gx = self.action.act(f.element, f.source);
        let moved = self.functors[g.element].apply(gx, &f.path, f.target);
        Ok(ActionMorphism {
            source: f.source,
            element: self.action.group.mul(g.element, f.element),
            target: g.target,
            path: moved.concat(&g.path),
        })
    }

    pub fn inverse(&self, f: &ActionMorphism) -> ActionMorphism {
        let inv = self.action.group.inverse(f.element);
        let gx = self.action.act(f.element, f.source);
        ActionMorphism {
            source: f.target,
            element: inv,
            target: f.source,
            path: self.functors[inv].apply(f.target, &f.path.inverse(), gx),
        }
    }

    /// The elements `g` with `g·x` connected to `y`; each carries a
    /// torsor of paths, so these index the identifications `[x] = [y]`.
    pub fn connecting_elements(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.action.group.order())
            .filter(|&g| self.shape.component_of(self.action.act(g, x)) == self.shape.component_of(y))
            .collect()
    }
}

/// One component of the quotient: an orbit of components of the space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientComponent {
    pub representative: usize,
    pub space_components: Vec<usize>,
    /// Elements sending the representative's component to itself.
    pub component_stabilizer: Vec<usize>,
    /// Rank of the fundamental group of one space component.
    pub pi1_rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientShape {
    pub components: Vec<QuotientComponent>,
    /// The quotient as an explicit finite groupoid, when the space is a forest.
    pub finite: Option<FinGroupoid>,
}

pub fn shape_of_quotient(a: &GraphAction) -> Result<QuotientShape> {
    shape_of_quotient_bounded(a, GROUP_ORDER_BOUND)
}

pub fn shape_of_quotient_bounded(a: &GraphAction, bound: usize) -> Result<QuotientShape> {
    a.check_bound(bound)?;
    let shape = shape1(&a.space);
    let mut seen = vec![false; shape.component_count()];
    let mut components = Vec::new();
    for c in 0..shape.component_count() {
        if seen[c] {
            continue;
        }
        let x = shape.base(c);
        let orbit: BTreeSet<usize> =
            (0..a.group.order()).map(|g| shape.component_of(a.act(g, x))).collect();
        for &d in &orbit {
            seen[d] = true;
        }
        components.push(QuotientComponent {
            representative: x,
            space_components: orbit.into_iter().collect(),
            component_stabilizer: (0..a.group.order()).filter(|&g| shape.component_of(a.act(g, x)) == c).collect(),
            pi1_rank: shape.rank(c),
        });
    }
    let finite = is_forest(&a.space).then(|| forest_groupoids(a).1);
    Ok(QuotientShape { components, finite })
}

fn is_forest(x: &FinGraph) -> bool {
    x.edge_count() + pi0(x).count == x.vertex_count()
}

/// For a forest: `∫₁X` and `∫₁X ⫽ G` as finite groupoids, with the quotient functor.
fn forest_groupoids(a: &GraphAction) -> (FinGroupoid, FinGroupoid, FinFunctor) {
    let x = &a.space;
    let comp = pi0(x).of_vertex;
    let n = x.vertex_count();
    let labels: Vec<String> = x.vertex_labels().to_vec();

    let mut pair_index = HashMap::new();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if comp[u] == comp[v] {
                pair_index.insert((u, v), pairs.len());
                pairs.push((format!("{}>{}", labels[u], labels[v]), u, v));
            }
        }
    }
    let pair_ids: Vec<usize> = (0..n).map(|v| pair_index[&(v, v)]).collect();
    let pairs_copy = pairs.clone();
    let pi1 = FinGroupoid::build(labels.clone(), pairs.clone(), pair_ids, |f, g| {
        pair_index[&(pairs_copy[f].1, pairs_copy[g].2)]
    });

    let grp = &a.group;
    let mut index = HashMap::new();
    let mut morphisms = Vec::new();
    for u in 0..n {
        for g in 0..grp.order() {
            for v in 0..n {
                if comp[a.act(g, u)] == comp[v] {
                    index.insert((u, g, v), morphisms.len());
                    morphisms.push((u, g, v));
                }
            }
        }
    }
    let named = morphisms
        .iter()
        .map(|&(u, g, v)| (format!("{}>{}>{}", labels[u], grp.element(g), labels[v]), u, v))
        .collect();
    let ids = (0..n).map(|v| index[&(v, grp.identity(), v)]).collect();
    let quotient = FinGroupoid::build(labels, named, ids, |f, h| {
        let (u, g, _) = morphisms[f];
        let (_, k, w) = morphisms[h];
        index[&(u, grp.mul(k, g), w)]
    });
    let bracket = FinFunctor::new(
        pi1.clone(),
        quotient.clone(),
        (0..n).collect(),
        pairs.iter().map(|&(_, u, v)| index[&(u, grp.identity(), v)]).collect(),
    )
    .expect("the quotient map is a functor");
    (pi1, quotient, bracket)
}

/// The prism comparison for `[−] : X -> X ⫽ G` over every vertex: the
/// spatial fiber is `G`, and `γ` sends `g` to the homotopy-fiber object
/// `(g⁻¹x, g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientFibrationReport {
    /// Each element acts on `∫₁X` by an equivalence, so each `g`-slice of
    /// every homotopy fiber is contractible.
    pub slices_contractible: bool,
    /// Each `g`-slice over each vertex is inhabited.
    pub slices_inhabited: bool,
    /// For forests, `γ : G -> fib([x])` checked by brute force over finite groupoids.
    pub brute_force: Option<bool>,
}

impl QuotientFibrationReport {
    pub fn holds(&self) -> bool {
        self.slices_contractible && self.slices_inhabited && self.brute_force.unwrap_or(true)
    }
}

pub fn quotient_fibration_report(a: &GraphAction) -> Result<QuotientFibrationReport> {
    quotient_fibration_report_bounded(a, GROUP_ORDER_BOUND)
}

pub fn quotient_fibration_report_bounded(a: &GraphAction, bound: usize) -> Result<QuotientFibrationReport> {
    a.check_bound(bound)?;
    let shape = shape1(&a.space);
    let slices_contractible = a.maps.iter().all(|m| induce_functor(m).is_equivalence());
    let slices_inhabited = a.space.vertices().all(|x0| {
        (0..a.group.order()).all(|g| a.space.vertices().any(|y| shape.component_of(a.act(g, y)) == shape.component_of(x0)))
    });
    let brute_force = is_forest(&a.space).then(|| {
        let (_, _, bracket) = forest_groupoids(a);
        let grp = &a.group;
        a.space.vertices().all(|x0| {
            let h = hfiber(&bracket, x0).expect("vertex in range");
            let objects: Vec<usize> = (0..grp.order())
                .map(|g| {
                    let y = a.act(grp.inverse(g), x0);
                    let m = bracket.target().morphism_by_label(&morphism_label(a, y, g, x0)).expect("g·y = x");
                    h.object_of(y, m).expect("object of the fiber")
                })
                .collect();
            let discrete = FinGroupoid::discrete(grp.order());
            let morphisms = objects.iter().map(|&o| h.groupoid.identity(o)).collect();
            FinFunctor::new(discrete, h.groupoid.clone(), objects, morphisms)
                .map(|gamma| gamma.is_equivalence())
                .unwrap_or(false)
        })
    });
    Ok(QuotientFibrationReport { slices_contractible, slices_inhabited, brute_force })
}

fn morphism_label(a: &GraphAction, u: usize, g: usize, v: usize) -> String {
    format!("{}>{}>{}", a.space.vertex_label(u), a.group.element(g), a.space.vertex_label(v))
}

/// Whether `[−] : X -> X ⫽ G` is a fibration, by the prism comparison.
pub fn quotient_is_fibration(a: &GraphAction) -> Result<bool> {
    Ok(quotient_fibration_report(a)?.holds())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberSequenceReport {
    pub vertex: usize,
    pub orbit: Vec<usize>,
    pub stabilizer: Vec<usize>,
    /// `|orbit| · |Stab| = |G|`.
    pub orbit_stabilizer: bool,
    /// `Stab(x) -> Orbit(x) -> X`: `g ↦ g·x` has a coset of `Stab(x)` over each orbit point.
    pub stabilizer_exact: bool,
    /// When the action is free at `x`, the orbit is a copy of `G`.
    pub free_orbit_is_group: Option<bool>,
    /// Components of the homotopy fiber of `[−]` over `[x]`, one per element.
    pub fiber_components: usize,
    /// For forests: the fiber of `X ⫽ G -> BG` is equivalent to `∫₁X`.
    pub classifying_fiber: Option<bool>,
}

impl FiberSequenceReport {
    pub fn holds(&self) -> bool {
        self.orbit_stabilizer
            && self.stabilizer_exact
            && self.free_orbit_is_group.unwrap_or(true)
            && self.classifying_fiber.unwrap_or(true)
    }
}

pub fn fiber_sequence_check(a: &GraphAction, x: usize) -> Result<FiberSequenceReport> {
    fiber_sequence_check_bounded(a, x, GROUP_ORDER_BOUND)
}

pub fn fiber_sequence_check_bounded(a: &GraphAction, x: usize, bound: usize) -> Result<FiberSequenceReport> {
    a.check_bound(bound)?;
    a.space.check_vertex(x)?;
    let grp = &a.group;
    let orbit = a.orbit(x);
    let stabilizer = a.stabilizer(x);
    let orbit_stabilizer = orbit.len() * stabilizer.len() == grp.order();
    let stabilizer_exact = orbit.iter().all(|&y| {
        let over: Vec<usize> = (0..grp.order()).filter(|&g| a.act(g, x) == y).collect();
        // the elements over y form the coset g·Stab(x)
        let coset: BTreeSet<usize> = stabilizer.iter().map(|&s| grp.mul(over[0], s)).collect();
        coset == over.iter().copied().collect()
    });
    let free_orbit_is_group = (stabilizer.len() == 1).then(|| orbit.len() == grp.order());
    let shape = shape1(&a.space);
    let fiber_components = (0..grp.order())
        .filter(|&g| a.space.vertices().any(|y| shape.component_of(a.act(g, y)) == shape.component_of(x)))
        .count();
    let classifying_fiber = is_forest(&a.space).then(|| {
        let (pi1, quotient, _) = forest_groupoids(a);
        let bg = FinGroupoid::delooping(grp);
        // (x, g, y) goes to g⁻¹ so that composition is preserved
        let morphisms = quotient
            .morphism_ids()
            .map(|m| {
                let label = quotient.morphism_label(m);
                let g = (0..grp.order())
                    .find(|&g| label.split('>').nth(1) == Some(grp.element(g).to_string().as_str()))
                    .expect("element in label");
                grp.inverse(g)
            })
            .collect();
        let classify = FinFunctor::new(quotient.clone(), bg, vec![0; quotient.object_count()], morphisms)
            .expect("classifying map is a functor");
        let fib = hfiber(&classify, 0).expect("BG has one object");
        find_equivalence(&fib.groupoid, &pi1).is_some()
    });
    Ok(FiberSequenceReport {
        vertex: x,
        orbit,
        stabilizer,
        orbit_stabilizer,
        stabilizer_exact,
        free_orbit_is_group,
        fiber_components,
        classifying_fiber,
    })
}

/// The orbit graph of a free action and the quotient map onto it.
pub fn orbit_graph(a: &GraphAction) -> Result<GraphMap> {
    if !a.is_free() {
        return Err(Error::Inapplicable("the action is not free".into()));
    }
    let x = &a.space;
    let mut vertex_orbit = vec![usize::MAX; x.vertex_count()];
    let mut vertex_labels = Vec::new();
    for v in x.vertices() {
        if vertex_orbit[v] == usize::MAX {
            for w in a.orbit(v) {
                vertex_orbit[w] = vertex_labels.len();
            }
            vertex_labels.push(format!("[{}]", x.vertex_label(v)));
        }
    }
    let mut edge_image = vec![None; x.edge_count()];
    let mut edges = Vec::new();
    let mut edge_labels = Vec::new();
    for e in x.edges() {
        if edge_image[e].is_some() {
            continue;
        }
        let i = edges.len();
        let (t, h) = x.endpoints(e);
        edges.push((vertex_orbit[t], vertex_orbit[h]));
        edge_labels.push(format!("[{}]", x.edge_label(e)));
        for g in 0..a.group.order() {
            let d = a.act_dart(g, Dart::forward(e));
            edge_image[d.edge] = Some(EdgeImage::Edge(Dart { edge: i, reversed: d.reversed }));
        }
    }
    let base = FinGraph::with_labels(vertex_labels, edge_labels, edges, None)?;
    GraphMap::new(x.clone(), base, vertex_orbit, edge_image.into_iter().map(|e| e.expect("every edge in an orbit")).collect())
}

/// The comparison `∫₁X ⫽ G -> ∫₁(X/G)` for a free action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeComparison {
    pub quotient_is_cover: bool,
    /// Orbits of components of `X` match components of `X/G`.
    pub components_match: bool,
    /// Per quotient component: injective on `π₁` of the space component.
    pub injective: Vec<bool>,
    /// Per quotient component: the vertex group maps onto `π₁(X/G)`.
    pub surjective: Vec<bool>,
    /// Per quotient component: the index of `π₁` of the space component equals its stabilizer order.
    pub index_matches: Vec<bool>,
}

impl FreeComparison {
    pub fn is_equivalence(&self) -> bool {
        self.quotient_is_cover
            && self.components_match
            && self.injective.iter().chain(&self.surjective).chain(&self.index_matches).all(|&b| b)
    }
}

pub fn free_comparison(a: &GraphAction) -> Result<FreeComparison> {
    let q = orbit_graph(a)?;
    let shape = shape1(&a.space);
    let qf = induce_functor(&q);
    let quotient = shape_of_quotient(a)?;
    let target_components: BTreeSet<usize> = quotient
        .components
        .iter()
        .map(|c| qf.target().component_of(q.vertex(c.representative)))
        .collect();
    let components_match = target_components.len() == quotient.components.len()
        && target_components.len() == qf.target().component_count();
    let (mut injective, mut surjective, mut index_matches) = (Vec::new(), Vec::new(), Vec::new());
    for comp in &quotient.components {
        let x = comp.representative;
        let c = shape.component_of(x);
        debug_assert_eq!(shape.base(c), x);
        let d = qf.target().component_of(q.vertex(x));
        let h = qf.image_subgroup(c);
        let mut gens = qf.generator_images(c).to_vec();
        gens.extend(comp.component_stabilizer.iter().map(|&g| qf.apply(a.act(g, x), &Word::empty(), x)));
        let whole = SubgroupAutomaton::from_generators(qf.target().rank(d), &gens);
        injective.push(qf.is_injective_on(c));
        surjective.push(whole.is_whole_group());
        index_matches.push(h.index() == Some(comp.component_stabilizer.len()));
    }
    Ok(FreeComparison { quotient_is_cover: is_cover(&q), components_match, injective, surjective, index_matches })
}

/// If `x` is connected then so is its fundamental groupoid.
pub fn shape_connectedness_check(x: &FinGraph) -> bool {
    pi0(x).count != 1 || shape1(x).component_count() == 1
}

/// Every automorphism of a graph, by backtracking over vertex permutations
/// and then edge assignments.
pub fn automorphisms(x: &FinGraph) -> Vec<GraphMap> {
    let n = x.vertex_count();
    let mut multiplicity: HashMap<(usize, usize), usize> = HashMap::new();
    for d in x.darts() {
        *multiplicity.entry((x.tail(d), x.head(d))).or_default() += 1;
    }
    let mut out = Vec::new();
    for p in all_perms(n) {
        let ok = multiplicity
            .iter()
            .all(|(&(u, v), &k)| multiplicity.get(&(p.apply(u), p.apply(v))) == Some(&k));
        if !ok {
            continue;
        }
        let choices: Vec<Vec<Dart>> = x
            .edges()
            .map(|e| {
                let (u, v) = x.endpoints(e);
                x.darts_between(p.apply(u), p.apply(v))
            })
            .collect();
        let mut used = vec![false; x.edge_count()];
        let mut current = Vec::with_capacity(x.edge_count());
        assign_edges(x, &p, &choices, &mut used, &mut current, &mut out);
    }
    out
}

fn assign_edges(
    x: &FinGraph,
    p: &Perm,
    choices: &[Vec<Dart>],
    used: &mut Vec<bool>,
    current: &mut Vec<EdgeImage>,
    out: &mut Vec<GraphMap>,
) {
    let e = current.len();
    if e == choices.len() {
        let m = GraphMap::new(x.clone(), x.clone(), p.images().to_vec(), current.clone()).expect("adjacency preserved");
        out.push(m);
        return;
    }
    for &d in &choices[e] {
        if !used[d.edge] {
            used[d.edge] = true;
            current.push(EdgeImage::Edge(d));
            assign_edges(x, p, choices, used, current, out);
            current.pop();
            used[d.edge] = false;
        }
    }
}

/// Encodes an automorphism as a permutation of vertices followed by darts.
fn as_perm(x: &FinGraph, m: &GraphMap) -> Perm {
    let n = x.vertex_count();
    let mut images: Vec<usize> = m.vertex_map().to_vec();
    for d in x.darts() {
        let i = m.dart(d).expect("automorphism");
        images.push(n + 2 * i.edge + usize::from(i.reversed));
    }
    Perm::from_images(images).expect("automorphisms permute darts")
}

fn from_perm(x: &FinGraph, p: &Perm) -> GraphMap {
    let n = x.vertex_count();
    let edges = x
        .edges()
        .map(|e| {
            let i = p.apply(n + 2 * e) - n;
            EdgeImage::Edge(Dart { edge: i / 2, reversed: i % 2 == 1 })
        })
        .collect();
    GraphMap::new(x.clone(), x.clone(), p.images()[..n].to_vec(), edges).expect("decodes an automorphism")
}

/// Every action of `group` on `x`, one per homomorphism into the automorphism group.
pub fn all_actions(group: &FinGroup, x: &FinGraph) -> Vec<GraphAction> {
    let degree = x.vertex_count() + 2 * x.edge_count();
    let perms: Vec<Perm> = automorphisms(x).iter().map(|m| as_perm(x, m)).collect();
    let aut = FinGroup::generated_by(degree, perms).expect("automorphisms share a degree");
    let gens = group.generator_indices();
    homomorphisms(group, &aut)
        .into_iter()
        .map(|hom| {
            let maps = gens.iter().map(|&g| from_perm(x, aut.element(hom[g]))).collect();
            GraphAction::new(group.clone(), x.clone(), maps).expect("homomorphisms give actions")
        })
        .collect()
}

/// Simple graphs on `n` vertices, one per isomorphism class.
pub fn simple_graphs(n: usize) -> Vec<FinGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = all_perms(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u32;
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        let (a, b) = (p.apply(i).min(p.apply(j)), p.apply(i).max(p.apply(j)));
                        m |= 1 << pairs.iter().position(|&q| q == (a, b)).expect("pair");
                    }
                }
                m
            })
            .min()
            .expect("at least one permutation");
        if seen.insert(canon) {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &p)| p).collect();
            out.push(FinGraph::new(n, &edges).expect("simple graph"));
        }
    }
    out
}

/// Groups of order at most 4.
pub fn small_groups() -> Vec<FinGroup> {
    vec![FinGroup::trivial(), FinGroup::cyclic(2), FinGroup::cyclic(3), FinGroup::cyclic(4), FinGroup::klein()]
}

/// Graphs with at most 6 vertices for the exhaustive action suite: every
/// simple graph up to isomorphism on at most 5 vertices, `samples` seeded
/// random simple graphs on 6 vertices, and a fixed list of multigraphs.
pub fn action_domain(seed: u64, samples: usize) -> Vec<FinGraph> {
    let mut out: Vec<FinGraph> = (1..=5).flat_map(simple_graphs).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect();
    for _ in 0..samples {
        let edges: Vec<(usize, usize)> = pairs.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
        out.push(FinGraph::new(6, &edges).expect("simple graph"));
    }
    out.push(FinGraph::bouquet(1));
    out.push(FinGraph::bouquet(2));
    out.push(FinGraph::new(2, &[(0, 1), (0, 1)]).expect("digon"));
    out.push(FinGraph::new(2, &[(0, 1), (0, 1), (0, 1)]).expect("theta"));
    out.push(FinGraph::new(3, &[(0, 1), (1, 2), (1, 1)]).expect("path with a loop"));
    out.push(FinGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 2)]).expect("square with double chord"));
    out
}
