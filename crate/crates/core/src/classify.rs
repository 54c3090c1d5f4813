//! Classification of graph maps under the shape modalities `∫₀` and `∫₁`.
//!
//! Fibers are taken over every point of the geometric realization of the
//! target: over each vertex and over the interior of each edge. The latter is
//! the set of source edges mapped onto that edge. Both kinds are the vertex
//! fibers of the barycentric subdivision of the map, which is how they are
//! computed. Restricting to vertex fibers alone would, for instance, call the
//! map from two points onto the ends of an interval connected.

use std::collections::HashSet;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::covers::is_cover;
use crate::error::{Error, Result};
use crate::graph::{Dart, EdgeImage, FinGraph, GraphMap};
use crate::hfiber::prism_with;
use crate::presentation::{induce_functor, shape1};
use crate::space::{fiber, pi0, subdivide_map, Components};
use crate::verdict::Verdict;

/// Radius used for coset representatives inside the classifier, which only
/// needs the decision procedures.
const CLASSIFY_RADIUS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModalFlags {
    pub modal: Verdict,
    pub connected: Verdict,
    pub etale: Verdict,
    pub equivalence: Verdict,
    pub fibration: Verdict,
}

impl ModalFlags {
    /// étale = modal ∧ fibration and connected = equivalence ∧ fibration,
    /// whenever the flags involved are decided.
    pub fn satisfies_flag_identities(&self) -> bool {
        let check = |lhs: Verdict, a: Verdict, b: Verdict| match (lhs.decided(), a.and(b).decided()) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        };
        check(self.etale, self.modal, self.fibration) && check(self.connected, self.equivalence, self.fibration)
    }

    pub fn all_true() -> Self {
        ModalFlags {
            modal: Verdict::True,
            connected: Verdict::True,
            etale: Verdict::True,
            equivalence: Verdict::True,
            fibration: Verdict::True,
        }
    }
}

/// A point of the realization of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "id", rename_all = "lowercase")]
pub enum Point {
    Vertex(usize),
    Edge(usize),
}

impl Point {
    fn of_subdivision_vertex(p: usize, vertex_count: usize) -> Self {
        if p < vertex_count {
            Point::Vertex(p)
        } else {
            Point::Edge(p - vertex_count)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapClassification {
    pub shape0: ModalFlags,
    pub shape1: ModalFlags,
    /// Points over which the `∫₀` comparison map fails to be a bijection.
    pub shape0_fibration_failures: Vec<Point>,
    /// Points over which `γ` fails to be an equivalence.
    pub shape1_fibration_failures: Vec<Point>,
}

/// Component of each point of the subdivision, as a component of the original graph.
fn subdivision_component(x: &FinGraph, comps: &Components, p: usize) -> usize {
    let n = x.vertex_count();
    if p < n {
        comps.of_vertex[p]
    } else {
        comps.of_vertex[x.endpoints(p - n).0]
    }
}

/// Target component of each source component.
fn pi0_map(f: &GraphMap, cx: &Components, cy: &Components) -> Vec<usize> {
    let mut out = vec![0; cx.count];
    for v in f.source().vertices() {
        out[cx.of_vertex[v]] = cy.of_vertex[f.vertex(v)];
    }
    out
}

fn is_bijection(map: &[usize], codomain: usize) -> bool {
    let mut hit = vec![false; codomain];
    for &c in map {
        if std::mem::replace(&mut hit[c], true) {
            return false;
        }
    }
    hit.iter().all(|&h| h)
}

pub fn classify(f: &GraphMap) -> MapClassification {
    let (x, y) = (f.source(), f.target());
    let (cx, cy) = (pi0(x), pi0(y));
    let comp_map = pi0_map(f, &cx, &cy);
    let sd = subdivide_map(f);
    let sd_func = induce_functor(&sd);

    let mut modal = true;
    let mut connected0 = true;
    let mut connected1 = true;
    let mut etale0 = true;
    let mut etale1 = true;
    let mut failures0 = Vec::new();
    let mut failures1 = Vec::new();

    for p in sd.target().vertices() {
        let point = Point::of_subdivision_vertex(p, y.vertex_count());
        let prism = prism_with(&sd, &sd_func, p, CLASSIFY_RADIUS).expect("vertex of the subdivision");
        let fib = &prism.fiber;
        let sub = &fib.subgraph;
        let discrete = sub.edge_count() == 0;
        let fib_comps = prism.fiber_shape.components();
        modal &= discrete;
        connected0 &= fib_comps.count == 1;
        connected1 &= fib_comps.count == 1 && sub.edge_count() + 1 == sub.vertex_count();

        // ∫₀: components of the fiber against source components over [p].
        let over: Vec<usize> = (0..cx.count)
            .filter(|&c| comp_map[c] == subdivision_component(y, &cy, p))
            .collect();
        let gamma0: Vec<usize> = (0..fib_comps.count)
            .map(|k| {
                let s = fib.source_vertices()[prism.fiber_shape.base(k)];
                let c = subdivision_component(x, &cx, s);
                over.iter().position(|&o| o == c).expect("fiber lies over its component")
            })
            .collect();
        let gamma0_ok = is_bijection(&gamma0, over.len());
        if !gamma0_ok {
            failures0.push(point);
        }
        etale0 &= discrete && gamma0_ok;

        if !prism.gamma.is_equivalence() {
            failures1.push(point);
        }
        etale1 &= prism.delta_is_equivalence;
    }

    let equivalence0 = is_bijection(&comp_map, cy.count);
    let equivalence1 = induce_functor(f).is_equivalence();
    MapClassification {
        shape0: ModalFlags {
            modal: modal.into(),
            connected: connected0.into(),
            etale: etale0.into(),
            equivalence: equivalence0.into(),
            fibration: failures0.is_empty().into(),
        },
        shape1: ModalFlags {
            modal: modal.into(),
            connected: connected1.into(),
            etale: etale1.into(),
            equivalence: equivalence1.into(),
            fibration: failures1.is_empty().into(),
        },
        shape0_fibration_failures: failures0,
        shape1_fibration_failures: failures1,
    }
}

/// The `∫₀`-connected / `∫₀`-modal factorization `X -> M -> Y`. The middle
/// graph identifies the vertices of each connected component of each vertex
/// fiber, keeping every edge that is not collapsed.
pub fn factor0(f: &GraphMap) -> (FinGraph, GraphMap, GraphMap) {
    let x = f.source();
    let mut uf = UnionFind::<usize>::new(x.vertex_count());
    for e in x.edges() {
        if matches!(f.edge(e), EdgeImage::Degenerate(_)) {
            let (a, b) = x.endpoints(e);
            uf.union(a, b);
        }
    }
    let mut class = vec![usize::MAX; x.vertex_count()];
    let mut reps = Vec::new();
    for v in x.vertices() {
        let r = uf.find(v);
        if class[r] == usize::MAX {
            class[r] = reps.len();
            reps.push(v);
        }
        class[v] = class[r];
    }
    let kept: Vec<usize> = x.edges().filter(|&e| matches!(f.edge(e), EdgeImage::Edge(_))).collect();
    let mid = FinGraph::with_labels(
        reps.iter().map(|&v| format!("[{}]", x.vertex_label(v))).collect(),
        kept.iter().map(|&e| x.edge_label(e).to_string()).collect(),
        kept.iter()
            .map(|&e| {
                let (a, b) = x.endpoints(e);
                (class[a], class[b])
            })
            .collect(),
        x.basepoint().map(|b| class[b]),
    )
    .expect("quotient graph");
    let mut new_edge = vec![usize::MAX; x.edge_count()];
    for (i, &e) in kept.iter().enumerate() {
        new_edge[e] = i;
    }
    let left = GraphMap::new(
        x.clone(),
        mid.clone(),
        x.vertices().map(|v| class[v]).collect(),
        x.edges()
            .map(|e| match f.edge(e) {
                EdgeImage::Degenerate(_) => EdgeImage::Degenerate(class[x.endpoints(e).0]),
                EdgeImage::Edge(_) => EdgeImage::Edge(Dart::forward(new_edge[e])),
            })
            .collect(),
    )
    .expect("quotient map");
    let right = GraphMap::new(
        mid.clone(),
        f.target().clone(),
        reps.iter().map(|&v| f.vertex(v)).collect(),
        kept.iter().map(|&e| f.edge(e)).collect(),
    )
    .expect("factor through the quotient");
    (mid, left, right)
}

/// Shape signature of a graph: sorted free ranks of its components.
pub fn shape_signature(x: &FinGraph) -> Vec<usize> {
    let mut ranks = shape1(x).ranks();
    ranks.sort_unstable();
    ranks
}

fn inclusion_is_shape_equivalence(parent: &FinGraph, vertices: &[usize], edges: &[usize]) -> bool {
    let (_, inclusion) = parent.subgraph(vertices, edges).expect("subgraph of the preimage");
    induce_functor(&inclusion).is_equivalence()
}

/// Constant fiber shape as a decision criterion for `∫₁`-fibrations.
///
/// True when the fibers over all points have the same shape and vary as a
/// family: over each half-edge `σ` of the subdivided target, the fibers over
/// both ends of `σ` include into the preimage of `σ` by shape equivalences.
/// Abstractly equivalent fibers alone do not suffice for graph maps (a path
/// folded onto an interval plus an isolated point over one end has two-point
/// fibers everywhere but is not a fibration), because a graph map need not be
/// a family in this sense.
pub fn constant_fiber_criterion(f: &GraphMap) -> bool {
    let sd = subdivide_map(f);
    let (sx, sy) = (sd.source(), sd.target());
    let signatures: HashSet<Vec<usize>> = sy
        .vertices()
        .map(|p| shape_signature(&fiber(&sd, p).expect("vertex").subgraph))
        .collect();
    if signatures.len() > 1 {
        return false;
    }
    sy.edges().all(|sigma| {
        let (a, b) = sy.endpoints(sigma);
        let over = |p: usize| -> Vec<usize> { sx.vertices().filter(|&s| sd.vertex(s) == p).collect() };
        let (over_a, over_b) = (over(a), over(b));
        let pv: Vec<usize> = over_a.iter().chain(&over_b).copied().collect();
        let pe: Vec<usize> = sx
            .edges()
            .filter(|&e| match sd.edge(e) {
                EdgeImage::Edge(d) => d.edge == sigma,
                EdgeImage::Degenerate(w) => w == a || w == b,
            })
            .collect();
        let (preimage, _) = sx.subgraph(&pv, &pe).expect("preimage");
        // Indices inside the preimage: vertices over `a` come first.
        let na = over_a.len();
        let fiber_at = |range: std::ops::Range<usize>, p: usize| {
            let edges: Vec<usize> = pe
                .iter()
                .enumerate()
                .filter(|&(_, &e)| sd.edge(e) == EdgeImage::Degenerate(p))
                .map(|(i, _)| i)
                .collect();
            inclusion_is_shape_equivalence(&preimage, &range.collect::<Vec<_>>(), &edges)
        };
        fiber_at(0..na, a) && fiber_at(na..pv.len(), b)
    })
}

/// For a map with discrete vertex fibers: fiber cardinality is constant on
/// each target component and the map is a covering.
pub fn etale_family_check(f: &GraphMap) -> Result<bool> {
    let y = f.target();
    let mut sizes = vec![0usize; y.vertex_count()];
    for v in f.source().vertices() {
        sizes[f.vertex(v)] += 1;
    }
    if f.has_degenerate_edges() {
        return Err(Error::Inapplicable("the map has non-discrete fibers".into()));
    }
    let cy = pi0(y);
    let mut size_of_component = vec![None; cy.count];
    for v in y.vertices() {
        let slot = &mut size_of_component[cy.of_vertex[v]];
        match *slot {
            None => *slot = Some(sizes[v]),
            Some(s) if s != sizes[v] => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(is_cover(f))
}
