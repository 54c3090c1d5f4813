//! Limits, fibers, connected components and the discreteness apparatus for
//! finite reflexive graphs.
//!
//! # Product convention
//!
//! The product and pullback are the categorical ones for reflexive graphs with
//! undirected edges. A vertex of `A ×_Y B` is a pair `(a, b)` with
//! `f(a) = g(b)`. An edge is a pair `(α, β)` where each of `α`, `β` is either a
//! dart or the identity at a vertex, not both identities, with `f(α) = g(β)`,
//! taken up to reversing both coordinates at once. The stored representative
//! has `α` forward whenever `α` is a dart, and `β` forward when `α` is an
//! identity. Consequently `I × I` has four vertices, the four edges of a square
//! and both diagonals.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::graph::{all_maps, Dart, EdgeImage, FinGraph, GraphMap};

/// Default vertex bound for [`pi0_by_definition`].
pub const PI0_DEFINITION_BOUND: usize = 12;

/// The fiber of a map over a vertex, with its inclusion into the source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexFiber {
    pub base_vertex: usize,
    pub subgraph: FinGraph,
    pub inclusion: GraphMap,
}

impl VertexFiber {
    /// Source vertex of each fiber vertex.
    pub fn source_vertices(&self) -> &[usize] {
        self.inclusion.vertex_map()
    }
}

pub fn fiber(f: &GraphMap, y: usize) -> Result<VertexFiber> {
    f.target().check_vertex(y)?;
    let src = f.source();
    let vertices: Vec<usize> = src.vertices().filter(|&v| f.vertex(v) == y).collect();
    let edges: Vec<usize> = src
        .edges()
        .filter(|&e| f.edge(e) == EdgeImage::Degenerate(y))
        .collect();
    let (subgraph, inclusion) = src.subgraph(&vertices, &edges)?;
    Ok(VertexFiber { base_vertex: y, subgraph, inclusion })
}

/// One coordinate of a pullback edge: a dart, or the identity at a vertex.
#[derive(Debug, Clone, Copy)]
enum Coord {
    Dart(Dart),
    Id(usize),
}

/// Pullback of `f: A -> Y` and `g: B -> Y`, with projections to `A` and `B`.
pub fn pullback(f: &GraphMap, g: &GraphMap) -> Result<(FinGraph, GraphMap, GraphMap)> {
    if f.target() != g.target() {
        return input("pullback of maps with different targets");
    }
    let (a, b) = (f.source(), g.source());
    let mut index = HashMap::new();
    let mut pairs = Vec::new();
    for va in a.vertices() {
        for vb in b.vertices() {
            if f.vertex(va) == g.vertex(vb) {
                index.insert((va, vb), pairs.len());
                pairs.push((va, vb));
            }
        }
    }

    let mut edges: Vec<(Coord, Coord)> = Vec::new();
    for ea in a.edges() {
        let da = Dart::forward(ea);
        let image = f.dart(da);
        for vb in b.vertices() {
            if image.is_none() && f.vertex(a.tail(da)) == g.vertex(vb) {
                edges.push((Coord::Dart(da), Coord::Id(vb)));
            }
        }
        for db in b.darts() {
            if image == g.dart(db)
                && (image.is_some() || f.vertex(a.tail(da)) == g.vertex(b.tail(db)))
            {
                edges.push((Coord::Dart(da), Coord::Dart(db)));
            }
        }
    }
    for eb in b.edges() {
        let db = Dart::forward(eb);
        if g.dart(db).is_some() {
            continue;
        }
        for va in a.vertices() {
            if f.vertex(va) == g.vertex(b.tail(db)) {
                edges.push((Coord::Id(va), Coord::Dart(db)));
            }
        }
    }

    let ends = |c: Coord, gr: &FinGraph| match c {
        Coord::Dart(d) => (gr.tail(d), gr.head(d)),
        Coord::Id(v) => (v, v),
    };
    let mut endpoints = Vec::with_capacity(edges.len());
    let mut edge_labels = Vec::with_capacity(edges.len());
    for &(ca, cb) in &edges {
        let (ta, ha) = ends(ca, a);
        let (tb, hb) = ends(cb, b);
        endpoints.push((index[&(ta, tb)], index[&(ha, hb)]));
        edge_labels.push(format!("({},{})", coord_label(ca, a), coord_label(cb, b)));
    }
    let vertex_labels = pairs
        .iter()
        .map(|&(va, vb)| format!("({},{})", a.vertex_label(va), b.vertex_label(vb)))
        .collect();
    let p = FinGraph::with_labels(vertex_labels, edge_labels, endpoints, None)?;

    let proj = |pick: &dyn Fn(&(Coord, Coord)) -> Coord,
                vmap: Vec<usize>,
                target: &FinGraph|
     -> Result<GraphMap> {
        let emap = edges
            .iter()
            .map(|c| match pick(c) {
                Coord::Dart(d) => EdgeImage::Edge(d),
                Coord::Id(v) => EdgeImage::Degenerate(v),
            })
            .collect();
        GraphMap::new(p.clone(), target.clone(), vmap, emap)
    };
    let pa = proj(&|c| c.0, pairs.iter().map(|&(va, _)| va).collect(), a)?;
    let pb = proj(&|c| c.1, pairs.iter().map(|&(_, vb)| vb).collect(), b)?;
    Ok((p, pa, pb))
}

fn coord_label(c: Coord, g: &FinGraph) -> String {
    match c {
        Coord::Dart(d) if d.reversed => format!("~{}", g.edge_label(d.edge)),
        Coord::Dart(d) => g.edge_label(d.edge).to_string(),
        Coord::Id(v) => format!("={}", g.vertex_label(v)),
    }
}

/// Product `a × b` with its two projections.
pub fn product(a: &FinGraph, b: &FinGraph) -> (FinGraph, GraphMap, GraphMap) {
    pullback(&a.terminal_map(), &b.terminal_map()).expect("terminal maps share a target")
}

/// Checks the universal property of `(p, pa, pb)` as the pullback of `f` and
/// `g` against every cone with apex `apex`: each commuting pair `(u: W -> A,
/// v: W -> B)` must factor through `p` in exactly one way. Returns the number
/// of cones checked, or the first cone that fails.
pub fn check_pullback_universal(
    f: &GraphMap,
    g: &GraphMap,
    pa: &GraphMap,
    pb: &GraphMap,
    apex: &FinGraph,
) -> std::result::Result<usize, String> {
    let mut factorizations: HashMap<(GraphMap, GraphMap), usize> = HashMap::new();
    for u in all_maps(apex, pa.source()) {
        let key = (u.then(pa).expect("composable"), u.then(pb).expect("composable"));
        *factorizations.entry(key).or_default() += 1;
    }
    let mut cones = 0;
    let legs_b = all_maps(apex, g.source());
    for u in all_maps(apex, f.source()) {
        let fu = u.then(f).expect("composable");
        for v in &legs_b {
            if v.then(g).expect("composable") != fu {
                continue;
            }
            cones += 1;
            let count = factorizations.get(&(u.clone(), v.clone())).copied().unwrap_or(0);
            if count != 1 {
                return Err(format!(
                    "cone with vertex maps {:?}, {:?} has {count} factorizations",
                    u.vertex_map(),
                    v.vertex_map()
                ));
            }
        }
    }
    Ok(cones)
}

/// Connected components: a component id per vertex, numbered by first vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Components {
    pub of_vertex: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &c) in self.of_vertex.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

pub fn pi0(x: &FinGraph) -> Components {
    let mut uf = UnionFind::<usize>::new(x.vertex_count());
    for e in x.edges() {
        let (a, b) = x.endpoints(e);
        uf.union(a, b);
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut of_vertex = Vec::with_capacity(x.vertex_count());
    for v in x.vertices() {
        let root = uf.find(v);
        let next = ids.len();
        of_vertex.push(*ids.entry(root).or_insert(next));
    }
    Components { count: ids.len(), of_vertex }
}

/// Connected components by the subset definition: inhabited, connected and
/// detachable subsets of the vertex set. A subset is detachable when no edge
/// leaves it, and connected when no detachable split of it into two inhabited
/// parts exists. Exponential; bounded by `bound` vertices.
pub fn pi0_by_definition(x: &FinGraph, bound: usize) -> Result<Vec<Vec<usize>>> {
    let n = x.vertex_count();
    if n > bound {
        return Err(Error::SizeBound {
            what: "vertex count for subset enumeration",
            actual: n,
            bound,
            flag: "--pi0-bound",
        });
    }
    let edge_masks: Vec<(u32, u32)> = x
        .edges()
        .map(|e| {
            let (a, b) = x.endpoints(e);
            (1u32 << a, 1u32 << b)
        })
        .collect();
    let separated = |s: u32, t: u32| {
        edge_masks
            .iter()
            .all(|&(a, b)| !((a & s != 0 && b & t != 0) || (a & t != 0 && b & s != 0)))
    };
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut out = Vec::new();
    for c in 1..=full {
        if !separated(c, full & !c) {
            continue;
        }
        // proper inhabited parts containing the lowest vertex of c: each split once
        let lowest = c & c.wrapping_neg();
        let mut connected = true;
        let mut s = (c - 1) & c;
        while s != 0 {
            if s & lowest != 0 && separated(s, c & !s) {
                connected = false;
                break;
            }
            s = (s - 1) & c;
        }
        if connected {
            out.push((0..n).filter(|&v| c & (1 << v) != 0).collect());
        }
    }
    out.sort();
    Ok(out)
}

/// `♭x`: the vertices of `x` with no edges, and the counit `♭x -> x`.
pub fn flat(x: &FinGraph) -> (FinGraph, GraphMap) {
    let flat = FinGraph::with_labels(x.vertex_labels().to_vec(), vec![], vec![], x.basepoint())
        .expect("valid vertex set");
    let counit = GraphMap::new(flat.clone(), x.clone(), x.vertices().collect(), vec![])
        .expect("identity on vertices");
    (flat, counit)
}

pub fn is_discrete(x: &FinGraph) -> bool {
    x.edge_count() == 0
}

/// Number of maps from the interval into `x`.
pub fn path_count(x: &FinGraph) -> usize {
    all_maps(&FinGraph::interval(), x).len()
}

/// Discreteness by the path criterion: every map from the interval is constant.
pub fn is_discrete_by_paths(x: &FinGraph) -> bool {
    path_count(x) == x.vertex_count()
}

/// Barycentric subdivision. Vertex `n + e` is the midpoint of edge `e`; edge
/// `2e` runs from the tail of `e` to its midpoint and `2e + 1` from the
/// midpoint to the head.
pub fn subdivide(x: &FinGraph) -> FinGraph {
    let n = x.vertex_count();
    let mut vertex_labels = x.vertex_labels().to_vec();
    vertex_labels.extend(x.edges().map(|e| format!("m:{}", x.edge_label(e))));
    let mut edge_labels = Vec::with_capacity(2 * x.edge_count());
    let mut endpoints = Vec::with_capacity(2 * x.edge_count());
    for e in x.edges() {
        let (a, b) = x.endpoints(e);
        edge_labels.push(format!("{}.0", x.edge_label(e)));
        endpoints.push((a, n + e));
        edge_labels.push(format!("{}.1", x.edge_label(e)));
        endpoints.push((n + e, b));
    }
    FinGraph::with_labels(vertex_labels, edge_labels, endpoints, x.basepoint()).expect("subdivision")
}

/// Subdivision of a map. A collapsed edge sends its midpoint to the collapse vertex.
pub fn subdivide_map(f: &GraphMap) -> GraphMap {
    let (x, y) = (f.source(), f.target());
    let (nx, ny) = (x.vertex_count(), y.vertex_count());
    let mut vertex_map = f.vertex_map().to_vec();
    let mut edge_map = Vec::with_capacity(2 * x.edge_count());
    for e in x.edges() {
        match f.edge(e) {
            EdgeImage::Degenerate(w) => {
                vertex_map.push(w);
                edge_map.extend([EdgeImage::Degenerate(w), EdgeImage::Degenerate(w)]);
            }
            EdgeImage::Edge(d) => {
                vertex_map.push(ny + d.edge);
                let (first, second) = if d.reversed {
                    (Dart::backward(2 * d.edge + 1), Dart::backward(2 * d.edge))
                } else {
                    (Dart::forward(2 * d.edge), Dart::forward(2 * d.edge + 1))
                };
                edge_map.extend([EdgeImage::Edge(first), EdgeImage::Edge(second)]);
            }
        }
    }
    debug_assert_eq!(vertex_map.len(), nx + x.edge_count());
    GraphMap::new(subdivide(x), subdivide(y), vertex_map, edge_map).expect("subdivided map")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fold_map() -> GraphMap {
        // star centre 0, tips 1 and 2; interval centre 0, tip 1
        GraphMap::new(
            FinGraph::star(2),
            FinGraph::interval(),
            vec![0, 1, 1],
            vec![EdgeImage::Edge(Dart::forward(0)), EdgeImage::Edge(Dart::forward(0))],
        )
        .unwrap()
    }

    fn double_cover() -> GraphMap {
        let c6 = FinGraph::cycle(6);
        let c3 = FinGraph::cycle(3);
        GraphMap::new(
            c6,
            c3,
            (0..6).map(|i| i % 3).collect(),
            (0..6).map(|i| EdgeImage::Edge(Dart::forward(i % 3))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn fiber_examples() {
        let c3 = FinGraph::cycle(3);
        let fib = fiber(&c3.identity(), 1).unwrap();
        assert_eq!((fib.subgraph.vertex_count(), fib.subgraph.edge_count()), (1, 0));

        let fold = fold_map();
        let tip = fiber(&fold, 1).unwrap();
        assert_eq!((tip.subgraph.vertex_count(), tip.subgraph.edge_count()), (2, 0));
        let centre = fiber(&fold, 0).unwrap();
        assert_eq!(centre.subgraph.vertex_count(), 1);

        let term = fiber(&c3.terminal_map(), 0).unwrap();
        assert_eq!((term.subgraph.vertex_count(), term.subgraph.edge_count()), (3, 3));
        assert!(fiber(&c3.identity(), 7).is_err());
    }

    #[test]
    fn pullback_examples() {
        let c3 = FinGraph::cycle(3);
        let (p, pa, _) = pullback(&c3.identity(), &c3.identity()).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (3, 3));
        assert!(pa.is_isomorphism());

        let pt = c3.point_inclusion(0).unwrap();
        let (p, _, _) = pullback(&double_cover(), &pt).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (2, 0));

        let i = FinGraph::interval();
        let (p, _, _) = pullback(&fold_map(), &i.point_inclusion(1).unwrap()).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (2, 0));
        let (p, _, _) = pullback(&fold_map(), &i.point_inclusion(0).unwrap()).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (1, 0));

        assert!(pullback(&fold_map(), &c3.identity()).is_err());
    }

    #[test]
    fn interval_square_has_both_diagonals() {
        let (p, _, _) = product(&FinGraph::interval(), &FinGraph::interval());
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.edge_count(), 6);
    }

    #[test]
    fn point_times_x_is_x() {
        let c3 = FinGraph::cycle(3);
        let (p, _, pb) = product(&FinGraph::point(), &c3);
        assert_eq!((p.vertex_count(), p.edge_count()), (3, 3));
        assert!(pb.is_isomorphism());
    }

    #[test]
    fn subdivision_keeps_shape() {
        let b = FinGraph::bouquet(2);
        let sd = subdivide(&b);
        assert_eq!((sd.vertex_count(), sd.edge_count()), (3, 4));
        assert_eq!(pi0(&sd).count, 1);
        let f = subdivide_map(&double_cover());
        assert_eq!(f.source().vertex_count(), 12);
        assert!(!f.has_degenerate_edges());
        let g = subdivide_map(&FinGraph::cycle(3).terminal_map());
        assert_eq!(g.target().vertex_count(), 1);
    }

    #[test]
    fn components_of_small_graphs() {
        assert_eq!(pi0(&FinGraph::cycle(3)).count, 1);
        assert_eq!(pi0(&FinGraph::discrete(2)).count, 2);
        assert_eq!(pi0(&FinGraph::empty()).count, 0);
    }

    #[test]
    fn definition_components_small() {
        let i = FinGraph::interval();
        assert_eq!(pi0_by_definition(&i, 12).unwrap(), vec![vec![0, 1]]);
        assert_eq!(pi0_by_definition(&FinGraph::discrete(2), 12).unwrap(), vec![vec![0], vec![1]]);
        assert!(matches!(
            pi0_by_definition(&FinGraph::discrete(13), 12),
            Err(Error::SizeBound { .. })
        ));
    }

    #[test]
    fn flat_and_discreteness() {
        let c3 = FinGraph::cycle(3);
        let (fc3, counit) = flat(&c3);
        assert_eq!((fc3.vertex_count(), fc3.edge_count()), (3, 0));
        assert!(!counit.is_isomorphism());
        let d = FinGraph::discrete(3);
        assert!(flat(&d).1.is_isomorphism());
        assert_eq!(flat(fold_map().source()).0.vertex_count(), 3);

        assert!(is_discrete(&d) && is_discrete_by_paths(&d));
        assert!(!is_discrete(&c3) && !is_discrete_by_paths(&c3));
        assert_eq!(path_count(&FinGraph::interval()), 4);
        assert!(!is_discrete_by_paths(&FinGraph::interval()));
    }
}
