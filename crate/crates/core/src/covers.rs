//! Covering maps of graphs, their monodromy, and balls in universal covers.

use std::collections::{HashMap, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::automaton::{LabelledEdge, SubgroupAutomaton};
use crate::error::{input, Error, Result};
use crate::graph::{Dart, EdgeImage, FinGraph, GraphMap};
use crate::group::{all_perms, Perm};
use crate::presentation::{induce_functor, shape1};
use crate::space::pi0;
use crate::verdict::Verdict;

/// Radius cap for the automatic radius of [`universal_cover_initiality`].
pub const INITIALITY_RADIUS_CAP: usize = 16;
/// Vertex cap for universal-cover balls.
pub const BALL_VERTEX_CAP: usize = 200_000;

/// Whether every vertex star maps bijectively onto the star of its image.
pub fn is_cover(p: &GraphMap) -> bool {
    if p.has_degenerate_edges() {
        return false;
    }
    let (x, y) = (p.source(), p.target());
    let target_stars = y.stars();
    x.stars().iter().enumerate().all(|(v, star)| {
        let expected = &target_stars[p.vertex(v)];
        if star.len() != expected.len() {
            return false;
        }
        let mut images: Vec<Dart> = star.iter().map(|&d| p.dart(d).expect("no collapsed edges")).collect();
        images.sort();
        let mut expected = expected.clone();
        expected.sort();
        images == expected
    })
}

/// A graph map certified to be a covering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverMap {
    map: GraphMap,
}

impl CoverMap {
    pub fn new(map: GraphMap) -> Result<Self> {
        if is_cover(&map) {
            Ok(CoverMap { map })
        } else {
            input("map is not a covering: some vertex star does not map bijectively")
        }
    }

    pub fn map(&self) -> &GraphMap {
        &self.map
    }

    pub fn total(&self) -> &FinGraph {
        self.map.source()
    }

    pub fn base(&self) -> &FinGraph {
        self.map.target()
    }

    /// Source vertices over `b`, ascending.
    pub fn fiber_over(&self, b: usize) -> Vec<usize> {
        self.total().vertices().filter(|&v| self.map.vertex(v) == b).collect()
    }

    /// The unique dart at `v` over the base dart `d`.
    pub fn lift_dart(&self, v: usize, d: Dart) -> Dart {
        self.total()
            .star_of(v)
            .into_iter()
            .find(|&s| self.map.dart(s) == Some(d))
            .expect("covering lifts every dart")
    }

    /// End of the lift of a base path starting at `v`.
    pub fn lift_path(&self, v: usize, path: &[Dart]) -> usize {
        path.iter().fold(v, |cur, &d| self.total().head(self.lift_dart(cur, d)))
    }

    /// Restrictions over each component of the base.
    pub fn decompose(&self) -> Vec<CoverMap> {
        let (x, y) = (self.total(), self.base());
        let cy = pi0(y);
        cy.members()
            .into_iter()
            .map(|bv| {
                let xv: Vec<usize> = x.vertices().filter(|&v| bv.contains(&self.map.vertex(v))).collect();
                let xe: Vec<usize> = x.edges().filter(|&e| xv.contains(&x.endpoints(e).0)).collect();
                let be: Vec<usize> = y.edges().filter(|&e| bv.contains(&y.endpoints(e).0)).collect();
                let (xs, _) = x.subgraph(&xv, &xe).expect("total component");
                let (ys, _) = y.subgraph(&bv, &be).expect("base component");
                let vmap = xv.iter().map(|&v| bv.iter().position(|&b| b == self.map.vertex(v)).unwrap()).collect();
                let emap = xe
                    .iter()
                    .map(|&e| match self.map.edge(e) {
                        EdgeImage::Edge(d) => EdgeImage::Edge(Dart {
                            edge: be.iter().position(|&b| b == d.edge).unwrap(),
                            reversed: d.reversed,
                        }),
                        EdgeImage::Degenerate(_) => unreachable!("coverings do not collapse edges"),
                    })
                    .collect();
                CoverMap { map: GraphMap::new(xs, ys, vmap, emap).expect("restricted covering") }
            })
            .collect()
    }
}

/// Permutations of a fiber `{0..n}`, one for each generator of the
/// fundamental group of a connected base at `base_vertex`.
///
/// Generator `t`, the cotree edge from `a` to `b`, stands for the loop
/// `T(x₀)⁻¹ · T(a) · t · T(b)⁻¹ · T(x₀)`; its permutation sends `i` to the end
/// of the lift of that loop from sheet `i`. Tree edges preserve sheets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonodromyAction {
    pub base: FinGraph,
    pub base_vertex: usize,
    pub fiber_size: usize,
    pub perms: Vec<Perm>,
}

impl MonodromyAction {
    pub fn new(base: FinGraph, base_vertex: usize, fiber_size: usize, perms: Vec<Perm>) -> Result<Self> {
        base.check_vertex(base_vertex)?;
        let pres = shape1(&base);
        if pres.component_count() != 1 {
            return input("monodromy needs a connected base");
        }
        if perms.len() != pres.rank(0) {
            return input(format!("base has {} generators but {} permutations were given", pres.rank(0), perms.len()));
        }
        if perms.iter().any(|p| p.degree() != fiber_size) {
            return input("permutation degree differs from the fiber size");
        }
        Ok(MonodromyAction { base, base_vertex, fiber_size, perms })
    }

    /// Orbits of the generated group, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.fiber_size);
        for p in &self.perms {
            for i in 0..self.fiber_size {
                uf.union(i, p.apply(i));
            }
        }
        let mut by_root: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.fiber_size {
            let r = uf.find(i);
            let k = *by_root.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(i);
        }
        out
    }

    /// The subgroup of words fixing `point`, as the folded Schreier graph of its orbit.
    pub fn stabilizer(&self, point: usize) -> SubgroupAutomaton {
        let orbit = self.orbits().into_iter().find(|o| o.contains(&point)).expect("point in fiber");
        // root first
        let mut order = vec![point];
        order.extend(orbit.iter().copied().filter(|&i| i != point));
        let index: HashMap<usize, usize> = order.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let edges = order
            .iter()
            .flat_map(|&i| {
                self.perms.iter().enumerate().map(move |(g, p)| (i, g, p.apply(i)))
            })
            .map(|(i, g, j)| LabelledEdge { source: index[&i], label: g, target: index[&j] })
            .collect();
        SubgroupAutomaton::fold_raw(self.perms.len(), order.len(), edges)
    }
}

pub fn monodromy(p: &CoverMap, base_vertex: usize) -> Result<MonodromyAction> {
    let base = p.base();
    base.check_vertex(base_vertex)?;
    let pres = shape1(base);
    if pres.component_count() != 1 {
        return Err(Error::Inapplicable("base is disconnected; decompose the cover per component first".into()));
    }
    let fiber = p.fiber_over(base_vertex);
    let index: HashMap<usize, usize> = fiber.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let to_root: Vec<Dart> = pres.tree_path(base_vertex).iter().rev().map(|d| d.inverse()).collect();
    let from_root = pres.tree_path(base_vertex);
    let perms = (0..pres.rank(0))
        .map(|g| {
            let mut path = to_root.clone();
            path.extend(pres.generator_loop(0, g));
            path.extend(from_root.iter().copied());
            let images = fiber.iter().map(|&v| index[&p.lift_path(v, &path)]).collect();
            Perm::from_images(images).expect("lifting is bijective on fibers")
        })
        .collect();
    MonodromyAction::new(base.clone(), base_vertex, fiber.len(), perms)
}

/// The covering with the given monodromy. Vertex `v·n + i` is sheet `i` over `v`.
pub fn total_space(m: &MonodromyAction) -> CoverMap {
    let base = &m.base;
    let pres = shape1(base);
    let n = m.fiber_size;
    let vertex_labels = base
        .vertices()
        .flat_map(|v| (0..n).map(move |i| (v, i)))
        .map(|(v, i)| format!("{}.{}", base.vertex_label(v), i + 1))
        .collect();
    let mut edge_labels = Vec::new();
    let mut endpoints = Vec::new();
    let mut edge_map = Vec::new();
    for e in base.edges() {
        let (a, b) = base.endpoints(e);
        for i in 0..n {
            let j = match pres.letter(Dart::forward(e)) {
                Some(l) => m.perms[l.generator].apply(i),
                None => i,
            };
            edge_labels.push(format!("{}.{}", base.edge_label(e), i + 1));
            endpoints.push((a * n + i, b * n + j));
            edge_map.push(EdgeImage::Edge(Dart::forward(e)));
        }
    }
    let basepoint = (n > 0).then_some(m.base_vertex * n);
    let total = FinGraph::with_labels(vertex_labels, edge_labels, endpoints, basepoint).expect("total space");
    let vertex_map = total.vertices().map(|v| v / n.max(1)).collect();
    CoverMap { map: GraphMap::new(total, base.clone(), vertex_map, edge_map).expect("covering of the base") }
}

/// Every marked `n`-sheeted cover of a connected graph: one permutation per generator.
pub fn enumerate_covers(x: &FinGraph, n: usize) -> Result<Vec<MonodromyAction>> {
    let pres = shape1(x);
    if pres.component_count() != 1 {
        return input("cover enumeration needs a connected base");
    }
    if n == 0 {
        return input("fiber size must be at least 1");
    }
    let base_vertex = x.basepoint().unwrap_or(0);
    let perms = all_perms(n);
    let tuples = crate::graph::cartesian(&vec![perms; pres.rank(0)]);
    tuples
        .into_iter()
        .map(|t| MonodromyAction::new(x.clone(), base_vertex, n, t))
        .collect()
}

/// Number of marked `n`-sheeted covers: `(n!)^rank`.
pub fn marked_cover_count(rank: usize, n: usize) -> u128 {
    let fact: u128 = (1..=n as u128).product();
    fact.pow(rank as u32)
}

/// Isomorphism classes of `n`-sheeted covers (connected or not) of a graph of
/// the given rank: orbits of permutation tuples under simultaneous
/// conjugation. By Burnside, `Σ_λ z_λ^(rank-1)` over cycle types `λ ⊢ n`,
/// where `z_λ = Π l^{m_l} m_l!` is the centralizer order.
pub fn unmarked_cover_count(rank: usize, n: usize) -> u128 {
    fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=max.min(n)).rev() {
            cur.push(k);
            partitions(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut parts = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut parts);
    if rank == 0 {
        return 1;
    }
    parts
        .iter()
        .map(|lambda| {
            let mut z: u128 = 1;
            let mut counts: HashMap<usize, u128> = HashMap::new();
            for &l in lambda {
                *counts.entry(l).or_default() += 1;
            }
            for (&l, &m) in &counts {
                z *= (l as u128).pow(m as u32) * (1..=m).product::<u128>();
            }
            z.pow(rank as u32 - 1)
        })
        .sum()
}

/// `(component count of the total space, orbit count of the monodromy)`.
pub fn components_vs_orbits(m: &MonodromyAction) -> (usize, usize) {
    (pi0(total_space(m).total()).count, m.orbits().len())
}

/// The ball of radius `r` around `base` in the universal cover, with its
/// projection. Vertices are the non-backtracking walks of length at most `r`.
pub fn universal_cover_ball(x: &FinGraph, base: usize, r: usize) -> Result<(FinGraph, GraphMap)> {
    x.check_vertex(base)?;
    let stars = x.stars();
    let mut walks: Vec<(usize, Option<Dart>)> = vec![(base, None)];
    let mut endpoints = Vec::new();
    let mut edge_images = Vec::new();
    let mut labels = vec![x.vertex_label(base).to_string()];
    let mut frontier = vec![0usize];
    for _ in 0..r {
        let mut next = Vec::new();
        for &w in &frontier {
            let (end, last) = walks[w];
            for &d in &stars[end] {
                if Some(d.inverse()) == last {
                    continue;
                }
                if walks.len() >= BALL_VERTEX_CAP {
                    return Err(Error::SizeBound {
                        what: "universal cover ball vertices",
                        actual: walks.len() + 1,
                        bound: BALL_VERTEX_CAP,
                        flag: "--radius",
                    });
                }
                let id = walks.len();
                let step = if d.reversed { format!("~{}", x.edge_label(d.edge)) } else { x.edge_label(d.edge).to_string() };
                labels.push(format!("{}.{}", labels[w], step));
                walks.push((x.head(d), Some(d)));
                endpoints.push((w, id));
                edge_images.push(EdgeImage::Edge(d));
                next.push(id);
            }
        }
        frontier = next;
    }
    let edge_labels = (0..endpoints.len()).map(|i| format!("u{i}")).collect();
    let ball = FinGraph::with_labels(labels, edge_labels, endpoints, Some(0))?;
    let proj = GraphMap::new(ball.clone(), x.clone(), walks.iter().map(|&(v, _)| v).collect(), edge_images)?;
    Ok((ball, proj))
}

/// Initiality of the universal cover against one pointed cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub radius: usize,
    /// Number of pointed maps from the ball into the cover over the base.
    pub lifts: usize,
    /// Whether the lift reaches every vertex of the pointed component of the cover.
    pub reaches_component: bool,
    pub verdict: Verdict,
}

/// Counts pointed maps `ball -> E` lying over the base, by exhaustive backtracking
/// over all edges of `E` (no use is made of the covering property).
pub fn count_pointed_lifts(ball: &GraphMap, cover: &GraphMap, point: usize) -> (usize, Option<Vec<usize>>) {
    let b = ball.source();
    let e = cover.source();
    // the ball is a tree built breadth-first: edge k joins an earlier vertex to vertex k + 1
    let mut assignment = vec![usize::MAX; b.vertex_count()];
    if b.vertex_count() == 0 {
        return (0, None);
    }
    assignment[0] = point;
    let darts_over: Vec<Vec<Dart>> = b
        .edges()
        .map(|k| {
            let d = ball.dart(Dart::forward(k)).expect("ball edges are not collapsed");
            e.darts().filter(|&s| cover.dart(s) == Some(d)).collect()
        })
        .collect();
    let mut count = 0;
    let mut first = None;
    fn go(
        k: usize,
        b: &FinGraph,
        e: &FinGraph,
        darts_over: &[Vec<Dart>],
        assignment: &mut Vec<usize>,
        count: &mut usize,
        first: &mut Option<Vec<usize>>,
    ) {
        if k == b.edge_count() {
            *count += 1;
            if first.is_none() {
                *first = Some(assignment.clone());
            }
            return;
        }
        let (u, v) = b.endpoints(k);
        for &s in &darts_over[k] {
            if e.tail(s) == assignment[u] {
                assignment[v] = e.head(s);
                go(k + 1, b, e, darts_over, assignment, count, first);
                assignment[v] = usize::MAX;
            }
        }
    }
    go(0, b, e, &darts_over, &mut assignment, &mut count, &mut first);
    (count, first)
}

/// Largest graph distance from `v` within its component.
fn eccentricity(x: &FinGraph, v: usize) -> usize {
    let stars = x.stars();
    let mut dist = vec![usize::MAX; x.vertex_count()];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    let mut far = 0;
    while let Some(u) = queue.pop_front() {
        far = far.max(dist[u]);
        for &d in &stars[u] {
            let w = x.head(d);
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    far
}

/// For each pointed cover `(p, e)` of the pointed base `x`, certifies that the
/// universal-cover ball maps to `E` by exactly one pointed map over `x`, and
/// that this map reaches the whole pointed component. The radius is the
/// eccentricity of the point in its component unless given; above
/// [`INITIALITY_RADIUS_CAP`] the answer is undecided.
pub fn universal_cover_initiality(
    x: &FinGraph,
    covers: &[(CoverMap, usize)],
    radius: Option<usize>,
) -> Result<Vec<LiftReport>> {
    let base = x.basepoint().ok_or_else(|| Error::Input("base graph needs a basepoint".into()))?;
    if pi0(x).count != 1 {
        return input("universal cover needs a connected base");
    }
    covers
        .iter()
        .map(|(p, point)| {
            if p.base() != x {
                return input("cover is over a different base");
            }
            if p.map().vertex(*point) != base {
                return input("cover point does not lie over the basepoint");
            }
            let r = radius.unwrap_or_else(|| eccentricity(p.total(), *point));
            if r > INITIALITY_RADIUS_CAP {
                return Ok(LiftReport {
                    radius: r,
                    lifts: 0,
                    reaches_component: false,
                    verdict: Verdict::Undecided { bound: INITIALITY_RADIUS_CAP, what: "lift radius" },
                });
            }
            let (_, proj) = universal_cover_ball(x, base, r)?;
            let (lifts, first) = count_pointed_lifts(&proj, p.map(), *point);
            let reaches_component = first.is_some_and(|a| {
                let comps = pi0(p.total());
                let target = comps.of_vertex[*point];
                let mut hit = vec![false; p.total().vertex_count()];
                for v in a {
                    hit[v] = true;
                }
                p.total().vertices().filter(|&v| comps.of_vertex[v] == target).all(|v| hit[v])
            });
            let verdict = if lifts == 1 && reaches_component {
                Verdict::True
            } else if lifts != 1 {
                Verdict::False
            } else {
                Verdict::Undecided { bound: r, what: "lift radius" }
            };
            Ok(LiftReport { radius: r, lifts, reaches_component, verdict })
        })
        .collect()
}

/// One orbit's certificate for the total-space shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitCertificate {
    pub fiber_point: usize,
    pub total_vertex: usize,
    pub total_component: usize,
    pub stabilizer: SubgroupAutomaton,
    pub image: SubgroupAutomaton,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeReport {
    pub component_count: usize,
    pub orbit_count: usize,
    pub orbits_match_components: bool,
    pub orbits: Vec<OrbitCertificate>,
}

impl ShapeReport {
    pub fn holds(&self) -> bool {
        self.orbits_match_components && self.orbits.iter().all(|o| o.equal)
    }
}

/// Verifies that the shape of the total space is the action groupoid of the
/// monodromy: components correspond to orbits, and at a point of each orbit
/// the image of the total space's fundamental group is the stabilizer.
pub fn shape_of_total(p: &CoverMap) -> Result<ShapeReport> {
    let base = p.base();
    let x0 = base.basepoint().unwrap_or(0);
    let m = monodromy(p, x0)?;
    let fiber = p.fiber_over(x0);
    let func = induce_functor(p.map());
    let total_pres = func.source();
    let orbits = m.orbits();
    let comps = pi0(p.total());
    let mut seen_components = vec![false; comps.count];
    let mut matched = orbits.len() == comps.count;
    let certs = orbits
        .iter()
        .map(|orbit| {
            let i = orbit[0];
            let v = fiber[i];
            let c = total_pres.component_of(v);
            matched &= !std::mem::replace(&mut seen_components[c], true);
            let phi = func.transport(v);
            let gens: Vec<_> = func.generator_images(c).iter().map(|w| w.conjugate_by(phi)).collect();
            let image = SubgroupAutomaton::from_generators(m.perms.len(), &gens);
            let stabilizer = m.stabilizer(i);
            let equal = stabilizer == image && stabilizer.subgroup_equal(&image);
            OrbitCertificate { fiber_point: i, total_vertex: v, total_component: c, stabilizer, image, equal }
        })
        .collect();
    Ok(ShapeReport {
        component_count: comps.count,
        orbit_count: orbits.len(),
        orbits_match_components: matched,
        orbits: certs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn circle() -> FinGraph {
        FinGraph::bouquet(1)
    }

    fn double_cover() -> GraphMap {
        GraphMap::from_vertex_map(FinGraph::cycle(6), FinGraph::cycle(3), (0..6).map(|i| i % 3).collect()).unwrap()
    }

    #[test]
    fn cover_examples() {
        assert!(is_cover(&double_cover()));
        assert!(is_cover(&FinGraph::cycle(3).identity()));
        let fold = GraphMap::from_vertex_map(FinGraph::star(2), FinGraph::interval(), vec![0, 1, 1]).unwrap();
        assert!(!is_cover(&fold));
    }

    #[test]
    fn double_cover_monodromy_is_a_swap() {
        let p = CoverMap::new(double_cover()).unwrap();
        let m = monodromy(&p, 0).unwrap();
        assert_eq!(m.perms, vec![Perm::parse("(12)", 2).unwrap()]);
        let m1 = monodromy(&p, 1).unwrap();
        assert_eq!(m1.perms, vec![Perm::parse("(12)", 2).unwrap()]);
    }

    #[test]
    fn figure_two_cover() {
        let m = MonodromyAction::new(circle(), 0, 5, vec![Perm::parse("(12)(354)", 5).unwrap()]).unwrap();
        let total = total_space(&m);
        assert_eq!(pi0(total.total()).count, 2);
        assert_eq!(components_vs_orbits(&m), (2, 2));
        assert_eq!(monodromy(&total, 0).unwrap(), m);
    }

    #[test]
    fn cover_counts() {
        assert_eq!(enumerate_covers(&circle(), 3).unwrap().len(), 6);
        assert_eq!(enumerate_covers(&circle(), 1).unwrap().len(), 1);
        assert_eq!(enumerate_covers(&FinGraph::bouquet(2), 2).unwrap().len(), 4);
        assert_eq!(marked_cover_count(1, 4), 24);
        // circle: covers up to iso are partitions of n
        assert_eq!(unmarked_cover_count(1, 5), 7);
        assert_eq!(unmarked_cover_count(2, 2), 4);
    }

    #[test]
    fn balls() {
        let (ball, proj) = universal_cover_ball(&circle(), 0, 2).unwrap();
        assert_eq!((ball.vertex_count(), ball.edge_count()), (5, 4));
        assert_eq!(pi0(&ball).count, 1);
        assert!(!proj.has_degenerate_edges());
        let (ball, _) = universal_cover_ball(&FinGraph::bouquet(2), 0, 1).unwrap();
        assert_eq!((ball.vertex_count(), ball.edge_count()), (5, 4));
        let (ball, proj) = universal_cover_ball(&FinGraph::path(4), 0, 5).unwrap();
        assert_eq!(ball.vertex_count(), 4);
        assert!(proj.is_isomorphism());
    }

    #[test]
    fn initiality_for_cyclic_covers() {
        let x = circle();
        for n in 1..=3 {
            let m = MonodromyAction::new(x.clone(), 0, n, vec![Perm::parse(&format!("({})", (1..=n).map(|i| i.to_string()).collect::<String>()), n).unwrap()]).unwrap();
            let p = total_space(&m);
            let reports = universal_cover_initiality(&x, &[(p, 0)], None).unwrap();
            assert_eq!(reports[0].verdict, Verdict::True, "n = {n}");
            assert_eq!(reports[0].lifts, 1);
        }
    }

    #[test]
    fn total_space_shape() {
        let m = MonodromyAction::new(circle(), 0, 2, vec![Perm::parse("(12)", 2).unwrap()]).unwrap();
        let report = shape_of_total(&total_space(&m)).unwrap();
        assert!(report.holds());
        assert!(report.orbits[0].image.contains(&Word::from_signed(&[1, 1])));
        let m = MonodromyAction::new(FinGraph::bouquet(2), 0, 2, vec![Perm::parse("(12)", 2).unwrap(), Perm::identity(2)])
            .unwrap();
        let report = shape_of_total(&total_space(&m)).unwrap();
        assert_eq!(report.orbit_count, 1);
        assert_eq!(report.orbits[0].stabilizer.index(), Some(2));
        assert!(report.holds());
    }
}
