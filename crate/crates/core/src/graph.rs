//! Finite reflexive graphs and the maps between them.
//!
//! A [`FinGraph`] is a finite undirected multigraph with loops. Vertices and
//! edges are dense indices; every vertex and edge also carries a label used by
//! the text format. Each edge is stored with a reference orientation
//! `(tail, head)`; a [`Dart`] is an edge together with a direction of travel.
//!
//! Graphs are reflexive: every vertex has an implicit identity edge. A
//! [`GraphMap`] may therefore send an edge to a dart of the target or collapse
//! it onto a vertex ([`EdgeImage::Degenerate`]).

use serde::Serialize;

use crate::error::{input, Error, Result};

/// An edge traversed in a chosen direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub edge: usize,
    pub reversed: bool,
}

impl Dart {
    pub fn forward(edge: usize) -> Self {
        Dart { edge, reversed: false }
    }

    pub fn backward(edge: usize) -> Self {
        Dart { edge, reversed: true }
    }

    pub fn inverse(self) -> Self {
        Dart { edge: self.edge, reversed: !self.reversed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FinGraph {
    vertex_labels: Vec<String>,
    edge_labels: Vec<String>,
    endpoints: Vec<(usize, usize)>,
    basepoint: Option<usize>,
}

impl FinGraph {
    /// Graph on `n` vertices labelled `0..n` with edges labelled `e0, e1, ...`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let vertex_labels = (0..n).map(|i| i.to_string()).collect();
        let edge_labels = (0..edges.len()).map(|i| format!("e{i}")).collect();
        Self::with_labels(vertex_labels, edge_labels, edges.to_vec(), None)
    }

    pub fn with_labels(
        vertex_labels: Vec<String>,
        edge_labels: Vec<String>,
        endpoints: Vec<(usize, usize)>,
        basepoint: Option<usize>,
    ) -> Result<Self> {
        if edge_labels.len() != endpoints.len() {
            return input("edge label count differs from edge count");
        }
        let n = vertex_labels.len();
        for (i, &(u, v)) in endpoints.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::UnknownId {
                    kind: "vertex",
                    id: format!("endpoint of edge {}", edge_labels[i]),
                });
            }
        }
        if let Some(b) = basepoint {
            if b >= n {
                return Err(Error::UnknownId { kind: "vertex", id: b.to_string() });
            }
        }
        Ok(FinGraph { vertex_labels, edge_labels, endpoints, basepoint })
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    pub fn empty() -> Self {
        Self::discrete(0)
    }

    pub fn discrete(n: usize) -> Self {
        Self::new(n, &[]).expect("discrete graph")
    }

    /// The interval: two vertices joined by one edge.
    pub fn interval() -> Self {
        Self::new(2, &[(0, 1)]).expect("interval")
    }

    /// Path with `n` vertices `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("path")
    }

    /// Cycle `C_k`, edge `i` runs `i -> i+1 mod k`. `C_1` is a single loop.
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 1, "cycle needs at least one vertex");
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Self::new(k, &edges).expect("cycle").pointed(0)
    }

    /// One vertex with `r` loops: the circle for `r = 1`, the figure eight for `r = 2`.
    pub fn bouquet(r: usize) -> Self {
        let edges = vec![(0, 0); r];
        Self::new(1, &edges).expect("bouquet").pointed(0)
    }

    /// Star with `arms` leaves; vertex 0 is the centre, edge `i` joins the centre to leaf `i + 1`.
    pub fn star(arms: usize) -> Self {
        let edges: Vec<_> = (1..=arms).map(|i| (0, i)).collect();
        Self::new(arms + 1, &edges).expect("star").pointed(0)
    }

    pub fn pointed(mut self, v: usize) -> Self {
        assert!(v < self.vertex_count(), "basepoint out of range");
        self.basepoint = Some(v);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count()
    }

    pub fn edges(&self) -> std::ops::Range<usize> {
        0..self.edge_count()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.endpoints[e]
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertex_labels[v]
    }

    pub fn edge_label(&self, e: usize) -> &str {
        &self.edge_labels[e]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn edge_labels(&self) -> &[String] {
        &self.edge_labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    pub fn edge_by_label(&self, label: &str) -> Option<usize> {
        self.edge_labels.iter().position(|l| l == label)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::UnknownId { kind: "vertex", id: v.to_string() })
        }
    }

    pub fn tail(&self, d: Dart) -> usize {
        let (u, v) = self.endpoints[d.edge];
        if d.reversed {
            v
        } else {
            u
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        self.tail(d.inverse())
    }

    /// Darts leaving `v`, ordered by edge id then orientation. A loop contributes two darts.
    pub fn star_of(&self, v: usize) -> Vec<Dart> {
        let mut out = Vec::new();
        for (e, &(a, b)) in self.endpoints.iter().enumerate() {
            if a == v {
                out.push(Dart::forward(e));
            }
            if b == v {
                out.push(Dart::backward(e));
            }
        }
        out
    }

    /// Darts leaving each vertex, indexed by vertex.
    pub fn stars(&self) -> Vec<Vec<Dart>> {
        let mut out = vec![Vec::new(); self.vertex_count()];
        for (e, &(a, b)) in self.endpoints.iter().enumerate() {
            out[a].push(Dart::forward(e));
            out[b].push(Dart::backward(e));
        }
        out
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.edges().flat_map(|e| [Dart::forward(e), Dart::backward(e)])
    }

    /// Darts from `u` to `v`.
    pub fn darts_between(&self, u: usize, v: usize) -> Vec<Dart> {
        self.darts().filter(|&d| self.tail(d) == u && self.head(d) == v).collect()
    }

    /// Subgraph on the given vertices and edges, relabelled densely in the given order.
    /// Returns the subgraph with its inclusion.
    pub fn subgraph(&self, vertices: &[usize], edges: &[usize]) -> Result<(FinGraph, GraphMap)> {
        let mut index = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            index[v] = i;
        }
        let mut endpoints = Vec::with_capacity(edges.len());
        for &e in edges {
            let (a, b) = self.endpoints[e];
            if index[a] == usize::MAX || index[b] == usize::MAX {
                return input(format!("edge {} leaves the vertex subset", self.edge_labels[e]));
            }
            endpoints.push((index[a], index[b]));
        }
        let sub = FinGraph::with_labels(
            vertices.iter().map(|&v| self.vertex_labels[v].clone()).collect(),
            edges.iter().map(|&e| self.edge_labels[e].clone()).collect(),
            endpoints,
            self.basepoint.and_then(|b| (index[b] != usize::MAX).then_some(index[b])),
        )?;
        let inclusion = GraphMap::new(
            sub.clone(),
            self.clone(),
            vertices.to_vec(),
            edges.iter().map(|&e| EdgeImage::Edge(Dart::forward(e))).collect(),
        )?;
        Ok((sub, inclusion))
    }

    /// Disjoint union; vertices and edges of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &FinGraph) -> FinGraph {
        let n = self.vertex_count();
        let mut vertex_labels = self.vertex_labels.clone();
        let mut edge_labels = self.edge_labels.clone();
        let mut endpoints = self.endpoints.clone();
        for v in other.vertices() {
            vertex_labels.push(unique_label(&self.vertex_labels, other.vertex_label(v)));
        }
        for e in other.edges() {
            edge_labels.push(unique_label(&self.edge_labels, other.edge_label(e)));
            let (a, b) = other.endpoints(e);
            endpoints.push((a + n, b + n));
        }
        FinGraph { vertex_labels, edge_labels, endpoints, basepoint: self.basepoint }
    }

    /// Same graph with fresh default labels.
    pub fn relabelled(&self) -> FinGraph {
        let mut g = FinGraph::new(self.vertex_count(), &self.endpoints).expect("valid graph");
        g.basepoint = self.basepoint;
        g
    }

    /// Identity map on this graph.
    pub fn identity(&self) -> GraphMap {
        GraphMap {
            source: self.clone(),
            target: self.clone(),
            vertex_map: self.vertices().collect(),
            edge_map: self.edges().map(|e| EdgeImage::Edge(Dart::forward(e))).collect(),
        }
    }

    /// The unique map to the one-point graph.
    pub fn terminal_map(&self) -> GraphMap {
        GraphMap {
            source: self.clone(),
            target: FinGraph::point(),
            vertex_map: vec![0; self.vertex_count()],
            edge_map: vec![EdgeImage::Degenerate(0); self.edge_count()],
        }
    }

    /// Inclusion of the one-point graph at `v`.
    pub fn point_inclusion(&self, v: usize) -> Result<GraphMap> {
        self.check_vertex(v)?;
        GraphMap::new(FinGraph::point(), self.clone(), vec![v], vec![])
    }
}

fn unique_label(existing: &[String], label: &str) -> String {
    if !existing.iter().any(|l| l == label) {
        return label.to_string();
    }
    (1..)
        .map(|i| format!("{label}'{i}"))
        .find(|cand| !existing.contains(cand))
        .expect("infinite supply")
}

/// Where a map sends an edge: to a dart of the target, or onto a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeImage {
    Edge(Dart),
    Degenerate(usize),
}

/// A map of reflexive graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GraphMap {
    source: FinGraph,
    target: FinGraph,
    vertex_map: Vec<usize>,
    edge_map: Vec<EdgeImage>,
}

impl GraphMap {
    pub fn new(
        source: FinGraph,
        target: FinGraph,
        vertex_map: Vec<usize>,
        edge_map: Vec<EdgeImage>,
    ) -> Result<Self> {
        if vertex_map.len() != source.vertex_count() {
            return input("vertex map is not total on the source");
        }
        if edge_map.len() != source.edge_count() {
            return input("edge map is not total on the source");
        }
        for (v, &w) in vertex_map.iter().enumerate() {
            if w >= target.vertex_count() {
                return Err(Error::UnknownId {
                    kind: "vertex",
                    id: format!("image of {}", source.vertex_label(v)),
                });
            }
        }
        for (e, img) in edge_map.iter().enumerate() {
            let (a, b) = source.endpoints(e);
            let (fa, fb) = (vertex_map[a], vertex_map[b]);
            match *img {
                EdgeImage::Edge(d) => {
                    if d.edge >= target.edge_count() {
                        return Err(Error::UnknownId {
                            kind: "edge",
                            id: format!("image of {}", source.edge_label(e)),
                        });
                    }
                    if target.tail(d) != fa || target.head(d) != fb {
                        return input(format!(
                            "edge {} is sent to {} but its endpoints are not sent to that edge's endpoints",
                            source.edge_label(e),
                            target.edge_label(d.edge)
                        ));
                    }
                }
                EdgeImage::Degenerate(w) => {
                    if w >= target.vertex_count() || fa != w || fb != w {
                        return input(format!(
                            "edge {} is collapsed but its endpoints do not both map to the collapse vertex",
                            source.edge_label(e)
                        ));
                    }
                }
            }
        }
        Ok(GraphMap { source, target, vertex_map, edge_map })
    }

    /// Builds a map from a vertex assignment, choosing for each edge the unique
    /// compatible image. Fails if some edge has no or several candidate images.
    pub fn from_vertex_map(source: FinGraph, target: FinGraph, vertex_map: Vec<usize>) -> Result<Self> {
        let mut edge_map = Vec::with_capacity(source.edge_count());
        for e in source.edges() {
            let (a, b) = source.endpoints(e);
            let (fa, fb) = (vertex_map[a], vertex_map[b]);
            let candidates = target.darts_between(fa, fb);
            let img = if fa == fb && candidates.is_empty() {
                EdgeImage::Degenerate(fa)
            } else if candidates.len() == 1 {
                EdgeImage::Edge(candidates[0])
            } else {
                return input(format!(
                    "edge {} has {} candidate images",
                    source.edge_label(e),
                    candidates.len() + usize::from(fa == fb)
                ));
            };
            edge_map.push(img);
        }
        GraphMap::new(source, target, vertex_map, edge_map)
    }

    pub fn source(&self) -> &FinGraph {
        &self.source
    }

    pub fn target(&self) -> &FinGraph {
        &self.target
    }

    pub fn vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    pub fn edge(&self, e: usize) -> EdgeImage {
        self.edge_map[e]
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[EdgeImage] {
        &self.edge_map
    }

    /// Image of a dart: a target dart, or `None` when the edge collapses.
    pub fn dart(&self, d: Dart) -> Option<Dart> {
        match self.edge_map[d.edge] {
            EdgeImage::Edge(img) => Some(if d.reversed { img.inverse() } else { img }),
            EdgeImage::Degenerate(_) => None,
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GraphMap) -> Result<GraphMap> {
        if self.target != other.source {
            return input("composition of maps with mismatched target/source");
        }
        let vertex_map = self.vertex_map.iter().map(|&v| other.vertex(v)).collect();
        let edge_map = self
            .edge_map
            .iter()
            .map(|img| match *img {
                EdgeImage::Degenerate(w) => EdgeImage::Degenerate(other.vertex(w)),
                EdgeImage::Edge(d) => match other.dart(d) {
                    Some(d2) => EdgeImage::Edge(d2),
                    None => EdgeImage::Degenerate(other.vertex(self.target.tail(d))),
                },
            })
            .collect();
        GraphMap::new(self.source.clone(), other.target.clone(), vertex_map, edge_map)
    }

    /// True when some edge is collapsed onto a vertex.
    pub fn has_degenerate_edges(&self) -> bool {
        self.edge_map.iter().any(|img| matches!(img, EdgeImage::Degenerate(_)))
    }

    pub fn is_isomorphism(&self) -> bool {
        let n = self.target.vertex_count();
        let m = self.target.edge_count();
        if self.source.vertex_count() != n || self.source.edge_count() != m {
            return false;
        }
        let mut seen_v = vec![false; n];
        for &w in &self.vertex_map {
            if std::mem::replace(&mut seen_v[w], true) {
                return false;
            }
        }
        let mut seen_e = vec![false; m];
        for img in &self.edge_map {
            match *img {
                EdgeImage::Edge(d) => {
                    if std::mem::replace(&mut seen_e[d.edge], true) {
                        return false;
                    }
                }
                EdgeImage::Degenerate(_) => return false,
            }
        }
        true
    }
}

/// All maps `source -> target`, enumerated by backtracking. Intended for small
/// brute-force checks only.
pub fn all_maps(source: &FinGraph, target: &FinGraph) -> Vec<GraphMap> {
    let mut out = Vec::new();
    let n = source.vertex_count();
    let mut assignment = vec![0usize; n];
    if n == 0 {
        extend_edges(source, target, &assignment, &mut out);
        return out;
    }
    if target.vertex_count() == 0 {
        return out;
    }
    loop {
        extend_edges(source, target, &assignment, &mut out);
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            assignment[i] += 1;
            if assignment[i] < target.vertex_count() {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

fn extend_edges(source: &FinGraph, target: &FinGraph, assignment: &[usize], out: &mut Vec<GraphMap>) {
    let mut options: Vec<Vec<EdgeImage>> = Vec::with_capacity(source.edge_count());
    for e in source.edges() {
        let (a, b) = source.endpoints(e);
        let (fa, fb) = (assignment[a], assignment[b]);
        let mut opts: Vec<EdgeImage> =
            target.darts_between(fa, fb).into_iter().map(EdgeImage::Edge).collect();
        if fa == fb {
            opts.push(EdgeImage::Degenerate(fa));
        }
        if opts.is_empty() {
            return;
        }
        options.push(opts);
    }
    for choice in cartesian(&options) {
        out.push(GraphMap {
            source: source.clone(),
            target: target.clone(),
            vertex_map: assignment.to_vec(),
            edge_map: choice,
        });
    }
}

/// Every way of picking one element from each list; one empty pick for no lists.
pub(crate) fn cartesian<T: Clone>(options: &[Vec<T>]) -> Vec<Vec<T>> {
    options.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut next = prefix.clone();
                    next.push(o.clone());
                    next
                })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_incompatible_edge_image() {
        let i = FinGraph::interval();
        let err = GraphMap::new(i.clone(), i.clone(), vec![0, 1], vec![EdgeImage::Edge(Dart::backward(0))]);
        assert!(err.is_err());
        let err = GraphMap::new(i.clone(), i.clone(), vec![0, 1], vec![EdgeImage::Degenerate(0)]);
        assert!(err.is_err());
    }

    #[test]
    fn composition_collapses_through_degenerate() {
        let c3 = FinGraph::cycle(3);
        let t = c3.terminal_map();
        let id = c3.identity();
        let comp = id.then(&t).unwrap();
        assert_eq!(comp, t);
    }

    #[test]
    fn maps_from_interval_count_darts_and_vertices() {
        // |Hom(I, X)| = |V| + 2|E| for undirected reflexive graphs
        assert_eq!(all_maps(&FinGraph::interval(), &FinGraph::interval()).len(), 4);
        assert_eq!(all_maps(&FinGraph::interval(), &FinGraph::cycle(3)).len(), 9);
        assert_eq!(all_maps(&FinGraph::interval(), &FinGraph::bouquet(1)).len(), 3);
        assert_eq!(all_maps(&FinGraph::interval(), &FinGraph::discrete(3)).len(), 3);
    }

    #[test]
    fn star_of_loop_has_two_darts() {
        let b = FinGraph::bouquet(2);
        assert_eq!(b.star_of(0).len(), 4);
    }
}
