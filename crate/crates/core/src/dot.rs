//! Graphviz DOT renderings. Output is deterministic.

use std::fmt::Write as _;

use crate::automaton::SubgroupAutomaton;
use crate::fingroupoid::FinGroupoid;
use crate::graph::{FinGraph, GraphMap};
use crate::space::pi0;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One cluster per connected component; the basepoint is drawn doubled.
pub fn graph(name: &str, x: &FinGraph) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    write_clusters(&mut out, x, "", |_| None);
    out.push_str("}\n");
    out
}

fn write_clusters(out: &mut String, x: &FinGraph, prefix: &str, color: impl Fn(usize) -> Option<usize>) {
    let comps = pi0(x);
    for (c, members) in comps.members().iter().enumerate() {
        let _ = writeln!(out, "  subgraph \"cluster_{prefix}{c}\" {{");
        let _ = writeln!(out, "    label={};", quote(&format!("{prefix}component {c}")));
        for &v in members {
            let mut attrs = format!("label={}", quote(x.vertex_label(v)));
            if x.basepoint() == Some(v) {
                attrs.push_str(", shape=doublecircle");
            }
            if let Some(k) = color(v) {
                let _ = write!(attrs, ", colorscheme=set312, style=filled, fillcolor={}", k % 12 + 1);
            }
            let _ = writeln!(out, "    {} [{attrs}];", quote(&format!("{prefix}v{v}")));
        }
        for e in x.edges() {
            let (a, b) = x.endpoints(e);
            if comps.of_vertex[a] == c {
                let _ = writeln!(
                    out,
                    "    {} -> {} [label={}];",
                    quote(&format!("{prefix}v{a}")),
                    quote(&format!("{prefix}v{b}")),
                    quote(x.edge_label(e))
                );
            }
        }
        out.push_str("  }\n");
    }
}

/// Source and target side by side; source vertices are coloured by their image.
pub fn map(name: &str, f: &GraphMap) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=LR;\n", quote(name));
    write_clusters(&mut out, f.source(), "src:", |v| Some(f.vertex(v)));
    write_clusters(&mut out, f.target(), "tgt:", Some);
    out.push_str("}\n");
    out
}

pub fn automaton(name: &str, a: &SubgroupAutomaton) -> String {
    let mut out = format!("digraph {} {{\n  0 [shape=doublecircle];\n", quote(name));
    for v in 1..a.vertex_count() {
        let _ = writeln!(out, "  {v};");
    }
    for e in a.edges() {
        let _ = writeln!(out, "  {} -> {} [label=\"x{}\"];", e.source, e.target, e.label);
    }
    out.push_str("}\n");
    out
}

/// Objects with their non-identity morphisms.
pub fn fingroupoid(name: &str, g: &FinGroupoid) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for x in g.object_ids() {
        let _ = writeln!(out, "  {};", quote(g.object_label(x)));
    }
    for f in g.morphism_ids() {
        if g.identity(g.src(f)) == f {
            continue;
        }
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(g.object_label(g.src(f))),
            quote(g.object_label(g.dst(f))),
            quote(g.morphism_label(f))
        );
    }
    out.push_str("}\n");
    out
}

/// Number of clusters in a rendering.
pub fn cluster_count(dot: &str) -> usize {
    dot.lines().filter(|l| l.trim_start().starts_with("subgraph \"cluster_")).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_cluster_per_component() {
        let x = FinGraph::cycle(3).disjoint_union(&FinGraph::interval());
        let d = graph("x", &x);
        assert_eq!(cluster_count(&d), 2);
        assert_eq!(d.matches("->").count(), 4);
        assert_eq!(d, graph("x", &x));
    }
}
