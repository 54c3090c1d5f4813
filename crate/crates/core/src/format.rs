//! The shared line-oriented text format.
//!
//! A document is a sequence of sections. A section starts with a header
//! `kind: name ...` at the start of a line; the lines after it, up to the
//! next header, are its body. `#` starts a comment. Labels are single tokens
//! without whitespace that do not start with `~`.
//!
//! ```text
//! graph: C6
//!   vertices: 0 1 2 3 4 5
//!   edge: e0 0 1
//!   basepoint: 0
//! map: p C6 C3
//!   v 0 -> 0
//!   e e0 -> f0        # also `~f0` for the reversed edge, or `deg 0`
//! groupoid: P of C6
//!   component: 0 base 0 rank 1 generators e5
//! automaton: H rank 2
//!   states: 2
//!   edge: 0 x0 1
//! automaton: K rank 2
//!   generator: x0 x1^-1
//! fingroupoid: G
//!   object: a
//!   morphism: f a a
//!   identity: a 1a
//!   compose: f f 1a
//! functor: F G H
//!   object: a -> b
//!   morphism: f -> g
//! action: swap on S
//!   degree: 2
//!   gen: (12) | vertices: 0 2 1 | edges: e1 e0
//! monodromy: M on circle
//!   base: 0
//!   fiber: 5
//!   perm: (12)(354)
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automaton::{LabelledEdge, SubgroupAutomaton};
use crate::covers::MonodromyAction;
use crate::error::{Error, Result};
use crate::fingroupoid::{FinFunctor, FinGroupoid};
use crate::graph::{Dart, EdgeImage, FinGraph, GraphMap};
use crate::group::{FinGroup, Perm};
use crate::presentation::{shape1, PresGroupoid};
use crate::quotients::GraphAction;
use crate::word::{Letter, Word};

const KINDS: [&str; 8] = ["graph", "map", "groupoid", "automaton", "fingroupoid", "functor", "action", "monodromy"];

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Graph(FinGraph),
    Map(GraphMap),
    Groupoid(PresGroupoid),
    Automaton(SubgroupAutomaton),
    FinGroupoid(FinGroupoid),
    Functor(FinFunctor),
    Action(GraphAction),
    Monodromy(MonodromyAction),
}

impl Item {
    pub fn kind(&self) -> &'static str {
        match self {
            Item::Graph(_) => "graph",
            Item::Map(_) => "map",
            Item::Groupoid(_) => "groupoid",
            Item::Automaton(_) => "automaton",
            Item::FinGroupoid(_) => "fingroupoid",
            Item::Functor(_) => "functor",
            Item::Action(_) => "action",
            Item::Monodromy(_) => "monodromy",
        }
    }
}

/// Named items in document order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Document {
    pub items: Vec<(String, Item)>,
}

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

/// Attaches a line number to a validation error.
fn at<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::Parse { line, message: other.to_string() },
    })
}

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    /// Splits `key: rest` or `key rest`.
    fn keyword(&self) -> (&'a str, &'a str) {
        let t = self.text;
        let end = t.find(|c: char| c.is_whitespace() || c == ':').unwrap_or(t.len());
        let rest = t[end..].trim_start();
        let rest = rest.strip_prefix(':').unwrap_or(rest).trim();
        (&t[..end], rest)
    }
}

struct Section<'a> {
    header: Line<'a>,
    kind: &'a str,
    args: Vec<&'a str>,
    body: Vec<Line<'a>>,
}

fn sections(text: &str) -> Result<Vec<Section<'_>>> {
    let mut out: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let line = Line { number, text: content };
        let (key, rest) = line.keyword();
        let is_header = KINDS.contains(&key) && content[key.len()..].trim_start().starts_with(':');
        if is_header {
            out.push(Section { kind: key, args: rest.split_whitespace().collect(), header: line, body: Vec::new() });
        } else {
            match out.last_mut() {
                Some(s) => s.body.push(line),
                None => return parse_err(number, format!("`{content}` appears before any section header")),
            }
        }
    }
    Ok(out)
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = Document::default();
        for s in sections(text)? {
            let name = match s.args.first() {
                Some(n) => n.to_string(),
                None => return parse_err(s.header.number, format!("{} section needs a name", s.kind)),
            };
            if doc.items.iter().any(|(n, _)| *n == name) {
                return parse_err(s.header.number, format!("name `{name}` is defined twice"));
            }
            let item = match s.kind {
                "graph" => Item::Graph(parse_graph(&s)?),
                "map" => Item::Map(parse_map(&s, &doc)?),
                "groupoid" => Item::Groupoid(parse_groupoid(&s, &doc)?),
                "automaton" => Item::Automaton(parse_automaton(&s)?),
                "fingroupoid" => Item::FinGroupoid(parse_fingroupoid(&s)?),
                "functor" => Item::Functor(parse_functor(&s, &doc)?),
                "action" => Item::Action(parse_action(&s, &doc)?),
                "monodromy" => Item::Monodromy(parse_monodromy(&s, &doc)?),
                _ => unreachable!("header kinds are filtered"),
            };
            doc.items.push((name, item));
        }
        Ok(doc)
    }

    pub fn push(&mut self, name: impl Into<String>, item: Item) {
        self.items.push((name.into(), item));
    }

    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    /// The named item of a kind, or the only one of that kind when `name` is `None`.
    pub fn pick(&self, kind: &str, name: Option<&str>) -> Result<&Item> {
        let mut found = self.items.iter().filter(|(n, i)| i.kind() == kind && name.is_none_or(|m| m == n));
        match (found.next(), found.next(), name) {
            (Some((_, i)), None, _) => Ok(i),
            (Some(_), Some(_), _) => Err(Error::Input(format!("several {kind} sections; name one"))),
            (None, _, Some(n)) => Err(Error::UnknownId { kind: "section", id: n.to_string() }),
            (None, _, None) => Err(Error::Input(format!("no {kind} section in the document"))),
        }
    }

    fn graph_named(&self, name: &str, line: usize) -> Result<&FinGraph> {
        match self.get(name) {
            Some(Item::Graph(g)) => Ok(g),
            _ => parse_err(line, format!("unknown graph `{name}`")),
        }
    }

    fn fingroupoid_named(&self, name: &str, line: usize) -> Result<&FinGroupoid> {
        match self.get(name) {
            Some(Item::FinGroupoid(g)) => Ok(g),
            _ => parse_err(line, format!("unknown fingroupoid `{name}`")),
        }
    }

    /// The name under which a graph appears, for cross references.
    fn name_of_graph(&self, g: &FinGraph) -> Option<&str> {
        self.items.iter().find(|(_, i)| matches!(i, Item::Graph(h) if h == g)).map(|(n, _)| n.as_str())
    }

    fn name_of_fingroupoid(&self, g: &FinGroupoid) -> Option<&str> {
        self.items.iter().find(|(_, i)| matches!(i, Item::FinGroupoid(h) if h == g)).map(|(n, _)| n.as_str())
    }

    /// Writes the document back out. Referenced graphs and groupoids must
    /// appear in the document as their own sections.
    pub fn serialize(&self) -> Result<String> {
        let mut out = String::new();
        for (name, item) in &self.items {
            check_label(name)?;
            match item {
                Item::Graph(g) => write_graph(&mut out, name, g)?,
                Item::Map(m) => {
                    let (s, t) = (self.require_graph(m.source())?, self.require_graph(m.target())?);
                    write_map(&mut out, name, s, t, m)
                }
                Item::Groupoid(p) => {
                    let g = self.require_graph(p.graph())?;
                    write_groupoid(&mut out, name, g, p)
                }
                Item::Automaton(a) => write_automaton(&mut out, name, a),
                Item::FinGroupoid(g) => write_fingroupoid(&mut out, name, g)?,
                Item::Functor(f) => {
                    let s = self.name_of_fingroupoid(f.source()).ok_or_else(|| missing("fingroupoid"))?;
                    let t = self.name_of_fingroupoid(f.target()).ok_or_else(|| missing("fingroupoid"))?;
                    write_functor(&mut out, name, s, t, f)
                }
                Item::Action(a) => {
                    let g = self.require_graph(a.space())?;
                    write_action(&mut out, name, g, a)
                }
                Item::Monodromy(m) => {
                    let g = self.require_graph(&m.base)?;
                    write_monodromy(&mut out, name, g, m)
                }
            }
        }
        Ok(out)
    }

    fn require_graph(&self, g: &FinGraph) -> Result<&str> {
        self.name_of_graph(g).ok_or_else(|| missing("graph"))
    }
}

fn missing(kind: &str) -> Error {
    Error::Input(format!("a referenced {kind} has no section of its own"))
}

fn check_label(l: &str) -> Result<()> {
    if l.is_empty() || l.contains(char::is_whitespace) || l.starts_with('~') || l.contains(['#', '|']) || l == "->" {
        return Err(Error::Input(format!("label `{l}` cannot be written in the text format")));
    }
    Ok(())
}

fn parse_graph(s: &Section) -> Result<FinGraph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, String, usize)> = Vec::new();
    let mut basepoint = None;
    for l in &s.body {
        let (key, rest) = l.keyword();
        let toks: Vec<&str> = rest.split_whitespace().collect();
        match key {
            "vertices" => vertices.extend(toks.iter().map(|t| t.to_string())),
            "edge" | "edges" => match toks.as_slice() {
                [id, u, v] => edges.push((id.to_string(), u.to_string(), v.to_string(), l.number)),
                _ => return parse_err(l.number, "expected `edge: id u v`"),
            },
            "basepoint" => match toks.as_slice() {
                [v] => basepoint = Some((v.to_string(), l.number)),
                _ => return parse_err(l.number, "expected `basepoint: v`"),
            },
            _ => return parse_err(l.number, format!("unknown graph line `{key}`")),
        }
    }
    let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    if index.len() != vertices.len() {
        return parse_err(s.header.number, "a vertex label is repeated");
    }
    let lookup = |v: &str, line: usize| match index.get(v) {
        Some(&i) => Ok(i),
        None => parse_err(line, format!("unknown vertex `{v}`")),
    };
    let mut endpoints = Vec::new();
    let mut edge_labels = Vec::new();
    for (id, u, v, line) in &edges {
        if edge_labels.contains(id) {
            return parse_err(*line, format!("edge `{id}` is defined twice"));
        }
        endpoints.push((lookup(u, *line)?, lookup(v, *line)?));
        edge_labels.push(id.clone());
    }
    let base = match basepoint {
        Some((v, line)) => Some(lookup(&v, line)?),
        None => None,
    };
    at(s.header.number, FinGraph::with_labels(vertices, edge_labels, endpoints, base))
}

fn write_graph(out: &mut String, name: &str, g: &FinGraph) -> Result<()> {
    for l in g.vertex_labels().iter().chain(g.edge_labels()) {
        check_label(l)?;
    }
    let _ = writeln!(out, "graph: {name}");
    let _ = writeln!(out, "  vertices: {}", g.vertex_labels().join(" "));
    for e in g.edges() {
        let (a, b) = g.endpoints(e);
        let _ = writeln!(out, "  edge: {} {} {}", g.edge_label(e), g.vertex_label(a), g.vertex_label(b));
    }
    if let Some(b) = g.basepoint() {
        let _ = writeln!(out, "  basepoint: {}", g.vertex_label(b));
    }
    Ok(())
}

fn two_args<'a>(s: &Section<'a>, what: &str) -> Result<(&'a str, &'a str, &'a str)> {
    match s.args.as_slice() {
        [n, a, b] => Ok((n, a, b)),
        _ => parse_err(s.header.number, format!("expected `{}: name {what}`", s.kind)),
    }
}

fn of_arg<'a>(s: &Section<'a>, word: &str) -> Result<&'a str> {
    match s.args.as_slice() {
        [_, w, g] if *w == word => Ok(g),
        _ => parse_err(s.header.number, format!("expected `{}: name {word} graph`", s.kind)),
    }
}

/// Splits `lhs -> rhs`.
fn arrow<'a>(l: &Line<'a>, rest: &'a str) -> Result<(&'a str, &'a str)> {
    match rest.split_once("->") {
        Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => Ok((a.trim(), b.trim())),
        _ => parse_err(l.number, "expected `lhs -> rhs`"),
    }
}

fn parse_map(s: &Section, doc: &Document) -> Result<GraphMap> {
    let (_, src, dst) = two_args(s, "source target")?;
    let source = doc.graph_named(src, s.header.number)?.clone();
    let target = doc.graph_named(dst, s.header.number)?.clone();
    let mut vertex_map = vec![None; source.vertex_count()];
    let mut edge_map: Vec<Option<EdgeImage>> = vec![None; source.edge_count()];
    for l in &s.body {
        let (key, rest) = l.keyword();
        let (lhs, rhs) = arrow(l, rest)?;
        match key {
            "v" => {
                let v = source.vertex_by_label(lhs).ok_or(()).or_else(|_| parse_err(l.number, format!("unknown source vertex `{lhs}`")))?;
                let w = target.vertex_by_label(rhs).ok_or(()).or_else(|_| parse_err(l.number, format!("unknown target vertex `{rhs}`")))?;
                vertex_map[v] = Some(w);
            }
            "e" => {
                let e = source.edge_by_label(lhs).ok_or(()).or_else(|_| parse_err(l.number, format!("unknown source edge `{lhs}`")))?;
                let img = if let Some(w) = rhs.strip_prefix("deg") {
                    let w = w.trim();
                    let w = target.vertex_by_label(w).ok_or(()).or_else(|_| parse_err(l.number, format!("unknown target vertex `{w}`")))?;
                    EdgeImage::Degenerate(w)
                } else {
                    let (label, reversed) = match rhs.strip_prefix('~') {
                        Some(r) => (r, true),
                        None => (rhs, false),
                    };
                    let f = target.edge_by_label(label).ok_or(()).or_else(|_| parse_err(l.number, format!("unknown target edge `{label}`")))?;
                    EdgeImage::Edge(Dart { edge: f, reversed })
                };
                edge_map[e] = Some(img);
            }
            _ => return parse_err(l.number, format!("unknown map line `{key}`")),
        }
    }
    let vertex_map: Vec<usize> = match vertex_map.iter().position(Option::is_none) {
        Some(v) => return parse_err(s.header.number, format!("vertex `{}` has no image", source.vertex_label(v))),
        None => vertex_map.into_iter().map(|v| v.expect("checked")).collect(),
    };
    // unlisted edges take their only possible image
    let inferred = if edge_map.iter().any(Option::is_none) {
        Some(at(s.header.number, GraphMap::from_vertex_map(source.clone(), target.clone(), vertex_map.clone()))?)
    } else {
        None
    };
    let edges = edge_map
        .into_iter()
        .enumerate()
        .map(|(e, img)| img.unwrap_or_else(|| inferred.as_ref().expect("inferred").edge(e)))
        .collect();
    at(s.header.number, GraphMap::new(source, target, vertex_map, edges))
}

fn write_map(out: &mut String, name: &str, src: &str, dst: &str, m: &GraphMap) {
    let (s, t) = (m.source(), m.target());
    let _ = writeln!(out, "map: {name} {src} {dst}");
    for v in s.vertices() {
        let _ = writeln!(out, "  v {} -> {}", s.vertex_label(v), t.vertex_label(m.vertex(v)));
    }
    for e in s.edges() {
        let img = match m.edge(e) {
            EdgeImage::Edge(d) => format!("{}{}", if d.reversed { "~" } else { "" }, t.edge_label(d.edge)),
            EdgeImage::Degenerate(w) => format!("deg {}", t.vertex_label(w)),
        };
        let _ = writeln!(out, "  e {} -> {img}", s.edge_label(e));
    }
}

fn parse_groupoid(s: &Section, doc: &Document) -> Result<PresGroupoid> {
    let g = doc.graph_named(of_arg(s, "of")?, s.header.number)?;
    let p = shape1(g);
    for l in &s.body {
        let (key, rest) = l.keyword();
        if key != "component" {
            return parse_err(l.number, format!("unknown groupoid line `{key}`"));
        }
        let toks: Vec<&str> = rest.split_whitespace().collect();
        let (c, base, rank, gens) = match toks.as_slice() {
            [c, "base", b, "rank", r, "generators", gens @ ..] => (c, b, r, gens),
            _ => return parse_err(l.number, "expected `component: c base v rank r generators e...`"),
        };
        let c: usize = c.parse().or_else(|_| parse_err(l.number, format!("bad component index `{c}`")))?;
        if c >= p.component_count() {
            return parse_err(l.number, format!("component {c} does not exist"));
        }
        let ok = g.vertex_label(p.base(c)) == *base
            && p.rank(c).to_string() == *rank
            && p.generator_edges(c).iter().map(|&e| g.edge_label(e)).eq(gens.iter().copied());
        if !ok {
            return parse_err(l.number, format!("component {c} does not match the spanning-forest presentation"));
        }
    }
    Ok(p)
}

fn write_groupoid(out: &mut String, name: &str, graph: &str, p: &PresGroupoid) {
    let g = p.graph();
    let _ = writeln!(out, "groupoid: {name} of {graph}");
    for c in 0..p.component_count() {
        let gens: Vec<&str> = p.generator_edges(c).iter().map(|&e| g.edge_label(e)).collect();
        let _ = writeln!(
            out,
            "  component: {c} base {} rank {} generators {}",
            g.vertex_label(p.base(c)),
            p.rank(c),
            gens.join(" ")
        );
    }
}

/// Parses a word such as `x0 x1^-1`, or `1` for the empty word.
pub fn parse_word(s: &str) -> std::result::Result<Word, String> {
    let mut letters = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (body, inverse) = match tok.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (tok, false),
        };
        let g = body
            .strip_prefix('x')
            .and_then(|n| n.parse::<usize>().ok())
            .ok_or_else(|| format!("bad letter `{tok}`"))?;
        letters.push(Letter::new(g, inverse));
    }
    Ok(Word::from_letters(letters))
}

fn parse_automaton(s: &Section) -> Result<SubgroupAutomaton> {
    let rank = match s.args.as_slice() {
        [_, "rank", r] => r.parse::<usize>().or_else(|_| parse_err(s.header.number, format!("bad rank `{r}`")))?,
        _ => return parse_err(s.header.number, "expected `automaton: name rank r`"),
    };
    let mut states = None;
    let mut edges = Vec::new();
    let mut generators = Vec::new();
    for l in &s.body {
        let (key, rest) = l.keyword();
        match key {
            "states" => states = Some(rest.parse::<usize>().or_else(|_| parse_err(l.number, "bad state count"))?),
            "edge" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let [a, label, b] = toks.as_slice() else {
                    return parse_err(l.number, "expected `edge: source xi target`");
                };
                let w = parse_word(label).or_else(|m| parse_err(l.number, m))?;
                let letter = match w.letters() {
                    [one] if !one.inverse => one.generator,
                    _ => return parse_err(l.number, "an edge label is one generator `xi`"),
                };
                let a = a.parse::<usize>().or_else(|_| parse_err(l.number, format!("bad state `{a}`")))?;
                let b = b.parse::<usize>().or_else(|_| parse_err(l.number, format!("bad state `{b}`")))?;
                edges.push((LabelledEdge { source: a, label: letter, target: b }, l.number));
            }
            "generator" => generators.push((parse_word(rest).or_else(|m| parse_err(l.number, m))?, l.number)),
            _ => return parse_err(l.number, format!("unknown automaton line `{key}`")),
        }
    }
    for (w, line) in &generators {
        if w.rank_needed() > rank {
            return parse_err(*line, format!("generator uses a letter beyond rank {rank}"));
        }
    }
    if !generators.is_empty() {
        if !edges.is_empty() || states.is_some() {
            return parse_err(s.header.number, "give either generators or states and edges, not both");
        }
        let gens: Vec<Word> = generators.into_iter().map(|(w, _)| w).collect();
        return Ok(SubgroupAutomaton::from_generators(rank, &gens));
    }
    let n = states.unwrap_or(1).max(1);
    for (e, line) in &edges {
        if e.source >= n || e.target >= n {
            return parse_err(*line, format!("state out of range 0..{n}"));
        }
        if e.label >= rank {
            return parse_err(*line, format!("label x{} is beyond rank {rank}", e.label));
        }
    }
    Ok(SubgroupAutomaton::fold_raw(rank, n, edges.into_iter().map(|(e, _)| e).collect()))
}

fn write_automaton(out: &mut String, name: &str, a: &SubgroupAutomaton) {
    let _ = writeln!(out, "automaton: {name} rank {}", a.ambient_rank());
    let _ = writeln!(out, "  states: {}", a.vertex_count());
    for e in a.edges() {
        let _ = writeln!(out, "  edge: {} x{} {}", e.source, e.label, e.target);
    }
}

fn parse_fingroupoid(s: &Section) -> Result<FinGroupoid> {
    let mut objects: Vec<String> = Vec::new();
    let mut morphisms: Vec<(String, String, String, usize)> = Vec::new();
    let mut identities: Vec<(String, String, usize)> = Vec::new();
    let mut compositions: Vec<(String, String, String, usize)> = Vec::new();
    for l in &s.body {
        let (key, rest) = l.keyword();
        let toks: Vec<&str> = rest.split_whitespace().collect();
        match (key, toks.as_slice()) {
            ("object" | "objects", ts) if !ts.is_empty() => objects.extend(ts.iter().map(|t| t.to_string())),
            ("morphism", [f, a, b]) => morphisms.push((f.to_string(), a.to_string(), b.to_string(), l.number)),
            ("identity", [x, f]) => identities.push((x.to_string(), f.to_string(), l.number)),
            ("compose", [f, g, h]) => compositions.push((f.to_string(), g.to_string(), h.to_string(), l.number)),
            ("object" | "objects" | "morphism" | "identity" | "compose", _) => {
                return parse_err(l.number, format!("wrong number of fields for `{key}`"))
            }
            _ => return parse_err(l.number, format!("unknown fingroupoid line `{key}`")),
        }
    }
    let obj: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
    let mor: HashMap<&str, usize> = morphisms.iter().enumerate().map(|(i, m)| (m.0.as_str(), i)).collect();
    if obj.len() != objects.len() || mor.len() != morphisms.len() {
        return parse_err(s.header.number, "a label is repeated");
    }
    let o = |x: &str, line: usize| obj.get(x).copied().ok_or(()).or_else(|_| parse_err(line, format!("unknown object `{x}`")));
    let m = |f: &str, line: usize| mor.get(f).copied().ok_or(()).or_else(|_| parse_err(line, format!("unknown morphism `{f}`")));
    let mut mors = Vec::with_capacity(morphisms.len());
    for (f, a, b, line) in &morphisms {
        mors.push((f.clone(), o(a, *line)?, o(b, *line)?));
    }
    let mut ids = vec![None; objects.len()];
    for (x, f, line) in &identities {
        ids[o(x, *line)?] = Some(m(f, *line)?);
    }
    let ids: Vec<usize> = match ids.iter().position(Option::is_none) {
        Some(x) => return parse_err(s.header.number, format!("object `{}` has no identity", objects[x])),
        None => ids.into_iter().map(|i| i.expect("checked")).collect(),
    };
    let mut triples = Vec::with_capacity(compositions.len());
    for (f, g, h, line) in &compositions {
        triples.push((m(f, *line)?, m(g, *line)?, m(h, *line)?));
    }
    at(s.header.number, FinGroupoid::new(objects, mors, ids, &triples))
}

fn write_fingroupoid(out: &mut String, name: &str, g: &FinGroupoid) -> Result<()> {
    for x in g.object_ids() {
        check_label(g.object_label(x))?;
    }
    for f in g.morphism_ids() {
        check_label(g.morphism_label(f))?;
    }
    let _ = writeln!(out, "fingroupoid: {name}");
    for x in g.object_ids() {
        let _ = writeln!(out, "  object: {}", g.object_label(x));
    }
    for f in g.morphism_ids() {
        let _ = writeln!(out, "  morphism: {} {} {}", g.morphism_label(f), g.object_label(g.src(f)), g.object_label(g.dst(f)));
    }
    for x in g.object_ids() {
        let _ = writeln!(out, "  identity: {} {}", g.object_label(x), g.morphism_label(g.identity(x)));
    }
    for (f, h, k) in g.compositions() {
        let _ = writeln!(out, "  compose: {} {} {}", g.morphism_label(f), g.morphism_label(h), g.morphism_label(k));
    }
    Ok(())
}

fn parse_functor(s: &Section, doc: &Document) -> Result<FinFunctor> {
    let (_, src, dst) = two_args(s, "source target")?;
    let source = doc.fingroupoid_named(src, s.header.number)?.clone();
    let target = doc.fingroupoid_named(dst, s.header.number)?.clone();
    let mut objects = vec![None; source.object_count()];
    let mut morphisms = vec![None; source.morphism_count()];
    for l in &s.body {
        let (key, rest) = l.keyword();
        let (lhs, rhs) = arrow(l, rest)?;
        match key {
            "object" => {
                let x = source.object_by_label(lhs).ok_or(()).or_else(|_| parse_err(l.number, format!("unknown source object `{lhs}`")))?;
                let y = target.object_by_label(rhs).ok_or(()).or_else(|_| parse_err(l.number, format!("unknown target object `{rhs}`")))?;
                objects[x] = Some(y);
            }
            "morphism" => {
                let f = source.morphism_by_label(lhs).ok_or(()).or_else(|_| parse_err(l.number, format!("unknown source morphism `{lhs}`")))?;
                let g = target.morphism_by_label(rhs).ok_or(()).or_else(|_| parse_err(l.number, format!("unknown target morphism `{rhs}`")))?;
                morphisms[f] = Some(g);
            }
            _ => return parse_err(l.number, format!("unknown functor line `{key}`")),
        }
    }
    if let Some(x) = objects.iter().position(Option::is_none) {
        return parse_err(s.header.number, format!("object `{}` has no image", source.object_label(x)));
    }
    if let Some(f) = morphisms.iter().position(Option::is_none) {
        return parse_err(s.header.number, format!("morphism `{}` has no image", source.morphism_label(f)));
    }
    let objects = objects.into_iter().map(|o| o.expect("checked")).collect();
    let morphisms = morphisms.into_iter().map(|o| o.expect("checked")).collect();
    at(s.header.number, FinFunctor::new(source, target, objects, morphisms))
}

fn write_functor(out: &mut String, name: &str, src: &str, dst: &str, f: &FinFunctor) {
    let (s, t) = (f.source(), f.target());
    let _ = writeln!(out, "functor: {name} {src} {dst}");
    for x in s.object_ids() {
        let _ = writeln!(out, "  object: {} -> {}", s.object_label(x), t.object_label(f.object(x)));
    }
    for m in s.morphism_ids() {
        let _ = writeln!(out, "  morphism: {} -> {}", s.morphism_label(m), t.morphism_label(f.morphism(m)));
    }
}

fn parse_action(s: &Section, doc: &Document) -> Result<GraphAction> {
    let space = doc.graph_named(of_arg(s, "on")?, s.header.number)?.clone();
    let mut degree = None;
    let mut gens: Vec<(String, Option<Vec<String>>, Option<Vec<String>>, usize)> = Vec::new();
    for l in &s.body {
        let (key, rest) = l.keyword();
        match key {
            "degree" => degree = Some(rest.parse::<usize>().or_else(|_| parse_err(l.number, "bad degree"))?),
            "gen" => {
                let mut parts = rest.split('|').map(str::trim);
                let perm = parts.next().unwrap_or("").to_string();
                let (mut vs, mut es) = (None, None);
                for p in parts {
                    let (k, v) = p.split_once(':').ok_or(()).or_else(|_| parse_err(l.number, format!("expected `vertices:` or `edges:` in `{p}`")))?;
                    let list = v.split_whitespace().map(String::from).collect();
                    match k.trim() {
                        "vertices" => vs = Some(list),
                        "edges" => es = Some(list),
                        other => return parse_err(l.number, format!("unknown generator part `{other}`")),
                    }
                }
                gens.push((perm, vs, es, l.number));
            }
            _ => return parse_err(l.number, format!("unknown action line `{key}`")),
        }
    }
    let Some(degree) = degree else {
        return parse_err(s.header.number, "action needs `degree: n`");
    };
    let mut perms = Vec::new();
    let mut maps = Vec::new();
    for (perm, vs, es, line) in gens {
        perms.push(at(line, Perm::parse(&perm, degree))?);
        let Some(vs) = vs else {
            return parse_err(line, "generator needs `vertices:` images");
        };
        if vs.len() != space.vertex_count() {
            return parse_err(line, format!("{} vertex images for {} vertices", vs.len(), space.vertex_count()));
        }
        let vmap = vs
            .iter()
            .map(|v| space.vertex_by_label(v).ok_or(()).or_else(|_| parse_err(line, format!("unknown vertex `{v}`"))))
            .collect::<Result<Vec<_>>>()?;
        let map = match es {
            None => at(line, GraphMap::from_vertex_map(space.clone(), space.clone(), vmap))?,
            Some(es) => {
                if es.len() != space.edge_count() {
                    return parse_err(line, format!("{} edge images for {} edges", es.len(), space.edge_count()));
                }
                let emap = es
                    .iter()
                    .map(|e| {
                        let (label, reversed) = e.strip_prefix('~').map_or((e.as_str(), false), |r| (r, true));
                        space
                            .edge_by_label(label)
                            .map(|edge| EdgeImage::Edge(Dart { edge, reversed }))
                            .ok_or(())
                            .or_else(|_| parse_err(line, format!("unknown edge `{label}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                at(line, GraphMap::new(space.clone(), space.clone(), vmap, emap))?
            }
        };
        maps.push(map);
    }
    let group = at(s.header.number, FinGroup::generated_by(degree, perms))?;
    at(s.header.number, GraphAction::new(group, space, maps))
}

fn write_action(out: &mut String, name: &str, graph: &str, a: &GraphAction) {
    let grp = a.group();
    let x = a.space();
    let _ = writeln!(out, "action: {name} on {graph}");
    let _ = writeln!(out, "  degree: {}", grp.degree());
    for (g, idx) in grp.generators().iter().zip(grp.generator_indices()) {
        let m = a.map(idx);
        let vs: Vec<&str> = x.vertices().map(|v| x.vertex_label(m.vertex(v))).collect();
        let es: Vec<String> = x
            .edges()
            .map(|e| {
                let d = m.dart(Dart::forward(e)).expect("automorphism");
                format!("{}{}", if d.reversed { "~" } else { "" }, x.edge_label(d.edge))
            })
            .collect();
        let _ = writeln!(out, "  gen: {g} | vertices: {} | edges: {}", vs.join(" "), es.join(" "));
    }
}

fn parse_monodromy(s: &Section, doc: &Document) -> Result<MonodromyAction> {
    let base = doc.graph_named(of_arg(s, "on")?, s.header.number)?.clone();
    let (mut vertex, mut fiber) = (None, None);
    let mut perms = Vec::new();
    for l in &s.body {
        let (key, rest) = l.keyword();
        match key {
            "base" => {
                vertex = Some(base.vertex_by_label(rest).ok_or(()).or_else(|_| parse_err(l.number, format!("unknown vertex `{rest}`")))?)
            }
            "fiber" => fiber = Some(rest.parse::<usize>().or_else(|_| parse_err(l.number, "bad fiber size"))?),
            "perm" => perms.push((rest.to_string(), l.number)),
            _ => return parse_err(l.number, format!("unknown monodromy line `{key}`")),
        }
    }
    let Some(n) = fiber else {
        return parse_err(s.header.number, "monodromy needs `fiber: n`");
    };
    let vertex = vertex.or(base.basepoint()).unwrap_or(0);
    let perms = perms.into_iter().map(|(p, line)| at(line, Perm::parse(&p, n))).collect::<Result<Vec<_>>>()?;
    at(s.header.number, MonodromyAction::new(base, vertex, n, perms))
}

fn write_monodromy(out: &mut String, name: &str, graph: &str, m: &MonodromyAction) {
    let _ = writeln!(out, "monodromy: {name} on {graph}");
    let _ = writeln!(out, "  base: {}", m.base.vertex_label(m.base_vertex));
    let _ = writeln!(out, "  fiber: {}", m.fiber_size);
    for p in &m.perms {
        let _ = writeln!(out, "  perm: {p}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "
# hexagon over triangle
graph: C6
  vertices: 0 1 2 3 4 5
  edge: e0 0 1
  edge: e1 1 2
  edge: e2 2 3
  edge: e3 3 4
  edge: e4 4 5
  edge: e5 5 0
graph: C3
  vertices: a b c
  edge: f0 a b
  edge: f1 b c
  edge: f2 c a
map: p C6 C3
  v 0 -> a
  v 1 -> b
  v 2 -> c
  v 3 -> a
  v 4 -> b
  v 5 -> c
groupoid: P of C6
automaton: H rank 2
  generator: x0 x0
  generator: x1 x0 x1^-1
monodromy: M on C3
  base: a
  fiber: 2
  perm: (12)
";

    #[test]
    fn parses_and_round_trips() {
        let doc = Document::parse(SAMPLE).unwrap();
        assert_eq!(doc.items.len(), 6);
        let Item::Map(p) = doc.pick("map", None).unwrap() else { panic!() };
        assert_eq!(p.edge(5), EdgeImage::Edge(Dart::forward(2)));
        let text = doc.serialize().unwrap();
        let again = Document::parse(&text).unwrap();
        assert_eq!(again, doc);
        assert_eq!(again.serialize().unwrap(), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "graph: X\n  vertices: a b\n  edge: e a c\n";
        assert_eq!(Document::parse(bad).unwrap_err(), Error::Parse { line: 3, message: "unknown vertex `c`".into() });
        let orphan = "\n  vertices: a\n";
        assert!(matches!(Document::parse(orphan), Err(Error::Parse { line: 2, .. })));
        let dangling = "graph: X\n  vertices: a\nmap: f X Y\n";
        assert!(matches!(Document::parse(dangling), Err(Error::Parse { line: 3, .. })));
        let bad_map = "graph: I\n  vertices: a b\n  edge: e a b\nmap: f I I\n  v a -> a\n  v b -> a\n  e e -> e\n";
        assert!(matches!(Document::parse(bad_map), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn fingroupoid_sections() {
        let text = "
fingroupoid: BZ2
  object: o
  morphism: 1 o o
  morphism: s o o
  identity: o 1
  compose: 1 1 1
  compose: 1 s s
  compose: s 1 s
  compose: s s 1
fingroupoid: P
  object: p
  morphism: i p p
  identity: p i
  compose: i i i
functor: F P BZ2
  object: p -> o
  morphism: i -> 1
";
        let doc = Document::parse(text).unwrap();
        assert_eq!(Document::parse(&doc.serialize().unwrap()).unwrap(), doc);
        let broken = text.replace("compose: s s 1", "compose: s s s");
        assert!(Document::parse(&broken).is_err());
    }

    #[test]
    fn action_sections() {
        let text = "
graph: S
  vertices: c l r
  edge: a c l
  edge: b c r
action: swap on S
  degree: 2
  gen: (12) | vertices: c r l
";
        let doc = Document::parse(text).unwrap();
        let Item::Action(a) = doc.pick("action", None).unwrap() else { panic!() };
        assert_eq!(a.group().order(), 2);
        assert_eq!(Document::parse(&doc.serialize().unwrap()).unwrap(), doc);
    }
}
