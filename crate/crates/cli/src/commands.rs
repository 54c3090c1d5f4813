use serde_json::{json, Value};
use shapefib::classify::{classify, constant_fiber_criterion, etale_family_check, factor0, ModalFlags};
use shapefib::covers::{
    enumerate_covers, marked_cover_count, monodromy, shape_of_total, total_space, universal_cover_ball,
    universal_cover_initiality, CoverMap, MonodromyAction,
};
use shapefib::fingroupoid::{self as fg, FinFunctor, Level};
use shapefib::format::{Document, Item};
use shapefib::hfiber::prism_with;
use shapefib::presentation::{induce_functor, shape1};
use shapefib::quotients::{
    fiber_sequence_check_bounded, free_comparison, quotient_fibration_report_bounded, shape_of_quotient_bounded,
    GraphAction,
};
use shapefib::space::pi0;
use shapefib::{dot, suite, Error, FinGraph, GraphMap, Verdict};

use crate::report::{Report, Status};
use crate::{load, CliError, Command, CoversCommand, Input, QuotientCommand, SuiteCommand};

type Out = Result<Report, CliError>;

pub fn run(cmd: &Command) -> Out {
    match cmd {
        Command::Classify { input, level } => classify_cmd(input, *level),
        Command::Factor0 { input } => factor0_cmd(input),
        Command::Criteria { input } => criteria_cmd(input),
        Command::Prism { input, vertex, radius, level } => prism_cmd(input, vertex, *radius, *level),
        Command::Covers(c) => covers_cmd(c),
        Command::Quotient(q) => quotient_cmd(q),
        Command::Suite(s) => suite_cmd(s),
    }
}

/// A map or a functor, whichever the document names or contains.
enum Arrow<'a> {
    Map(&'a GraphMap),
    Functor(&'a FinFunctor),
}

fn arrow<'a>(doc: &'a Document, input: &Input) -> Result<Arrow<'a>, CliError> {
    let item = match &input.name {
        Some(n) => doc.get(n).ok_or_else(|| Error::UnknownId { kind: "section", id: n.clone() })?,
        None if doc.items.iter().any(|(_, i)| matches!(i, Item::Map(_))) => doc.pick("map", None)?,
        None => doc.pick("functor", None)?,
    };
    match item {
        Item::Map(m) => Ok(Arrow::Map(m)),
        Item::Functor(f) => Ok(Arrow::Functor(f)),
        other => Err(CliError::Usage(format!("expected a map or functor section, found {}", other.kind()))),
    }
}

fn map_only<'a>(doc: &'a Document, input: &Input) -> Result<&'a GraphMap, CliError> {
    match doc.pick("map", input.name.as_deref())? {
        Item::Map(m) => Ok(m),
        _ => unreachable!("pick filters by kind"),
    }
}

fn flags_line(name: &str, f: &ModalFlags) -> String {
    format!(
        "{name}: modal={} connected={} etale={} equivalence={} fibration={}",
        f.modal, f.connected, f.etale, f.equivalence, f.fibration
    )
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("library types serialize")
}

fn point_label(y: &FinGraph, p: &shapefib::classify::Point) -> String {
    match p {
        shapefib::classify::Point::Vertex(v) => format!("vertex {}", y.vertex_label(*v)),
        shapefib::classify::Point::Edge(e) => format!("edge {}", y.edge_label(*e)),
    }
}

fn classify_cmd(input: &Input, level: i32) -> Out {
    let doc = load(&input.file)?;
    match arrow(&doc, input)? {
        Arrow::Map(f) => {
            let c = classify(f);
            let y = f.target();
            let mut lines = vec![flags_line("shape0", &c.shape0), flags_line("shape1", &c.shape1)];
            for (name, fails) in [("shape0", &c.shape0_fibration_failures), ("shape1", &c.shape1_fibration_failures)] {
                if !fails.is_empty() {
                    let ls: Vec<String> = fails.iter().map(|p| point_label(y, p)).collect();
                    lines.push(format!("{name} fibration fails over: {}", ls.join(", ")));
                }
            }
            let status = c.shape1.fibration;
            Ok(Report::new("classify", status, to_value(&c), lines).with_dot(dot::map("classify", f)))
        }
        Arrow::Functor(f) => {
            let level = Level::from_int(level)?;
            let c = fg::classify_trunc(f, level);
            let mut lines = vec![flags_line(&format!("level {level}"), &c.flags)];
            if !c.fibration_failures.is_empty() {
                let ls: Vec<&str> = c.fibration_failures.iter().map(|&y| f.target().object_label(y)).collect();
                lines.push(format!("fibration fails over: {}", ls.join(", ")));
            }
            let status = c.flags.fibration;
            Ok(Report::new("classify", status, to_value(&c), lines).with_dot(dot::fingroupoid("source", f.source())))
        }
    }
}

fn factor0_cmd(input: &Input) -> Out {
    let doc = load(&input.file)?;
    match arrow(&doc, input)? {
        Arrow::Map(f) => {
            let (mid, left, right) = factor0(f);
            let connected = classify(&left).shape0.connected;
            let modal = classify(&right).shape0.modal;
            let recomposed = left.then(&right)? == *f;
            let mut out = Document::default();
            out.push("X", Item::Graph(f.source().clone()));
            if f.target() != f.source() {
                out.push("Y", Item::Graph(f.target().clone()));
            }
            if mid != *f.source() && mid != *f.target() {
                out.push("M", Item::Graph(mid.clone()));
            }
            out.push("left", Item::Map(left));
            out.push("right", Item::Map(right));
            let text = out.serialize()?;
            let status = connected.and(modal).and(recomposed.into());
            let mut lines = vec![
                format!("middle: {} vertices, {} edges", mid.vertex_count(), mid.edge_count()),
                format!("left is connected: {connected}"),
                format!("right is modal: {modal}"),
                format!("composite equals the map: {recomposed}"),
            ];
            lines.extend(text.lines().map(String::from));
            let result = json!({
                "middle_vertices": mid.vertex_count(),
                "middle_edges": mid.edge_count(),
                "left_connected": connected,
                "right_modal": modal,
                "recomposes": recomposed,
                "document": text,
            });
            Ok(Report::new("factor0", status, result, lines).with_dot(dot::graph("middle", &mid)))
        }
        Arrow::Functor(f) => {
            let fac = fg::factor_connected_modal(f, Level::Set);
            let connected = fg::classify_trunc(&fac.left, Level::Set).flags.connected;
            let modal = fg::classify_trunc(&fac.right, Level::Set).flags.modal;
            let recomposed = fac.left.then(&fac.right)?.natural_isomorphism(f).is_some();
            let status = connected.and(modal).and(recomposed.into());
            let lines = vec![
                format!("middle: {}", fac.mid),
                format!("left is connected: {connected}"),
                format!("right is modal: {modal}"),
                format!("composite is isomorphic to the functor: {recomposed}"),
            ];
            let result = json!({
                "middle": to_value(&fac.mid),
                "left_connected": connected,
                "right_modal": modal,
                "recomposes": recomposed,
            });
            Ok(Report::new("factor0", status, result, lines).with_dot(dot::fingroupoid("middle", &fac.mid)))
        }
    }
}

fn criteria_cmd(input: &Input) -> Out {
    let doc = load(&input.file)?;
    let f = map_only(&doc, input)?;
    let constant = constant_fiber_criterion(f);
    let etale_family = match etale_family_check(f) {
        Ok(b) => Some(b),
        Err(Error::Inapplicable(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let c = classify(f);
    let lines = vec![
        format!("constant fiber shape: {constant}"),
        format!(
            "etale family: {}",
            etale_family.map_or("not applicable (non-discrete fibers)".to_string(), |b| b.to_string())
        ),
        flags_line("shape1", &c.shape1),
    ];
    let result = json!({
        "constant_fiber": constant,
        "etale_family": etale_family,
        "shape1": to_value(&c.shape1),
    });
    // the constant-fiber criterion is sufficient; its failure says nothing
    Ok(Report::new("criteria", Status::from_bool(constant), result, lines))
}

fn prism_cmd(input: &Input, vertex: &str, radius: usize, level: i32) -> Out {
    let doc = load(&input.file)?;
    match arrow(&doc, input)? {
        Arrow::Map(f) => {
            let y = f.target();
            let v = y
                .vertex_by_label(vertex)
                .ok_or_else(|| Error::UnknownId { kind: "vertex", id: vertex.to_string() })?;
            let p = prism_with(f, &induce_functor(f), v, radius)?;
            let x = f.source();
            let fiber: Vec<&str> = p.fiber.source_vertices().iter().map(|&s| x.vertex_label(s)).collect();
            let hcomps = p.homotopy_fiber.component_count();
            let lines = vec![
                format!("fiber: {} vertices [{}], {} edges", fiber.len(), fiber.join(" "), p.fiber.subgraph.edge_count()),
                format!("fiber shape ranks: {:?}", p.fiber_shape.ranks()),
                format!(
                    "homotopy fiber components: {}",
                    hcomps.map_or("infinitely many".to_string(), |c| c.to_string())
                ),
                format!("delta is an equivalence: {}", p.delta_is_equivalence),
                format!(
                    "gamma: essentially surjective={} injective on components={} fully faithful={}",
                    p.gamma.essentially_surjective, p.gamma.injective_on_components, p.gamma.fully_faithful
                ),
                format!("triangle commutes: {}", p.triangle_commutes),
            ];
            let result = json!({
                "fiber": fiber,
                "fiber_ranks": p.fiber_shape.ranks(),
                "homotopy_fiber_components": hcomps,
                "delta": to_value(&p.delta),
                "delta_is_equivalence": p.delta_is_equivalence,
                "gamma": to_value(&p.gamma),
                "triangle_commutes": p.triangle_commutes,
            });
            let status = Status::from_bool(p.gamma.is_equivalence());
            Ok(Report::new("prism", status, result, lines).with_dot(dot::graph("fiber", &p.fiber.subgraph)))
        }
        Arrow::Functor(f) => {
            let level = Level::from_int(level)?;
            let y = f
                .target()
                .object_by_label(vertex)
                .ok_or_else(|| Error::UnknownId { kind: "object", id: vertex.to_string() })?;
            let p = fg::prism(f, y, level)?;
            let (delta, gamma) = (p.delta.is_equivalence(), p.gamma.is_equivalence());
            let lines = vec![
                format!("homotopy fiber: {}", p.fiber.groupoid),
                format!("truncated-map fiber: {}", p.truncated_fiber.groupoid),
                format!("delta is an equivalence: {delta}"),
                format!("gamma is an equivalence: {gamma}"),
            ];
            let result = json!({
                "level": level.as_int(),
                "fiber": to_value(&p.fiber),
                "truncated_fiber": to_value(&p.truncated_fiber),
                "delta_is_equivalence": delta,
                "gamma_is_equivalence": gamma,
            });
            Ok(Report::new("prism", Status::from_bool(gamma), result, lines)
                .with_dot(dot::fingroupoid("fiber", &p.fiber.groupoid)))
        }
    }
}

fn graph_of<'a>(doc: &'a Document, input: &Input) -> Result<&'a FinGraph, CliError> {
    match doc.pick("graph", input.name.as_deref())? {
        Item::Graph(g) => Ok(g),
        _ => unreachable!("pick filters by kind"),
    }
}

fn monodromy_of<'a>(doc: &'a Document, input: &Input) -> Result<&'a MonodromyAction, CliError> {
    match doc.pick("monodromy", input.name.as_deref())? {
        Item::Monodromy(m) => Ok(m),
        _ => unreachable!("pick filters by kind"),
    }
}

fn perms_text(m: &MonodromyAction) -> String {
    m.perms.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn covers_cmd(c: &CoversCommand) -> Out {
    match c {
        CoversCommand::Enumerate { input, n } => {
            let doc = load(&input.file)?;
            let x = graph_of(&doc, input)?;
            let covers = enumerate_covers(x, *n)?;
            let rank = shape1(x).rank(0);
            let expected = marked_cover_count(rank, *n);
            let mut lines = vec![format!("{} marked {n}-sheeted covers (rank {rank})", covers.len())];
            let mut listed = Vec::new();
            for (i, m) in covers.iter().enumerate() {
                let orbits = m.orbits().len();
                lines.push(format!("{}: {} components={orbits}", i + 1, perms_text(m)));
                listed.push(json!({ "perms": m.perms.iter().map(|p| p.to_string()).collect::<Vec<_>>(), "components": orbits }));
            }
            let ok = covers.len() as u128 == expected;
            let result = json!({ "rank": rank, "n": n, "count": covers.len(), "expected": expected.to_string(), "covers": listed });
            Ok(Report::new("covers enumerate", Status::from_bool(ok), result, lines))
        }
        CoversCommand::Monodromy { input, vertex } => {
            let doc = load(&input.file)?;
            let f = map_only(&doc, input)?;
            let p = CoverMap::new(f.clone())?;
            let base = f.target();
            let v = match vertex {
                Some(l) => base.vertex_by_label(l).ok_or_else(|| Error::UnknownId { kind: "vertex", id: l.clone() })?,
                None => base.basepoint().unwrap_or(0),
            };
            let m = monodromy(&p, v)?;
            let mut out = Document::default();
            out.push("base", Item::Graph(base.clone()));
            out.push("monodromy", Item::Monodromy(m.clone()));
            let text = out.serialize()?;
            let mut lines = vec![format!("fiber size {}, generators {}", m.fiber_size, m.perms.len())];
            lines.extend(m.perms.iter().enumerate().map(|(i, p)| format!("x{i}: {p}")));
            lines.push(format!("orbits: {:?}", one_based(&m.orbits())));
            lines.extend(text.lines().map(String::from));
            let result = json!({
                "fiber_size": m.fiber_size,
                "perms": m.perms.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "orbits": one_based(&m.orbits()),
                "document": text,
            });
            Ok(Report::new("covers monodromy", Status::Pass, result, lines))
        }
        CoversCommand::Total { input } => {
            let doc = load(&input.file)?;
            let m = monodromy_of(&doc, input)?;
            let p = total_space(m);
            let comps = pi0(p.total()).count;
            let orbits = m.orbits();
            let mut out = Document::default();
            out.push("base", Item::Graph(m.base.clone()));
            out.push("total", Item::Graph(p.total().clone()));
            out.push("projection", Item::Map(p.map().clone()));
            let text = out.serialize()?;
            let mut lines = vec![
                format!("total space: {} vertices, {} edges", p.total().vertex_count(), p.total().edge_count()),
                format!("components: {comps}"),
                format!("orbits: {:?}", one_based(&orbits)),
            ];
            lines.extend(text.lines().map(String::from));
            let result = json!({
                "vertices": p.total().vertex_count(),
                "edges": p.total().edge_count(),
                "components": comps,
                "orbits": one_based(&orbits),
                "document": text,
            });
            let status = Status::from_bool(comps == orbits.len());
            Ok(Report::new("covers total", status, result, lines).with_dot(dot::graph("total", p.total())))
        }
        CoversCommand::UniversalBall { input, radius } => {
            let doc = load(&input.file)?;
            let x = graph_of(&doc, input)?;
            let base = x.basepoint().unwrap_or(0);
            let (ball, proj) = universal_cover_ball(x, base, *radius)?;
            let acyclic = pi0(&ball).count == 1 && ball.edge_count() + 1 == ball.vertex_count();
            let pointed = x.clone().pointed(base);
            let covers: Vec<(CoverMap, usize)> = doc
                .items
                .iter()
                .filter_map(|(_, i)| match i {
                    Item::Monodromy(m) if m.base == *x => Some(total_space(m)),
                    _ => None,
                })
                .map(|c| {
                    let point = c.fiber_over(base)[0];
                    (c, point)
                })
                .collect();
            let lifts = universal_cover_initiality(&pointed, &covers, None)?;
            let mut lines = vec![
                format!("ball of radius {radius}: {} vertices, {} edges", ball.vertex_count(), ball.edge_count()),
                format!("acyclic: {acyclic}"),
            ];
            for (i, l) in lifts.iter().enumerate() {
                lines.push(format!(
                    "cover {}: {} pointed lifts at radius {}, reaches component={}, unique={}",
                    i + 1,
                    l.lifts,
                    l.radius,
                    l.reaches_component,
                    l.verdict
                ));
            }
            let verdict = Verdict::all(lifts.iter().map(|l| l.verdict)).and(acyclic.into());
            let result = json!({
                "vertices": ball.vertex_count(),
                "edges": ball.edge_count(),
                "acyclic": acyclic,
                "projection": proj.vertex_map(),
                "lifts": to_value(&lifts),
            });
            Ok(Report::new("covers universal-ball", verdict, result, lines).with_dot(dot::graph("ball", &ball)))
        }
        CoversCommand::VerifyShape { input } => {
            let doc = load(&input.file)?;
            let item = match &input.name {
                Some(n) => doc.get(n).ok_or_else(|| Error::UnknownId { kind: "section", id: n.clone() })?,
                None => doc.pick("monodromy", None).or_else(|_| doc.pick("map", None))?,
            };
            let p = match item {
                Item::Monodromy(m) => total_space(m),
                Item::Map(f) => CoverMap::new(f.clone())?,
                other => return Err(CliError::Usage(format!("expected a monodromy or map section, found {}", other.kind()))),
            };
            let r = shape_of_total(&p)?;
            let mut lines = vec![format!(
                "components: {}, orbits: {}, matched: {}",
                r.component_count, r.orbit_count, r.orbits_match_components
            )];
            for o in &r.orbits {
                lines.push(format!(
                    "orbit of {}: stabilizer rank {} index {}, image equal: {}",
                    o.fiber_point + 1,
                    o.stabilizer.rank(),
                    o.stabilizer.index().map_or("infinite".to_string(), |i| i.to_string()),
                    o.equal
                ));
                lines.push(format!("  generators: {}", words(&o.stabilizer)));
            }
            let status = Status::from_bool(r.holds());
            Ok(Report::new("covers verify-shape", status, to_value(&r), lines))
        }
    }
}

fn words(a: &shapefib::automaton::SubgroupAutomaton) -> String {
    let g: Vec<String> = a.generators().iter().map(|w| w.to_string()).collect();
    if g.is_empty() {
        "none".to_string()
    } else {
        g.join(", ")
    }
}

fn one_based(orbits: &[Vec<usize>]) -> Vec<Vec<usize>> {
    orbits.iter().map(|o| o.iter().map(|i| i + 1).collect()).collect()
}

fn action_of<'a>(doc: &'a Document, input: &Input) -> Result<&'a GraphAction, CliError> {
    match doc.pick("action", input.name.as_deref())? {
        Item::Action(a) => Ok(a),
        _ => unreachable!("pick filters by kind"),
    }
}

fn quotient_cmd(q: &QuotientCommand) -> Out {
    match q {
        QuotientCommand::Shape { input, max_group } => {
            let doc = load(&input.file)?;
            let a = action_of(&doc, input)?;
            let s = shape_of_quotient_bounded(a, *max_group)?;
            let x = a.space();
            let mut lines = vec![format!("group order {}, {} quotient components", a.group().order(), s.components.len())];
            for (i, c) in s.components.iter().enumerate() {
                lines.push(format!(
                    "component {i}: at {}, {} space components, stabilizer order {}, pi1 rank {}",
                    x.vertex_label(c.representative),
                    c.space_components.len(),
                    c.component_stabilizer.len(),
                    c.pi1_rank
                ));
            }
            // a forest quotient with one component and trivial space part is a delooping
            let deloops = match &s.finite {
                Some(g) => {
                    lines.push(format!("finite model: {g}"));
                    let stab = s.components.first().map(|c| c.component_stabilizer.clone()).unwrap_or_default();
                    let subgroup = shapefib::group::FinGroup::generated_by(
                        a.group().degree(),
                        stab.iter().map(|&i| a.group().element(i).clone()).collect(),
                    )?;
                    let bg = fg::FinGroupoid::delooping(&subgroup);
                    let eq = s.components.len() == 1 && fg::are_equivalent(g, &bg);
                    lines.push(format!("equivalent to the delooping of the stabilizer: {eq}"));
                    Some(eq)
                }
                None => None,
            };
            let result = json!({
                "components": to_value(&s.components),
                "finite": s.finite.as_ref().map(to_value),
                "is_delooping": deloops,
            });
            let dot = s.finite.as_ref().map(|g| dot::fingroupoid("quotient", g));
            let mut r = Report::new("quotient shape", Status::Pass, result, lines);
            r.dot = dot;
            Ok(r)
        }
        QuotientCommand::Verify { input, max_group } => {
            let doc = load(&input.file)?;
            let a = action_of(&doc, input)?;
            let fib = quotient_fibration_report_bounded(a, *max_group)?;
            let x = a.space();
            let seqs = x
                .vertices()
                .map(|v| fiber_sequence_check_bounded(a, v, *max_group))
                .collect::<Result<Vec<_>, _>>()?;
            let free = if a.is_free() { Some(free_comparison(a)?) } else { None };
            let mut lines = vec![
                format!("quotient map is a fibration: {}", fib.holds()),
                format!(
                    "  slices contractible={} inhabited={} brute force={}",
                    fib.slices_contractible,
                    fib.slices_inhabited,
                    fib.brute_force.map_or("n/a".to_string(), |b| b.to_string())
                ),
            ];
            for s in &seqs {
                lines.push(format!(
                    "vertex {}: orbit {} stabilizer {} fiber sequence holds={}",
                    x.vertex_label(s.vertex),
                    s.orbit.len(),
                    s.stabilizer.len(),
                    s.holds()
                ));
            }
            if let Some(fc) = &free {
                lines.push(format!("free action: quotient shape equals orbit graph shape: {}", fc.is_equivalence()));
            }
            let ok = fib.holds() && seqs.iter().all(|s| s.holds()) && free.as_ref().is_none_or(|f| f.is_equivalence());
            let result = json!({
                "fibration": to_value(&fib),
                "fiber_sequences": to_value(&seqs),
                "free_comparison": free.as_ref().map(to_value),
            });
            let orbit_dot = match a.is_free() {
                true => Some(dot::map("orbits", &shapefib::quotients::orbit_graph(a)?)),
                false => None,
            };
            let mut r = Report::new("quotient verify", Status::from_bool(ok), result, lines);
            r.dot = orbit_dot;
            Ok(r)
        }
    }
}

fn suite_cmd(s: &SuiteCommand) -> Out {
    let (name, r) = match s {
        SuiteCommand::NineWay(a) => ("suite nine-way", suite::nine_way_suite(a.seed, a.samples)?),
        SuiteCommand::Closure(a) => ("suite closure", suite::closure_suite(a.seed, a.samples)?),
        SuiteCommand::CompareModalities(a) => ("suite compare-modalities", suite::modality_suite(a.seed, a.samples)?),
    };
    let mut lines = vec![format!(
        "{}: seed {} samples {} checked {} violations {}",
        r.name, r.seed, r.samples, r.checked, r.violations
    )];
    lines.extend(r.counters.iter().map(|(k, v)| format!("  {k}: {v}")));
    if let Some(v) = &r.first_violation {
        lines.push(format!("first violation: {v}"));
    }
    Ok(Report::new(name, Status::from_bool(r.passed()), to_value(&r), lines))
}
