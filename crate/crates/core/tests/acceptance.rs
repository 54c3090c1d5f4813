//! Acceptance run: one line per criterion. Pass criterion numbers to run a subset.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use shapefib::automaton::SubgroupAutomaton;
use shapefib::covers::*;
use shapefib::fingroupoid::{are_equivalent, FinGroupoid};
use shapefib::group::{FinGroup, Perm};
use shapefib::presentation::shape1;
use shapefib::quotients::*;
use shapefib::space::{pi0, pi0_by_definition, PI0_DEFINITION_BOUND};
use shapefib::suite::{closure_suite, modality_suite, nine_way_suite};
use shapefib::word::{reduced_words, Word};
use shapefib::FinGraph;

const SEED: u64 = 0x5eed_0a00;
const CORPUS_SAMPLES: usize = 1000;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn circle() -> FinGraph {
    FinGraph::bouquet(1).pointed(0)
}

fn figure_eight() -> FinGraph {
    FinGraph::bouquet(2).pointed(0)
}

fn cycle_shapes() -> Outcome {
    for k in 3..=12 {
        let p = shape1(&FinGraph::cycle(k));
        ensure(p.component_count() == 1 && p.rank(0) == 1, || {
            format!("C_{k}: {} components, rank {}", p.component_count(), p.rank(0))
        })?;
    }
    Ok("C_3..C_12 each connected of rank 1".into())
}

fn cover_counts() -> Outcome {
    let expected = [1, 2, 6, 24, 120, 720];
    for (n, &want) in (1..=6).zip(&expected) {
        let got = enumerate_covers(&circle(), n).map_err(|e| e.to_string())?.len();
        ensure(got == want, || format!("n = {n}: {got} covers, expected {want}"))?;
    }
    Ok("1, 2, 6, 24, 120, 720".into())
}

fn orbits_and_components() -> Outcome {
    let mut checked = 0;
    for (base, max_n) in [(circle(), 5), (figure_eight(), 3)] {
        for n in 1..=max_n {
            for m in enumerate_covers(&base, n).map_err(|e| e.to_string())? {
                let (c, o) = components_vs_orbits(&m);
                ensure(c == o, || format!("{:?}: {c} components, {o} orbits", m.perms))?;
                checked += 1;
            }
        }
    }
    let split = MonodromyAction::new(circle(), 0, 5, vec![Perm::parse("(12)(354)", 5).unwrap()]).unwrap();
    let comps = pi0(total_space(&split).total()).count;
    ensure(comps == 2, || format!("(12)(354) gives {comps} components"))?;
    Ok(format!("{checked} covers; (12)(354) gives 2 components"))
}

fn suite_outcome(r: shapefib::Result<shapefib::suite::SuiteReport>) -> Outcome {
    let r = r.map_err(|e| e.to_string())?;
    let counters: Vec<String> = r.counters.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let summary = format!("{} samples, {} checks, {}", r.samples, r.checked, counters.join(" "));
    ensure(r.passed() && r.samples >= CORPUS_SAMPLES, || {
        format!("{} violations ({summary}); first: {}", r.violations, r.first_violation.clone().unwrap_or_default())
    })?;
    Ok(summary)
}

fn quotient_fibrations() -> Outcome {
    let graphs = action_domain(SEED, 40);
    let mut actions = 0;
    for g in small_groups() {
        for x in &graphs {
            for a in all_actions(&g, x) {
                actions += 1;
                let ok = quotient_is_fibration(&a).map_err(|e| e.to_string())?;
                ensure(ok, || format!("order {} on {x:?}", g.order()))?;
            }
        }
    }
    let swap = GraphAction::from_vertex_perms(FinGroup::cyclic(2), FinGraph::star(2), vec![Perm::parse("(23)", 3).unwrap()])
        .map_err(|e| e.to_string())?;
    let q = shape_of_quotient(&swap).map_err(|e| e.to_string())?;
    let bz2 = FinGroupoid::delooping(&FinGroup::cyclic(2));
    ensure(q.finite.as_ref().is_some_and(|g| are_equivalent(g, &bz2)), || "star/C2 is not B(Z/2)".into())?;
    Ok(format!("{actions} actions on {} graphs; star/C2 ~ B(Z/2)", graphs.len()))
}

fn total_space_shapes() -> Outcome {
    let mut r = rng(SEED + 8);
    for k in 0..200 {
        let base = if k % 2 == 0 { circle() } else { figure_eight() };
        let n = r.gen_range(1..=4);
        let perms = (0..shape1(&base).rank(0)).map(|_| random_perm(&mut r, n)).collect();
        let m = MonodromyAction::new(base, 0, n, perms).map_err(|e| e.to_string())?;
        let report = shape_of_total(&total_space(&m)).map_err(|e| e.to_string())?;
        ensure(report.holds(), || format!("{:?}: {report:?}", m.perms))?;
        for o in &report.orbits {
            let both = o.stabilizer.contains_subgroup(&o.image) && o.image.contains_subgroup(&o.stabilizer);
            ensure(both, || format!("{:?}: orbit of {} differs", m.perms, o.fiber_point))?;
        }
    }
    Ok("200 covers, stabilizers equal images".into())
}

fn universal_ball() -> Outcome {
    let (ball, _) = universal_cover_ball(&circle(), 0, 3).map_err(|e| e.to_string())?;
    let mut degree = vec![0; ball.vertex_count()];
    for e in ball.edges() {
        let (a, b) = ball.endpoints(e);
        degree[a] += 1;
        degree[b] += 1;
    }
    let is_path = ball.vertex_count() == 7
        && ball.edge_count() == 6
        && pi0(&ball).count == 1
        && degree.iter().filter(|&&d| d == 1).count() == 2
        && degree.iter().all(|&d| d <= 2);
    ensure(is_path, || format!("ball has {} vertices, degrees {degree:?}", ball.vertex_count()))?;
    let mut covers = 0;
    for n in 2..=3 {
        for m in enumerate_covers(&circle(), n).map_err(|e| e.to_string())? {
            let p = total_space(&m);
            let pointed: Vec<(CoverMap, usize)> = p.fiber_over(0).into_iter().map(|v| (p.clone(), v)).collect();
            for rep in universal_cover_initiality(&circle(), &pointed, None).map_err(|e| e.to_string())? {
                ensure(rep.lifts == 1 && rep.verdict.is_true(), || format!("{:?}: {rep:?}", m.perms))?;
                covers += 1;
            }
        }
    }
    Ok(format!("7-vertex path; {covers} pointed covers with exactly one lift"))
}

fn oracles() -> Outcome {
    let mut r = rng(SEED + 10);
    for _ in 0..100 {
        let x = random_sized(&mut r, 8, 10);
        let slow = pi0_by_definition(&x, PI0_DEFINITION_BOUND).map_err(|e| e.to_string())?;
        ensure(canonical(pi0(&x).members()) == slow, || format!("pi0 differs on {x:?}"))?;
    }
    let words = reduced_words(2, MAX_LEN);
    let figure8 = FinGraph::bouquet(2);
    let mut subgroups = 0;
    // half stabilizers of permutation pairs, half Nielsen-reduced generator sets
    while subgroups < 100 {
        if subgroups % 2 == 0 {
            let n = r.gen_range(1..=5);
            let perms = vec![random_perm(&mut r, n), random_perm(&mut r, n)];
            let point = r.gen_range(0..n);
            let a = MonodromyAction::new(figure8.clone(), 0, n, perms.clone()).unwrap().stabilizer(point);
            for w in &words {
                ensure(a.contains(w) == (act(&perms, point, w) == point), || format!("{w:?} with {perms:?}"))?;
            }
        } else {
            let gens: Vec<Word> = (0..r.gen_range(1..=3)).map(|_| random_word(&mut r, 4)).collect();
            if !is_nielsen_reduced(&gens) {
                continue;
            }
            let a = SubgroupAutomaton::from_generators(2, &gens);
            let short = short_elements(&gens);
            for w in &words {
                ensure(a.contains(w) == short.contains(w), || format!("{w:?} in <{gens:?}>"))?;
            }
        }
        subgroups += 1;
    }
    Ok(format!("100 graphs; 100 subgroups over {} words", words.len()))
}

fn main() -> ExitCode {
    let criteria: Vec<(usize, &str, u64, fn() -> Outcome)> = vec![
        (1, "cycle shapes", 1, cycle_shapes),
        (2, "cover counts", 5, cover_counts),
        (3, "orbits and components", 30, orbits_and_components),
        (4, "nine-way agreement", 60, || suite_outcome(nine_way_suite(SEED + 4, CORPUS_SAMPLES))),
        (5, "fibration closure", 60, || suite_outcome(closure_suite(SEED + 5, CORPUS_SAMPLES))),
        (6, "modality comparison", 30, || suite_outcome(modality_suite(SEED + 6, CORPUS_SAMPLES))),
        (7, "quotient fibrations", 60, quotient_fibrations),
        (8, "total space shapes", 60, total_space_shapes),
        (9, "universal cover ball", 5, universal_ball),
        (10, "oracle checks", 60, oracles),
    ];
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(s) if elapsed > Duration::from_secs(limit) => Err(format!("{s}, but over the {limit} s limit")),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(s) => ("PASS", s),
            Err(s) => ("FAIL", s),
        };
        println!("criterion {id:>2} {tag} {name} ({:.2} s): {detail}", elapsed.as_secs_f64());
        failed += outcome.is_err() as usize;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
