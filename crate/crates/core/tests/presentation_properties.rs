mod common;

use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use shapefib::automaton::{LabelledEdge, SubgroupAutomaton};
use shapefib::hfiber::prism;
use shapefib::presentation::induce_functor;
use shapefib::word::{Letter, Word};
use shapefib::Verdict;

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(g, inv)| Letter::new(g, inv))))
}

/// The unfolded wedge of one loop per generator, with edges in the given order.
fn flower(rank: usize, gens: &[Word]) -> (usize, Vec<LabelledEdge>) {
    let mut states = 1;
    let mut edges = Vec::new();
    for w in gens {
        let letters = w.letters();
        let mut at = 0;
        for (i, l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                0
            } else {
                states += 1;
                states - 1
            };
            let (source, target) = if l.inverse { (next, at) } else { (at, next) };
            edges.push(LabelledEdge { source, label: l.generator, target });
            at = next;
        }
    }
    assert!(edges.iter().all(|e| e.label < rank));
    (states, edges)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn induced_functors_compose(x in graph(4, 5), y in graph(4, 5), z in graph(3, 4), seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_map(&mut r, &x, &y);
        let g = random_map(&mut r, &y, &z);
        let direct = induce_functor(&f.then(&g).unwrap());
        let composed = induce_functor(&f).then(&induce_functor(&g)).unwrap();
        prop_assert_eq!(direct.object_map(), composed.object_map());
        prop_assert_eq!(direct.natural_isomorphism(&composed).verdict, Verdict::True);
    }

    #[test]
    fn prism_triangles_commute(f in map(4, 5)) {
        for y in f.target().vertices() {
            let p = prism(&f, y).unwrap();
            prop_assert!(p.triangle_commutes, "over {}", y);
        }
    }

    #[test]
    fn folding_ignores_edge_order(
        rank in 1usize..=3,
        gens in prop::collection::vec(word(3, 6), 1..=4),
        seed in any::<u64>(),
    ) {
        let gens: Vec<Word> = gens
            .into_iter()
            .map(|w| Word::from_letters(w.letters().iter().map(|l| Letter::new(l.generator % rank, l.inverse))))
            .collect();
        let (n, mut edges) = flower(rank, &gens);
        let reference = SubgroupAutomaton::from_generators(rank, &gens);
        let mut r = rng(seed);
        for _ in 0..3 {
            edges.shuffle(&mut r);
            let folded = SubgroupAutomaton::fold_raw(rank, n, edges.clone());
            prop_assert_eq!(&folded, &reference);
            prop_assert!(folded.subgroup_equal(&reference));
            // folding a folded automaton changes nothing
            let mut order: Vec<usize> = (0..folded.edges().len()).collect();
            order.shuffle(&mut r);
            prop_assert_eq!(&folded.refold_in_order(&order), &folded);
        }
        for g in &gens {
            prop_assert!(reference.contains(g));
        }
    }
}
