use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shapefib::fingroupoid::*;
use shapefib::group::FinGroup;

const SEED: u64 = 0x5eed_0001;

#[test]
fn nine_way_agreement_on_corpus() {
    let corpus = Corpus::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();
    let (mut fibrations, mut surjective) = (0, 0);
    for n in 0..1000 {
        let x = corpus.groupoid(&mut rng);
        let y = corpus.groupoid(&mut rng);
        let f = corpus.functor(&mut rng, &x, &y);
        let bases: Vec<FinFunctor> = (0..3).map(|_| corpus.functor_into(&mut rng, &y)).collect();
        let r = nine_way(&f, &bases).unwrap();
        assert!(r.agree(), "sample {n}: {r:?}");
        fibrations += r.a as usize;
        surjective += r.i.is_some() as usize;
    }
    eprintln!("1000 samples, {fibrations} fibrations, {surjective} surjective, {:?}", start.elapsed());
    // the corpus has to exercise both outcomes
    assert!(fibrations > 50 && fibrations < 950);
    assert!(surjective > 50);
}

#[test]
fn factorizations_compose_to_the_functor() {
    let corpus = Corpus::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for _ in 0..200 {
        let x = corpus.groupoid(&mut rng);
        let y = corpus.groupoid(&mut rng);
        let f = corpus.functor(&mut rng, &x, &y);
        for level in [Level::Prop, Level::Set] {
            let cm = factor_connected_modal(&f, level);
            let ee = factor_equiv_etale(&f, level);
            for fac in [&cm, &ee] {
                fac.mid.check_laws().unwrap();
                assert!(fac.left.then(&fac.right).unwrap().natural_isomorphism(&f).is_some());
            }
            assert!(classify_trunc(&cm.left, level).flags.connected.is_true());
            assert!(classify_trunc(&cm.right, level).flags.modal.is_true());
            assert!(classify_trunc(&ee.left, level).flags.equivalence.is_true());
            assert!(classify_trunc(&ee.right, level).flags.etale.is_true());
            let fib = classify_trunc(&f, level).flags.fibration.is_true();
            assert_eq!(fib, are_equivalent(&cm.mid, &ee.mid) && tot_gamma(&f, level).is_equivalence());
        }
    }
}

#[test]
fn flag_identities_on_corpus() {
    let corpus = Corpus::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for _ in 0..300 {
        let f = {
            let y = corpus.groupoid(&mut rng);
            corpus.functor_into(&mut rng, &y)
        };
        for level in [Level::Prop, Level::Set] {
            let c = classify_trunc(&f, level);
            assert!(c.flags.satisfies_flag_identities(), "{c:?}");
        }
    }
}

#[test]
fn fibrations_closed_under_pullback_and_composition() {
    let corpus = Corpus::default();
    let small = Corpus::new(4, 12);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let (mut pullbacks, mut composites) = (0, 0);
    for _ in 0..400 {
        let x = corpus.groupoid(&mut rng);
        let y = corpus.groupoid(&mut rng);
        let z = corpus.groupoid(&mut rng);
        let f = corpus.functor(&mut rng, &x, &y);
        let g = corpus.functor(&mut rng, &y, &z);
        let f_fib = classify_trunc(&f, Level::Set).flags.fibration.is_true();
        let g_fib = classify_trunc(&g, Level::Set).flags.fibration.is_true();
        if f_fib && g_fib {
            composites += 1;
            assert!(classify_trunc(&f.then(&g).unwrap(), Level::Set).flags.fibration.is_true());
        }
        if f_fib {
            let b = small.groupoid(&mut rng);
            let base = small.functor(&mut rng, &b, &y);
            let p = hpullback(&f, &base).unwrap();
            pullbacks += 1;
            assert!(classify_trunc(&p.right, Level::Set).flags.fibration.is_true());
        }
    }
    assert!(pullbacks > 20 && composites > 20, "{pullbacks} pullbacks, {composites} composites");
}

#[test]
fn coarser_modality_implications() {
    let corpus = Corpus::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut prop_etale = 0;
    for _ in 0..400 {
        let x = corpus.groupoid(&mut rng);
        let y = corpus.groupoid(&mut rng);
        let f = corpus.functor(&mut rng, &x, &y);
        let cmp = compare_modalities(&f);
        assert!(cmp.holds(), "{cmp:?}");
        prop_etale += cmp.prop.etale.is_true() as usize;
    }
    assert!(prop_etale > 0);
}

#[test]
fn projections_are_fibrations() {
    let corpus = Corpus::new(4, 12);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    for _ in 0..100 {
        let a = corpus.groupoid(&mut rng).groupoid;
        let b = corpus.groupoid(&mut rng).groupoid;
        let prod = FinGroupoid::product(&a, &b);
        let nb = b.object_count();
        let mb = b.morphism_count();
        let proj = FinFunctor::new(
            prod.clone(),
            a.clone(),
            prod.object_ids().map(|p| p / nb).collect(),
            prod.morphism_ids().map(|m| m / mb).collect(),
        )
        .unwrap();
        for level in [Level::Prop, Level::Set] {
            assert!(classify_trunc(&proj, level).flags.fibration.is_true());
        }
    }
}

#[test]
fn pullback_of_an_equivalence_need_not_be_one() {
    // pt -> BZ/2 is a 0-equivalence; pulled back along itself it becomes 2 points -> pt
    let bz2 = FinGroupoid::delooping(&FinGroup::cyclic(2));
    let pt = FinFunctor::point_at(&bz2, 0).unwrap();
    assert!(classify_trunc(&pt, Level::Set).flags.equivalence.is_true());
    let p = hpullback(&pt, &pt).unwrap();
    assert_eq!(p.groupoid.object_count(), 2);
    assert!(p.groupoid.is_discrete());
    assert!(classify_trunc(&p.right, Level::Set).flags.equivalence.is_false());
}

#[test]
fn surjective_fibrations_match_pi1_surjectivity() {
    let corpus = Corpus::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let mut seen = 0;
    while seen < 200 {
        let x = corpus.groupoid(&mut rng);
        let y = corpus.groupoid(&mut rng);
        let f = corpus.functor(&mut rng, &x, &y);
        if !f.is_pi0_surjective() {
            continue;
        }
        seen += 1;
        let pi1 = f.source().object_ids().all(|a| f.is_pi1_surjective_at(a));
        assert_eq!(classify_trunc(&f, Level::Set).flags.fibration.is_true(), pi1);
    }
}
