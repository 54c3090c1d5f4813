//! Seeded property sweeps over the random finite-groupoid corpus.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::fingroupoid::{classify_trunc, compare_modalities, hpullback, nine_way, Corpus, FinFunctor, Level};

/// Bases sampled per functor for the pullback-preservation check.
const BASES_PER_SAMPLE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub seed: u64,
    pub samples: usize,
    /// Instances where the property had something to check.
    pub checked: usize,
    pub violations: usize,
    /// Debug rendering of the first violation.
    pub first_violation: Option<String>,
    /// Suite-specific counters, in a fixed order.
    pub counters: Vec<(&'static str, usize)>,
}

impl SuiteReport {
    fn new(name: &'static str, seed: u64, samples: usize) -> Self {
        SuiteReport { name, seed, samples, checked: 0, violations: 0, first_violation: None, counters: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Random `F: X -> Y` on the corpus, with the draws in a fixed order.
fn sample_functor(corpus: &Corpus, rng: &mut ChaCha8Rng) -> (FinFunctor, crate::fingroupoid::BlockGroupoid) {
    let x = corpus.groupoid(rng);
    let y = corpus.groupoid(rng);
    (corpus.functor(rng, &x, &y), y)
}

/// All fibration characterizations agree on every sample.
pub fn nine_way_suite(seed: u64, samples: usize) -> Result<SuiteReport> {
    let corpus = Corpus::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("nine-way", seed, samples);
    let (mut fibrations, mut surjective, mut tot_checked) = (0, 0, 0);
    for n in 0..samples {
        let (f, y) = sample_functor(&corpus, &mut rng);
        let bases: Vec<FinFunctor> = (0..BASES_PER_SAMPLE).map(|_| corpus.functor_into(&mut rng, &y)).collect();
        let r = nine_way(&f, &bases)?;
        fibrations += r.a as usize;
        surjective += r.i.is_some() as usize;
        tot_checked += r.h.is_some() as usize;
        report.record(r.agree(), || format!("sample {n}: {r:?}"));
    }
    report.counters = vec![("fibrations", fibrations), ("pi0-surjective", surjective), ("tot-checked", tot_checked)];
    Ok(report)
}

/// Composites and homotopy pullbacks of level-0 fibrations are fibrations.
pub fn closure_suite(seed: u64, samples: usize) -> Result<SuiteReport> {
    let corpus = Corpus::default();
    let small = Corpus::new(4, 12);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("closure", seed, samples);
    let (mut pullbacks, mut composites) = (0, 0);
    for n in 0..samples {
        let x = corpus.groupoid(&mut rng);
        let y = corpus.groupoid(&mut rng);
        let z = corpus.groupoid(&mut rng);
        let f = corpus.functor(&mut rng, &x, &y);
        let g = corpus.functor(&mut rng, &y, &z);
        let b = small.groupoid(&mut rng);
        let base = small.functor(&mut rng, &b, &y);
        let fib = |h: &FinFunctor| classify_trunc(h, Level::Set).flags.fibration.is_true();
        let (f_fib, g_fib) = (fib(&f), fib(&g));
        if f_fib && g_fib {
            composites += 1;
            let ok = fib(&f.then(&g)?);
            report.record(ok, || format!("sample {n}: composite of fibrations is not a fibration"));
        }
        if f_fib {
            pullbacks += 1;
            let ok = fib(&hpullback(&f, &base)?.right);
            report.record(ok, || format!("sample {n}: pullback of a fibration is not a fibration"));
        }
    }
    report.counters = vec![("composites", composites), ("pullbacks", pullbacks)];
    Ok(report)
}

/// The five implications between the level −1 and level 0 classifications.
pub fn modality_suite(seed: u64, samples: usize) -> Result<SuiteReport> {
    let corpus = Corpus::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new("compare-modalities", seed, samples);
    let mut premises = [0usize; 5];
    for n in 0..samples {
        let (f, _) = sample_functor(&corpus, &mut rng);
        let c = compare_modalities(&f);
        let fired = [
            c.prop.modal.is_true(),
            c.prop.etale.is_true(),
            c.set.equivalence.is_true(),
            c.set.connected.is_true(),
            c.set.fibration.and(c.truncated_prop.fibration).is_true(),
        ];
        for (p, hit) in premises.iter_mut().zip(fired) {
            *p += hit as usize;
        }
        report.record(c.holds(), || format!("sample {n}: {c:?}"));
    }
    report.counters = ["modal", "etale", "equivalence", "connected", "fibration"]
        .into_iter()
        .zip(premises)
        .collect();
    Ok(report)
}
