//! Reproducible Monte Carlo over counter-addressed random streams.
//!
//! Draws are cut into fixed-size batches; batch `i` always uses stream `i`
//! of the seeded generator, so results do not depend on how many workers
//! process the batches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

const BATCH: u64 = 4_096;

/// Default number of Monte Carlo draws.
pub const DEFAULT_DRAWS: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct McConfig {
    pub n_draws: u64,
    pub seed: u64,
    /// Worker threads; `None` uses the global rayon pool. Never affects results.
    #[serde(skip)]
    pub workers: Option<usize>,
}

impl McConfig {
    pub fn new(n_draws: u64, seed: u64) -> Self {
        Self { n_draws, seed, workers: None }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.n_draws == 0 {
            return Err(Error::InvalidArgument("n_draws must be >= 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidArgument("workers must be >= 1".into()));
        }
        Ok(())
    }
}

/// Generator for stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Tallies of draws classified for, against, or neither.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct Tally {
    pub(crate) for_: u64,
    pub(crate) against: u64,
    pub(crate) ambiguous: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Verdict {
    For,
    Against,
    Ambiguous,
}

impl Tally {
    pub(crate) fn record(&mut self, v: Verdict) {
        match v {
            Verdict::For => self.for_ += 1,
            Verdict::Against => self.against += 1,
            Verdict::Ambiguous => self.ambiguous += 1,
        }
    }

    fn merge(self, o: Tally) -> Tally {
        Tally {
            for_: self.for_ + o.for_,
            against: self.against + o.against,
            ambiguous: self.ambiguous + o.ambiguous,
        }
    }

    pub(crate) fn total(&self) -> u64 {
        self.for_ + self.against + self.ambiguous
    }
}

/// Runs `draw` `cfg.n_draws` times and tallies the verdicts.
///
/// `init` builds per-batch scratch state; `draw` receives the batch's
/// generator and that state.
pub(crate) fn run<S, I, D>(cfg: &McConfig, init: I, draw: D) -> Result<Tally>
where
    I: Fn() -> S + Sync,
    D: Fn(&mut ChaCha8Rng, &mut S) -> Verdict + Sync,
{
    cfg.validate()?;
    let batches = cfg.n_draws.div_ceil(BATCH);
    let job = || {
        (0..batches)
            .into_par_iter()
            .map(|b| {
                let mut rng = stream_rng(cfg.seed, b);
                let mut state = init();
                let n = BATCH.min(cfg.n_draws - b * BATCH);
                let mut tally = Tally::default();
                for _ in 0..n {
                    tally.record(draw(&mut rng, &mut state));
                }
                tally
            })
            .reduce(Tally::default, Tally::merge)
    };
    match cfg.workers {
        None => Ok(job()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn coin(cfg: &McConfig) -> Tally {
        run(cfg, || (), |rng, _| {
            let u: f64 = rng.random();
            if u < 0.3 {
                Verdict::For
            } else if u < 0.5 {
                Verdict::Against
            } else {
                Verdict::Ambiguous
            }
        })
        .unwrap()
    }

    #[test]
    fn worker_count_does_not_change_tally() {
        let base = McConfig::new(50_001, 9);
        let one = coin(&base.with_workers(1));
        let three = coin(&base.with_workers(3));
        let global = coin(&base);
        assert_eq!(one, three);
        assert_eq!(one, global);
        assert_eq!(one.total(), 50_001);
    }

    #[test]
    fn zero_draws_rejected() {
        assert!(run(&McConfig::new(0, 1), || (), |_, _| Verdict::For).is_err());
        assert!(run(&McConfig::new(1, 1).with_workers(0), || (), |_, _| Verdict::For).is_err());
    }
}
