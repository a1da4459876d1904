//! Seeded parallel sampling.
//!
//! Samples are cut into chunks of [`CHUNK`]; chunk `c` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `c`. Chunk statistics are
//! merged in chunk order, so the result depends on `(seed, samples)` only
//! and not on the number of workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::McError;

pub const CHUNK: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub samples: u64,
    pub seed: u64,
    pub jobs: usize,
}

impl SampleConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        SampleConfig { samples, seed, jobs: 1 }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

/// Running mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Moments {
    pub count: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&self, other: &Moments) -> Moments {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / count as f64;
        Moments {
            count,
            mean: self.mean + delta * w,
            m2: self.m2 + other.m2 + delta * delta * self.count as f64 * w,
        }
    }

    /// Sample standard deviation over `√count`.
    pub fn stderr(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.m2.max(0.0) / (self.count - 1) as f64).sqrt() / (self.count as f64).sqrt()
    }
}

/// Mean and spread of `f` over `cfg.samples` draws. `f` receives the
/// generator and the global sample index.
pub fn sample<F>(cfg: SampleConfig, f: F) -> Result<Moments, McError>
where
    F: Fn(&mut ChaCha8Rng, u64) -> Result<f64, McError> + Sync,
{
    let chunks = cfg.samples.div_ceil(CHUNK);
    let run_chunk = |c: u64| -> Result<Moments, McError> {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(c);
        let mut m = Moments::default();
        let end = ((c + 1) * CHUNK).min(cfg.samples);
        for i in c * CHUNK..end {
            m.push(f(&mut rng, i)?);
        }
        Ok(m)
    };
    let parts: Vec<Result<Moments, McError>> = if cfg.jobs <= 1 {
        (0..chunks).map(run_chunk).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| McError::Pool(e.to_string()))?;
        pool.install(|| (0..chunks).into_par_iter().map(run_chunk).collect())
    };
    let mut total = Moments::default();
    for p in parts {
        total = total.merge(&p?);
    }
    Ok(total)
}
