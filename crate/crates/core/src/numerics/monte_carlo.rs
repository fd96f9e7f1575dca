use num_traits::Float;

use crate::{stream_rng, Result, Rng};

pub const MIN_MC_SAMPLES: usize = 10_000;

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub n_samples: usize,
}

impl McEstimate {
    /// Welford accumulation of `n` draws of `draw`.
    pub(crate) fn accumulate(n: usize, mut draw: impl FnMut() -> f64) -> Self {
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for i in 0..n {
            let x = draw();
            let delta = x - mean;
            mean += delta / (i + 1) as f64;
            m2 += delta * (x - mean);
        }
        let var = if n > 1 { m2 / (n - 1) as f64 } else { 0.0 };
        Self { mean, std_err: (var / n as f64).sqrt(), n_samples: n }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self { mean: self.mean * factor, std_err: self.std_err * factor.abs(), ..self }
    }

    /// `|mean - target| <= k * std_err`.
    pub fn agrees_with(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.std_err
    }
}

/// Monte-Carlo differential entropy in nats: `-mean(log_density(Y_i))` over
/// `n_samples` draws from `sampler`, all from the stream `(seed, 0)`.
pub fn mc_differential_entropy<S, D>(mut sampler: S, log_density: D, n_samples: usize, seed: u64) -> Result<McEstimate>
where
    S: FnMut(&mut Rng) -> f64,
    D: Fn(f64) -> f64,
{
    if n_samples < MIN_MC_SAMPLES {
        return Err(crate::error::invalid("Monte-Carlo entropy needs at least 10^4 samples"));
    }
    let mut rng = stream_rng(seed, 0);
    Ok(McEstimate::accumulate(n_samples, || -log_density(sampler(&mut rng))))
}
