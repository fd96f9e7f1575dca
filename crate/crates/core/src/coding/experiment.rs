use alloc::vec::Vec;
use num_traits::Float;

use super::{decodes_correctly, generate_codebook};
use crate::channels::{degraded_sum_channel, induced_pair_channel, Measurement, Outcome};
use crate::field::{FpVector, PrimeField};
use crate::{stream_rng, Result};

pub const MIN_TRIALS: usize = 100;

const Z_95: f64 = 1.959_963_984_540_054;

/// Block error count of a decoding experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorStats {
    pub n: usize,
    pub ell: usize,
    pub trials: usize,
    pub errors: usize,
    pub p_hat: f64,
    /// Wilson score interval at 95 %.
    pub wilson_ci: (f64, f64),
}

impl ErrorStats {
    pub fn from_counts(n: usize, ell: usize, trials: usize, errors: usize) -> Self {
        assert!(errors <= trials && trials > 0);
        Self {
            n,
            ell,
            trials,
            errors,
            p_hat: errors as f64 / trials as f64,
            wilson_ci: wilson_interval(errors, trials),
        }
    }

    pub fn rate(&self) -> f64 {
        self.ell as f64 / self.n as f64
    }
}

/// Wilson score interval for `successes` out of `trials` at 95 % confidence.
pub fn wilson_interval(successes: usize, trials: usize) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z_95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// Monte-Carlo block error rate of the COMP code over the measured channel.
///
/// The codebook comes from stream `(seed, 0)`; trial `t` draws its messages,
/// dither and channel noise from stream `(seed, t + 1)`. Symbols pass through
/// the physical pair channel; decoding uses the degraded sum channel.
pub fn run_error_experiment(
    measurement: Measurement,
    alpha2: f64,
    n: usize,
    ell: usize,
    trials: usize,
    seed: u64,
) -> Result<ErrorStats> {
    if trials < MIN_TRIALS {
        return Err(crate::error::invalid("error experiment needs at least 100 trials"));
    }
    if n > 64 {
        return Err(crate::error::invalid("block length is limited to 64"));
    }
    let cb = generate_codebook(ell, n, seed)?;
    let pair = induced_pair_channel(measurement, alpha2)?;
    let sum_ch = degraded_sum_channel(&pair);
    let f2 = PrimeField::BINARY;
    let mut errors = 0;
    let mut outcomes: Vec<Outcome> = Vec::with_capacity(n);
    for t in 0..trials {
        let mut rng = stream_rng(seed, t as u64 + 1);
        let m_a = FpVector::random(f2, ell, &mut rng);
        let m_b = FpVector::random(f2, ell, &mut rng);
        let e_prime = cb.draw_dither(&mut rng);
        let (x_a, x_b) = cb.encode_pair(&m_a, &m_b, &e_prime)?;
        outcomes.clear();
        outcomes.extend(x_a.coords().iter().zip(x_b.coords()).map(|(&a, &b)| pair.sample(a, b, &mut rng)));
        if !decodes_correctly(&cb, &outcomes, &sum_ch, &m_a.add(&m_b)?)? {
            errors += 1;
        }
    }
    Ok(ErrorStats::from_counts(n, ell, trials, errors))
}
