use alloc::vec::Vec;
use core::f64::consts::{LOG2_E, PI};
use num_traits::Float;
use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};

use super::click_entropy;
use crate::numerics::integrate_1d;
use crate::{Error, Result, Rng};

/// Sentinel log-probability for impossible outcomes. Finite so that sums
/// stay ordered instead of turning into NaN.
pub const LOG_ZERO: f64 = -1.0e300;

/// Homodyne noise variance in shot-noise units.
pub const HOMODYNE_VARIANCE: f64 = 0.25;

/// One measurement result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Off,
    On,
    Quadrature(f64),
}

/// Equal-variance (1/4) Gaussian mixture, stored as `(weight, mean)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMixture {
    components: Vec<(f64, f64)>,
}

impl GaussianMixture {
    pub fn single(mean: f64) -> Self {
        Self { components: alloc::vec![(1.0, mean)] }
    }

    /// Components with equal means are merged.
    pub fn new(components: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (w, mean) in components {
            if w == 0.0 {
                continue;
            }
            match merged.iter_mut().find(|(_, m)| *m == mean) {
                Some(slot) => slot.0 += w,
                None => merged.push((w, mean)),
            }
        }
        Self { components: merged }
    }

    pub fn components(&self) -> &[(f64, f64)] {
        &self.components
    }

    pub fn log_density(&self, y: f64) -> f64 {
        let log_norm = 0.5 * (2.0 / PI).ln();
        let exps: Vec<f64> =
            self.components.iter().map(|&(w, m)| w.ln() - (y - m) * (y - m) / (2.0 * HOMODYNE_VARIANCE)).collect();
        let hi = exps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        log_norm + hi + exps.iter().map(|e| (e - hi).exp()).sum::<f64>().ln()
    }

    pub fn density(&self, y: f64) -> f64 {
        let norm = (2.0 / PI).sqrt();
        self.components.iter().map(|&(w, m)| w * norm * (-(y - m) * (y - m) / (2.0 * HOMODYNE_VARIANCE)).exp()).sum()
    }

    /// Differential entropy in nats; quadrature over the means ± 6.
    pub fn entropy_nats(&self) -> Result<f64> {
        if self.components.len() == 1 {
            return Ok(0.5 * (2.0 * PI * core::f64::consts::E * HOMODYNE_VARIANCE).ln());
        }
        let lo = self.components.iter().map(|c| c.1).fold(f64::INFINITY, f64::min) - 6.0;
        let hi = self.components.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max) + 6.0;
        integrate_1d(
            |y| {
                let lp = self.log_density(y);
                -lp.exp() * lp
            },
            lo,
            hi,
            1e-11,
        )
    }

    pub fn sample(&self, rng: &mut Rng) -> f64 {
        let mut u = rng.random::<f64>();
        let mut mean = self.components[self.components.len() - 1].1;
        for &(w, m) in &self.components {
            if u < w {
                mean = m;
                break;
            }
            u -= w;
        }
        let z: f64 = StandardNormal.sample(rng);
        mean + HOMODYNE_VARIANCE.sqrt() * z
    }
}

/// Output law of one measured symbol.
#[derive(Debug, Clone, PartialEq)]
pub enum OutputLaw {
    /// On-off detection; `p_off` is the probability of no click.
    Click { p_off: f64 },
    /// Homodyne detection.
    Gaussian(GaussianMixture),
}

impl OutputLaw {
    /// Convex combination of laws of the same kind.
    ///
    /// # Panics
    /// If click and Gaussian laws are mixed.
    pub fn mix(parts: &[(f64, OutputLaw)]) -> OutputLaw {
        match parts.first() {
            Some((_, OutputLaw::Click { .. })) => OutputLaw::Click {
                p_off: parts
                    .iter()
                    .map(|(w, law)| match law {
                        OutputLaw::Click { p_off } => w * p_off,
                        OutputLaw::Gaussian(_) => panic!("cannot mix click and Gaussian laws"),
                    })
                    .sum(),
            },
            Some((_, OutputLaw::Gaussian(_))) => {
                OutputLaw::Gaussian(GaussianMixture::new(parts.iter().flat_map(|(w, law)| match law {
                    OutputLaw::Gaussian(g) => g.components.iter().map(move |&(cw, m)| (w * cw, m)),
                    OutputLaw::Click { .. } => panic!("cannot mix click and Gaussian laws"),
                })))
            }
            None => panic!("empty mixture"),
        }
    }

    pub fn log_likelihood(&self, outcome: Outcome) -> Result<f64> {
        let guard = |p: f64, lp: f64| if p > 0.0 { lp } else { LOG_ZERO };
        match (self, outcome) {
            (OutputLaw::Click { p_off }, Outcome::Off) => Ok(guard(*p_off, p_off.ln())),
            (OutputLaw::Click { p_off }, Outcome::On) => Ok(guard(1.0 - p_off, (-p_off).ln_1p())),
            (OutputLaw::Gaussian(g), Outcome::Quadrature(y)) => Ok(g.log_density(y)),
            _ => Err(Error::InvalidParameter(alloc::format!("{outcome:?} is not an outcome of {self:?}"))),
        }
    }

    pub fn sample(&self, rng: &mut Rng) -> Outcome {
        match self {
            OutputLaw::Click { p_off } => {
                if rng.random::<f64>() < *p_off {
                    Outcome::Off
                } else {
                    Outcome::On
                }
            }
            OutputLaw::Gaussian(g) => Outcome::Quadrature(g.sample(rng)),
        }
    }

    /// Shannon entropy (click) or differential entropy (Gaussian), in bits.
    pub fn entropy_bits(&self) -> Result<f64> {
        match self {
            OutputLaw::Click { p_off } => click_entropy(*p_off),
            OutputLaw::Gaussian(g) => Ok(g.entropy_nats()? * LOG2_E),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixture_merges_equal_means() {
        let g = GaussianMixture::new([(0.25, 1.0), (0.5, 0.0), (0.25, 1.0)]);
        assert_eq!(g.components(), &[(0.5, 1.0), (0.5, 0.0)]);
    }

    #[test]
    fn mixture_density_normalized() {
        let g = GaussianMixture::new([(0.25, -2.0), (0.5, 0.0), (0.25, 2.0)]);
        let mass = integrate_1d(|y| g.density(y), -9.0, 9.0, 1e-12).unwrap();
        assert!((mass - 1.0).abs() < 1e-10);
        for y in [-3.0, 0.1, 2.5] {
            assert!((g.log_density(y) - g.density(y).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn single_gaussian_entropy_matches_quadrature() {
        let g = GaussianMixture::single(0.0);
        let closed = g.entropy_nats().unwrap();
        let quad = integrate_1d(|y| -g.density(y) * g.log_density(y), -6.0, 6.0, 1e-12).unwrap();
        assert!((closed - quad).abs() < 1e-10);
    }

    #[test]
    #[should_panic]
    fn refuses_mixed_kinds() {
        OutputLaw::mix(&[
            (0.5, OutputLaw::Click { p_off: 1.0 }),
            (0.5, OutputLaw::Gaussian(GaussianMixture::single(0.0))),
        ]);
    }
}
