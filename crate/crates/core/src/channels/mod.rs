//! Classical channels induced by measuring the BPSK cq-MAC output one
//! symbol at a time.
//!
//! The receiver sees the coherent state with amplitude
//! `((-1)^a + (-1)^b)|α|` (α real), i.e. `±2|α|` when `a = b` and vacuum when
//! `a ≠ b`. On-off detection reports whether any photon was registered;
//! homodyne detection returns that amplitude plus Gaussian noise of variance
//! 1/4.
//!
//! Orientation note: "off" is certain exactly when `a ⊕ b = 1` (vacuum). This
//! is the physically consistent labelling; swapping the labels would not
//! change any mutual information.

mod laws;

pub use laws::{GaussianMixture, Outcome, OutputLaw, HOMODYNE_VARIANCE, LOG_ZERO};

use alloc::vec::Vec;
use num_traits::Float;
use rand::Rng as _;

use crate::numerics::{eta, McEstimate, Pmf, MIN_MC_SAMPLES};
use crate::{stream_rng, Error, Result, Rng};

/// Single-symbol measurement applied by the receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measurement {
    OnOff,
    Homodyne,
}

/// Channel `(a, b) ↦ law` obtained by measuring each received symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InducedPairChannel {
    measurement: Measurement,
    alpha2: f64,
}

pub fn induced_pair_channel(measurement: Measurement, alpha2: f64) -> Result<InducedPairChannel> {
    if !(alpha2 >= 0.0) || !alpha2.is_finite() {
        return Err(Error::Domain { what: "alpha2", value: alpha2 });
    }
    Ok(InducedPairChannel { measurement, alpha2 })
}

impl InducedPairChannel {
    pub fn measurement(&self) -> Measurement {
        self.measurement
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    /// Received amplitude `((-1)^a + (-1)^b)|α|`.
    pub fn amplitude(&self, a: u32, b: u32) -> f64 {
        let sign = |x: u32| if x & 1 == 0 { 1.0 } else { -1.0 };
        (sign(a) + sign(b)) * self.alpha2.sqrt()
    }

    pub fn law(&self, a: u32, b: u32) -> OutputLaw {
        let amp = self.amplitude(a, b);
        match self.measurement {
            // vacuum probability of a coherent state |β> is e^{-|β|²}
            Measurement::OnOff => OutputLaw::Click { p_off: (-amp * amp).exp() },
            Measurement::Homodyne => OutputLaw::Gaussian(GaussianMixture::single(amp)),
        }
    }

    pub fn sample(&self, a: u32, b: u32, rng: &mut Rng) -> Outcome {
        self.law(a, b).sample(rng)
    }
}

/// Channel from `s = a ⊕ b` to the output when the individual inputs are
/// dithered uniformly: `law(s) = ½ law(0, s) + ½ law(1, s ⊕ 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegradedSumChannel {
    base: InducedPairChannel,
    laws: [OutputLaw; 2],
}

pub fn degraded_sum_channel(pair: &InducedPairChannel) -> DegradedSumChannel {
    let law = |s: u32| OutputLaw::mix(&[(0.5, pair.law(0, s)), (0.5, pair.law(1, s ^ 1))]);
    DegradedSumChannel { base: *pair, laws: [law(0), law(1)] }
}

impl DegradedSumChannel {
    pub fn base(&self) -> &InducedPairChannel {
        &self.base
    }

    pub fn law(&self, s: u32) -> &OutputLaw {
        &self.laws[(s & 1) as usize]
    }

    pub fn sample(&self, s: u32, rng: &mut Rng) -> Outcome {
        self.law(s).sample(rng)
    }

    /// Log-likelihood (nats) of `outcome` given sum symbol `s`; impossible
    /// outcomes give [`LOG_ZERO`].
    pub fn log_likelihood(&self, outcome: Outcome, s: u32) -> Result<f64> {
        self.law(s).log_likelihood(outcome)
    }

    /// Transition matrix when the output alphabet is finite.
    pub fn to_discrete(&self) -> Option<DiscreteChannel> {
        let rows = self
            .laws
            .iter()
            .map(|law| match law {
                OutputLaw::Click { p_off } => Some(alloc::vec![*p_off, 1.0 - p_off]),
                OutputLaw::Gaussian(_) => None,
            })
            .collect::<Option<Vec<_>>>()?;
        DiscreteChannel::new(rows).ok()
    }
}

/// Finite-alphabet channel; row `x` is the output pmf for input `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteChannel {
    rows: Vec<Pmf>,
}

impl DiscreteChannel {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let outputs = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .into_iter()
            .map(|r| {
                if r.len() != outputs {
                    return Err(Error::LengthMismatch { expected: outputs, found: r.len() });
                }
                Pmf::new(r)
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(crate::error::invalid("channel without inputs"));
        }
        Ok(Self { rows })
    }

    pub fn noiseless(q: usize) -> Self {
        let rows = (0..q)
            .map(|x| {
                let mut r = alloc::vec![0.0; q];
                r[x] = 1.0;
                r
            })
            .collect();
        Self::new(rows).expect("identity rows")
    }

    pub fn inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn outputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn transition(&self, x: usize, y: usize) -> f64 {
        self.rows[x].probs()[y]
    }
}

/// Exact `I(X;Y)` in bits.
pub fn discrete_mutual_information(ch: &DiscreteChannel, input: &Pmf) -> Result<f64> {
    if input.len() != ch.inputs() {
        return Err(Error::LengthMismatch { expected: ch.inputs(), found: input.len() });
    }
    let px = input.probs();
    let mut mi = 0.0;
    for y in 0..ch.outputs() {
        let py: f64 = (0..ch.inputs()).map(|x| px[x] * ch.transition(x, y)).sum();
        for (x, &p) in px.iter().enumerate() {
            let joint = p * ch.transition(x, y);
            if joint > 0.0 {
                mi += joint * (ch.transition(x, y) / py).log2();
            }
        }
    }
    Ok(mi)
}

/// `I(X;Y)` in bits of an ensemble `{(weight, law)}` of output laws, computed as
/// `H(mixture) - Σ weight·H(law)` (differential entropies for Gaussian laws).
pub fn ensemble_information(ensemble: &[(f64, OutputLaw)]) -> Result<f64> {
    let mix = OutputLaw::mix(ensemble);
    let mut conditional = 0.0;
    for (w, law) in ensemble {
        if *w > 0.0 {
            conditional += w * law.entropy_bits()?;
        }
    }
    Ok((mix.entropy_bits()? - conditional).max(0.0))
}

/// Monte-Carlo `I(X;Y)` in bits: the mean of `ln p(y|x) - ln Σ_x' P(x') p(y|x')`
/// over `n_samples` joint draws.
pub fn mc_mutual_information(ch: &DegradedSumChannel, input: &Pmf, n_samples: usize, seed: u64) -> Result<McEstimate> {
    if input.len() != 2 {
        return Err(Error::LengthMismatch { expected: 2, found: input.len() });
    }
    if n_samples < MIN_MC_SAMPLES {
        return Err(crate::error::invalid("Monte-Carlo mutual information needs at least 10^4 samples"));
    }
    let p0 = input.probs()[0];
    let mut rng = stream_rng(seed, 0);
    let mut failure = None;
    let est = McEstimate::accumulate(n_samples, || {
        let s = if rng.random::<f64>() < p0 { 0 } else { 1 };
        let y = ch.sample(s, &mut rng);
        let term = (|| {
            let l0 = ch.log_likelihood(y, 0)?;
            let l1 = ch.log_likelihood(y, 1)?;
            let own = if s == 0 { l0 } else { l1 };
            let mixed = log_sum_exp2(p0.ln() + l0, (1.0 - p0).ln() + l1);
            Ok::<f64, Error>(own - mixed)
        })();
        term.unwrap_or_else(|e| {
            failure = Some(e);
            0.0
        })
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(est.scaled(core::f64::consts::LOG2_E)),
    }
}

fn log_sum_exp2(a: f64, b: f64) -> f64 {
    let hi = a.max(b);
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + ((a - hi).exp() + (b - hi).exp()).ln()
}

/// Exponent `E(s) = ln Σ_x q⁻¹ Σ_y W(y|x)^{1-s} W_mix(y)^s` (nats) of the
/// random affine-code error bound, for commuting (classical) output laws.
/// Near `s = 0` it behaves like `-s·I(X;Y)_uniform`.
pub fn error_exponent(ch: &DiscreteChannel, s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain { what: "error exponent parameter", value: s });
    }
    let q = ch.inputs() as f64;
    let mut total = 0.0;
    for y in 0..ch.outputs() {
        let mix: f64 = (0..ch.inputs()).map(|x| ch.transition(x, y)).sum::<f64>() / q;
        if mix == 0.0 {
            continue;
        }
        let ms = mix.powf(s);
        for x in 0..ch.inputs() {
            let w = ch.transition(x, y);
            if w > 0.0 {
                total += w.powf(1.0 - s) * ms / q;
            }
        }
    }
    Ok(total.ln())
}

/// Shannon entropy of a click law, bits.
pub(crate) fn click_entropy(p_off: f64) -> Result<f64> {
    Ok(eta(p_off)? + eta(1.0 - p_off)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn onoff_pair_laws() {
        let vac = induced_pair_channel(Measurement::OnOff, 0.0).unwrap();
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(vac.law(a, b), OutputLaw::Click { p_off: 1.0 });
        }
        let ch = induced_pair_channel(Measurement::OnOff, 1.0).unwrap();
        let e4 = (-4.0f64).exp();
        assert!((e4 - 0.0183156388887342).abs() < 1e-15);
        assert_eq!(ch.law(0, 0), OutputLaw::Click { p_off: e4 });
        assert_eq!(ch.law(1, 1), OutputLaw::Click { p_off: e4 });
        assert_eq!(ch.law(0, 1), OutputLaw::Click { p_off: 1.0 });
        assert_eq!(ch.law(0, 1), ch.law(1, 0));
        assert!(induced_pair_channel(Measurement::OnOff, -1.0).is_err());
    }

    #[test]
    fn homodyne_pair_laws() {
        let ch = induced_pair_channel(Measurement::Homodyne, 2.25).unwrap();
        assert_eq!(ch.law(0, 1), OutputLaw::Gaussian(GaussianMixture::single(0.0)));
        assert_eq!(ch.law(0, 0), OutputLaw::Gaussian(GaussianMixture::single(3.0)));
        assert_eq!(ch.law(1, 1), OutputLaw::Gaussian(GaussianMixture::single(-3.0)));
    }

    #[test]
    fn degraded_onoff_is_z_channel() {
        let ch = degraded_sum_channel(&induced_pair_channel(Measurement::OnOff, 1.0).unwrap());
        let d = ch.to_discrete().unwrap();
        let e4 = (-4.0f64).exp();
        assert!((d.transition(0, 0) - e4).abs() < 1e-16);
        assert_eq!(d.transition(1, 0), 1.0);
        let big = degraded_sum_channel(&induced_pair_channel(Measurement::OnOff, 50.0).unwrap());
        let d = big.to_discrete().unwrap();
        assert!(d.transition(0, 0) < 1e-80);
        assert_eq!(d.transition(1, 1), 0.0);
    }

    #[test]
    fn degraded_homodyne_is_symmetric_mixture() {
        let ch = degraded_sum_channel(&induced_pair_channel(Measurement::Homodyne, 1.0).unwrap());
        match ch.law(0) {
            OutputLaw::Gaussian(g) => {
                let mut comps = g.components().to_vec();
                comps.sort_by(|x, y| x.1.total_cmp(&y.1));
                assert_eq!(comps, [(0.5, -2.0), (0.5, 2.0)]);
            }
            other => panic!("unexpected law {other:?}"),
        }
        assert!(ch.to_discrete().is_none());
    }

    #[test]
    fn log_likelihood_examples() {
        let ch = degraded_sum_channel(&induced_pair_channel(Measurement::OnOff, 1.0).unwrap());
        assert_eq!(ch.log_likelihood(Outcome::Off, 1).unwrap(), 0.0);
        assert_eq!(ch.log_likelihood(Outcome::On, 1).unwrap(), LOG_ZERO);
        assert!(ch.log_likelihood(Outcome::Quadrature(0.0), 1).is_err());
        let hom = degraded_sum_channel(&induced_pair_channel(Measurement::Homodyne, 1.0).unwrap());
        let expected = (2.0 / core::f64::consts::PI).sqrt().ln();
        assert!((hom.log_likelihood(Outcome::Quadrature(0.0), 1).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn discrete_mi_examples() {
        let u = Pmf::uniform(2);
        assert!((discrete_mutual_information(&DiscreteChannel::noiseless(2), &u).unwrap() - 1.0).abs() < 1e-15);
        let off = DiscreteChannel::new(alloc::vec![alloc::vec![1.0, 0.0], alloc::vec![1.0, 0.0]]).unwrap();
        assert_eq!(discrete_mutual_information(&off, &u).unwrap(), 0.0);
        assert!(discrete_mutual_information(&off, &Pmf::uniform(3)).is_err());
    }

    #[test]
    fn exponent_examples() {
        let clean = DiscreteChannel::noiseless(2);
        for s in [1e-6, 0.1, 0.5] {
            let e = error_exponent(&clean, s).unwrap();
            assert!((e / s + core::f64::consts::LN_2).abs() < 1e-9);
        }
        let off = DiscreteChannel::new(alloc::vec![alloc::vec![1.0, 0.0], alloc::vec![1.0, 0.0]]).unwrap();
        assert_eq!(error_exponent(&off, 0.3).unwrap(), 0.0);
        assert!(error_exponent(&clean, 0.0).is_err());
        assert!(error_exponent(&clean, 1.0).is_err());
    }
}
