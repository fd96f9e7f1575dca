//! Rates of the two-sender BPSK coherent-state channel.
//!
//! Each sender transmits `±α` (α real, `alpha2 = |α|²` is the mean photon
//! number seen at the receiver after loss compensation). All rates are in
//! bits per channel use.
//!
//! | quantity | meaning |
//! |---|---|
//! | [`comp_upper`] | single-sender Holevo bound on the computation rate |
//! | [`comp_lower_collective`] | `I(A⊕B; Y)` at uniform priors, collective measurement |
//! | [`comp_onoff`] | same with symbolwise on-off detection |
//! | [`comp_homodyne`] | same with symbolwise homodyne detection |
//! | [`c_sd`] | best symmetric rate of a simultaneous-decoding MAC code |
//! | [`c_sd_measured`] | the same restricted to symbolwise detection |

mod constants;
mod optimize;
mod sweep;

pub use constants::{bpsk_constants, BpskConstants};
pub use optimize::{maximize_over_priors, PriorOptimum};
pub use sweep::{comp_rate, gain, sweep, threshold, RateCurve, RatePoint, THRESHOLD_BRACKET};

use core::f64::consts::{LN_2, PI};
use num_traits::Float;

use crate::channels::{ensemble_information, induced_pair_channel, InducedPairChannel, Measurement};
use crate::numerics::{binary_entropy, eta, integrate_1d, von_neumann_entropy, SymMatrix};
use crate::{Error, Result};

/// Receiver strategy whose computation rate is being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Detection {
    Collective,
    OnOff,
    Homodyne,
}

impl Detection {
    pub const ALL: [Detection; 3] = [Detection::Collective, Detection::OnOff, Detection::Homodyne];

    pub fn name(self) -> &'static str {
        match self {
            Detection::Collective => "collective",
            Detection::OnOff => "onoff",
            Detection::Homodyne => "homodyne",
        }
    }

    /// The symbolwise measurement, if any.
    pub fn measurement(self) -> Option<Measurement> {
        match self {
            Detection::Collective => None,
            Detection::OnOff => Some(Measurement::OnOff),
            Detection::Homodyne => Some(Measurement::Homodyne),
        }
    }
}

impl core::str::FromStr for Detection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "collective" => Ok(Detection::Collective),
            "onoff" | "on-off" => Ok(Detection::OnOff),
            "homodyne" => Ok(Detection::Homodyne),
            other => Err(crate::error::invalid(alloc::format!("unknown detection '{other}'"))),
        }
    }
}

impl From<Measurement> for Detection {
    fn from(m: Measurement) -> Self {
        match m {
            Measurement::OnOff => Detection::OnOff,
            Measurement::Homodyne => Detection::Homodyne,
        }
    }
}

/// `h(a_o)`: upper bound on the computation rate.
pub fn comp_upper(alpha2: f64) -> Result<f64> {
    binary_entropy(bpsk_constants(alpha2)?.a_o)
}

/// Density matrix of the output at uniform priors in the basis
/// `{|0⟩, |ē_{2α}⟩, |o_{2α}⟩}`; block diagonal 2×2 ⊕ 1×1.
pub fn uniform_sum_output_state(alpha2: f64) -> Result<SymMatrix> {
    let k = bpsk_constants(alpha2)?;
    let off = k.a_ebar2.sqrt() * k.e2 / 2.0;
    SymMatrix::new3([[k.c_tilde0, off, 0.0], [off, k.a_ebar2 / 2.0, 0.0], [0.0, 0.0, k.a_o2 / 2.0]])
}

/// `I(A⊕B; Y)` at uniform priors with a collective measurement.
pub fn comp_lower_collective(alpha2: f64) -> Result<f64> {
    let k = bpsk_constants(alpha2)?;
    let h = von_neumann_entropy(&uniform_sum_output_state(alpha2)?)?;
    let rate = h - 0.5 * binary_entropy(k.a_o2)?;
    debug_assert!((h - i_ab(0.5, 0.5, alpha2)?).abs() < 1e-10, "uniform-prior state mismatch");
    Ok(rate)
}

/// `h(c̃₀) - h(e^{-4|α|²})/2`, the rate reached by on-off detection.
pub fn comp_onoff(alpha2: f64) -> Result<f64> {
    let k = bpsk_constants(alpha2)?;
    Ok(binary_entropy(k.c_tilde0)? - 0.5 * binary_entropy(k.e4)?)
}

/// Homodyne computation rate `(h₁ - h₂/2 - 1/4) / ln 2`, with `h₁, h₂`
/// evaluated in nats by quadrature over `±(2|α| + 6)`.
///
/// `h₁` integrates `u = -x ln x` of the three-component output mixture and
/// `h₂` that of the two-component (`a = b`) mixture, both without the
/// `√(2/π)` normalization inside `u`; the `-1/4` nat constant is only
/// consistent with natural logarithms.
pub fn comp_homodyne(alpha2: f64) -> Result<f64> {
    if !(alpha2 >= 0.0) || !alpha2.is_finite() {
        return Err(Error::Domain { what: "alpha2", value: alpha2 });
    }
    let shift = 2.0 * alpha2.sqrt();
    let norm = (2.0 / PI).sqrt();
    let u = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    let g = |y: f64| (-2.0 * y * y).exp();
    let range = shift + 6.0;
    let h1 = integrate_1d(|y| norm * u(0.25 * g(y - shift) + 0.25 * g(y + shift) + 0.5 * g(y)), -range, range, 1e-10)?;
    let h2 = integrate_1d(|y| norm * u(0.5 * g(y - shift) + 0.5 * g(y + shift)), -range, range, 1e-10)?;
    Ok(((h1 - 0.5 * h2 - 0.25) / LN_2).max(0.0))
}

/// `I(A; Y | B)` for prior `P_A(0) = p_a0`: entropy of
/// `[[a_o, c], [c, a_e]]` with `c = (1 - 2 p_a0) √(a_o a_e)`.
pub fn i_a_given_b(p_a0: f64, alpha2: f64) -> Result<f64> {
    check_prob(p_a0)?;
    let k = bpsk_constants(alpha2)?;
    let c = (1.0 - 2.0 * p_a0) * (k.a_o * k.a_e).sqrt();
    von_neumann_entropy(&SymMatrix::new2([[k.a_o, c], [c, k.a_e]])?)
}

/// Output state for product priors in the basis `{|0⟩, |o_{2α}⟩, |ē_{2α}⟩}`.
pub fn joint_output_state(p_a0: f64, p_b0: f64, alpha2: f64) -> Result<SymMatrix> {
    check_prob(p_a0)?;
    check_prob(p_b0)?;
    let k = bpsk_constants(alpha2)?;
    let p00 = p_a0 * p_b0;
    let p11 = (1.0 - p_a0) * (1.0 - p_b0);
    let p_same = p00 + p11;
    let c0 = (1.0 - p_same) + p_same * k.e4;
    let c1 = (p00 - p11) * (k.a_ebar2 * k.a_o2).sqrt();
    let c2 = (p00 - p11) * k.a_o2.sqrt() * k.e2;
    let c3 = p_same * k.a_ebar2.sqrt() * k.e2;
    let m = SymMatrix::new3([[c0, c2, c3], [c2, p_same * k.a_o2, c1], [c3, c1, p_same * k.a_ebar2]])?;
    debug_assert!((m.trace() - 1.0).abs() < 1e-12);
    Ok(m)
}

/// `I(AB; Y)` for product priors.
pub fn i_ab(p_a0: f64, p_b0: f64, alpha2: f64) -> Result<f64> {
    von_neumann_entropy(&joint_output_state(p_a0, p_b0, alpha2)?)
}

/// Min-cut objective of a simultaneous-decoding code at the given priors.
pub fn sd_objective(p_a0: f64, p_b0: f64, alpha2: f64) -> Result<f64> {
    Ok(i_a_given_b(p_a0, alpha2)?.min(i_a_given_b(p_b0, alpha2)?).min(0.5 * i_ab(p_a0, p_b0, alpha2)?))
}

/// Best symmetric simultaneous-decoding rate with collective measurement.
pub fn c_sd(alpha2: f64) -> Result<PriorOptimum> {
    bpsk_constants(alpha2)?;
    maximize_over_priors(|pa, pb| sd_objective(pa, pb, alpha2))
}

/// Min-cut objective when every symbol is measured with `pair`'s detection.
pub fn sd_objective_measured(pair: &InducedPairChannel, p_a0: f64, p_b0: f64) -> Result<f64> {
    check_prob(p_a0)?;
    check_prob(p_b0)?;
    let pa = [p_a0, 1.0 - p_a0];
    let pb = [p_b0, 1.0 - p_b0];
    let mut i_a_b = 0.0;
    let mut i_b_a = 0.0;
    for fixed in 0..2u32 {
        let f = fixed as usize;
        if pb[f] > 0.0 {
            i_a_b += pb[f] * ensemble_information(&[(pa[0], pair.law(0, fixed)), (pa[1], pair.law(1, fixed))])?;
        }
        if pa[f] > 0.0 {
            i_b_a += pa[f] * ensemble_information(&[(pb[0], pair.law(fixed, 0)), (pb[1], pair.law(fixed, 1))])?;
        }
    }
    let joint: alloc::vec::Vec<_> = (0..4u32)
        .map(|ab| {
            let (a, b) = (ab >> 1, ab & 1);
            (pa[a as usize] * pb[b as usize], pair.law(a, b))
        })
        .collect();
    let i_joint = ensemble_information(&joint)?;
    Ok(i_a_b.min(i_b_a).min(0.5 * i_joint))
}

/// Simultaneous-decoding rate when the receiver measures each symbol.
pub fn c_sd_measured(measurement: Measurement, alpha2: f64) -> Result<PriorOptimum> {
    let pair = induced_pair_channel(measurement, alpha2)?;
    maximize_over_priors(|pa, pb| sd_objective_measured(&pair, pa, pb))
}

/// Symmetric simultaneous-decoding rate for a detection class: collective
/// uses [`c_sd`], measured classes use [`c_sd_measured`].
pub fn c_sd_for(detection: Detection, alpha2: f64) -> Result<PriorOptimum> {
    match detection.measurement() {
        None => c_sd(alpha2),
        Some(m) => c_sd_measured(m, alpha2),
    }
}

/// Evaluand of the large-amplitude limit:
/// `η(P01 + P10) + η(P00) + η(P11)` for product priors.
pub fn i_max_inf_objective(p_a0: f64, p_b0: f64) -> Result<f64> {
    check_prob(p_a0)?;
    check_prob(p_b0)?;
    let p00 = p_a0 * p_b0;
    let p11 = (1.0 - p_a0) * (1.0 - p_b0);
    Ok(eta(1.0 - p00 - p11)? + eta(p00)? + eta(p11)?)
}

/// Limit of `max I(AB; Y)` as `|α|² → ∞`.
pub fn i_max_inf() -> Result<PriorOptimum> {
    maximize_over_priors(i_max_inf_objective)
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain { what: "prior probability", value: p })
    }
}

#[cfg(test)]
mod tests;
