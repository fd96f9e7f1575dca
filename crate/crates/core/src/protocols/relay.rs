//! Two-way relaying: compute-and-forward (CAF) against decode-and-forward (DF).

use super::{CompLink, Tally};
use crate::field::{FpVector, PrimeField};
use crate::rates::{c_sd, c_sd_for, comp_rate, gain, Detection};
use crate::{stream_rng, Error, Result, Rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// The relay decodes only `m_a ⊕ m_b` and broadcasts it.
    Caf,
    /// The relay decodes both messages.
    Df,
}

/// Uplink usage of one relaying strategy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelayReport {
    pub alpha2: f64,
    pub strategy: Strategy,
    pub detection: Detection,
    /// Bits per channel use per sender.
    pub uplink_rate_used: f64,
    /// `1 / uplink_rate_used`.
    pub uplink_uses_per_bit: f64,
    /// Outcome of a simulated exchange; `None` for analytic accounting.
    pub correctness: Option<bool>,
}

impl RelayReport {
    fn analytic(alpha2: f64, strategy: Strategy, detection: Detection, rate: f64) -> Self {
        Self { alpha2, strategy, detection, uplink_rate_used: rate, uplink_uses_per_bit: 1.0 / rate, correctness: None }
    }
}

/// One simulated CAF exchange.
#[derive(Debug, Clone, PartialEq)]
pub struct CafExchange {
    pub report: RelayReport,
    /// The relay's decoded sum, broadcast on a noiseless downlink.
    pub relay_sum: FpVector,
    /// A's estimate of `msg_b`: `relay_sum ⊖ msg_a`.
    pub a_recovers: FpVector,
    /// B's estimate of `msg_a`: `relay_sum ⊖ msg_b`.
    pub b_recovers: FpVector,
}

/// Simulates the uplink of one exchange with randomness from `(seed, 1)`.
pub fn caf_exchange(link: &CompLink, msg_a: &FpVector, msg_b: &FpVector, seed: u64) -> Result<CafExchange> {
    caf_exchange_with(link, msg_a, msg_b, &mut stream_rng(seed, 1))
}

fn caf_exchange_with(link: &CompLink, msg_a: &FpVector, msg_b: &FpVector, rng: &mut Rng) -> Result<CafExchange> {
    for m in [msg_a, msg_b] {
        if m.field() != PrimeField::BINARY {
            return Err(crate::error::invalid("relay messages must be binary"));
        }
        if m.len() != link.ell() {
            return Err(Error::LengthMismatch { expected: link.ell(), found: m.len() });
        }
    }
    let relay_sum = link.transmit_sum(msg_a, msg_b, rng)?;
    let a_recovers = relay_sum.sub(msg_a)?;
    let b_recovers = relay_sum.sub(msg_b)?;
    let correct = &a_recovers == msg_b && &b_recovers == msg_a;
    let report = RelayReport {
        alpha2: link.alpha2(),
        strategy: Strategy::Caf,
        detection: Detection::from(link.measurement()),
        uplink_rate_used: link.rate(),
        uplink_uses_per_bit: 1.0 / link.rate(),
        correctness: Some(correct),
    };
    Ok(CafExchange { report, relay_sum, a_recovers, b_recovers })
}

/// `runs` exchanges of uniform messages; run `r` uses stream `(seed, r + 1)`.
pub fn caf_batch(link: &CompLink, runs: usize, seed: u64) -> Result<Tally> {
    if runs == 0 {
        return Err(crate::error::invalid("need at least one run"));
    }
    let mut ok = 0;
    for r in 0..runs {
        let mut rng = stream_rng(seed, r as u64 + 1);
        let msg_a = FpVector::random(PrimeField::BINARY, link.ell(), &mut rng);
        let msg_b = FpVector::random(PrimeField::BINARY, link.ell(), &mut rng);
        if caf_exchange_with(link, &msg_a, &msg_b, &mut rng)?.report.correctness == Some(true) {
            ok += 1;
        }
    }
    Ok(Tally::new(runs, ok))
}

/// Analytic uplink accounting of CAF against DF at one photon number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotAccounting {
    pub alpha2: f64,
    pub detection: Detection,
    /// CAF at the COMP rate of `detection`.
    pub caf: RelayReport,
    /// DF at the collective simultaneous-decoding rate, the reference
    /// against which COMP gains and thresholds are quoted.
    pub df: RelayReport,
    /// DF restricted to the same measurement as CAF (equal to `df` for
    /// collective detection).
    pub df_same_class: RelayReport,
    /// CAF uplink uses over DF uplink uses, i.e. `c_sd / comp`.
    pub caf_over_df: f64,
    /// DF uplink uses over CAF uplink uses, i.e. `comp / c_sd`.
    pub df_over_caf: f64,
    /// Percentage gain of COMP over the collective DF rate.
    pub gain: f64,
    /// Percentage gain of COMP over `df_same_class`.
    pub gain_same_class: f64,
}

pub fn df_slot_accounting(alpha2: f64, detection: Detection) -> Result<SlotAccounting> {
    if !(alpha2 > 0.0) || !alpha2.is_finite() {
        return Err(Error::Domain { what: "alpha2", value: alpha2 });
    }
    let comp = comp_rate(detection, alpha2)?;
    let sd = c_sd(alpha2)?.rate;
    let sd_class = c_sd_for(detection, alpha2)?.rate;
    Ok(SlotAccounting {
        alpha2,
        detection,
        caf: RelayReport::analytic(alpha2, Strategy::Caf, detection, comp),
        df: RelayReport::analytic(alpha2, Strategy::Df, Detection::Collective, sd),
        df_same_class: RelayReport::analytic(alpha2, Strategy::Df, detection, sd_class),
        caf_over_df: sd / comp,
        df_over_caf: comp / sd,
        gain: gain(comp, sd)?,
        gain_same_class: gain(comp, sd_class)?,
    })
}
