//! Protocols that only ever need the modulo sum of two messages.
//!
//! A [`Transport`] delivers `m_a ⊕ m_b` to a receiver, either exactly or
//! through one block of the COMP code over a measured BPSK link. Downlinks
//! and point-to-point hops are treated as noiseless.

mod butterfly;
mod relay;
mod spir;

pub use butterfly::{butterfly_round, butterfly_run, ButterflyReport, ButterflyRound};
pub use relay::{caf_batch, caf_exchange, df_slot_accounting, CafExchange, RelayReport, SlotAccounting, Strategy};
pub use spir::{
    colluding_servers_learn_theta, exact_query_privacy, exhaustive_database_privacy, spir_privacy_audit, spir_run,
    QueryCheck, Received, SpirAudit, SpirSession, SpirTranscript, UserView, AUDIT_P_MIN,
};

use crate::channels::{
    degraded_sum_channel, induced_pair_channel, DegradedSumChannel, InducedPairChannel, Measurement,
};
use crate::coding::{decode_sum, generate_codebook, wilson_interval, CompCodebook};
use crate::field::FpVector;
use crate::{Error, Result, Rng};

/// One measured BPSK multiple-access link carrying `ℓ`-bit messages in
/// blocks of `n` symbols. The codebook is fixed per link; dither and noise
/// are fresh per use.
#[derive(Debug, Clone, PartialEq)]
pub struct CompLink {
    codebook: CompCodebook,
    pair: InducedPairChannel,
    sum_channel: DegradedSumChannel,
}

impl CompLink {
    pub fn new(measurement: Measurement, alpha2: f64, ell: usize, n: usize, seed: u64) -> Result<Self> {
        if n > 64 {
            return Err(crate::error::invalid("block length is limited to 64"));
        }
        let pair = induced_pair_channel(measurement, alpha2)?;
        let sum_channel = degraded_sum_channel(&pair);
        Ok(Self { codebook: generate_codebook(ell, n, seed)?, pair, sum_channel })
    }

    pub fn codebook(&self) -> &CompCodebook {
        &self.codebook
    }

    pub fn measurement(&self) -> Measurement {
        self.pair.measurement()
    }

    pub fn alpha2(&self) -> f64 {
        self.pair.alpha2()
    }

    pub fn ell(&self) -> usize {
        self.codebook.ell()
    }

    pub fn rate(&self) -> f64 {
        self.codebook.rate()
    }

    /// Receiver's ML estimate of `m_a ⊕ m_b` after one block.
    pub fn transmit_sum(&self, m_a: &FpVector, m_b: &FpVector, rng: &mut Rng) -> Result<FpVector> {
        let e_prime = self.codebook.draw_dither(rng);
        let (x_a, x_b) = self.codebook.encode_pair(m_a, m_b, &e_prime)?;
        let outcomes: alloc::vec::Vec<_> =
            x_a.coords().iter().zip(x_b.coords()).map(|(&a, &b)| self.pair.sample(a, b, rng)).collect();
        decode_sum(&self.codebook, &outcomes, &self.sum_channel)
    }
}

/// How a receiver obtains the sum of two senders' messages.
#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Transport {
    Noiseless,
    Comp(CompLink),
}

impl Transport {
    pub fn deliver_sum(&self, m_a: &FpVector, m_b: &FpVector, rng: &mut Rng) -> Result<FpVector> {
        match self {
            Transport::Noiseless => m_a.add(m_b),
            Transport::Comp(link) => link.transmit_sum(m_a, m_b, rng),
        }
    }

    /// Message length the transport accepts, if fixed.
    pub fn message_len(&self) -> Option<usize> {
        match self {
            Transport::Noiseless => None,
            Transport::Comp(link) => Some(link.ell()),
        }
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        match self.message_len() {
            Some(ell) if ell != len => Err(Error::LengthMismatch { expected: ell, found: len }),
            _ => Ok(()),
        }
    }
}

/// Success count of repeated protocol runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tally {
    pub runs: usize,
    pub successes: usize,
    /// Wilson 95 % interval of the success fraction.
    pub wilson_ci: (f64, f64),
}

impl Tally {
    pub fn new(runs: usize, successes: usize) -> Self {
        assert!(successes <= runs && runs > 0);
        Self { runs, successes, wilson_ci: wilson_interval(successes, runs) }
    }

    pub fn fraction(&self) -> f64 {
        self.successes as f64 / self.runs as f64
    }
}
