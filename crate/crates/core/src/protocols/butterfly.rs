//! Butterfly network with three COMP hops.
//!
//! ```text
//!   v1 (m1) ──────────────┐      v2 (m2) ──────────────┐
//!     │                   │        │                   │
//!     └──► v3 ◄───────────┼────────┘                   │
//!          │ m1 ⊕ m2      │                            │
//!          ▼              ▼                            ▼
//!          v4 ──────────► v5 ◄── m1         v6 ◄── m2, v4
//! ```
//!
//! v3 decodes `m1 ⊕ m2` from the (v1, v2) multiple-access hop and v4 relays
//! it. v5 hears v1 and v4 and decodes `m1 ⊕ (m1 ⊕ m2) = m2`; v6 hears v2 and
//! v4 and decodes `m1`. Rounds run in lock step.

use super::{Tally, Transport};
use crate::field::{FpVector, PrimeField};
use crate::{stream_rng, Result, Rng};

/// Signals of one round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ButterflyRound {
    pub m1: FpVector,
    pub m2: FpVector,
    /// Sum decoded at v3 and forwarded by v4.
    pub sum_at_v3: FpVector,
    /// v5's estimate of `m2`.
    pub v5_output: FpVector,
    /// v6's estimate of `m1`.
    pub v6_output: FpVector,
}

impl ButterflyRound {
    pub fn v5_correct(&self) -> bool {
        self.v5_output == self.m2
    }

    pub fn v6_correct(&self) -> bool {
        self.v6_output == self.m1
    }
}

/// One round; every multiple-access hop goes through `transport`.
pub fn butterfly_round(m1: &FpVector, m2: &FpVector, transport: &Transport, rng: &mut Rng) -> Result<ButterflyRound> {
    transport.check_len(m1.len())?;
    transport.check_len(m2.len())?;
    let sum_at_v3 = transport.deliver_sum(m1, m2, rng)?;
    // v3 → v4 is a point-to-point hop
    let at_v4 = sum_at_v3.clone();
    let v5_output = transport.deliver_sum(m1, &at_v4, rng)?;
    let v6_output = transport.deliver_sum(m2, &at_v4, rng)?;
    Ok(ButterflyRound { m1: m1.clone(), m2: m2.clone(), sum_at_v3, v5_output, v6_output })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ButterflyReport {
    pub v5: Tally,
    pub v6: Tally,
    /// Rounds where both sinks were right.
    pub both: Tally,
}

/// `trials` rounds of uniform `ell`-bit messages; round `t` uses stream
/// `(seed, t + 1)`.
pub fn butterfly_run(transport: &Transport, ell: usize, trials: usize, seed: u64) -> Result<ButterflyReport> {
    if trials == 0 || ell == 0 {
        return Err(crate::error::invalid("need at least one trial and one message bit"));
    }
    let (mut v5, mut v6, mut both) = (0, 0, 0);
    for t in 0..trials {
        let mut rng = stream_rng(seed, t as u64 + 1);
        let m1 = FpVector::random(PrimeField::BINARY, ell, &mut rng);
        let m2 = FpVector::random(PrimeField::BINARY, ell, &mut rng);
        let round = butterfly_round(&m1, &m2, transport, &mut rng)?;
        v5 += usize::from(round.v5_correct());
        v6 += usize::from(round.v6_correct());
        both += usize::from(round.v5_correct() && round.v6_correct());
    }
    Ok(ButterflyReport { v5: Tally::new(trials, v5), v6: Tally::new(trials, v6), both: Tally::new(trials, both) })
}
