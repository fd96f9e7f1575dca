//! Exact maximum-likelihood decoding of `m = m_a ⊕ m_b` for binary codes
//! with `n ≤ 64`, bit-packed.
//!
//! The log-likelihood of a coset word `x` is affine in its bits:
//! `Σ_i ll(o_i | 0) + Σ_i x_i w_i` with `w_i = ll(o_i | 1) - ll(o_i | 0)`.
//! Outcomes impossible under one symbol value pin that coordinate of `x`;
//! the pins are linear equations in `m`, solved by elimination. Only the
//! residual affine space is searched, in Gray-code order.
//!
//! Ranking of candidates: fewest violated pins, then largest soft score,
//! then the lexicographically smallest message. Scores are recomputed from
//! scratch in index order, so equal words get bit-identical scores.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::CompCodebook;
use crate::channels::{DegradedSumChannel, Outcome, LOG_ZERO};
use crate::field::{FpVector, PrimeField, ToeplitzLinearMap};
use crate::{Error, Result};

/// Largest residual search dimension for [`decode_sum`].
pub const MAX_DECODE_DIM: u32 = 24;
/// Largest residual search dimension for [`decodes_correctly`], which stops
/// at the first candidate that beats the truth.
pub const MAX_VERDICT_DIM: u32 = 40;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PackedCode {
    ell: usize,
    n: usize,
    /// Row `i` of the generator, bit `j` = `G[i][j]`.
    rows: Vec<u64>,
    /// Column `j` of the generator, bit `i` = `G[i][j]`.
    cols: Vec<u64>,
    e: u64,
}

impl PackedCode {
    pub(crate) fn new(f: &ToeplitzLinearMap, e: &FpVector) -> Option<Self> {
        if f.field() != PrimeField::BINARY || f.n() > 64 {
            return None;
        }
        let g = f.generator();
        let rows =
            (0..f.n()).map(|i| g.row(i).iter().enumerate().fold(0u64, |acc, (j, &v)| acc | (v as u64) << j)).collect();
        let cols = (0..f.ell()).map(|j| g.column(j).to_bits().expect("binary column")).collect();
        Some(Self { ell: f.ell(), n: f.n(), rows, cols, e: e.to_bits()? })
    }

    pub(crate) fn word(&self, m: u64) -> u64 {
        let mut x = self.e;
        let mut rest = m;
        while rest != 0 {
            x ^= self.cols[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        x
    }

    /// Lexicographic key with coordinate 0 most significant.
    fn key(&self, m: u64) -> u64 {
        if self.ell == 0 {
            0
        } else {
            m.reverse_bits() >> (64 - self.ell)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Score {
    violations: u32,
    soft: f64,
    key: u64,
}

impl Score {
    /// `Greater` means more likely (or tie-preferred).
    fn rank(&self, other: &Score) -> Ordering {
        other
            .violations
            .cmp(&self.violations)
            .then(self.soft.partial_cmp(&other.soft).unwrap_or(Ordering::Equal))
            .then(other.key.cmp(&self.key))
    }
}

/// Outcome-dependent scoring of coset words.
struct Scorer<'a> {
    code: &'a PackedCode,
    pin_mask: u64,
    pin_value: u64,
    soft_mask: u64,
    weights: [f64; 64],
    /// Common weight when every soft coordinate has the same one.
    uniform: Option<f64>,
}

impl<'a> Scorer<'a> {
    fn new(code: &'a PackedCode, outcomes: &[Outcome], ch: &DegradedSumChannel) -> Result<Self> {
        if outcomes.len() != code.n {
            return Err(Error::LengthMismatch { expected: code.n, found: outcomes.len() });
        }
        let (mut pin_mask, mut pin_value, mut soft_mask) = (0u64, 0u64, 0u64);
        let mut weights = [0.0; 64];
        for (i, &o) in outcomes.iter().enumerate() {
            let l0 = ch.log_likelihood(o, 0)?;
            let l1 = ch.log_likelihood(o, 1)?;
            match (l0 <= LOG_ZERO, l1 <= LOG_ZERO) {
                (false, true) => pin_mask |= 1 << i,
                (true, false) => {
                    pin_mask |= 1 << i;
                    pin_value |= 1 << i;
                }
                (true, true) => {}
                (false, false) => {
                    let w = l1 - l0;
                    if w != 0.0 {
                        soft_mask |= 1 << i;
                        weights[i] = w;
                    }
                }
            }
        }
        let mut soft = (0..code.n).filter(|i| soft_mask >> i & 1 == 1).map(|i| weights[i]);
        let uniform = soft.next().filter(|&w0| soft.all(|w| w == w0));
        Ok(Self { code, pin_mask, pin_value, soft_mask, weights, uniform })
    }

    fn score(&self, m: u64) -> Score {
        let x = self.code.word(m);
        let violations = ((x ^ self.pin_value) & self.pin_mask).count_ones();
        let hits = x & self.soft_mask;
        let soft = match self.uniform {
            Some(w) => w * hits.count_ones() as f64,
            None => {
                let mut s = 0.0;
                let mut rest = hits;
                while rest != 0 {
                    s += self.weights[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                s
            }
        };
        Score { violations, soft, key: self.code.key(m) }
    }

    /// Affine set `m0 ⊕ span(basis)` of messages meeting every pin, or the
    /// whole message space when the pins contradict each other (flag false).
    fn search_space(&self) -> (u64, Vec<u64>, bool) {
        match solve_pins(self.code, self.pin_mask, self.pin_value) {
            Some((m0, basis)) => (m0, basis, true),
            None => (0, (0..self.code.ell).map(|j| 1u64 << j).collect(), false),
        }
    }
}

/// Gauss–Jordan over GF(2) on the pinned rows.
fn solve_pins(code: &PackedCode, pin_mask: u64, pin_value: u64) -> Option<(u64, Vec<u64>)> {
    // (row, rhs, pivot bit); rows are fully reduced against each other.
    let mut pivots: Vec<(u64, u64, u32)> = Vec::new();
    let mut rest = pin_mask;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut row = code.rows[i];
        let mut rhs = ((pin_value ^ code.e) >> i) & 1;
        for &(r, b, p) in &pivots {
            if row >> p & 1 == 1 {
                row ^= r;
                rhs ^= b;
            }
        }
        if row == 0 {
            if rhs != 0 {
                return None;
            }
            continue;
        }
        let p = row.trailing_zeros();
        for (r, b, _) in pivots.iter_mut() {
            if *r >> p & 1 == 1 {
                *r ^= row;
                *b ^= rhs;
            }
        }
        pivots.push((row, rhs, p));
    }
    let pivot_bits = pivots.iter().fold(0u64, |acc, &(_, _, p)| acc | 1 << p);
    let m0 = pivots.iter().fold(0u64, |acc, &(_, b, p)| acc | b << p);
    let basis = (0..code.ell as u32)
        .filter(|&j| pivot_bits >> j & 1 == 0)
        .map(|j| pivots.iter().fold(1u64 << j, |acc, &(r, _, p)| if r >> j & 1 == 1 { acc | 1 << p } else { acc }))
        .collect();
    Some((m0, basis))
}

/// Visits `m0 ⊕ span(basis)` in Gray-code order; stops when `visit` returns false.
fn for_each_candidate(m0: u64, basis: &[u64], mut visit: impl FnMut(u64) -> bool) {
    let mut m = m0;
    if !visit(m) {
        return;
    }
    for k in 1u64..1u64 << basis.len() {
        m ^= basis[k.trailing_zeros() as usize];
        if !visit(m) {
            return;
        }
    }
}

fn check_dim(dim: usize, cap: u32) -> Result<()> {
    if dim > cap as usize {
        return Err(Error::SearchTooLarge { dim, cap: cap as usize });
    }
    Ok(())
}

fn to_message(bits: u64, ell: usize) -> FpVector {
    FpVector::from_bits(bits, ell)
}

/// Maximum-likelihood estimate of `m_a ⊕ m_b` from one block of outcomes,
/// using only the public code `(F, e)`.
pub fn decode_sum(cb: &CompCodebook, outcomes: &[Outcome], ch: &DegradedSumChannel) -> Result<FpVector> {
    let code = cb.packed()?;
    let scorer = Scorer::new(code, outcomes, ch)?;
    let (m0, basis, _) = scorer.search_space();
    check_dim(basis.len(), MAX_DECODE_DIM)?;
    let mut best = scorer.score(m0);
    let mut best_m = m0;
    for_each_candidate(m0, &basis, |m| {
        let s = scorer.score(m);
        if s.rank(&best) == Ordering::Greater {
            best = s;
            best_m = m;
        }
        true
    });
    Ok(to_message(best_m, code.ell))
}

/// Whether [`decode_sum`] would return `truth`, without requiring the full
/// search: the scan stops at the first candidate ranked above `truth`.
pub fn decodes_correctly(
    cb: &CompCodebook,
    outcomes: &[Outcome],
    ch: &DegradedSumChannel,
    truth: &FpVector,
) -> Result<bool> {
    let code = cb.packed()?;
    let t = truth
        .to_bits()
        .filter(|_| truth.len() == code.ell)
        .ok_or(Error::LengthMismatch { expected: code.ell, found: truth.len() })?;
    let scorer = Scorer::new(code, outcomes, ch)?;
    let (m0, basis, consistent) = scorer.search_space();
    let target = scorer.score(t);
    if consistent && target.violations > 0 {
        return Ok(false);
    }
    check_dim(basis.len(), MAX_VERDICT_DIM)?;
    let mut correct = true;
    for_each_candidate(m0, &basis, |m| {
        if m != t && scorer.score(m).rank(&target) == Ordering::Greater {
            correct = false;
        }
        correct
    });
    Ok(correct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{degraded_sum_channel, induced_pair_channel, Measurement};
    use crate::coding::generate_codebook;
    use crate::stream_rng;

    fn brute_force(cb: &CompCodebook, outcomes: &[Outcome], ch: &DegradedSumChannel) -> FpVector {
        let mut best: Option<(f64, FpVector)> = None;
        for m in FpVector::enumerate(PrimeField::BINARY, cb.ell()) {
            let x = cb.coset_word(&m).unwrap();
            // summing in sorted order makes equal multisets give equal totals
            let mut terms: Vec<f64> =
                outcomes.iter().zip(x.coords()).map(|(&o, &s)| ch.log_likelihood(o, s).unwrap()).collect();
            terms.sort_by(f64::total_cmp);
            let ll: f64 = terms.iter().sum();
            // enumeration is lexicographic, so strict improvement keeps the smallest tie
            if best.as_ref().is_none_or(|(b, _)| ll > *b) {
                best = Some((ll, m));
            }
        }
        best.unwrap().1
    }

    #[test]
    fn packed_word_matches_field_arithmetic() {
        let cb = generate_codebook(5, 12, 3).unwrap();
        let code = cb.packed().unwrap();
        for bits in [0u64, 1, 0b10110, 31] {
            let m = FpVector::from_bits(bits, 5);
            assert_eq!(code.word(bits), cb.coset_word(&m).unwrap().to_bits().unwrap());
        }
    }

    #[test]
    fn key_is_lexicographic() {
        let cb = generate_codebook(3, 6, 0).unwrap();
        let code = cb.packed().unwrap();
        let keys: Vec<u64> =
            FpVector::enumerate(PrimeField::BINARY, 3).map(|m| code.key(m.to_bits().unwrap())).collect();
        assert_eq!(keys, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn pin_solution_space_is_exact() {
        let cb = generate_codebook(6, 14, 9).unwrap();
        let code = cb.packed().unwrap();
        let (mask, value) = (0b1010_0110_0101u64, 0b1000_0100_0001u64);
        let inside: Vec<u64> = (0..64u64).filter(|&m| (code.word(m) ^ value) & mask == 0).collect();
        match solve_pins(code, mask, value) {
            Some((m0, basis)) => {
                let mut found = Vec::new();
                for_each_candidate(m0, &basis, |m| {
                    found.push(m);
                    true
                });
                found.sort_unstable();
                assert_eq!(found, inside);
            }
            None => assert!(inside.is_empty()),
        }
    }

    #[test]
    fn matches_brute_force_ml() {
        for (measurement, alpha2) in
            [(Measurement::OnOff, 0.4), (Measurement::OnOff, 0.05), (Measurement::Homodyne, 0.3)]
        {
            let ch = degraded_sum_channel(&induced_pair_channel(measurement, alpha2).unwrap());
            for seed in 0..20 {
                let cb = generate_codebook(6, 10, seed).unwrap();
                let mut rng = stream_rng(seed, 1);
                let truth = FpVector::random(PrimeField::BINARY, 6, &mut rng);
                let x = cb.coset_word(&truth).unwrap();
                let outcomes: Vec<Outcome> = x.coords().iter().map(|&s| ch.sample(s, &mut rng)).collect();
                let m_hat = decode_sum(&cb, &outcomes, &ch).unwrap();
                assert_eq!(m_hat, brute_force(&cb, &outcomes, &ch), "{measurement:?} seed {seed}");
                assert_eq!(decodes_correctly(&cb, &outcomes, &ch, &truth).unwrap(), m_hat == truth);
            }
        }
    }

    #[test]
    fn all_off_prefers_smallest_message_among_ties() {
        // weak click channel, all detectors silent: the score counts ones of x
        let ch = degraded_sum_channel(&induced_pair_channel(Measurement::OnOff, 0.2).unwrap());
        let cb = generate_codebook(4, 8, 1).unwrap();
        let outcomes = [Outcome::Off; 8];
        assert_eq!(decode_sum(&cb, &outcomes, &ch).unwrap(), brute_force(&cb, &outcomes, &ch));
    }

    #[test]
    fn contradictory_pins_fall_back_to_full_search() {
        let ch = degraded_sum_channel(&induced_pair_channel(Measurement::OnOff, 1.0).unwrap());
        let cb = generate_codebook(2, 4, 5).unwrap();
        // every detector clicked: the pins demand x = 0, which the coset may miss
        let outcomes = [Outcome::On; 4];
        let m_hat = decode_sum(&cb, &outcomes, &ch).unwrap();
        let code = cb.packed().unwrap();
        let fewest = (0..4u64).map(|m| code.word(m).count_ones()).min().unwrap();
        assert_eq!(code.word(m_hat.to_bits().unwrap()).count_ones(), fewest);
    }

    #[test]
    fn rejects_bad_inputs() {
        let ch = degraded_sum_channel(&induced_pair_channel(Measurement::OnOff, 1.0).unwrap());
        let cb = generate_codebook(2, 4, 5).unwrap();
        assert!(decode_sum(&cb, &[Outcome::Off; 3], &ch).is_err());
        assert!(decode_sum(&cb, &[Outcome::Quadrature(0.0); 4], &ch).is_err());
        let big = crate::coding::CompCodebook::generate(PrimeField::BINARY, 30, 70, 0).unwrap();
        assert!(decode_sum(&big, &[Outcome::Off; 70], &ch).is_err());
    }
}
