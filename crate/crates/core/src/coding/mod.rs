//! Dithered affine coset code for the modulo sum.
//!
//! Both senders share a random Toeplitz map `F` (rate `ℓ/n`), its invertible
//! completion `F̄` and a public shift `e`. Per block they also share a uniform
//! dither `e′ ∈ F_p^{n-ℓ}` that the receiver never sees:
//!
//! ```text
//! x_a = F̄(m_a ‖ e′)
//! x_b = F̄(m_b ‖ ⊖e′) ⊕ e
//! x_a ⊕ x_b = F(m_a ⊕ m_b) ⊕ e
//! ```
//!
//! Each codeword alone is uniform over F_p^n, so every received symbol
//! behaves like one use of the degraded sum channel.

mod experiment;
mod ml;

pub use experiment::{run_error_experiment, wilson_interval, ErrorStats, MIN_TRIALS};
pub use ml::{decode_sum, decodes_correctly, MAX_DECODE_DIM, MAX_VERDICT_DIM};

use crate::field::{extend_to_invertible, FpVector, InvertibleExtension, PrimeField, ToeplitzLinearMap};
use crate::{stream_rng, Error, Result, Rng};

/// Shared code of both senders. Holds only what the decoder may know.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompCodebook {
    f: ToeplitzLinearMap,
    fbar: InvertibleExtension,
    e: FpVector,
    packed: Option<ml::PackedCode>,
}

/// Binary codebook drawn from `(seed, 0)`.
pub fn generate_codebook(ell: usize, n: usize, seed: u64) -> Result<CompCodebook> {
    CompCodebook::generate(PrimeField::BINARY, ell, n, seed)
}

impl CompCodebook {
    /// Toeplitz diagonals, then `e`, all from the stream `(seed, 0)`.
    pub fn generate(field: PrimeField, ell: usize, n: usize, seed: u64) -> Result<Self> {
        if ell == 0 || ell >= n {
            return Err(crate::error::invalid("codebook needs 0 < ell < n"));
        }
        let mut rng = stream_rng(seed, 0);
        let diagonals = (0..n - 1).map(|_| field.random(&mut rng)).collect();
        let f = ToeplitzLinearMap::from_diagonals(field, ell, n, diagonals)?;
        let e = FpVector::random(field, n, &mut rng);
        Self::from_parts(f, e)
    }

    pub fn from_parts(f: ToeplitzLinearMap, e: FpVector) -> Result<Self> {
        if e.len() != f.n() {
            return Err(Error::LengthMismatch { expected: f.n(), found: e.len() });
        }
        if e.field() != f.field() {
            return Err(Error::ModulusMismatch { left: f.field().modulus(), right: e.field().modulus() });
        }
        let fbar = extend_to_invertible(&f);
        let packed = ml::PackedCode::new(&f, &e);
        Ok(Self { f, fbar, e, packed })
    }

    pub fn field(&self) -> PrimeField {
        self.f.field()
    }

    pub fn ell(&self) -> usize {
        self.f.ell()
    }

    pub fn n(&self) -> usize {
        self.f.n()
    }

    pub fn rate(&self) -> f64 {
        self.ell() as f64 / self.n() as f64
    }

    pub fn f(&self) -> &ToeplitzLinearMap {
        &self.f
    }

    pub fn fbar(&self) -> &InvertibleExtension {
        &self.fbar
    }

    pub fn e(&self) -> &FpVector {
        &self.e
    }

    /// `F(m) ⊕ e`, the word the receiver effectively sees.
    pub fn coset_word(&self, m: &FpVector) -> Result<FpVector> {
        self.check_len(m, self.ell())?;
        self.f.apply(m)?.add(&self.e)
    }

    /// Fresh dither `e′` for one block.
    pub fn draw_dither(&self, rng: &mut Rng) -> FpVector {
        FpVector::random(self.field(), self.n() - self.ell(), rng)
    }

    pub fn encode_pair(&self, m_a: &FpVector, m_b: &FpVector, e_prime: &FpVector) -> Result<(FpVector, FpVector)> {
        self.check_len(m_a, self.ell())?;
        self.check_len(m_b, self.ell())?;
        self.check_len(e_prime, self.n() - self.ell())?;
        let x_a = self.fbar.apply_split(m_a, e_prime)?;
        let x_b = self.fbar.apply_split(m_b, &e_prime.neg())?.add(&self.e)?;
        Ok((x_a, x_b))
    }

    fn check_len(&self, v: &FpVector, expected: usize) -> Result<()> {
        if v.field() != self.field() {
            return Err(Error::ModulusMismatch { left: self.field().modulus(), right: v.field().modulus() });
        }
        if v.len() != expected {
            return Err(Error::LengthMismatch { expected, found: v.len() });
        }
        Ok(())
    }

    pub(crate) fn packed(&self) -> Result<&ml::PackedCode> {
        self.packed.as_ref().ok_or_else(|| crate::error::invalid("bit-packed decoding needs p = 2 and n <= 64"))
    }
}
