//! Analysis and simulation of computation (COMP) codes over the two-sender
//! BPSK coherent-state classical-quantum multiple access channel.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; Monte-Carlo routines take explicit seeds and
//! derive one ChaCha stream per trial, so results never depend on scheduling.
//!
//! * [`numerics`]: entropies, small symmetric eigenproblems, quadrature,
//!   Monte-Carlo entropy estimates and a chi-square tail.
//! * [`rates`]: closed-form and optimized rates of the BPSK channel.
//! * [`field`]: prime-field vectors, Toeplitz random linear maps and their
//!   invertible extensions.
//! * [`channels`]: classical channels induced by on-off and homodyne
//!   detection, and their degraded sum channel.
//! * [`coding`]: dithered affine encoders, ML decoding of the modulo sum and
//!   error-rate experiments.
//! * [`protocols`]: compute-and-forward relaying, two-server symmetric PIR and
//!   the butterfly network.

#![no_std]
// `num_traits::Float` supplies float methods without std; builds that pull
// in std-enabled dependency features resolve them inherently instead.
#![allow(unused_imports)]
// `!(x >= 0.0)` guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod channels;
pub mod coding;
mod error;
pub mod field;
pub mod numerics;
pub mod protocols;
pub mod rates;

pub use error::{Error, Result};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used for every random draw in the crate.
pub type Rng = ChaCha8Rng;

/// Independent generator for `(seed, stream)`. Stream 0 is reserved for
/// set-up draws (codebooks, databases); trials use streams `1..`.
pub fn stream_rng(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
