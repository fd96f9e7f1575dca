//! Numerical building blocks shared by the rate, channel and coding modules.
//!
//! Entropies are in bits unless a function says otherwise.

mod chi_square;
mod eigen;
mod entropy;
mod monte_carlo;
mod quadrature;

pub use chi_square::{chi_square_homogeneity, chi_square_sf, chi_square_uniform, ChiSquare};
pub use eigen::{sym_eigenvalues, SymMatrix};
pub use entropy::{binary_entropy, eta, shannon_entropy, von_neumann_entropy, Pmf};
pub use monte_carlo::{mc_differential_entropy, McEstimate, MIN_MC_SAMPLES};
pub use quadrature::integrate_1d;

/// Values this far below zero (or above one) are rounding noise and clamped.
pub const PROB_SLACK: f64 = 1e-12;
