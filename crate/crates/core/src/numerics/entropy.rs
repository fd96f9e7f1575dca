use alloc::vec::Vec;
use num_traits::Float;

use super::{sym_eigenvalues, SymMatrix, PROB_SLACK};
use crate::{Error, Result};

/// `-x log2 x`, with `eta(0) = 0`.
pub fn eta(x: f64) -> Result<f64> {
    if !(-PROB_SLACK..=1.0 + PROB_SLACK).contains(&x) {
        return Err(Error::Domain { what: "eta", value: x });
    }
    let x = x.clamp(0.0, 1.0);
    if x == 0.0 {
        Ok(0.0)
    } else {
        Ok(-x * x.log2())
    }
}

pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-PROB_SLACK..=1.0 + PROB_SLACK).contains(&x) {
        return Err(Error::Domain { what: "binary_entropy", value: x });
    }
    let x = x.clamp(0.0, 1.0);
    Ok(eta(x)? + eta(1.0 - x)?)
}

/// A probability mass function over `0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    probs: Vec<f64>,
}

impl Pmf {
    /// Tolerance on the total mass.
    pub const SUM_TOL: f64 = 1e-12;

    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(crate::error::invalid("empty pmf"));
        }
        let mut sum = 0.0;
        for &p in &probs {
            if !(p >= 0.0) || !p.is_finite() {
                return Err(Error::Domain { what: "pmf entry", value: p });
            }
            sum += p;
        }
        if (sum - 1.0).abs() > Self::SUM_TOL {
            return Err(Error::Domain { what: "pmf total mass", value: sum });
        }
        Ok(Self { probs })
    }

    pub fn uniform(len: usize) -> Self {
        assert!(len > 0, "uniform pmf over an empty set");
        Self { probs: alloc::vec![1.0 / len as f64; len] }
    }

    /// Two-point pmf `[p0, 1 - p0]`.
    pub fn binary(p0: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p0) {
            return Err(Error::Domain { what: "binary pmf", value: p0 });
        }
        Ok(Self { probs: alloc::vec![p0, 1.0 - p0] })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

pub fn shannon_entropy(pmf: &Pmf) -> f64 {
    pmf.probs.iter().map(|&p| eta(p).unwrap_or(0.0)).sum()
}

/// Sum of `eta` over the eigenvalues of a density matrix.
pub fn von_neumann_entropy(m: &SymMatrix) -> Result<f64> {
    let trace = m.trace();
    if (trace - 1.0).abs() > 1e-9 {
        return Err(Error::NotDensity { trace });
    }
    let mut h = 0.0;
    for lambda in sym_eigenvalues(m) {
        debug_assert!(lambda >= -1e-12, "negative eigenvalue {lambda}");
        h += eta(lambda.clamp(0.0, 1.0))?;
    }
    Ok(h)
}
