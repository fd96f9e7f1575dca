use alloc::vec::Vec;

use super::{FpMatrix, FpVector, PrimeField};
use crate::{stream_rng, Error, Result};

/// Injective linear map `F: F_p^ℓ → F_p^n` with generator `[I_ℓ; T]`, where
/// `T` is an `(n-ℓ)×ℓ` Toeplitz block.
///
/// `T[i][j] = diagonals[i + ℓ - 1 - j]`, so the `n - 1` diagonal values fix
/// the whole block. For any nonzero `x`, `Pr{x ∈ Im F} ≤ p^(ℓ-n)` over uniform
/// diagonals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzLinearMap {
    field: PrimeField,
    ell: usize,
    n: usize,
    diagonals: Vec<u32>,
    generator: FpMatrix,
}

impl ToeplitzLinearMap {
    pub fn from_diagonals(field: PrimeField, ell: usize, n: usize, diagonals: Vec<u32>) -> Result<Self> {
        if ell == 0 || ell >= n {
            return Err(crate::error::invalid("Toeplitz map needs 0 < ell < n"));
        }
        if diagonals.len() != n - 1 {
            return Err(Error::LengthMismatch { expected: n - 1, found: diagonals.len() });
        }
        let diagonals: Vec<u32> = diagonals.into_iter().map(|d| field.reduce(d as u64)).collect();
        let mut generator = FpMatrix::zeros(field, n, ell);
        for j in 0..ell {
            generator.set(j, j, 1);
        }
        for i in 0..n - ell {
            for j in 0..ell {
                generator.set(ell + i, j, diagonals[i + ell - 1 - j]);
            }
        }
        Ok(Self { field, ell, n, diagonals, generator })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[u32] {
        &self.diagonals
    }

    /// The `n × ℓ` generator matrix.
    pub fn generator(&self) -> &FpMatrix {
        &self.generator
    }

    /// First column of `T` (length `n - ℓ`).
    pub fn first_col(&self) -> Vec<u32> {
        (0..self.n - self.ell).map(|i| self.generator.get(self.ell + i, 0)).collect()
    }

    /// First row of `T` (length `ℓ`).
    pub fn first_row(&self) -> Vec<u32> {
        self.generator.row(self.ell).to_vec()
    }

    pub fn apply(&self, m: &FpVector) -> Result<FpVector> {
        self.generator.mul_vec(m)
    }

    /// Whether `x` lies in the image, by solving the systematic part.
    pub fn contains(&self, x: &FpVector) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: x.len() });
        }
        let m = FpVector::new(self.field, x.coords()[..self.ell].to_vec());
        Ok(&self.apply(&m)? == x)
    }
}

/// Toeplitz map with i.i.d. uniform diagonals drawn from `seed`.
pub fn random_toeplitz(field: PrimeField, ell: usize, n: usize, seed: u64) -> Result<ToeplitzLinearMap> {
    if ell == 0 || ell >= n {
        return Err(crate::error::invalid("Toeplitz map needs 0 < ell < n"));
    }
    let mut rng = stream_rng(seed, 0);
    let diagonals = (0..n - 1).map(|_| field.random(&mut rng)).collect();
    ToeplitzLinearMap::from_diagonals(field, ell, n, diagonals)
}

/// `G(m) = F(m) ⊕ e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineCode {
    f: ToeplitzLinearMap,
    e: FpVector,
}

impl AffineCode {
    pub fn new(f: ToeplitzLinearMap, e: FpVector) -> Result<Self> {
        if e.len() != f.n() {
            return Err(Error::LengthMismatch { expected: f.n(), found: e.len() });
        }
        if e.field() != f.field() {
            return Err(Error::ModulusMismatch { left: f.field().modulus(), right: e.field().modulus() });
        }
        Ok(Self { f, e })
    }

    pub fn linear(&self) -> &ToeplitzLinearMap {
        &self.f
    }

    pub fn shift(&self) -> &FpVector {
        &self.e
    }

    pub fn encode(&self, m: &FpVector) -> Result<FpVector> {
        self.f.apply(m)?.add(&self.e)
    }
}

/// Invertible `F̄` on F_p^n whose first `ℓ` columns are the generator of `F`,
/// with its inverse cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertibleExtension {
    ell: usize,
    fbar: FpMatrix,
    inverse: FpMatrix,
}

impl InvertibleExtension {
    pub fn matrix(&self) -> &FpMatrix {
        &self.fbar
    }

    pub fn inverse(&self) -> &FpMatrix {
        &self.inverse
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.fbar.rows()
    }

    pub fn apply(&self, x: &FpVector) -> Result<FpVector> {
        self.fbar.mul_vec(x)
    }

    pub fn apply_inverse(&self, y: &FpVector) -> Result<FpVector> {
        self.inverse.mul_vec(y)
    }

    /// `F̄(m ‖ tail)`.
    pub fn apply_split(&self, m: &FpVector, tail: &FpVector) -> Result<FpVector> {
        if m.len() != self.ell {
            return Err(Error::LengthMismatch { expected: self.ell, found: m.len() });
        }
        self.apply(&m.concat(tail)?)
    }
}

/// Completes the generator columns of `f` with unit vectors, lowest index
/// first, keeping each one that raises the rank.
pub fn extend_to_invertible(f: &ToeplitzLinearMap) -> InvertibleExtension {
    let (n, ell, field) = (f.n(), f.ell(), f.field());
    let mut columns: Vec<Vec<u32>> = (0..ell).map(|j| f.generator().column(j).coords().to_vec()).collect();
    let mut rank = ell;
    for unit in 0..n {
        if columns.len() == n {
            break;
        }
        let mut candidate = columns.clone();
        let mut e = alloc::vec![0u32; n];
        e[unit] = 1;
        candidate.push(e);
        if column_rank(field, &candidate) > rank {
            columns = candidate;
            rank += 1;
        }
    }
    let mut fbar = FpMatrix::zeros(field, n, n);
    for (c, col) in columns.iter().enumerate() {
        for (r, &v) in col.iter().enumerate() {
            fbar.set(r, c, v);
        }
    }
    let inverse = fbar.inverse().expect("completion is invertible");
    InvertibleExtension { ell, fbar, inverse }
}

fn column_rank(field: PrimeField, columns: &[Vec<u32>]) -> usize {
    let rows: Vec<&[u32]> = columns.iter().map(|c| c.as_slice()).collect();
    FpMatrix::from_rows(field, &rows).expect("equal lengths").rank()
}
