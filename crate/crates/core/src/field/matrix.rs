use alloc::vec::Vec;

use super::{FpVector, PrimeField};
use crate::{Error, Result};

/// Dense row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: alloc::vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: PrimeField, rows: &[&[u32]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().map(|&v| field.reduce(v as u64)));
        }
        Ok(Self { field, rows: rows.len(), cols, data })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = self.field.reduce(v as u64);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> FpVector {
        FpVector::new(self.field, (0..self.rows).map(|r| self.get(r, c)).collect())
    }

    pub fn mul_vec(&self, x: &FpVector) -> Result<FpVector> {
        if x.field() != self.field {
            return Err(Error::ModulusMismatch { left: self.field.modulus(), right: x.field().modulus() });
        }
        if x.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, found: x.len() });
        }
        let p = self.field.modulus() as u64;
        let out = (0..self.rows)
            .map(|r| {
                let acc =
                    self.row(r).iter().zip(x.coords()).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                acc as u32
            })
            .collect();
        Ok(FpVector::new(self.field, out))
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch { expected: self.cols, found: other.rows });
        }
        let f = self.field;
        let mut out = FpMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let v = (0..self.cols).fold(0u32, |acc, k| f.add(acc, f.mul(self.get(i, k), other.get(k, j))));
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce()
    }

    /// In-place reduction to row echelon form; returns the rank.
    fn row_reduce(&mut self) -> usize {
        let f = self.field;
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            self.swap_rows(rank, pivot);
            let inv = f.inv(self.get(rank, c)).expect("nonzero pivot");
            for r in 0..self.rows {
                if r != rank && self.get(r, c) != 0 {
                    let factor = f.mul(self.get(r, c), inv);
                    for k in 0..self.cols {
                        let v = f.sub(self.get(r, k), f.mul(factor, self.get(rank, k)));
                        self.set(r, k, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for k in 0..self.cols {
                self.data.swap(a * self.cols + k, b * self.cols + k);
            }
        }
    }

    /// Gauss–Jordan inverse; `None` for singular or non-square input.
    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = self.field;
        let mut aug = FpMatrix::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        for c in 0..n {
            let pivot = (c..n).find(|&r| aug.get(r, c) != 0)?;
            aug.swap_rows(c, pivot);
            let inv = f.inv(aug.get(c, c)).ok()?;
            for k in 0..2 * n {
                let v = f.mul(aug.get(c, k), inv);
                aug.set(c, k, v);
            }
            for r in 0..n {
                if r != c && aug.get(r, c) != 0 {
                    let factor = aug.get(r, c);
                    for k in 0..2 * n {
                        let v = f.sub(aug.get(r, k), f.mul(factor, aug.get(c, k)));
                        aug.set(r, k, v);
                    }
                }
            }
        }
        let mut inv = FpMatrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c));
            }
        }
        Some(inv)
    }
}
