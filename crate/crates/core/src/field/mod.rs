//! Arithmetic over a prime field F_p, small dense matrices, and the random
//! Toeplitz codes used by the computation encoders.
//!
//! The modulus is a runtime value. Only p = 2 is connected to the physical
//! channels; larger primes are exercised by the algebra alone.

mod matrix;
mod toeplitz;

pub use matrix::FpMatrix;
pub use toeplitz::{extend_to_invertible, random_toeplitz, AffineCode, InvertibleExtension, ToeplitzLinearMap};

use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};
use rand::Rng as _;

use crate::{Error, Result, Rng};

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const BINARY: PrimeField = PrimeField { p: 2 };

    pub fn new(p: u32) -> Result<Self> {
        let prime = p >= 2 && (2..).take_while(|d: &u64| d * d <= p as u64).all(|d| !(p as u64).is_multiple_of(d));
        if prime {
            Ok(Self { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 + b as u64)
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 + (self.p - b) as u64)
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        self.reduce((self.p - a) as u64)
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    /// Inverse by Fermat: `a^(p-2)`.
    pub fn inv(self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.p) {
            return Err(Error::ZeroInverse);
        }
        let (mut base, mut exp, mut acc) = (a as u64 % self.p as u64, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p as u64;
            }
            base = base * base % self.p as u64;
            exp >>= 1;
        }
        Ok(acc as u32)
    }

    pub fn element(self, value: u64) -> FieldElement {
        FieldElement { value: self.reduce(value), field: self }
    }

    /// Uniform element.
    pub fn random(self, rng: &mut Rng) -> u32 {
        rng.random_range(0..self.p)
    }
}

/// An element of F_p. The arithmetic operators panic on mismatched moduli;
/// use the `checked_*` methods where that can happen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    fn same_field(self, other: Self) -> Result<PrimeField> {
        if self.field == other.field {
            Ok(self.field)
        } else {
            Err(Error::ModulusMismatch { left: self.field.p, right: other.field.p })
        }
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(Self { value: f.add(self.value, other.value), field: f })
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(Self { value: f.sub(self.value, other.value), field: f })
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        let f = self.same_field(other)?;
        Ok(Self { value: f.mul(self.value, other.value), field: f })
    }

    pub fn inv(self) -> Result<Self> {
        Ok(Self { value: self.field.inv(self.value)?, field: self.field })
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("modulus mismatch")
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("modulus mismatch")
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("modulus mismatch")
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self { value: self.field.neg(self.value), field: self.field }
    }
}

/// A vector over F_p with every coordinate reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpVector {
    field: PrimeField,
    coords: Vec<u32>,
}

impl FpVector {
    pub fn new(field: PrimeField, coords: Vec<u32>) -> Self {
        let coords = coords.into_iter().map(|c| field.reduce(c as u64)).collect();
        Self { field, coords }
    }

    pub fn zeros(field: PrimeField, len: usize) -> Self {
        Self { field, coords: alloc::vec![0; len] }
    }

    pub fn random(field: PrimeField, len: usize, rng: &mut Rng) -> Self {
        Self { field, coords: (0..len).map(|_| field.random(rng)).collect() }
    }

    /// Binary vector from bits: coordinate `i` is bit `i` of `bits`.
    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len <= 64);
        Self { field: PrimeField::BINARY, coords: (0..len).map(|i| ((bits >> i) & 1) as u32).collect() }
    }

    /// Inverse of [`FpVector::from_bits`]; `None` unless binary and at most 64 long.
    pub fn to_bits(&self) -> Option<u64> {
        if self.field != PrimeField::BINARY || self.coords.len() > 64 {
            return None;
        }
        Some(self.coords.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i)))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(PrimeField, u32, u32) -> u32) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::ModulusMismatch { left: self.field.p, right: other.field.p });
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: other.len() });
        }
        let f = self.field;
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| op(f, a, b)).collect();
        Ok(Self { field: f, coords })
    }

    /// Coordinatewise `⊕`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, PrimeField::add)
    }

    /// Coordinatewise `⊖`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, PrimeField::sub)
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self { field: f, coords: self.coords.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn scale(&self, k: u32) -> Self {
        let f = self.field;
        let k = f.reduce(k as u64);
        Self { field: f, coords: self.coords.iter().map(|&a| f.mul(a, k)).collect() }
    }

    /// `self ‖ tail`.
    pub fn concat(&self, tail: &Self) -> Result<Self> {
        if self.field != tail.field {
            return Err(Error::ModulusMismatch { left: self.field.p, right: tail.field.p });
        }
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&tail.coords);
        Ok(Self { field: self.field, coords })
    }

    /// Enumerates F_p^len in lexicographic order (coordinate 0 most significant).
    pub fn enumerate(field: PrimeField, len: usize) -> impl Iterator<Item = FpVector> {
        let p = field.p as u64;
        let count = p.checked_pow(len as u32).expect("enumeration too large");
        (0..count).map(move |mut idx| {
            let mut coords = alloc::vec![0u32; len];
            for c in coords.iter_mut().rev() {
                *c = (idx % p) as u32;
                idx /= p;
            }
            FpVector { field, coords }
        })
    }
}
