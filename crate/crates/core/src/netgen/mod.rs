//! Digital construction of (0,m,2)-nets and (0,2)-sequences over a prime base.
//!
//! A point index `n` is expanded into base-`b` digits `(n_0, ..., n_{m-1})`
//! (least significant first). Coordinate `i` takes the digit vector
//! `C_i * n` over `Z_b`, read as a base-`b` fraction with the first entry as
//! the most significant digit. Every point keeps its exact integer numerator
//! over `b^m`; floating coordinates are derived from it and never used for
//! membership decisions.

mod matrices;
mod scramble;
mod verify;

pub use matrices::{identity_matrix, pascal_matrix, IdentityPascal, MatrixRecipe, RecipeRegistry};
pub use scramble::{scramble, ScrambleState, SCRAMBLE_RNG};
pub use verify::verify_net;

use crate::error::{Error, Result};
use rayon::prelude::*;
use std::fmt;

/// A prime base `b >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeBase(u64);

impl PrimeBase {
    pub fn new(b: u64) -> Result<Self> {
        if is_prime(b) {
            Ok(Self(b))
        } else {
            Err(Error::NotPrime(b))
        }
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `b^m`, rejecting anything above `2^63`.
    pub fn power(self, m: u32) -> Result<u64> {
        let limit = 1u64 << 63;
        let mut acc: u64 = 1;
        for _ in 0..m {
            acc = match acc.checked_mul(self.0) {
                Some(v) if v <= limit => v,
                _ => return Err(Error::Overflow { base: self.0, m }),
            };
        }
        Ok(acc)
    }
}

impl fmt::Display for PrimeBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Square generating matrix over `Z_b`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenMatrix {
    base: PrimeBase,
    dim: usize,
    entries: Vec<u64>,
}

impl GenMatrix {
    pub fn from_rows(base: PrimeBase, rows: Vec<Vec<u64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Domain(
                "generating matrix must be at least 1x1".into(),
            ));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "row {row} has {} entries, expected {dim}",
                    r.len()
                )));
            }
            for (col, entry) in r.into_iter().enumerate() {
                if entry >= base.get() {
                    return Err(Error::InvalidEntry {
                        row,
                        col,
                        entry,
                        base: base.get(),
                    });
                }
                entries.push(entry);
            }
        }
        Ok(Self { base, dim, entries })
    }

    pub(crate) fn from_fn(base: PrimeBase, dim: usize, f: impl Fn(usize, usize) -> u64) -> Self {
        let b = base.get();
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim) % b).collect();
        Self { base, dim, entries }
    }

    pub fn base(&self) -> PrimeBase {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.dim).map(<[u64]>::to_vec).collect()
    }

    /// Matrix-vector product over `Z_b`.
    pub fn apply(&self, digits: &[u64]) -> Vec<u64> {
        debug_assert_eq!(digits.len(), self.dim);
        let b = self.base.get() as u128;
        (0..self.dim)
            .map(|row| {
                let mut acc: u128 = 0;
                for (col, &d) in digits.iter().enumerate() {
                    let e = self.entry(row, col) as u128;
                    if e != 0 && d != 0 {
                        acc = (acc + e * d as u128) % b;
                    }
                }
                acc as u64
            })
            .collect()
    }
}

/// The recipe for one net: base, exponent and the two generating matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalNetSpec {
    base: PrimeBase,
    m: u32,
    c1: GenMatrix,
    c2: GenMatrix,
}

impl DigitalNetSpec {
    pub fn new(base: PrimeBase, m: u32, c1: GenMatrix, c2: GenMatrix) -> Result<Self> {
        for (name, c) in [("C1", &c1), ("C2", &c2)] {
            if c.base() != base {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is over Z_{}, net base is {base}",
                    c.base()
                )));
            }
            if c.dim() != m as usize {
                return Err(Error::DimensionMismatch(format!(
                    "{name} is {}x{}, net has m = {m}",
                    c.dim(),
                    c.dim()
                )));
            }
        }
        Ok(Self { base, m, c1, c2 })
    }

    pub fn base(&self) -> PrimeBase {
        self.base
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn c1(&self) -> &GenMatrix {
        &self.c1
    }

    pub fn c2(&self) -> &GenMatrix {
        &self.c2
    }
}

/// Points in `[0,1)^2` with exact numerators over `b^depth`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitSquarePointSet {
    base: PrimeBase,
    depth: u32,
    denominator: u64,
    numerators: Vec<(u64, u64)>,
    coords: Vec<(f64, f64)>,
}

impl UnitSquarePointSet {
    /// Builds a point set from numerators over `b^depth`.
    pub fn from_numerators(
        base: PrimeBase,
        depth: u32,
        numerators: Vec<(u64, u64)>,
    ) -> Result<Self> {
        if numerators.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let denominator = base.power(depth)?;
        if let Some(&(u1, u2)) = numerators
            .iter()
            .find(|&&(u1, u2)| u1 >= denominator || u2 >= denominator)
        {
            return Err(Error::Domain(format!(
                "numerator ({u1}, {u2}) is not below {base}^{depth}"
            )));
        }
        let den = denominator as f64;
        let coords = numerators
            .iter()
            .map(|&(u1, u2)| (u1 as f64 / den, u2 as f64 / den))
            .collect();
        Ok(Self {
            base,
            depth,
            denominator,
            numerators,
            coords,
        })
    }

    pub fn base(&self) -> PrimeBase {
        self.base
    }

    /// Number of base-`b` digits per coordinate (the exponent of the denominator).
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    pub fn numerators(&self) -> &[(u64, u64)] {
        &self.numerators
    }

    pub fn coords(&self) -> &[(f64, f64)] {
        &self.coords
    }

    /// Contiguous block of points, keeping the denominator.
    pub fn block(&self, start: usize, len: usize) -> Result<Self> {
        let end =
            start
                .checked_add(len)
                .filter(|&e| e <= self.len())
                .ok_or(Error::SizeMismatch {
                    expected: start.saturating_add(len),
                    found: self.len(),
                })?;
        if len == 0 {
            return Err(Error::EmptyPointSet);
        }
        Ok(Self {
            base: self.base,
            depth: self.depth,
            denominator: self.denominator,
            numerators: self.numerators[start..end].to_vec(),
            coords: self.coords[start..end].to_vec(),
        })
    }
}

/// Base-`b` digits of `n`, least significant first.
pub(crate) fn index_digits(mut n: u64, b: u64, len: usize) -> Vec<u64> {
    let mut digits = vec![0; len];
    for d in digits.iter_mut() {
        *d = n % b;
        n /= b;
    }
    digits
}

/// Digit vector read as a fraction numerator, first digit most significant.
pub(crate) fn digits_to_numerator(digits: &[u64], b: u64) -> u64 {
    digits.iter().fold(0u64, |acc, &d| acc * b + d)
}

/// Inverse of [`digits_to_numerator`] for a fixed number of digits.
pub(crate) fn numerator_to_digits(mut u: u64, b: u64, len: usize) -> Vec<u64> {
    let mut digits = vec![0; len];
    for d in digits.iter_mut().rev() {
        *d = u % b;
        u /= b;
    }
    digits
}

fn generate(c1: &GenMatrix, c2: &GenMatrix, count: u64, depth: u32) -> Result<UnitSquarePointSet> {
    let base = c1.base();
    let b = base.get();
    let len = depth as usize;
    let numerators: Vec<(u64, u64)> = (0..count)
        .into_par_iter()
        .map(|n| {
            let digits = index_digits(n, b, len);
            (
                digits_to_numerator(&c1.apply(&digits), b),
                digits_to_numerator(&c2.apply(&digits), b),
            )
        })
        .collect();
    UnitSquarePointSet::from_numerators(base, depth, numerators)
}

/// All `b^m` points of the digital net described by `spec`, in index order.
pub fn digital_net(spec: &DigitalNetSpec) -> Result<UnitSquarePointSet> {
    let count = spec.base.power(spec.m)?;
    generate(&spec.c1, &spec.c2, count, spec.m)
}

/// First `count` points of the (0,2)-sequence generated by the identity and
/// Pascal matrices truncated to `depth` digits.
pub fn digital_sequence_prefix(
    base: PrimeBase,
    count: u64,
    depth: u32,
) -> Result<UnitSquarePointSet> {
    if count == 0 {
        return Err(Error::EmptyPointSet);
    }
    let capacity = base.power(depth)?;
    if count > capacity {
        return Err(Error::Domain(format!(
            "{count} points need more than {depth} base-{base} digits"
        )));
    }
    let c1 = identity_matrix(base, depth as usize)?;
    let c2 = pascal_matrix(base, depth as usize)?;
    generate(&c1, &c2, count, depth)
}
