//! Random linear scrambling with a digital shift.
//!
//! Each coordinate's digit vector `y` (most significant digit first) is
//! replaced by `L * y + s` over `Z_b`, with `L` lower-triangular and
//! nonsingular. Digit `k` of the output depends only on digits `1..=k` of the
//! input, so every elementary interval is mapped onto an elementary interval of
//! the same shape and the (0,m,2)-net property survives.

use super::{digits_to_numerator, numerator_to_digits, GenMatrix, PrimeBase, UnitSquarePointSet};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Identifier of the generator behind [`ScrambleState::from_seed`], recorded in
/// output metadata.
pub const SCRAMBLE_RNG: &str = "chacha8";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScrambleState {
    seed: u64,
    l1: GenMatrix,
    l2: GenMatrix,
    shift1: Vec<u64>,
    shift2: Vec<u64>,
}

impl ScrambleState {
    pub fn new(
        seed: u64,
        l1: GenMatrix,
        l2: GenMatrix,
        shift1: Vec<u64>,
        shift2: Vec<u64>,
    ) -> Result<Self> {
        let base = l1.base();
        let m = l1.dim();
        if l2.base() != base || l2.dim() != m || shift1.len() != m || shift2.len() != m {
            return Err(Error::DimensionMismatch(
                "scramble matrices and shifts must share base and depth".into(),
            ));
        }
        for (name, l) in [("L1", &l1), ("L2", &l2)] {
            for i in 0..m {
                if l.entry(i, i) == 0 {
                    return Err(Error::Domain(format!(
                        "{name} is singular (zero at ({i}, {i}))"
                    )));
                }
                if (i + 1..m).any(|j| l.entry(i, j) != 0) {
                    return Err(Error::Domain(format!("{name} is not lower-triangular")));
                }
            }
        }
        if shift1.iter().chain(&shift2).any(|&d| d >= base.get()) {
            return Err(Error::Domain(format!("shift digits must be below {base}")));
        }
        Ok(Self {
            seed,
            l1,
            l2,
            shift1,
            shift2,
        })
    }

    /// Draws the matrices and shifts from a ChaCha8 stream seeded with `seed`.
    pub fn from_seed(base: PrimeBase, m: usize, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("scrambling needs depth >= 1".into()));
        }
        let b = base.get();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lower = |rng: &mut ChaCha8Rng| {
            let mut rows = vec![vec![0u64; m]; m];
            for (i, row) in rows.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate().take(i + 1) {
                    *e = if i == j {
                        rng.random_range(1..b)
                    } else {
                        rng.random_range(0..b)
                    };
                }
            }
            GenMatrix::from_rows(base, rows)
        };
        let l1 = lower(&mut rng)?;
        let l2 = lower(&mut rng)?;
        let shift1 = (0..m).map(|_| rng.random_range(0..b)).collect();
        let shift2 = (0..m).map(|_| rng.random_range(0..b)).collect();
        Self::new(seed, l1, l2, shift1, shift2)
    }

    /// The identity scramble (`L = I`, zero shift).
    pub fn identity(base: PrimeBase, m: usize) -> Result<Self> {
        let id = super::identity_matrix(base, m)?;
        Self::new(0, id.clone(), id, vec![0; m], vec![0; m])
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn base(&self) -> PrimeBase {
        self.l1.base()
    }

    pub fn depth(&self) -> usize {
        self.l1.dim()
    }

    pub fn l1(&self) -> &GenMatrix {
        &self.l1
    }

    pub fn l2(&self) -> &GenMatrix {
        &self.l2
    }

    pub fn shifts(&self) -> (&[u64], &[u64]) {
        (&self.shift1, &self.shift2)
    }
}

fn scramble_coordinate(u: u64, l: &GenMatrix, shift: &[u64], b: u64) -> u64 {
    let digits = numerator_to_digits(u, b, l.dim());
    let mut y = l.apply(&digits);
    for (d, s) in y.iter_mut().zip(shift) {
        *d = (*d + s) % b;
    }
    digits_to_numerator(&y, b)
}

pub fn scramble(points: &UnitSquarePointSet, state: &ScrambleState) -> Result<UnitSquarePointSet> {
    if points.base() != state.base() || points.depth() as usize != state.depth() {
        return Err(Error::DimensionMismatch(format!(
            "points are base {} depth {}, scramble is base {} depth {}",
            points.base(),
            points.depth(),
            state.base(),
            state.depth()
        )));
    }
    let b = state.base().get();
    let numerators = points
        .numerators()
        .iter()
        .map(|&(u1, u2)| {
            (
                scramble_coordinate(u1, &state.l1, &state.shift1, b),
                scramble_coordinate(u2, &state.l2, &state.shift2, b),
            )
        })
        .collect();
    UnitSquarePointSet::from_numerators(points.base(), points.depth(), numerators)
}
