//! Equal-weight quadrature on the sphere and the worst-case error in the
//! Sobolev space of order 3/2 whose reproducing kernel is `8/3 − ‖y − z‖`.
//!
//! For nodes `z_0, ..., z_{N−1}` the squared worst-case error is
//! `e² = I − N⁻² Σ_{k,ℓ} ‖z_k − z_ℓ‖` with `I = 4/3` the mean distance between
//! two uniform points, and by Stolarsky's invariance principle it equals four
//! times the squared spherical-cap L2 discrepancy.

use crate::discrepancy::{clamp_radicand, sum_of_distances};
use crate::error::{Error, Result};
use crate::measure::{ExactLimits, Measure, MeasureInput, Measurement};
use crate::netgen::{digital_net, MatrixRecipe, PrimeBase};
use crate::sphere::{lift, SpherePoint, SpherePointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::TAU;

/// `∫∫ ‖y − z‖ dσ(y) dσ(z)` over the unit sphere with normalised measure.
pub const DISTANCE_INTEGRAL: f64 = 4.0 / 3.0;

/// Generator behind [`random_sphere_points`].
pub const MONTE_CARLO_RNG: &str = "chacha8";

pub fn distance_integral() -> f64 {
    DISTANCE_INTEGRAL
}

/// Squared worst-case error of the equal-weight rule on `points`.
pub fn worst_case_error_sq(points: &SpherePointSet) -> Result<f64> {
    let n = points.len() as f64;
    clamp_radicand(DISTANCE_INTEGRAL - sum_of_distances(points) / (n * n))
}

/// `Q_N(f) = N⁻¹ Σ f(z_k)`, accumulated as a running mean so constants are
/// integrated exactly.
pub fn quadrature_apply<F, E>(points: &SpherePointSet, mut f: F) -> std::result::Result<f64, E>
where
    F: FnMut(&SpherePoint) -> std::result::Result<f64, E>,
{
    let mut mean = 0.0;
    for (k, p) in points.points().iter().enumerate() {
        let v = f(p)?;
        mean += (v - mean) / (k + 1) as f64;
    }
    Ok(mean)
}

/// Legendre polynomial `P_ℓ(t)` normalised by `P_ℓ(1) = 1`.
pub fn legendre_eval(l: usize, t: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, t);
    if l == 0 {
        return prev;
    }
    for k in 1..l {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * t * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `λ_0 = I`, `λ_ℓ = I·(−(−1/2)_ℓ)/((3/2)_ℓ)` for `ℓ ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCoefficients {
    lambda: Vec<f64>,
}

impl KernelCoefficients {
    pub fn degree(&self) -> usize {
        self.lambda.len() - 1
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }
}

/// The Pochhammer quotient telescopes to `I/((2ℓ−1)(2ℓ+1))`, evaluated here
/// with a single rounding.
pub fn kernel_coefficients(degree: usize) -> KernelCoefficients {
    let lambda = (0..=degree)
        .map(|l| {
            if l == 0 {
                DISTANCE_INTEGRAL
            } else {
                let l = l as f64;
                4.0 / (3.0 * (2.0 * l - 1.0) * (2.0 * l + 1.0))
            }
        })
        .collect();
    KernelCoefficients { lambda }
}

/// Coefficient of `P_ℓ` in the Legendre expansion of `8/3 − √(2 − 2t)`.
///
/// These are `a_0 = 4/3` and `a_ℓ = 4/((2ℓ−1)(2ℓ+3))`; they differ from the
/// `λ_ℓ` of [`kernel_coefficients`] by the factor `3(2ℓ+1)/(2ℓ+3)`.
pub fn kernel_legendre_coefficient(l: usize) -> f64 {
    if l == 0 {
        DISTANCE_INTEGRAL
    } else {
        let l = l as f64;
        4.0 / ((2.0 * l - 1.0) * (2.0 * l + 3.0))
    }
}

/// Closed form of the kernel as a function of `t = ⟨z, z′⟩`.
pub fn kernel_closed_form(t: f64) -> f64 {
    2.0 * DISTANCE_INTEGRAL - (2.0 - 2.0 * t).max(0.0).sqrt()
}

/// Legendre partial sum of the kernel up to degree `degree`.
///
/// The series converges like `L⁻²` for `t < 1`; at `t = 1` the remainder is
/// exactly `1/(2L+1) + 1/(2L+3)`.
pub fn kernel_eval(t: f64, degree: usize) -> Result<f64> {
    if !(-1.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("t = {t} is outside [-1, 1]")));
    }
    let mut acc = crate::summation::CompensatedSum::new();
    let (mut prev, mut cur) = (1.0, t);
    acc.add(kernel_legendre_coefficient(0));
    if degree >= 1 {
        acc.add(kernel_legendre_coefficient(1) * t);
    }
    for k in 1..degree {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * t * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        acc.add(kernel_legendre_coefficient(k + 1) * cur);
    }
    Ok(acc.value())
}

/// `n` independent uniform points: `z ~ U[−1,1]`, azimuth `~ U[0, 2π)`.
pub fn random_sphere_points(n: usize, seed: u64) -> Result<SpherePointSet> {
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n)
        .map(|_| {
            let z: f64 = rng.random_range(-1.0..=1.0);
            let az: f64 = rng.random_range(0.0..TAU);
            let r = (1.0 - z * z).max(0.0).sqrt();
            let (s, c) = az.sin_cos();
            SpherePoint::new(r * c, r * s, z)
        })
        .collect::<Result<Vec<_>>>()?;
    SpherePointSet::new(points)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorMetadata {
    pub base: u64,
    pub recipe: String,
    pub scramble_seed: Option<u64>,
    pub rng: Option<&'static str>,
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityReport {
    pub m: u32,
    pub n: u64,
    pub e2: f64,
    /// `N^{3/2}·e²`.
    pub e2_scaled: f64,
    pub discrepancies: BTreeMap<String, Measurement>,
    pub generator: GeneratorMetadata,
}

impl QualityReport {
    pub fn from_points(
        m: u32,
        points: &SpherePointSet,
        measures: &[&dyn Measure],
        limits: ExactLimits,
        generator: GeneratorMetadata,
    ) -> Result<Self> {
        let e2 = worst_case_error_sq(points)?;
        let n = points.len() as u64;
        let input = MeasureInput::new(points, limits);
        let discrepancies = measures
            .iter()
            .map(|m| Ok((m.name().to_string(), m.evaluate(&input)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self {
            m,
            n,
            e2,
            e2_scaled: e2 * (n as f64).powf(1.5),
            discrepancies,
            generator,
        })
    }
}

/// One report per `m`, in the order given, for nets built by `recipe`.
pub fn convergence_table(
    m_range: &[u32],
    base: PrimeBase,
    recipe: &dyn MatrixRecipe,
    measures: &[&dyn Measure],
    limits: ExactLimits,
) -> Result<Vec<QualityReport>> {
    m_range
        .iter()
        .map(|&m| {
            let net = digital_net(&recipe.spec(base, m)?)?;
            let generator = GeneratorMetadata {
                base: base.get(),
                recipe: recipe.name().to_string(),
                scramble_seed: None,
                rng: None,
            };
            QualityReport::from_points(m, &lift(&net), measures, limits, generator)
        })
        .collect()
}
