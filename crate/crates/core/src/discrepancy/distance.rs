//! Pair-sum measures: the sum of distances, the spherical-cap L2 discrepancy
//! via Stolarsky's invariance principle, and the Cui-Freeden discrepancy.

use super::{DiscrepancyKind, DiscrepancyValue};
use crate::error::{Error, Result};
use crate::quadrature::DISTANCE_INTEGRAL;
use crate::sphere::{SpherePoint, SpherePointSet};
use crate::summation::{compensated_sum, CompensatedSum};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Negative radicands down to `-RADICAND_TOL` are rounding noise.
pub const RADICAND_TOL: f64 = 1e-12;

pub fn clamp_radicand(r: f64) -> Result<f64> {
    if r >= 0.0 {
        Ok(r)
    } else if r >= -RADICAND_TOL {
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand(r))
    }
}

/// `Σ_{k,ℓ} f(‖z_k − z_ℓ‖)` over ordered pairs, for `f(0) = 0`.
///
/// Each row `k` sums `ℓ > k` sequentially with compensation; rows are then
/// combined in index order, so the result does not depend on the thread count.
pub fn symmetric_pair_sum<F>(points: &[SpherePoint], f: F) -> f64
where
    F: Fn(f64) -> f64 + Sync,
{
    let rows: Vec<f64> = (0..points.len())
        .into_par_iter()
        .map(|k| {
            let zk = &points[k];
            let mut acc = CompensatedSum::new();
            for zl in &points[k + 1..] {
                acc.add(f(zk.distance(zl)));
            }
            acc.value()
        })
        .collect();
    2.0 * compensated_sum(rows)
}

pub fn sum_of_distances(points: &SpherePointSet) -> f64 {
    symmetric_pair_sum(points.points(), |d| d)
}

/// `D₂ = √((I − S/N²)/4)` with `I = 4/3`.
pub fn cap_l2_discrepancy(points: &SpherePointSet) -> Result<DiscrepancyValue> {
    let n = points.len() as f64;
    let s = sum_of_distances(points);
    let r = clamp_radicand((DISTANCE_INTEGRAL - s / (n * n)) / 4.0)?;
    Ok(DiscrepancyValue::exact(DiscrepancyKind::CapL2, r.sqrt()))
}

/// How the logarithmic term of the Cui-Freeden formula is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogTerm {
    /// `log((1 + d/2)²) = 2 log(1 + d/2)`, matching the kernel
    /// `2[1 − log(1 + d/2)]`.
    #[default]
    LogOfSquare,
    /// `(log(1 + d/2))²`.
    SquareOfLog,
}

impl LogTerm {
    fn eval(self, d: f64) -> f64 {
        let l = (d / 2.0).ln_1p();
        match self {
            Self::LogOfSquare => 2.0 * l,
            Self::SquareOfLog => l * l,
        }
    }
}

/// `D` with `4π D² = 1 − N⁻² Σ_{k,ℓ} log-term(‖z_ℓ − z_k‖)`.
pub fn cui_freeden_discrepancy(points: &SpherePointSet, term: LogTerm) -> Result<DiscrepancyValue> {
    let n = points.len() as f64;
    let s = symmetric_pair_sum(points.points(), |d| term.eval(d));
    let r = clamp_radicand(1.0 - s / (n * n))?;
    Ok(DiscrepancyValue::exact(
        DiscrepancyKind::CuiFreeden,
        (r / (4.0 * PI)).sqrt(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgen::{digital_net, IdentityPascal, MatrixRecipe, PrimeBase};
    use crate::sphere::lift;

    fn lifted(m: u32) -> SpherePointSet {
        lift(&digital_net(&IdentityPascal.spec(PrimeBase::new(2).unwrap(), m).unwrap()).unwrap())
    }

    fn antipodal() -> SpherePointSet {
        SpherePointSet::new(vec![SpherePoint::north_pole(), SpherePoint::south_pole()]).unwrap()
    }

    #[test]
    fn sum_of_distances_examples() {
        assert_eq!(sum_of_distances(&antipodal()), 4.0);
        let s2 = 2f64.sqrt();
        let s3 = 3f64.sqrt();
        assert!((sum_of_distances(&lifted(1)) - 2.0 * s2).abs() < 1e-14);
        let expected = 2.0 * (s2 + s3 + 1.0 + s2 + s2 + 2.0);
        assert!((sum_of_distances(&lifted(2)) - expected).abs() < 1e-13);
        assert!((expected - 17.9494).abs() < 1e-4);
    }

    #[test]
    fn brute_force_agreement() {
        let z = lifted(7);
        let pts = z.points();
        let naive: f64 = pts
            .iter()
            .flat_map(|a| pts.iter().map(move |b| a.distance(b)))
            .sum();
        let s = sum_of_distances(&z);
        assert!((s - naive).abs() / naive < 1e-12);
    }

    #[test]
    fn thread_count_independent() {
        let z = lifted(9);
        let reference = sum_of_distances(&z);
        for threads in [1, 2, 3, 7] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            let s = pool.install(|| sum_of_distances(&z));
            assert_eq!(s.to_bits(), reference.to_bits(), "threads = {threads}");
        }
    }

    #[test]
    fn cap_l2_examples() {
        let d = cap_l2_discrepancy(&lifted(1)).unwrap().value;
        let expected = ((4.0 / 3.0 - 2f64.sqrt() / 2.0) / 4.0).sqrt();
        assert!((d - expected).abs() < 1e-15);
        assert!((d - 0.39568).abs() < 1e-5);
        let a = cap_l2_discrepancy(&antipodal()).unwrap().value;
        assert!((a - (1.0f64 / 12.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn radicand_clamping() {
        assert_eq!(clamp_radicand(0.25), Ok(0.25));
        assert_eq!(clamp_radicand(-1e-13), Ok(0.0));
        assert!(matches!(
            clamp_radicand(-1e-6),
            Err(Error::NegativeRadicand(_))
        ));
    }

    #[test]
    fn cui_freeden_examples() {
        let single = SpherePointSet::new(vec![SpherePoint::north_pole()]).unwrap();
        let d = cui_freeden_discrepancy(&single, LogTerm::LogOfSquare)
            .unwrap()
            .value;
        assert!((d - 1.0 / (2.0 * PI.sqrt())).abs() < 1e-15);
        assert!((d - 0.28209).abs() < 1e-5);
        let a = cui_freeden_discrepancy(&antipodal(), LogTerm::LogOfSquare)
            .unwrap()
            .value;
        let expected = ((1.0 - 2f64.ln()) / (4.0 * PI)).sqrt();
        assert!((a - expected).abs() < 1e-15);
    }

    #[test]
    fn cui_freeden_square_of_log_variant() {
        let a = cui_freeden_discrepancy(&antipodal(), LogTerm::SquareOfLog)
            .unwrap()
            .value;
        // two ordered pairs at distance 2: (ln 2)^2 each, halved by N^2 = 4
        let expected = ((1.0 - 2f64.ln().powi(2) / 2.0) / (4.0 * PI)).sqrt();
        assert!((a - expected).abs() < 1e-15);
    }

    #[test]
    fn cui_freeden_decreases_with_m() {
        let values: Vec<f64> = (2..=10)
            .map(|m| {
                cui_freeden_discrepancy(&lifted(m), LogTerm::LogOfSquare)
                    .unwrap()
                    .value
            })
            .collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
        assert!(values[8] < values[3]);
    }
}
