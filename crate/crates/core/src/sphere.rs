//! The equal-area lift from the unit square to the 2-sphere.
//!
//! `T(θ, φ) = (cos 2πθ · sin πφ, sin 2πθ · sin πφ, cos πφ)` uses scaled
//! spherical coordinates in `[0,1)×[0,1]`. Composing it with
//! `φ = arccos(1 − 2x₂)/π` gives the area-preserving map
//! `Φ(x₁, x₂) = (2cos(2πx₁)√(x₂−x₂²), 2sin(2πx₁)√(x₂−x₂²), 1 − 2x₂)`.

use crate::error::{Error, Result};
use crate::netgen::UnitSquarePointSet;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

/// Tolerance on `|x²+y²+z² − 1|` for points produced by the analytic maps.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Squared equatorial radius below which a point counts as a pole.
pub const POLE_RADIUS_SQ: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    x: f64,
    y: f64,
    z: f64,
}

impl SpherePoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let p = Self { x, y, z };
        let defect = (p.norm_sq() - 1.0).abs();
        if defect.is_nan() || defect > UNIT_NORM_TOL {
            return Err(Error::Domain(format!(
                "({x}, {y}, {z}) is off the unit sphere by {defect:e}"
            )));
        }
        Ok(p)
    }

    pub(crate) fn new_unchecked(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn north_pole() -> Self {
        Self::new_unchecked(0.0, 0.0, 1.0)
    }

    pub fn south_pole() -> Self {
        Self::new_unchecked(0.0, 0.0, -1.0)
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.x
    }

    #[inline]
    pub fn y(&self) -> f64 {
        self.y
    }

    #[inline]
    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    #[inline]
    pub fn distance(&self, other: &Self) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn is_pole(&self) -> bool {
        self.x * self.x + self.y * self.y < POLE_RADIUS_SQ
    }

    /// Scaled spherical coordinates `(θ, φ) ∈ [0,1)×[0,1]`, recovered with
    /// inverse trigonometry. Poles get `θ = 0`.
    pub fn scaled_coords(&self) -> (f64, f64) {
        let phi = self.z.clamp(-1.0, 1.0).acos() / PI;
        (azimuth_fraction(self), phi)
    }
}

fn azimuth_fraction(p: &SpherePoint) -> f64 {
    if p.is_pole() {
        return 0.0;
    }
    let mut t = p.y.atan2(p.x) / TAU;
    if t < 0.0 {
        t += 1.0;
    }
    // a tiny negative angle rounds to exactly 1 after the shift
    if t >= 1.0 {
        0.0
    } else {
        t
    }
}

fn check_range(name: &str, v: f64, upper_closed: bool) -> Result<()> {
    let ok = v >= 0.0 && if upper_closed { v <= 1.0 } else { v < 1.0 };
    if ok {
        Ok(())
    } else {
        let bracket = if upper_closed { "]" } else { ")" };
        Err(Error::Domain(format!(
            "{name} = {v} is outside [0, 1{bracket}"
        )))
    }
}

/// `T(θ, φ)` for `θ ∈ [0,1)`, `φ ∈ [0,1]`.
pub fn map_t(theta: f64, phi: f64) -> Result<SpherePoint> {
    check_range("theta", theta, false)?;
    check_range("phi", phi, true)?;
    let (st, ct) = (TAU * theta).sin_cos();
    let (sp, cp) = (PI * phi).sin_cos();
    Ok(SpherePoint::new_unchecked(ct * sp, st * sp, cp))
}

/// `Φ(x₁, x₂)` for `x₁ ∈ [0,1)`, `x₂ ∈ [0,1]`.
pub fn map_phi(x1: f64, x2: f64) -> Result<SpherePoint> {
    check_range("x1", x1, false)?;
    check_range("x2", x2, true)?;
    Ok(phi_unchecked(x1, x2))
}

#[inline]
fn phi_unchecked(x1: f64, x2: f64) -> SpherePoint {
    let r = 2.0 * (x2 - x2 * x2).max(0.0).sqrt();
    let (s, c) = (TAU * x1).sin_cos();
    SpherePoint::new_unchecked(c * r, s * r, 1.0 - 2.0 * x2)
}

/// Inverse of `Φ`: `x₂ = (1 − z)/2` and `x₁` the azimuth as a fraction of a turn.
pub fn inverse_phi(p: &SpherePoint) -> (f64, f64) {
    (azimuth_fraction(p), (1.0 - p.z) / 2.0)
}

/// Points on the sphere, optionally with the unit-square points they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePointSet {
    points: Vec<SpherePoint>,
    preimages: Option<UnitSquarePointSet>,
}

impl SpherePointSet {
    pub fn new(points: Vec<SpherePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        Ok(Self {
            points,
            preimages: None,
        })
    }

    /// Attaches pre-images, checking `Φ(preimage_k) = point_k` to 1e-12.
    pub fn with_preimages(points: Vec<SpherePoint>, preimages: UnitSquarePointSet) -> Result<Self> {
        if points.len() != preimages.len() {
            return Err(Error::SizeMismatch {
                expected: preimages.len(),
                found: points.len(),
            });
        }
        for (k, (p, &(x1, x2))) in points.iter().zip(preimages.coords()).enumerate() {
            let q = phi_unchecked(x1, x2);
            let err = (p.x - q.x)
                .abs()
                .max((p.y - q.y).abs())
                .max((p.z - q.z).abs());
            if err > UNIT_NORM_TOL {
                return Err(Error::Domain(format!(
                    "point {k} differs from the image of its pre-image by {err:e}"
                )));
            }
        }
        let mut set = Self::new(points)?;
        set.preimages = Some(preimages);
        Ok(set)
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn preimages(&self) -> Option<&UnitSquarePointSet> {
        self.preimages.as_ref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of points sitting on either pole.
    pub fn pole_count(&self) -> usize {
        self.points.iter().filter(|p| p.is_pole()).count()
    }
}

/// Applies `Φ` pointwise, keeping order and the pre-images.
pub fn lift(points: &UnitSquarePointSet) -> SpherePointSet {
    let lifted = points
        .coords()
        .par_iter()
        .map(|&(x1, x2)| phi_unchecked(x1, x2))
        .collect();
    SpherePointSet {
        points: lifted,
        preimages: Some(points.clone()),
    }
}

/// `{T(θ, φ) : θ₁ ≤ θ < θ₂, φ₁ ≤ φ < φ₂}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalRectangle {
    theta1: f64,
    theta2: f64,
    phi1: f64,
    phi2: f64,
}

impl SphericalRectangle {
    pub fn new(theta1: f64, theta2: f64, phi1: f64, phi2: f64) -> Result<Self> {
        let ordered = |lo: f64, hi: f64| 0.0 <= lo && lo < hi && hi <= 1.0;
        if !ordered(theta1, theta2) || !ordered(phi1, phi2) {
            return Err(Error::Domain(format!(
                "rectangle ({theta1}, {theta2}, {phi1}, {phi2}) violates 0 <= lo < hi <= 1"
            )));
        }
        Ok(Self {
            theta1,
            theta2,
            phi1,
            phi2,
        })
    }

    /// Image under `Φ` of the planar box `[a₁,a₂)×[c₁,c₂)`.
    pub fn from_planar(a1: f64, a2: f64, c1: f64, c2: f64) -> Result<Self> {
        let phi = |c: f64| (1.0 - 2.0 * c).clamp(-1.0, 1.0).acos() / PI;
        Self::new(a1, a2, phi(c1), phi(c2))
    }

    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        (self.theta1, self.theta2, self.phi1, self.phi2)
    }

    /// Normalised area `Γ = (θ₂−θ₁)(cos πφ₁ − cos πφ₂)/2`.
    pub fn area(&self) -> f64 {
        (self.theta2 - self.theta1) * ((PI * self.phi1).cos() - (PI * self.phi2).cos()) / 2.0
    }

    /// Half-open membership decided from the point's own coordinates.
    pub fn contains(&self, p: &SpherePoint) -> bool {
        let (theta, phi) = p.scaled_coords();
        self.theta1 <= theta && theta < self.theta2 && self.phi1 <= phi && phi < self.phi2
    }
}
