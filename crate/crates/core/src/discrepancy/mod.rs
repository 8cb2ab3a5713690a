//! Discrepancy measures for planar and spherical point sets.
//!
//! Box-type discrepancies are computed exactly on the critical grid (see
//! [`grid`]). The spherical-rectangle variants recover each point's scaled
//! coordinates geometrically and run the same enumeration in the `(θ, c)`
//! parameterisation, `c = (1 − cos πφ)/2`, where spherical rectangles become
//! axis-parallel boxes of equal area.

pub mod bounds;
mod distance;
pub mod grid;

pub use distance::{
    cap_l2_discrepancy, clamp_radicand, cui_freeden_discrepancy, sum_of_distances,
    symmetric_pair_sum, LogTerm, RADICAND_TOL,
};

use crate::error::{Error, Result};
use crate::netgen::UnitSquarePointSet;
use crate::sphere::SpherePointSet;
use serde::Serialize;
use std::fmt;

/// Default point-count limit for the exact star discrepancy (quadratic cost).
pub const DEFAULT_STAR_LIMIT: usize = 4096;
/// Default point-count limit for the exact extreme discrepancy (cubic cost).
pub const DEFAULT_EXTREME_LIMIT: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscrepancyKind {
    PlanarStar,
    PlanarExtreme,
    SphereRectStar,
    SphereRectExtreme,
    CapL2,
    CuiFreeden,
}

impl DiscrepancyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::PlanarStar => "planar_star",
            Self::PlanarExtreme => "planar_extreme",
            Self::SphereRectStar => "sphere_rect_star",
            Self::SphereRectExtreme => "sphere_rect_extreme",
            Self::CapL2 => "cap_L2",
            Self::CuiFreeden => "cui_freeden",
        }
    }

    fn is_box_type(self) -> bool {
        !matches!(self, Self::CapL2 | Self::CuiFreeden)
    }
}

impl fmt::Display for DiscrepancyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscrepancyValue {
    pub kind: DiscrepancyKind,
    pub value: f64,
    /// Computed by exhaustive enumeration or closed form.
    pub exact: bool,
}

impl DiscrepancyValue {
    pub(crate) fn exact(kind: DiscrepancyKind, value: f64) -> Self {
        debug_assert!(value >= 0.0);
        debug_assert!(!kind.is_box_type() || value <= 1.0 + 1e-12);
        Self {
            kind,
            value,
            exact: true,
        }
    }
}

/// `lower ≤ D ≤ upper` when the exact value is out of reach.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscrepancyBracket {
    pub kind: DiscrepancyKind,
    pub lower: f64,
    pub upper: f64,
}

/// Either an exact value or a bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Discrepancy {
    Value(DiscrepancyValue),
    Bracket(DiscrepancyBracket),
}

impl Discrepancy {
    pub fn kind(&self) -> DiscrepancyKind {
        match self {
            Self::Value(v) => v.kind,
            Self::Bracket(b) => b.kind,
        }
    }

    pub fn exact_value(&self) -> Option<f64> {
        match self {
            Self::Value(v) if v.exact => Some(v.value),
            _ => None,
        }
    }

    /// `(lower, upper)`; equal for exact values.
    pub fn bounds(&self) -> (f64, f64) {
        match self {
            Self::Value(v) => (v.value, v.value),
            Self::Bracket(b) => (b.lower, b.upper),
        }
    }
}

pub fn star_discrepancy(points: &UnitSquarePointSet) -> DiscrepancyValue {
    DiscrepancyValue::exact(DiscrepancyKind::PlanarStar, grid::star(points.coords()))
}

/// Exact when `N ≤ exact_limit`, otherwise the bracket `[D*, 4·D*]`.
pub fn extreme_discrepancy(points: &UnitSquarePointSet, exact_limit: usize) -> Discrepancy {
    extreme_on(points.coords(), exact_limit, DiscrepancyKind::PlanarExtreme)
}

fn extreme_on(coords: &[(f64, f64)], exact_limit: usize, kind: DiscrepancyKind) -> Discrepancy {
    if coords.len() <= exact_limit {
        Discrepancy::Value(DiscrepancyValue::exact(kind, grid::extreme(coords)))
    } else {
        let lower = grid::star(coords);
        Discrepancy::Bracket(DiscrepancyBracket {
            kind,
            lower,
            upper: 4.0 * lower,
        })
    }
}

/// Resolution to which recovered sphere coordinates are snapped, so that
/// round-off in the trigonometry cannot move a point across a box edge.
pub const SNAP_RESOLUTION: f64 = 1.0 / (1u64 << 48) as f64;

fn snap(v: f64) -> f64 {
    (v / SNAP_RESOLUTION).round() * SNAP_RESOLUTION
}

/// `(θ, c)` of every point, with `c = (1 − cos πφ)/2 = (1 − z)/2`, recovered
/// from the Cartesian coordinates alone and snapped to [`SNAP_RESOLUTION`].
pub fn sphere_rect_coords(points: &SpherePointSet) -> Vec<(f64, f64)> {
    points
        .points()
        .iter()
        .map(|p| {
            let (theta, _) = p.scaled_coords();
            let theta = snap(theta);
            let theta = if theta >= 1.0 { 0.0 } else { theta };
            (theta, snap((1.0 - p.z()) / 2.0))
        })
        .collect()
}

pub fn sphere_rect_star_discrepancy(points: &SpherePointSet) -> DiscrepancyValue {
    let coords = sphere_rect_coords(points);
    DiscrepancyValue::exact(DiscrepancyKind::SphereRectStar, grid::star(&coords))
}

pub fn sphere_rect_extreme_discrepancy(points: &SpherePointSet, exact_limit: usize) -> Discrepancy {
    let coords = sphere_rect_coords(points);
    extreme_on(&coords, exact_limit, DiscrepancyKind::SphereRectExtreme)
}

/// Star discrepancy refusing sets above `limit`.
pub fn star_discrepancy_limited(
    points: &UnitSquarePointSet,
    limit: usize,
) -> Result<DiscrepancyValue> {
    if points.len() > limit {
        return Err(Error::InvalidConfig(format!(
            "star discrepancy of {} points exceeds the exact limit {limit}",
            points.len()
        )));
    }
    Ok(star_discrepancy(points))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgen::{
        digital_net, scramble, IdentityPascal, MatrixRecipe, PrimeBase, ScrambleState,
    };
    use crate::sphere::{lift, map_phi, SpherePoint};

    fn net(m: u32) -> UnitSquarePointSet {
        digital_net(&IdentityPascal.spec(PrimeBase::new(2).unwrap(), m).unwrap()).unwrap()
    }

    #[test]
    fn planar_examples() {
        assert_eq!(star_discrepancy(&net(1)).value, 0.75);
        let e = extreme_discrepancy(&net(1), DEFAULT_EXTREME_LIMIT);
        assert_eq!(e.exact_value(), Some(0.75));
        let b = PrimeBase::new(2).unwrap();
        let single = UnitSquarePointSet::from_numerators(b, 1, vec![(1, 1)]).unwrap();
        assert_eq!(star_discrepancy(&single).value, 0.75);
        assert_eq!(extreme_discrepancy(&single, 10).exact_value(), Some(1.0));
    }

    #[test]
    fn bracket_beyond_limit() {
        let p = net(4);
        match extreme_discrepancy(&p, 8) {
            Discrepancy::Bracket(b) => {
                assert_eq!(b.lower, star_discrepancy(&p).value);
                assert_eq!(b.upper, 4.0 * b.lower);
            }
            other => panic!("expected bracket, got {other:?}"),
        }
    }

    #[test]
    fn sphere_examples() {
        assert_eq!(sphere_rect_star_discrepancy(&lift(&net(1))).value, 0.75);
        let north = SpherePointSet::new(vec![SpherePoint::north_pole()]).unwrap();
        assert_eq!(sphere_rect_star_discrepancy(&north).value, 1.0);
        let s2 = sphere_rect_star_discrepancy(&lift(&net(2))).value;
        assert!((s2 - star_discrepancy(&net(2)).value).abs() < 1e-12);
        let e1 = sphere_rect_extreme_discrepancy(&lift(&net(1)), 512);
        assert!((e1.exact_value().unwrap() - 0.75).abs() < 1e-12);
    }

    /// The planar set with every point on `x₂ = 0` moved to `(0, 0)`, which is
    /// what the sphere can still see once such points collapse to the pole.
    fn canonical(p: &UnitSquarePointSet) -> UnitSquarePointSet {
        let nums = p
            .numerators()
            .iter()
            .map(|&(u1, u2)| if u2 == 0 { (0, 0) } else { (u1, u2) })
            .collect();
        UnitSquarePointSet::from_numerators(p.base(), p.depth(), nums).unwrap()
    }

    fn assert_equal_paths(planar_set: &UnitSquarePointSet, z: &SpherePointSet, m: u32) {
        let planar = star_discrepancy(planar_set).value;
        let sphere = sphere_rect_star_discrepancy(z).value;
        assert!(
            (planar - sphere).abs() <= 1e-12,
            "m={m}: {planar} vs {sphere}"
        );
        let pe = extreme_discrepancy(planar_set, 512).exact_value().unwrap();
        let se = sphere_rect_extreme_discrepancy(z, 512)
            .exact_value()
            .unwrap();
        assert!((pe - se).abs() <= 1e-12, "m={m}: {pe} vs {se}");
    }

    #[test]
    fn sphere_and_plane_agree_for_nets_and_scrambles() {
        let b = PrimeBase::new(2).unwrap();
        for m in 1..=7 {
            let p = net(m);
            assert_equal_paths(&p, &lift(&p), m);
            for seed in 0..3 {
                let s =
                    scramble(&p, &ScrambleState::from_seed(b, m as usize, seed).unwrap()).unwrap();
                assert_equal_paths(&canonical(&s), &lift(&s), m);
            }
        }
    }

    #[test]
    fn polar_preimage_off_axis_breaks_equality() {
        // (1/2, 0) lifts to the north pole, which every anchored rectangle holds
        let b = PrimeBase::new(2).unwrap();
        let p = UnitSquarePointSet::from_numerators(b, 1, vec![(1, 0), (0, 1)]).unwrap();
        assert_eq!(star_discrepancy(&p).value, 0.75);
        assert_eq!(sphere_rect_star_discrepancy(&lift(&p)).value, 1.0);
        assert_eq!(star_discrepancy(&canonical(&p)).value, 1.0);
    }

    #[test]
    fn sphere_star_against_geometric_membership() {
        // the anchored rectangle through the critical corner reproduces the value
        // when membership is tested on the sphere itself
        let z = lift(&net(3));
        let d = sphere_rect_star_discrepancy(&z).value;
        let mut best = 0.0f64;
        let coords = sphere_rect_coords(&z);
        let mut grid: Vec<f64> = coords.iter().flat_map(|c| [c.0, c.1]).collect();
        grid.extend([1.0]);
        for &a in &grid {
            for &c in &grid {
                for (da, dc) in [(0.0, 0.0), (1e-9, 1e-9)] {
                    let (a, c) = ((a + da).min(1.0), (c + dc).min(1.0));
                    if a == 0.0 || c == 0.0 {
                        continue;
                    }
                    let r = crate::sphere::SphericalRectangle::from_planar(0.0, a, 0.0, c).unwrap();
                    let hits = z.points().iter().filter(|p| r.contains(p)).count();
                    best = best.max((hits as f64 / z.len() as f64 - r.area()).abs());
                }
            }
        }
        assert!((best - d).abs() < 1e-7, "{best} vs {d}");
    }

    #[test]
    fn south_pole_is_never_counted() {
        let z = SpherePointSet::new(vec![SpherePoint::south_pole(), map_phi(0.5, 0.5).unwrap()])
            .unwrap();
        let coords = sphere_rect_coords(&z);
        assert_eq!(coords[0].1, 1.0);
        let d = sphere_rect_star_discrepancy(&z).value;
        assert!((d - grid::oracle::star(&coords)).abs() < 1e-8);
    }

    #[test]
    fn limited_star() {
        assert!(star_discrepancy_limited(&net(5), 16).is_err());
        assert!(star_discrepancy_limited(&net(4), 16).is_ok());
    }
}
