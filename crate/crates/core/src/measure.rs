//! Quality measures behind a common trait, registered by name.
//!
//! Every measure sees the same [`MeasureInput`]: the points on the sphere and,
//! when they came from the unit square, their exact pre-images. Planar
//! measures refuse inputs without pre-images.

use crate::discrepancy::{
    cap_l2_discrepancy, cui_freeden_discrepancy, extreme_discrepancy,
    sphere_rect_extreme_discrepancy, sphere_rect_star_discrepancy, star_discrepancy_limited,
    Discrepancy, LogTerm, DEFAULT_EXTREME_LIMIT, DEFAULT_STAR_LIMIT,
};
use crate::error::{Error, Result};
use crate::netgen::UnitSquarePointSet;
use crate::quadrature::worst_case_error_sq;
use crate::sphere::SpherePointSet;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    pub star: usize,
    pub extreme: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        Self {
            star: DEFAULT_STAR_LIMIT,
            extreme: DEFAULT_EXTREME_LIMIT,
        }
    }
}

pub struct MeasureInput<'a> {
    pub points: &'a SpherePointSet,
    pub limits: ExactLimits,
}

impl<'a> MeasureInput<'a> {
    pub fn new(points: &'a SpherePointSet, limits: ExactLimits) -> Self {
        Self { points, limits }
    }

    fn preimages(&self, measure: &str) -> Result<&'a UnitSquarePointSet> {
        self.points
            .preimages()
            .ok_or_else(|| Error::MissingPreimages(measure.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Measurement {
    Value { value: f64, exact: bool },
    Bracket { lower: f64, upper: f64 },
}

impl Measurement {
    pub fn exact(value: f64) -> Self {
        Self::Value { value, exact: true }
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            Self::Value { value, .. } => Some(value),
            Self::Bracket { .. } => None,
        }
    }

    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            Self::Value { value, .. } => (value, value),
            Self::Bracket { lower, upper } => (lower, upper),
        }
    }
}

impl From<Discrepancy> for Measurement {
    fn from(d: Discrepancy) -> Self {
        match d {
            Discrepancy::Value(v) => Self::Value {
                value: v.value,
                exact: v.exact,
            },
            Discrepancy::Bracket(b) => Self::Bracket {
                lower: b.lower,
                upper: b.upper,
            },
        }
    }
}

fn check_star_limit(input: &MeasureInput<'_>) -> Result<()> {
    if input.points.len() > input.limits.star {
        return Err(Error::InvalidConfig(format!(
            "star discrepancy of {} points exceeds the exact limit {}",
            input.points.len(),
            input.limits.star
        )));
    }
    Ok(())
}

pub trait Measure: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn evaluate(&self, input: &MeasureInput<'_>) -> Result<Measurement>;
}

pub struct WorstCaseError;

impl Measure for WorstCaseError {
    fn name(&self) -> &'static str {
        "wce"
    }

    fn description(&self) -> &'static str {
        "squared worst-case integration error in H^{3/2}"
    }

    fn evaluate(&self, input: &MeasureInput<'_>) -> Result<Measurement> {
        worst_case_error_sq(input.points).map(Measurement::exact)
    }
}

pub struct PlanarStar;

impl Measure for PlanarStar {
    fn name(&self) -> &'static str {
        "star"
    }

    fn description(&self) -> &'static str {
        "star discrepancy of the unit-square pre-images"
    }

    fn evaluate(&self, input: &MeasureInput<'_>) -> Result<Measurement> {
        let p = input.preimages(self.name())?;
        star_discrepancy_limited(p, input.limits.star).map(|v| Measurement::exact(v.value))
    }
}

pub struct PlanarExtreme;

impl Measure for PlanarExtreme {
    fn name(&self) -> &'static str {
        "extreme"
    }

    fn description(&self) -> &'static str {
        "extreme discrepancy of the unit-square pre-images"
    }

    fn evaluate(&self, input: &MeasureInput<'_>) -> Result<Measurement> {
        let p = input.preimages(self.name())?;
        Ok(extreme_discrepancy(p, input.limits.extreme).into())
    }
}

pub struct SphereRectStar;

impl Measure for SphereRectStar {
    fn name(&self) -> &'static str {
        "sphere_star"
    }

    fn description(&self) -> &'static str {
        "spherical-rectangle star discrepancy, evaluated on the sphere"
    }

    fn evaluate(&self, input: &MeasureInput<'_>) -> Result<Measurement> {
        check_star_limit(input)?;
        Ok(Measurement::exact(
            sphere_rect_star_discrepancy(input.points).value,
        ))
    }
}

pub struct SphereRectExtreme;

impl Measure for SphereRectExtreme {
    fn name(&self) -> &'static str {
        "sphere_extreme"
    }

    fn description(&self) -> &'static str {
        "extreme spherical-rectangle discrepancy, evaluated on the sphere"
    }

    fn evaluate(&self, input: &MeasureInput<'_>) -> Result<Measurement> {
        check_star_limit(input)?;
        Ok(sphere_rect_extreme_discrepancy(input.points, input.limits.extreme).into())
    }
}

pub struct CapL2;

impl Measure for CapL2 {
    fn name(&self) -> &'static str {
        "cap_l2"
    }

    fn description(&self) -> &'static str {
        "spherical-cap L2 discrepancy via the invariance principle"
    }

    fn evaluate(&self, input: &MeasureInput<'_>) -> Result<Measurement> {
        cap_l2_discrepancy(input.points).map(|v| Measurement::exact(v.value))
    }
}

pub struct CuiFreeden(pub LogTerm);

impl Measure for CuiFreeden {
    fn name(&self) -> &'static str {
        match self.0 {
            LogTerm::LogOfSquare => "cuifreeden",
            LogTerm::SquareOfLog => "cuifreeden_logsq",
        }
    }

    fn description(&self) -> &'static str {
        match self.0 {
            LogTerm::LogOfSquare => "Cui-Freeden generalized discrepancy, log((1+d/2)^2)",
            LogTerm::SquareOfLog => "Cui-Freeden generalized discrepancy, (log(1+d/2))^2 reading",
        }
    }

    fn evaluate(&self, input: &MeasureInput<'_>) -> Result<Measurement> {
        cui_freeden_discrepancy(input.points, self.0).map(|v| Measurement::exact(v.value))
    }
}

pub struct MeasureRegistry {
    measures: BTreeMap<&'static str, Box<dyn Measure>>,
}

impl MeasureRegistry {
    pub fn empty() -> Self {
        Self {
            measures: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, measure: Box<dyn Measure>) {
        self.measures.insert(measure.name(), measure);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Measure> {
        self.measures
            .get(name)
            .map(|m| m.as_ref())
            .ok_or_else(|| Error::UnknownMeasure(name.to_string()))
    }

    /// Looks up several names, keeping their order.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<&dyn Measure>> {
        names.iter().map(|n| self.get(n.as_ref())).collect()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.measures.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Measure> {
        self.measures.values().map(|m| m.as_ref())
    }
}

impl Default for MeasureRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(WorstCaseError));
        reg.register(Box::new(PlanarStar));
        reg.register(Box::new(PlanarExtreme));
        reg.register(Box::new(SphereRectStar));
        reg.register(Box::new(SphereRectExtreme));
        reg.register(Box::new(CapL2));
        reg.register(Box::new(CuiFreeden(LogTerm::LogOfSquare)));
        reg.register(Box::new(CuiFreeden(LogTerm::SquareOfLog)));
        reg
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgen::{digital_net, IdentityPascal, MatrixRecipe, PrimeBase};
    use crate::quadrature::random_sphere_points;
    use crate::sphere::lift;

    fn lifted(m: u32) -> SpherePointSet {
        lift(&digital_net(&IdentityPascal.spec(PrimeBase::new(2).unwrap(), m).unwrap()).unwrap())
    }

    #[test]
    fn builtin_names() {
        let reg = MeasureRegistry::default();
        assert_eq!(
            reg.names(),
            vec![
                "cap_l2",
                "cuifreeden",
                "cuifreeden_logsq",
                "extreme",
                "sphere_extreme",
                "sphere_star",
                "star",
                "wce"
            ]
        );
        assert!(matches!(reg.get("nope"), Err(Error::UnknownMeasure(_))));
        assert!(reg.iter().all(|m| !m.description().is_empty()));
    }

    #[test]
    fn every_measure_on_a_net() {
        let reg = MeasureRegistry::default();
        let z = lifted(4);
        let input = MeasureInput::new(&z, ExactLimits::default());
        for m in reg.iter() {
            let v = m.evaluate(&input).unwrap();
            let (lo, hi) = v.bounds();
            assert!(lo >= 0.0 && lo <= hi, "{}", m.name());
        }
        let star = reg
            .get("star")
            .unwrap()
            .evaluate(&input)
            .unwrap()
            .value()
            .unwrap();
        let sstar = reg
            .get("sphere_star")
            .unwrap()
            .evaluate(&input)
            .unwrap()
            .value()
            .unwrap();
        assert!((star - sstar).abs() < 1e-12);
    }

    #[test]
    fn planar_measures_need_preimages() {
        let reg = MeasureRegistry::default();
        let z = random_sphere_points(16, 1).unwrap();
        let input = MeasureInput::new(&z, ExactLimits::default());
        assert!(matches!(
            reg.get("star").unwrap().evaluate(&input),
            Err(Error::MissingPreimages(_))
        ));
        assert!(reg.get("sphere_star").unwrap().evaluate(&input).is_ok());
        assert!(reg.get("wce").unwrap().evaluate(&input).is_ok());
    }

    #[test]
    fn extreme_brackets_beyond_limit() {
        let reg = MeasureRegistry::default();
        let z = lifted(5);
        let limits = ExactLimits {
            star: 4096,
            extreme: 16,
        };
        let v = reg
            .get("extreme")
            .unwrap()
            .evaluate(&MeasureInput::new(&z, limits))
            .unwrap();
        let (lo, hi) = v.bounds();
        assert!(matches!(v, Measurement::Bracket { .. }));
        assert_eq!(hi, 4.0 * lo);
    }

    #[test]
    fn star_limit_enforced() {
        let reg = MeasureRegistry::default();
        let z = lifted(5);
        let limits = ExactLimits {
            star: 16,
            extreme: 16,
        };
        let input = MeasureInput::new(&z, limits);
        assert!(reg.get("star").unwrap().evaluate(&input).is_err());
        assert!(reg.get("sphere_star").unwrap().evaluate(&input).is_err());
    }
}
