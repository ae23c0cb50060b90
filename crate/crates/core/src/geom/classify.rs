use serde::{Deserialize, Serialize};

use super::{area, min_area_bounding_box_area, min_enclosing_circle, perimeter, Geometry};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Square,
    Rectangular,
    Circular,
}

impl Shape {
    pub const ALL: [Shape; 3] = [Shape::Square, Shape::Rectangular, Shape::Circular];

    pub fn as_str(self) -> &'static str {
        match self {
            Shape::Square => "square",
            Shape::Rectangular => "rectangular",
            Shape::Circular => "circular",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeClass {
    Small,
    Medium,
    Large,
}

impl SizeClass {
    pub const ALL: [SizeClass; 3] = [SizeClass::Small, SizeClass::Medium, SizeClass::Large];

    pub fn as_str(self) -> &'static str {
        match self {
            SizeClass::Small => "small",
            SizeClass::Medium => "medium",
            SizeClass::Large => "large",
        }
    }
}

/// Thresholds on the unitless shape ratios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ShapeConfig {
    /// Closed window on 16·A/P², which is 1 for a square.
    pub square_isoperimetric_window: [f64; 2],
    /// Lower bound on 4πA/P², which is 1 for a circle.
    pub circle_isoperimetric_min: f64,
    /// Lower bound on A / (π r²) with r the minimum enclosing circle radius.
    pub circle_coverage_min: f64,
    /// Lower bound on A / (minimum oriented bounding box area).
    pub rectangle_rectangularity_min: f64,
}

impl Default for ShapeConfig {
    fn default() -> Self {
        Self {
            square_isoperimetric_window: [0.90, 1.0],
            circle_isoperimetric_min: 0.85,
            circle_coverage_min: 0.85,
            rectangle_rectangularity_min: 0.85,
        }
    }
}

impl ShapeConfig {
    pub fn validate(&self) -> Result<()> {
        let [lo, hi] = self.square_isoperimetric_window;
        let in_unit = |v: f64| v > 0.0 && v <= 1.0;
        if !(in_unit(lo) && in_unit(hi) && lo <= hi) {
            return Err(Error::Config(format!(
                "shape_config.square_isoperimetric_window must satisfy 0 < lo <= hi <= 1, got [{lo}, {hi}]"
            )));
        }
        for (name, v) in [
            ("circle_isoperimetric_min", self.circle_isoperimetric_min),
            ("circle_coverage_min", self.circle_coverage_min),
            ("rectangle_rectangularity_min", self.rectangle_rectangularity_min),
        ] {
            if !in_unit(v) {
                return Err(Error::Config(format!(
                    "shape_config.{name} must lie in (0, 1], got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// The three ratios shape classification is based on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeRatios {
    pub circle_isoperimetric: f64,
    pub square_isoperimetric: f64,
    pub circle_coverage: f64,
    pub rectangularity: f64,
}

impl ShapeRatios {
    pub fn of(geometry: &Geometry) -> Option<Self> {
        if !geometry.is_areal() {
            return None;
        }
        let a = area(geometry);
        let p = perimeter(geometry);
        if a <= 0.0 || p <= 0.0 {
            return None;
        }
        let r = min_enclosing_circle(geometry)?.radius;
        let obb = min_area_bounding_box_area(geometry);
        let p2 = p * p;
        Some(Self {
            circle_isoperimetric: 4.0 * std::f64::consts::PI * a / p2,
            square_isoperimetric: 16.0 * a / p2,
            circle_coverage: if r > 0.0 {
                a / (std::f64::consts::PI * r * r)
            } else {
                0.0
            },
            rectangularity: if obb > 0.0 { a / obb } else { 0.0 },
        })
    }
}

// Absorbs rounding in ratios that are exactly on a threshold analytically.
const RATIO_EPS: f64 = 1e-9;

/// Shape label with precedence circle > square > rectangle; `None` for
/// polylines, empty geometry, and shapes matching no class.
pub fn classify_shape(geometry: &Geometry, config: &ShapeConfig) -> Option<Shape> {
    let r = ShapeRatios::of(geometry)?;
    let rect_ok = r.rectangularity + RATIO_EPS >= config.rectangle_rectangularity_min;
    let [sq_lo, sq_hi] = config.square_isoperimetric_window;
    if r.circle_isoperimetric + RATIO_EPS >= config.circle_isoperimetric_min
        && r.circle_coverage + RATIO_EPS >= config.circle_coverage_min
    {
        Some(Shape::Circular)
    } else if r.square_isoperimetric + RATIO_EPS >= sq_lo && r.square_isoperimetric - RATIO_EPS <= sq_hi && rect_ok {
        Some(Shape::Square)
    } else if rect_ok {
        Some(Shape::Rectangular)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SizeProfile {
    /// Exclusive upper bound of "small", m².
    pub small_max: f64,
    /// Exclusive upper bound of "medium", m².
    pub medium_max: f64,
}

impl SizeProfile {
    /// Low-resolution thresholds: small < 3000 m², medium < 10000 m².
    pub const LOW_RESOLUTION: SizeProfile = SizeProfile {
        small_max: 3000.0,
        medium_max: 10000.0,
    };

    /// High-resolution thresholds: small < 100 m², medium < 500 m².
    pub const HIGH_RESOLUTION: SizeProfile = SizeProfile {
        small_max: 100.0,
        medium_max: 500.0,
    };

    pub fn validate(&self) -> Result<()> {
        if !(self.small_max > 0.0 && self.small_max < self.medium_max && self.medium_max.is_finite()) {
            return Err(Error::Config(format!(
                "size_profile must satisfy 0 < small_max < medium_max, got {} / {}",
                self.small_max, self.medium_max
            )));
        }
        Ok(())
    }
}

pub fn classify_size(area_m2: f64, profile: &SizeProfile) -> SizeClass {
    if area_m2 < profile.small_max {
        SizeClass::Small
    } else if area_m2 < profile.medium_max {
        SizeClass::Medium
    } else {
        SizeClass::Large
    }
}
