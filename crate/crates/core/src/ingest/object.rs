use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::geom::Geometry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Road,
    WaterArea,
    Building,
    LandUse,
}

impl Layer {
    pub const ALL: [Layer; 4] = [Layer::Road, Layer::WaterArea, Layer::Building, Layer::LandUse];

    pub fn as_str(self) -> &'static str {
        match self {
            Layer::Road => "road",
            Layer::WaterArea => "water_area",
            Layer::Building => "building",
            Layer::LandUse => "land_use",
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Layer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Layer::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown layer {s:?}"))
    }
}

/// One vector feature in metric coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct GeoObject {
    pub id: String,
    pub layer: Layer,
    pub subtype: String,
    pub geometry: Geometry,
    /// Remaining feature properties, passed through untouched.
    pub source_tags: BTreeMap<String, serde_json::Value>,
}

impl GeoObject {
    pub fn new(id: impl Into<String>, layer: Layer, subtype: impl Into<String>, geometry: Geometry) -> Self {
        Self {
            id: id.into(),
            layer,
            subtype: subtype.into(),
            geometry,
            source_tags: BTreeMap::new(),
        }
    }

    /// Checks ring closure, vertex counts and finiteness.
    pub(crate) fn geometry_problem(&self) -> Option<GeometryProblem> {
        if self.geometry.vertices().any(|p| !p.is_finite()) {
            return Some(GeometryProblem::Invalid("non-finite coordinate".into()));
        }
        match &self.geometry {
            Geometry::Polygons(polys) => {
                if polys.is_empty() {
                    return Some(GeometryProblem::Invalid("polygon without rings".into()));
                }
                for ring in polys.iter().flat_map(|p| p.rings()) {
                    if ring.len() < 4 {
                        return Some(GeometryProblem::Invalid(format!(
                            "ring has {} vertices, at least 4 required",
                            ring.len()
                        )));
                    }
                    if ring.first() != ring.last() {
                        return Some(GeometryProblem::OpenRing);
                    }
                }
            }
            Geometry::Lines(lines) => {
                if lines.is_empty() {
                    return Some(GeometryProblem::Invalid("polyline without parts".into()));
                }
                if let Some(l) = lines.iter().find(|l| l.len() < 2) {
                    return Some(GeometryProblem::Invalid(format!(
                        "polyline has {} vertices, at least 2 required",
                        l.len()
                    )));
                }
            }
        }
        None
    }
}

pub(crate) enum GeometryProblem {
    OpenRing,
    Invalid(String),
}
