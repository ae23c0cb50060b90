//! GeoJSON FeatureCollection reading and writing.
//!
//! Features must carry `layer` and `subtype` properties. Supported geometry
//! types are Polygon, MultiPolygon, LineString and MultiLineString.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::object::{GeoObject, GeometryProblem, Layer};
use super::ObjectCollection;
use crate::error::{Error, Result};
use crate::geom::{Geometry, Point, Polygon};

/// How input coordinates are interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrsPolicy {
    /// Coordinates are meters. A collection declaring a geographic CRS is
    /// rejected.
    #[default]
    RequireMetric,
    /// Coordinates are lon/lat degrees, projected to meters with a local
    /// equirectangular projection about the collection's vertex centroid.
    EquirectangularApprox,
}

const EARTH_RADIUS_M: f64 = 6_371_008.8;

pub fn load_collection(path: impl AsRef<Path>, policy: CrsPolicy) -> Result<ObjectCollection> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_collection(&text, policy)
}

pub fn parse_collection(text: &str, policy: CrsPolicy) -> Result<ObjectCollection> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::json(&e))?;
    let root = root.as_object().ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "top-level value is not an object".into(),
    })?;
    if root.get("type").and_then(Value::as_str) != Some("FeatureCollection") {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "top-level object is not a FeatureCollection".into(),
        });
    }
    let declared_geographic = root.get("crs").is_some_and(is_geographic_crs);
    if declared_geographic && policy == CrsPolicy::RequireMetric {
        return Err(Error::Validation(
            "collection declares geographic coordinates; load with the equirectangular approximation".into(),
        ));
    }
    let features = root
        .get("features")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "FeatureCollection has no `features` array".into(),
        })?;

    let mut objects = Vec::with_capacity(features.len());
    let mut unknown_layers = Vec::new();
    for (index, feature) in features.iter().enumerate() {
        match parse_feature(index, feature)? {
            ParsedFeature::Object(obj) => objects.push(obj),
            ParsedFeature::UnknownLayer(id) => unknown_layers.push(id),
        }
    }
    if !unknown_layers.is_empty() {
        return Err(Error::UnknownLayer { ids: unknown_layers });
    }

    if policy == CrsPolicy::EquirectangularApprox {
        project_equirectangular(&mut objects)?;
    }
    ObjectCollection::new(objects)
}

fn is_geographic_crs(crs: &Value) -> bool {
    let name = crs
        .pointer("/properties/name")
        .and_then(Value::as_str)
        .unwrap_or_default();
    name.ends_with("CRS84") || name.ends_with("4326")
}

enum ParsedFeature {
    Object(GeoObject),
    UnknownLayer(String),
}

fn feature_err(index: usize, message: impl Into<String>) -> Error {
    Error::Feature {
        index,
        message: message.into(),
    }
}

fn parse_feature(index: usize, feature: &Value) -> Result<ParsedFeature> {
    let obj = feature
        .as_object()
        .ok_or_else(|| feature_err(index, "feature is not an object"))?;
    let empty = Map::new();
    let props = match obj.get("properties") {
        Some(Value::Object(m)) => m,
        Some(Value::Null) | None => &empty,
        Some(_) => return Err(feature_err(index, "`properties` is not an object")),
    };
    let id = match obj.get("id").or_else(|| props.get("id")) {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        Some(_) => return Err(feature_err(index, "`id` must be a string or number")),
        None => format!("feature-{index}"),
    };
    let layer_name = props
        .get("layer")
        .and_then(Value::as_str)
        .ok_or_else(|| feature_err(index, format!("feature {id} has no string `layer` property")))?;
    let subtype = props
        .get("subtype")
        .and_then(Value::as_str)
        .ok_or_else(|| feature_err(index, format!("feature {id} has no string `subtype` property")))?
        .to_string();
    let Ok(layer) = layer_name.parse::<Layer>() else {
        return Ok(ParsedFeature::UnknownLayer(id));
    };
    let geometry = obj
        .get("geometry")
        .ok_or_else(|| feature_err(index, format!("feature {id} has no geometry")))?;
    let geometry = parse_geometry(geometry).map_err(|m| feature_err(index, format!("feature {id}: {m}")))?;

    let source_tags: BTreeMap<String, Value> = props
        .iter()
        .filter(|(k, _)| !matches!(k.as_str(), "layer" | "subtype" | "id"))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    Ok(ParsedFeature::Object(GeoObject {
        id,
        layer,
        subtype,
        geometry,
        source_tags,
    }))
}

fn parse_position(v: &Value) -> Result<Point, String> {
    let arr = v.as_array().ok_or("position is not an array")?;
    if arr.len() < 2 {
        return Err("position has fewer than 2 coordinates".into());
    }
    let x = arr[0].as_f64().ok_or("coordinate is not a number")?;
    let y = arr[1].as_f64().ok_or("coordinate is not a number")?;
    Ok(Point::new(x, y))
}

fn parse_path(v: &Value) -> Result<Vec<Point>, String> {
    v.as_array()
        .ok_or("expected an array of positions")?
        .iter()
        .map(parse_position)
        .collect()
}

fn parse_polygon(v: &Value) -> Result<Polygon, String> {
    let rings = v.as_array().ok_or("expected an array of rings")?;
    let mut rings = rings.iter().map(parse_path);
    let exterior = rings.next().ok_or("polygon has no rings")??;
    let holes = rings.collect::<Result<Vec<_>, _>>()?;
    Ok(Polygon::new(exterior, holes))
}

fn parse_geometry(v: &Value) -> Result<Geometry, String> {
    let kind = v.get("type").and_then(Value::as_str).ok_or("geometry has no type")?;
    let coords = v.get("coordinates").ok_or("geometry has no coordinates")?;
    let many = |c: &Value| -> Result<Vec<Value>, String> { Ok(c.as_array().ok_or("expected an array")?.clone()) };
    match kind {
        "Polygon" => Ok(Geometry::Polygons(vec![parse_polygon(coords)?])),
        "MultiPolygon" => Ok(Geometry::Polygons(
            many(coords)?.iter().map(parse_polygon).collect::<Result<_, _>>()?,
        )),
        "LineString" => Ok(Geometry::Lines(vec![parse_path(coords)?])),
        "MultiLineString" => Ok(Geometry::Lines(
            many(coords)?.iter().map(parse_path).collect::<Result<_, _>>()?,
        )),
        other => Err(format!("unsupported geometry type {other}")),
    }
}

fn project_equirectangular(objects: &mut [GeoObject]) -> Result<()> {
    let mut n = 0usize;
    let (mut sum_lon, mut sum_lat) = (0.0, 0.0);
    for obj in objects.iter() {
        for p in obj.geometry.vertices() {
            if !(-180.0..=180.0).contains(&p.x) || !(-90.0..=90.0).contains(&p.y) {
                return Err(Error::InvalidGeometry {
                    id: obj.id.clone(),
                    message: format!("({}, {}) is not a lon/lat position", p.x, p.y),
                });
            }
            n += 1;
            sum_lon += p.x;
            sum_lat += p.y;
        }
    }
    if n == 0 {
        return Ok(());
    }
    let (lon0, lat0) = (sum_lon / n as f64, sum_lat / n as f64);
    let kx = EARTH_RADIUS_M * lat0.to_radians().cos();
    let project = |p: &mut Point| {
        *p = Point::new(
            kx * (p.x - lon0).to_radians(),
            EARTH_RADIUS_M * (p.y - lat0).to_radians(),
        );
    };
    for obj in objects.iter_mut() {
        match &mut obj.geometry {
            Geometry::Polygons(polys) => polys
                .iter_mut()
                .flat_map(|p| std::iter::once(&mut p.exterior).chain(p.holes.iter_mut()))
                .flat_map(|r| r.iter_mut())
                .for_each(project),
            Geometry::Lines(lines) => lines.iter_mut().flat_map(|l| l.iter_mut()).for_each(project),
        }
    }
    Ok(())
}

/// Validates ids and geometries; used by [`ObjectCollection::new`].
pub(crate) fn validate_objects(objects: &[GeoObject]) -> Result<()> {
    let mut open = Vec::new();
    for obj in objects {
        match obj.geometry_problem() {
            Some(GeometryProblem::OpenRing) => open.push(obj.id.clone()),
            Some(GeometryProblem::Invalid(message)) => {
                return Err(Error::InvalidGeometry {
                    id: obj.id.clone(),
                    message,
                })
            }
            None => {}
        }
    }
    if !open.is_empty() {
        return Err(Error::OpenRing { ids: open });
    }
    let mut seen = HashSet::with_capacity(objects.len());
    for obj in objects {
        if !seen.insert(obj.id.as_str()) {
            return Err(Error::Validation(format!("duplicate feature id {}", obj.id)));
        }
    }
    Ok(())
}

fn path_json(path: &[Point]) -> Value {
    Value::Array(path.iter().map(|p| json!([p.x, p.y])).collect())
}

fn polygon_json(p: &Polygon) -> Value {
    Value::Array(p.rings().map(|r| path_json(r)).collect())
}

fn geometry_json(g: &Geometry) -> Value {
    match g {
        Geometry::Polygons(polys) if polys.len() == 1 => {
            json!({"type": "Polygon", "coordinates": polygon_json(&polys[0])})
        }
        Geometry::Polygons(polys) => json!({
            "type": "MultiPolygon",
            "coordinates": polys.iter().map(polygon_json).collect::<Vec<_>>(),
        }),
        Geometry::Lines(lines) if lines.len() == 1 => {
            json!({"type": "LineString", "coordinates": path_json(&lines[0])})
        }
        Geometry::Lines(lines) => json!({
            "type": "MultiLineString",
            "coordinates": lines.iter().map(|l| path_json(l)).collect::<Vec<_>>(),
        }),
    }
}

/// Renders objects as a GeoJSON FeatureCollection readable by
/// [`parse_collection`].
pub fn to_geojson(objects: &[GeoObject]) -> Value {
    let features: Vec<Value> = objects
        .iter()
        .map(|o| {
            let mut props = Map::new();
            props.insert("layer".into(), Value::String(o.layer.as_str().into()));
            props.insert("subtype".into(), Value::String(o.subtype.clone()));
            for (k, v) in &o.source_tags {
                props.insert(k.clone(), v.clone());
            }
            json!({
                "type": "Feature",
                "id": o.id,
                "properties": props,
                "geometry": geometry_json(&o.geometry),
            })
        })
        .collect();
    json!({"type": "FeatureCollection", "features": features})
}

pub fn write_collection(objects: &[GeoObject], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = serde_json::to_string(&to_geojson(objects)).expect("JSON values always serialize");
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
