//! Brute-force reference for tile scenes, built on the `geo` crate.
#![allow(dead_code)]

use geo::{Area, BooleanOps, Centroid, Distance, Intersects};
use geovqa_core::answer::GeometryConfig;
use geovqa_core::geom::{
    classify_shape, classify_size, Geometry, Point, Polygon, Rect, Relation, Shape, ShapeConfig, SizeClass, SizeProfile,
};
use geovqa_core::ingest::{GeoObject, Layer};
use geovqa_core::question::{Attribute, ElementSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const FOOTPRINT: Rect = Rect::new(0.0, 0.0, 1000.0, 1000.0);

pub fn config() -> GeometryConfig {
    GeometryConfig {
        size_profile: SizeProfile::LOW_RESOLUTION,
        shape_config: ShapeConfig::default(),
    }
}

pub fn geo_poly(p: &Polygon) -> geo::Polygon<f64> {
    let ring = |r: &Vec<Point>| geo::LineString::from(r.iter().map(|p| (p.x, p.y)).collect::<Vec<_>>());
    geo::Polygon::new(ring(&p.exterior), p.holes.iter().map(ring).collect())
}

pub enum GeoShape {
    Area(geo::MultiPolygon<f64>),
    Line(geo::LineString<f64>),
}

pub fn to_geo(g: &Geometry) -> GeoShape {
    match g {
        Geometry::Polygons(ps) => GeoShape::Area(geo::MultiPolygon::new(ps.iter().map(geo_poly).collect())),
        Geometry::Lines(ls) => {
            assert_eq!(ls.len(), 1);
            GeoShape::Line(geo::LineString::from(
                ls[0].iter().map(|p| (p.x, p.y)).collect::<Vec<_>>(),
            ))
        }
    }
}

pub fn footprint_poly() -> geo::Polygon<f64> {
    geo::Rect::new(
        geo::coord! { x: FOOTPRINT.min_x, y: FOOTPRINT.min_y },
        geo::coord! { x: FOOTPRINT.max_x, y: FOOTPRINT.max_y },
    )
    .to_polygon()
}

pub fn random_object(rng: &mut ChaCha8Rng, i: usize) -> GeoObject {
    let cx = rng.random_range(-200.0..1200.0);
    let cy = rng.random_range(-200.0..1200.0);
    let kind = rng.random_range(0..4);
    let (layer, subtype) = match kind {
        0 => (Layer::Road, "primary"),
        1 => (Layer::WaterArea, "lake"),
        2 => (Layer::Building, if rng.random_bool(0.5) { "house" } else { "retail" }),
        _ => (
            Layer::LandUse,
            if rng.random_bool(0.5) { "forest" } else { "industrial" },
        ),
    };
    let geometry = if layer == Layer::Road {
        Geometry::line(vec![
            Point::new(cx, cy),
            Point::new(
                cx + rng.random_range(-300.0..300.0),
                cy + rng.random_range(-300.0..300.0),
            ),
        ])
    } else {
        let w = rng.random_range(20.0..160.0);
        let h = if rng.random_bool(0.4) {
            w
        } else {
            w * rng.random_range(0.2..1.0)
        };
        let pts = if rng.random_bool(0.3) {
            (0..24)
                .map(|k| {
                    let a = std::f64::consts::TAU * k as f64 / 24.0;
                    Point::new(cx + w / 2.0 * a.cos(), cy + w / 2.0 * a.sin())
                })
                .collect()
        } else {
            vec![
                Point::new(cx, cy),
                Point::new(cx + w, cy),
                Point::new(cx + w, cy + h),
                Point::new(cx, cy + h),
            ]
        };
        Geometry::polygon(Polygon::from_open(pts))
    };
    GeoObject::new(format!("o{i}"), layer, subtype, geometry)
}

/// Category membership for the categories used below, written out by hand.
pub fn in_category(o: &GeoObject, category: &str) -> bool {
    match category {
        "road" => o.layer == Layer::Road,
        "water_area" => o.layer == Layer::WaterArea,
        "residential_building" => o.layer == Layer::Building && o.subtype == "house",
        "commercial_building" => o.layer == Layer::Building && o.subtype == "retail",
        "forest" => o.layer == Layer::LandUse && o.subtype == "forest",
        "industrial_area" => o.layer == Layer::LandUse && o.subtype == "industrial",
        other => panic!("no oracle for {other}"),
    }
}

pub const CATEGORIES: [&str; 6] = [
    "road",
    "water_area",
    "residential_building",
    "commercial_building",
    "forest",
    "industrial_area",
];

pub struct Reference {
    pub visible: bool,
    pub clipped: Option<Geometry>,
    pub centroid: geo::Point<f64>,
    pub shape: GeoShape,
}

pub fn reference(o: &GeoObject) -> Reference {
    let shape = to_geo(&o.geometry);
    let fp = footprint_poly();
    let (visible, clipped, centroid) = match &shape {
        GeoShape::Area(mp) => {
            let clipped = mp.intersection(&geo::MultiPolygon::new(vec![fp.clone()]));
            let back = Geometry::Polygons(
                clipped
                    .0
                    .iter()
                    .map(|p| {
                        let ring = |l: &geo::LineString<f64>| l.0.iter().map(|c| Point::new(c.x, c.y)).collect();
                        Polygon::new(ring(p.exterior()), p.interiors().iter().map(ring).collect())
                    })
                    .collect(),
            );
            (mp.intersects(&fp), Some(back), mp.centroid().unwrap())
        }
        GeoShape::Line(l) => (l.intersects(&fp), None, l.centroid().unwrap()),
    };
    Reference {
        visible,
        clipped,
        centroid,
        shape,
    }
}

pub fn has_attribute(r: &Reference, attr: Attribute) -> bool {
    let Some(clipped) = &r.clipped else {
        return false;
    };
    let a = match clipped {
        Geometry::Polygons(ps) => ps.iter().map(|p| geo_poly(p).unsigned_area()).sum::<f64>(),
        Geometry::Lines(_) => 0.0,
    };
    match attr {
        Attribute::Size(s) => a > 0.0 && classify_size(a, &SizeProfile::LOW_RESOLUTION) == s,
        Attribute::Shape(s) => classify_shape(clipped, &ShapeConfig::default()) == Some(s),
    }
}

pub fn boundary_distance(a: &GeoShape, b: &GeoShape) -> f64 {
    match (a, b) {
        (GeoShape::Area(x), GeoShape::Area(y)) => geo::Euclidean.distance(x, y),
        (GeoShape::Area(x), GeoShape::Line(y)) | (GeoShape::Line(y), GeoShape::Area(x)) => {
            geo::Euclidean.distance(y, x)
        }
        (GeoShape::Line(x), GeoShape::Line(y)) => geo::Euclidean.distance(x, y),
    }
}

pub fn relation_holds(a: &Reference, c: &Reference, kind: Relation) -> bool {
    let (pa, pc) = (a.centroid, c.centroid);
    match kind {
        Relation::LeftOf => pa.x() < pc.x(),
        Relation::RightOf => pa.x() > pc.x(),
        Relation::TopOf => pa.y() > pc.y(),
        Relation::BottomOf => pa.y() < pc.y(),
        Relation::NextTo => boundary_distance(&a.shape, &c.shape) < 1000.0,
    }
}

pub fn oracle_select(objects: &[GeoObject], refs: &[Reference], spec: &ElementSpec) -> Vec<String> {
    let plain = |e: &ElementSpec, i: usize| {
        refs[i].visible
            && in_category(&objects[i], &e.category)
            && e.attribute.is_none_or(|a| has_attribute(&refs[i], a))
    };
    (0..objects.len())
        .filter(|&i| plain(spec, i))
        .filter(|&i| match &spec.relation {
            None => true,
            Some(rel) => (0..objects.len())
                .any(|c| c != i && plain(&rel.element, c) && relation_holds(&refs[i], &refs[c], rel.kind)),
        })
        .map(|i| objects[i].id.clone())
        .collect()
}

pub fn random_spec(rng: &mut ChaCha8Rng, allow_relation: bool) -> ElementSpec {
    let mut spec = ElementSpec::new(CATEGORIES[rng.random_range(0..CATEGORIES.len())]);
    if rng.random_bool(0.5) {
        spec.attribute = Some(if rng.random_bool(0.5) {
            Attribute::Shape(Shape::ALL[rng.random_range(0..3)])
        } else {
            Attribute::Size(SizeClass::ALL[rng.random_range(0..3)])
        });
    }
    if allow_relation && rng.random_bool(0.6) {
        let kind = Relation::ALL[rng.random_range(0..5)];
        spec = spec.with_relation(kind, random_spec(rng, false));
    }
    spec
}
