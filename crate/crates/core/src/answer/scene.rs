use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::geom::{
    area, centroid, classify_shape, classify_size, clip_geometry, distance, Geometry, Point, Rect, Relation, Shape,
    ShapeConfig, SizeClass, SizeProfile, NEXT_TO_DISTANCE_M,
};
use crate::ingest::GeoObject;
use crate::question::{Attribute, ElementCatalog, ElementSpec, GenerationProfile};

/// Thresholds used to evaluate attributes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryConfig {
    pub size_profile: SizeProfile,
    pub shape_config: ShapeConfig,
}

impl GeometryConfig {
    pub fn from_profile(profile: &GenerationProfile) -> Self {
        Self {
            size_profile: profile.size_profile,
            shape_config: profile.shape_config,
        }
    }
}

/// An object of a tile with lazily computed, cached measurements.
///
/// Attributes are evaluated on the geometry clipped to the footprint,
/// relations on the full geometry.
#[derive(Debug)]
pub struct SceneObject<'a> {
    pub object: &'a GeoObject,
    pub bbox: Rect,
    clipped: OnceLock<Option<Geometry>>,
    clipped_area: OnceLock<f64>,
    shape: OnceLock<Option<Shape>>,
    centroid: OnceLock<Point>,
}

#[derive(Debug)]
pub struct TileScene<'a> {
    footprint: Rect,
    config: GeometryConfig,
    objects: Vec<SceneObject<'a>>,
}

impl<'a> TileScene<'a> {
    /// `objects` should be the footprint query result.
    pub fn new(footprint: Rect, objects: impl IntoIterator<Item = &'a GeoObject>, config: GeometryConfig) -> Self {
        let objects = objects
            .into_iter()
            .map(|object| SceneObject {
                object,
                bbox: object.geometry.bbox().unwrap_or(Rect::new(0.0, 0.0, 0.0, 0.0)),
                clipped: OnceLock::new(),
                clipped_area: OnceLock::new(),
                shape: OnceLock::new(),
                centroid: OnceLock::new(),
            })
            .collect();
        Self {
            footprint,
            config,
            objects,
        }
    }

    pub fn footprint(&self) -> &Rect {
        &self.footprint
    }

    pub fn config(&self) -> &GeometryConfig {
        &self.config
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> impl Iterator<Item = &'a GeoObject> + '_ {
        self.objects.iter().map(|o| o.object)
    }

    pub fn object(&self, i: usize) -> &'a GeoObject {
        self.objects[i].object
    }

    /// `None` when the object lies inside the footprint (no clipping).
    fn clipped(&self, i: usize) -> Option<&Geometry> {
        let o = &self.objects[i];
        o.clipped
            .get_or_init(|| {
                (!self.footprint.contains_rect(&o.bbox)).then(|| clip_geometry(&o.object.geometry, &self.footprint))
            })
            .as_ref()
    }

    fn visible_geometry(&self, i: usize) -> &Geometry {
        self.clipped(i).unwrap_or(&self.objects[i].object.geometry)
    }

    /// Area inside the footprint, m².
    pub fn clipped_area(&self, i: usize) -> f64 {
        *self.objects[i]
            .clipped_area
            .get_or_init(|| area(self.visible_geometry(i)))
    }

    pub fn shape(&self, i: usize) -> Option<Shape> {
        *self.objects[i]
            .shape
            .get_or_init(|| classify_shape(self.visible_geometry(i), &self.config.shape_config))
    }

    /// `None` for objects without visible area (roads, slivers).
    pub fn size(&self, i: usize) -> Option<SizeClass> {
        let a = self.clipped_area(i);
        (self.objects[i].object.geometry.is_areal() && a > 0.0).then(|| classify_size(a, &self.config.size_profile))
    }

    pub fn centroid(&self, i: usize) -> Point {
        *self.objects[i]
            .centroid
            .get_or_init(|| centroid(&self.objects[i].object.geometry).point)
    }

    pub fn has_attribute(&self, i: usize, attribute: Attribute) -> bool {
        match attribute {
            Attribute::Shape(s) => self.shape(i) == Some(s),
            Attribute::Size(s) => self.size(i) == Some(s),
        }
    }

    /// Whether `relation(a, c)` holds. Directional relations compare
    /// centroids; "next to" compares boundary distance.
    pub fn relation_holds(&self, a: usize, c: usize, relation: Relation) -> bool {
        if a == c {
            return false;
        }
        let (ca, cc) = (self.centroid(a), self.centroid(c));
        match relation {
            Relation::LeftOf => ca.x < cc.x,
            Relation::RightOf => ca.x > cc.x,
            Relation::TopOf => ca.y > cc.y,
            Relation::BottomOf => ca.y < cc.y,
            Relation::NextTo => {
                let (oa, oc) = (&self.objects[a], &self.objects[c]);
                oa.bbox.gap(&oc.bbox) < NEXT_TO_DISTANCE_M
                    && distance(&oa.object.geometry, &oc.object.geometry) < NEXT_TO_DISTANCE_M
            }
        }
    }

    fn select_plain(&self, spec: &ElementSpec, catalog: &ElementCatalog) -> Result<Vec<usize>> {
        let entry = catalog
            .get(&spec.category)
            .ok_or_else(|| Error::Config(format!("unknown element category {}", spec.category)))?;
        Ok((0..self.objects.len())
            .filter(|&i| entry.matches(self.objects[i].object))
            .filter(|&i| spec.attribute.is_none_or(|a| self.has_attribute(i, a)))
            .collect())
    }

    /// Positions of the objects matching `spec`: category, then attribute,
    /// then (existentially) the relation clause.
    pub fn select(&self, spec: &ElementSpec, catalog: &ElementCatalog) -> Result<Vec<usize>> {
        let base = self.select_plain(spec, catalog)?;
        let Some(rel) = &spec.relation else {
            return Ok(base);
        };
        let others = self.select(&rel.element, catalog)?;
        Ok(base
            .into_iter()
            .filter(|&a| others.iter().any(|&c| self.relation_holds(a, c, rel.kind)))
            .collect())
    }
}

/// Objects of the scene matching `spec`, in scene order.
pub fn select_objects<'a>(
    scene: &TileScene<'a>,
    spec: &ElementSpec,
    catalog: &ElementCatalog,
) -> Result<Vec<&'a GeoObject>> {
    Ok(scene
        .select(spec, catalog)?
        .into_iter()
        .map(|i| scene.object(i))
        .collect())
}
