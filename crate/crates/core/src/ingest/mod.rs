//! Vector geodata ingestion and footprint queries.

mod geojson;
mod index;
mod object;

pub use geojson::{load_collection, parse_collection, to_geojson, write_collection, CrsPolicy};
pub use index::PackedRTree;
pub use object::{GeoObject, Layer};

use crate::error::{Error, Result};
use crate::geom::{clip_geometry, intersects_rect, Rect};

/// Validated, immutable set of objects with a spatial index over their
/// bounding boxes.
#[derive(Debug, Clone)]
pub struct ObjectCollection {
    objects: Vec<GeoObject>,
    bounds: Option<Rect>,
    index: PackedRTree,
}

impl ObjectCollection {
    pub fn new(objects: Vec<GeoObject>) -> Result<Self> {
        geojson::validate_objects(&objects)?;
        let boxes: Vec<Rect> = objects
            .iter()
            .map(|o| o.geometry.bbox().expect("validated geometry has vertices"))
            .collect();
        let bounds = boxes
            .iter()
            .skip(1)
            .fold(boxes.first().copied(), |acc, b| acc.map(|a| a.union(b)));
        let index = PackedRTree::bulk_load(&boxes);
        Ok(Self { objects, bounds, index })
    }

    pub fn objects(&self) -> &[GeoObject] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// Bounding rectangle of every vertex, `None` for an empty collection.
    pub fn bounds(&self) -> Option<Rect> {
        self.bounds
    }

    /// Positions (in collection order) of objects intersecting `footprint`,
    /// boundary contact included.
    pub fn query_indices(&self, footprint: &Rect) -> Vec<usize> {
        let mut hits: Vec<usize> = self
            .index
            .search(footprint)
            .into_iter()
            .filter(|&i| intersects_rect(&self.objects[i].geometry, footprint))
            .collect();
        hits.sort_unstable();
        hits
    }

    /// Objects whose geometry intersects the footprint, in collection order.
    pub fn query_footprint(&self, footprint: &Rect) -> Vec<&GeoObject> {
        self.query_indices(footprint)
            .into_iter()
            .map(|i| &self.objects[i])
            .collect()
    }

    /// Reference implementation of [`Self::query_footprint`] without the
    /// index: the exact geometry test on every object.
    pub fn query_footprint_linear(&self, footprint: &Rect) -> Vec<&GeoObject> {
        self.objects
            .iter()
            .filter(|o| intersects_rect(&o.geometry, footprint))
            .collect()
    }
}

/// Restricts an object's geometry to the footprint, keeping its identity.
///
/// Polygons that only touch the footprint come back with empty geometry
/// (zero area).
pub fn clip_to_footprint(object: &GeoObject, footprint: &Rect) -> Result<GeoObject> {
    if !intersects_rect(&object.geometry, footprint) {
        return Err(Error::Precondition(format!(
            "object {} does not intersect the footprint",
            object.id
        )));
    }
    let geometry = match object.geometry.bbox() {
        Some(bb) if footprint.contains_rect(&bb) => object.geometry.clone(),
        _ => clip_geometry(&object.geometry, footprint),
    };
    Ok(GeoObject {
        geometry,
        ..object.clone()
    })
}
