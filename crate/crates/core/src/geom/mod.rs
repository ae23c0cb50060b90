//! Planar geometry in metric coordinates.
//!
//! Every measurement behind element attributes and relative positions lives
//! here: shoelace area, perimeter, centroids, the minimum enclosing circle,
//! rectangle clipping, rectangle intersection and boundary distances.
//! Coordinates are meters with `y` growing northward.

mod circle;
mod classify;
mod clip;
mod hull;
mod measure;
mod predicates;
mod relation;

use serde::{Deserialize, Serialize};

pub use circle::{min_enclosing_circle, Circle};
pub use classify::{classify_shape, classify_size, Shape, ShapeConfig, ShapeRatios, SizeClass, SizeProfile};
pub use clip::{clip_geometry, clip_segment};
pub use hull::{convex_hull, min_area_bounding_box_area};
pub use measure::{area, centroid, perimeter, ring_signed_area, Centroid};
pub use predicates::{distance, intersects_rect, point_in_polygon, segments_intersect};
pub use relation::{relations_from_parts, relative_position, Relation, RelationSet, NEXT_TO_DISTANCE_M};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn distance_squared(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Axis-aligned rectangle. Boundaries are closed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Rect {
    pub const fn new(min_x: f64, min_y: f64, max_x: f64, max_y: f64) -> Self {
        Self {
            min_x,
            min_y,
            max_x,
            max_y,
        }
    }

    /// Bounding rectangle of a point set, `None` when empty.
    pub fn from_points<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Self> {
        let mut iter = points.into_iter();
        let first = iter.next()?;
        let mut rect = Rect::new(first.x, first.y, first.x, first.y);
        for p in iter {
            rect.expand_point(*p);
        }
        Some(rect)
    }

    pub fn expand_point(&mut self, p: Point) {
        self.min_x = self.min_x.min(p.x);
        self.min_y = self.min_y.min(p.y);
        self.max_x = self.max_x.max(p.x);
        self.max_y = self.max_y.max(p.y);
    }

    pub fn union(&self, other: &Rect) -> Rect {
        Rect::new(
            self.min_x.min(other.min_x),
            self.min_y.min(other.min_y),
            self.max_x.max(other.max_x),
            self.max_y.max(other.max_y),
        )
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn center(&self) -> Point {
        Point::new(0.5 * (self.min_x + self.max_x), 0.5 * (self.min_y + self.max_y))
    }

    /// True when the rectangle has positive, finite extent on both axes.
    pub fn is_valid(&self) -> bool {
        [self.min_x, self.min_y, self.max_x, self.max_y]
            .iter()
            .all(|v| v.is_finite())
            && self.max_x > self.min_x
            && self.max_y > self.min_y
    }

    pub fn contains_point(&self, p: Point) -> bool {
        p.x >= self.min_x && p.x <= self.max_x && p.y >= self.min_y && p.y <= self.max_y
    }

    /// Closed-interval overlap test, so touching rectangles intersect.
    pub fn intersects(&self, other: &Rect) -> bool {
        self.min_x <= other.max_x && other.min_x <= self.max_x && self.min_y <= other.max_y && other.min_y <= self.max_y
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.min_x <= other.min_x && self.min_y <= other.min_y && self.max_x >= other.max_x && self.max_y >= other.max_y
    }

    /// Euclidean gap between two rectangles, zero when they touch or overlap.
    pub fn gap(&self, other: &Rect) -> f64 {
        let dx = (other.min_x - self.max_x).max(self.min_x - other.max_x).max(0.0);
        let dy = (other.min_y - self.max_y).max(self.min_y - other.max_y).max(0.0);
        dx.hypot(dy)
    }

    /// Corners in counter-clockwise order starting at the south-west.
    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.min_x, self.min_y),
            Point::new(self.max_x, self.min_y),
            Point::new(self.max_x, self.max_y),
            Point::new(self.min_x, self.max_y),
        ]
    }
}

/// A polygon with one exterior ring and optional holes.
///
/// Rings are stored closed (first vertex repeated at the end). Clipping may
/// leave a polygon whose rings are empty; such a polygon has zero area.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    pub exterior: Vec<Point>,
    pub holes: Vec<Vec<Point>>,
}

impl Polygon {
    pub fn new(exterior: Vec<Point>, holes: Vec<Vec<Point>>) -> Self {
        Self { exterior, holes }
    }

    /// Builds a polygon from an open vertex list, closing the ring.
    pub fn from_open(mut vertices: Vec<Point>) -> Self {
        if let Some(&first) = vertices.first() {
            vertices.push(first);
        }
        Self::new(vertices, Vec::new())
    }

    pub fn rings(&self) -> impl Iterator<Item = &Vec<Point>> {
        std::iter::once(&self.exterior).chain(self.holes.iter())
    }

    pub fn is_empty(&self) -> bool {
        self.exterior.len() < 4
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    /// Polygon or multipolygon.
    Polygons(Vec<Polygon>),
    /// Polyline or multi-polyline (roads).
    Lines(Vec<Vec<Point>>),
}

impl Geometry {
    pub fn polygon(p: Polygon) -> Self {
        Geometry::Polygons(vec![p])
    }

    pub fn line(points: Vec<Point>) -> Self {
        Geometry::Lines(vec![points])
    }

    pub fn is_areal(&self) -> bool {
        matches!(self, Geometry::Polygons(_))
    }

    /// Every vertex, ring closures included.
    pub fn vertices(&self) -> Box<dyn Iterator<Item = &Point> + '_> {
        match self {
            Geometry::Polygons(polys) => Box::new(polys.iter().flat_map(|p| p.rings()).flat_map(|r| r.iter())),
            Geometry::Lines(lines) => Box::new(lines.iter().flat_map(|l| l.iter())),
        }
    }

    /// Every boundary segment.
    pub fn segments(&self) -> Vec<(Point, Point)> {
        let mut out = Vec::new();
        let mut push_path = |path: &[Point]| {
            out.extend(path.windows(2).map(|w| (w[0], w[1])));
        };
        match self {
            Geometry::Polygons(polys) => polys.iter().flat_map(|p| p.rings()).for_each(|r| push_path(r)),
            Geometry::Lines(lines) => lines.iter().for_each(|l| push_path(l)),
        }
        out
    }

    pub fn bbox(&self) -> Option<Rect> {
        Rect::from_points(self.vertices())
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Geometry::Polygons(polys) => polys.iter().all(Polygon::is_empty),
            Geometry::Lines(lines) => lines.iter().all(|l| l.len() < 2),
        }
    }
}
