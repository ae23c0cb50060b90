use super::clip::clip_segment;
use super::{Geometry, Point, Polygon, Rect};

/// Even-odd containment of a point in a polygon's area (holes excluded).
/// Points exactly on the boundary may go either way; callers that need
/// closed semantics test the boundary separately.
pub fn point_in_polygon(p: Point, polygon: &Polygon) -> bool {
    polygon
        .rings()
        .fold(false, |inside, ring| inside ^ crosses_odd(p, ring))
}

fn crosses_odd(p: Point, ring: &[Point]) -> bool {
    let mut inside = false;
    for w in ring.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

fn in_area(p: Point, geometry: &Geometry) -> bool {
    match geometry {
        Geometry::Polygons(polys) => polys.iter().any(|poly| point_in_polygon(p, poly)),
        Geometry::Lines(_) => false,
    }
}

/// Closed intersection test between a geometry and a rectangle: boundary
/// contact counts.
pub fn intersects_rect(geometry: &Geometry, rect: &Rect) -> bool {
    match geometry.bbox() {
        Some(bb) if bb.intersects(rect) => {}
        _ => return false,
    }
    if geometry
        .segments()
        .iter()
        .any(|&(a, b)| clip_segment(a, b, rect).is_some())
    {
        return true;
    }
    if geometry.vertices().any(|p| rect.contains_point(*p)) {
        return true;
    }
    // No boundary crosses the rectangle, so it lies wholly inside or outside.
    in_area(rect.center(), geometry)
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed segment intersection (touching and collinear overlap included).
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    p.distance(Point::new(a.x + t * dx, a.y + t * dy))
}

fn segment_distance(a: Point, b: Point, c: Point, d: Point) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    point_segment_distance(a, c, d)
        .min(point_segment_distance(b, c, d))
        .min(point_segment_distance(c, a, b))
        .min(point_segment_distance(d, a, b))
}

/// Minimum Euclidean distance between two geometries, 0 when they
/// intersect (including when one polygon contains the other).
pub fn distance(a: &Geometry, b: &Geometry) -> f64 {
    let seg_a = a.segments();
    let seg_b = b.segments();
    let mut best = f64::INFINITY;
    for &(p, q) in &seg_a {
        for &(r, s) in &seg_b {
            best = best.min(segment_distance(p, q, r, s));
            if best == 0.0 {
                return 0.0;
            }
        }
    }
    if b.vertices().next().is_some_and(|p| in_area(*p, a)) || a.vertices().next().is_some_and(|p| in_area(*p, b)) {
        return 0.0;
    }
    best
}
