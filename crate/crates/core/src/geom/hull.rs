use super::{Geometry, Point};

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Convex hull (Andrew's monotone chain), counter-clockwise, open ring.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() * 2);
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Area of the minimum-area oriented bounding box of a geometry's vertices.
///
/// One side of the optimal box is collinear with a hull edge, so every edge
/// direction is tried. Zero for degenerate input.
pub fn min_area_bounding_box_area(geometry: &Geometry) -> f64 {
    let pts: Vec<Point> = geometry.vertices().copied().collect();
    let Some(&origin) = pts.first() else {
        return 0.0;
    };
    let local: Vec<Point> = pts.iter().map(|p| Point::new(p.x - origin.x, p.y - origin.y)).collect();
    let hull = convex_hull(&local);
    if hull.len() < 3 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for i in 0..hull.len() {
        let a = hull[i];
        let b = hull[(i + 1) % hull.len()];
        let len = a.distance(b);
        if len == 0.0 {
            continue;
        }
        let (ux, uy) = ((b.x - a.x) / len, (b.y - a.y) / len);
        let (mut lo_u, mut hi_u, mut lo_v, mut hi_v) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for p in &hull {
            let u = p.x * ux + p.y * uy;
            let v = -p.x * uy + p.y * ux;
            lo_u = lo_u.min(u);
            hi_u = hi_u.max(u);
            lo_v = lo_v.min(v);
            hi_v = hi_v.max(v);
        }
        best = best.min((hi_u - lo_u) * (hi_v - lo_v));
    }
    if best.is_finite() {
        best
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Polygon;

    #[test]
    fn hull_of_square_with_interior_point() {
        let pts = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.5, 0.5),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert!(!h.contains(&Point::new(0.5, 0.5)));
    }

    #[test]
    fn rotated_rectangle_box_is_tight() {
        let (c, s) = (0.6_f64, 0.8_f64); // rotation by atan2(0.8, 0.6)
        let rect = [(0.0, 0.0), (4.0, 0.0), (4.0, 1.0), (0.0, 1.0)]
            .iter()
            .map(|&(x, y)| Point::new(c * x - s * y + 10.0, s * x + c * y - 3.0))
            .collect();
        let g = Geometry::polygon(Polygon::from_open(rect));
        assert!((min_area_bounding_box_area(&g) - 4.0).abs() < 1e-9);
    }

    #[test]
    fn collinear_has_zero_box() {
        let g = Geometry::line(vec![Point::new(0.0, 0.0), Point::new(1.0, 1.0), Point::new(2.0, 2.0)]);
        assert_eq!(min_area_bounding_box_area(&g), 0.0);
    }
}
