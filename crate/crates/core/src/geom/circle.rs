use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Geometry, Point};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    fn from_diameter(a: Point, b: Point) -> Self {
        let center = Point::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
        let radius = center.distance(a).max(center.distance(b));
        Circle { center, radius }
    }

    fn circumscribed(a: Point, b: Point, c: Point) -> Option<Self> {
        let (bx, by) = (b.x - a.x, b.y - a.y);
        let (cx, cy) = (c.x - a.x, c.y - a.y);
        let d = 2.0 * (bx * cy - by * cx);
        if d == 0.0 {
            return None;
        }
        let b2 = bx * bx + by * by;
        let c2 = cx * cx + cy * cy;
        let ux = (cy * b2 - by * c2) / d;
        let uy = (bx * c2 - cx * b2) / d;
        if !ux.is_finite() || !uy.is_finite() {
            return None;
        }
        let center = Point::new(a.x + ux, a.y + uy);
        let radius = center.distance(a).max(center.distance(b)).max(center.distance(c));
        Some(Circle { center, radius })
    }

    /// Containment with a small relative slack for rounding.
    pub fn contains(&self, p: Point) -> bool {
        self.center.distance(p) <= self.radius * (1.0 + 1e-12) + 1e-12
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.radius * self.radius
    }
}

/// Circle through three boundary points; the widest diameter circle when
/// they are collinear.
fn circle_of_three(a: Point, b: Point, c: Point) -> Circle {
    Circle::circumscribed(a, b, c).unwrap_or_else(|| {
        [
            Circle::from_diameter(a, b),
            Circle::from_diameter(a, c),
            Circle::from_diameter(b, c),
        ]
        .into_iter()
        .max_by(|x, y| x.radius.total_cmp(&y.radius))
        .expect("three candidates")
    })
}

/// Minimum enclosing circle of a point set (Welzl, iterative form).
///
/// Returns `None` for an empty set. Points are shuffled with a fixed seed so
/// results are reproducible.
pub fn min_enclosing_circle_of_points(points: &[Point]) -> Option<Circle> {
    let first = *points.first()?;
    // Work relative to the first point to keep the arithmetic well conditioned.
    let mut pts: Vec<Point> = points
        .iter()
        .map(|p| Point::new(p.x - first.x, p.y - first.y))
        .collect();
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(0x6d65_635f_7765_6c7a));

    let mut c = Circle {
        center: pts[0],
        radius: 0.0,
    };
    for i in 1..pts.len() {
        if c.contains(pts[i]) {
            continue;
        }
        c = Circle {
            center: pts[i],
            radius: 0.0,
        };
        for j in 0..i {
            if c.contains(pts[j]) {
                continue;
            }
            c = Circle::from_diameter(pts[i], pts[j]);
            for k in 0..j {
                if !c.contains(pts[k]) {
                    c = circle_of_three(pts[i], pts[j], pts[k]);
                }
            }
        }
    }
    Some(Circle {
        center: Point::new(c.center.x + first.x, c.center.y + first.y),
        radius: c.radius,
    })
}

/// Minimum enclosing circle over every vertex of a geometry.
pub fn min_enclosing_circle(geometry: &Geometry) -> Option<Circle> {
    let pts: Vec<Point> = geometry.vertices().copied().collect();
    min_enclosing_circle_of_points(&pts)
}
