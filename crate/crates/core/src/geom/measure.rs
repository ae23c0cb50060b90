use super::{Geometry, Point};

/// Signed shoelace area of a closed ring; positive when counter-clockwise.
pub fn ring_signed_area(ring: &[Point]) -> f64 {
    if ring.len() < 4 {
        return 0.0;
    }
    // Translate to the first vertex to limit cancellation on large coordinates.
    let o = ring[0];
    let mut twice = 0.0;
    for w in ring.windows(2) {
        let (ax, ay) = (w[0].x - o.x, w[0].y - o.y);
        let (bx, by) = (w[1].x - o.x, w[1].y - o.y);
        twice += ax * by - bx * ay;
    }
    0.5 * twice
}

/// Area in m². Holes subtract; polylines have no area.
pub fn area(geometry: &Geometry) -> f64 {
    match geometry {
        Geometry::Lines(_) => 0.0,
        Geometry::Polygons(polys) => polys
            .iter()
            .map(|p| {
                let outer = ring_signed_area(&p.exterior).abs();
                let holes: f64 = p.holes.iter().map(|h| ring_signed_area(h).abs()).sum();
                (outer - holes).max(0.0)
            })
            .sum(),
    }
}

fn path_length(path: &[Point]) -> f64 {
    path.windows(2).map(|w| w[0].distance(w[1])).sum()
}

/// Total boundary length in m (hole boundaries included for polygons).
pub fn perimeter(geometry: &Geometry) -> f64 {
    match geometry {
        Geometry::Polygons(polys) => polys.iter().flat_map(|p| p.rings()).map(|r| path_length(r)).sum(),
        Geometry::Lines(lines) => lines.iter().map(|l| path_length(l)).sum(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Centroid {
    pub point: Point,
    /// Set when the geometry had no area (or length) and the vertex mean was used.
    pub degenerate: bool,
}

/// Area-weighted centroid for polygons, length-weighted for polylines.
pub fn centroid(geometry: &Geometry) -> Centroid {
    let origin = match geometry.vertices().next() {
        Some(p) => *p,
        None => {
            return Centroid {
                point: Point::new(f64::NAN, f64::NAN),
                degenerate: true,
            }
        }
    };

    let (weight, mx, my) = match geometry {
        Geometry::Polygons(polys) => {
            let mut weight = 0.0;
            let (mut mx, mut my) = (0.0, 0.0);
            for poly in polys {
                for (k, ring) in poly.rings().enumerate() {
                    let (a, cx, cy) = ring_moments(ring, origin);
                    // Exterior counts positive and holes negative whatever the winding.
                    let sign = if k == 0 { a.signum() } else { -a.signum() };
                    weight += sign * a;
                    mx += sign * cx;
                    my += sign * cy;
                }
            }
            (weight, mx, my)
        }
        Geometry::Lines(lines) => {
            let mut weight = 0.0;
            let (mut mx, mut my) = (0.0, 0.0);
            for w in lines.iter().flat_map(|l| l.windows(2)) {
                let len = w[0].distance(w[1]);
                weight += len;
                mx += len * (0.5 * (w[0].x + w[1].x) - origin.x);
                my += len * (0.5 * (w[0].y + w[1].y) - origin.y);
            }
            (weight, mx, my)
        }
    };

    if weight > 0.0 && weight.is_finite() {
        Centroid {
            point: Point::new(origin.x + mx / weight, origin.y + my / weight),
            degenerate: false,
        }
    } else {
        Centroid {
            point: vertex_mean(geometry),
            degenerate: true,
        }
    }
}

/// Returns (signed area, area * cx, area * cy) relative to `origin`.
fn ring_moments(ring: &[Point], origin: Point) -> (f64, f64, f64) {
    let (mut a2, mut cx6, mut cy6) = (0.0, 0.0, 0.0);
    for w in ring.windows(2) {
        let (x0, y0) = (w[0].x - origin.x, w[0].y - origin.y);
        let (x1, y1) = (w[1].x - origin.x, w[1].y - origin.y);
        let cross = x0 * y1 - x1 * y0;
        a2 += cross;
        cx6 += (x0 + x1) * cross;
        cy6 += (y0 + y1) * cross;
    }
    // area * centroid = (1/6) Σ (xi + xi+1) cross
    (0.5 * a2, cx6 / 6.0, cy6 / 6.0)
}

fn vertex_mean(geometry: &Geometry) -> Point {
    let mut n = 0usize;
    let (mut sx, mut sy) = (0.0, 0.0);
    for p in geometry.vertices() {
        n += 1;
        sx += p.x;
        sy += p.y;
    }
    Point::new(sx / n as f64, sy / n as f64)
}
