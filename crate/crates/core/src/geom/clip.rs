use super::{Geometry, Point, Polygon, Rect};

/// Liang–Barsky clip of segment `a→b` against a closed rectangle.
///
/// Returns the parameter interval `[t0, t1]` of the visible part, `None` when
/// the segment misses the rectangle. Touching counts as visible.
pub fn clip_segment(a: Point, b: Point, rect: &Rect) -> Option<(f64, f64)> {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    let mut t0 = 0.0_f64;
    let mut t1 = 1.0_f64;
    let checks = [
        (-dx, a.x - rect.min_x),
        (dx, rect.max_x - a.x),
        (-dy, a.y - rect.min_y),
        (dy, rect.max_y - a.y),
    ];
    for (p, q) in checks {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                if r > t1 {
                    return None;
                }
                t0 = t0.max(r);
            } else {
                if r < t0 {
                    return None;
                }
                t1 = t1.min(r);
            }
        }
    }
    Some((t0, t1))
}

fn lerp(a: Point, b: Point, t: f64) -> Point {
    Point::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
}

#[derive(Clone, Copy)]
enum Edge {
    Left(f64),
    Right(f64),
    Bottom(f64),
    Top(f64),
}

impl Edge {
    fn inside(self, p: Point) -> bool {
        match self {
            Edge::Left(x) => p.x >= x,
            Edge::Right(x) => p.x <= x,
            Edge::Bottom(y) => p.y >= y,
            Edge::Top(y) => p.y <= y,
        }
    }

    fn intersect(self, a: Point, b: Point) -> Point {
        match self {
            Edge::Left(x) | Edge::Right(x) => {
                let t = (x - a.x) / (b.x - a.x);
                Point::new(x, a.y + t * (b.y - a.y))
            }
            Edge::Bottom(y) | Edge::Top(y) => {
                let t = (y - a.y) / (b.y - a.y);
                Point::new(a.x + t * (b.x - a.x), y)
            }
        }
    }
}

/// Sutherland–Hodgman clip of a closed ring; returns a closed ring, or an
/// empty vector when nothing with positive extent survives.
fn clip_ring(ring: &[Point], rect: &Rect) -> Vec<Point> {
    let mut current: Vec<Point> = ring[..ring.len().saturating_sub(1)].to_vec();
    for edge in [
        Edge::Left(rect.min_x),
        Edge::Right(rect.max_x),
        Edge::Bottom(rect.min_y),
        Edge::Top(rect.max_y),
    ] {
        if current.is_empty() {
            break;
        }
        let input = std::mem::take(&mut current);
        let mut prev = *input.last().expect("non-empty");
        for &p in &input {
            match (edge.inside(p), edge.inside(prev)) {
                (true, true) => current.push(p),
                (true, false) => {
                    current.push(edge.intersect(prev, p));
                    current.push(p);
                }
                (false, true) => current.push(edge.intersect(prev, p)),
                (false, false) => {}
            }
            prev = p;
        }
    }
    current.dedup();
    while current.len() > 1 && current.first() == current.last() {
        current.pop();
    }
    if current.len() < 3 {
        return Vec::new();
    }
    current.push(current[0]);
    current
}

/// Intersection of a geometry with a rectangle.
///
/// Polygon rings are clipped with Sutherland–Hodgman (concave inputs may
/// keep zero-width bridges along the rectangle boundary, which do not change
/// the area). Polylines are split into the visible pieces.
pub fn clip_geometry(geometry: &Geometry, rect: &Rect) -> Geometry {
    match geometry {
        Geometry::Polygons(polys) => Geometry::Polygons(
            polys
                .iter()
                .map(|p| {
                    let exterior = clip_ring(&p.exterior, rect);
                    let holes = if exterior.is_empty() {
                        Vec::new()
                    } else {
                        p.holes
                            .iter()
                            .map(|h| clip_ring(h, rect))
                            .filter(|h| !h.is_empty())
                            .collect()
                    };
                    Polygon::new(exterior, holes)
                })
                .filter(|p| !p.is_empty())
                .collect(),
        ),
        Geometry::Lines(lines) => {
            let mut pieces: Vec<Vec<Point>> = Vec::new();
            for line in lines {
                let mut current: Vec<Point> = Vec::new();
                for w in line.windows(2) {
                    match clip_segment(w[0], w[1], rect) {
                        Some((t0, t1)) => {
                            let start = if t0 == 0.0 { w[0] } else { lerp(w[0], w[1], t0) };
                            let end = if t1 == 1.0 { w[1] } else { lerp(w[0], w[1], t1) };
                            if current.last() != Some(&start) {
                                if current.len() >= 2 {
                                    pieces.push(std::mem::take(&mut current));
                                }
                                current.clear();
                                current.push(start);
                            }
                            current.push(end);
                        }
                        None => {
                            if current.len() >= 2 {
                                pieces.push(std::mem::take(&mut current));
                            }
                            current.clear();
                        }
                    }
                }
                if current.len() >= 2 {
                    pieces.push(current);
                }
            }
            Geometry::Lines(pieces)
        }
    }
}
