//! Seeded synthetic object collections for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{Geometry, Point, Polygon, Rect};
use crate::ingest::{GeoObject, Layer};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub bounds: Rect,
    pub objects: usize,
    pub seed: u64,
    /// Typical building side in metres; other features scale with it.
    pub unit: f64,
    /// Share of buildings placed around dense centres.
    pub clustering: f64,
}

impl SynthConfig {
    pub fn new(bounds: Rect, objects: usize, seed: u64, unit: f64) -> Self {
        Self {
            bounds,
            objects,
            seed,
            unit,
            clustering: 0.6,
        }
    }
}

const COMMERCIAL: [&str; 3] = ["commercial", "retail", "office"];
const RESIDENTIAL: [&str; 3] = ["residential", "house", "apartments"];
const LAND_USE: [&str; 9] = [
    "residential",
    "commercial",
    "industrial",
    "construction",
    "religious",
    "farmland",
    "forest",
    "grass",
    "meadow",
];

fn rotated_rect(c: Point, w: f64, h: f64, angle: f64) -> Polygon {
    let (s, co) = angle.sin_cos();
    let corners = [(-w, -h), (w, -h), (w, h), (-w, h)];
    Polygon::from_open(
        corners
            .iter()
            .map(|(dx, dy)| Point::new(c.x + (dx * co - dy * s) / 2.0, c.y + (dx * s + dy * co) / 2.0))
            .collect(),
    )
}

fn regular_polygon(c: Point, r: f64, n: usize) -> Polygon {
    Polygon::from_open(
        (0..n)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / n as f64;
                Point::new(c.x + r * a.cos(), c.y + r * a.sin())
            })
            .collect(),
    )
}

/// Star-shaped irregular polygon around `c`.
fn blob(rng: &mut ChaCha8Rng, c: Point, r: f64) -> Polygon {
    let n = rng.random_range(5..12);
    Polygon::from_open(
        (0..n)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / n as f64;
                let rr = r * rng.random_range(0.5..1.0);
                Point::new(c.x + rr * a.cos(), c.y + rr * a.sin())
            })
            .collect(),
    )
}

fn clamp(p: Point, b: &Rect) -> Point {
    Point::new(p.x.clamp(b.min_x, b.max_x), p.y.clamp(b.min_y, b.max_y))
}

/// A reproducible collection with buildings (partly clustered), roads,
/// water areas and land-use parcels.
pub fn synthetic_city(cfg: &SynthConfig) -> Vec<GeoObject> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let b = cfg.bounds;
    let u = cfg.unit;
    let uniform =
        |rng: &mut ChaCha8Rng| Point::new(rng.random_range(b.min_x..=b.max_x), rng.random_range(b.min_y..=b.max_y));
    let centres: Vec<Point> = (0..(cfg.objects / 400).max(1)).map(|_| uniform(&mut rng)).collect();
    let spread = (b.width().min(b.height()) * 0.05).max(u * 4.0);

    let mut out = Vec::with_capacity(cfg.objects);
    for i in 0..cfg.objects {
        let id = format!("syn{i}");
        let roll: f64 = rng.random();
        let object = if roll < 0.55 {
            let c = if rng.random::<f64>() < cfg.clustering {
                let k = centres[rng.random_range(0..centres.len())];
                let off =
                    |rng: &mut ChaCha8Rng| (0..3).map(|_| rng.random_range(-1.0..1.0)).sum::<f64>() * spread / 3.0;
                clamp(Point::new(k.x + off(&mut rng), k.y + off(&mut rng)), &b)
            } else {
                uniform(&mut rng)
            };
            let w = u * rng.random_range(0.3..5.0);
            let h = if rng.random_bool(0.4) {
                w
            } else {
                w * rng.random_range(0.25..1.0)
            };
            let angle = if rng.random_bool(0.5) {
                0.0
            } else {
                rng.random_range(0.0..std::f64::consts::PI)
            };
            let subtype = if rng.random_bool(0.5) {
                COMMERCIAL[rng.random_range(0..COMMERCIAL.len())]
            } else {
                RESIDENTIAL[rng.random_range(0..RESIDENTIAL.len())]
            };
            GeoObject::new(
                id,
                Layer::Building,
                subtype,
                Geometry::polygon(rotated_rect(c, w, h, angle)),
            )
        } else if roll < 0.67 {
            let mut p = uniform(&mut rng);
            let mut pts = vec![p];
            for _ in 0..rng.random_range(1..5) {
                let a = rng.random_range(0.0..std::f64::consts::TAU);
                let len = u * rng.random_range(3.0..20.0);
                p = clamp(Point::new(p.x + len * a.cos(), p.y + len * a.sin()), &b);
                pts.push(p);
            }
            if pts.windows(2).all(|w| w[0] == w[1]) {
                pts.push(Point::new(p.x + u, p.y));
            }
            GeoObject::new(id, Layer::Road, "residential", Geometry::line(pts))
        } else if roll < 0.72 {
            let c = uniform(&mut rng);
            let r = u * rng.random_range(1.0..6.0);
            let shape = if rng.random_bool(0.6) {
                regular_polygon(c, r, 32)
            } else {
                blob(&mut rng, c, r)
            };
            GeoObject::new(id, Layer::WaterArea, "water", Geometry::polygon(shape))
        } else {
            let c = uniform(&mut rng);
            let subtype = LAND_USE[rng.random_range(0..LAND_USE.len())];
            let shape = if rng.random_bool(0.5) {
                let w = u * rng.random_range(2.0..15.0);
                rotated_rect(c, w, w * rng.random_range(0.3..1.0), 0.0)
            } else {
                let r = u * rng.random_range(2.0..10.0);
                blob(&mut rng, c, r)
            };
            GeoObject::new(id, Layer::LandUse, subtype, Geometry::polygon(shape))
        };
        out.push(object);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::ObjectCollection;

    #[test]
    fn reproducible_and_valid() {
        let cfg = SynthConfig::new(Rect::new(0.0, 0.0, 5000.0, 5000.0), 500, 3, 40.0);
        let a = synthetic_city(&cfg);
        assert_eq!(a, synthetic_city(&cfg));
        assert_eq!(a.len(), 500);
        ObjectCollection::new(a).unwrap();
    }
}
