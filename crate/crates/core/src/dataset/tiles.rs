use serde::{Deserialize, Serialize};

use super::Split;
use crate::geom::Rect;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TileFootprint {
    pub id: String,
    pub source_id: String,
    pub row: u32,
    pub col: u32,
    pub rect: Rect,
    pub pixel_size: u32,
    /// m/px
    pub resolution: f64,
    pub split: Option<Split>,
}

impl TileFootprint {
    /// Ground area in square micrometres, computed in integers from the
    /// pixel count and the resolution rounded to whole micrometres.
    pub fn area_um2(&self) -> u128 {
        let side = self.pixel_size as u128 * (self.resolution * 1e6).round() as u128;
        side * side
    }

    pub fn area_m2(&self) -> f64 {
        self.area_um2() as f64 / 1e12
    }
}

pub fn tile_id(source_id: &str, row: u32, col: u32) -> String {
    format!("{source_id}_r{row}_c{col}")
}

/// Source id of a tile id built by [`tile_id`].
pub fn source_of(tile_id: &str) -> &str {
    tile_id
        .rsplit_once("_r")
        .filter(|(_, rc)| rc.split_once("_c").is_some())
        .map_or(tile_id, |(s, _)| s)
}

/// Cuts a source extent into square tiles of `tile_pixels * resolution`
/// metres, row-major from the top-left corner. Partial tiles at the right
/// and bottom edges are dropped.
pub fn tile_grid(source_id: &str, bounds: &Rect, tile_pixels: u32, resolution: f64) -> Vec<TileFootprint> {
    let side = tile_pixels as f64 * resolution;
    // Tolerate rounding in extents that are exact multiples of the side.
    let fit = |extent: f64| ((extent + side * 1e-9) / side).floor().max(0.0) as u32;
    let (cols, rows) = (fit(bounds.width()), fit(bounds.height()));
    if cols == 0 || rows == 0 {
        log::warn!(
            "source {source_id} ({:.1} m x {:.1} m) is smaller than one {side} m tile",
            bounds.width(),
            bounds.height()
        );
        return Vec::new();
    }
    let mut tiles = Vec::with_capacity((rows * cols) as usize);
    for row in 0..rows {
        let max_y = bounds.max_y - row as f64 * side;
        for col in 0..cols {
            let min_x = bounds.min_x + col as f64 * side;
            tiles.push(TileFootprint {
                id: tile_id(source_id, row, col),
                source_id: source_id.to_string(),
                row,
                col,
                rect: Rect::new(min_x, max_y - side, min_x + side, max_y),
                pixel_size: tile_pixels,
                resolution,
                split: None,
            });
        }
    }
    tiles
}
