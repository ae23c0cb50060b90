//! Tiling, spatial splits, per-tile generation and dataset files.

mod assemble;
mod report;
mod split;
mod tiles;
mod triplet;

pub use assemble::{
    assemble, assemble_tile, audit_answers, build, plan_sources, plan_tiles, split_conflicts, write_json, Build,
    Manifest, TilePlan,
};
pub use report::{stats, DistributionReport};
pub use split::{assign_splits, check_fractions, split_counts, Split};
pub use tiles::{source_of, tile_grid, tile_id, TileFootprint};
pub use triplet::{question_id, read_dataset, read_jsonl, write_dataset, write_jsonl, QATriplet, TripletSpec};
