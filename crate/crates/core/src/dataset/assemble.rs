use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    assign_splits, question_id, source_of, stats, tile_grid, write_dataset, DistributionReport, QATriplet, Split,
    TileFootprint, TripletSpec,
};
use crate::answer::{answer_question, Answer, GeometryConfig, TileScene};
use crate::error::{Error, Result};
use crate::geom::Rect;
use crate::ingest::ObjectCollection;
use crate::question::{
    build_slot, ElementCatalog, GenerationProfile, QuestionType, Scale, SourceExtent, TemplateTable,
};

/// Source extents of a build: the profile's explicit list, or the
/// collection bounds cut into `source_grid` equal cells.
pub fn plan_sources(collection: &ObjectCollection, profile: &GenerationProfile) -> Vec<SourceExtent> {
    if !profile.sources.is_empty() {
        return profile.sources.clone();
    }
    let Some(b) = collection.bounds() else {
        log::warn!("empty collection and no explicit sources: no tiles");
        return Vec::new();
    };
    let [cols, rows] = profile.source_grid;
    let (w, h) = (b.width() / cols as f64, b.height() / rows as f64);
    let mut out = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let max_y = b.max_y - r as f64 * h;
            let min_x = b.min_x + c as f64 * w;
            out.push(SourceExtent {
                id: format!("src{r:02}{c:02}"),
                bounds: Rect::new(min_x, max_y - h, min_x + w, max_y),
            });
        }
    }
    out
}

/// Sources, their split assignment and the tiles cut from them.
pub type TilePlan = (Vec<SourceExtent>, BTreeMap<String, Split>, Vec<TileFootprint>);

/// Tiles every source and assigns whole sources to splits. Tiles come
/// back sorted by (source id, row, col).
pub fn plan_tiles(collection: &ObjectCollection, profile: &GenerationProfile) -> Result<TilePlan> {
    let sources = plan_sources(collection, profile);
    let ids: Vec<String> = sources.iter().map(|s| s.id.clone()).collect();
    let splits = assign_splits(&ids, &profile.split_fractions, profile.split_seed)?;
    let mut tiles: Vec<TileFootprint> = sources
        .iter()
        .flat_map(|s| {
            let split = splits[&s.id];
            tile_grid(&s.id, &s.bounds, profile.tile_pixels, profile.resolution)
                .into_iter()
                .map(move |t| TileFootprint {
                    split: Some(split),
                    ..t
                })
        })
        .collect();
    tiles.sort_by(|a, b| (&a.source_id, a.row, a.col).cmp(&(&b.source_id, b.row, b.col)));
    Ok((sources, splits, tiles))
}

fn too_large(profile: &GenerationProfile, qtype: QuestionType, answer: &Answer) -> bool {
    profile.scale == Scale::High
        && qtype == QuestionType::Count
        && answer.measure.is_some_and(|m| m > profile.max_count as u64)
}

/// Questions and answers of one tile, in slot order.
pub fn assemble_tile(
    collection: &ObjectCollection,
    tile: &TileFootprint,
    profile: &GenerationProfile,
    catalog: &ElementCatalog,
    templates: &TemplateTable,
) -> Result<Vec<QATriplet>> {
    let split = tile
        .split
        .ok_or_else(|| Error::Precondition(format!("tile {} has no split", tile.id)))?;
    let scene = TileScene::new(
        tile.rect,
        collection.query_footprint(&tile.rect),
        GeometryConfig::from_profile(profile),
    );
    let mut out = Vec::with_capacity(profile.questions_per_image);
    for slot in 0..profile.questions_per_image {
        let mut failure = None;
        let mut answer = None;
        let spec = build_slot(
            &tile.id,
            slot,
            profile,
            catalog,
            templates,
            &mut |spec| match answer_question(&scene, spec, catalog, profile) {
                Ok(a) if too_large(profile, spec.qtype, &a) => false,
                Ok(a) => {
                    answer = Some(a);
                    true
                }
                Err(e) => {
                    failure = Some(e);
                    true
                }
            },
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        let answer = match answer {
            Some(a) => a,
            None => answer_question(&scene, &spec, catalog, profile)?,
        };
        out.push(QATriplet {
            question_id: question_id(&tile.id, slot),
            tile_id: tile.id.clone(),
            qtype: spec.qtype,
            question: spec.text.clone(),
            answer: answer.label,
            split,
            spec: TripletSpec {
                question: spec,
                measure: answer.measure,
            },
        });
    }
    Ok(out)
}

/// Generates and answers the questions of every tile. Tiles run in
/// parallel on the current rayon pool; output follows the tile order.
pub fn assemble(
    collection: &ObjectCollection,
    tiles: &[TileFootprint],
    profile: &GenerationProfile,
    catalog: &ElementCatalog,
    templates: &TemplateTable,
) -> Result<(Vec<QATriplet>, DistributionReport)> {
    let per_tile: Vec<Vec<QATriplet>> = tiles
        .par_iter()
        .map(|t| assemble_tile(collection, t, profile, catalog, templates))
        .collect::<Result<_>>()?;
    let triplets: Vec<QATriplet> = per_tile.into_iter().flatten().collect();
    let report = stats(&triplets);
    Ok((triplets, report))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub profile: GenerationProfile,
    pub seed: u64,
    pub catalog_hash: String,
    pub sources: Vec<SourceExtent>,
    pub splits: BTreeMap<String, Split>,
    pub tiles: Vec<TileFootprint>,
}

/// Output of a full build.
#[derive(Debug, Clone)]
pub struct Build {
    pub triplets: Vec<QATriplet>,
    pub report: DistributionReport,
    pub manifest: Manifest,
}

pub fn build(
    collection: &ObjectCollection,
    profile: &GenerationProfile,
    catalog: &ElementCatalog,
    templates: &TemplateTable,
) -> Result<Build> {
    let (sources, splits, tiles) = plan_tiles(collection, profile)?;
    log::info!("{} sources, {} tiles", sources.len(), tiles.len());
    let (triplets, report) = assemble(collection, &tiles, profile, catalog, templates)?;
    Ok(Build {
        triplets,
        report,
        manifest: Manifest {
            profile: profile.clone(),
            seed: profile.seed,
            catalog_hash: catalog.content_hash(),
            sources,
            splits,
            tiles,
        },
    })
}

pub fn write_json<T: Serialize>(value: &T, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Validation(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

impl Build {
    /// Writes `triplets.jsonl`, `manifest.json` and `report.json`.
    pub fn write(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        write_dataset(&self.triplets, dir.join("triplets.jsonl"))?;
        write_json(&self.manifest, dir.join("manifest.json"))?;
        write_json(&self.report, dir.join("report.json"))
    }
}

/// Sources whose triplets appear under more than one split.
pub fn split_conflicts(triplets: &[QATriplet]) -> Vec<String> {
    let mut seen: BTreeMap<&str, BTreeSet<Split>> = BTreeMap::new();
    for t in triplets {
        seen.entry(source_of(&t.tile_id)).or_default().insert(t.split);
    }
    seen.into_iter()
        .filter(|(_, s)| s.len() > 1)
        .map(|(id, _)| id.to_string())
        .collect()
}

/// Re-answers every triplet from its spec and returns the ids whose
/// stored answer differs.
pub fn audit_answers(
    collection: &ObjectCollection,
    tiles: &[TileFootprint],
    triplets: &[QATriplet],
    profile: &GenerationProfile,
    catalog: &ElementCatalog,
) -> Result<Vec<String>> {
    let by_id: BTreeMap<&str, &TileFootprint> = tiles.iter().map(|t| (t.id.as_str(), t)).collect();
    let mut groups: BTreeMap<&str, Vec<&QATriplet>> = BTreeMap::new();
    for t in triplets {
        groups.entry(&t.tile_id).or_default().push(t);
    }
    let config = GeometryConfig::from_profile(profile);
    let mismatches: Vec<Vec<String>> = groups
        .into_par_iter()
        .map(|(tile_id, ts)| {
            let tile = by_id
                .get(tile_id)
                .ok_or_else(|| Error::Validation(format!("triplet references unknown tile {tile_id}")))?;
            let scene = TileScene::new(tile.rect, collection.query_footprint(&tile.rect), config);
            let mut bad = Vec::new();
            for t in ts {
                if answer_question(&scene, &t.spec.question, catalog, profile)?.label != t.answer {
                    bad.push(t.question_id.clone());
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    Ok(mismatches.into_iter().flatten().collect())
}
