use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dataset::{QATriplet, Split};
use crate::question::{DecisionSource, KeyedStream};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Reassignment {
    pub question_id: String,
    pub tile_id: String,
}

/// Pairs every question with a tile drawn uniformly from the tiles of its
/// own split (its own tile included). Each draw is keyed by the seed and
/// the question id. With fewer than two tiles the map is the identity.
pub fn shuffle_manifest(triplets: &[QATriplet], seed: u64) -> Vec<Reassignment> {
    let mut tiles: BTreeMap<Split, BTreeSet<&str>> = BTreeMap::new();
    for t in triplets {
        tiles.entry(t.split).or_default().insert(&t.tile_id);
    }
    let total: usize = tiles.values().map(BTreeSet::len).sum();
    if total < 2 && !triplets.is_empty() {
        log::warn!("a single tile cannot be shuffled; writing the identity map");
    }
    let tiles: BTreeMap<Split, Vec<&str>> = tiles.into_iter().map(|(s, t)| (s, t.into_iter().collect())).collect();
    triplets
        .iter()
        .map(|t| {
            let pool = &tiles[&t.split];
            let tile_id = if total < 2 {
                t.tile_id.clone()
            } else {
                pool[KeyedStream::new(seed, &t.question_id, 0).pick(pool.len())].to_string()
            };
            Reassignment {
                question_id: t.question_id.clone(),
                tile_id,
            }
        })
        .collect()
}
