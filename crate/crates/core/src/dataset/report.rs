use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{QATriplet, Split};
use crate::question::QuestionType;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DistributionReport {
    pub n_triplets: u64,
    pub n_tiles: u64,
    /// Answer histogram per question type.
    pub answers: BTreeMap<QuestionType, BTreeMap<String, u64>>,
    /// Histogram of the exact object counts behind count questions.
    pub raw_counts: BTreeMap<u64, u64>,
    pub split_triplets: BTreeMap<Split, u64>,
    pub split_tiles: BTreeMap<Split, u64>,
    pub vocabulary_size: usize,
    /// Share of count questions answered "0".
    pub zero_count_fraction: f64,
}

pub fn stats(triplets: &[QATriplet]) -> DistributionReport {
    let mut r = DistributionReport {
        n_triplets: triplets.len() as u64,
        ..Default::default()
    };
    let mut tiles: BTreeMap<&str, Split> = BTreeMap::new();
    let mut vocabulary = BTreeSet::new();
    let (mut counts, mut zeros) = (0u64, 0u64);
    for t in triplets {
        *r.answers
            .entry(t.qtype)
            .or_default()
            .entry(t.answer.as_str().to_string())
            .or_default() += 1;
        *r.split_triplets.entry(t.split).or_default() += 1;
        tiles.insert(&t.tile_id, t.split);
        vocabulary.insert(t.answer.as_str());
        if t.qtype == QuestionType::Count {
            counts += 1;
            if t.answer.as_str() == "0" {
                zeros += 1;
            }
            if let Some(m) = t.spec.measure {
                *r.raw_counts.entry(m).or_default() += 1;
            }
        }
    }
    r.n_tiles = tiles.len() as u64;
    for split in tiles.values() {
        *r.split_tiles.entry(*split).or_default() += 1;
    }
    r.vocabulary_size = vocabulary.len();
    r.zero_count_fraction = if counts > 0 { zeros as f64 / counts as f64 } else { 0.0 };
    r
}
