//! Generation profile: every knob of a dataset build, read from TOML or JSON.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::QuestionType;
use crate::dataset::Split;
use crate::error::{Error, Result};
use crate::geom::{Rect, ShapeConfig, SizeProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scale {
    /// Low resolution: 256 px tiles at 10 m/px, quantized counts, rural/urban.
    #[serde(rename = "LR", alias = "lr")]
    Low,
    /// High resolution: 512 px tiles at 0.15 m/px, raw counts, area questions.
    #[serde(rename = "HR", alias = "hr")]
    High,
}

impl Scale {
    pub fn default_size_profile(self) -> SizeProfile {
        match self {
            Scale::Low => SizeProfile::LOW_RESOLUTION,
            Scale::High => SizeProfile::HIGH_RESOLUTION,
        }
    }

    pub fn default_tile_pixels(self) -> u32 {
        match self {
            Scale::Low => 256,
            Scale::High => 512,
        }
    }

    pub fn default_resolution(self) -> f64 {
        match self {
            Scale::Low => 10.0,
            Scale::High => 0.15,
        }
    }

    /// Question types that can be drawn at this scale.
    pub fn allows(self, qtype: QuestionType) -> bool {
        match qtype {
            QuestionType::Area => self == Scale::High,
            QuestionType::RuralUrban => self == Scale::Low,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuestionTypeWeights {
    pub count: f64,
    pub presence: f64,
    pub comparison: f64,
    pub area: f64,
    /// Ignored: rural/urban is asked exactly once per low-resolution tile.
    pub rural_urban: f64,
}

impl Default for QuestionTypeWeights {
    fn default() -> Self {
        Self {
            count: 1.0,
            presence: 1.0,
            comparison: 1.0,
            area: 1.0,
            rural_urban: 0.0,
        }
    }
}

impl QuestionTypeWeights {
    pub fn get(&self, qtype: QuestionType) -> f64 {
        match qtype {
            QuestionType::Count => self.count,
            QuestionType::Presence => self.presence,
            QuestionType::Comparison => self.comparison,
            QuestionType::Area => self.area,
            QuestionType::RuralUrban => self.rural_urban,
        }
    }
}

/// One source acquisition whose extent is cut into tiles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceExtent {
    pub id: String,
    pub bounds: Rect,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationProfile {
    pub scale: Scale,
    pub seed: u64,
    pub questions_per_image: usize,
    pub attribute_prob: f64,
    pub relation_prob: f64,
    pub qtype_weights: QuestionTypeWeights,
    pub size_profile: SizeProfile,
    pub shape_config: ShapeConfig,
    /// Building count at or above which a tile is urban.
    pub rural_urban_threshold: usize,
    /// Largest raw count answer at high resolution.
    pub max_count: usize,
    /// Whether comparison elements may carry a relation clause.
    pub comparison_relations: bool,
    pub tile_pixels: u32,
    /// Ground resolution, m/px.
    pub resolution: f64,
    /// Explicit source extents; when empty, the collection bounds are cut
    /// into `source_grid` equal sources.
    pub sources: Vec<SourceExtent>,
    /// Columns and rows of the implicit source grid.
    pub source_grid: [u32; 2],
    pub split_fractions: BTreeMap<Split, f64>,
    pub split_seed: u64,
}

/// On-disk form: every field optional, scale-dependent defaults filled in
/// by [`GenerationProfile::from_file`].
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    scale: Option<Scale>,
    seed: Option<u64>,
    questions_per_image: Option<usize>,
    attribute_prob: Option<f64>,
    relation_prob: Option<f64>,
    qtype_weights: Option<QuestionTypeWeights>,
    size_profile: Option<SizeProfile>,
    shape_config: Option<ShapeConfig>,
    rural_urban_threshold: Option<usize>,
    max_count: Option<usize>,
    comparison_relations: Option<bool>,
    tile_pixels: Option<u32>,
    resolution: Option<f64>,
    sources: Option<Vec<SourceExtent>>,
    source_grid: Option<[u32; 2]>,
    split_fractions: Option<BTreeMap<Split, f64>>,
    split_seed: Option<u64>,
}

impl GenerationProfile {
    pub fn for_scale(scale: Scale, seed: u64) -> Self {
        Self {
            scale,
            seed,
            questions_per_image: 100,
            attribute_prob: 0.5,
            relation_prob: 0.3,
            qtype_weights: QuestionTypeWeights::default(),
            size_profile: scale.default_size_profile(),
            shape_config: ShapeConfig::default(),
            rural_urban_threshold: 100,
            max_count: 89,
            comparison_relations: false,
            tile_pixels: scale.default_tile_pixels(),
            resolution: scale.default_resolution(),
            sources: Vec::new(),
            source_grid: [1, 1],
            split_fractions: BTreeMap::from([(Split::Train, 1.0)]),
            split_seed: seed,
        }
    }

    fn from_file(file: ProfileFile) -> Result<Self> {
        let scale = file
            .scale
            .ok_or_else(|| Error::Config("profile must set `scale` (\"LR\" or \"HR\")".into()))?;
        let seed = file.seed.unwrap_or(0);
        let base = Self::for_scale(scale, seed);
        let profile = Self {
            scale,
            seed,
            questions_per_image: file.questions_per_image.unwrap_or(base.questions_per_image),
            attribute_prob: file.attribute_prob.unwrap_or(base.attribute_prob),
            relation_prob: file.relation_prob.unwrap_or(base.relation_prob),
            qtype_weights: file.qtype_weights.unwrap_or(base.qtype_weights),
            size_profile: file.size_profile.unwrap_or(base.size_profile),
            shape_config: file.shape_config.unwrap_or(base.shape_config),
            rural_urban_threshold: file.rural_urban_threshold.unwrap_or(base.rural_urban_threshold),
            max_count: file.max_count.unwrap_or(base.max_count),
            comparison_relations: file.comparison_relations.unwrap_or(base.comparison_relations),
            tile_pixels: file.tile_pixels.unwrap_or(base.tile_pixels),
            resolution: file.resolution.unwrap_or(base.resolution),
            sources: file.sources.unwrap_or_default(),
            source_grid: file.source_grid.unwrap_or(base.source_grid),
            split_fractions: file.split_fractions.unwrap_or(base.split_fractions),
            split_seed: file.split_seed.unwrap_or(seed),
        };
        profile.validate()?;
        Ok(profile)
    }

    /// Builds a profile from a JSON value (the common form of TOML and JSON
    /// inputs after overrides are applied).
    pub fn from_value(value: serde_json::Value) -> Result<Self> {
        let file: ProfileFile = serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
        Self::from_file(file)
    }

    /// Reads a profile as a JSON value; `.toml` files are parsed as TOML,
    /// everything else as JSON.
    pub fn read_value(path: impl AsRef<Path>) -> Result<serde_json::Value> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        if path.extension().is_some_and(|e| e == "toml") {
            let v: toml::Value = toml::from_str(&text).map_err(|e| {
                let (line, column) = e.span().map(|s| line_col(&text, s.start)).unwrap_or((0, 0));
                Error::Parse {
                    line,
                    column,
                    message: e.message().to_string(),
                }
            })?;
            serde_json::to_value(v).map_err(|e| Error::Config(e.to_string()))
        } else {
            serde_json::from_str(&text).map_err(|e| Error::json(&e))
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_value(Self::read_value(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |m: String| Err(Error::Config(m));
        if self.questions_per_image == 0 {
            return cfg("questions_per_image must be at least 1".into());
        }
        for (name, p) in [
            ("attribute_prob", self.attribute_prob),
            ("relation_prob", self.relation_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return cfg(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        let eligible: Vec<QuestionType> = QuestionType::ALL
            .into_iter()
            .filter(|q| *q != QuestionType::RuralUrban && self.scale.allows(*q))
            .collect();
        if QuestionType::ALL
            .iter()
            .any(|q| !(self.qtype_weights.get(*q) >= 0.0 && self.qtype_weights.get(*q).is_finite()))
        {
            return cfg("qtype_weights must be finite and non-negative".into());
        }
        if eligible.iter().map(|q| self.qtype_weights.get(*q)).sum::<f64>() <= 0.0 {
            return cfg("qtype_weights give zero total weight to the question types of this scale".into());
        }
        self.size_profile.validate()?;
        self.shape_config.validate()?;
        if self.tile_pixels == 0 || !(self.resolution > 0.0 && self.resolution.is_finite()) {
            return cfg("tile_pixels and resolution must be positive".into());
        }
        if self.source_grid[0] == 0 || self.source_grid[1] == 0 {
            return cfg("source_grid must have positive dimensions".into());
        }
        for s in &self.sources {
            if !s.bounds.is_valid() {
                return cfg(format!("source {} has an invalid extent", s.id));
            }
        }
        crate::dataset::check_fractions(&self.split_fractions)?;
        Ok(())
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Sets `key` (dotted path) in a JSON object; the value is parsed as JSON
/// when possible and kept as a string otherwise.
pub fn apply_override(target: &mut serde_json::Value, assignment: &str) -> Result<()> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override {assignment:?} is not of the form key=value")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
    let mut node = target;
    let parts: Vec<&str> = key.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::Config(format!("override key {key:?} has an empty segment")));
        }
        let obj = node
            .as_object_mut()
            .ok_or_else(|| Error::Config(format!("override key {key:?} descends into a non-object")))?;
        if i + 1 == parts.len() {
            obj.insert(part.to_string(), value);
            return Ok(());
        }
        node = obj
            .entry(part.to_string())
            .or_insert_with(|| serde_json::Value::Object(Default::default()));
    }
    unreachable!("split yields at least one segment")
}
