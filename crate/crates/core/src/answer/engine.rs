use serde::{Deserialize, Serialize};

use super::{quantize_area, quantize_count, round_area, AnswerLabel, QuantizationScheme, TileScene, RURAL, URBAN};
use crate::error::{Error, Result};
use crate::geom::{area, clip_geometry, Rect};
use crate::ingest::{GeoObject, Layer};
use crate::question::{ComparisonOp, ElementCatalog, GenerationProfile, QuestionSpec, QuestionType, Scale};

/// A ground-truth answer plus the raw quantity behind it: the object count
/// (count, presence), the rounded area in m² (area) or the building count
/// (rural/urban). Comparisons carry no measure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Answer {
    pub label: AnswerLabel,
    pub measure: Option<u64>,
}

pub fn answer_count<T>(selected: &[T]) -> u64 {
    selected.len() as u64
}

pub fn answer_presence<T>(selected: &[T]) -> AnswerLabel {
    AnswerLabel::yes_no(!selected.is_empty())
}

/// Total area of the selected objects inside `footprint`, quantized.
pub fn answer_area(
    selected: &[&GeoObject],
    footprint: &Rect,
    scheme: Option<&QuantizationScheme>,
) -> Result<AnswerLabel> {
    let scheme = scheme.ok_or_else(|| Error::Config("area answers need a quantization scheme".into()))?;
    let total: f64 = selected
        .iter()
        .map(|o| area(&clip_geometry(&o.geometry, footprint)))
        .sum();
    Ok(quantize_area(total, scheme))
}

pub fn answer_comparison(count_a: u64, count_b: u64, op: ComparisonOp) -> AnswerLabel {
    AnswerLabel::yes_no(match op {
        ComparisonOp::LessThan => count_a < count_b,
        ComparisonOp::EqualsTo => count_a == count_b,
        ComparisonOp::MoreThan => count_a > count_b,
    })
}

/// "urban" when at least `threshold` building-layer objects are present.
pub fn answer_rural_urban<'a>(objects: impl IntoIterator<Item = &'a GeoObject>, threshold: usize) -> AnswerLabel {
    let buildings = objects.into_iter().filter(|o| o.layer == Layer::Building).count();
    AnswerLabel::new(if buildings >= threshold { URBAN } else { RURAL })
}

/// Answers a question against a tile scene.
///
/// High-resolution counts come back as raw integers even above
/// `profile.max_count`; generation rejects those questions.
pub fn answer_question(
    scene: &TileScene<'_>,
    spec: &QuestionSpec,
    catalog: &ElementCatalog,
    profile: &GenerationProfile,
) -> Result<Answer> {
    let element = || {
        spec.element
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("{} question without an element", spec.qtype)))
    };
    Ok(match spec.qtype {
        QuestionType::Count => {
            let n = answer_count(&scene.select(element()?, catalog)?);
            let label = match profile.scale {
                Scale::Low => quantize_count(n, &QuantizationScheme::counts()),
                Scale::High => AnswerLabel::new(n.to_string()),
            };
            Answer {
                label,
                measure: Some(n),
            }
        }
        QuestionType::Presence => {
            let sel = scene.select(element()?, catalog)?;
            Answer {
                label: answer_presence(&sel),
                measure: Some(answer_count(&sel)),
            }
        }
        QuestionType::Comparison => {
            let (op, second) = spec
                .comparison_op
                .zip(spec.second_element.as_ref())
                .ok_or_else(|| Error::Precondition("comparison without operator or second element".into()))?;
            let a = answer_count(&scene.select(element()?, catalog)?);
            let b = answer_count(&scene.select(second, catalog)?);
            Answer {
                label: answer_comparison(a, b, op),
                measure: None,
            }
        }
        QuestionType::Area => {
            if profile.scale != Scale::High {
                return Err(Error::Precondition("area questions are high-resolution only".into()));
            }
            let total: f64 = scene
                .select(element()?, catalog)?
                .into_iter()
                .map(|i| scene.clipped_area(i))
                .sum();
            Answer {
                label: quantize_area(total, &QuantizationScheme::areas()),
                measure: Some(round_area(total)),
            }
        }
        QuestionType::RuralUrban => {
            let buildings = scene.objects().filter(|o| o.layer == Layer::Building).count();
            Answer {
                label: answer_rural_urban(scene.objects(), profile.rural_urban_threshold),
                measure: Some(buildings as u64),
            }
        }
    })
}
