use super::{
    Attribute, ComparisonOp, DecisionSource, ElementCatalog, ElementSpec, GenerationProfile, KeyedStream, QuestionSpec,
    QuestionType, Scale, TemplateTable,
};
use crate::error::Result;
use crate::geom::{Relation, Shape, SizeClass};

/// Draws before a slot whose questions keep getting rejected falls back to
/// a presence question.
pub const MAX_SLOT_ATTEMPTS: usize = 64;

pub fn build_element<D: DecisionSource + ?Sized>(
    rng: &mut D,
    catalog: &ElementCatalog,
    profile: &GenerationProfile,
    allow_relation: bool,
) -> ElementSpec {
    let entries = catalog.entries();
    let mut spec = ElementSpec::new(entries[rng.pick(entries.len())].id.clone());
    if rng.chance(profile.attribute_prob) {
        spec.attribute = Some(if rng.pick(2) == 0 {
            Attribute::Shape(Shape::ALL[rng.pick(Shape::ALL.len())])
        } else {
            Attribute::Size(SizeClass::ALL[rng.pick(SizeClass::ALL.len())])
        });
    }
    if allow_relation && rng.chance(profile.relation_prob) {
        let kind = Relation::ALL[rng.pick(Relation::ALL.len())];
        let second = build_element(rng, catalog, profile, false);
        spec = spec.with_relation(kind, second);
    }
    spec
}

const LR_TYPES: [QuestionType; 3] = [QuestionType::Count, QuestionType::Presence, QuestionType::Comparison];
const HR_TYPES: [QuestionType; 4] = [
    QuestionType::Count,
    QuestionType::Presence,
    QuestionType::Comparison,
    QuestionType::Area,
];

pub fn select_question_type<D: DecisionSource + ?Sized>(
    rng: &mut D,
    profile: &GenerationProfile,
    is_first_question_of_image: bool,
) -> QuestionType {
    let pool: &[QuestionType] = match profile.scale {
        Scale::Low if is_first_question_of_image => return QuestionType::RuralUrban,
        Scale::Low => &LR_TYPES,
        Scale::High => &HR_TYPES,
    };
    let weights: Vec<f64> = pool.iter().map(|q| profile.qtype_weights.get(*q)).collect();
    pool[rng.pick_weighted(&weights)]
}

/// Builds one question of the given type, text included.
pub fn build_question<D: DecisionSource + ?Sized>(
    rng: &mut D,
    qtype: QuestionType,
    profile: &GenerationProfile,
    catalog: &ElementCatalog,
    templates: &TemplateTable,
) -> Result<QuestionSpec> {
    let (element, op, second) = match qtype {
        QuestionType::RuralUrban => (None, None, None),
        QuestionType::Comparison => {
            let op = ComparisonOp::ALL[rng.pick(ComparisonOp::ALL.len())];
            let a = build_element(rng, catalog, profile, profile.comparison_relations);
            let b = build_element(rng, catalog, profile, profile.comparison_relations);
            (Some(a), Some(op), Some(b))
        }
        _ => (Some(build_element(rng, catalog, profile, true)), None, None),
    };
    let (text, template_id) = templates.instantiate(qtype, op, element.as_ref(), second.as_ref(), catalog, rng)?;
    Ok(QuestionSpec {
        qtype,
        element,
        comparison_op: op,
        second_element: second,
        template_id,
        text,
    })
}

/// Builds the question of one slot from its own stream. Candidates refused
/// by `accept` are redrawn from the same stream; after
/// [`MAX_SLOT_ATTEMPTS`] refusals a presence question is used.
pub fn build_slot(
    tile_id: &str,
    slot: usize,
    profile: &GenerationProfile,
    catalog: &ElementCatalog,
    templates: &TemplateTable,
    accept: &mut dyn FnMut(&QuestionSpec) -> bool,
) -> Result<QuestionSpec> {
    let mut rng = KeyedStream::new(profile.seed, tile_id, slot as u64);
    for _ in 0..MAX_SLOT_ATTEMPTS {
        let qtype = select_question_type(&mut rng, profile, slot == 0);
        let spec = build_question(&mut rng, qtype, profile, catalog, templates)?;
        if accept(&spec) {
            return Ok(spec);
        }
    }
    log::debug!("{tile_id} slot {slot}: falling back to a presence question");
    build_question(&mut rng, QuestionType::Presence, profile, catalog, templates)
}

/// The `questions_per_image` questions of one tile. Output depends only on
/// the profile, catalog, templates, tile id and the `accept` predicate.
pub fn generate_for_image(
    tile_id: &str,
    profile: &GenerationProfile,
    catalog: &ElementCatalog,
    templates: &TemplateTable,
    mut accept: impl FnMut(&QuestionSpec) -> bool,
) -> Result<Vec<QuestionSpec>> {
    (0..profile.questions_per_image)
        .map(|slot| build_slot(tile_id, slot, profile, catalog, templates, &mut accept))
        .collect()
}
