//! Question construction: element catalog, templates, profiles and the
//! seeded per-slot builder.

mod builder;
mod catalog;
mod profile;
mod rng;
mod spec;
mod templates;

pub use builder::{
    build_element, build_question, build_slot, generate_for_image, select_question_type, MAX_SLOT_ATTEMPTS,
};
pub use catalog::{CatalogEntry, ElementCatalog};
pub use profile::{apply_override, GenerationProfile, QuestionTypeWeights, Scale, SourceExtent};
pub use rng::{DecisionSource, KeyedStream, ScriptedStream, Step};
pub use spec::{Attribute, ComparisonOp, ElementSpec, QuestionSpec, QuestionType, RelationSpec};
pub use templates::{element_phrase, Template, TemplateGrammar, TemplateTable};
