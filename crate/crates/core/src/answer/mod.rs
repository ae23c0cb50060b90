//! Ground-truth answers: object selection, per-type answering and
//! quantization into the closed answer vocabulary.

mod engine;
mod quantize;
mod scene;
mod vocab;

pub use engine::{
    answer_area, answer_comparison, answer_count, answer_presence, answer_question, answer_rural_urban, Answer,
};
pub use quantize::{
    quantize_area, quantize_count, round_area, QuantityUnit, QuantizationScheme, BIN_101_1000, BIN_11_100, BIN_1_10,
    BIN_LABELS, MORE_THAN_1000, ZERO,
};
pub use scene::{select_objects, GeometryConfig, SceneObject, TileScene};
pub use vocab::{AnswerGroup, AnswerLabel, Vocabulary, NO, RURAL, URBAN, YES};
