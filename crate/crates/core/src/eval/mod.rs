//! Scoring of prediction files, the image-shuffle probe and a
//! question-prior baseline.

mod baseline;
mod metrics;
mod shuffle;

pub use baseline::{prior_baseline, PriorBaseline};
pub use metrics::{infer_scale, score, score_with, vocabulary_for, MetricsReport, Prediction, Tally};
pub use shuffle::{shuffle_manifest, Reassignment};
