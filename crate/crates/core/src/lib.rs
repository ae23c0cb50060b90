pub mod answer;
pub mod dataset;
pub mod error;
pub mod eval;
pub mod geom;
pub mod ingest;
pub mod question;

pub use error::{Error, Result};
pub mod synth;
