use serde::{Deserialize, Serialize};

use super::AnswerLabel;

pub const ZERO: &str = "0";
pub const BIN_1_10: &str = "between 1 and 10";
pub const BIN_11_100: &str = "between 11 and 100";
pub const BIN_101_1000: &str = "between 101 and 1000";
pub const MORE_THAN_1000: &str = "more than 1000";

/// The five labels in order.
pub const BIN_LABELS: [&str; 5] = [ZERO, BIN_1_10, BIN_11_100, BIN_101_1000, MORE_THAN_1000];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantityUnit {
    Count,
    SquareMetres,
}

/// Five ordered bins over the non-negative integers with inclusive upper
/// edges 0, 10, 100 and 1000.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantizationScheme {
    pub unit: QuantityUnit,
    upper_edges: [u64; 4],
}

impl QuantizationScheme {
    pub const fn counts() -> Self {
        Self {
            unit: QuantityUnit::Count,
            upper_edges: [0, 10, 100, 1000],
        }
    }

    pub const fn areas() -> Self {
        Self {
            unit: QuantityUnit::SquareMetres,
            upper_edges: [0, 10, 100, 1000],
        }
    }

    pub fn labels(&self) -> [&'static str; 5] {
        BIN_LABELS
    }

    /// Index of the bin holding `value`.
    pub fn bin(&self, value: u64) -> usize {
        self.upper_edges.iter().position(|&e| value <= e).unwrap_or(4)
    }

    pub fn label(&self, value: u64) -> AnswerLabel {
        AnswerLabel::new(BIN_LABELS[self.bin(value)])
    }
}

pub fn quantize_count(n: u64, scheme: &QuantizationScheme) -> AnswerLabel {
    scheme.label(n)
}

/// Rounds an area to whole square metres before binning, so 10.4 m² is
/// "between 1 and 10" and 0.3 m² is "0".
pub fn round_area(m2: f64) -> u64 {
    if m2.is_finite() && m2 > 0.0 {
        m2.round() as u64
    } else {
        0
    }
}

pub fn quantize_area(m2: f64, scheme: &QuantizationScheme) -> AnswerLabel {
    scheme.label(round_area(m2))
}
