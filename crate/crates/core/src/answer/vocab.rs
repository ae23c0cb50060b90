use std::fmt;

use serde::{Deserialize, Serialize};

use super::quantize::BIN_LABELS;
use crate::question::{QuestionType, Scale};

pub const YES: &str = "yes";
pub const NO: &str = "no";
pub const RURAL: &str = "rural";
pub const URBAN: &str = "urban";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AnswerLabel(String);

impl AnswerLabel {
    pub fn new(s: impl Into<String>) -> Self {
        Self(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn yes_no(b: bool) -> Self {
        Self::new(if b { YES } else { NO })
    }
}

impl fmt::Display for AnswerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Answer categories, in confusion-matrix order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswerGroup {
    YesNo,
    RuralUrban,
    Numeric,
    Area,
}

impl AnswerGroup {
    pub const ALL: [AnswerGroup; 4] = [
        AnswerGroup::YesNo,
        AnswerGroup::RuralUrban,
        AnswerGroup::Numeric,
        AnswerGroup::Area,
    ];

    pub fn of(qtype: QuestionType) -> AnswerGroup {
        match qtype {
            QuestionType::Presence | QuestionType::Comparison => AnswerGroup::YesNo,
            QuestionType::RuralUrban => AnswerGroup::RuralUrban,
            QuestionType::Count => AnswerGroup::Numeric,
            QuestionType::Area => AnswerGroup::Area,
        }
    }
}

/// Closed answer set of one scale, grouped by category.
///
/// A label may belong to several groups ("0" is both a high-resolution
/// count and an area bin); it is listed once, under its first group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    groups: Vec<(AnswerGroup, Vec<String>)>,
    order: Vec<String>,
}

impl Vocabulary {
    pub fn for_scale(scale: Scale, max_count: usize) -> Self {
        let bins = || BIN_LABELS.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let mut groups = vec![(AnswerGroup::YesNo, vec![YES.to_string(), NO.to_string()])];
        match scale {
            Scale::Low => {
                groups.push((AnswerGroup::RuralUrban, vec![RURAL.to_string(), URBAN.to_string()]));
                groups.push((AnswerGroup::Numeric, bins()));
            }
            Scale::High => {
                groups.push((AnswerGroup::Numeric, (0..=max_count).map(|n| n.to_string()).collect()));
                groups.push((AnswerGroup::Area, bins()));
            }
        }
        let mut order: Vec<String> = Vec::new();
        for (_, labels) in &groups {
            for l in labels {
                if !order.contains(l) {
                    order.push(l.clone());
                }
            }
        }
        Self { groups, order }
    }

    /// Labels in confusion-matrix order, without repeats.
    pub fn labels(&self) -> &[String] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.order.iter().position(|l| l == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.position(label).is_some()
    }

    pub fn in_group(&self, label: &str, group: AnswerGroup) -> bool {
        self.groups
            .iter()
            .any(|(g, labels)| *g == group && labels.iter().any(|l| l == label))
    }

    pub fn group_labels(&self, group: AnswerGroup) -> &[String] {
        self.groups
            .iter()
            .find(|(g, _)| *g == group)
            .map_or(&[], |(_, l)| l.as_slice())
    }
}
