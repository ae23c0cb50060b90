use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Prediction;
use crate::answer::AnswerLabel;
use crate::dataset::QATriplet;
use crate::error::{Error, Result};
use crate::question::QuestionType;

/// Predicts the most frequent training answer of each question type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriorBaseline {
    pub per_type: BTreeMap<QuestionType, AnswerLabel>,
    pub global: AnswerLabel,
}

// Highest count wins; ties go to the lexicographically smallest answer.
fn modal<'a>(counts: &BTreeMap<&'a str, u64>) -> &'a str {
    let mut best: Option<(&str, u64)> = None;
    for (&a, &n) in counts {
        if best.is_none_or(|(_, m)| n > m) {
            best = Some((a, n));
        }
    }
    best.expect("non-empty histogram").0
}

pub fn prior_baseline(train: &[QATriplet]) -> Result<PriorBaseline> {
    if train.is_empty() {
        return Err(Error::Validation("the training set is empty".into()));
    }
    let mut per_type: BTreeMap<QuestionType, BTreeMap<&str, u64>> = BTreeMap::new();
    let mut global: BTreeMap<&str, u64> = BTreeMap::new();
    for t in train {
        *per_type
            .entry(t.qtype)
            .or_default()
            .entry(t.answer.as_str())
            .or_default() += 1;
        *global.entry(t.answer.as_str()).or_default() += 1;
    }
    Ok(PriorBaseline {
        per_type: per_type.iter().map(|(q, h)| (*q, AnswerLabel::new(modal(h)))).collect(),
        global: AnswerLabel::new(modal(&global)),
    })
}

impl PriorBaseline {
    pub fn answer_for(&self, qtype: QuestionType) -> &AnswerLabel {
        self.per_type.get(&qtype).unwrap_or(&self.global)
    }

    pub fn predict(&self, questions: &[QATriplet]) -> Vec<Prediction> {
        questions
            .iter()
            .map(|q| Prediction {
                question_id: q.question_id.clone(),
                answer: self.answer_for(q.qtype).as_str().to_string(),
            })
            .collect()
    }
}
