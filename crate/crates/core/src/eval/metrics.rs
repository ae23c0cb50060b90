use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::answer::{AnswerGroup, Vocabulary};
use crate::dataset::QATriplet;
use crate::error::{Error, Result};
use crate::question::{QuestionType, Scale};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Prediction {
    pub question_id: String,
    pub answer: String,
}

/// Largest raw count a vocabulary needs to cover.
const DEFAULT_MAX_COUNT: usize = 89;

/// Scale of a ground-truth set: low resolution when rural/urban questions
/// occur, high resolution when area questions or raw integer counts above
/// 0 occur.
pub fn infer_scale(triplets: &[QATriplet]) -> Scale {
    if triplets.iter().any(|t| t.qtype == QuestionType::RuralUrban) {
        return Scale::Low;
    }
    let high = triplets.iter().any(|t| {
        t.qtype == QuestionType::Area
            || (t.qtype == QuestionType::Count && t.answer.as_str() != "0" && t.answer.as_str().parse::<u64>().is_ok())
    });
    if high {
        Scale::High
    } else {
        Scale::Low
    }
}

/// Vocabulary covering every ground-truth answer of `triplets`.
pub fn vocabulary_for(triplets: &[QATriplet], scale: Scale) -> Vocabulary {
    let max_seen = triplets
        .iter()
        .filter(|t| t.qtype == QuestionType::Count)
        .filter_map(|t| t.answer.as_str().parse::<usize>().ok())
        .max()
        .unwrap_or(0);
    Vocabulary::for_scale(scale, max_seen.max(DEFAULT_MAX_COUNT))
}

/// Partial scoring state; tallies of disjoint question sets merge into the
/// tally of their union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    per_type: BTreeMap<QuestionType, (u64, u64)>,
    confusion: Vec<Vec<u64>>,
    unmatched: Vec<u64>,
    illogical: u64,
    missing: u64,
    out_of_vocabulary: Vec<Prediction>,
}

impl Tally {
    pub fn new(vocab_len: usize) -> Self {
        Self {
            per_type: BTreeMap::new(),
            confusion: vec![vec![0; vocab_len]; vocab_len],
            unmatched: vec![0; vocab_len],
            illogical: 0,
            missing: 0,
            out_of_vocabulary: Vec::new(),
        }
    }

    pub fn add(&mut self, truth: &QATriplet, prediction: Option<&str>, vocab: &Vocabulary) -> Result<()> {
        let row = vocab.position(truth.answer.as_str()).ok_or_else(|| {
            Error::Validation(format!(
                "ground-truth answer {:?} of {} is outside the vocabulary",
                truth.answer.as_str(),
                truth.question_id
            ))
        })?;
        let entry = self.per_type.entry(truth.qtype).or_default();
        entry.1 += 1;
        match prediction {
            None => {
                self.missing += 1;
                self.unmatched[row] += 1;
            }
            Some(p) => match vocab.position(p) {
                None => {
                    self.unmatched[row] += 1;
                    self.out_of_vocabulary.push(Prediction {
                        question_id: truth.question_id.clone(),
                        answer: p.to_string(),
                    });
                }
                Some(col) => {
                    self.confusion[row][col] += 1;
                    if p == truth.answer.as_str() {
                        entry.0 += 1;
                    }
                    if !vocab.in_group(p, AnswerGroup::of(truth.qtype)) {
                        self.illogical += 1;
                    }
                }
            },
        }
        Ok(())
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        for (q, (c, n)) in other.per_type {
            let e = self.per_type.entry(q).or_default();
            e.0 += c;
            e.1 += n;
        }
        for (row, other_row) in self.confusion.iter_mut().zip(other.confusion) {
            for (a, b) in row.iter_mut().zip(other_row) {
                *a += b;
            }
        }
        for (a, b) in self.unmatched.iter_mut().zip(other.unmatched) {
            *a += b;
        }
        self.illogical += other.illogical;
        self.missing += other.missing;
        self.out_of_vocabulary.extend(other.out_of_vocabulary);
        self
    }

    pub fn finish(mut self, vocab: &Vocabulary) -> MetricsReport {
        self.out_of_vocabulary.sort_by(|a, b| a.question_id.cmp(&b.question_id));
        let per_type_accuracy: BTreeMap<QuestionType, f64> = self
            .per_type
            .iter()
            .map(|(q, (c, n))| (*q, *c as f64 / *n as f64))
            .collect();
        let n_scored: u64 = self.per_type.values().map(|(_, n)| n).sum();
        let correct: u64 = self.per_type.values().map(|(c, _)| c).sum();
        let aa = if per_type_accuracy.is_empty() {
            0.0
        } else {
            per_type_accuracy.values().sum::<f64>() / per_type_accuracy.len() as f64
        };
        MetricsReport {
            n_scored,
            n_correct: correct,
            per_type_accuracy,
            per_type_counts: self.per_type.iter().map(|(q, (_, n))| (*q, *n)).collect(),
            aa,
            oa: if n_scored == 0 {
                0.0
            } else {
                correct as f64 / n_scored as f64
            },
            illogical_count: self.illogical,
            missing_count: self.missing,
            out_of_vocabulary: self.out_of_vocabulary,
            vocabulary: vocab.labels().to_vec(),
            confusion: self.confusion,
            unmatched: self.unmatched,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub n_scored: u64,
    pub n_correct: u64,
    pub per_type_accuracy: BTreeMap<QuestionType, f64>,
    pub per_type_counts: BTreeMap<QuestionType, u64>,
    #[serde(rename = "AA")]
    pub aa: f64,
    #[serde(rename = "OA")]
    pub oa: f64,
    pub illogical_count: u64,
    pub missing_count: u64,
    /// Predictions whose answer is not in the vocabulary.
    pub out_of_vocabulary: Vec<Prediction>,
    pub vocabulary: Vec<String>,
    /// Rows are ground-truth labels, columns predicted labels, both in
    /// vocabulary order.
    pub confusion: Vec<Vec<u64>>,
    /// Per ground-truth label: missing or out-of-vocabulary predictions.
    pub unmatched: Vec<u64>,
}

impl MetricsReport {
    pub fn confusion_trace(&self) -> u64 {
        (0..self.confusion.len()).map(|i| self.confusion[i][i]).sum()
    }

    /// Confusion matrix as CSV with a trailing `unmatched` column.
    pub fn confusion_csv(&self) -> String {
        let mut out = String::from("truth\\predicted");
        for l in &self.vocabulary {
            out.push(',');
            out.push_str(l);
        }
        out.push_str(",unmatched\n");
        for (i, row) in self.confusion.iter().enumerate() {
            out.push_str(&self.vocabulary[i]);
            for v in row {
                let _ = write!(out, ",{v}");
            }
            let _ = writeln!(out, ",{}", self.unmatched[i]);
        }
        out
    }
}

/// Scores predictions against ground truth with an explicit vocabulary.
pub fn score_with(predictions: &[Prediction], triplets: &[QATriplet], vocab: &Vocabulary) -> Result<MetricsReport> {
    let mut truth_ids = HashSet::with_capacity(triplets.len());
    for t in triplets {
        if !truth_ids.insert(t.question_id.as_str()) {
            return Err(Error::Validation(format!(
                "duplicate ground-truth question {}",
                t.question_id
            )));
        }
    }
    let mut by_id: HashMap<&str, &str> = HashMap::with_capacity(predictions.len());
    for p in predictions {
        if !truth_ids.contains(p.question_id.as_str()) {
            return Err(Error::Validation(format!(
                "prediction for unknown question {}",
                p.question_id
            )));
        }
        if by_id.insert(&p.question_id, &p.answer).is_some() {
            return Err(Error::Validation(format!("duplicate prediction for {}", p.question_id)));
        }
    }
    let tally = triplets
        .par_chunks(4096)
        .map(|chunk| {
            let mut t = Tally::new(vocab.len());
            for truth in chunk {
                t.add(truth, by_id.get(truth.question_id.as_str()).copied(), vocab)?;
            }
            Ok(t)
        })
        .try_reduce(|| Tally::new(vocab.len()), |a, b| Ok(a.merge(b)))?;
    Ok(tally.finish(vocab))
}

/// Scores predictions with the vocabulary of the inferred scale.
pub fn score(predictions: &[Prediction], triplets: &[QATriplet]) -> Result<MetricsReport> {
    score_with(predictions, triplets, &vocabulary_for(triplets, infer_scale(triplets)))
}
