use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Split;
use crate::answer::AnswerLabel;
use crate::error::{Error, Result};
use crate::question::{QuestionSpec, QuestionType};

/// The question spec of a triplet plus the raw quantity behind its answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Value", into = "Value")]
pub struct TripletSpec {
    pub question: QuestionSpec,
    pub measure: Option<u64>,
}

impl From<TripletSpec> for Value {
    fn from(t: TripletSpec) -> Value {
        let mut v = serde_json::to_value(&t.question).expect("spec serializes");
        if let (Value::Object(map), Some(m)) = (&mut v, t.measure) {
            map.insert("measure".into(), m.into());
        }
        v
    }
}

impl TryFrom<Value> for TripletSpec {
    type Error = String;

    fn try_from(mut v: Value) -> std::result::Result<Self, String> {
        let measure = match v.as_object_mut().and_then(|m| m.remove("measure")) {
            None | Some(Value::Null) => None,
            Some(m) => Some(m.as_u64().ok_or("measure must be a non-negative integer")?),
        };
        let question = serde_json::from_value(v).map_err(|e| e.to_string())?;
        Ok(Self { question, measure })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QATriplet {
    pub question_id: String,
    pub tile_id: String,
    #[serde(rename = "type")]
    pub qtype: QuestionType,
    pub question: String,
    pub answer: AnswerLabel,
    pub split: Split,
    pub spec: TripletSpec,
}

pub fn question_id(tile_id: &str, slot: usize) -> String {
    format!("{tile_id}/q{slot}")
}

/// Writes values as JSON Lines.
pub fn write_jsonl<T: Serialize>(items: &[T], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for item in items {
        serde_json::to_writer(&mut w, item).map_err(|e| Error::Validation(e.to_string()))?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads JSON Lines; blank lines are skipped, errors carry 1-based line
/// numbers.
pub fn read_jsonl<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<Vec<T>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Record {
            line: i + 1,
            message: e.to_string(),
        })?);
    }
    Ok(out)
}

pub fn write_dataset(triplets: &[QATriplet], path: impl AsRef<Path>) -> Result<()> {
    write_jsonl(triplets, path)
}

pub fn read_dataset(path: impl AsRef<Path>) -> Result<Vec<QATriplet>> {
    let triplets: Vec<QATriplet> = read_jsonl(path)?;
    for (i, t) in triplets.iter().enumerate() {
        let q = &t.spec.question;
        if q.qtype != t.qtype || q.text != t.question || !q.is_well_formed() {
            return Err(Error::Record {
                line: i + 1,
                message: format!("triplet {} disagrees with its spec", t.question_id),
            });
        }
    }
    Ok(triplets)
}
