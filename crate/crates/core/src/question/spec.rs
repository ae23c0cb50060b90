use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::geom::{Relation, Shape, SizeClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuestionType {
    Count,
    Presence,
    Comparison,
    Area,
    RuralUrban,
}

impl QuestionType {
    pub const ALL: [QuestionType; 5] = [
        QuestionType::Count,
        QuestionType::Presence,
        QuestionType::Comparison,
        QuestionType::Area,
        QuestionType::RuralUrban,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            QuestionType::Count => "count",
            QuestionType::Presence => "presence",
            QuestionType::Comparison => "comparison",
            QuestionType::Area => "area",
            QuestionType::RuralUrban => "rural_urban",
        }
    }
}

impl fmt::Display for QuestionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QuestionType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QuestionType::ALL
            .into_iter()
            .find(|q| q.as_str() == s)
            .ok_or_else(|| format!("unknown question type {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparisonOp {
    LessThan,
    EqualsTo,
    MoreThan,
}

impl ComparisonOp {
    pub const ALL: [ComparisonOp; 3] = [ComparisonOp::LessThan, ComparisonOp::EqualsTo, ComparisonOp::MoreThan];
}

/// Optional refinement of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attribute {
    Shape(Shape),
    Size(SizeClass),
}

impl Attribute {
    pub fn word(self) -> &'static str {
        match self {
            Attribute::Shape(s) => s.as_str(),
            Attribute::Size(s) => s.as_str(),
        }
    }

    pub fn from_word(word: &str) -> Option<Self> {
        Shape::ALL
            .into_iter()
            .find(|s| s.as_str() == word)
            .map(Attribute::Shape)
            .or_else(|| {
                SizeClass::ALL
                    .into_iter()
                    .find(|s| s.as_str() == word)
                    .map(Attribute::Size)
            })
    }
}

/// Element category with optional attribute and optional relative position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSpec {
    pub category: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attribute: Option<Attribute>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<Box<RelationSpec>>,
}

impl ElementSpec {
    pub fn new(category: impl Into<String>) -> Self {
        Self {
            category: category.into(),
            attribute: None,
            relation: None,
        }
    }

    pub fn with_attribute(mut self, attribute: Attribute) -> Self {
        self.attribute = Some(attribute);
        self
    }

    pub fn with_relation(mut self, kind: Relation, element: ElementSpec) -> Self {
        self.relation = Some(Box::new(RelationSpec { kind, element }));
        self
    }

    /// Nesting depth of relation clauses.
    pub fn relation_depth(&self) -> usize {
        self.relation.as_ref().map_or(0, |r| 1 + r.element.relation_depth())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub kind: Relation,
    pub element: ElementSpec,
}

/// A fully built question before answering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuestionSpec {
    pub qtype: QuestionType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<ElementSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison_op: Option<ComparisonOp>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_element: Option<ElementSpec>,
    pub template_id: usize,
    pub text: String,
}

impl QuestionSpec {
    /// Checks the structural invariants tying fields to the question type.
    pub fn is_well_formed(&self) -> bool {
        let comparison = self.qtype == QuestionType::Comparison;
        let element_ok = match self.qtype {
            QuestionType::RuralUrban => self.element.is_none(),
            _ => self.element.is_some(),
        };
        element_ok
            && comparison == self.comparison_op.is_some()
            && comparison == self.second_element.is_some()
            && !self.text.is_empty()
    }
}
