//! Question templates and the grammar that parses rendered questions back.
//!
//! Templates are plain strings with placeholders:
//!
//! | placeholder | renders as |
//! |---|---|
//! | `{E}` `{A}` `{B}` | singular element phrase |
//! | `{Es}` `{As}` `{Bs}` | plural element phrase |
//! | `{a E}` `{a A}` `{a B}` | indefinite article + singular phrase |
//!
//! `E` is the element of count, presence and area questions; `A` and `B`
//! are the two sides of a comparison. An element phrase is
//! `[attribute] noun [relation-phrase a|an [attribute] noun]`, e.g.
//! "small roads on the left of a water area".

use std::collections::HashMap;
use std::path::Path;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::{Attribute, ComparisonOp, DecisionSource, ElementCatalog, ElementSpec, QuestionSpec, QuestionType};
use crate::error::{Error, Result};
use crate::geom::{Relation, Shape, SizeClass};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Template {
    #[serde(rename = "type")]
    pub qtype: QuestionType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub op: Option<ComparisonOp>,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Slot {
    E,
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Form {
    Singular,
    Plural,
    Indefinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Piece {
    Literal(String),
    Element(Slot, Form),
}

fn tokenize(text: &str) -> Result<Vec<Piece>> {
    let mut pieces = Vec::new();
    let mut rest = text;
    while let Some(open) = rest.find('{') {
        if open > 0 {
            pieces.push(Piece::Literal(rest[..open].to_string()));
        }
        let close = rest[open..]
            .find('}')
            .ok_or_else(|| Error::Config(format!("unclosed placeholder in template {text:?}")))?
            + open;
        let name = &rest[open + 1..close];
        let (slot_name, form) = match name.strip_prefix("a ") {
            Some(s) => (s, Form::Indefinite),
            None => match name.strip_suffix('s') {
                Some(s) => (s, Form::Plural),
                None => (name, Form::Singular),
            },
        };
        let slot = match slot_name {
            "E" => Slot::E,
            "A" => Slot::A,
            "B" => Slot::B,
            _ => {
                return Err(Error::Config(format!(
                    "unknown placeholder {{{name}}} in template {text:?}"
                )))
            }
        };
        pieces.push(Piece::Element(slot, form));
        rest = &rest[close + 1..];
    }
    if !rest.is_empty() {
        pieces.push(Piece::Literal(rest.to_string()));
    }
    if pieces.iter().any(|p| matches!(p, Piece::Literal(l) if l.contains('}'))) {
        return Err(Error::Config(format!("stray '}}' in template {text:?}")));
    }
    Ok(pieces)
}

#[derive(Debug, Clone)]
struct Compiled {
    template: Template,
    pieces: Vec<Piece>,
    /// Position among the templates of the same question type.
    id: usize,
}

#[derive(Debug, Clone)]
pub struct TemplateTable {
    compiled: Vec<Compiled>,
}

impl TemplateTable {
    pub fn new(templates: Vec<Template>) -> Result<Self> {
        let mut next_id: HashMap<QuestionType, usize> = HashMap::new();
        let mut compiled = Vec::with_capacity(templates.len());
        for t in templates {
            let pieces = tokenize(&t.text)?;
            let slots: Vec<Slot> = pieces
                .iter()
                .filter_map(|p| match p {
                    Piece::Element(s, _) => Some(*s),
                    Piece::Literal(_) => None,
                })
                .collect();
            let expected: &[Slot] = match t.qtype {
                QuestionType::Count | QuestionType::Presence | QuestionType::Area => &[Slot::E],
                QuestionType::Comparison => &[Slot::A, Slot::B],
                QuestionType::RuralUrban => &[],
            };
            if slots != expected {
                return Err(Error::Config(format!(
                    "template {:?} has placeholders {slots:?}, {} questions need {expected:?}",
                    t.text, t.qtype
                )));
            }
            if (t.qtype == QuestionType::Comparison) != t.op.is_some() {
                return Err(Error::Config(format!(
                    "template {:?}: a comparison operator is required exactly for comparison templates",
                    t.text
                )));
            }
            let id = next_id.entry(t.qtype).or_default();
            compiled.push(Compiled {
                template: t,
                pieces,
                id: *id,
            });
            *id += 1;
        }
        let table = Self { compiled };
        for q in QuestionType::ALL {
            let ops: Vec<Option<ComparisonOp>> = if q == QuestionType::Comparison {
                ComparisonOp::ALL.into_iter().map(Some).collect()
            } else {
                vec![None]
            };
            for op in ops {
                if table.candidates(q, op).next().is_none() {
                    return Err(Error::Config(format!("no template for {q} {op:?}")));
                }
            }
        }
        Ok(table)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let templates: Vec<Template> = serde_json::from_str(text).map_err(|e| Error::json(&e))?;
        Self::new(templates)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn templates(&self) -> impl Iterator<Item = &Template> {
        self.compiled.iter().map(|c| &c.template)
    }

    fn candidates(&self, qtype: QuestionType, op: Option<ComparisonOp>) -> impl Iterator<Item = &Compiled> {
        self.compiled
            .iter()
            .filter(move |c| c.template.qtype == qtype && c.template.op == op)
    }

    /// Picks a template uniformly among those of `qtype` (and `op`) and fills
    /// it. Returns the text and the template id.
    pub fn instantiate<D: DecisionSource + ?Sized>(
        &self,
        qtype: QuestionType,
        op: Option<ComparisonOp>,
        first: Option<&ElementSpec>,
        second: Option<&ElementSpec>,
        catalog: &ElementCatalog,
        rng: &mut D,
    ) -> Result<(String, usize)> {
        let candidates: Vec<&Compiled> = self.candidates(qtype, op).collect();
        if candidates.is_empty() {
            return Err(Error::Config(format!("no template for {qtype} {op:?}")));
        }
        let chosen = candidates[rng.pick(candidates.len())];
        let text = render(&chosen.pieces, first, second, catalog)?;
        Ok((text, chosen.id))
    }

    /// Renders a specific template (by question type and id).
    pub fn render_by_id(
        &self,
        qtype: QuestionType,
        id: usize,
        first: Option<&ElementSpec>,
        second: Option<&ElementSpec>,
        catalog: &ElementCatalog,
    ) -> Result<String> {
        let c = self
            .compiled
            .iter()
            .find(|c| c.template.qtype == qtype && c.id == id)
            .ok_or_else(|| Error::Config(format!("no {qtype} template with id {id}")))?;
        render(&c.pieces, first, second, catalog)
    }
}

impl Default for TemplateTable {
    fn default() -> Self {
        Self::from_json(include_str!("../../data/templates.json")).expect("built-in templates are valid")
    }
}

fn article_for(word: &str) -> &'static str {
    match word.chars().next().map(|c| c.to_ascii_lowercase()) {
        Some('a' | 'e' | 'i' | 'o' | 'u') => "an",
        _ => "a",
    }
}

/// Renders an element as a noun phrase.
pub fn element_phrase(spec: &ElementSpec, catalog: &ElementCatalog, plural: bool) -> Result<String> {
    let entry = catalog
        .get(&spec.category)
        .ok_or_else(|| Error::Config(format!("unknown element category {}", spec.category)))?;
    let mut out = String::new();
    if let Some(attr) = spec.attribute {
        out.push_str(attr.word());
        out.push(' ');
    }
    out.push_str(if plural { &entry.plural } else { &entry.singular });
    if let Some(rel) = &spec.relation {
        if rel.element.relation.is_some() {
            return Err(Error::Precondition("relation clauses nest at most one level".into()));
        }
        let second = element_phrase(&rel.element, catalog, false)?;
        out.push(' ');
        out.push_str(rel.kind.phrase());
        out.push(' ');
        out.push_str(article_for(&second));
        out.push(' ');
        out.push_str(&second);
    }
    Ok(out)
}

fn render(
    pieces: &[Piece],
    first: Option<&ElementSpec>,
    second: Option<&ElementSpec>,
    catalog: &ElementCatalog,
) -> Result<String> {
    let mut out = String::new();
    for p in pieces {
        match p {
            Piece::Literal(s) => out.push_str(s),
            Piece::Element(slot, form) => {
                let spec = match slot {
                    Slot::E | Slot::A => first,
                    Slot::B => second,
                }
                .ok_or_else(|| Error::Precondition(format!("template needs element {slot:?}")))?;
                let phrase = element_phrase(spec, catalog, *form == Form::Plural)?;
                if *form == Form::Indefinite {
                    out.push_str(article_for(&phrase));
                    out.push(' ');
                }
                out.push_str(&phrase);
            }
        }
    }
    Ok(out)
}

/// Parses rendered questions back into specs.
#[derive(Debug, Clone)]
pub struct TemplateGrammar {
    patterns: Vec<(Regex, QuestionType, Option<ComparisonOp>, usize)>,
    singular: HashMap<String, String>,
    plural: HashMap<String, String>,
}

fn alternation<'a>(words: impl Iterator<Item = &'a str>) -> String {
    let mut words: Vec<&str> = words.collect();
    words.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    words.iter().map(|w| regex::escape(w)).collect::<Vec<_>>().join("|")
}

impl TemplateGrammar {
    pub fn new(table: &TemplateTable, catalog: &ElementCatalog) -> Self {
        let attrs = alternation(
            Shape::ALL
                .iter()
                .map(|s| s.as_str())
                .chain(SizeClass::ALL.iter().map(|s| s.as_str())),
        );
        let relations = alternation(Relation::ALL.iter().map(|r| r.phrase()));
        let sing = alternation(catalog.entries().iter().map(|e| e.singular.as_str()));
        let plur = alternation(catalog.entries().iter().map(|e| e.plural.as_str()));

        let element = |tag: &str, form: Form| {
            let (article, nouns) = match form {
                Form::Singular => ("", &sing),
                Form::Plural => ("", &plur),
                Form::Indefinite => ("(?:a|an) ", &sing),
            };
            format!(
                "{article}(?:(?P<{tag}_attr>{attrs}) )?(?P<{tag}_noun>{nouns})\
                 (?: (?P<{tag}_rel>{relations}) (?:a|an) (?:(?P<{tag}_rattr>{attrs}) )?(?P<{tag}_rnoun>{sing}))?"
            )
        };

        let patterns = table
            .compiled
            .iter()
            .map(|c| {
                let mut re = String::from("^");
                for p in &c.pieces {
                    match p {
                        Piece::Literal(s) => re.push_str(&regex::escape(s)),
                        Piece::Element(slot, form) => {
                            let tag = match slot {
                                Slot::E | Slot::A => "a",
                                Slot::B => "b",
                            };
                            re.push_str(&element(tag, *form));
                        }
                    }
                }
                re.push('$');
                let regex = Regex::new(&re).expect("generated grammar compiles");
                (regex, c.template.qtype, c.template.op, c.id)
            })
            .collect();

        let singular = catalog
            .entries()
            .iter()
            .map(|e| (e.singular.clone(), e.id.clone()))
            .collect();
        let plural = catalog
            .entries()
            .iter()
            .map(|e| (e.plural.clone(), e.id.clone()))
            .collect();
        Self {
            patterns,
            singular,
            plural,
        }
    }

    fn element(&self, caps: &regex::Captures<'_>, tag: &str) -> Option<ElementSpec> {
        let noun = caps.name(&format!("{tag}_noun"))?.as_str();
        let category = self.plural.get(noun).or_else(|| self.singular.get(noun))?;
        let mut spec = ElementSpec::new(category.clone());
        if let Some(a) = caps.name(&format!("{tag}_attr")) {
            spec.attribute = Some(Attribute::from_word(a.as_str())?);
        }
        if let Some(rel) = caps.name(&format!("{tag}_rel")) {
            let kind = Relation::ALL.into_iter().find(|r| r.phrase() == rel.as_str())?;
            let rnoun = caps.name(&format!("{tag}_rnoun"))?.as_str();
            let mut second = ElementSpec::new(self.singular.get(rnoun)?.clone());
            if let Some(a) = caps.name(&format!("{tag}_rattr")) {
                second.attribute = Some(Attribute::from_word(a.as_str())?);
            }
            spec = spec.with_relation(kind, second);
        }
        Some(spec)
    }

    /// Recovers the question spec behind a rendered text, trying templates
    /// in table order.
    pub fn parse(&self, text: &str) -> Option<QuestionSpec> {
        for (re, qtype, op, id) in &self.patterns {
            let Some(caps) = re.captures(text) else {
                continue;
            };
            let (element, second) = match qtype {
                QuestionType::RuralUrban => (None, None),
                QuestionType::Comparison => (Some(self.element(&caps, "a")?), Some(self.element(&caps, "b")?)),
                _ => (Some(self.element(&caps, "a")?), None),
            };
            return Some(QuestionSpec {
                qtype: *qtype,
                element,
                comparison_op: *op,
                second_element: second,
                template_id: *id,
                text: text.to_string(),
            });
        }
        None
    }
}
