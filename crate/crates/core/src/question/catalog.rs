use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ingest::{GeoObject, Layer};

/// One element category: a layer plus an optional subtype filter, with the
/// nouns used to render it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub id: String,
    pub layer: Layer,
    /// `None` accepts every subtype of the layer.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subtypes: Option<BTreeSet<String>>,
    pub singular: String,
    pub plural: String,
}

impl CatalogEntry {
    pub fn matches(&self, object: &GeoObject) -> bool {
        object.layer == self.layer && self.subtypes.as_ref().is_none_or(|s| s.contains(&object.subtype))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ElementCatalog {
    entries: Vec<CatalogEntry>,
}

impl ElementCatalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Config("element catalog is empty".into()));
        }
        let mut ids = HashSet::new();
        let mut nouns = HashSet::new();
        for e in &entries {
            if !ids.insert(e.id.as_str()) {
                return Err(Error::Config(format!("duplicate catalog id {}", e.id)));
            }
            if e.subtypes.as_ref().is_some_and(BTreeSet::is_empty) {
                return Err(Error::Config(format!(
                    "catalog entry {} has an empty subtype filter",
                    e.id
                )));
            }
            for noun in [&e.singular, &e.plural] {
                if noun.trim().is_empty() || noun.trim() != noun {
                    return Err(Error::Config(format!(
                        "catalog entry {} has a malformed noun {noun:?}",
                        e.id
                    )));
                }
            }
            // Nouns must be unambiguous so question texts parse back.
            if !nouns.insert(("s", e.singular.as_str())) || !nouns.insert(("p", e.plural.as_str())) {
                return Err(Error::Config(format!("catalog entry {} reuses a noun", e.id)));
            }
        }
        Ok(Self { entries })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<CatalogEntry> = serde_json::from_str(text).map_err(|e| Error::json(&e))?;
        Self::new(entries)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Hex SHA-256 of the canonical JSON form, recorded in manifests.
    pub fn content_hash(&self) -> String {
        let json = serde_json::to_vec(&self.entries).expect("catalog serializes");
        Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl Default for ElementCatalog {
    fn default() -> Self {
        Self::from_json(include_str!("../../data/catalog.json")).expect("built-in catalog is valid")
    }
}
