use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::records::RawRecord;
use super::registry::{Country, CountryRegistry, Resolution};

/// The retained document types. Everything else (editorials, meeting
/// abstracts, corrections, ...) is dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DocType {
    Article,
    Review,
    Letter,
}

impl DocType {
    pub const ALL: [DocType; 3] = [DocType::Article, DocType::Review, DocType::Letter];

    pub fn as_str(self) -> &'static str {
        match self {
            DocType::Article => "Article",
            DocType::Review => "Review",
            DocType::Letter => "Letter",
        }
    }
}

impl fmt::Display for DocType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Case-insensitive mapping from document-type strings to [`DocType`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocTypeSynonyms {
    map: HashMap<String, DocType>,
}

impl Default for DocTypeSynonyms {
    fn default() -> Self {
        let mut s = DocTypeSynonyms { map: HashMap::new() };
        for t in DocType::ALL {
            s.insert(t.as_str(), t);
        }
        s
    }
}

impl DocTypeSynonyms {
    pub fn empty() -> Self {
        DocTypeSynonyms { map: HashMap::new() }
    }

    pub fn insert(&mut self, synonym: &str, doc_type: DocType) {
        self.map.insert(normalize_doc_type(synonym), doc_type);
    }

    pub fn classify(&self, raw: &str) -> Option<DocType> {
        self.map.get(&normalize_doc_type(raw)).copied()
    }
}

/// Lower-cases, trims, and strips a leading `@` marker ("@ Article").
fn normalize_doc_type(s: &str) -> String {
    let s = s.trim();
    let s = s.strip_prefix('@').unwrap_or(s);
    s.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// A retained record: one of the three document types with at least one
/// recognized country address.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub record_id: String,
    pub doc_type: DocType,
    pub pub_year: Option<i32>,
    pub country_addresses: BTreeMap<Country, u32>,
    pub total_addresses: u32,
}

impl Document {
    /// Builds a document from per-country address counts, dropping zero counts.
    pub fn new<C: Into<Country>>(
        record_id: impl Into<String>,
        doc_type: DocType,
        counts: impl IntoIterator<Item = (C, u32)>,
    ) -> Self {
        let mut country_addresses = BTreeMap::new();
        for (c, n) in counts {
            if n > 0 {
                *country_addresses.entry(c.into()).or_insert(0) += n;
            }
        }
        let total_addresses = country_addresses.values().sum();
        Document {
            record_id: record_id.into(),
            doc_type,
            pub_year: None,
            country_addresses,
            total_addresses,
        }
    }

    pub fn is_international(&self) -> bool {
        self.country_addresses.len() >= 2
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub total_records: u64,
    pub retained: u64,
    pub dropped_by_type: u64,
    pub dropped_no_address: u64,
    /// Address lines whose country could not be resolved, over records of a
    /// retained type.
    pub unrecognized_occurrences: u64,
    pub unrecognized_names: BTreeMap<String, u64>,
}

enum Outcome {
    Retained(Document, Vec<String>),
    WrongType,
    NoAddress(Vec<String>),
}

fn classify(record: &RawRecord, registry: &CountryRegistry, synonyms: &DocTypeSynonyms) -> Outcome {
    let Some(doc_type) = synonyms.classify(&record.doc_type) else {
        return Outcome::WrongType;
    };
    let mut counts: BTreeMap<Country, u32> = BTreeMap::new();
    let mut unrecognized = Vec::new();
    for line in &record.address_lines {
        match registry.resolve_country(line) {
            Resolution::Country(c) => *counts.entry(c).or_insert(0) += 1,
            Resolution::Unrecognized(raw) => unrecognized.push(raw),
        }
    }
    if counts.is_empty() {
        return Outcome::NoAddress(unrecognized);
    }
    let mut doc = Document::new(record.record_id.clone(), doc_type, counts);
    doc.pub_year = record.pub_year;
    Outcome::Retained(doc, unrecognized)
}

/// Keeps records of a retained type that carry at least one recognized
/// country address, in input order.
pub fn filter_documents(
    records: &[RawRecord],
    registry: &CountryRegistry,
    synonyms: &DocTypeSynonyms,
) -> (Vec<Document>, FilterReport) {
    let outcomes: Vec<Outcome> = records
        .par_iter()
        .map(|r| classify(r, registry, synonyms))
        .collect();

    let mut report = FilterReport {
        total_records: records.len() as u64,
        ..Default::default()
    };
    let mut documents = Vec::new();
    let tally = |report: &mut FilterReport, names: Vec<String>| {
        for n in names {
            report.unrecognized_occurrences += 1;
            *report.unrecognized_names.entry(n).or_insert(0) += 1;
        }
    };
    for outcome in outcomes {
        match outcome {
            Outcome::Retained(doc, names) => {
                report.retained += 1;
                tally(&mut report, names);
                documents.push(doc);
            }
            Outcome::WrongType => report.dropped_by_type += 1,
            Outcome::NoAddress(names) => {
                report.dropped_no_address += 1;
                tally(&mut report, names);
            }
        }
    }
    (documents, report)
}
