//! Canonical country list, alias table and address-to-country resolution.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const BUNDLED_COUNTRIES: &str = include_str!("../../data/countries.csv");
const BUNDLED_ALIASES: &str = include_str!("../../data/aliases.csv");

/// Constituent names that must resolve to the single `UK` entity.
pub const UK_CONSTITUENTS: [&str; 4] = ["ENGLAND", "SCOTLAND", "WALES", "NORTH IRELAND"];

/// Final words that identify a country even when preceded by a state code
/// and postal code, as in `"..., NY 10012 USA"`.
const COUNTRY_SUFFIXES: [&str; 1] = ["USA"];

/// Canonical, upper-case country name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Country(String);

impl Country {
    pub fn new(name: impl Into<String>) -> Self {
        Country(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Country {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Country {
    fn from(s: &str) -> Self {
        Country(s.to_string())
    }
}

impl std::borrow::Borrow<str> for Country {
    fn borrow(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountryEntry {
    pub canonical_name: Country,
    pub iso3: String,
    pub latitude: f64,
    pub longitude: f64,
}

/// Outcome of resolving one address line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    Country(Country),
    Unrecognized(String),
}

#[derive(Debug, Clone)]
pub struct CountryRegistry {
    entries: Vec<CountryEntry>,
    index: HashMap<String, usize>,
    aliases: BTreeMap<String, Country>,
    invalid_names: BTreeSet<String>,
}

#[derive(Deserialize)]
struct AliasRow {
    alias: String,
    canonical_name: Option<String>,
}

impl CountryRegistry {
    /// The registry shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_readers(BUNDLED_COUNTRIES.as_bytes(), BUNDLED_ALIASES.as_bytes())
            .expect("bundled registry is valid")
    }

    pub fn from_paths(countries: &Path, aliases: &Path) -> Result<Self> {
        Self::from_readers(std::fs::File::open(countries)?, std::fs::File::open(aliases)?)
    }

    /// Loads a registry from a `canonical_name,iso3,latitude,longitude` CSV and an
    /// `alias,canonical_name` CSV. An alias with an empty target marks a name as invalid.
    pub fn from_readers(countries: impl Read, aliases: impl Read) -> Result<Self> {
        let mut entries: Vec<CountryEntry> = csv::Reader::from_reader(countries)
            .deserialize()
            .collect::<std::result::Result<_, _>>()?;
        for e in &mut entries {
            e.canonical_name = Country(normalize_token(e.canonical_name.as_str()));
        }
        entries.sort_by(|a, b| a.canonical_name.cmp(&b.canonical_name));

        let mut alias_map = BTreeMap::new();
        let mut invalid_names = BTreeSet::new();
        for row in csv::Reader::from_reader(aliases).deserialize::<AliasRow>() {
            let row = row?;
            let alias = normalize_token(&row.alias);
            match row.canonical_name.map(|c| normalize_token(&c)) {
                Some(target) if !target.is_empty() => {
                    alias_map.insert(alias, Country(target));
                }
                _ => {
                    invalid_names.insert(alias);
                }
            }
        }
        Self::new(entries, alias_map, invalid_names)
    }

    pub fn new(
        mut entries: Vec<CountryEntry>,
        aliases: BTreeMap<String, Country>,
        invalid_names: BTreeSet<String>,
    ) -> Result<Self> {
        entries.sort_by(|a, b| a.canonical_name.cmp(&b.canonical_name));
        let mut index = HashMap::with_capacity(entries.len());
        for (i, e) in entries.iter().enumerate() {
            if index.insert(e.canonical_name.0.clone(), i).is_some() {
                return Err(Error::Registry(format!(
                    "duplicate canonical name `{}`",
                    e.canonical_name
                )));
            }
        }
        let registry = CountryRegistry {
            entries,
            index,
            aliases,
            invalid_names,
        };
        registry.validate()?;
        Ok(registry)
    }

    pub fn validate(&self) -> Result<()> {
        for e in &self.entries {
            if e.canonical_name.0.is_empty() {
                return Err(Error::Registry("empty canonical name".into()));
            }
            if !(-90.0..=90.0).contains(&e.latitude) || !(-180.0..=180.0).contains(&e.longitude) {
                return Err(Error::Registry(format!(
                    "centroid of `{}` out of range: ({}, {})",
                    e.canonical_name, e.latitude, e.longitude
                )));
            }
        }
        for (alias, target) in &self.aliases {
            if !self.index.contains_key(target.as_str()) {
                return Err(Error::Registry(format!(
                    "alias `{alias}` points to unknown country `{target}`"
                )));
            }
            if self.invalid_names.contains(alias) {
                return Err(Error::Registry(format!("`{alias}` is both an alias and invalid")));
            }
        }
        for name in UK_CONSTITUENTS {
            if let Some(target) = self.aliases.get(name) {
                if target.as_str() != "UK" {
                    return Err(Error::Registry(format!("`{name}` must alias to UK, not `{target}`")));
                }
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[CountryEntry] {
        &self.entries
    }

    pub fn aliases(&self) -> &BTreeMap<String, Country> {
        &self.aliases
    }

    pub fn invalid_names(&self) -> &BTreeSet<String> {
        &self.invalid_names
    }

    pub fn entry(&self, country: &str) -> Option<&CountryEntry> {
        self.index.get(country).map(|&i| &self.entries[i])
    }

    pub fn contains(&self, country: &str) -> bool {
        self.index.contains_key(country)
    }

    /// Looks up an already normalized name: aliases first, then canonical names.
    pub fn lookup(&self, name: &str) -> Option<Country> {
        if self.invalid_names.contains(name) {
            return None;
        }
        if let Some(c) = self.aliases.get(name) {
            return Some(c.clone());
        }
        self.entry(name).map(|e| e.canonical_name.clone())
    }

    /// Resolves the country of a free-text affiliation line from its trailing
    /// comma-separated token.
    pub fn resolve_country(&self, address_line: &str) -> Resolution {
        let token = country_token(address_line);
        if let Some(c) = self.lookup(&token) {
            return Resolution::Country(c);
        }
        if let Some(last) = token.split_whitespace().last() {
            if last != token && COUNTRY_SUFFIXES.contains(&last) {
                if let Some(c) = self.lookup(last) {
                    return Resolution::Country(c);
                }
            }
        }
        Resolution::Unrecognized(token)
    }
}

/// Upper-cases and trims surrounding whitespace and punctuation.
fn normalize_token(s: &str) -> String {
    s.trim_matches(|c: char| c.is_whitespace() || c.is_ascii_punctuation())
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_uppercase()
}

fn country_token(address_line: &str) -> String {
    let mut line = address_line.trim();
    // Drop a leading "[Author, A; Author, B]" group.
    if line.starts_with('[') {
        if let Some(end) = line.find(']') {
            line = &line[end + 1..];
        }
    }
    let last = line.rsplit(',').next().unwrap_or("");
    normalize_token(last)
}
