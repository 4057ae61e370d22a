//! Document-by-country incidence matrix and integer, binary and fractional
//! country counts.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::corpus::{Country, DocType, Document, FilterReport};
use crate::error::{Error, Result};
use crate::numeric::{format_decimal, format_percent};

/// Sparse documents x countries matrix of address counts.
///
/// Rows follow the input document order; columns are sorted by canonical
/// country name and only contain countries present in at least one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    docs: Vec<String>,
    doc_types: Vec<DocType>,
    countries: Vec<Country>,
    /// Per row, `(country index, address count)` sorted by country index.
    rows: Vec<Vec<(usize, u32)>>,
}

impl IncidenceMatrix {
    pub fn docs(&self) -> &[String] {
        &self.docs
    }

    pub fn doc_types(&self) -> &[DocType] {
        &self.doc_types
    }

    pub fn countries(&self) -> &[Country] {
        &self.countries
    }

    pub fn n_docs(&self) -> usize {
        self.docs.len()
    }

    pub fn n_countries(&self) -> usize {
        self.countries.len()
    }

    pub fn country_index(&self, country: &str) -> Option<usize> {
        self.countries
            .binary_search_by(|c| c.as_str().cmp(country))
            .ok()
    }

    pub fn row(&self, doc: usize) -> &[(usize, u32)] {
        &self.rows[doc]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(usize, u32)]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn cell(&self, doc: usize, country: usize) -> u32 {
        self.rows[doc]
            .binary_search_by_key(&country, |&(c, _)| c)
            .map(|i| self.rows[doc][i].1)
            .unwrap_or(0)
    }

    pub fn row_sum(&self, doc: usize) -> u32 {
        self.rows[doc].iter().map(|&(_, n)| n).sum()
    }

    /// Non-zero cells as `(record_id, country, count)`.
    pub fn triples(&self) -> impl Iterator<Item = (&str, &Country, u32)> {
        self.rows.iter().enumerate().flat_map(move |(d, row)| {
            row.iter()
                .map(move |&(c, n)| (self.docs[d].as_str(), &self.countries[c], n))
        })
    }
}

pub fn build_incidence(documents: &[Document]) -> Result<IncidenceMatrix> {
    if documents.is_empty() {
        return Err(Error::EmptyCorpus("no documents to build an incidence matrix from"));
    }
    let mut seen = HashSet::with_capacity(documents.len());
    for d in documents {
        if !seen.insert(d.record_id.as_str()) {
            return Err(Error::DuplicateRecord(d.record_id.clone()));
        }
    }
    let countries: Vec<Country> = documents
        .iter()
        .flat_map(|d| d.country_addresses.keys())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .cloned()
        .collect();
    let index: HashMap<&str, usize> = countries
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_str(), i))
        .collect();
    let rows = documents
        .par_iter()
        .map(|d| {
            // BTreeMap iteration is sorted by name, which matches column order.
            d.country_addresses
                .iter()
                .filter(|(_, &n)| n > 0)
                .map(|(c, &n)| (index[c.as_str()], n))
                .collect()
        })
        .collect();
    Ok(IncidenceMatrix {
        docs: documents.iter().map(|d| d.record_id.clone()).collect(),
        doc_types: documents.iter().map(|d| d.doc_type).collect(),
        countries,
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountScheme {
    /// Whole counting: one credit per participating country per document.
    Integer,
    /// Column sums of the binarized incidence matrix.
    Binary,
    /// Each document's unit credit split by address share.
    Fractional,
}

impl CountScheme {
    pub fn as_str(self) -> &'static str {
        match self {
            CountScheme::Integer => "integer",
            CountScheme::Binary => "binary",
            CountScheme::Fractional => "fractional",
        }
    }
}

impl fmt::Display for CountScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-country credit under one counting scheme. Values are exact rationals;
/// integer schemes only ever hold whole numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVector {
    pub scheme: CountScheme,
    pub values: BTreeMap<Country, BigRational>,
}

impl CountVector {
    pub fn get(&self, country: &str) -> Option<&BigRational> {
        self.values.get(country)
    }

    pub fn total(&self) -> BigRational {
        self.values.values().fold(BigRational::zero(), |acc, v| acc + v)
    }

    /// Whole-number value, for integer schemes.
    pub fn get_whole(&self, country: &str) -> Option<u64> {
        self.get(country)
            .filter(|v| v.is_integer())
            .and_then(|v| v.to_integer().to_u64())
    }

    /// Rendered value: integers plainly, fractions with `decimals` digits.
    pub fn render(&self, country: &str, decimals: u32) -> Option<String> {
        let v = self.get(country)?;
        Some(match self.scheme {
            CountScheme::Fractional => format_decimal(v, decimals),
            _ => v.to_integer().to_string(),
        })
    }
}

pub fn integer_counts(m: &IncidenceMatrix) -> CountVector {
    let mut counts = vec![0u64; m.n_countries()];
    for row in m.rows() {
        for &(c, n) in row {
            if n >= 1 {
                counts[c] += 1;
            }
        }
    }
    whole_vector(m, CountScheme::Integer, counts)
}

pub fn binary_counts(m: &IncidenceMatrix) -> CountVector {
    let counts = (0..m.n_countries())
        .map(|c| (0..m.n_docs()).map(|d| u64::from(m.cell(d, c).min(1))).sum())
        .collect();
    whole_vector(m, CountScheme::Binary, counts)
}

fn whole_vector(m: &IncidenceMatrix, scheme: CountScheme, counts: Vec<u64>) -> CountVector {
    CountVector {
        scheme,
        values: m
            .countries()
            .iter()
            .cloned()
            .zip(counts.into_iter().map(|n| BigRational::from_integer(n.into())))
            .collect(),
    }
}

/// Country `c` receives `sum_d cell(d, c) / rowsum(d)`, exactly.
pub fn fractional_counts(m: &IncidenceMatrix) -> CountVector {
    // Per country, sum numerators grouped by row-sum denominator; the merge is
    // commutative so the parallel fold is order independent.
    type Partial = Vec<BTreeMap<u32, u64>>;
    let n = m.n_countries();
    let partial: Partial = (0..m.n_docs())
        .into_par_iter()
        .fold(
            || vec![BTreeMap::new(); n],
            |mut acc: Partial, d| {
                let total = m.row_sum(d);
                for &(c, k) in m.row(d) {
                    *acc[c].entry(total).or_insert(0) += u64::from(k);
                }
                acc
            },
        )
        .reduce(
            || vec![BTreeMap::new(); n],
            |mut a, b| {
                for (ma, mb) in a.iter_mut().zip(b) {
                    for (den, num) in mb {
                        *ma.entry(den).or_insert(0) += num;
                    }
                }
                a
            },
        );
    let values = m
        .countries()
        .iter()
        .cloned()
        .zip(partial.into_iter().map(|by_den| {
            by_den.into_iter().fold(BigRational::zero(), |acc, (den, num)| {
                acc + BigRational::new(BigInt::from(num), BigInt::from(den))
            })
        }))
        .collect();
    CountVector {
        scheme: CountScheme::Fractional,
        values,
    }
}

/// An exact ratio kept as its unreduced counts, serialized as `"n/d"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Share {
    pub numerator: u64,
    pub denominator: u64,
}

impl Share {
    pub fn new(numerator: u64, denominator: u64) -> Self {
        Share { numerator, denominator }
    }

    /// Percentage rounded half-even to one decimal.
    pub fn percent_display(&self) -> String {
        format_percent(self.numerator, self.denominator, 1).unwrap_or_else(|| "0.0".into())
    }
}

impl fmt::Display for Share {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl Serialize for Share {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Share {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let (n, den) = s
            .split_once('/')
            .ok_or_else(|| serde::de::Error::custom("expected `n/d`"))?;
        Ok(Share {
            numerator: n.trim().parse().map_err(serde::de::Error::custom)?,
            denominator: den.trim().parse().map_err(serde::de::Error::custom)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub n_records: u64,
    pub n_documents: u64,
    pub per_type: BTreeMap<DocType, u64>,
    pub n_international_docs: u64,
    pub share_international_docs: Share,
    pub n_addresses_total: u64,
    pub n_addresses_international: u64,
    pub share_addresses_international: Share,
    pub n_countries: u64,
}

impl CorpusSummary {
    /// Assembles a summary from totals, deriving both shares.
    #[allow(clippy::too_many_arguments)]
    pub fn from_totals(
        n_records: u64,
        n_documents: u64,
        per_type: BTreeMap<DocType, u64>,
        n_international_docs: u64,
        n_addresses_total: u64,
        n_addresses_international: u64,
        n_countries: u64,
    ) -> Result<Self> {
        if n_documents == 0 {
            return Err(Error::EmptyCorpus("shares are undefined without documents"));
        }
        Ok(CorpusSummary {
            n_records,
            n_documents,
            per_type,
            n_international_docs,
            share_international_docs: Share::new(n_international_docs, n_documents),
            n_addresses_total,
            n_addresses_international,
            share_addresses_international: Share::new(n_addresses_international, n_addresses_total),
            n_countries,
        })
    }
}

fn empty_per_type() -> BTreeMap<DocType, u64> {
    DocType::ALL.iter().map(|&t| (t, 0)).collect()
}

pub fn summarize(documents: &[Document], report: &FilterReport) -> Result<CorpusSummary> {
    let mut per_type = empty_per_type();
    let mut intl = 0;
    let mut addresses = 0;
    let mut addresses_intl = 0;
    let mut countries = BTreeSet::new();
    for d in documents {
        *per_type.entry(d.doc_type).or_insert(0) += 1;
        let total = u64::from(d.total_addresses);
        addresses += total;
        if d.is_international() {
            intl += 1;
            addresses_intl += total;
        }
        countries.extend(d.country_addresses.keys());
    }
    CorpusSummary::from_totals(
        report.total_records,
        documents.len() as u64,
        per_type,
        intl,
        addresses,
        addresses_intl,
        countries.len() as u64,
    )
}

/// Same figures as [`summarize`], computed from the incidence matrix.
pub fn summarize_matrix(m: &IncidenceMatrix, report: &FilterReport) -> Result<CorpusSummary> {
    let mut per_type = empty_per_type();
    for &t in m.doc_types() {
        *per_type.entry(t).or_insert(0) += 1;
    }
    let (intl, addresses, addresses_intl) = (0..m.n_docs()).fold((0, 0, 0), |(i, a, ai), d| {
        let sum = u64::from(m.row_sum(d));
        if m.row(d).len() >= 2 {
            (i + 1, a + sum, ai + sum)
        } else {
            (i, a + sum, ai)
        }
    });
    CorpusSummary::from_totals(
        report.total_records,
        m.n_docs() as u64,
        per_type,
        intl,
        addresses,
        addresses_intl,
        m.n_countries() as u64,
    )
}

/// Average number of co-authoring countries behind one fractional paper:
/// integer count / fractional count.
pub fn coauthorship_ratio(integer: u64, fractional: &BigRational) -> Option<BigRational> {
    if fractional.is_zero() {
        return None;
    }
    Some(BigRational::from_integer(integer.into()) / fractional)
}

/// [`coauthorship_ratio`] rendered to one decimal, e.g. `"2.5"`.
pub fn coauthorship_ratio_display(integer: u64, fractional: &BigRational) -> Option<String> {
    coauthorship_ratio(integer, fractional).map(|r| format_decimal(&r, 1))
}
