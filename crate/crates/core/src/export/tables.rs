use crate::corpus::CountryRegistry;
use crate::counting::{CountScheme, CountVector, IncidenceMatrix};
use crate::network::{CooccurrenceMatrix, SimilarityMatrix};

use super::{csv_field, fmt6};

/// `country,iso3,scheme,value`, one block per vector in the given order.
/// Fractional values carry six decimals; `iso3` is empty for countries
/// missing from the registry.
pub fn counts_csv(vectors: &[&CountVector], registry: &CountryRegistry) -> String {
    let mut out = String::from("country,iso3,scheme,value\n");
    for v in vectors {
        for (country, value) in &v.values {
            let iso3 = registry.entry(country.as_str()).map(|e| e.iso3.as_str()).unwrap_or("");
            let rendered = match v.scheme {
                CountScheme::Fractional => crate::numeric::format_decimal(value, 6),
                _ => value.to_integer().to_string(),
            };
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_field(country.as_str()),
                csv_field(iso3),
                v.scheme,
                rendered
            ));
        }
    }
    out
}

/// Non-zero cells as `record_id,country,count`.
pub fn incidence_triples_csv(m: &IncidenceMatrix) -> String {
    let mut out = String::from("record_id,country,count\n");
    for (doc, country, n) in m.triples() {
        out.push_str(&format!("{},{},{}\n", csv_field(doc), csv_field(country.as_str()), n));
    }
    out
}

fn square<F: Fn(usize, usize) -> String>(names: &[String], value: F) -> String {
    let mut out = String::from("country");
    for n in names {
        out.push(',');
        out.push_str(&csv_field(n));
    }
    out.push('\n');
    for (i, n) in names.iter().enumerate() {
        out.push_str(&csv_field(n));
        for j in 0..names.len() {
            out.push(',');
            out.push_str(&value(i, j));
        }
        out.push('\n');
    }
    out
}

fn triples<F: Fn(usize, usize) -> Option<String>>(names: &[String], value: F) -> String {
    let mut out = String::from("country_a,country_b,value\n");
    for i in 0..names.len() {
        for j in i..names.len() {
            if let Some(v) = value(i, j) {
                out.push_str(&format!("{},{},{}\n", csv_field(&names[i]), csv_field(&names[j]), v));
            }
        }
    }
    out
}

fn names(countries: &[crate::corpus::Country]) -> Vec<String> {
    countries.iter().map(|c| c.to_string()).collect()
}

pub fn cooccurrence_square_csv(c: &CooccurrenceMatrix) -> String {
    square(&names(c.countries()), |i, j| c.get(i, j).to_string())
}

/// Upper triangle including the diagonal, non-zero entries only.
pub fn cooccurrence_triples_csv(c: &CooccurrenceMatrix) -> String {
    triples(&names(c.countries()), |i, j| {
        let v = c.get(i, j);
        (v > 0).then(|| v.to_string())
    })
}

pub fn similarity_square_csv(s: &SimilarityMatrix) -> String {
    square(&names(s.countries()), |i, j| fmt6(s.get(i, j)))
}

/// Upper triangle including the diagonal, non-zero entries only.
pub fn similarity_triples_csv(s: &SimilarityMatrix) -> String {
    triples(&names(s.countries()), |i, j| {
        let v = s.get(i, j);
        (v > 0.0).then(|| fmt6(v))
    })
}
