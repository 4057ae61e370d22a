use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::Country;
use crate::counting::IncidenceMatrix;

/// Which cell values enter `X^T X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellMode {
    /// Every nonzero cell counts as 1.
    #[default]
    Binary,
    /// Raw address counts.
    Raw,
}

/// Dense symmetric `C = X^T X` over the incidence matrix columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooccurrenceMatrix {
    countries: Vec<Country>,
    values: Vec<u64>,
}

impl CooccurrenceMatrix {
    pub fn countries(&self) -> &[Country] {
        &self.countries
    }

    pub fn n(&self) -> usize {
        self.countries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.values[i * self.n() + j]
    }
}

pub fn cooccurrence(m: &IncidenceMatrix, mode: CellMode) -> CooccurrenceMatrix {
    let n = m.n_countries();
    let rows: Vec<&[(usize, u32)]> = m.rows().collect();
    let values = rows
        .par_iter()
        .fold(
            || vec![0u64; n * n],
            |mut acc, row| {
                for &(a, va) in row.iter() {
                    for &(b, vb) in row.iter() {
                        acc[a * n + b] += match mode {
                            CellMode::Binary => 1,
                            CellMode::Raw => u64::from(va) * u64::from(vb),
                        };
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n * n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    CooccurrenceMatrix {
        countries: m.countries().to_vec(),
        values,
    }
}

/// Cosine (Ochiai) proximities between country columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    countries: Vec<Country>,
    values: Vec<f64>,
}

impl SimilarityMatrix {
    pub fn countries(&self) -> &[Country] {
        &self.countries
    }

    pub fn n(&self) -> usize {
        self.countries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n() + j]
    }

    pub fn index_of(&self, country: &str) -> Option<usize> {
        self.countries
            .binary_search_by(|c| c.as_str().cmp(country))
            .ok()
    }
}

/// `cos(i, j) = C_ij / sqrt(C_ii * C_jj)`; zero when the denominator is zero.
pub fn cosine_similarity(m: &IncidenceMatrix, mode: CellMode) -> SimilarityMatrix {
    let c = cooccurrence(m, mode);
    let n = c.n();
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let denom = ((c.get(i, i) as f64) * (c.get(j, j) as f64)).sqrt();
            let v = if denom > 0.0 {
                (c.get(i, j) as f64 / denom).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let v = if i == j && denom > 0.0 { 1.0 } else { v };
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
    }
    SimilarityMatrix {
        countries: c.countries,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{DocType, Document};
    use crate::counting::build_incidence;

    fn matrix(docs: &[&[&str]]) -> IncidenceMatrix {
        let docs: Vec<Document> = docs
            .iter()
            .enumerate()
            .map(|(i, cs)| {
                Document::new(format!("d{i}"), DocType::Article, cs.iter().map(|&c| (Country::from(c), 1)))
            })
            .collect();
        build_incidence(&docs).unwrap()
    }

    #[test]
    fn identical_columns() {
        let s = cosine_similarity(&matrix(&[&["A", "B"], &["A", "B"]]), CellMode::Binary);
        assert_eq!(s.get(0, 1), 1.0);
    }

    #[test]
    fn never_co_appearing() {
        let s = cosine_similarity(&matrix(&[&["A"], &["B"]]), CellMode::Binary);
        assert_eq!(s.get(0, 1), 0.0);
        assert_eq!(s.get(0, 0), 1.0);
    }

    #[test]
    fn two_thirds() {
        // A in docs 1..3, B in docs 2..4
        let m = matrix(&[&["A"], &["A", "B"], &["A", "B"], &["B"]]);
        let s = cosine_similarity(&m, CellMode::Binary);
        assert!((s.get(0, 1) - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn raw_mode_uses_address_counts() {
        let docs = [
            Document::new("x", DocType::Article, [(Country::from("A"), 3), (Country::from("B"), 2)]),
            Document::new("y", DocType::Article, [(Country::from("A"), 1)]),
        ];
        let m = build_incidence(&docs).unwrap();
        let c = cooccurrence(&m, CellMode::Raw);
        assert_eq!(c.get(0, 1), 6);
        assert_eq!(c.get(0, 0), 10);
        let s = cosine_similarity(&m, CellMode::Raw);
        assert!((s.get(0, 1) - 6.0 / (10.0f64 * 4.0).sqrt()).abs() < 1e-15);
    }
}
