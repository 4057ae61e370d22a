//! Seeded synthetic corpora shaped like a citation-index export.
//!
//! Country productivity follows a Zipf-like law by rank. Ranks start with a
//! fixed list of large producers and continue through the rest of the
//! registry in seed-shuffled order. Each document has a lead country; with probability
//! `international_prob` it gains further countries drawn from the same law.
//! Small fractions of records are non-citable types, carry no address, or name
//! a country the registry does not know, so the filtering stage has work to do.

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{Country, CountryRegistry, RawRecord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthConfig {
    pub n_docs: usize,
    pub n_countries: usize,
    pub zipf_exponent: f64,
    pub international_prob: f64,
    pub max_countries_per_doc: usize,
    pub max_addresses_per_country: u32,
    pub non_citable_prob: f64,
    pub no_address_prob: f64,
    pub unknown_country_prob: f64,
    pub year: i32,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_docs: 400,
            n_countries: 30,
            zipf_exponent: 1.0,
            international_prob: 0.25,
            max_countries_per_doc: 4,
            max_addresses_per_country: 3,
            non_citable_prob: 0.05,
            no_address_prob: 0.02,
            unknown_country_prob: 0.01,
            year: 2011,
            seed: 2011,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self, registry: &CountryRegistry) -> Result<()> {
        let prob = |name: &str, p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must lie in [0, 1], got {p}")))
            }
        };
        prob("international_prob", self.international_prob)?;
        prob("non_citable_prob", self.non_citable_prob)?;
        prob("no_address_prob", self.no_address_prob)?;
        prob("unknown_country_prob", self.unknown_country_prob)?;
        if self.n_countries == 0 || self.n_countries > registry.entries().len() {
            return Err(Error::InvalidArgument(format!(
                "n_countries must be between 1 and {}",
                registry.entries().len()
            )));
        }
        if self.max_countries_per_doc == 0 || self.max_addresses_per_country == 0 {
            return Err(Error::InvalidArgument("per-document maxima must be positive".into()));
        }
        if !(self.zipf_exponent.is_finite() && self.zipf_exponent >= 0.0) {
            return Err(Error::InvalidArgument("zipf_exponent must be finite and non-negative".into()));
        }
        Ok(())
    }
}

const LEADING: [&str; 30] = [
    "USA", "CHINA", "GERMANY", "UK", "JAPAN", "FRANCE", "CANADA", "ITALY", "SPAIN", "INDIA",
    "SOUTH KOREA", "AUSTRALIA", "NETHERLANDS", "BRAZIL", "SWITZERLAND", "SWEDEN", "POLAND", "TAIWAN",
    "BELGIUM", "TURKEY", "IRAN", "DENMARK", "ISRAEL", "AUSTRIA", "RUSSIA", "FINLAND", "NORWAY",
    "MEXICO", "PORTUGAL", "INDONESIA",
];

const CITABLE: [&str; 3] = ["Article", "Review", "Letter"];
const NON_CITABLE: [&str; 3] = ["Editorial Material", "Meeting Abstract", "Correction"];
const UNKNOWN: [&str; 2] = ["ATLANTIS", "ELDORADO"];

/// Spellings an address may use for a country: the canonical name plus every
/// alias pointing at it.
fn spellings(registry: &CountryRegistry, country: &Country) -> Vec<String> {
    let mut out = vec![country.as_str().to_string()];
    out.extend(
        registry
            .aliases()
            .iter()
            .filter(|(_, target)| *target == country)
            .map(|(alias, _)| alias.clone()),
    );
    out
}

/// "PEOPLES R CHINA" -> "Peoples R China"; short all-caps names stay as is.
fn display_case(name: &str) -> String {
    if name.len() <= 3 {
        return name.to_string();
    }
    name.split(' ')
        .map(|w| {
            let mut cs = w.chars();
            match cs.next() {
                Some(first) => first.to_string() + &cs.as_str().to_lowercase(),
                None => String::new(),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn address(rng: &mut ChaCha8Rng, spelling: &str) -> String {
    let inst = rng.gen_range(1..=40);
    let dept = rng.gen_range(1..=9);
    if spelling == "USA" {
        let zip = rng.gen_range(10_000..99_999);
        format!("Univ {inst}, Dept {dept}, City {inst}, ST {zip} USA")
    } else {
        format!("Univ {inst}, Dept {dept}, City {inst}, {}", display_case(spelling))
    }
}

pub fn generate(cfg: &SynthConfig, registry: &CountryRegistry) -> Result<Vec<RawRecord>> {
    cfg.validate(registry)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pool: Vec<Country> = LEADING
        .iter()
        .filter(|c| registry.contains(c))
        .map(|&c| Country::from(c))
        .collect();
    let mut rest: Vec<Country> = registry
        .entries()
        .iter()
        .map(|e| e.canonical_name.clone())
        .filter(|c| !pool.contains(c))
        .collect();
    rest.shuffle(&mut rng);
    pool.extend(rest);
    pool.truncate(cfg.n_countries);
    let weights: Vec<f64> = (1..=pool.len())
        .map(|rank| (rank as f64).powf(-cfg.zipf_exponent))
        .collect();
    let pick = WeightedIndex::new(&weights).expect("weights are positive");
    let variants: Vec<Vec<String>> = pool.iter().map(|c| spellings(registry, c)).collect();

    let mut records = Vec::with_capacity(cfg.n_docs);
    for i in 0..cfg.n_docs {
        let doc_type = if rng.gen_bool(cfg.non_citable_prob) {
            NON_CITABLE.choose(&mut rng).unwrap()
        } else {
            CITABLE.choose(&mut rng).unwrap()
        };
        let mut address_lines = Vec::new();
        if !rng.gen_bool(cfg.no_address_prob) {
            let mut countries = vec![pick.sample(&mut rng)];
            if cfg.max_countries_per_doc > 1 && pool.len() > 1 && rng.gen_bool(cfg.international_prob) {
                let extra = rng.gen_range(1..cfg.max_countries_per_doc.min(pool.len()));
                while countries.len() < extra + 1 {
                    let c = pick.sample(&mut rng);
                    if !countries.contains(&c) {
                        countries.push(c);
                    }
                }
            }
            for c in countries {
                for _ in 0..rng.gen_range(1..=cfg.max_addresses_per_country) {
                    let spelling = variants[c].choose(&mut rng).unwrap();
                    address_lines.push(address(&mut rng, spelling));
                }
            }
            if rng.gen_bool(cfg.unknown_country_prob) {
                let name = UNKNOWN.choose(&mut rng).unwrap();
                address_lines.push(address(&mut rng, name));
            }
        }
        records.push(RawRecord {
            record_id: format!("SYN:{:07}", i + 1),
            doc_type: doc_type.to_string(),
            pub_year: Some(cfg.year),
            address_lines,
            title: Some(format!("Synthetic record {}", i + 1)),
        });
    }
    Ok(records)
}
