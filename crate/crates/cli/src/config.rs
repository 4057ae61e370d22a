//! Declarative run configuration, loadable from TOML and overridable by flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use intcollab_core::corpus::{DocType, DocTypeSynonyms, InputFormat, ParseMode};
use intcollab_core::export::{SizeAttr, SizeRule};
use intcollab_core::layout::{EdgeLengthTransform, LayoutConfig};
use intcollab_core::network::{CellMode, Comparator, ListMode};
use intcollab_core::numeric::parse_decimal;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

/// A non-negative decimal threshold kept in its written form, e.g. `"227.9"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decimal(String);

impl Decimal {
    pub fn parse(s: &str) -> Result<Self, String> {
        let value = parse_decimal(s).ok_or_else(|| format!("`{s}` is not a decimal number"))?;
        if value < BigRational::from_integer(0.into()) {
            return Err(format!("`{s}` must not be negative"));
        }
        Ok(Decimal(s.trim().to_string()))
    }

    pub fn value(&self) -> BigRational {
        parse_decimal(&self.0).expect("validated on construction")
    }
}

impl Default for Decimal {
    fn default() -> Self {
        Decimal("0".into())
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for Decimal {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Decimal::parse(s)
    }
}

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Float(f64),
            Text(String),
        }
        let text = match Raw::deserialize(d)? {
            Raw::Int(i) => i.to_string(),
            Raw::Float(f) => f.to_string(),
            Raw::Text(s) => s,
        };
        Decimal::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegistryPaths {
    pub countries: PathBuf,
    pub aliases: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThresholdConfig {
    pub min_node_fractional: Decimal,
    pub min_edge_weight: u64,
    pub comparator: Comparator,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoreConfig {
    pub k: usize,
    pub min_edge_weight: u64,
}

impl Default for CoreConfig {
    fn default() -> Self {
        CoreConfig { k: 1, min_edge_weight: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EgoConfig {
    pub focus: Option<String>,
    pub min_edge_weight: u64,
    pub include_alter_ties: bool,
}

impl Default for EgoConfig {
    fn default() -> Self {
        EgoConfig {
            focus: None,
            min_edge_weight: 1,
            include_alter_ties: true,
        }
    }
}

/// Country list applied to the cosine map; empty means every country.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ListConfig {
    pub mode: ListMode,
    pub countries: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CosineConfig {
    pub cell_mode: CellMode,
    /// Pairs at or below this cosine get no edge in the map.
    pub min_similarity: f64,
}

impl Default for CosineConfig {
    fn default() -> Self {
        CosineConfig {
            cell_mode: CellMode::Binary,
            min_similarity: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExportConfig {
    pub size_attr: SizeAttr,
    pub size_rule: SizeRule,
    pub great_circle: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub input: Vec<PathBuf>,
    pub format: InputFormat,
    pub parse_mode: ParseMode,
    pub output_dir: PathBuf,
    pub registry: Option<RegistryPaths>,
    /// Extra document-type spellings, e.g. `"Proceedings Paper" = "Article"`.
    pub doc_types: BTreeMap<String, DocType>,
    pub threshold: ThresholdConfig,
    pub core: CoreConfig,
    pub ego: EgoConfig,
    pub list: ListConfig,
    pub cosine: CosineConfig,
    pub layout: LayoutConfig,
    pub export: ExportConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            input: Vec::new(),
            format: InputFormat::TaggedField,
            parse_mode: ParseMode::Lenient,
            output_dir: PathBuf::from("out"),
            registry: None,
            doc_types: BTreeMap::new(),
            threshold: ThresholdConfig::default(),
            core: CoreConfig::default(),
            ego: EgoConfig::default(),
            list: ListConfig::default(),
            cosine: CosineConfig::default(),
            layout: LayoutConfig::default(),
            export: ExportConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.layout.validate().map_err(|e| CliError::Config(e.to_string()))?;
        if self.layout.edge_length_transform == EdgeLengthTransform::OneMinusSimilarity {
            return Err(CliError::Config(
                "one_minus_similarity applies to cosine maps only; pick inverse_log_weight or unit".into(),
            ));
        }
        if !(0.0..1.0).contains(&self.cosine.min_similarity) {
            return Err(CliError::Config("cosine.min_similarity must lie in [0, 1)".into()));
        }
        let rule = self.export.size_rule;
        if !(rule.s_min.is_finite() && rule.s_scale.is_finite() && rule.s_scale > 0.0) {
            return Err(CliError::Config("size_rule needs finite s_min and positive s_scale".into()));
        }
        Ok(())
    }

    pub fn synonyms(&self) -> DocTypeSynonyms {
        let mut s = DocTypeSynonyms::default();
        for (name, t) in &self.doc_types {
            s.insert(name, *t);
        }
        s
    }

    /// Layout settings for cosine maps: same knobs, similarity-based lengths.
    pub fn cosine_layout(&self) -> LayoutConfig {
        LayoutConfig {
            edge_length_transform: EdgeLengthTransform::OneMinusSimilarity,
            ..self.layout
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_round_trip() {
        let text = r#"
            input = ["corpus.txt"]
            format = "delimited"
            output_dir = "results"

            [doc_types]
            "Proceedings Paper" = "Article"

            [threshold]
            min_node_fractional = 227.9
            min_edge_weight = 500
            comparator = "gt"

            [ego]
            focus = "INDONESIA"

            [layout]
            seed = 7
        "#;
        let cfg: RunConfig = toml::from_str(text).unwrap();
        assert_eq!(cfg.threshold.min_node_fractional.to_string(), "227.9");
        assert_eq!(cfg.threshold.comparator, Comparator::Gt);
        assert_eq!(cfg.layout.seed, 7);
        assert_eq!(cfg.layout.tolerance, 1e-4);
        assert_eq!(cfg.synonyms().classify("proceedings paper"), Some(DocType::Article));
        let back: RunConfig = toml::from_str(&toml::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_unknown_keys_and_negative_thresholds() {
        assert!(toml::from_str::<RunConfig>("colour = 1").is_err());
        assert!(toml::from_str::<RunConfig>("[threshold]\nmin_node_fractional = \"-1\"").is_err());
    }
}
