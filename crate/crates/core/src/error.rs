use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid registry: {0}")]
    Registry(String),

    #[error("duplicate record id `{0}`")]
    DuplicateRecord(String),

    #[error("empty corpus: {0}")]
    EmptyCorpus(&'static str),

    #[error("country universes differ: {0}")]
    CountryMismatch(String),

    #[error("unknown country `{0}`")]
    UnknownCountry(String),

    #[error("graph is disconnected ({components} components); lay out components separately")]
    Disconnected { components: usize },

    #[error("no centroid for country `{0}`")]
    MissingCentroid(String),

    #[error("layout has no coordinate for `{0}`")]
    MissingCoordinate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
