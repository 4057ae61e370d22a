//! Record parsing, document filtering and country resolution.

mod documents;
mod records;
mod registry;

pub use documents::{filter_documents, DocType, DocTypeSynonyms, Document, FilterReport};
pub use records::{
    parse_records, write_delimited, write_tagged, InputFormat, ParseIssue, ParseMode, ParseOutput,
    RawRecord,
};
pub use registry::{Country, CountryEntry, CountryRegistry, Resolution, UK_CONSTITUENTS};
