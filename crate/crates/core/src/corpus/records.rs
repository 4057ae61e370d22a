//! Readers and writers for bibliographic record files.
//!
//! Two layouts are understood. The tagged layout uses two-letter field tags:
//!
//! ```text
//! PT J
//! UT WOS:000001
//! TI A title that may continue
//!    on the next line
//! DT Article
//! PY 2011
//! C1 Univ Amsterdam, Amsterdam, Netherlands.
//!    Univ Leeds, Leeds, England.
//! ER
//!
//! EF
//! ```
//!
//! Continuation lines start with three spaces. For `C1` (and `AU`) every
//! continuation line is a separate value; for `TI` it extends the title.
//! The delimited layout is an RFC 4180 CSV with header `id,doc_type,year,addresses`
//! where `addresses` holds `;`-separated address strings.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRecord {
    pub record_id: String,
    pub doc_type: String,
    pub pub_year: Option<i32>,
    pub address_lines: Vec<String>,
    pub title: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    TaggedField,
    Delimited,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseMode {
    #[default]
    Lenient,
    Strict,
}

/// One malformed span, reported with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseIssue {
    pub source: String,
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseOutput {
    pub records: Vec<RawRecord>,
    pub issues: Vec<ParseIssue>,
}

/// Parses `input` in the given layout. `source` names the input (usually the
/// file name) and seeds generated record ids. In strict mode the first issue
/// aborts with [`Error::Parse`].
pub fn parse_records(
    input: impl Read,
    format: InputFormat,
    source: &str,
    mode: ParseMode,
) -> Result<ParseOutput> {
    let out = match format {
        InputFormat::TaggedField => {
            let mut text = String::new();
            let mut input = input;
            input.read_to_string(&mut text).map_err(|e| Error::Parse {
                line: 0,
                message: format!("input is not UTF-8 text: {e}"),
            })?;
            TaggedParser::new(source).parse(&text)
        }
        InputFormat::Delimited => parse_delimited(input, source)?,
    };
    if mode == ParseMode::Strict {
        if let Some(issue) = out.issues.first() {
            return Err(Error::Parse {
                line: issue.line,
                message: issue.message.clone(),
            });
        }
    }
    Ok(out)
}

#[derive(Default)]
struct RecordBuilder {
    start_line: usize,
    ordinal: usize,
    record_id: Option<String>,
    doc_type: Option<String>,
    pub_year: Option<i32>,
    address_lines: Vec<String>,
    title: Option<String>,
    last_tag: Option<[u8; 2]>,
}

enum State {
    Outside,
    InRecord(Box<RecordBuilder>),
    /// Skipping the rest of a malformed record.
    Skipping,
    Finished,
}

struct TaggedParser<'a> {
    source: &'a str,
    ordinal: usize,
    out: ParseOutput,
}

impl<'a> TaggedParser<'a> {
    fn new(source: &'a str) -> Self {
        TaggedParser {
            source,
            ordinal: 0,
            out: ParseOutput::default(),
        }
    }

    fn issue(&mut self, line: usize, message: impl Into<String>) {
        self.out.issues.push(ParseIssue {
            source: self.source.to_string(),
            line,
            message: message.into(),
        });
    }

    fn start(&mut self, line: usize) -> State {
        self.ordinal += 1;
        State::InRecord(Box::new(RecordBuilder {
            start_line: line,
            ordinal: self.ordinal,
            ..Default::default()
        }))
    }

    fn finish(&mut self, b: RecordBuilder) {
        let record_id = b
            .record_id
            .unwrap_or_else(|| format!("{}#{}", self.source, b.ordinal));
        self.out.records.push(RawRecord {
            record_id,
            doc_type: b.doc_type.unwrap_or_default(),
            pub_year: b.pub_year,
            address_lines: b.address_lines,
            title: b.title,
        });
    }

    fn parse(mut self, text: &str) -> ParseOutput {
        let text = text.strip_prefix('\u{feff}').unwrap_or(text);
        let mut state = State::Outside;
        let mut last_line = 0;
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
            if line.trim().is_empty() {
                continue;
            }
            state = match state {
                State::Finished => State::Finished,
                State::Skipping => match tag_of(line) {
                    Some((b"PT", _)) => self.start(line_no),
                    Some((b"ER", _)) => State::Outside,
                    Some((b"EF", _)) => State::Finished,
                    _ => State::Skipping,
                },
                State::Outside => {
                    if line.starts_with("   ") {
                        self.issue(line_no, "continuation line outside a record");
                        State::Outside
                    } else {
                        match tag_of(line) {
                            Some((b"PT", _)) => self.start(line_no),
                            Some((b"EF", _)) => State::Finished,
                            Some((b"FN", _)) | Some((b"VR", _)) => State::Outside,
                            Some((tag, _)) => {
                                let tag = String::from_utf8_lossy(tag).into_owned();
                                self.issue(line_no, format!("field `{tag}` outside a record"));
                                State::Outside
                            }
                            None => {
                                self.issue(line_no, "malformed line");
                                State::Outside
                            }
                        }
                    }
                }
                State::InRecord(mut b) => {
                    if let Some(value) = line.strip_prefix("   ") {
                        let value = value.trim();
                        match b.last_tag {
                            Some(ref t) if t == b"C1" => {
                                b.address_lines.push(value.to_string());
                                State::InRecord(b)
                            }
                            Some(ref t) if t == b"TI" => {
                                let title = b.title.get_or_insert_with(String::new);
                                if !title.is_empty() {
                                    title.push(' ');
                                }
                                title.push_str(value);
                                State::InRecord(b)
                            }
                            Some(_) => State::InRecord(b),
                            None => {
                                self.issue(line_no, "continuation line without a field");
                                State::Skipping
                            }
                        }
                    } else {
                        match tag_of(line) {
                            None => {
                                self.issue(line_no, "malformed line");
                                State::Skipping
                            }
                            Some((b"PT", _)) => {
                                self.issue(
                                    b.start_line,
                                    format!("record starting at line {} has no ER line", b.start_line),
                                );
                                self.start(line_no)
                            }
                            Some((b"ER", _)) => {
                                self.finish(*b);
                                State::Outside
                            }
                            Some((b"EF", _)) => {
                                self.issue(
                                    b.start_line,
                                    format!("record starting at line {} has no ER line", b.start_line),
                                );
                                State::Finished
                            }
                            Some((tag, value)) => {
                                let value = value.trim();
                                let tag = [tag[0], tag[1]];
                                b.last_tag = Some(tag);
                                match &tag {
                                    b"UT" => b.record_id = Some(value.to_string()),
                                    b"DT" => b.doc_type = Some(value.to_string()),
                                    b"TI" => b.title = Some(value.to_string()),
                                    b"C1" => b.address_lines.push(value.to_string()),
                                    b"PY" => match value.parse::<i32>() {
                                        Ok(y) => b.pub_year = Some(y),
                                        Err(_) => {
                                            self.issue(line_no, format!("invalid year `{value}`"));
                                            state = State::Skipping;
                                            continue;
                                        }
                                    },
                                    _ => {}
                                }
                                State::InRecord(b)
                            }
                        }
                    }
                }
            };
        }
        match state {
            State::InRecord(b) => {
                self.issue(
                    b.start_line,
                    format!("record starting at line {} has no ER line", b.start_line),
                );
            }
            State::Finished => {}
            State::Outside | State::Skipping => {
                self.issue(last_line.max(1), "missing EF line at end of file");
            }
        }
        self.out
    }
}

/// Splits `XX value` into its tag and value. A bare `XX` has an empty value.
fn tag_of(line: &str) -> Option<(&[u8], &str)> {
    let bytes = line.as_bytes();
    if bytes.len() < 2 || !bytes[..2].iter().all(|b| b.is_ascii_uppercase() || b.is_ascii_digit()) {
        return None;
    }
    match bytes.get(2) {
        None => Some((&bytes[..2], "")),
        Some(b' ') => Some((&bytes[..2], &line[3..])),
        Some(_) => None,
    }
}

#[derive(Deserialize)]
struct DelimitedRow {
    id: String,
    doc_type: String,
    year: String,
    addresses: String,
}

const DELIMITED_HEADER: [&str; 4] = ["id", "doc_type", "year", "addresses"];

fn parse_delimited(input: impl Read, source: &str) -> Result<ParseOutput> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = reader.headers().map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    if headers.iter().map(str::trim).ne(DELIMITED_HEADER) {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header `{}`", DELIMITED_HEADER.join(",")),
        });
    }
    let mut out = ParseOutput::default();
    for (ordinal, row) in reader.deserialize::<DelimitedRow>().enumerate() {
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
                out.issues.push(ParseIssue {
                    source: source.to_string(),
                    line,
                    message: e.to_string(),
                });
                continue;
            }
        };
        let year = row.year.trim();
        let pub_year = if year.is_empty() {
            None
        } else {
            match year.parse::<i32>() {
                Ok(y) => Some(y),
                Err(_) => {
                    out.issues.push(ParseIssue {
                        source: source.to_string(),
                        // header is line 1
                        line: ordinal + 2,
                        message: format!("invalid year `{year}`"),
                    });
                    continue;
                }
            }
        };
        let id = row.id.trim();
        out.records.push(RawRecord {
            record_id: if id.is_empty() {
                format!("{}#{}", source, ordinal + 1)
            } else {
                id.to_string()
            },
            doc_type: row.doc_type.trim().to_string(),
            pub_year,
            address_lines: row
                .addresses
                .split(';')
                .map(str::trim)
                .filter(|a| !a.is_empty())
                .map(str::to_string)
                .collect(),
            title: None,
        });
    }
    Ok(out)
}

/// Writes records in the tagged layout, terminated by `EF`.
pub fn write_tagged(records: &[RawRecord], mut w: impl Write) -> std::io::Result<()> {
    for r in records {
        writeln!(w, "PT J")?;
        writeln!(w, "UT {}", r.record_id)?;
        if let Some(title) = &r.title {
            writeln!(w, "TI {title}")?;
        }
        if !r.doc_type.is_empty() {
            writeln!(w, "DT {}", r.doc_type)?;
        }
        if let Some(year) = r.pub_year {
            writeln!(w, "PY {year}")?;
        }
        for (i, a) in r.address_lines.iter().enumerate() {
            if i == 0 {
                writeln!(w, "C1 {a}")?;
            } else {
                writeln!(w, "   {a}")?;
            }
        }
        writeln!(w, "ER")?;
        writeln!(w)?;
    }
    writeln!(w, "EF")
}

/// Writes records in the delimited layout. Titles are not part of it.
pub fn write_delimited(records: &[RawRecord], w: impl Write) -> Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    writer.write_record(DELIMITED_HEADER)?;
    for r in records {
        let year = r.pub_year.map(|y| y.to_string()).unwrap_or_default();
        let addresses = r.address_lines.join(";");
        writer.write_record([r.record_id.as_str(), &r.doc_type, &year, &addresses])?;
    }
    writer.flush()?;
    Ok(())
}
