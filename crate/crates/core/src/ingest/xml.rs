//! Streaming reader for DBLP-style XML exports.
//!
//! Only `article` and `inproceedings` records are read. Named entities are
//! resolved from the document's internal DTD subset first and then from a
//! bundled ISO Latin-1 table, which covers the entities the DBLP DTD
//! declares. Input must be UTF-8 (plain ASCII with entities, as DBLP ships
//! it, qualifies).

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::sync::OnceLock;

use quick_xml::events::{BytesRef, BytesStart, Event};
use quick_xml::{Reader, XmlVersion};
use serde::Serialize;

use super::VenueConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PublicationRecord {
    pub key: String,
    pub venue: String,
    pub year: Option<u32>,
    pub title: String,
    pub authors: Vec<String>,
}

const ENTITY_TABLE: &str = include_str!("../../data/entities.tsv");

fn bundled_entities() -> &'static HashMap<&'static str, String> {
    static TABLE: OnceLock<HashMap<&'static str, String>> = OnceLock::new();
    TABLE.get_or_init(|| {
        ENTITY_TABLE
            .lines()
            .filter_map(|l| {
                let (name, code) = l.split_once('\t')?;
                Some((name, char::from_u32(code.parse().ok()?)?.to_string()))
            })
            .collect()
    })
}

/// Reads a corpus file; see [`parse_corpus`].
pub fn parse_corpus_file(path: impl AsRef<Path>, venues: &VenueConfig) -> Result<Vec<PublicationRecord>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })?;
    parse_corpus(BufReader::new(file), venues)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Field {
    Author,
    Title,
    Year,
}

struct Pending {
    key: String,
    venue: Option<String>,
    authors: Vec<String>,
    title: Option<String>,
    year: Option<String>,
}

/// Records whose key maps to a configured venue, in document order.
///
/// Records without authors are skipped, as are repeated keys after their
/// first occurrence.
pub fn parse_corpus<R: BufRead>(input: R, venues: &VenueConfig) -> Result<Vec<PublicationRecord>> {
    let mut reader = Reader::from_reader(input);
    let mut buf = Vec::new();
    let mut declared: HashMap<String, String> = HashMap::new();
    let mut out = Vec::new();
    let mut keys = HashSet::new();

    let mut record: Option<Pending> = None;
    let mut record_at = 0usize;
    let mut depth = 0usize;
    let mut field: Option<(Field, usize)> = None;
    let mut text = String::new();

    loop {
        let event = reader.read_event_into(&mut buf).map_err(|e| Error::Xml {
            offset: reader.error_position(),
            message: e.to_string(),
        })?;
        match event {
            Event::DocType(dt) => {
                declared = parse_internal_subset(&dt.xml10_content());
            }
            Event::Start(e) => {
                depth += 1;
                if record.is_none() {
                    if is_record(&e) {
                        record = Some(start_record(&e, venues, &reader)?);
                        record_at = depth;
                    }
                } else if field.is_none() {
                    field = field_of(&e).map(|f| (f, depth));
                    text.clear();
                }
            }
            Event::End(_) => {
                if let Some((f, at)) = field {
                    if at == depth {
                        let r = record.as_mut().expect("fields only open inside records");
                        let value = collapse_whitespace(&text);
                        match f {
                            Field::Author if !value.is_empty() => r.authors.push(value),
                            Field::Author => {}
                            Field::Title => r.title = Some(value),
                            Field::Year => r.year = Some(value),
                        }
                        field = None;
                    }
                }
                if depth == record_at {
                    if let Some(r) = record.take() {
                        finish(r, &mut out, &mut keys);
                    }
                }
                depth -= 1;
            }
            Event::Text(t) if field.is_some() => text.push_str(&t.xml10_content()),
            Event::CData(t) if field.is_some() => text.push_str(&t.xml10_content()),
            Event::GeneralRef(r) if field.is_some() => {
                resolve(&r, &declared, reader.buffer_position(), &mut text)?;
            }
            Event::Eof => break,
            _ => {}
        }
        buf.clear();
    }
    Ok(out)
}

fn is_record(e: &BytesStart<'_>) -> bool {
    matches!(e.name().as_ref(), "article" | "inproceedings")
}

fn field_of(e: &BytesStart<'_>) -> Option<Field> {
    match e.name().as_ref() {
        "author" => Some(Field::Author),
        "title" => Some(Field::Title),
        "year" => Some(Field::Year),
        _ => None,
    }
}

fn start_record<R>(e: &BytesStart<'_>, venues: &VenueConfig, reader: &Reader<R>) -> Result<Pending> {
    let key = match e.try_get_attribute("key") {
        Ok(Some(attr)) => attr
            .normalized_value_with(XmlVersion::Implicit1_0, 8, |name| {
                bundled_entities().get(name).map(String::as_str)
            })
            .map_err(|err| Error::Xml {
                offset: reader.buffer_position(),
                message: err.to_string(),
            })?
            .into_owned(),
        Ok(None) => String::new(),
        Err(err) => {
            return Err(Error::Xml {
                offset: reader.buffer_position(),
                message: err.to_string(),
            })
        }
    };
    Ok(Pending {
        venue: venues.venue_of(&key),
        key,
        authors: Vec::new(),
        title: None,
        year: None,
    })
}

fn finish(r: Pending, out: &mut Vec<PublicationRecord>, keys: &mut HashSet<String>) {
    let Some(venue) = r.venue else { return };
    if r.authors.is_empty() || !keys.insert(r.key.clone()) {
        return;
    }
    out.push(PublicationRecord {
        key: r.key,
        venue,
        year: r.year.and_then(|y| y.trim().parse().ok()),
        title: r.title.unwrap_or_default(),
        authors: r.authors,
    });
}

fn resolve(r: &BytesRef<'_>, declared: &HashMap<String, String>, offset: u64, out: &mut String) -> Result<()> {
    if r.is_char_ref() {
        let c = r.resolve_char_ref().map_err(|e| Error::Xml {
            offset,
            message: e.to_string(),
        })?;
        out.extend(c);
        return Ok(());
    }
    let name = r.xml10_content();
    if let Some(v) = declared.get(name.as_ref()) {
        out.push_str(v);
    } else if let Some(c) = bundled_entities().get(name.as_ref()) {
        out.push_str(c);
    } else {
        return Err(Error::UnknownEntity {
            offset,
            name: name.into_owned(),
        });
    }
    Ok(())
}

/// General entity declarations of an internal DTD subset. Character
/// references inside the values are expanded; parameter entities are ignored.
fn parse_internal_subset(doctype: &str) -> HashMap<String, String> {
    let mut out = HashMap::new();
    let mut rest = doctype;
    while let Some(at) = rest.find("<!ENTITY") {
        rest = rest[at + "<!ENTITY".len()..].trim_start();
        if rest.starts_with('%') {
            continue;
        }
        let name_end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let name = &rest[..name_end];
        let after = rest[name_end..].trim_start();
        let Some(quote) = after.chars().next().filter(|c| *c == '"' || *c == '\'') else {
            continue;
        };
        let body = &after[1..];
        let Some(end) = body.find(quote) else { break };
        out.insert(name.to_owned(), expand_char_refs(&body[..end]));
        rest = &body[end + 1..];
    }
    out
}

fn expand_char_refs(value: &str) -> String {
    let mut out = String::with_capacity(value.len());
    let mut rest = value;
    while let Some(at) = rest.find("&#") {
        out.push_str(&rest[..at]);
        let tail = &rest[at + 2..];
        let decoded = tail.find(';').and_then(|end| {
            let digits = &tail[..end];
            let code = match digits.strip_prefix('x') {
                Some(hex) => u32::from_str_radix(hex, 16).ok(),
                None => digits.parse().ok(),
            };
            code.and_then(char::from_u32).map(|c| (c, end))
        });
        match decoded {
            Some((c, end)) => {
                out.push(c);
                rest = &tail[end + 1..];
            }
            None => {
                out.push_str("&#");
                rest = tail;
            }
        }
    }
    out.push_str(rest);
    out
}

fn collapse_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}
