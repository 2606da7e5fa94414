//! Bibliographic corpus: JSONL parsing, author interning, and descriptive
//! statistics.
//!
//! Input is one JSON object per line, `{"id", "year", "venue", "authors"}`.
//! Author names are interned through [`normalize_name`], which applies
//! Unicode canonical composition and whitespace cleanup but never merges
//! distinct spellings; disambiguation is out of scope. Once parsed, the
//! corpus structures are immutable and safe to share across threads.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::BufRead;

use serde::Deserialize;
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};
use crate::NodeId;

/// Country code used to separate domestic from international authors in
/// the yearly statistics.
pub const HOME_COUNTRY: &str = "us";

/// One bibliographic record with its authors interned to dense ids.
///
/// The author list is ordered as given and never contains the same id
/// twice; single-author records are legal and simply contribute no
/// co-authorship pairs downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Publication {
    pub pub_id: String,
    pub year: u32,
    pub venue: String,
    pub authors: Vec<NodeId>,
}

impl Publication {
    /// Number of authors on this record.
    pub fn author_count(&self) -> usize {
        self.authors.len()
    }
}

/// Optional per-author metadata from the affiliation file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuthorMeta {
    pub country: Option<String>,
    pub affiliation: Option<String>,
}

/// Bidirectional map between canonical author names and dense ids
/// `0..len`, plus optional metadata per author.
#[derive(Debug, Clone, Default)]
pub struct AuthorTable {
    names: Vec<String>,
    ids: HashMap<String, NodeId>,
    meta: Vec<AuthorMeta>,
}

impl AuthorTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Intern a canonical name, returning the existing id if present.
    pub fn intern(&mut self, canonical: &str) -> NodeId {
        if let Some(&id) = self.ids.get(canonical) {
            return id;
        }
        let id = self.names.len();
        self.names.push(canonical.to_string());
        self.ids.insert(canonical.to_string(), id);
        self.meta.push(AuthorMeta::default());
        id
    }

    pub fn id_of(&self, canonical: &str) -> Option<NodeId> {
        self.ids.get(canonical).copied()
    }

    pub fn name_of(&self, id: NodeId) -> &str {
        &self.names[id]
    }

    /// Canonical names indexed by id.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn meta_of(&self, id: NodeId) -> &AuthorMeta {
        &self.meta[id]
    }

    /// Lower-cased country code, when known.
    pub fn country_of(&self, id: NodeId) -> Option<&str> {
        self.meta[id].country.as_deref()
    }

    pub fn set_country(&mut self, id: NodeId, country: &str) {
        self.meta[id].country = Some(country.trim().to_lowercase());
    }

    pub fn set_affiliation(&mut self, id: NodeId, affiliation: &str) {
        self.meta[id].affiliation = Some(affiliation.trim().to_string());
    }
}

/// Counters accumulated while parsing the bibliography.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseReport {
    /// Author entries dropped because the same name appeared twice in one
    /// record's byline.
    pub duplicate_author_warnings: usize,
    /// Records rejected because no usable author name remained.
    pub rejected_records: usize,
    /// Author entries whose name normalized to the empty string.
    pub blank_author_entries: usize,
}

/// Parsed bibliography: publications, the author table, and parse counters.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub publications: Vec<Publication>,
    pub authors: AuthorTable,
    pub report: ParseReport,
}

#[derive(Deserialize)]
struct RawRecord {
    id: String,
    year: i64,
    venue: String,
    authors: Vec<String>,
}

/// Normalize a raw author name: Unicode canonical composition (NFC),
/// leading/trailing whitespace stripped, internal whitespace runs
/// collapsed to a single space. Case is preserved.
pub fn normalize_name(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    let mut pending_space = false;
    for ch in raw.nfc() {
        if ch.is_whitespace() {
            pending_space = !out.is_empty();
        } else {
            if pending_space {
                out.push(' ');
                pending_space = false;
            }
            out.push(ch);
        }
    }
    out
}

/// Parse a JSONL bibliography stream.
///
/// Every line must be one record; blank lines are skipped. Malformed
/// lines and duplicate publication ids abort with an error naming the
/// line. Records whose byline dedups to nothing are rejected and counted
/// in the report rather than failing the parse.
pub fn parse_publications<R: BufRead>(reader: R) -> Result<Corpus> {
    let mut corpus = Corpus::default();
    let mut seen_ids: HashSet<String> = HashSet::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord = serde_json::from_str(&line).map_err(|e| Error::Malformed {
            line: line_no,
            message: e.to_string(),
        })?;
        if raw.year < 1 {
            return Err(Error::Malformed {
                line: line_no,
                message: format!("year must be a positive integer, got {}", raw.year),
            });
        }
        if !seen_ids.insert(raw.id.clone()) {
            return Err(Error::DuplicatePubId {
                id: raw.id,
                line: line_no,
            });
        }

        let mut authors: Vec<NodeId> = Vec::with_capacity(raw.authors.len());
        let mut seen_names: HashSet<String> = HashSet::with_capacity(raw.authors.len());
        for name in &raw.authors {
            let canonical = normalize_name(name);
            if canonical.is_empty() {
                corpus.report.blank_author_entries += 1;
                continue;
            }
            if !seen_names.insert(canonical.clone()) {
                corpus.report.duplicate_author_warnings += 1;
                continue;
            }
            authors.push(corpus.authors.intern(&canonical));
        }
        if authors.is_empty() {
            corpus.report.rejected_records += 1;
            continue;
        }
        corpus.publications.push(Publication {
            pub_id: raw.id,
            year: raw.year as u32,
            venue: raw.venue,
            authors,
        });
    }
    Ok(corpus)
}

#[derive(Deserialize)]
struct RawAffiliation {
    author: String,
    country: Option<String>,
    affiliation: Option<String>,
}

/// Counters from applying an affiliation file to an [`AuthorTable`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AffiliationReport {
    pub applied: usize,
    /// Rows naming an author absent from the bibliography.
    pub unknown_authors: usize,
}

/// Apply a JSONL affiliation stream (`{"author", "country", "affiliation"}`)
/// to the table. Rows for authors the bibliography never mentioned are
/// counted, not errors; later rows override earlier ones.
pub fn apply_affiliations<R: BufRead>(
    reader: R,
    table: &mut AuthorTable,
) -> Result<AffiliationReport> {
    let mut report = AffiliationReport::default();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawAffiliation = serde_json::from_str(&line).map_err(|e| Error::Malformed {
            line: line_no,
            message: e.to_string(),
        })?;
        let canonical = normalize_name(&raw.author);
        match table.id_of(&canonical) {
            Some(id) => {
                if let Some(country) = &raw.country {
                    table.set_country(id, country);
                }
                if let Some(affiliation) = &raw.affiliation {
                    table.set_affiliation(id, affiliation);
                }
                report.applied += 1;
            }
            None => report.unknown_authors += 1,
        }
    }
    Ok(report)
}

/// One row of the per-year series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YearRow {
    pub year: u32,
    pub publications: usize,
    /// Distinct authors publishing that year.
    pub authors: usize,
    /// Authors whose earliest publication year is this year.
    pub new_authors: usize,
    /// Distinct authors that year with a known, non-domestic country.
    pub international_authors: usize,
    /// Distinct authors that year without country metadata.
    pub unknown_country_authors: usize,
}

/// Descriptive statistics over a parsed corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    pub total_publications: usize,
    pub total_authors: usize,
    pub mean_authors_per_paper: f64,
    /// Ascending by year.
    pub yearly: Vec<YearRow>,
    /// Publication count per author id.
    pub pubs_per_author: Vec<usize>,
    /// publication count -> number of authors with that count.
    pub pubs_per_author_hist: BTreeMap<usize, usize>,
    /// author count -> number of papers with that many authors.
    pub authors_per_paper_hist: BTreeMap<usize, usize>,
}

/// Compute per-year series and the two histograms. Authors without
/// country metadata land in the unknown column, never dropped.
pub fn corpus_stats(pubs: &[Publication], table: &AuthorTable) -> CorpusStats {
    let n = table.len();
    let mut pubs_per_author = vec![0usize; n];
    let mut authors_per_paper_hist: BTreeMap<usize, usize> = BTreeMap::new();
    let mut first_year: Vec<u32> = vec![u32::MAX; n];
    let mut by_year: BTreeMap<u32, (usize, HashSet<NodeId>)> = BTreeMap::new();

    for p in pubs {
        *authors_per_paper_hist.entry(p.author_count()).or_insert(0) += 1;
        let entry = by_year.entry(p.year).or_default();
        entry.0 += 1;
        for &a in &p.authors {
            pubs_per_author[a] += 1;
            entry.1.insert(a);
            if p.year < first_year[a] {
                first_year[a] = p.year;
            }
        }
    }

    let mut pubs_per_author_hist: BTreeMap<usize, usize> = BTreeMap::new();
    for &count in &pubs_per_author {
        *pubs_per_author_hist.entry(count).or_insert(0) += 1;
    }

    let yearly = by_year
        .iter()
        .map(|(&year, (count, authors))| {
            let mut row = YearRow {
                year,
                publications: *count,
                authors: authors.len(),
                new_authors: 0,
                international_authors: 0,
                unknown_country_authors: 0,
            };
            for &a in authors {
                if first_year[a] == year {
                    row.new_authors += 1;
                }
                match table.country_of(a) {
                    Some(c) if c != HOME_COUNTRY => row.international_authors += 1,
                    Some(_) => {}
                    None => row.unknown_country_authors += 1,
                }
            }
            row
        })
        .collect();

    let total_author_slots: usize = pubs.iter().map(Publication::author_count).sum();
    CorpusStats {
        total_publications: pubs.len(),
        total_authors: n,
        mean_authors_per_paper: if pubs.is_empty() {
            0.0
        } else {
            total_author_slots as f64 / pubs.len() as f64
        },
        yearly,
        pubs_per_author,
        pubs_per_author_hist,
        authors_per_paper_hist,
    }
}
