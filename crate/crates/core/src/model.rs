//! Shared domain types: bibliographic records, author entities, name
//! variants, training samples, and the entity vocabulary that maps
//! entity identifiers to contiguous class indices.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Record kind tag. Only articles and inproceedings carry a source
/// (journal or booktitle) used by the pipeline; everything else is `Other`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Article,
    Inproceedings,
    Other,
}

impl fmt::Display for RecordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordKind::Article => write!(f, "article"),
            RecordKind::Inproceedings => write!(f, "inproceedings"),
            RecordKind::Other => write!(f, "other"),
        }
    }
}

/// One author occurrence in a record. `entity_id` is the canonical
/// identifier: the suffixed name string when a numeric disambiguation
/// suffix is present (e.g. "Bing Li 0001"), otherwise the name itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthorRef {
    #[serde(rename = "name")]
    pub raw_name: String,
    #[serde(rename = "entity")]
    pub entity_id: String,
}

impl AuthorRef {
    /// Both fields set to the same string, the common case when the
    /// record text already carries the canonical identifier.
    pub fn canonical(name: impl Into<String>) -> Self {
        let name = name.into();
        AuthorRef {
            raw_name: name.clone(),
            entity_id: name,
        }
    }
}

/// One bibliographic record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BibRecord {
    pub key: String,
    pub kind: RecordKind,
    pub authors: Vec<AuthorRef>,
    pub title: String,
    pub source: String,
    pub year: Option<i32>,
}

/// A unique real-world author, identified by its canonical (suffixed)
/// name and a class index assigned by the vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthorEntity {
    pub entity_id: String,
    pub class_index: u32,
    pub display_name: String,
}

/// Citation-style tags for rendered name variants.
///
/// `InitialsLast` collapses to `InitialLast` for names without middle
/// tokens, so two-token names admit five distinct styles and longer
/// names six. Single-token names admit only `Full`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantStyle {
    /// "First \[Middles\] Last"
    Full,
    /// "Last, First \[Middles\]"
    LastCommaFirst,
    /// "F. Last"
    InitialLast,
    /// "Last, F."
    LastCommaInitial,
    /// "First L."
    FirstInitialLast,
    /// "F. M. Last"
    InitialsLast,
}

impl fmt::Display for VariantStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            VariantStyle::Full => "full",
            VariantStyle::LastCommaFirst => "last_comma_first",
            VariantStyle::InitialLast => "initial_last",
            VariantStyle::LastCommaInitial => "last_comma_initial",
            VariantStyle::FirstInitialLast => "first_initial_last",
            VariantStyle::InitialsLast => "initials_last",
        };
        write!(f, "{tag}")
    }
}

/// A deterministic rendering of an entity's display name under one style.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NameVariant {
    pub style: VariantStyle,
    pub rendered: String,
}

/// One (author-variant, coauthor-variant, title, source, label) tuple.
/// `label` is the class index of the entity whose name produced
/// `author_variant`; the two variants come from distinct authors of the
/// record identified by `record_key`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingSample {
    pub author_variant: NameVariant,
    pub coauthor_variant: NameVariant,
    pub title: String,
    pub source: String,
    pub label: u32,
    pub record_key: String,
}

/// Fixed-dimension real vector produced by an embedding provider.
/// Built-in embedders yield unit-norm vectors; the all-zero vector is
/// only permitted where the producing operation explicitly allows it.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVector {
    values: Vec<f64>,
}

impl EmbeddingVector {
    /// Wraps raw values; rejects non-finite entries.
    pub fn new(values: Vec<f64>) -> Result<Self, CorpusError> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(CorpusError::NonFiniteEmbedding);
        }
        Ok(EmbeddingVector { values })
    }

    pub fn zeros(dim: usize) -> Self {
        EmbeddingVector {
            values: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn l2_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0.0)
    }

    /// Cosine similarity; zero vectors yield 0.
    pub fn cosine(&self, other: &EmbeddingVector) -> f64 {
        let dot: f64 = self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a * b)
            .sum();
        let denom = self.l2_norm() * other.l2_norm();
        if denom == 0.0 {
            0.0
        } else {
            dot / denom
        }
    }

    /// Elementwise mean of two vectors of equal dimension.
    pub fn mean(&self, other: &EmbeddingVector) -> EmbeddingVector {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in mean");
        EmbeddingVector {
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| (a + b) / 2.0)
                .collect(),
        }
    }
}

/// Errors raised by corpus-level operations.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("embedding contains non-finite values")]
    NonFiniteEmbedding,
    #[error("corpus line {line}: {source}")]
    Malformed {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("duplicate record key {0:?}")]
    DuplicateKey(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Ordered entity vocabulary: a bijection between entity identifiers and
/// class indices `[0, K)`. Indices are assigned in lexicographic order of
/// `entity_id`, so the same multiset of records always yields the same
/// vocabulary regardless of record order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntityVocabulary {
    entities: Vec<String>,
}

impl EntityVocabulary {
    /// Builds the vocabulary from every author occurring in `records`.
    pub fn build(records: &[BibRecord]) -> Result<Self, CorpusError> {
        if records.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }
        let set: BTreeSet<&str> = records
            .iter()
            .flat_map(|r| r.authors.iter())
            .map(|a| a.entity_id.as_str())
            .collect();
        Ok(EntityVocabulary {
            entities: set.into_iter().map(String::from).collect(),
        })
    }

    /// Wraps an already-ordered entity list (e.g. loaded from a
    /// vocabulary file, line number = class index).
    pub fn from_ordered(entities: Vec<String>) -> Self {
        EntityVocabulary { entities }
    }

    pub fn len(&self) -> usize {
        self.entities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }

    pub fn index_of(&self, entity_id: &str) -> Option<u32> {
        self.entities
            .binary_search_by(|e| e.as_str().cmp(entity_id))
            .ok()
            .map(|i| i as u32)
    }

    pub fn entity_of(&self, class_index: u32) -> Option<&str> {
        self.entities.get(class_index as usize).map(String::as_str)
    }

    pub fn contains(&self, entity_id: &str) -> bool {
        self.index_of(entity_id).is_some()
    }

    pub fn entities(&self) -> &[String] {
        &self.entities
    }

    /// Resolves an entity id to its `AuthorEntity` form.
    pub fn entity(&self, entity_id: &str) -> Option<AuthorEntity> {
        self.index_of(entity_id).map(|class_index| AuthorEntity {
            entity_id: entity_id.to_string(),
            class_index,
            display_name: display_name(entity_id),
        })
    }
}

/// Strips the trailing 4-digit disambiguation suffix, when present.
pub fn display_name(entity_id: &str) -> String {
    let trimmed = entity_id.trim();
    if let Some((head, tail)) = trimmed.rsplit_once(' ') {
        if tail.len() == 4 && tail.chars().all(|c| c.is_ascii_digit()) {
            return head.trim_end().to_string();
        }
    }
    trimmed.to_string()
}

/// Writes records in the corpus interchange format: one JSON object per
/// line, UTF-8, LF line endings.
pub fn write_corpus<W: Write>(mut w: W, records: &[BibRecord]) -> Result<(), CorpusError> {
    for record in records {
        serde_json::to_writer(&mut w, record).map_err(|e| CorpusError::Malformed {
            line: 0,
            source: e,
        })?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads a newline-delimited corpus, enforcing key uniqueness.
pub fn read_corpus<R: BufRead>(r: R) -> Result<Vec<BibRecord>, CorpusError> {
    let mut records = Vec::new();
    let mut keys = BTreeSet::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: BibRecord = serde_json::from_str(&line).map_err(|e| CorpusError::Malformed {
            line: i + 1,
            source: e,
        })?;
        if !keys.insert(record.key.clone()) {
            return Err(CorpusError::DuplicateKey(record.key));
        }
        records.push(record);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(key: &str, authors: &[&str]) -> BibRecord {
        BibRecord {
            key: key.to_string(),
            kind: RecordKind::Article,
            authors: authors.iter().map(|a| AuthorRef::canonical(*a)).collect(),
            title: format!("Title {key}"),
            source: "J".to_string(),
            year: Some(2020),
        }
    }

    #[test]
    fn vocabulary_is_lexicographic() {
        let records = vec![record("k1", &["B. Two 0001", "A. One"])];
        let vocab = EntityVocabulary::build(&records).unwrap();
        assert_eq!(vocab.index_of("A. One"), Some(0));
        assert_eq!(vocab.index_of("B. Two 0001"), Some(1));
        assert_eq!(vocab.len(), 2);
    }

    #[test]
    fn vocabulary_single_author() {
        let records = vec![record("k1", &["X"])];
        let vocab = EntityVocabulary::build(&records).unwrap();
        assert_eq!(vocab.index_of("X"), Some(0));
        assert_eq!(vocab.len(), 1);
    }

    #[test]
    fn vocabulary_empty_corpus_errors() {
        let err = EntityVocabulary::build(&[]).unwrap_err();
        assert!(err.to_string().contains("empty corpus"));
    }

    #[test]
    fn vocabulary_order_independent() {
        let a = record("k1", &["M. Mid", "Z. Zed"]);
        let b = record("k2", &["A. First", "M. Mid"]);
        let v1 = EntityVocabulary::build(&[a.clone(), b.clone()]).unwrap();
        let v2 = EntityVocabulary::build(&[b, a]).unwrap();
        assert_eq!(v1, v2);
    }

    #[test]
    fn vocabulary_round_trips_indices() {
        let records = vec![
            record("k1", &["C", "A"]),
            record("k2", &["B", "A"]),
            record("k3", &["D"]),
        ];
        let vocab = EntityVocabulary::build(&records).unwrap();
        for i in 0..vocab.len() as u32 {
            let entity = vocab.entity_of(i).unwrap();
            assert_eq!(vocab.index_of(entity), Some(i));
        }
    }

    #[test]
    fn display_name_strips_suffix() {
        assert_eq!(display_name("Bing Li 0002"), "Bing Li");
        assert_eq!(display_name("Bing Li"), "Bing Li");
        // Only 4-digit tails are suffixes.
        assert_eq!(display_name("Area 51"), "Area 51");
        assert_eq!(display_name("Unit 0001x"), "Unit 0001x");
    }

    #[test]
    fn corpus_round_trip() {
        let records = vec![
            record("x/Y1", &["Weihua Xiong", "Bing Li 0002"]),
            BibRecord {
                key: "x/Y2".into(),
                kind: RecordKind::Inproceedings,
                authors: vec![AuthorRef::canonical("Solo Author")],
                title: "T.".into(),
                source: String::new(),
                year: None,
            },
        ];
        let mut buf = Vec::new();
        write_corpus(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.ends_with('\n'));
        let back = read_corpus(buf.as_slice()).unwrap();
        assert_eq!(back, records);
    }

    #[test]
    fn corpus_line_shape_matches_interchange_format() {
        let records = vec![record("k", &["A"])];
        let mut buf = Vec::new();
        write_corpus(&mut buf, &records).unwrap();
        let v: serde_json::Value = serde_json::from_slice(buf.trim_ascii_end()).unwrap();
        assert_eq!(v["key"], "k");
        assert_eq!(v["kind"], "article");
        assert_eq!(v["authors"][0]["name"], "A");
        assert_eq!(v["authors"][0]["entity"], "A");
        assert_eq!(v["year"], 2020);
    }

    #[test]
    fn corpus_rejects_duplicate_keys() {
        let mut buf = Vec::new();
        write_corpus(&mut buf, &[record("k", &["A"]), record("k", &["B"])]).unwrap();
        let err = read_corpus(buf.as_slice()).unwrap_err();
        assert!(matches!(err, CorpusError::DuplicateKey(_)));
    }

    #[test]
    fn corpus_reports_malformed_line_number() {
        let text = "{\"key\":\"k\",\"kind\":\"article\",\"authors\":[{\"name\":\"A\",\"entity\":\"A\"}],\"title\":\"T\",\"source\":\"\",\"year\":null}\nnot json\n";
        let err = read_corpus(text.as_bytes()).unwrap_err();
        match err {
            CorpusError::Malformed { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn embedding_vector_rejects_non_finite() {
        assert!(EmbeddingVector::new(vec![0.0, f64::NAN]).is_err());
        assert!(EmbeddingVector::new(vec![0.5, -0.5]).is_ok());
    }

    #[test]
    fn embedding_mean_is_componentwise() {
        let u = EmbeddingVector::new(vec![1.0, 0.0, 3.0]).unwrap();
        let v = EmbeddingVector::new(vec![0.0, 2.0, 1.0]).unwrap();
        assert_eq!(u.mean(&v).values(), &[0.5, 1.0, 2.0]);
    }
}
