//! Deterministic hashing embedders.
//!
//! Names are embedded from boundary-marked character n-grams, texts from
//! lowercase alphanumeric tokens. Each feature is signed-hashed with
//! 64-bit FNV-1a into a fixed-dimension bucket vector which is then
//! L2-normalized, so spelling overlap translates directly into cosine
//! similarity. Both embedders are pure functions of (input, config) and
//! stable across platforms.

use crate::embed::{EmbedError, EmbedderConfig};
use crate::model::EmbeddingVector;

pub(crate) const FNV_OFFSET_BASIS: u64 = 14695981039346656037;
pub(crate) const FNV_PRIME: u64 = 1099511628211;

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = FNV_OFFSET_BASIS;
    for b in bytes {
        hash ^= u64::from(*b);
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

fn accumulate(buckets: &mut [f64], feature: &[u8], seed: u64) {
    let h = fnv1a(feature) ^ seed;
    let sign = if h >> 63 == 0 { 1.0 } else { -1.0 };
    let idx = (h % buckets.len() as u64) as usize;
    buckets[idx] += sign;
}

fn l2_normalize(values: &mut [f64]) {
    let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        for v in values.iter_mut() {
            *v /= norm;
        }
    }
}

/// Embeds a name string into `cfg.name_dim` dimensions from its character
/// n-grams. The string is lowercased and wrapped in '^'/'$' boundary
/// markers first, so prefixes and suffixes hash distinctly from interior
/// n-grams.
pub fn embed_name(name_string: &str, cfg: &EmbedderConfig) -> Result<EmbeddingVector, EmbedError> {
    let trimmed = name_string.trim();
    if trimmed.is_empty() {
        return Err(EmbedError::EmptyName);
    }
    let marked: Vec<char> = std::iter::once('^')
        .chain(trimmed.to_lowercase().chars())
        .chain(std::iter::once('$'))
        .collect();

    let mut buckets = vec![0.0f64; cfg.name_dim];
    let mut gram = String::new();
    for &n in &cfg.char_ngram_sizes {
        if n == 0 || marked.len() < n {
            continue;
        }
        for window in marked.windows(n) {
            gram.clear();
            gram.extend(window.iter());
            accumulate(&mut buckets, gram.as_bytes(), cfg.hash_seed);
        }
    }
    l2_normalize(&mut buckets);
    let vector = EmbeddingVector::new(buckets).expect("hash buckets are finite");
    if vector.is_zero() {
        // Boundary markers guarantee at least one n-gram for non-empty
        // input; total sign cancellation within one bucket is the only
        // path here and the config would have to be adversarial.
        return Err(EmbedError::DegenerateVector);
    }
    Ok(vector)
}

/// Embeds free text into `cfg.content_dim` dimensions by signed-hashing
/// lowercase tokens split on non-alphanumeric boundaries. Empty token
/// lists yield the zero vector, which is explicitly permitted here.
pub fn embed_text(text: &str, cfg: &EmbedderConfig) -> EmbeddingVector {
    let mut buckets = vec![0.0f64; cfg.content_dim];
    let lowered = text.to_lowercase();
    for token in lowered.split(|c: char| !c.is_alphanumeric()) {
        if token.is_empty() {
            continue;
        }
        accumulate(&mut buckets, token.as_bytes(), cfg.hash_seed.wrapping_add(1));
    }
    l2_normalize(&mut buckets);
    EmbeddingVector::new(buckets).expect("hash buckets are finite")
}

/// The branch-1 content input: the elementwise mean of the title and
/// source embeddings. An empty source contributes nothing — the title
/// embedding is returned alone rather than averaged with zero.
pub fn content_embedding(
    title: &str,
    source: &str,
    cfg: &EmbedderConfig,
) -> Result<EmbeddingVector, EmbedError> {
    if title.trim().is_empty() {
        return Err(EmbedError::EmptyTitle);
    }
    let title_vec = embed_text(title, cfg);
    if source.trim().is_empty() {
        return Ok(title_vec);
    }
    Ok(title_vec.mean(&embed_text(source, cfg)))
}
