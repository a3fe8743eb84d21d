//! Pluggable embedding providers.
//!
//! The built-in provider hashes character n-grams (names) and tokens
//! (content) into fixed dimensions, so the whole pipeline is
//! self-contained and bit-reproducible. The remote provider forwards
//! batches to an external service hosting real models over a small HTTP
//! protocol; both satisfy the same dimension contract.

mod hashing;
mod remote;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::EmbeddingVector;

pub use hashing::{content_embedding, embed_name, embed_text};
pub use remote::RemoteEmbedder;

pub(crate) use hashing::fnv1a;

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error("empty name")]
    EmptyName,
    #[error("empty title")]
    EmptyTitle,
    #[error("empty batch")]
    EmptyBatch,
    #[error("embedding degenerated to the zero vector")]
    DegenerateVector,
    #[error("dimension mismatch: expected {expected}, received {received}")]
    DimMismatch { expected: usize, received: usize },
    #[error("embedding provider error: {0}")]
    Provider(String),
}

/// Which vector family a batch belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedKind {
    Name,
    Content,
}

/// Provider selection for `EmbedderConfig`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProviderChoice {
    Builtin,
    Remote { url: String },
}

impl Default for ProviderChoice {
    fn default() -> Self {
        ProviderChoice::Builtin
    }
}

/// Embedder configuration recorded in persisted models; dimensions must
/// match at inference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct EmbedderConfig {
    pub name_dim: usize,
    pub content_dim: usize,
    pub char_ngram_sizes: Vec<usize>,
    pub hash_seed: u64,
    pub provider: ProviderChoice,
}

impl Default for EmbedderConfig {
    fn default() -> Self {
        EmbedderConfig {
            name_dim: 200,
            content_dim: 768,
            char_ngram_sizes: vec![2, 3],
            hash_seed: 0,
            provider: ProviderChoice::Builtin,
        }
    }
}

impl EmbedderConfig {
    pub fn validate(&self) -> Result<(), EmbedError> {
        if self.name_dim < 8 || self.content_dim < 8 {
            return Err(EmbedError::Provider(format!(
                "dims must be >= 8 (name_dim {}, content_dim {})",
                self.name_dim, self.content_dim
            )));
        }
        Ok(())
    }
}

/// A source of name and content vectors for the pipeline. Implementations
/// must preserve batch order and honor the configured dimensions.
pub trait EmbeddingProvider: Send + Sync {
    fn embed_batch(
        &self,
        kind: EmbedKind,
        texts: &[String],
    ) -> Result<Vec<EmbeddingVector>, EmbedError>;

    fn name_dim(&self) -> usize;
    fn content_dim(&self) -> usize;

    fn embed_one(&self, kind: EmbedKind, text: &str) -> Result<EmbeddingVector, EmbedError> {
        let batch = self.embed_batch(kind, std::slice::from_ref(&text.to_string()))?;
        Ok(batch.into_iter().next().expect("one vector per input"))
    }
}

/// The deterministic in-process provider.
pub struct BuiltinProvider {
    cfg: EmbedderConfig,
}

impl BuiltinProvider {
    pub fn new(cfg: EmbedderConfig) -> Self {
        BuiltinProvider { cfg }
    }

    pub fn config(&self) -> &EmbedderConfig {
        &self.cfg
    }
}

impl EmbeddingProvider for BuiltinProvider {
    fn embed_batch(
        &self,
        kind: EmbedKind,
        texts: &[String],
    ) -> Result<Vec<EmbeddingVector>, EmbedError> {
        texts
            .iter()
            .map(|t| match kind {
                EmbedKind::Name => embed_name(t, &self.cfg),
                EmbedKind::Content => Ok(embed_text(t, &self.cfg)),
            })
            .collect()
    }

    fn name_dim(&self) -> usize {
        self.cfg.name_dim
    }

    fn content_dim(&self) -> usize {
        self.cfg.content_dim
    }
}

/// Remote provider bound to the configured dimensions.
pub struct RemoteProvider {
    embedder: RemoteEmbedder,
    name_dim: usize,
    content_dim: usize,
}

impl RemoteProvider {
    pub fn new(url: impl Into<String>, cfg: &EmbedderConfig) -> Self {
        RemoteProvider {
            embedder: RemoteEmbedder::new(url, Duration::from_secs(10), 2),
            name_dim: cfg.name_dim,
            content_dim: cfg.content_dim,
        }
    }
}

impl EmbeddingProvider for RemoteProvider {
    fn embed_batch(
        &self,
        kind: EmbedKind,
        texts: &[String],
    ) -> Result<Vec<EmbeddingVector>, EmbedError> {
        let dim = match kind {
            EmbedKind::Name => self.name_dim,
            EmbedKind::Content => self.content_dim,
        };
        self.embedder.embed_batch(kind, texts, dim)
    }

    fn name_dim(&self) -> usize {
        self.name_dim
    }

    fn content_dim(&self) -> usize {
        self.content_dim
    }
}

/// Builds the provider selected by the config.
pub fn provider_for(cfg: &EmbedderConfig) -> Box<dyn EmbeddingProvider> {
    match &cfg.provider {
        ProviderChoice::Builtin => Box::new(BuiltinProvider::new(cfg.clone())),
        ProviderChoice::Remote { url } => Box::new(RemoteProvider::new(url.clone(), cfg)),
    }
}

/// Title/source content vector through an arbitrary provider: mean of the
/// two content embeddings, or the title embedding alone when the source
/// is empty.
pub fn provider_content_embedding(
    provider: &dyn EmbeddingProvider,
    title: &str,
    source: &str,
) -> Result<EmbeddingVector, EmbedError> {
    if title.trim().is_empty() {
        return Err(EmbedError::EmptyTitle);
    }
    let title_vec = provider.embed_one(EmbedKind::Content, title)?;
    if source.trim().is_empty() {
        return Ok(title_vec);
    }
    let source_vec = provider.embed_one(EmbedKind::Content, source)?;
    Ok(title_vec.mean(&source_vec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_provider_matches_free_functions() {
        let cfg = EmbedderConfig::default();
        let provider = BuiltinProvider::new(cfg.clone());
        let names = vec!["Bing Li".to_string(), "W. Xiong".to_string()];
        let batch = provider.embed_batch(EmbedKind::Name, &names).unwrap();
        assert_eq!(batch.len(), 2);
        assert_eq!(batch[0], embed_name("Bing Li", &cfg).unwrap());
        assert_eq!(batch[1], embed_name("W. Xiong", &cfg).unwrap());

        let texts = vec!["saliency detection".to_string()];
        let batch = provider.embed_batch(EmbedKind::Content, &texts).unwrap();
        assert_eq!(batch[0], embed_text("saliency detection", &cfg));
    }

    #[test]
    fn provider_content_embedding_matches_builtin_rule() {
        let cfg = EmbedderConfig::default();
        let provider = BuiltinProvider::new(cfg.clone());
        let direct = content_embedding("A Title", "A Journal", &cfg).unwrap();
        let via = provider_content_embedding(&provider, "A Title", "A Journal").unwrap();
        assert_eq!(direct, via);
    }

    #[test]
    fn config_validation_rejects_tiny_dims() {
        let mut cfg = EmbedderConfig::default();
        cfg.name_dim = 4;
        assert!(cfg.validate().is_err());
        assert!(EmbedderConfig::default().validate().is_ok());
    }

    #[test]
    fn provider_choice_serializes_compactly() {
        let builtin = serde_json::to_string(&ProviderChoice::Builtin).unwrap();
        assert_eq!(builtin, "{\"kind\":\"builtin\"}");
        let remote = ProviderChoice::Remote {
            url: "http://localhost:9000".into(),
        };
        let text = serde_json::to_string(&remote).unwrap();
        assert_eq!(
            serde_json::from_str::<ProviderChoice>(&text).unwrap(),
            remote
        );
    }
}
