//! Remote embedding provider.
//!
//! Speaks a small wire protocol to a service that hosts real embedding
//! models: `POST <url>/embed` with `{"kind": "name"|"content",
//! "texts": [...]}` returns `{"vectors": [[...], ...]}`, one vector per
//! input in request order.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::embed::{EmbedError, EmbedKind};
use crate::model::EmbeddingVector;

#[derive(Debug, Serialize)]
struct EmbedRequest<'a> {
    kind: &'a str,
    texts: &'a [String],
}

#[derive(Debug, Deserialize)]
struct EmbedResponse {
    vectors: Vec<Vec<f64>>,
}

/// HTTP client for the remote embed endpoint.
pub struct RemoteEmbedder {
    url: String,
    agent: ureq::Agent,
    retries: u32,
}

impl RemoteEmbedder {
    pub fn new(url: impl Into<String>, timeout: Duration, retries: u32) -> Self {
        RemoteEmbedder {
            url: url.into(),
            agent: ureq::AgentBuilder::new().timeout(timeout).build(),
            retries,
        }
    }

    pub fn url(&self) -> &str {
        &self.url
    }

    /// Embeds a batch, validating every returned vector against
    /// `expected_dim`. Order is the request order.
    pub fn embed_batch(
        &self,
        kind: EmbedKind,
        texts: &[String],
        expected_dim: usize,
    ) -> Result<Vec<EmbeddingVector>, EmbedError> {
        if texts.is_empty() {
            return Err(EmbedError::EmptyBatch);
        }
        let endpoint = format!("{}/embed", self.url.trim_end_matches('/'));
        let body = EmbedRequest {
            kind: match kind {
                EmbedKind::Name => "name",
                EmbedKind::Content => "content",
            },
            texts,
        };

        let mut last_err = None;
        for _ in 0..=self.retries {
            match self.agent.post(&endpoint).send_json(&body) {
                Ok(response) => {
                    let parsed: EmbedResponse = response
                        .into_json()
                        .map_err(|e| EmbedError::Provider(e.to_string()))?;
                    return Self::validate(parsed, texts.len(), expected_dim);
                }
                Err(ureq::Error::Status(code, _)) => {
                    last_err = Some(EmbedError::Provider(format!(
                        "embed endpoint returned status {code}"
                    )));
                }
                Err(e) => last_err = Some(EmbedError::Provider(e.to_string())),
            }
        }
        Err(last_err.expect("at least one attempt"))
    }

    fn validate(
        parsed: EmbedResponse,
        expected_count: usize,
        expected_dim: usize,
    ) -> Result<Vec<EmbeddingVector>, EmbedError> {
        if parsed.vectors.len() != expected_count {
            return Err(EmbedError::Provider(format!(
                "expected {expected_count} vectors, received {}",
                parsed.vectors.len()
            )));
        }
        parsed
            .vectors
            .into_iter()
            .map(|values| {
                if values.len() != expected_dim {
                    return Err(EmbedError::DimMismatch {
                        expected: expected_dim,
                        received: values.len(),
                    });
                }
                EmbeddingVector::new(values).map_err(|_| {
                    EmbedError::Provider("remote vector contains non-finite values".into())
                })
            })
            .collect()
    }
}
