//! Name normalization and citation-style variant generation.

use thiserror::Error;

use crate::model::{display_name, NameVariant, VariantStyle};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NameError {
    #[error("empty name")]
    EmptyName,
}

/// A normalized name: ordered tokens (first, middles..., last), with any
/// trailing 4-digit disambiguation suffix already stripped. Diacritics
/// and case are preserved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedName {
    tokens: Vec<String>,
}

impl NormalizedName {
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn first(&self) -> &str {
        &self.tokens[0]
    }

    pub fn last(&self) -> &str {
        &self.tokens[self.tokens.len() - 1]
    }

    pub fn middles(&self) -> &[String] {
        &self.tokens[1..self.tokens.len() - 1]
    }
}

/// Splits a raw name into tokens, stripping the DBLP-style suffix and
/// collapsing whitespace.
pub fn normalize_name(raw: &str) -> Result<NormalizedName, NameError> {
    let stripped = display_name(raw);
    let tokens: Vec<String> = stripped.split_whitespace().map(String::from).collect();
    if tokens.is_empty() {
        return Err(NameError::EmptyName);
    }
    Ok(NormalizedName { tokens })
}

fn initial(token: &str) -> String {
    let first_char = token.chars().next().expect("token is non-empty");
    format!("{first_char}.")
}

/// Renders one style. Styles other than `Full` require at least two
/// tokens; single-token names only admit `Full`.
pub fn render_variant(name: &NormalizedName, style: VariantStyle) -> NameVariant {
    let tokens = name.tokens();
    let rendered = if tokens.len() == 1 {
        tokens[0].clone()
    } else {
        match style {
            VariantStyle::Full => tokens.join(" "),
            VariantStyle::LastCommaFirst => {
                format!("{}, {}", name.last(), tokens[..tokens.len() - 1].join(" "))
            }
            VariantStyle::InitialLast => format!("{} {}", initial(name.first()), name.last()),
            VariantStyle::LastCommaInitial => {
                format!("{}, {}", name.last(), initial(name.first()))
            }
            VariantStyle::FirstInitialLast => format!("{} {}", name.first(), initial(name.last())),
            VariantStyle::InitialsLast => {
                let mut parts: Vec<String> = tokens[..tokens.len() - 1]
                    .iter()
                    .map(|t| initial(t))
                    .collect();
                parts.push(name.last().to_string());
                parts.join(" ")
            }
        }
    };
    NameVariant { style, rendered }
}

/// Produces the deterministic variant list for a normalized name:
/// five styles for two-token names, six for names with middle tokens,
/// and `Full` alone for single-token names.
pub fn generate_variants(name: &NormalizedName) -> Vec<NameVariant> {
    let n = name.tokens().len();
    if n == 1 {
        return vec![render_variant(name, VariantStyle::Full)];
    }
    let mut styles = vec![
        VariantStyle::Full,
        VariantStyle::LastCommaFirst,
        VariantStyle::InitialLast,
        VariantStyle::LastCommaInitial,
        VariantStyle::FirstInitialLast,
    ];
    if n >= 3 {
        styles.push(VariantStyle::InitialsLast);
    }
    styles
        .into_iter()
        .map(|s| render_variant(name, s))
        .collect()
}
