//! Name normalization, citation-style variants, pair sample generation,
//! and train/validation/test split construction.

mod name;
mod pairs;
mod split;

pub use name::{generate_variants, normalize_name, render_variant, NameError, NormalizedName};
pub use pairs::{generate_pair_samples, VariantPolicy};
pub use split::{
    build_split, read_samples, read_vocabulary, write_samples, write_vocabulary, DatasetSplit,
    SplitError, SplitStats,
};
