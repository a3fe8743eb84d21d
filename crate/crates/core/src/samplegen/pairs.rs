//! Author/co-author pair sample generation.
//!
//! Every ordered pair of distinct authors in a record yields samples: the
//! first slot is the target (whose entity supplies the label), the second
//! the co-author. The variant policy controls how many citation-style
//! combinations each pair expands into.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{BibRecord, EntityVocabulary, NameVariant, TrainingSample, VariantStyle};
use crate::samplegen::name::{generate_variants, normalize_name, render_variant};

/// How many variant combinations each ordered author pair expands into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantPolicy {
    /// Full cartesian product of the two variant lists.
    All,
    /// The single (Full, Full) combination.
    FullOnly,
    /// (Full, Full) plus a deterministic pseudo-random sample of `n - 1`
    /// further combinations from the remaining product.
    Capped(usize),
}

fn full_variant(entity_id: &str) -> Option<NameVariant> {
    let name = normalize_name(entity_id).ok()?;
    Some(render_variant(&name, VariantStyle::Full))
}

/// Stable per-pair seed so capped sampling is deterministic without
/// global state.
fn pair_seed(record_key: &str, target: usize, coauthor: usize) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in record_key.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ ((target as u64) << 32) ^ (coauthor as u64)
}

/// Emits one `TrainingSample` per (target-variant, coauthor-variant)
/// combination for every ordered pair of distinct authors whose entities
/// are both in `vocab`. Records with fewer than two authors yield an
/// empty list.
pub fn generate_pair_samples(
    record: &BibRecord,
    policy: VariantPolicy,
    vocab: &EntityVocabulary,
) -> Vec<TrainingSample> {
    let mut samples = Vec::new();
    let k = record.authors.len();
    if k < 2 {
        return samples;
    }
    for target_idx in 0..k {
        let target = &record.authors[target_idx];
        let Some(label) = vocab.index_of(&target.entity_id) else {
            continue;
        };
        let Ok(target_name) = normalize_name(&target.entity_id) else {
            continue;
        };
        for coauthor_idx in 0..k {
            if coauthor_idx == target_idx {
                continue;
            }
            let coauthor = &record.authors[coauthor_idx];
            if !vocab.contains(&coauthor.entity_id) {
                continue;
            }
            let Ok(coauthor_name) = normalize_name(&coauthor.entity_id) else {
                continue;
            };

            let combos: Vec<(NameVariant, NameVariant)> = match policy {
                VariantPolicy::FullOnly => {
                    vec![(
                        render_variant(&target_name, VariantStyle::Full),
                        render_variant(&coauthor_name, VariantStyle::Full),
                    )]
                }
                VariantPolicy::All => {
                    let tv = generate_variants(&target_name);
                    let cv = generate_variants(&coauthor_name);
                    tv.iter()
                        .flat_map(|t| cv.iter().map(move |c| (t.clone(), c.clone())))
                        .collect()
                }
                VariantPolicy::Capped(n) => {
                    let tv = generate_variants(&target_name);
                    let cv = generate_variants(&coauthor_name);
                    let full_pair = (
                        render_variant(&target_name, VariantStyle::Full),
                        render_variant(&coauthor_name, VariantStyle::Full),
                    );
                    let mut rest: Vec<(NameVariant, NameVariant)> = tv
                        .iter()
                        .flat_map(|t| cv.iter().map(move |c| (t.clone(), c.clone())))
                        .filter(|(t, c)| {
                            !(t.style == VariantStyle::Full && c.style == VariantStyle::Full)
                        })
                        .collect();
                    let mut rng =
                        ChaCha8Rng::seed_from_u64(pair_seed(&record.key, target_idx, coauthor_idx));
                    rest.shuffle(&mut rng);
                    rest.truncate(n.saturating_sub(1));
                    let mut combos = vec![full_pair];
                    combos.extend(rest);
                    combos
                }
            };

            for (author_variant, coauthor_variant) in combos {
                samples.push(TrainingSample {
                    author_variant,
                    coauthor_variant,
                    title: record.title.clone(),
                    source: record.source.clone(),
                    label,
                    record_key: record.key.clone(),
                });
            }
        }
    }
    samples
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AuthorRef, RecordKind};

    fn record(key: &str, authors: &[&str]) -> BibRecord {
        BibRecord {
            key: key.to_string(),
            kind: RecordKind::Article,
            authors: authors.iter().map(|a| AuthorRef::canonical(*a)).collect(),
            title: "A Title".to_string(),
            source: "A Journal".to_string(),
            year: Some(2021),
        }
    }

    fn vocab_for(records: &[BibRecord]) -> EntityVocabulary {
        EntityVocabulary::build(records).unwrap()
    }

    #[test]
    fn two_author_full_only_yields_two_samples() {
        let r = record("k", &["Alice Ames", "Bob Brown"]);
        let vocab = vocab_for(std::slice::from_ref(&r));
        let samples = generate_pair_samples(&r, VariantPolicy::FullOnly, &vocab);
        assert_eq!(samples.len(), 2);
        // Each author appears exactly once as target.
        let labels: Vec<u32> = samples.iter().map(|s| s.label).collect();
        assert!(labels.contains(&vocab.index_of("Alice Ames").unwrap()));
        assert!(labels.contains(&vocab.index_of("Bob Brown").unwrap()));
    }

    #[test]
    fn three_author_full_only_yields_six_samples() {
        let r = record("k", &["Alice Ames", "Bob Brown", "Cara Cole"]);
        let vocab = vocab_for(std::slice::from_ref(&r));
        let samples = generate_pair_samples(&r, VariantPolicy::FullOnly, &vocab);
        assert_eq!(samples.len(), 6);
    }

    #[test]
    fn all_policy_expands_full_cartesian_product() {
        // Both names are two-token, so 5 variants each; 2 ordered pairs.
        let r = record("k", &["Alice Ames", "Bob Brown"]);
        let vocab = vocab_for(std::slice::from_ref(&r));
        let samples = generate_pair_samples(&r, VariantPolicy::All, &vocab);
        assert_eq!(samples.len(), 2 * 5 * 5);
    }

    #[test]
    fn single_author_record_yields_empty() {
        let r = record("k", &["Alice Ames"]);
        let vocab = vocab_for(std::slice::from_ref(&r));
        assert!(generate_pair_samples(&r, VariantPolicy::All, &vocab).is_empty());
    }

    #[test]
    fn label_matches_target_entity() {
        let r = record("k", &["Alice Ames", "Bob Brown", "Cara Cole"]);
        let vocab = vocab_for(std::slice::from_ref(&r));
        for s in generate_pair_samples(&r, VariantPolicy::All, &vocab) {
            let entity = vocab.entity_of(s.label).unwrap();
            let name = normalize_name(entity).unwrap();
            let expected = render_variant(&name, s.author_variant.style);
            assert_eq!(s.author_variant.rendered, expected.rendered);
        }
    }

    #[test]
    fn out_of_vocabulary_pairs_are_skipped() {
        let r = record("k", &["Alice Ames", "Bob Brown", "Zed Zulu"]);
        let train = record("t", &["Alice Ames", "Bob Brown"]);
        let vocab = vocab_for(std::slice::from_ref(&train));
        let samples = generate_pair_samples(&r, VariantPolicy::FullOnly, &vocab);
        // Only Alice<->Bob pairs survive; Zed is unknown in both slots.
        assert_eq!(samples.len(), 2);
        assert!(samples
            .iter()
            .all(|s| !s.author_variant.rendered.contains("Zed")
                && !s.coauthor_variant.rendered.contains("Zed")));
    }

    #[test]
    fn capped_policy_keeps_full_pair_and_is_deterministic() {
        let r = record("k", &["Alice Ames", "Bob Brown"]);
        let vocab = vocab_for(std::slice::from_ref(&r));
        let a = generate_pair_samples(&r, VariantPolicy::Capped(4), &vocab);
        let b = generate_pair_samples(&r, VariantPolicy::Capped(4), &vocab);
        assert_eq!(a, b);
        // 2 ordered pairs, 4 combos each.
        assert_eq!(a.len(), 8);
        // The first combo of each pair is Full x Full.
        assert_eq!(a[0].author_variant.style, VariantStyle::Full);
        assert_eq!(a[0].coauthor_variant.style, VariantStyle::Full);
        assert_eq!(a[4].author_variant.style, VariantStyle::Full);
        assert_eq!(a[4].coauthor_variant.style, VariantStyle::Full);
    }

    #[test]
    fn capped_larger_than_product_yields_whole_product() {
        let r = record("k", &["Alice Ames", "Bob Brown"]);
        let vocab = vocab_for(std::slice::from_ref(&r));
        let samples = generate_pair_samples(&r, VariantPolicy::Capped(1000), &vocab);
        assert_eq!(samples.len(), 2 * 5 * 5);
    }

    #[test]
    fn ordered_pairs_are_distinct_samples() {
        let r = record("k", &["Alice Ames", "Bob Brown"]);
        let vocab = vocab_for(std::slice::from_ref(&r));
        let samples = generate_pair_samples(&r, VariantPolicy::FullOnly, &vocab);
        assert_ne!(samples[0].author_variant, samples[1].author_variant);
        assert_eq!(samples[0].author_variant, samples[1].coauthor_variant);
    }
}
