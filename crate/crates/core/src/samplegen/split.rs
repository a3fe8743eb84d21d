//! Train/validation/test split construction.
//!
//! Whole records are assigned to splits (never individual samples), and
//! records sharing a title always land in the same split, so title
//! disjointness holds structurally for every seed. Split sizing targets
//! the requested fractions measured in generated sample counts.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{BibRecord, EntityVocabulary, TrainingSample};
use crate::samplegen::name::{generate_variants, normalize_name};
use crate::samplegen::pairs::{generate_pair_samples, VariantPolicy};

#[derive(Debug, Error)]
pub enum SplitError {
    #[error("split fractions must be positive and sum to 1 (got {0}, {1}, {2})")]
    BadFractions(f64, f64, f64),
    #[error("degenerate split")]
    Degenerate,
    #[error("title overlap across splits: {0:?}")]
    TitleOverlap(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("sample file line {line}: {source}")]
    Malformed {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
}

/// The three sample collections plus the label vocabulary they share.
#[derive(Debug, Clone)]
pub struct DatasetSplit {
    pub train: Vec<TrainingSample>,
    pub validation: Vec<TrainingSample>,
    pub test: Vec<TrainingSample>,
    pub vocabulary: EntityVocabulary,
}

/// Sizing statistics for a built split.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct SplitStats {
    pub target_fractions: (f64, f64, f64),
    pub achieved_fractions: (f64, f64, f64),
    pub record_counts: (usize, usize, usize),
    pub sample_counts: (usize, usize, usize),
}

fn variant_count(entity_id: &str) -> usize {
    normalize_name(entity_id)
        .map(|n| generate_variants(&n).len())
        .unwrap_or(0)
}

/// Sample count a record would generate before vocabulary filtering.
fn estimated_weight(record: &BibRecord, policy: VariantPolicy) -> usize {
    let k = record.authors.len();
    if k < 2 {
        return 0;
    }
    let mut total = 0;
    for t in 0..k {
        for c in 0..k {
            if t == c {
                continue;
            }
            let product = variant_count(&record.authors[t].entity_id)
                * variant_count(&record.authors[c].entity_id);
            total += match policy {
                VariantPolicy::All => product,
                VariantPolicy::FullOnly => usize::from(product > 0),
                VariantPolicy::Capped(n) => product.min(n),
            };
        }
    }
    total
}

/// Builds a dataset split from the selected corpus.
///
/// Records are grouped by exact title, the groups are shuffled with a
/// seeded generator, and each group goes to the split with the largest
/// remaining sample-count deficit. The vocabulary comes from the training
/// partition only; validation/test keep only pairs whose target has at
/// least one training sample and whose co-author is in the vocabulary,
/// and drop records contributing fewer than two in-vocabulary co-authors.
pub fn build_split(
    records: &[BibRecord],
    fractions: (f64, f64, f64),
    seed: u64,
    policy: VariantPolicy,
) -> Result<(DatasetSplit, SplitStats), SplitError> {
    let (ft, fv, fe) = fractions;
    if !(ft > 0.0 && fv > 0.0 && fe > 0.0) || (ft + fv + fe - 1.0).abs() > 1e-9 {
        return Err(SplitError::BadFractions(ft, fv, fe));
    }

    // Group by title so duplicate titles can never straddle a boundary.
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        groups.entry(r.title.as_str()).or_default().push(i);
    }
    let mut group_list: Vec<(Vec<usize>, usize)> = groups
        .into_values()
        .map(|idxs| {
            let weight = idxs
                .iter()
                .map(|&i| estimated_weight(&records[i], policy))
                .sum();
            (idxs, weight)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    group_list.shuffle(&mut rng);

    let total_weight: usize = group_list.iter().map(|(_, w)| w).sum();
    let targets = [
        ft * total_weight as f64,
        fv * total_weight as f64,
        fe * total_weight as f64,
    ];
    let mut assigned = [0.0f64; 3];
    let mut partitions: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (idxs, weight) in group_list {
        let mut best = 0;
        for s in 1..3 {
            if targets[s] - assigned[s] > targets[best] - assigned[best] {
                best = s;
            }
        }
        assigned[best] += weight as f64;
        partitions[best].extend(idxs);
    }
    // Restore corpus order inside each partition for reproducible output.
    for p in &mut partitions {
        p.sort_unstable();
    }

    let train_records: Vec<&BibRecord> = partitions[0].iter().map(|&i| &records[i]).collect();
    if train_records.is_empty() {
        return Err(SplitError::Degenerate);
    }
    let owned_train: Vec<BibRecord> = train_records.iter().map(|r| (*r).clone()).collect();
    let vocabulary = EntityVocabulary::build(&owned_train).map_err(|_| SplitError::Degenerate)?;

    let train: Vec<TrainingSample> = train_records
        .iter()
        .flat_map(|r| generate_pair_samples(r, policy, &vocabulary))
        .collect();
    let train_labels: BTreeSet<u32> = train.iter().map(|s| s.label).collect();

    let eval_partition = |part: &[usize]| -> Vec<TrainingSample> {
        let mut out = Vec::new();
        for &i in part {
            let record = &records[i];
            let in_vocab = record
                .authors
                .iter()
                .filter(|a| vocabulary.contains(&a.entity_id))
                .count();
            if in_vocab < 2 {
                continue;
            }
            out.extend(
                generate_pair_samples(record, policy, &vocabulary)
                    .into_iter()
                    .filter(|s| train_labels.contains(&s.label)),
            );
        }
        out
    };
    let validation = eval_partition(&partitions[1]);
    let test = eval_partition(&partitions[2]);

    if train.is_empty() || validation.is_empty() || test.is_empty() {
        return Err(SplitError::Degenerate);
    }

    verify_title_disjointness(&train, &validation, &test)?;

    let total = (train.len() + validation.len() + test.len()) as f64;
    let stats = SplitStats {
        target_fractions: fractions,
        achieved_fractions: (
            train.len() as f64 / total,
            validation.len() as f64 / total,
            test.len() as f64 / total,
        ),
        record_counts: (
            partitions[0].len(),
            partitions[1].len(),
            partitions[2].len(),
        ),
        sample_counts: (train.len(), validation.len(), test.len()),
    };
    let split = DatasetSplit {
        train,
        validation,
        test,
        vocabulary,
    };
    Ok((split, stats))
}

fn verify_title_disjointness(
    train: &[TrainingSample],
    validation: &[TrainingSample],
    test: &[TrainingSample],
) -> Result<(), SplitError> {
    let titles = |s: &[TrainingSample]| -> BTreeSet<String> {
        s.iter().map(|x| x.title.clone()).collect()
    };
    let (a, b, c) = (titles(train), titles(validation), titles(test));
    for t in a.intersection(&b).chain(a.intersection(&c)).chain(b.intersection(&c)) {
        return Err(SplitError::TitleOverlap(t.clone()));
    }
    Ok(())
}

/// Writes samples as newline-delimited JSON objects.
pub fn write_samples<W: Write>(mut w: W, samples: &[TrainingSample]) -> Result<(), SplitError> {
    for s in samples {
        serde_json::to_writer(&mut w, s).map_err(|e| SplitError::Malformed {
            line: 0,
            source: e,
        })?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_samples<R: BufRead>(r: R) -> Result<Vec<TrainingSample>, SplitError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line).map_err(|e| SplitError::Malformed {
                line: i + 1,
                source: e,
            })?,
        );
    }
    Ok(out)
}

/// Vocabulary file: one entity id per line, line number = class index.
pub fn write_vocabulary<W: Write>(mut w: W, vocab: &EntityVocabulary) -> Result<(), SplitError> {
    for entity in vocab.entities() {
        writeln!(w, "{entity}")?;
    }
    Ok(())
}

pub fn read_vocabulary<R: BufRead>(r: R) -> Result<EntityVocabulary, SplitError> {
    let mut entities = Vec::new();
    for line in r.lines() {
        let line = line?;
        if !line.is_empty() {
            entities.push(line);
        }
    }
    Ok(EntityVocabulary::from_ordered(entities))
}
