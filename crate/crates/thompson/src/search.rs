//! Randomised search for pairs with equal `Σ` that are not conjugate in F.
//!
//! Samples are deduplicated, bucketed by `Σ` (classes in canonical form,
//! so equal keys mean equal invariants), and only inside a bucket is the
//! F-decision run, against one representative per class found so far.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thompson_core::sigma::sigma_of;
use thompson_core::word::{format_word, parse_word};
use thompson_core::{decide, word_to_element, Error, FElement, Letter, Reason, SigmaInvariant};

use crate::oracle::{find_conjugator, Oracle};
use crate::random::{random_element, seeded};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    pub samples: usize,
    pub max_len: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: 2024, samples: 100_000, max_len: 10 }
    }
}

/// A pair with equal `Σ`, not conjugate in F, given by words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundPair {
    pub left: String,
    pub right: String,
    /// Layer that separates them: `chain-structure` or `delta`.
    pub reason: String,
}

impl FoundPair {
    pub fn elements(&self) -> Result<(FElement, FElement), Error> {
        Ok((
            word_to_element(&parse_word(&self.left)?),
            word_to_element(&parse_word(&self.right)?),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub seed: u64,
    pub samples: usize,
    pub max_len: usize,
    pub distinct: usize,
    pub buckets: usize,
    /// Buckets holding more than one distinct element.
    pub shared_buckets: usize,
    pub pairs: Vec<FoundPair>,
}

pub fn search(cfg: &SearchConfig) -> Result<SearchReport, Error> {
    let mut rng = seeded(cfg.seed);
    let words: Vec<Vec<Letter>> = (0..cfg.samples).map(|_| random_element(&mut rng, cfg.max_len).0).collect();
    let elements: Vec<FElement> = words.par_iter().map(|w| word_to_element(w)).collect();

    let mut seen = HashMap::new();
    let mut distinct: Vec<usize> = Vec::new();
    for (i, f) in elements.iter().enumerate() {
        if !seen.contains_key(f.map()) {
            seen.insert(f.map().clone(), i);
            distinct.push(i);
        }
    }

    let sigmas: Vec<SigmaInvariant> = distinct
        .par_iter()
        .map(|&i| sigma_of(elements[i].map()))
        .collect::<Result<_, _>>()?;
    let mut order: Vec<SigmaInvariant> = Vec::new();
    let mut buckets: HashMap<SigmaInvariant, Vec<usize>> = HashMap::new();
    for (&i, s) in distinct.iter().zip(sigmas) {
        let bucket = buckets.entry(s.clone()).or_insert_with(|| {
            order.push(s);
            Vec::new()
        });
        bucket.push(i);
    }

    let shared: Vec<&Vec<usize>> = order.iter().map(|s| &buckets[s]).filter(|b| b.len() > 1).collect();
    let per_bucket: Vec<Vec<FoundPair>> = shared
        .par_iter()
        .map(|bucket| split_bucket(bucket, &elements, &words))
        .collect::<Result<_, _>>()?;

    Ok(SearchReport {
        seed: cfg.seed,
        samples: cfg.samples,
        max_len: cfg.max_len,
        distinct: distinct.len(),
        buckets: order.len(),
        shared_buckets: shared.len(),
        pairs: per_bucket.into_iter().flatten().collect(),
    })
}

/// Splits a Σ-bucket into F-conjugacy classes; one pair per extra class,
/// always against the bucket's first class.
fn split_bucket(bucket: &[usize], elements: &[FElement], words: &[Vec<Letter>]) -> Result<Vec<FoundPair>, Error> {
    let mut reps: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    for &i in bucket {
        let mut first_reason = None;
        let mut matched = false;
        for &r in &reps {
            let v = decide(&elements[r], &elements[i])?;
            if v.conjugate {
                matched = true;
                break;
            }
            first_reason.get_or_insert(v.reason);
        }
        if !matched {
            if let Some(&r0) = reps.first() {
                let reason = first_reason.flatten().unwrap_or(Reason::Delta);
                pairs.push(FoundPair {
                    left: format_word(&words[r0]),
                    right: format_word(&words[i]),
                    reason: reason.to_string(),
                });
            }
            reps.push(i);
        }
    }
    Ok(pairs)
}

/// For each pair, whether no conjugator of word length `bound` exists.
pub fn confirm(pairs: &[FoundPair], bound: usize) -> Result<Vec<bool>, Error> {
    if pairs.is_empty() {
        return Ok(Vec::new());
    }
    let ball = Oracle::new(bound).enumerate(bound)?;
    pairs
        .iter()
        .map(|p| {
            let (f, g) = p.elements()?;
            Ok(find_conjugator(&ball, &f, &g).is_none())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_search_is_deterministic() {
        let cfg = SearchConfig { seed: 3, samples: 2_000, max_len: 6 };
        let a = search(&cfg).unwrap();
        let b = search(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.distinct <= 2_000);
        for p in &a.pairs {
            let (f, g) = p.elements().unwrap();
            assert!(!decide(&f, &g).unwrap().conjugate);
        }
    }
}
