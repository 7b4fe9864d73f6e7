//! Brute-force ground truth: balls of words over `x0^{±1}, x1^{±1}`.
//!
//! Words are freely reduced and deduplicated by their breakpoint list, so
//! every element is kept with its first word in length-then-letter order.
//! Layers are expanded in parallel and merged in that fixed order.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use thompson_core::{Error, FElement, Letter, PlMap};

pub const DEFAULT_MAX_LEN: usize = 8;
/// Environment variable overriding [`DEFAULT_MAX_LEN`].
pub const MAX_LEN_VAR: &str = "THOMPSON_ORACLE_MAX_LEN";

/// Search bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    bound: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { bound: DEFAULT_MAX_LEN }
    }
}

/// Every element of word length at most `radius`, each with one word.
#[derive(Clone, Debug)]
pub struct Ball {
    pub radius: usize,
    pub entries: Vec<(Vec<Letter>, FElement)>,
    index: HashMap<PlMap, usize>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, f: &FElement) -> Option<usize> {
        self.index.get(f.map()).copied()
    }

    pub fn elements(&self) -> impl Iterator<Item = &FElement> {
        self.entries.iter().map(|(_, f)| f)
    }
}

impl Oracle {
    pub fn new(bound: usize) -> Oracle {
        Oracle { bound }
    }

    /// Reads the bound from the environment, defaulting to 8.
    pub fn from_env() -> Result<Oracle, Error> {
        match std::env::var(MAX_LEN_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Oracle::new)
                .map_err(|_| Error::Usage(format!("{MAX_LEN_VAR} must be a non-negative integer, got {v:?}"))),
            Err(_) => Ok(Oracle::default()),
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    fn check(&self, max_len: usize) -> Result<(), Error> {
        if max_len > self.bound {
            return Err(Error::Usage(format!(
                "word length {max_len} exceeds the oracle bound {}",
                self.bound
            )));
        }
        Ok(())
    }

    pub fn enumerate(&self, max_len: usize) -> Result<Ball, Error> {
        self.check(max_len)?;
        let id = FElement::identity();
        let mut index = HashMap::new();
        index.insert(id.map().clone(), 0);
        let mut entries = vec![(Vec::new(), id)];
        let gens = Letter::ALL.map(Letter::element);
        let mut frontier = 0..1;
        for _ in 0..max_len {
            let children: Vec<(Vec<Letter>, FElement)> = entries[frontier.clone()]
                .par_iter()
                .flat_map_iter(|(w, f)| {
                    Letter::ALL
                        .iter()
                        .zip(&gens)
                        .filter(|(l, _)| w.last() != Some(&l.inverse()))
                        .map(|(l, g)| {
                            let mut word = w.clone();
                            word.push(*l);
                            (word, f.compose(g))
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            let start = entries.len();
            for (w, f) in children {
                if !index.contains_key(f.map()) {
                    index.insert(f.map().clone(), entries.len());
                    entries.push((w, f));
                }
            }
            frontier = start..entries.len();
        }
        Ok(Ball { radius: max_len, entries, index })
    }

    /// First `h` of the ball with `h f h⁻¹ = g`.
    pub fn brute_force_conjugator(&self, f: &FElement, g: &FElement, max_len: usize) -> Result<Option<FElement>, Error> {
        Ok(find_conjugator(&self.enumerate(max_len)?, f, g))
    }

    /// First `r` of the ball with `r^p = f`.
    pub fn brute_force_root(&self, f: &FElement, p: u32, max_len: usize) -> Result<Option<FElement>, Error> {
        let ball = self.enumerate(max_len)?;
        Ok(ball
            .entries
            .par_iter()
            .find_first(|(_, r)| r.power(i64::from(p)) == *f)
            .map(|(_, r)| r.clone()))
    }
}

pub fn find_conjugator(ball: &Ball, f: &FElement, g: &FElement) -> Option<FElement> {
    ball.entries
        .par_iter()
        .find_first(|(_, h)| h.compose(f) == g.compose(h))
        .map(|(_, h)| h.clone())
}

/// For every `(i, j)` with `small[j] = h small[i] h⁻¹` for some `h` in
/// `conjugators`, the index of the first such `h`.
pub fn conjugate_pairs(small: &Ball, conjugators: &Ball) -> BTreeMap<(usize, usize), usize> {
    let found: Vec<Vec<((usize, usize), usize)>> = conjugators
        .entries
        .par_iter()
        .enumerate()
        .map(|(k, (_, h))| {
            let hinv = h.inverse();
            small
                .elements()
                .enumerate()
                .filter_map(|(i, f)| small.position(&h.compose(f).compose(&hinv)).map(|j| ((i, j), k)))
                .collect()
        })
        .collect();
    let mut out = BTreeMap::new();
    for (pair, k) in found.into_iter().flatten() {
        out.entry(pair).or_insert(k);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use thompson_core::{check_in_f, fixtures};

    fn elem(f: PlMap) -> FElement {
        check_in_f(&f).unwrap()
    }

    #[test]
    fn small_balls() {
        let o = Oracle::default();
        assert_eq!(o.enumerate(0).unwrap().len(), 1);
        assert_eq!(o.enumerate(1).unwrap().len(), 5);
        assert_eq!(o.enumerate(2).unwrap().len(), 17);
        assert!(matches!(o.enumerate(9), Err(Error::Usage(_))));
    }

    #[test]
    fn searches() {
        let o = Oracle::default();
        let x0 = elem(fixtures::x0());
        let x1 = elem(fixtures::x1());
        assert!(o.brute_force_conjugator(&x0, &x0, 0).unwrap().unwrap().is_identity());
        let g = x0.conjugate_by(&x1);
        let h = o.brute_force_conjugator(&x0, &g, 1).unwrap().unwrap();
        assert_eq!(h.compose(&x0), g.compose(&h));
        assert_eq!(o.brute_force_root(&x0.power(2), 2, 2).unwrap(), Some(x0.clone()));
        assert!(o.brute_force_root(&FElement::identity(), 2, 0).unwrap().unwrap().is_identity());
    }

    #[test]
    fn parallel_merge_is_deterministic() {
        let o = Oracle::default();
        let a = o.enumerate(5).unwrap();
        let b = o.enumerate(5).unwrap();
        let words = |x: &Ball| x.entries.iter().map(|(w, _)| w.clone()).collect::<Vec<_>>();
        assert_eq!(words(&a), words(&b));
    }
}
