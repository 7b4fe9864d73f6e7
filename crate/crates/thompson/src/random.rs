//! Seeded random words and elements.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thompson_core::{word_to_element, FElement, Letter};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A freely reduced word of exactly `len` letters.
pub fn reduced_word<R: Rng>(rng: &mut R, len: usize) -> Vec<Letter> {
    let mut word: Vec<Letter> = Vec::with_capacity(len);
    while word.len() < len {
        let l = Letter::ALL[rng.gen_range(0..4)];
        if word.last() != Some(&l.inverse()) {
            word.push(l);
        }
    }
    word
}

/// A reduced word with length uniform in `0..=max_len`, and its element.
pub fn random_element<R: Rng>(rng: &mut R, max_len: usize) -> (Vec<Letter>, FElement) {
    let len = rng.gen_range(0..=max_len);
    let w = reduced_word(rng, len);
    let f = word_to_element(&w);
    (w, f)
}

/// Like [`random_element`] but never the identity.
pub fn random_nontrivial<R: Rng>(rng: &mut R, max_len: usize) -> (Vec<Letter>, FElement) {
    loop {
        let (w, f) = random_element(rng, max_len.max(1));
        if !f.is_identity() {
            return (w, f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a: Vec<_> = (0..5).map(|_| 0).scan(seeded(7), |r, _| Some(random_element(r, 6).0)).collect();
        let b: Vec<_> = (0..5).map(|_| 0).scan(seeded(7), |r, _| Some(random_element(r, 6).0)).collect();
        assert_eq!(a, b);
        let w = reduced_word(&mut seeded(1), 9);
        assert_eq!(w.len(), 9);
        assert!(w.windows(2).all(|p| p[1] != p[0].inverse()));
    }
}
