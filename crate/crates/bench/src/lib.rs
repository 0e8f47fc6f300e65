//! Shared fixtures for the benchmark targets.

use std::sync::Arc;

use lipscomb::{Alphabet, InfiniteWord, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn alphabet() -> Arc<Alphabet> {
    Arc::new(Alphabet::new(["z", "a", "b", "c"], "z").unwrap())
}

/// Deterministic batch of eventually-periodic words.
pub fn random_words(count: usize, max_prefix: usize, max_period: usize) -> Vec<InfiniteWord> {
    let al = alphabet();
    let letters: Vec<Letter> = al.letters().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    (0..count)
        .map(|_| {
            let prefix_len = rng.gen_range(0..=max_prefix);
            let tail_len = rng.gen_range(1..=max_period);
            let prefix = (0..prefix_len)
                .map(|_| letters[rng.gen_range(0..letters.len())])
                .collect();
            let tail = (0..tail_len)
                .map(|_| letters[rng.gen_range(0..letters.len())])
                .collect();
            InfiniteWord::new(&al, prefix, tail).unwrap()
        })
        .collect()
}
