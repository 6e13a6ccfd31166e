#![allow(dead_code)]

use embedjoin::pinned::{PinnedScheme, WORKED_EXAMPLE};
use embedjoin::{Corpus, Symbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXAMPLE_LINES: [&str; 4] = ["ACGTGACGTG", "ACGTCGCGTG", "ACTTACCTG", "ATCGATCGGT"];

pub fn example_corpus() -> Corpus {
    Corpus::from_lines(EXAMPLE_LINES).unwrap()
}

pub fn example_pinned() -> PinnedScheme {
    PinnedScheme::parse(WORKED_EXAMPLE).unwrap()
}

pub fn encode(corpus: &Corpus, s: &str) -> Vec<Symbol> {
    corpus.alphabet().encode(s.as_bytes()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_string(rng: &mut impl Rng, len: usize, sigma: usize) -> Vec<Symbol> {
    (0..len)
        .map(|_| rng.random_range(0..sigma) as Symbol)
        .collect()
}

/// `x` with `edits` random insertions, deletions or substitutions.
pub fn mutate(rng: &mut impl Rng, x: &[Symbol], edits: usize, sigma: usize) -> Vec<Symbol> {
    let mut y = x.to_vec();
    for _ in 0..edits {
        match rng.random_range(0..3) {
            0 => {
                let at = rng.random_range(0..=y.len());
                y.insert(at, rng.random_range(0..sigma) as Symbol);
            }
            1 if !y.is_empty() => {
                y.remove(rng.random_range(0..y.len()));
            }
            _ if !y.is_empty() => {
                let at = rng.random_range(0..y.len());
                y[at] = rng.random_range(0..sigma) as Symbol;
            }
            _ => {}
        }
    }
    y
}
