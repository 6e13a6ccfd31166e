//! Randomized embedding of edit space into Hamming space.
//!
//! A walk string holds one coin per (step, symbol). Embedding copies the
//! current character at every step and advances the input pointer when the
//! coin for that character at that step is 1. Once the input is exhausted the
//! output is filled with the padding symbol.

use std::str::FromStr;

use rand::RngCore;
use rayon::prelude::*;

use crate::corpus::Symbol;
use crate::error::{Error, Result};
use crate::seed;
use crate::verify::full_edit_distance;

/// Coin table for one embedding round. Steps and symbols are 0-based; the
/// last column of each step belongs to the padding symbol and is never read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkString {
    steps: usize,
    max_len: usize,
    sigma_plus: usize,
    bits: Vec<u64>,
}

impl WalkString {
    /// Pseudorandom walk for strings of length at most `max_len` over an
    /// alphabet of `sigma` symbols: `3 * max_len * (sigma + 1)` coins.
    pub fn random(seed: u64, max_len: usize, sigma: usize) -> Result<Self> {
        if max_len == 0 || sigma == 0 {
            return Err(Error::InvalidParameter(format!(
                "walk needs max_len >= 1 and sigma >= 1 (got {max_len}, {sigma})"
            )));
        }
        if sigma > 255 {
            return Err(Error::AlphabetTooLarge(sigma));
        }
        let steps = 3 * max_len;
        let sigma_plus = sigma + 1;
        let nbits = steps * sigma_plus;
        let mut rng = seed::rng(seed);
        let mut bits: Vec<u64> = (0..nbits.div_ceil(64)).map(|_| rng.next_u64()).collect();
        if !nbits.is_multiple_of(64) {
            let last = bits.len() - 1;
            bits[last] &= (1u64 << (nbits % 64)) - 1;
        }
        Ok(Self {
            steps,
            max_len,
            sigma_plus,
            bits,
        })
    }

    /// Walk from an explicit coin table: `rows[k][j]` is the coin of symbol
    /// `k` at step `j`. All rows must have the same length, which becomes the
    /// number of steps.
    pub fn from_table(rows: &[Vec<bool>], max_len: usize) -> Result<Self> {
        let sigma = rows.len();
        if sigma == 0 || sigma > 255 {
            return Err(Error::InvalidParameter(format!(
                "coin table needs 1..=255 symbol rows, got {sigma}"
            )));
        }
        let steps = rows[0].len();
        if steps == 0 || rows.iter().any(|r| r.len() != steps) {
            return Err(Error::InvalidParameter(
                "coin table rows must be non-empty and of equal length".into(),
            ));
        }
        let sigma_plus = sigma + 1;
        let mut bits = vec![0u64; (steps * sigma_plus).div_ceil(64)];
        for (k, row) in rows.iter().enumerate() {
            for (j, &coin) in row.iter().enumerate() {
                if coin {
                    let idx = j * sigma_plus + k;
                    bits[idx >> 6] |= 1 << (idx & 63);
                }
            }
        }
        Ok(Self {
            steps,
            max_len,
            sigma_plus,
            bits,
        })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn sigma(&self) -> usize {
        self.sigma_plus - 1
    }

    /// Coin of `symbol` at `step`, both 0-based.
    #[inline]
    pub fn coin(&self, step: usize, symbol: Symbol) -> bool {
        let idx = step * self.sigma_plus + symbol as usize;
        (self.bits[idx >> 6] >> (idx & 63)) & 1 == 1
    }

    /// All coins in layout order (step-major).
    pub fn coins(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.steps * self.sigma_plus).map(|idx| (self.bits[idx >> 6] >> (idx & 63)) & 1 == 1)
    }

    fn check_input(&self, x: &[Symbol]) -> Result<()> {
        if x.len() > self.max_len {
            return Err(Error::StringTooLong {
                len: x.len(),
                max_len: self.max_len,
            });
        }
        let sigma = self.sigma();
        if let Some(&bad) = x.iter().find(|&&c| c as usize >= sigma) {
            return Err(Error::SymbolOutOfRange { symbol: bad, sigma });
        }
        Ok(())
    }
}

/// Output of one embedding, truncated to a fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedString {
    pub chars: Vec<Symbol>,
    /// First index holding the padding symbol, or `chars.len()` if none.
    pub pad_start: usize,
}

impl EmbeddedString {
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }
}

/// Embeds `x` and keeps the first `len` output characters.
pub fn embed(x: &[Symbol], walk: &WalkString, len: usize) -> Result<EmbeddedString> {
    walk.check_input(x)?;
    if len == 0 || len > walk.steps {
        return Err(Error::TruncationOutOfRange {
            len,
            steps: walk.steps,
        });
    }
    let pad = walk.sigma() as Symbol;
    let mut chars = Vec::with_capacity(len);
    let mut i = 0;
    let mut pad_start = len;
    for step in 0..len {
        let Some(&c) = x.get(i) else {
            pad_start = step;
            break;
        };
        chars.push(c);
        i += walk.coin(step, c) as usize;
    }
    chars.resize(len, pad);
    Ok(EmbeddedString { chars, pad_start })
}

/// Embedded characters at the given ascending (repeats allowed) positions,
/// computed with a single walk that stops at the last requested position.
pub fn embed_sampled(x: &[Symbol], walk: &WalkString, positions: &[usize]) -> Result<Vec<Symbol>> {
    walk.check_input(x)?;
    let sorted = positions.windows(2).all(|w| w[0] <= w[1]);
    if !sorted || positions.last().is_some_and(|&p| p >= walk.steps) {
        return Err(Error::BadPositions { limit: walk.steps });
    }
    let pad = walk.sigma() as Symbol;
    let mut out = Vec::with_capacity(positions.len());
    let mut wanted = positions.iter().peekable();
    let mut i = 0;
    let mut step = 0;
    while let Some(&&target) = wanted.peek() {
        let Some(&c) = x.get(i) else {
            break;
        };
        if step == target {
            out.push(c);
            wanted.next();
            continue;
        }
        i += walk.coin(step, c) as usize;
        step += 1;
    }
    out.resize(positions.len(), pad);
    Ok(out)
}

pub fn hamming(a: &[Symbol], b: &[Symbol]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Best distortion `min_l Ham(f_l(x), f_l(y)) / ED(x, y)` for each pair over
/// `reps` independent full-length embeddings. Walks are keyed by
/// `(seed, round)`, so raising `reps` only adds rounds.
pub fn measure_distortion(
    pairs: &[(Vec<Symbol>, Vec<Symbol>)],
    sigma: usize,
    reps: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if reps == 0 {
        return Err(Error::InvalidParameter("reps must be >= 1".into()));
    }
    let max_len = pairs
        .iter()
        .map(|(x, y)| x.len().max(y.len()))
        .max()
        .unwrap_or(0)
        .max(1);
    let walks = (0..reps)
        .map(|l| WalkString::random(seed::walk_seed(seed, l), max_len, sigma))
        .collect::<Result<Vec<_>>>()?;
    let steps = 3 * max_len;
    pairs
        .par_iter()
        .enumerate()
        .map(|(idx, (x, y))| {
            let ed = full_edit_distance(x, y);
            if ed == 0 {
                return Err(Error::ZeroDistance { a: idx, b: idx });
            }
            let mut best = usize::MAX;
            for walk in &walks {
                let ex = embed(x, walk, steps)?;
                let ey = embed(y, walk, steps)?;
                best = best.min(hamming(&ex.chars, &ey.chars));
            }
            Ok(best as f64 / ed as f64)
        })
        .collect()
}

/// How far each embedded string is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Truncation {
    /// `avg` for near-uniform lengths (spread within 10% of the mean),
    /// `2 * avg` otherwise.
    #[default]
    Auto,
    Avg,
    TwiceAvg,
    Fixed(usize),
}

impl Truncation {
    /// Resolves to a concrete length in `[1, 3 * max_len]`.
    pub fn resolve(self, min_len: usize, avg_len: usize, max_len: usize) -> usize {
        let len = match self {
            Truncation::Auto => {
                if (max_len - min_len) as f64 <= 0.1 * avg_len as f64 {
                    avg_len
                } else {
                    2 * avg_len
                }
            }
            Truncation::Avg => avg_len,
            Truncation::TwiceAvg => 2 * avg_len,
            Truncation::Fixed(n) => n,
        };
        len.clamp(1, (3 * max_len).max(1))
    }
}

impl FromStr for Truncation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Truncation::Auto),
            "avg" => Ok(Truncation::Avg),
            "2avg" => Ok(Truncation::TwiceAvg),
            n => n
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .map(Truncation::Fixed)
                .ok_or_else(|| {
                    format!("expected auto, avg, 2avg or a positive integer, got {n:?}")
                }),
        }
    }
}
