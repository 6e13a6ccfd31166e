//! Synthetic corpora with planted near-duplicates, exact all-pairs ground
//! truth, accuracy metrics, and the normalized-Hamming probe.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cgk::{embed, WalkString};
use crate::corpus::{Corpus, Symbol};
use crate::error::{Error, Result};
use crate::join::JoinResult;
use crate::pairs::Pair;
use crate::seed;
use crate::verify::banded_edit_distance;

/// Output bytes for generated symbols, in index order.
pub const GEN_ALPHABET: &[u8] = b"ACGTBDEFHIJKLMNOPQRSUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenSpec {
    pub n_base: usize,
    pub dup_per_base: usize,
    pub len: usize,
    pub alphabet_size: usize,
    pub max_edits: usize,
    pub max_shift: usize,
    pub seed: u64,
}

impl GenSpec {
    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.n_base == 0 || self.len == 0 {
            return bad("n_base and len must be >= 1".into());
        }
        if self.alphabet_size == 0 || self.alphabet_size > GEN_ALPHABET.len() {
            return bad(format!(
                "alphabet size must lie in [1, {}]",
                GEN_ALPHABET.len()
            ));
        }
        if self.alphabet_size < 2 && self.max_edits > 0 {
            return bad("substitutions need an alphabet of at least 2 symbols".into());
        }
        if self.max_shift > self.len / 2 {
            return bad(format!(
                "max_shift {} exceeds half the base length {}",
                self.max_shift, self.len
            ));
        }
        Ok(())
    }

    /// Upper bound on the edit distance of every planted pair.
    pub fn planted_bound(&self) -> usize {
        self.max_edits + self.max_shift
    }
}

#[derive(Clone, Debug)]
pub struct Dataset {
    /// Raw lines in output order.
    pub lines: Vec<Vec<u8>>,
    pub corpus: Corpus,
    /// (base line, copy line) pairs with their exact distance.
    pub planted: Vec<Pair>,
}

fn random_edit<R: Rng>(rng: &mut R, s: &mut Vec<Symbol>, sigma: usize) {
    let op = if s.len() <= 1 {
        rng.random_range(0..2) * 2
    } else {
        rng.random_range(0..3)
    };
    match op {
        0 => {
            let at = rng.random_range(0..=s.len());
            s.insert(at, rng.random_range(0..sigma) as Symbol);
        }
        1 => {
            s.remove(rng.random_range(0..s.len()));
        }
        _ => {
            let at = rng.random_range(0..s.len());
            let shift = rng.random_range(1..sigma) as Symbol;
            s[at] = (s[at] + shift) % sigma as Symbol;
        }
    }
}

/// Random base strings plus copies made by dropping a random prefix of at
/// most `max_shift` characters and applying at most `max_edits` random point
/// edits. Lines are shuffled.
pub fn generate_dataset(spec: &GenSpec) -> Result<Dataset> {
    spec.validate()?;
    let sigma = spec.alphabet_size;
    let mut rng = seed::rng(spec.seed);
    let mut strings: Vec<Vec<Symbol>> = Vec::with_capacity(spec.n_base * (1 + spec.dup_per_base));
    let mut links = Vec::new();
    for _ in 0..spec.n_base {
        let base: Vec<Symbol> = (0..spec.len)
            .map(|_| rng.random_range(0..sigma) as Symbol)
            .collect();
        let base_at = strings.len();
        strings.push(base);
        for _ in 0..spec.dup_per_base {
            let shift = rng.random_range(0..=spec.max_shift);
            let mut copy = strings[base_at][shift..].to_vec();
            for _ in 0..rng.random_range(0..=spec.max_edits) {
                random_edit(&mut rng, &mut copy, sigma);
            }
            links.push((base_at, strings.len()));
            strings.push(copy);
        }
    }

    let mut order: Vec<usize> = (0..strings.len()).collect();
    order.shuffle(&mut rng);
    // position_of[original index] = output line
    let mut position_of = vec![0; order.len()];
    for (line, &src) in order.iter().enumerate() {
        position_of[src] = line;
    }
    let lines: Vec<Vec<u8>> = order
        .iter()
        .map(|&src| {
            strings[src]
                .iter()
                .map(|&c| GEN_ALPHABET[c as usize])
                .collect()
        })
        .collect();
    let bound = spec.planted_bound();
    let mut planted: Vec<Pair> = links
        .par_iter()
        .map(|&(b, c)| {
            let d = banded_edit_distance(&strings[b], &strings[c], bound)
                .expect("planted copy within its edit budget");
            Pair::new(position_of[b], position_of[c], d)
        })
        .collect();
    planted.sort_unstable();
    let corpus = Corpus::from_lines(&lines)?;
    Ok(Dataset {
        lines,
        corpus,
        planted,
    })
}

/// Exact self-join: every pair within `k`, found by scanning length-sorted
/// neighbours and verifying with the banded DP.
pub fn oracle_join(corpus: &Corpus, k: usize) -> JoinResult {
    let sorted = corpus.sorted();
    let n = sorted.len();
    let mut pairs: Vec<Pair> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let x = sorted.get(i);
            let sorted = &sorted;
            (i + 1..n)
                .take_while(move |&j| sorted.get(j).len() - x.len() <= k)
                .filter_map(move |j| {
                    banded_edit_distance(x, sorted.get(j), k)
                        .map(|d| Pair::new(sorted.original_id(i), sorted.original_id(j), d))
                })
        })
        .collect();
    pairs.sort_unstable();
    let mut result = JoinResult {
        pairs,
        ..Default::default()
    };
    result.metrics.pairs_output = result.pairs.len();
    result
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metrics {
    pub recall: f64,
    pub precision: f64,
    /// `None` when the ground truth is empty.
    pub candidate_ratio: Option<f64>,
    pub true_positives: usize,
    pub result_pairs: usize,
    pub truth_pairs: usize,
    pub time_embed_ms: u64,
    pub time_filter_ms: u64,
    pub time_verify_ms: u64,
}

/// Accuracy of `result` against `truth`. When `n` is given, every id must be
/// below it.
pub fn evaluate(
    result: &JoinResult,
    truth: &JoinResult,
    candidates: usize,
    n: Option<usize>,
) -> Result<Metrics> {
    if let Some(n) = n {
        for p in result.pairs.iter().chain(&truth.pairs) {
            if p.b >= n {
                return Err(Error::PairOutOfRange { id: p.b, n });
            }
        }
    }
    let truth_ids: HashSet<(usize, usize)> = truth.pairs.iter().map(Pair::ids).collect();
    let result_ids: HashSet<(usize, usize)> = result.pairs.iter().map(Pair::ids).collect();
    let hits = result_ids.intersection(&truth_ids).count();
    let ratio = |num: usize, den: usize| {
        if den == 0 {
            1.0
        } else {
            num as f64 / den as f64
        }
    };
    Ok(Metrics {
        recall: ratio(hits, truth_ids.len()),
        precision: ratio(hits, result_ids.len()),
        candidate_ratio: (!truth_ids.is_empty())
            .then(|| candidates as f64 / truth_ids.len() as f64),
        true_positives: hits,
        result_pairs: result_ids.len(),
        truth_pairs: truth_ids.len(),
        time_embed_ms: result.metrics.time_embed_ms,
        time_filter_ms: result.metrics.time_filter_ms,
        time_verify_ms: result.metrics.time_verify_ms,
    })
}

/// Parameters of [`min_normalized_hamming`].
#[derive(Clone, Debug)]
pub struct ProbeSpec {
    pub reps: usize,
    pub delta: usize,
    pub threshold: usize,
    /// Truncation lengths to report, each in `[1, 3 * max(|x|, |y|)]`.
    pub lengths: Vec<usize>,
    pub seed: u64,
}

/// For every truncation length `L`, the minimum of `Ham / L` over all rounds
/// and all pairs of suffixes starting at multiples of `delta`.
pub fn min_normalized_hamming(
    x: &[Symbol],
    y: &[Symbol],
    sigma: usize,
    spec: &ProbeSpec,
) -> Result<Vec<f64>> {
    if spec.reps == 0 || spec.delta == 0 {
        return Err(Error::InvalidParameter(
            "reps and delta must be >= 1".into(),
        ));
    }
    let max_len = x.len().max(y.len()).max(1);
    let longest = spec.lengths.iter().copied().max().unwrap_or(0);
    if spec.lengths.contains(&0) || longest > 3 * max_len {
        return Err(Error::TruncationOutOfRange {
            len: if longest > 3 * max_len { longest } else { 0 },
            steps: 3 * max_len,
        });
    }
    let subs = spec.threshold.div_ceil(spec.delta).max(1);
    let suffixes = |s: &[Symbol]| -> Vec<Vec<Symbol>> {
        (0..subs)
            .map(|k| k * spec.delta)
            .filter(|&start| start < s.len() || start == 0)
            .map(|start| s[start.min(s.len())..].to_vec())
            .collect()
    };
    let (xs, ys) = (suffixes(x), suffixes(y));
    let mut best = vec![f64::INFINITY; spec.lengths.len()];
    if longest == 0 {
        return Ok(best);
    }
    for l in 0..spec.reps {
        let walk = WalkString::random(seed::walk_seed(spec.seed, l), max_len, sigma)?;
        let ex = xs
            .iter()
            .map(|s| embed(s, &walk, longest).map(|e| e.chars))
            .collect::<Result<Vec<_>>>()?;
        let ey = ys
            .iter()
            .map(|s| embed(s, &walk, longest).map(|e| e.chars))
            .collect::<Result<Vec<_>>>()?;
        for a in &ex {
            for b in &ey {
                let mut prefix = Vec::with_capacity(longest + 1);
                prefix.push(0usize);
                for (p, q) in a.iter().zip(b) {
                    prefix.push(prefix.last().unwrap() + (p != q) as usize);
                }
                for (slot, &len) in best.iter_mut().zip(&spec.lengths) {
                    *slot = slot.min(prefix[len] as f64 / len as f64);
                }
            }
        }
    }
    Ok(best)
}
