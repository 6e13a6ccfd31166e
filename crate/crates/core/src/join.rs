//! The similarity self-join pipeline.
//!
//! 1. Sort strings by length, embed every string (or, in plus mode, every
//!    suffix starting at a multiple of `delta`) `r` times and keep only the
//!    characters the `r * z` hash functions sample.
//! 2. Walk the strings in sorted order. Each suffix probes its bucket in each
//!    of the `r * z` tables, records collisions with earlier strings and then
//!    inserts itself. Entries whose length trails the current string by more
//!    than `K` can never match again and are evicted on contact.
//! 3. A string pair becomes a candidate once some suffix pair collides in at
//!    least `T` tables; every candidate is verified with the banded DP.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::cgk::{embed_sampled, Truncation, WalkString};
use crate::corpus::{Corpus, Symbol};
use crate::error::{Error, Result};
use crate::lsh::{inner_product_mod, LshScheme, DEFAULT_PRIME};
use crate::pairs::Pair;
use crate::seed;
use crate::verify::banded_edit_distance;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Plus mode when more than one suffix per string is needed, basic
    /// otherwise.
    #[default]
    Auto,
    /// One embedding per string.
    Basic,
    /// `ceil(K / delta)` suffixes per string with T-match counting.
    Plus,
}

/// How the signature length `m` is derived from the relative threshold
/// `x = 100 * K / N` (percent).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BitsRule {
    /// `m = ceil(log2 N) - floor(log2 x)`.
    #[default]
    LogMaxLen,
    /// `m = base - floor(log2 x)`.
    Base(u32),
}

/// User-supplied parameters. Unset fields take the defaults of
/// [`resolve_parameters`].
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub reps: Option<usize>,
    pub tables: Option<usize>,
    pub bits: Option<usize>,
    pub delta: Option<usize>,
    pub match_threshold: Option<usize>,
    pub truncation: Truncation,
    pub mode: Mode,
    pub bits_rule: BitsRule,
    pub prime: Option<u64>,
    pub grouping: bool,
    pub seed: u64,
}

/// Fully resolved join parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinConfig {
    pub threshold: usize,
    pub reps: usize,
    pub tables: usize,
    pub bits: usize,
    pub delta: usize,
    pub match_threshold: usize,
    pub truncation: usize,
    pub seed: u64,
    /// Always `Basic` or `Plus` once resolved.
    pub mode: Mode,
    pub grouping: bool,
    pub prime: u64,
}

impl JoinConfig {
    /// Number of suffixes embedded per string.
    pub fn substrings(&self) -> usize {
        match self.mode {
            Mode::Plus => self.threshold.div_ceil(self.delta),
            _ => 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.threshold == 0 {
            return bad("threshold K must be >= 1".into());
        }
        if self.reps == 0 || self.tables == 0 || self.bits == 0 {
            return bad("r, z and m must be >= 1".into());
        }
        if self.delta == 0 || self.truncation == 0 {
            return bad("delta and truncation length must be >= 1".into());
        }
        if self.match_threshold == 0 || self.match_threshold > self.tables {
            return bad(format!(
                "match threshold T={} must lie in [1, z={}]",
                self.match_threshold, self.tables
            ));
        }
        if self.mode == Mode::Auto {
            return bad("mode must be resolved to basic or plus".into());
        }
        Ok(())
    }
}

fn ceil_log2(n: usize) -> i64 {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as i64
    }
}

/// Signature length for threshold `k` on strings of maximum length `max_len`.
pub fn default_bits(rule: BitsRule, k: usize, max_len: usize) -> usize {
    let percent = 100.0 * k as f64 / max_len.max(1) as f64;
    let floor_log = percent.log2().floor() as i64;
    let base = match rule {
        BitsRule::LogMaxLen => ceil_log2(max_len),
        BitsRule::Base(b) => b as i64,
    };
    (base - floor_log).clamp(1, 64) as usize
}

/// Fills every unset parameter from the corpus statistics: `r = 7`,
/// `delta = floor(sqrt(avg))`, `T = 2` and `z = 16` when more than one suffix
/// per string is needed, `T = 1` and `z = 7` otherwise.
pub fn resolve_parameters(corpus: &Corpus, k: usize, ov: &Overrides) -> Result<JoinConfig> {
    if k == 0 {
        return Err(Error::InvalidParameter("threshold K must be >= 1".into()));
    }
    let (min_len, avg_len, max_len) = (corpus.min_len(), corpus.avg_len(), corpus.max_len());
    let delta = ov
        .delta
        .unwrap_or_else(|| ((avg_len as f64).sqrt().floor() as usize).max(1));
    if delta == 0 {
        return Err(Error::InvalidParameter("delta must be >= 1".into()));
    }
    let multi = k.div_ceil(delta) > 1;
    let mode = match ov.mode {
        Mode::Auto if multi => Mode::Plus,
        Mode::Auto => Mode::Basic,
        m => m,
    };
    let match_threshold = ov
        .match_threshold
        .unwrap_or(if mode == Mode::Plus && multi { 2 } else { 1 });
    let tables = ov
        .tables
        .unwrap_or(if match_threshold >= 2 { 16 } else { 7 });
    let cfg = JoinConfig {
        threshold: k,
        reps: ov.reps.unwrap_or(7),
        tables,
        bits: ov
            .bits
            .unwrap_or_else(|| default_bits(ov.bits_rule, k, max_len)),
        delta,
        match_threshold,
        truncation: ov.truncation.resolve(min_len, avg_len, max_len),
        seed: ov.seed,
        mode,
        grouping: ov.grouping,
        prime: ov.prime.unwrap_or(DEFAULT_PRIME),
    };
    cfg.validate()?;
    Ok(cfg)
}

/// The `k`-th suffix (1-based) of sorted string `string`, starting at
/// character `start` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubstringRef {
    pub string: usize,
    pub k: usize,
    pub start: usize,
}

/// Sorted corpus plus the sampled signatures and bucket keys of every suffix.
#[derive(Clone, Debug)]
pub struct JoinIndex {
    corpus: Corpus,
    config: JoinConfig,
    scheme: LshScheme,
    items: Vec<SubstringRef>,
    /// `items[offsets[i]..offsets[i + 1]]` are the suffixes of string `i`.
    offsets: Vec<usize>,
    signatures: Vec<Symbol>,
    keys: Vec<u64>,
}

impl JoinIndex {
    pub fn corpus(&self) -> &Corpus {
        &self.corpus
    }

    pub fn config(&self) -> &JoinConfig {
        &self.config
    }

    pub fn scheme(&self) -> &LshScheme {
        &self.scheme
    }

    pub fn items(&self) -> &[SubstringRef] {
        &self.items
    }

    pub fn items_of(&self, string: usize) -> std::ops::Range<usize> {
        self.offsets[string]..self.offsets[string + 1]
    }

    fn slot(&self, item: usize, round: usize, table: usize) -> usize {
        (item * self.config.reps + round) * self.config.tables + table
    }

    /// Sampled characters of suffix `item` under hash function `(round, table)`.
    pub fn signature(&self, item: usize, round: usize, table: usize) -> &[Symbol] {
        let m = self.config.bits;
        let at = self.slot(item, round, table) * m;
        &self.signatures[at..at + m]
    }

    pub fn key(&self, item: usize, round: usize, table: usize) -> u64 {
        self.keys[self.slot(item, round, table)]
    }
}

/// Walks and scheme drawn from `cfg.seed` for a corpus with the given
/// statistics.
pub fn random_components(
    cfg: &JoinConfig,
    max_len: usize,
    sigma: usize,
) -> Result<(Vec<WalkString>, LshScheme)> {
    let walks = (0..cfg.reps)
        .map(|l| WalkString::random(seed::walk_seed(cfg.seed, l), max_len.max(1), sigma.max(1)))
        .collect::<Result<Vec<_>>>()?;
    let scheme = LshScheme::random(
        cfg.seed,
        cfg.reps,
        cfg.tables,
        cfg.bits,
        cfg.truncation,
        cfg.prime,
    )?;
    Ok((walks, scheme))
}

/// Sorts the corpus and computes all sampled signatures with walks and
/// hash functions drawn from `cfg.seed`.
pub fn preprocess(corpus: &Corpus, cfg: &JoinConfig) -> Result<JoinIndex> {
    let (walks, scheme) = random_components(cfg, corpus.max_len(), corpus.alphabet().size())?;
    preprocess_with(corpus, cfg, &walks, scheme)
}

/// [`preprocess`] with caller-supplied walks (one per round) and scheme.
pub fn preprocess_with(
    corpus: &Corpus,
    cfg: &JoinConfig,
    walks: &[WalkString],
    scheme: LshScheme,
) -> Result<JoinIndex> {
    cfg.validate()?;
    let (r, z, m) = (cfg.reps, cfg.tables, cfg.bits);
    if walks.len() != r || scheme.reps() != r || scheme.tables() != z || scheme.bits() != m {
        return Err(Error::InvalidParameter(format!(
            "walks/scheme shape ({}, {}x{}x{}) does not match r={r}, z={z}, m={m}",
            walks.len(),
            scheme.reps(),
            scheme.tables(),
            scheme.bits()
        )));
    }
    let sigma = corpus.alphabet().size();
    if let Some(w) = walks
        .iter()
        .find(|w| w.sigma() != sigma || w.steps() < scheme.len())
    {
        return Err(Error::InvalidParameter(format!(
            "walk over {} symbols with {} steps cannot serve alphabet {sigma} at length {}",
            w.sigma(),
            w.steps(),
            scheme.len()
        )));
    }
    let corpus = corpus.sorted();
    let subs = cfg.substrings();

    let mut items = Vec::with_capacity(corpus.len() * subs);
    let mut offsets = Vec::with_capacity(corpus.len() + 1);
    for (i, s) in corpus.strings().iter().enumerate() {
        offsets.push(items.len());
        for k in 1..=subs {
            let start = (k - 1) * cfg.delta;
            if start >= s.len() {
                break;
            }
            items.push(SubstringRef {
                string: i,
                k,
                start,
            });
        }
    }
    offsets.push(items.len());

    // Per round: the distinct positions sampled by any table, and for each
    // (table, bit) its index into that list.
    let plans: Vec<(Vec<usize>, Vec<usize>)> = (0..r)
        .map(|l| {
            let mut all: Vec<usize> = (0..z)
                .flat_map(|j| scheme.positions(l, j))
                .copied()
                .collect();
            all.sort_unstable();
            all.dedup();
            let slots = (0..z)
                .flat_map(|j| scheme.positions(l, j))
                .map(|p| all.binary_search(p).expect("position present"))
                .collect();
            (all, slots)
        })
        .collect();

    let per_item: Vec<(Vec<Symbol>, Vec<u64>)> = items
        .par_iter()
        .map(|it| {
            let text = &corpus.get(it.string)[it.start..];
            let mut sigs = Vec::with_capacity(r * z * m);
            let mut keys = Vec::with_capacity(r * z);
            for (l, (positions, slots)) in plans.iter().enumerate() {
                let sampled = embed_sampled(text, &walks[l], positions)?;
                for j in 0..z {
                    let start = sigs.len();
                    sigs.extend(slots[j * m..(j + 1) * m].iter().map(|&s| sampled[s]));
                    keys.push(inner_product_mod(
                        &sigs[start..],
                        scheme.second_level(l, j),
                        scheme.prime(),
                    ));
                }
            }
            Ok((sigs, keys))
        })
        .collect::<Result<_>>()?;

    let mut signatures = Vec::with_capacity(items.len() * r * z * m);
    let mut keys = Vec::with_capacity(items.len() * r * z);
    for (s, k) in per_item {
        signatures.extend(s);
        keys.extend(k);
    }
    Ok(JoinIndex {
        corpus,
        config: cfg.clone(),
        scheme,
        items,
        offsets,
        signatures,
        keys,
    })
}

/// Collision record of suffix `k_i` of string `i` and suffix `k_j` of string
/// `j` (sorted indices, `i < j`) with the number of tables they share.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateTuple {
    pub i: usize,
    pub j: usize,
    pub k_i: usize,
    pub k_j: usize,
    pub count: usize,
}

#[derive(Clone, Debug, Default)]
pub struct Candidates {
    /// Sorted by `(i, j, k_i, k_j)`.
    pub tuples: Vec<CandidateTuple>,
    /// Number of per-table collision records before aggregation.
    pub raw: usize,
}

impl Candidates {
    /// Distinct string pairs among the tuples.
    pub fn distinct_pairs(&self) -> usize {
        let mut n = 0;
        let mut last = None;
        for t in &self.tuples {
            if last != Some((t.i, t.j)) {
                n += 1;
                last = Some((t.i, t.j));
            }
        }
        n
    }

    /// Distinct string pairs with some suffix pair colliding in at least `t`
    /// tables.
    pub fn qualifying_pairs(&self, t: usize) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .tuples
            .iter()
            .filter(|c| c.count >= t)
            .map(|c| (c.i, c.j))
            .collect();
        pairs.dedup();
        pairs
    }
}

/// Sequential bucket pass in sorted order with sliding-window eviction.
pub fn filter_candidates(index: &JoinIndex) -> Candidates {
    let cfg = &index.config;
    let (r, z, k) = (cfg.reps, cfg.tables, cfg.threshold);
    let corpus = &index.corpus;
    let mut tables: Vec<HashMap<u64, Vec<(u32, u32)>>> = vec![HashMap::new(); r * z];
    let mut counts: HashMap<(u32, u32, u32, u32), u32> = HashMap::new();
    let mut raw = 0usize;

    for i in 0..corpus.len() {
        let len_i = corpus.get(i).len();
        for l in 0..r {
            for j in 0..z {
                let table = &mut tables[l * z + j];
                for item in index.items_of(i) {
                    let sub_k = index.items[item].k as u32;
                    let bucket = table.entry(index.key(item, l, j)).or_default();
                    bucket.retain(|&(s, s_k)| {
                        if s as usize == i {
                            return true;
                        }
                        if len_i - corpus.get(s as usize).len() > k {
                            return false;
                        }
                        *counts.entry((s, i as u32, s_k, sub_k)).or_insert(0) += 1;
                        raw += 1;
                        true
                    });
                    bucket.push((i as u32, sub_k));
                }
            }
        }
    }

    let mut tuples: Vec<CandidateTuple> = counts
        .into_iter()
        .map(|((a, b, ka, kb), count)| CandidateTuple {
            i: a as usize,
            j: b as usize,
            k_i: ka as usize,
            k_j: kb as usize,
            count: count as usize,
        })
        .collect();
    tuples.sort_unstable();
    Candidates { tuples, raw }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct JoinMetrics {
    pub candidates_raw: usize,
    pub candidates_deduped: usize,
    pub pairs_verified: usize,
    pub pairs_output: usize,
    pub time_embed_ms: u64,
    pub time_filter_ms: u64,
    pub time_verify_ms: u64,
}

impl JoinMetrics {
    fn absorb(&mut self, other: &JoinMetrics) {
        self.candidates_raw += other.candidates_raw;
        self.candidates_deduped += other.candidates_deduped;
        self.pairs_verified += other.pairs_verified;
        self.time_embed_ms += other.time_embed_ms;
        self.time_filter_ms += other.time_filter_ms;
        self.time_verify_ms += other.time_verify_ms;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JoinResult {
    /// Ascending by `(a, b)`.
    pub pairs: Vec<Pair>,
    pub metrics: JoinMetrics,
}

/// Verifies every pair whose best suffix pair reaches the match threshold,
/// on the full strings of the sorted corpus.
pub fn verify_candidates(candidates: &Candidates, corpus: &Corpus, cfg: &JoinConfig) -> JoinResult {
    let todo = candidates.qualifying_pairs(cfg.match_threshold);
    let mut pairs: Vec<Pair> = todo
        .par_iter()
        .filter_map(|&(i, j)| {
            banded_edit_distance(corpus.get(i), corpus.get(j), cfg.threshold)
                .map(|d| Pair::new(corpus.original_id(i), corpus.original_id(j), d))
        })
        .collect();
    pairs.sort_unstable();
    JoinResult {
        metrics: JoinMetrics {
            candidates_raw: candidates.raw,
            candidates_deduped: candidates.distinct_pairs(),
            pairs_verified: todo.len(),
            pairs_output: pairs.len(),
            ..Default::default()
        },
        pairs,
    }
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

/// Runs preprocess, filter and verify on an already prepared index.
pub fn join_index(index: &JoinIndex) -> JoinResult {
    let t = Instant::now();
    let candidates = filter_candidates(index);
    let filter_ms = elapsed_ms(t);
    let t = Instant::now();
    let mut result = verify_candidates(&candidates, &index.corpus, &index.config);
    result.metrics.time_filter_ms = filter_ms;
    result.metrics.time_verify_ms = elapsed_ms(t);
    result
}

fn join_truncated(corpus: &Corpus, cfg: &JoinConfig) -> Result<JoinResult> {
    let t = Instant::now();
    let index = preprocess(corpus, cfg)?;
    let embed_ms = elapsed_ms(t);
    let mut result = join_index(&index);
    result.metrics.time_embed_ms = embed_ms;
    Ok(result)
}

/// End-to-end self-join. With `cfg.grouping` set the corpus is split by
/// length and each group is embedded untruncated; results are merged.
pub fn embed_join(corpus: &Corpus, cfg: &JoinConfig) -> Result<JoinResult> {
    cfg.validate()?;
    if !cfg.grouping {
        return join_truncated(corpus, cfg);
    }
    let mut metrics = JoinMetrics::default();
    let mut seen = HashSet::new();
    let mut pairs = Vec::new();
    for group in group_by_length(corpus, cfg.threshold) {
        if group.len() < 2 {
            continue;
        }
        let group_cfg = JoinConfig {
            truncation: 3 * group.max_len(),
            ..cfg.clone()
        };
        let r = join_truncated(&group, &group_cfg)?;
        metrics.absorb(&r.metrics);
        for p in r.pairs {
            if seen.insert(p.ids()) {
                pairs.push(p);
            }
        }
    }
    pairs.sort_unstable();
    metrics.pairs_output = pairs.len();
    Ok(JoinResult { pairs, metrics })
}

/// Group `g` (1-based, `g <= ceil(N / K)`) holds the strings with length in
/// `((g - 1) K, (g + 1) K]`, so every string longer than `K` lies in exactly
/// two groups and any two strings whose lengths differ by at most `K` share
/// one. Empty groups are omitted.
pub fn group_by_length(corpus: &Corpus, k: usize) -> Vec<Corpus> {
    let k = k.max(1);
    let groups = corpus.max_len().div_ceil(k).max(1);
    (1..=groups)
        .filter_map(|g| {
            let (lo, hi) = ((g - 1) * k, (g + 1) * k);
            let members: Vec<usize> = (0..corpus.len())
                .filter(|&i| {
                    let len = corpus.get(i).len();
                    len > lo && len <= hi
                })
                .collect();
            (!members.is_empty()).then(|| corpus.select(&members))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Alphabet;

    fn corpus_with_lengths(lengths: &[usize]) -> Corpus {
        let a = Alphabet::from_bytes(b"A").unwrap();
        Corpus::from_encoded(a, lengths.iter().map(|&n| vec![0; n]).collect()).unwrap()
    }

    #[test]
    fn default_parameters_for_long_strings() {
        let c = corpus_with_lengths(&[5000, 5000]);
        let cfg = resolve_parameters(&c, 100, &Overrides::default()).unwrap();
        assert_eq!(cfg.bits, 12);
        assert_eq!(cfg.delta, 70);
        assert_eq!(cfg.match_threshold, 2);
        assert_eq!(cfg.tables, 16);
        assert_eq!(cfg.reps, 7);
        assert_eq!(cfg.mode, Mode::Plus);
        assert_eq!(cfg.truncation, 5000);
    }

    #[test]
    fn small_threshold_degenerates_to_basic() {
        let c = corpus_with_lengths(&[5000, 5000]);
        let cfg = resolve_parameters(&c, 70, &Overrides::default()).unwrap();
        assert_eq!(
            (cfg.mode, cfg.match_threshold, cfg.tables),
            (Mode::Basic, 1, 7)
        );
    }

    #[test]
    fn overrides_pass_through() {
        let c = corpus_with_lengths(&[10, 12]);
        let ov = Overrides {
            reps: Some(3),
            tables: Some(5),
            bits: Some(4),
            delta: Some(2),
            match_threshold: Some(3),
            truncation: Truncation::Fixed(9),
            mode: Mode::Plus,
            prime: Some(1_000_003),
            seed: 42,
            ..Default::default()
        };
        let cfg = resolve_parameters(&c, 5, &ov).unwrap();
        let expected = JoinConfig {
            threshold: 5,
            reps: 3,
            tables: 5,
            bits: 4,
            delta: 2,
            match_threshold: 3,
            truncation: 9,
            seed: 42,
            mode: Mode::Plus,
            grouping: false,
            prime: 1_000_003,
        };
        assert_eq!(cfg, expected);
    }

    #[test]
    fn inconsistent_overrides_fail() {
        let c = corpus_with_lengths(&[10]);
        let ov = Overrides {
            tables: Some(2),
            match_threshold: Some(3),
            ..Default::default()
        };
        assert!(resolve_parameters(&c, 2, &ov).is_err());
        assert!(resolve_parameters(&c, 0, &Overrides::default()).is_err());
    }

    #[test]
    fn genome_bits_rule() {
        // x = 2% -> floor(log2 x) = 1
        assert_eq!(default_bits(BitsRule::Base(15), 100, 5000), 14);
        assert_eq!(default_bits(BitsRule::LogMaxLen, 100, 5000), 12);
    }

    #[test]
    fn plus_mode_suffix_starts() {
        let c = corpus_with_lengths(&[5000]);
        let ov = Overrides {
            delta: Some(50),
            mode: Mode::Plus,
            reps: Some(1),
            tables: Some(2),
            bits: Some(2),
            truncation: Truncation::Fixed(100),
            ..Default::default()
        };
        let cfg = resolve_parameters(&c, 100, &ov).unwrap();
        let index = preprocess(&c, &cfg).unwrap();
        let starts: Vec<usize> = index.items().iter().map(|it| it.start + 1).collect();
        assert_eq!(starts, vec![1, 51]);
    }

    #[test]
    fn suffixes_past_the_end_are_skipped() {
        let c = corpus_with_lengths(&[3, 12]);
        let ov = Overrides {
            delta: Some(5),
            mode: Mode::Plus,
            truncation: Truncation::Fixed(6),
            ..Default::default()
        };
        let cfg = resolve_parameters(&c, 12, &ov).unwrap();
        let index = preprocess(&c, &cfg).unwrap();
        assert_eq!(index.items_of(0).len(), 1);
        assert_eq!(index.items_of(1).len(), 3);
    }

    #[test]
    fn singleton_corpus_has_no_candidates() {
        let c = corpus_with_lengths(&[8]);
        let cfg = resolve_parameters(&c, 2, &Overrides::default()).unwrap();
        let index = preprocess(&c, &cfg).unwrap();
        assert_eq!(index.items().len(), 1);
        assert!(filter_candidates(&index).tuples.is_empty());
    }

    #[test]
    fn length_gap_blocks_candidates() {
        let c = corpus_with_lengths(&[5, 20]);
        let cfg = resolve_parameters(&c, 3, &Overrides::default()).unwrap();
        let index = preprocess(&c, &cfg).unwrap();
        assert!(filter_candidates(&index).tuples.is_empty());
    }

    #[test]
    fn grouping_intervals() {
        let c = corpus_with_lengths(&[10, 25, 60]);
        let groups: Vec<Vec<usize>> = group_by_length(&c, 10)
            .iter()
            .map(|g| g.strings().iter().map(Vec::len).collect())
            .collect();
        // groups 1..=6: (0,20] (10,30] (20,40] (30,50] (40,60] (50,70]
        assert_eq!(
            groups,
            vec![vec![10], vec![25], vec![25], vec![60], vec![60]]
        );
    }

    #[test]
    fn uniform_lengths_share_groups() {
        let c = corpus_with_lengths(&[30, 30, 30]);
        let groups = group_by_length(&c, 10);
        assert_eq!(groups.len(), 2);
        assert!(groups.iter().all(|g| g.len() == 3));
    }

    #[test]
    fn empty_candidates_verify_to_nothing() {
        let c = corpus_with_lengths(&[4, 4]).sorted();
        let cfg = resolve_parameters(&c, 1, &Overrides::default()).unwrap();
        let r = verify_candidates(&Candidates::default(), &c, &cfg);
        assert!(r.pairs.is_empty());
        assert_eq!(r.metrics.pairs_verified, 0);
    }
}
