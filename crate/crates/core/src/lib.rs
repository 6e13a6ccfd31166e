//! Edit-distance similarity self-join.
//!
//! Strings are mapped into Hamming space with a randomized walk embedding,
//! candidate pairs are found with bit-sampling LSH, and every candidate is
//! checked with an exact banded edit-distance computation, so the output
//! never contains a pair farther apart than the threshold.
//!
//! ```
//! use embedjoin::{embed_join, resolve_parameters, Corpus, Overrides};
//!
//! let corpus = Corpus::from_lines(["ACGTGACGTG", "ACGTCGCGTG", "TTTTTTTTTT"]).unwrap();
//! let cfg = resolve_parameters(&corpus, 3, &Overrides::default()).unwrap();
//! let result = embed_join(&corpus, &cfg).unwrap();
//! assert!(result.pairs.iter().all(|p| p.distance <= 3));
//! ```

pub mod bench;
pub mod cgk;
pub mod corpus;
pub mod error;
pub mod join;
pub mod lsh;
pub mod pairs;
pub mod pinned;
pub mod seed;
pub mod verify;

pub use bench::{
    evaluate, generate_dataset, min_normalized_hamming, oracle_join, GenSpec, Metrics, ProbeSpec,
};
pub use cgk::{
    embed, embed_sampled, hamming, measure_distortion, EmbeddedString, Truncation, WalkString,
};
pub use corpus::{Alphabet, Corpus, Symbol};
pub use error::{Error, Result};
pub use join::{
    embed_join, filter_candidates, group_by_length, preprocess, preprocess_with,
    resolve_parameters, verify_candidates, BitsRule, CandidateTuple, JoinConfig, JoinIndex,
    JoinMetrics, JoinResult, Mode, Overrides,
};
pub use lsh::{match_probability, LshScheme, Signature};
pub use pairs::Pair;
pub use verify::{banded_edit_distance, full_edit_distance, shift};
