//! Explicit walk coins and sampled positions loaded from JSON, for
//! reproducing a hand-worked join exactly.
//!
//! ```json
//! {
//!   "positions": [[[1, 8], [0, 3]], [[1, 4], [6, 2]]],
//!   "coins": [
//!     {"A": "0100101101", "C": "1101111000", "G": "0111000111", "T": "1000101101"},
//!     {"A": "1000100010", "C": "1100111100", "G": "1011001101", "T": "1001011100"}
//!   ]
//! }
//! ```
//!
//! `positions[round][table]` lists 0-based coordinates. `coins[round]` maps
//! each alphabet character to its coin per step. An optional
//! `second_level[round][table]` fixes the bucket multipliers.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::cgk::WalkString;
use crate::corpus::Alphabet;
use crate::error::{Error, Result};
use crate::join::Overrides;
use crate::lsh::{LshScheme, DEFAULT_PRIME};

#[derive(Clone, Debug, Deserialize)]
pub struct PinnedScheme {
    pub positions: Vec<Vec<Vec<usize>>>,
    pub coins: Vec<BTreeMap<String, String>>,
    #[serde(default)]
    pub second_level: Option<Vec<Vec<Vec<u64>>>>,
}

impl PinnedScheme {
    pub fn parse(json: &str) -> Result<Self> {
        let pinned: Self = serde_json::from_str(json)
            .map_err(|e| Error::InvalidParameter(format!("pinned scheme: {e}")))?;
        if pinned.positions.is_empty() || pinned.positions.len() != pinned.coins.len() {
            return Err(Error::InvalidParameter(
                "pinned scheme needs one coin table per round of positions".into(),
            ));
        }
        Ok(pinned)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn reps(&self) -> usize {
        self.positions.len()
    }

    pub fn tables(&self) -> usize {
        self.positions[0].len()
    }

    pub fn bits(&self) -> usize {
        self.positions[0].first().map_or(0, Vec::len)
    }

    /// Number of walk steps, taken from the first coin row.
    pub fn steps(&self) -> usize {
        self.coins[0].values().next().map_or(0, String::len)
    }

    /// Fixes `r`, `z`, `m` and the truncation length to the pinned shape.
    pub fn apply(&self, ov: &mut Overrides) {
        ov.reps = Some(self.reps());
        ov.tables = Some(self.tables());
        ov.bits = Some(self.bits());
        ov.truncation = crate::cgk::Truncation::Fixed(self.steps());
    }

    /// Walks for `alphabet`, accepting strings up to `max_len`.
    pub fn walks(&self, alphabet: &Alphabet, max_len: usize) -> Result<Vec<WalkString>> {
        self.coins
            .iter()
            .map(|table| {
                let rows = alphabet
                    .symbols()
                    .iter()
                    .map(|&b| {
                        let key = (b as char).to_string();
                        let row = table.get(&key).ok_or_else(|| {
                            Error::InvalidParameter(format!("no coins for symbol {key:?}"))
                        })?;
                        row.bytes()
                            .map(|c| match c {
                                b'0' => Ok(false),
                                b'1' => Ok(true),
                                _ => Err(Error::InvalidParameter(format!(
                                    "coin row for {key:?} must contain only 0 and 1"
                                ))),
                            })
                            .collect::<Result<Vec<bool>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                WalkString::from_table(&rows, max_len)
            })
            .collect()
    }

    pub fn scheme(&self, len: usize, prime: Option<u64>, seed: u64) -> Result<LshScheme> {
        LshScheme::from_positions(
            self.positions.clone(),
            self.second_level.clone(),
            len,
            prime.unwrap_or(DEFAULT_PRIME),
            seed,
        )
    }
}

/// The two-round fixture of the four-string worked example.
pub const WORKED_EXAMPLE: &str = r#"{
  "positions": [[[1, 8], [0, 3]], [[1, 4], [6, 2]]],
  "coins": [
    {"A": "0100101101", "C": "1101111000", "G": "0111000111", "T": "1000101101"},
    {"A": "1000100010", "C": "1100111100", "G": "1011001101", "T": "1001011100"}
  ]
}"#;
