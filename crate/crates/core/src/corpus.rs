//! Input collection: alphabet detection, symbol encoding and length ordering.
//!
//! Strings are stored as dense symbol indices `0..sigma`. The index `sigma`
//! is reserved for the padding symbol produced by the embedding, so it never
//! occurs in a corpus string. The byte `0x00` is reserved on input for the
//! same reason and is rejected by the loaders.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Dense symbol index. The padding symbol of an alphabet of size `sigma` is
/// `sigma` itself.
pub type Symbol = u8;

/// Byte reserved for rendering the padding symbol.
pub const PAD_BYTE: u8 = 0;

const MISSING: u16 = u16::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
    index: Vec<u16>,
}

impl Alphabet {
    /// Builds an alphabet from arbitrary bytes; duplicates are collapsed and
    /// the result is sorted by byte value.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut seen = [false; 256];
        for &b in bytes {
            seen[b as usize] = true;
        }
        if seen[PAD_BYTE as usize] {
            return Err(Error::ReservedByte { line: 0 });
        }
        let symbols: Vec<u8> = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Self::from_sorted(symbols)
    }

    fn from_sorted(symbols: Vec<u8>) -> Result<Self> {
        if symbols.len() > 255 {
            return Err(Error::AlphabetTooLarge(symbols.len()));
        }
        let mut index = vec![MISSING; 256];
        for (i, &b) in symbols.iter().enumerate() {
            index[b as usize] = i as u16;
        }
        Ok(Self { symbols, index })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Number of real symbols, `|Σ|`.
    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    /// Index used for the padding symbol.
    pub fn pad(&self) -> Symbol {
        self.symbols.len() as Symbol
    }

    pub fn encode_byte(&self, b: u8) -> Option<Symbol> {
        match self.index[b as usize] {
            MISSING => None,
            i => Some(i as Symbol),
        }
    }

    pub fn encode(&self, bytes: &[u8]) -> Option<Vec<Symbol>> {
        bytes.iter().map(|&b| self.encode_byte(b)).collect()
    }

    /// Maps symbol indices back to bytes. The padding index renders as
    /// [`PAD_BYTE`].
    pub fn decode(&self, symbols: &[Symbol]) -> Vec<u8> {
        symbols
            .iter()
            .map(|&s| self.symbols.get(s as usize).copied().unwrap_or(PAD_BYTE))
            .collect()
    }
}

/// An ordered collection of encoded strings together with the original line
/// number of each one.
#[derive(Clone, Debug)]
pub struct Corpus {
    alphabet: Alphabet,
    strings: Vec<Vec<Symbol>>,
    original_ids: Vec<usize>,
}

impl Corpus {
    /// Reads a newline-delimited file. A trailing newline at end of file is
    /// allowed; a trailing `\r` on each line is stripped.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let data = fs::read(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&data)
    }

    pub fn parse(data: &[u8]) -> Result<Self> {
        let mut lines: Vec<&[u8]> = data.split(|&b| b == b'\n').collect();
        if lines.last().is_some_and(|l| l.is_empty()) {
            lines.pop();
        }
        let lines = lines
            .into_iter()
            .map(|l| l.strip_suffix(b"\r").unwrap_or(l));
        Self::from_lines(lines)
    }

    /// Builds a corpus in the given order, detecting the alphabet from the
    /// content. Line numbers in errors are 1-based.
    pub fn from_lines<I, S>(lines: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let raw: Vec<S> = lines.into_iter().collect();
        if raw.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let mut seen = [false; 256];
        for (i, line) in raw.iter().enumerate() {
            let line = line.as_ref();
            if line.is_empty() {
                return Err(Error::EmptyLine { line: i + 1 });
            }
            if line.contains(&PAD_BYTE) {
                return Err(Error::ReservedByte { line: i + 1 });
            }
            for &b in line {
                seen[b as usize] = true;
            }
        }
        let symbols = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        let alphabet = Alphabet::from_sorted(symbols)?;
        let strings = raw
            .iter()
            .map(|l| {
                alphabet
                    .encode(l.as_ref())
                    .expect("alphabet covers every byte")
            })
            .collect::<Vec<_>>();
        let original_ids = (0..strings.len()).collect();
        Ok(Self {
            alphabet,
            strings,
            original_ids,
        })
    }

    /// Builds a corpus from already-encoded strings over `alphabet`.
    pub fn from_encoded(alphabet: Alphabet, strings: Vec<Vec<Symbol>>) -> Result<Self> {
        if strings.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let sigma = alphabet.size();
        for (i, s) in strings.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::EmptyLine { line: i + 1 });
            }
            if let Some(&bad) = s.iter().find(|&&c| c as usize >= sigma) {
                return Err(Error::SymbolOutOfRange { symbol: bad, sigma });
            }
        }
        let original_ids = (0..strings.len()).collect();
        Ok(Self {
            alphabet,
            strings,
            original_ids,
        })
    }

    /// Subset of this corpus selected by position, keeping original ids.
    pub(crate) fn select(&self, positions: &[usize]) -> Self {
        Self {
            alphabet: self.alphabet.clone(),
            strings: positions.iter().map(|&p| self.strings[p].clone()).collect(),
            original_ids: positions.iter().map(|&p| self.original_ids[p]).collect(),
        }
    }

    /// Orders strings by length, ties broken lexicographically. Equal strings
    /// keep their relative order.
    pub fn sorted(&self) -> Self {
        let mut order: Vec<usize> = (0..self.strings.len()).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (&self.strings[a], &self.strings[b]);
            x.len().cmp(&y.len()).then_with(|| x.cmp(y))
        });
        self.select(&order)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn strings(&self) -> &[Vec<Symbol>] {
        &self.strings
    }

    pub fn get(&self, i: usize) -> &[Symbol] {
        &self.strings[i]
    }

    pub fn original_ids(&self) -> &[usize] {
        &self.original_ids
    }

    pub fn original_id(&self, i: usize) -> usize {
        self.original_ids[i]
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// `N`, the maximum string length.
    pub fn max_len(&self) -> usize {
        self.strings.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_len(&self) -> usize {
        self.strings.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Floor of the mean string length.
    pub fn avg_len(&self) -> usize {
        if self.strings.is_empty() {
            return 0;
        }
        let total: usize = self.strings.iter().map(Vec::len).sum();
        total / self.strings.len()
    }

    pub fn is_sorted(&self) -> bool {
        self.strings.windows(2).all(|w| {
            let (x, y) = (&w[0], &w[1]);
            (x.len(), x) <= (y.len(), y)
        })
    }
}
