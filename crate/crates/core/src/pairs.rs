//! Output pairs and their tab-separated text form `id_a\tid_b\tdistance`.

use std::io::{self, BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};

/// A joined pair of original line ids, `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pair {
    pub a: usize,
    pub b: usize,
    pub distance: usize,
}

impl Pair {
    /// Orders the ids so the smaller comes first.
    pub fn new(x: usize, y: usize, distance: usize) -> Self {
        Self {
            a: x.min(y),
            b: x.max(y),
            distance,
        }
    }

    pub fn ids(&self) -> (usize, usize) {
        (self.a, self.b)
    }
}

pub fn write_pairs<W: Write>(mut out: W, pairs: &[Pair]) -> io::Result<()> {
    for p in pairs {
        writeln!(out, "{}\t{}\t{}", p.a, p.b, p.distance)?;
    }
    out.flush()
}

/// Parses pair lines. Blank lines are skipped; ids are normalized so that
/// `a < b`.
pub fn read_pairs<R: BufRead>(input: R) -> Result<Vec<Pair>> {
    let mut pairs = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line.map_err(|source| Error::Io {
            path: "<pairs>".into(),
            source,
        })?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let malformed = |reason: &str| Error::MalformedPairLine {
            line: n + 1,
            reason: reason.to_string(),
        };
        if fields.len() != 3 {
            return Err(malformed("expected three tab-separated fields"));
        }
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| malformed("non-numeric field"))
        };
        let (a, b, d) = (num(fields[0])?, num(fields[1])?, num(fields[2])?);
        if a == b {
            return Err(malformed("a pair must join two different ids"));
        }
        pairs.push(Pair::new(a, b, d));
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_then_read() {
        let pairs = vec![Pair::new(3, 1, 2), Pair::new(0, 7, 0)];
        let mut buf = Vec::new();
        write_pairs(&mut buf, &pairs).unwrap();
        assert_eq!(buf, b"1\t3\t2\n0\t7\t0\n");
        assert_eq!(read_pairs(&buf[..]).unwrap(), pairs);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(read_pairs(&b"1\t2\n"[..]).is_err());
        assert!(read_pairs(&b"1\tx\t2\n"[..]).is_err());
        assert!(read_pairs(&b"4\t4\t0\n"[..]).is_err());
        assert!(read_pairs(&b"\n1\t2\t0\n\n"[..]).unwrap().len() == 1);
    }
}
