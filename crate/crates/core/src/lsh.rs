//! Bit-sampling LSH over embedded strings with two-level bucket addressing.
//!
//! Each of the `r * z` hash functions samples `m` coordinates (uniformly, with
//! replacement) of a truncated embedding. The resulting signature is reduced
//! to a bucket key by an inner product with a random vector modulo a prime.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::Symbol;
use crate::error::{Error, Result};
use crate::seed;

pub const DEFAULT_PRIME: u64 = 1_000_000_007;
const MIN_PRIME: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LshScheme {
    reps: usize,
    tables: usize,
    bits: usize,
    len: usize,
    prime: u64,
    /// `positions[round][table]`: `bits` sampled coordinates in `[0, len)`.
    positions: Vec<Vec<Vec<usize>>>,
    /// `second_level[round][table]`: `bits` multipliers in `[0, prime)`.
    second_level: Vec<Vec<Vec<u64>>>,
}

impl LshScheme {
    /// Random scheme with `reps` rounds of `tables` functions of `bits`
    /// coordinates each over embeddings truncated to `len`.
    pub fn random(
        seed: u64,
        reps: usize,
        tables: usize,
        bits: usize,
        len: usize,
        prime: u64,
    ) -> Result<Self> {
        check_shape(reps, tables, bits, len)?;
        check_prime(prime)?;
        let mut positions = Vec::with_capacity(reps);
        let mut second_level = Vec::with_capacity(reps);
        for l in 0..reps {
            let mut pos_round = Vec::with_capacity(tables);
            let mut key_round = Vec::with_capacity(tables);
            for j in 0..tables {
                let index = (l * tables + j) as u64;
                let mut rng = seed::rng(seed::derive(seed, seed::DOMAIN_POSITIONS, index));
                pos_round.push((0..bits).map(|_| rng.random_range(0..len)).collect());
                let mut rng = seed::rng(seed::derive(seed, seed::DOMAIN_SECOND_LEVEL, index));
                key_round.push((0..bits).map(|_| rng.random_range(0..prime)).collect());
            }
            positions.push(pos_round);
            second_level.push(key_round);
        }
        Ok(Self {
            reps,
            tables,
            bits,
            len,
            prime,
            positions,
            second_level,
        })
    }

    /// Scheme with explicit sampled positions. Second-level multipliers are
    /// taken from `second_level` when given, otherwise drawn from `seed`.
    pub fn from_positions(
        positions: Vec<Vec<Vec<usize>>>,
        second_level: Option<Vec<Vec<Vec<u64>>>>,
        len: usize,
        prime: u64,
        seed: u64,
    ) -> Result<Self> {
        let reps = positions.len();
        let tables = positions.first().map_or(0, Vec::len);
        let bits = positions
            .first()
            .and_then(|r| r.first())
            .map_or(0, Vec::len);
        check_shape(reps, tables, bits, len)?;
        check_prime(prime)?;
        let well_formed = positions.iter().all(|round| {
            round.len() == tables
                && round
                    .iter()
                    .all(|f| f.len() == bits && f.iter().all(|&p| p < len))
        });
        if !well_formed {
            return Err(Error::InvalidParameter(format!(
                "positions must form a {reps}x{tables}x{bits} array with entries below {len}"
            )));
        }
        let second_level = match second_level {
            Some(v) => {
                let ok = v.len() == reps
                    && v.iter().all(|round| {
                        round.len() == tables
                            && round
                                .iter()
                                .all(|f| f.len() == bits && f.iter().all(|&x| x < prime))
                    });
                if !ok {
                    return Err(Error::InvalidParameter(
                        "second-level vectors must match the positions shape".into(),
                    ));
                }
                v
            }
            None => Self::random(seed, reps, tables, bits, len, prime)?.second_level,
        };
        Ok(Self {
            reps,
            tables,
            bits,
            len,
            prime,
            positions,
            second_level,
        })
    }

    pub fn reps(&self) -> usize {
        self.reps
    }

    pub fn tables(&self) -> usize {
        self.tables
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.reps == 0
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn positions(&self, round: usize, table: usize) -> &[usize] {
        &self.positions[round][table]
    }

    pub fn second_level(&self, round: usize, table: usize) -> &[u64] {
        &self.second_level[round][table]
    }

    /// Bucket key of `sig` in table `(round, table)`.
    pub fn bucket_key(&self, sig: &Signature, round: usize, table: usize) -> u64 {
        inner_product_mod(&sig.0, &self.second_level[round][table], self.prime)
    }
}

fn check_shape(reps: usize, tables: usize, bits: usize, len: usize) -> Result<()> {
    if reps == 0 || tables == 0 || bits == 0 || len == 0 {
        return Err(Error::InvalidParameter(format!(
            "r, z, m and L must all be >= 1 (got {reps}, {tables}, {bits}, {len})"
        )));
    }
    Ok(())
}

fn check_prime(p: u64) -> Result<()> {
    if p <= MIN_PRIME || p >= 1 << 63 || !is_prime(p) {
        return Err(Error::BadPrime(p));
    }
    Ok(())
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `m` sampled characters of one embedding under one hash function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature(pub Vec<Symbol>);

impl Signature {
    pub fn new(sampled: Vec<Symbol>, bits: usize) -> Result<Self> {
        if bits == 0 || sampled.len() != bits {
            return Err(Error::SignatureLength {
                got: sampled.len(),
                expected: bits,
            });
        }
        Ok(Self(sampled))
    }

    pub fn chars(&self) -> &[Symbol] {
        &self.0
    }
}

/// `sum_t (sig[t] + 1) * v[t] mod p`. Symbols shift to `1..=sigma+1` so that
/// an all-padding signature is not the zero vector.
pub fn inner_product_mod(sig: &[Symbol], v: &[u64], p: u64) -> u64 {
    debug_assert_eq!(sig.len(), v.len());
    let acc = sig.iter().zip(v).fold(0u128, |acc, (&c, &w)| {
        (acc + (c as u128 + 1) * w as u128) % p as u128
    });
    acc as u64
}

/// Probability that a pair collides in at least `t` of `z` independent
/// tables when each collides with probability `p`:
/// `1 - sum_{i<t} C(z, i) p^i (1-p)^(z-i)`.
pub fn match_probability(p: f64, z: usize, t: usize) -> f64 {
    let mut tail = 0.0;
    let mut binom = 1.0;
    for i in 0..t.min(z + 1) {
        if i > 0 {
            binom *= (z - i + 1) as f64 / i as f64;
        }
        tail += binom * p.powi(i as i32) * (1.0 - p).powi((z - i) as i32);
    }
    (1.0 - tail).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scheme_is_deterministic_and_in_range() {
        let a = LshScheme::random(3, 2, 3, 2, 10, DEFAULT_PRIME).unwrap();
        let b = LshScheme::random(3, 2, 3, 2, 10, DEFAULT_PRIME).unwrap();
        assert_eq!(a, b);
        for l in 0..2 {
            for j in 0..3 {
                assert_eq!(a.positions(l, j).len(), 2);
                assert!(a.positions(l, j).iter().all(|&p| p < 10));
                assert!(a.second_level(l, j).iter().all(|&v| v < DEFAULT_PRIME));
            }
        }
        let c = LshScheme::random(4, 2, 3, 2, 10, DEFAULT_PRIME).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_bad_prime_and_shape() {
        assert!(matches!(
            LshScheme::random(0, 1, 1, 1, 10, 1_000_000_008),
            Err(Error::BadPrime(_))
        ));
        assert!(matches!(
            LshScheme::random(0, 1, 1, 1, 10, 999_983),
            Err(Error::BadPrime(_))
        ));
        assert!(LshScheme::random(0, 0, 1, 1, 10, DEFAULT_PRIME).is_err());
        assert!(LshScheme::random(0, 1, 1, 1, 10, 2_305_843_009_213_693_951).is_ok());
    }

    #[test]
    fn primality() {
        let primes = [2, 3, 1_000_003, 1_000_000_007, 998_244_353];
        let composites = [1, 4, 561, 1_000_000_008, 3_215_031_751];
        assert!(primes.iter().all(|&p| is_prime(p)));
        assert!(composites.iter().all(|&c| !is_prime(c)));
    }

    #[test]
    fn signature_length_is_checked() {
        assert!(Signature::new(vec![0, 3], 2).is_ok());
        assert!(Signature::new(vec![], 0).is_err());
        assert!(Signature::new(vec![0], 2).is_err());
    }

    #[test]
    fn bucket_key_arithmetic() {
        // u = sig + 1 = (2, 3)
        assert_eq!(inner_product_mod(&[1, 2], &[3, 5], DEFAULT_PRIME), 21);
        assert_eq!(inner_product_mod(&[1, 2], &[0, 0], DEFAULT_PRIME), 0);
        let big = DEFAULT_PRIME - 1;
        // (1 + 1) * (p - 1) mod p = p - 2
        assert_eq!(
            inner_product_mod(&[1], &[big], DEFAULT_PRIME),
            DEFAULT_PRIME - 2
        );
    }

    #[test]
    fn from_positions_validates_shape() {
        let ok = LshScheme::from_positions(vec![vec![vec![1, 8]]], None, 10, DEFAULT_PRIME, 0);
        assert!(ok.is_ok());
        let bad = LshScheme::from_positions(vec![vec![vec![1, 10]]], None, 10, DEFAULT_PRIME, 0);
        assert!(bad.is_err());
        let ragged =
            LshScheme::from_positions(vec![vec![vec![1, 2], vec![3]]], None, 10, DEFAULT_PRIME, 0);
        assert!(ragged.is_err());
    }

    #[test]
    fn match_probability_values() {
        assert_eq!(match_probability(0.0, 16, 2), 0.0);
        assert_eq!(match_probability(1.0, 16, 2), 1.0);
        assert!((match_probability(0.25, 16, 2) - 0.9365).abs() < 1e-4);
        assert!((match_probability(0.01, 16, 2) - 0.0109).abs() < 1e-4);
        let p: f64 = 0.3;
        assert!((match_probability(p, 7, 1) - (1.0 - (1.0 - p).powi(7))).abs() < 1e-12);
    }
}
