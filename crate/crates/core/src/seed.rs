//! Deterministic sub-seed derivation. Every random component is keyed by the
//! master seed plus a domain tag and an index, so adding rounds or tables never
//! perturbs the ones that already exist.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub(crate) const DOMAIN_WALK: u64 = 0x5741_4c4b;
pub(crate) const DOMAIN_POSITIONS: u64 = 0x504f_5354;
pub(crate) const DOMAIN_SECOND_LEVEL: u64 = 0x4b45_5953;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive(seed: u64, domain: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(domain)) ^ index)
}

/// Seed of the walk string used in embedding round `round`.
pub fn walk_seed(seed: u64, round: usize) -> u64 {
    derive(seed, DOMAIN_WALK, round as u64)
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
