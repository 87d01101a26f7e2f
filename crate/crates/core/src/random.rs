//! Seeded random instances. Every instance draws from its own stream
//! `(seed, index)`, so sweeps are reproducible regardless of scheduling.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sets::GroundSet;

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `k` distinct values drawn uniformly from `[lo, lo + span)`.
pub fn random_set(rng: &mut impl Rng, k: usize, lo: i64, span: usize) -> Result<GroundSet> {
    if k == 0 || k > span {
        return Err(Error::InvalidParameter(format!(
            "cannot draw {k} values from {span}"
        )));
    }
    let v: Vec<i64> = sample(rng, span, k)
        .into_iter()
        .map(|i| lo + i as i64)
        .collect();
    GroundSet::new(v)
}

/// A set of size `k` whose gaps are distinct values from `1..=max_gap` in
/// random order, translated by a random offset in `[-span, span]`.
pub fn random_dcd_set(
    rng: &mut impl Rng,
    k: usize,
    max_gap: i64,
    offset_span: i64,
) -> Result<GroundSet> {
    if k == 0 || max_gap < k as i64 - 1 {
        return Err(Error::Infeasible(format!(
            "{k} elements with gaps in 1..={max_gap}"
        )));
    }
    let mut gaps: Vec<i64> = sample(rng, max_gap as usize, k - 1)
        .into_iter()
        .map(|i| i as i64 + 1)
        .collect();
    gaps.shuffle(rng);
    let mut x = if offset_span > 0 {
        rng.gen_range(-offset_span..=offset_span)
    } else {
        0
    };
    let mut v = Vec::with_capacity(k);
    v.push(x);
    for g in gaps {
        x += g;
        v.push(x);
    }
    GroundSet::new(v)
}
