//! Seeded random line configurations.
//!
//! Lines are drawn with `θ ∈ [0, π]`, `φ ∈ [0, 2π)` and anchor `x, y ∈ [−1, 1]`,
//! all uniform. Draws that are degenerate (parallel or intersecting pairs,
//! coplanar direction triples) are rejected and redrawn.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lincore::{LineConfig, LineSpec};

pub const DEFAULT_RETRIES: usize = 1000;

/// Independent generator for sample `index` of the stream `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_spec<R: Rng>(n: usize, rng: &mut R) -> Vec<LineSpec> {
    (0..n)
        .map(|_| LineSpec {
            theta: rng.gen_range(0.0..=PI),
            phi: rng.gen_range(0.0..TAU),
            x: rng.gen_range(-1.0..=1.0),
            y: rng.gen_range(-1.0..=1.0),
        })
        .collect()
}

/// Draws until a configuration with a well-defined chirality matrix and
/// direction tensor is found.
pub fn random_config<R: Rng>(n: usize, rng: &mut R) -> Result<LineConfig> {
    random_valid_spec(n, rng).map(|(_, cfg)| cfg)
}

/// Like [`random_config`], also returning the raw parameters.
pub fn random_valid_spec<R: Rng>(n: usize, rng: &mut R) -> Result<(Vec<LineSpec>, LineConfig)> {
    for _ in 0..DEFAULT_RETRIES {
        let raw = random_spec(n, rng);
        if let Ok(cfg) = LineConfig::from_spec(&raw) {
            if cfg.direction_tensor().is_ok() {
                return Ok((raw, cfg));
            }
        }
    }
    Err(Error::RetriesExhausted(DEFAULT_RETRIES))
}
