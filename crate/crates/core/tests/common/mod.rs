#![allow(dead_code)]

use gaussfid_core::random::random_physical_channel;
use gaussfid_core::{GaussianChannel, GainMatrix, NoiseEllipse};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_channels(seed: u64, n: usize) -> Vec<GaussianChannel> {
    let mut r = rng(seed);
    (0..n).map(|_| random_physical_channel(&mut r)).collect()
}

pub fn channel(gain: [f64; 4], s1sq: f64, s2sq: f64, theta: f64) -> GaussianChannel {
    let e = NoiseEllipse::new(s1sq, s2sq, theta).unwrap();
    GaussianChannel::from_output_ellipse(GainMatrix::from_row_major(gain), &e)
}

/// Channel mapping `α → −α` with coherent output noise.
pub fn pi_rotation() -> GaussianChannel {
    channel([-1.0, 0.0, 0.0, -1.0], 0.5, 0.5, 0.0)
}

/// A handful of hand-picked channels covering squeezing, rotation and phase-conjugating gains.
pub fn representative_channels() -> Vec<GaussianChannel> {
    vec![
        channel([0.9, 0.0, 0.0, 0.9], 0.525, 0.525, 0.0),
        channel([1.3, 0.0, 0.0, 1.0 / 1.3], 0.845, 0.296 + 0.2, 0.0),
        channel([0.6, -0.4, 0.3, 0.8], 1.2, 0.7, 0.4),
        channel([0.2, 1.1, -0.9, 0.1], 2.5, 0.9, -1.1),
        channel([0.8, 0.3, 0.3, -0.7], 1.4, 1.0, 1.3),
    ]
}
