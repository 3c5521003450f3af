//! Random physical channels for property tests and oracle batches.

use core::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;

use crate::gaussian::{check_physical, GainMatrix, GaussianChannel, NoiseEllipse};

/// Sampling box for [`random_physical_channel`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSampler {
    /// Gain entries are uniform on `[-max_gain, max_gain]`.
    pub max_gain: f64,
    /// Output ellipse variances are uniform on this interval.
    pub variance_range: (f64, f64),
}

impl Default for ChannelSampler {
    fn default() -> Self {
        Self { max_gain: 2.0, variance_range: (0.5, 3.0) }
    }
}

impl ChannelSampler {
    /// Rejection-samples a centered channel that passes [`check_physical`].
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> GaussianChannel {
        let (lo, hi) = self.variance_range;
        loop {
            let mut entry = || rng.gen_range(-self.max_gain..=self.max_gain);
            let gain = GainMatrix::new(entry(), entry(), entry(), entry());
            let a = rng.gen_range(lo..=hi);
            let b = rng.gen_range(lo..=hi);
            let theta = rng.gen_range(-FRAC_PI_2..FRAC_PI_2);
            let theta = if theta <= -FRAC_PI_2 { theta + PI } else { theta };
            let Ok(ellipse) = NoiseEllipse::new(a.max(b), a.min(b), theta) else {
                continue;
            };
            let ch = GaussianChannel::from_output_ellipse(gain, &ellipse);
            if check_physical(&ch).physical {
                return ch;
            }
        }
    }
}

/// A random physical channel from the default sampling box.
pub fn random_physical_channel<R: Rng + ?Sized>(rng: &mut R) -> GaussianChannel {
    ChannelSampler::default().sample(rng)
}
