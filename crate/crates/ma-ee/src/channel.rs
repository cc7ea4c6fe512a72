//! Field-response multipath channel between the movable transmit antenna
//! and a fixed user antenna.
//!
//! Each of the `Lp` departure paths carries a complex gain `g_k` and an
//! angle of departure `theta_k`. Moving the antenna to position `x` along
//! the array rotates the per-path phase through the steering term, so the
//! instantaneous channel is
//!
//! ```text
//! h(x) = sum_k g_k * exp( j * (2*pi/lambda) * x * sin(theta_k) )
//! ```
//!
//! with phase reference at `x = 0`. Path gains are circularly symmetric
//! complex Gaussian with total power `rho * d^(-alpha)` split evenly over
//! paths; angles are uniform on `[-pi/2, pi/2]`. With a single path the
//! modulus is constant in `x`, which is why position optimization pays off
//! only in multipath.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Propagation geometry and noise level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    /// Carrier wavelength (m).
    pub wavelength: f64,
    /// Number of departure paths.
    pub num_paths: usize,
    /// AP-user distance (m).
    pub distance: f64,
    /// Path-loss exponent.
    pub pathloss_exp: f64,
    /// Reference path gain at 1 m, linear power ratio.
    pub ref_gain: f64,
    /// Noise power at the receiver (W).
    pub noise_power: f64,
}

impl ChannelParams {
    /// Checks the type invariants.
    pub fn validate(&self) -> Result<()> {
        if self.num_paths == 0 {
            return Err(Error::model("num_paths must be at least 1"));
        }
        for (name, value) in [
            ("wavelength", self.wavelength),
            ("distance", self.distance),
            ("pathloss_exp", self.pathloss_exp),
            ("ref_gain", self.ref_gain),
            ("noise_power", self.noise_power),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::model(format!(
                    "channel {name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(())
    }

    /// Expected total path power `rho * d^(-alpha)`.
    pub fn expected_gain(&self) -> f64 {
        self.ref_gain * self.distance.powf(-self.pathloss_exp)
    }

    /// Variance of one path's complex gain.
    pub fn path_variance(&self) -> f64 {
        self.expected_gain() / self.num_paths as f64
    }
}

/// One sampled draw of path gains and departure angles.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// Complex gain per path.
    pub gains: Vec<Complex64>,
    /// Angle of departure per path (rad), in `[-pi/2, pi/2]`.
    pub aods: Vec<f64>,
}

impl ChannelRealization {
    /// CSV dump of the draw, one row per path, for debugging and replay.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("path,gain_re,gain_im,aod_rad\n");
        for (k, (g, theta)) in self.gains.iter().zip(&self.aods).enumerate() {
            out.push_str(&format!(
                "{k},{},{},{}\n",
                crate::numeric::sig12(g.re),
                crate::numeric::sig12(g.im),
                crate::numeric::sig12(*theta)
            ));
        }
        out
    }
}

/// Draws one realization deterministically from `(cp, seed)`.
///
/// Per path the generator consumes, in order, the real part, the imaginary
/// part, and the angle. Keeping the order path-major means realizations
/// with different `num_paths` but equal seeds share their leading paths,
/// which keeps Monte-Carlo comparisons across path counts tightly coupled.
pub fn sample_realization(cp: &ChannelParams, seed: u64) -> ChannelRealization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = (cp.path_variance() / 2.0).sqrt();
    let mut gains = Vec::with_capacity(cp.num_paths);
    let mut aods = Vec::with_capacity(cp.num_paths);
    for _ in 0..cp.num_paths {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        gains.push(Complex64::new(re * sigma, im * sigma));
        aods.push(rng.random_range(-std::f64::consts::FRAC_PI_2..std::f64::consts::FRAC_PI_2));
    }
    ChannelRealization { gains, aods }
}

/// Channel coefficient `h(x)` at antenna position `x` meters.
pub fn channel_coeff(cr: &ChannelRealization, cp: &ChannelParams, x: f64) -> Complex64 {
    let wavenumber = std::f64::consts::TAU / cp.wavelength;
    cr.gains
        .iter()
        .zip(&cr.aods)
        .map(|(g, theta)| g * Complex64::from_polar(1.0, wavenumber * x * theta.sin()))
        .sum()
}

/// Channel power gain `|h(x)|^2`.
pub fn channel_gain(cr: &ChannelRealization, cp: &ChannelParams, x: f64) -> f64 {
    channel_coeff(cr, cp, x).norm_sqr()
}
