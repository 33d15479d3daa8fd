//! Gaussian noise budget for the frequency and time measurements.
//!
//! Every imperfection in scope — shift-setting precision, measurement
//! resolution, and the time-domain width of a comb spike — is modeled as an
//! independent zero-mean Gaussian, so the per-domain totals combine in
//! quadrature:
//!
//! ```text
//! σ_f,total = √(σ_f,shift² + σ_f,meas²)
//! σ_t,total = √(σ_t,shift² + σ_t,meas² + σ_linewidth²)
//! ```

use crate::error::{Error, Result};

/// Time-domain Gaussian width of a single comb spike implied by a
/// phase-matching bandwidth of `phase_matching_fwhm` Hz (FWHM), in seconds.
///
/// The sinc envelope of bandwidth B limits each spike's duration; folding
/// that profile into a Gaussian of equivalent width gives σ ≈ 1.776/B,
/// calibrated so that 250 GHz ↦ 7.10 ps and 7.4 THz ↦ 0.24 ps.
pub fn linewidth_sigma(phase_matching_fwhm: f64) -> f64 {
    1.776 / phase_matching_fwhm
}

/// Independent Gaussian noise components of the protocol, plus the RNG seed
/// that makes simulations reproducible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    /// Frequency-shift setting precision (Hz).
    pub sigma_f_shift: f64,
    /// Frequency measurement resolution (Hz).
    pub sigma_f_meas: f64,
    /// Time-shift setting precision (s).
    pub sigma_t_shift: f64,
    /// Arrival-time measurement resolution (s).
    pub sigma_t_meas: f64,
    /// Time-domain width of one comb spike (s); see [`linewidth_sigma`].
    pub sigma_linewidth: f64,
    /// Seed for deterministic Monte Carlo runs.
    pub rng_seed: u64,
}

impl NoiseModel {
    pub fn new(
        sigma_f_shift: f64,
        sigma_f_meas: f64,
        sigma_t_shift: f64,
        sigma_t_meas: f64,
        sigma_linewidth: f64,
        rng_seed: u64,
    ) -> Result<Self> {
        for (name, v) in [
            ("sigma_f_shift", sigma_f_shift),
            ("sigma_f_meas", sigma_f_meas),
            ("sigma_t_shift", sigma_t_shift),
            ("sigma_t_meas", sigma_t_meas),
            ("sigma_linewidth", sigma_linewidth),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be a non-negative finite number, got {v}"
                )));
            }
        }
        Ok(NoiseModel {
            sigma_f_shift,
            sigma_f_meas,
            sigma_t_shift,
            sigma_t_meas,
            sigma_linewidth,
            rng_seed,
        })
    }

    /// The exactly-zero noise model (deterministic measurements).
    pub fn noiseless(rng_seed: u64) -> Self {
        NoiseModel {
            sigma_f_shift: 0.0,
            sigma_f_meas: 0.0,
            sigma_t_shift: 0.0,
            sigma_t_meas: 0.0,
            sigma_linewidth: 0.0,
            rng_seed,
        }
    }

    /// Total frequency noise √(σ_f,shift² + σ_f,meas²), in Hz.
    pub fn sigma_f_total(&self) -> f64 {
        self.sigma_f_shift.hypot(self.sigma_f_meas)
    }

    /// Total time noise √(σ_t,shift² + σ_t,meas² + σ_linewidth²), in seconds.
    pub fn sigma_t_total(&self) -> f64 {
        (self.sigma_t_shift * self.sigma_t_shift
            + self.sigma_t_meas * self.sigma_t_meas
            + self.sigma_linewidth * self.sigma_linewidth)
            .sqrt()
    }

    /// Same components with a different seed.
    pub fn with_seed(mut self, rng_seed: u64) -> Self {
        self.rng_seed = rng_seed;
        self
    }
}
