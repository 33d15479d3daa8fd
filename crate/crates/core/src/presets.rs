//! Named parameter sets for the two reference sources, plus TOML loading.
//!
//! A preset bundles everything a scenario needs: source geometry (center
//! wavelength, phase-matching bandwidth, comb spacing, cavity linewidth),
//! detector jitter for the plotting commands, the Gaussian noise budget,
//! and the reference capacities the preset is expected to reproduce.
//!
//! Two presets ship built in: `ppktp` (250 GHz narrowband waveguide) and
//! `ppln` (7.4 THz broadband waveguide). Presets can also be loaded from
//! TOML files; the schema mirrors the built-ins and is documented in the
//! repository README. Frequencies in files are given in GHz and durations
//! in ps for hand-editability; they are converted to SI on load.

use serde::Deserialize;

use crate::comb::CombSpec;
use crate::envelope::EnvelopeSpec;
use crate::error::{Error, Result};
use crate::noise::{linewidth_sigma, NoiseModel};

/// Speed of light (m/s), for converting the center wavelength.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Default truncation (teeth per side) when a preset builds comb states.
pub const DEFAULT_TRUNCATION: u32 = 32;

const DEFAULT_SEED: u64 = 7;

/// Names accepted by [`Preset::by_name`].
pub fn known_presets() -> &'static [&'static str] {
    &["ppktp", "ppln"]
}

/// A complete scenario parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: String,
    /// Center wavelength of the photons (m).
    pub center_wavelength: f64,
    /// Phase-matching FWHM bandwidth B_PM (Hz).
    pub phase_matching_fwhm: f64,
    /// Comb free spectral range ΔΩ/2π (Hz).
    pub free_spectral_range: f64,
    /// Cavity Lorentzian FWHM (Hz), used by the plotting commands.
    pub lorentzian_fwhm: f64,
    /// Detector jitter FWHM (s), used by the plotting commands.
    pub jitter_fwhm: f64,
    pub noise: NoiseModel,
    /// Reference frequency-channel capacity this preset should reproduce
    /// (bits), if one is on record.
    pub expected_frequency_bits: Option<f64>,
    /// Reference time-channel capacity (bits), if one is on record.
    pub expected_time_bits: Option<f64>,
}

impl Preset {
    /// Narrowband 250 GHz source: 20 GHz comb, 2 GHz lines, 10 GHz
    /// frequency noise components, 1/3 ps time noise components, and the
    /// bandwidth-derived 7.10 ps spike width.
    pub fn ppktp() -> Preset {
        Preset {
            name: "ppktp".into(),
            center_wavelength: 1560e-9,
            phase_matching_fwhm: 250e9,
            free_spectral_range: 20e9,
            lorentzian_fwhm: 2e9,
            jitter_fwhm: 20e-12,
            noise: NoiseModel {
                sigma_f_shift: 10e9,
                sigma_f_meas: 10e9,
                sigma_t_shift: 1e-12,
                sigma_t_meas: 3e-12,
                sigma_linewidth: linewidth_sigma(250e9),
                rng_seed: DEFAULT_SEED,
            },
            expected_frequency_bits: Some(2.1),
            expected_time_bits: Some(1.63),
        }
    }

    /// Broadband 7.4 THz source: same comb and noise components, but the
    /// spike width shrinks to 0.24 ps with the larger bandwidth.
    pub fn ppln() -> Preset {
        Preset {
            name: "ppln".into(),
            center_wavelength: 1560e-9,
            phase_matching_fwhm: 7.4e12,
            free_spectral_range: 20e9,
            lorentzian_fwhm: 2e9,
            jitter_fwhm: 20e-12,
            noise: NoiseModel {
                sigma_f_shift: 10e9,
                sigma_f_meas: 10e9,
                sigma_t_shift: 1e-12,
                sigma_t_meas: 3e-12,
                sigma_linewidth: linewidth_sigma(7.4e12),
                rng_seed: DEFAULT_SEED,
            },
            expected_frequency_bits: Some(6.98),
            expected_time_bits: Some(1.93),
        }
    }

    /// Looks up a built-in preset by (case-insensitive) name.
    pub fn by_name(name: &str) -> Result<Preset> {
        match name.to_ascii_lowercase().as_str() {
            "ppktp" => Ok(Preset::ppktp()),
            "ppln" => Ok(Preset::ppln()),
            _ => Err(Error::UnknownPreset {
                name: name.to_string(),
                known: known_presets().join(", "),
            }),
        }
    }

    /// Parses a preset from TOML text (see the repository README for the
    /// schema). `sigma_linewidth_ps` may be omitted, in which case it is
    /// derived from the phase-matching bandwidth.
    pub fn from_toml_str(text: &str) -> Result<Preset> {
        let raw: RawPreset = toml::from_str(text)
            .map_err(|e| Error::Config(format!("preset file is not valid: {e}")))?;
        raw.build()
    }

    /// Loads a preset from a TOML file.
    pub fn from_file(path: &std::path::Path) -> Result<Preset> {
        let text = std::fs::read_to_string(path)?;
        Preset::from_toml_str(&text)
    }

    /// Photon center frequency c/λ (Hz).
    pub fn center_frequency(&self) -> f64 {
        SPEED_OF_LIGHT / self.center_wavelength
    }

    /// Single-photon comb geometry at the photon center frequency.
    pub fn comb_spec(&self, truncation: u32) -> Result<CombSpec> {
        CombSpec::new(self.center_frequency(), self.free_spectral_range, truncation)
    }

    /// Two-photon comb geometry: the comb center holds the pump frequency
    /// 2c/λ, with tooth pairs anticorrelated about half of it.
    pub fn biphoton_spec(&self, truncation: u32) -> Result<CombSpec> {
        CombSpec::new(2.0 * self.center_frequency(), self.free_spectral_range, truncation)
    }

    /// Line-shape parameters for the plotting commands.
    pub fn envelope_spec(&self) -> Result<EnvelopeSpec> {
        EnvelopeSpec::new(self.phase_matching_fwhm, self.lorentzian_fwhm, self.free_spectral_range)
    }

    /// Comb period ΔT = 1/FSR (s).
    pub fn time_period(&self) -> f64 {
        1.0 / self.free_spectral_range
    }

    fn validate(self) -> Result<Preset> {
        for (name, v) in [
            ("center_wavelength", self.center_wavelength),
            ("phase_matching_fwhm", self.phase_matching_fwhm),
            ("free_spectral_range", self.free_spectral_range),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("preset {name} must be positive, got {v}")));
            }
        }
        for (name, v) in [("lorentzian_fwhm", self.lorentzian_fwhm), ("jitter_fwhm", self.jitter_fwhm)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Config(format!(
                    "preset {name} must be non-negative, got {v}"
                )));
            }
        }
        if self.name.trim().is_empty() {
            return Err(Error::Config("preset name must be non-empty".into()));
        }
        Ok(self)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPreset {
    name: String,
    center_wavelength_nm: f64,
    phase_matching_fwhm_ghz: f64,
    free_spectral_range_ghz: f64,
    lorentzian_fwhm_ghz: f64,
    jitter_fwhm_ps: f64,
    noise: RawNoise,
    expected: Option<RawExpected>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNoise {
    sigma_f_shift_ghz: f64,
    sigma_f_meas_ghz: f64,
    sigma_t_shift_ps: f64,
    sigma_t_meas_ps: f64,
    sigma_linewidth_ps: Option<f64>,
    rng_seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExpected {
    frequency_bits: f64,
    time_bits: f64,
}

const GHZ: f64 = 1e9;
const PS: f64 = 1e-12;

impl RawPreset {
    fn build(self) -> Result<Preset> {
        let phase_matching_fwhm = self.phase_matching_fwhm_ghz * GHZ;
        let sigma_linewidth = self
            .noise
            .sigma_linewidth_ps
            .map(|ps| ps * PS)
            .unwrap_or_else(|| linewidth_sigma(phase_matching_fwhm));
        let noise = NoiseModel::new(
            self.noise.sigma_f_shift_ghz * GHZ,
            self.noise.sigma_f_meas_ghz * GHZ,
            self.noise.sigma_t_shift_ps * PS,
            self.noise.sigma_t_meas_ps * PS,
            sigma_linewidth,
            self.noise.rng_seed.unwrap_or(DEFAULT_SEED),
        )?;
        Preset {
            name: self.name,
            center_wavelength: self.center_wavelength_nm * 1e-9,
            phase_matching_fwhm,
            free_spectral_range: self.free_spectral_range_ghz * GHZ,
            lorentzian_fwhm: self.lorentzian_fwhm_ghz * GHZ,
            jitter_fwhm: self.jitter_fwhm_ps * PS,
            noise,
            expected_frequency_bits: self.expected.as_ref().map(|e| e.frequency_bits),
            expected_time_bits: self.expected.as_ref().map(|e| e.time_bits),
        }
        .validate()
    }
}
