//! Physical line shapes: phase-matching envelope, cavity lineshape, jitter.
//!
//! The idealized spike combs elsewhere in this crate have zero-width teeth.
//! A real source emits teeth with a Lorentzian profile (cavity transmission)
//! under a sinc-shaped phase-matching envelope, and detectors blur temporal
//! features with Gaussian jitter. This module samples the resulting
//! single-coordinate probability densities:
//!
//! * spectrum: `|sinc(AΩ) · Σ_m f(Ω − mΔΩ)|²` with `f` a unit-height complex
//!   Lorentzian amplitude whose intensity FWHM is the cavity linewidth;
//! * temporal correlation: `|e^{−Δω|τ|} Σ_m sinc(AmΔΩ) cos(mΔΩτ)|²`
//!   convolved with the detector-jitter Gaussian, where Δω is the angular
//!   half-width of the Lorentzian (valid when ΔΩ ≫ Δω, which the envelope
//!   spec warns about otherwise).
//!
//! Densities are normalized to unit trapezoid integral and serialize to
//! two-column CSV.

use crate::error::{Error, Result};

/// `sin(x)/x`, continuously extended through the origin.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Conversion between a Gaussian's FWHM and its standard deviation.
pub const FWHM_PER_SIGMA: f64 = 2.354_820_045_030_949_3; // 2√(2 ln 2)

/// Source line-shape parameters.
///
/// All user-facing frequencies are ordinary frequencies in Hz; the envelope
/// duration `A` is fixed by the phase-matching bandwidth as
/// `A = 2.78 / (π·B_PM)`.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeSpec {
    phase_matching_fwhm: f64, // Hz
    a: f64,                   // s
    lorentzian_fwhm: f64,     // Hz
    free_spectral_range: f64, // Hz
}

impl EnvelopeSpec {
    pub fn new(phase_matching_fwhm: f64, lorentzian_fwhm: f64, free_spectral_range: f64) -> Result<Self> {
        if !(phase_matching_fwhm.is_finite() && phase_matching_fwhm > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "phase-matching bandwidth must be positive, got {phase_matching_fwhm} Hz"
            )));
        }
        if !(lorentzian_fwhm.is_finite() && lorentzian_fwhm >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "cavity linewidth must be non-negative, got {lorentzian_fwhm} Hz"
            )));
        }
        if !(free_spectral_range.is_finite() && free_spectral_range > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "free spectral range must be positive, got {free_spectral_range} Hz"
            )));
        }
        Ok(EnvelopeSpec {
            phase_matching_fwhm,
            a: 2.78 / (std::f64::consts::PI * phase_matching_fwhm),
            lorentzian_fwhm,
            free_spectral_range,
        })
    }

    /// Phase-matching FWHM bandwidth B_PM (Hz).
    pub fn phase_matching_fwhm(&self) -> f64 {
        self.phase_matching_fwhm
    }

    /// Envelope duration A = 2.78/(π·B_PM) (s).
    pub fn envelope_duration(&self) -> f64 {
        self.a
    }

    /// Cavity Lorentzian FWHM (Hz).
    pub fn lorentzian_fwhm(&self) -> f64 {
        self.lorentzian_fwhm
    }

    /// Comb free spectral range ΔΩ/2π (Hz).
    pub fn free_spectral_range(&self) -> f64 {
        self.free_spectral_range
    }

    /// How many linewidths fit in one free spectral range. The temporal
    /// model assumes the lines are well separated; callers should surface
    /// [`EnvelopeSpec::resolution_warning`] when this drops below 5.
    pub fn line_resolution_ratio(&self) -> f64 {
        self.free_spectral_range / self.lorentzian_fwhm
    }

    /// Human-readable warning when the comb lines are poorly resolved.
    pub fn resolution_warning(&self) -> Option<String> {
        let ratio = self.line_resolution_ratio();
        if ratio < 5.0 {
            Some(format!(
                "comb lines are poorly resolved: free spectral range is only {ratio:.2}x the \
                 linewidth (expected >= 5x); line-shape results are unreliable"
            ))
        } else {
            None
        }
    }
}

/// Coordinate axis of a sampled density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityAxis {
    /// Detuning Ω from the comb center, in rad/s.
    Detuning,
    /// Relative delay τ between the two photons, in seconds.
    Delay,
}

impl DensityAxis {
    /// CSV column header naming the coordinate and its units.
    pub fn column_label(&self) -> &'static str {
        match self {
            DensityAxis::Detuning => "detuning_rad_per_s",
            DensityAxis::Delay => "delay_s",
        }
    }
}

/// Uniform sampling grid for a density: `points` samples spanning
/// `[min, max]` inclusive.
#[derive(Debug, Clone, Copy)]
pub struct SampleGrid {
    min: f64,
    max: f64,
    points: usize,
}

impl SampleGrid {
    pub const DEFAULT_POINTS: usize = 4096;

    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::InvalidParameter(format!(
                "grid range must satisfy min < max, got [{min}, {max}]"
            )));
        }
        if points < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 2 points, got {points}"
            )));
        }
        Ok(SampleGrid { min, max, points })
    }

    /// Symmetric grid `[-half_width, +half_width]` with the default point count.
    pub fn symmetric(half_width: f64) -> Result<Self> {
        SampleGrid::new(-half_width, half_width, Self::DEFAULT_POINTS)
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        self.min + self.step() * i as f64
    }
}

/// A non-negative density sampled on a uniform grid, normalized to unit
/// trapezoid integral.
#[derive(Debug, Clone)]
pub struct SampledDensity {
    axis: DensityAxis,
    samples: Vec<(f64, f64)>,
}

impl SampledDensity {
    fn from_values(axis: DensityAxis, grid: &SampleGrid, mut values: Vec<f64>) -> Result<Self> {
        debug_assert_eq!(values.len(), grid.points());
        let step = grid.step();
        let mut integral = 0.0;
        for w in values.windows(2) {
            integral += 0.5 * (w[0] + w[1]) * step;
        }
        if !(integral.is_finite() && integral > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "sampled density has non-positive or non-finite integral {integral}"
            )));
        }
        for v in &mut values {
            *v /= integral;
        }
        Ok(SampledDensity {
            axis,
            samples: values
                .into_iter()
                .enumerate()
                .map(|(i, v)| (grid.coordinate(i), v))
                .collect(),
        })
    }

    pub fn axis(&self) -> DensityAxis {
        self.axis
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    /// Trapezoid integral of the stored samples (1 after normalization).
    pub fn integral(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0))
            .sum()
    }

    /// Strict interior local maxima whose height is at least
    /// `threshold × (global maximum)`, as `(coordinate, density)` pairs.
    pub fn local_maxima(&self, threshold: f64) -> Vec<(f64, f64)> {
        let peak = self
            .samples
            .iter()
            .map(|&(_, v)| v)
            .fold(f64::NEG_INFINITY, f64::max);
        let floor = peak * threshold;
        let mut out = Vec::new();
        for i in 1..self.samples.len().saturating_sub(1) {
            let (_, prev) = self.samples[i - 1];
            let (x, v) = self.samples[i];
            let (_, next) = self.samples[i + 1];
            if v > prev && v >= next && v >= floor {
                out.push((x, v));
            }
        }
        out
    }

    /// Coordinate and height of the largest sample with `lo <= x <= hi`,
    /// or `None` if the window contains no samples.
    pub fn argmax_in(&self, lo: f64, hi: f64) -> Option<(f64, f64)> {
        self.samples
            .iter()
            .filter(|&&(x, _)| lo <= x && x <= hi)
            .fold(None, |acc: Option<(f64, f64)>, &(x, v)| match acc {
                Some((_, best)) if best >= v => acc,
                _ => Some((x, v)),
            })
    }

    /// Density-weighted mean coordinate over `lo <= x <= hi` (trapezoid
    /// weights), or `None` if the window holds fewer than two samples or
    /// carries no mass.
    pub fn centroid_in(&self, lo: f64, hi: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .samples
            .iter()
            .copied()
            .filter(|&(x, _)| lo <= x && x <= hi)
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let mut mass = 0.0;
        let mut moment = 0.0;
        for w in pts.windows(2) {
            let (x0, v0) = w[0];
            let (x1, v1) = w[1];
            let dx = x1 - x0;
            mass += 0.5 * (v0 + v1) * dx;
            moment += 0.5 * (x0 * v0 + x1 * v1) * dx;
        }
        (mass > 0.0).then(|| moment / mass)
    }

    /// Two-column CSV: a header naming the axis and its units, then one
    /// `coordinate,density` row per sample.
    pub fn to_csv(&self) -> String {
        let mut csv = String::with_capacity(32 * (self.samples.len() + 1));
        csv.push_str(self.axis.column_label());
        csv.push_str(",density\n");
        for (x, v) in &self.samples {
            csv.push_str(&format!("{x:e},{v:e}\n"));
        }
        csv
    }
}

/// Samples the physical single-photon spectrum `|sinc(AΩ)·Σ_m f(Ω−mΔΩ)|²`
/// over the given detuning grid (rad/s).
///
/// The Lorentzian amplitude `f(x) = 1/(1 + 2ix/Γ)` has intensity FWHM
/// exactly `Γ` = 2π·linewidth. The comb lines included are those that fit
/// inside the plotted window. The grid step must resolve the lineshape
/// (step ≤ Γ/10).
pub fn physical_spectrum(env: &EnvelopeSpec, grid: &SampleGrid) -> Result<SampledDensity> {
    let gamma = 2.0 * std::f64::consts::PI * env.lorentzian_fwhm(); // rad/s
    let max_step = gamma / 10.0;
    if grid.step() > max_step {
        return Err(Error::GridTooCoarse {
            step: grid.step(),
            max_step,
            what: "detuning grid must resolve the Lorentzian linewidth",
        });
    }
    let spacing = 2.0 * std::f64::consts::PI * env.free_spectral_range(); // rad/s
    let edge = grid.min().abs().max(grid.max().abs());
    let n0 = (edge / spacing).floor() as i64;
    let a = env.envelope_duration();

    let values: Vec<f64> = (0..grid.points())
        .map(|i| {
            let omega = grid.coordinate(i);
            // Coherent sum of complex Lorentzian line amplitudes.
            let (mut re, mut im) = (0.0, 0.0);
            for m in -n0..=n0 {
                let x = 2.0 * (omega - m as f64 * spacing) / gamma;
                let denom = 1.0 + x * x;
                re += 1.0 / denom;
                im -= x / denom;
            }
            let envelope = sinc(a * omega);
            envelope * envelope * (re * re + im * im)
        })
        .collect();
    SampledDensity::from_values(DensityAxis::Detuning, grid, values)
}

/// Number of comb lines per side kept in the temporal-correlation sum:
/// enough to cover the phase-matching envelope out to its far side lobes.
fn correlation_line_count(env: &EnvelopeSpec) -> i64 {
    let per_side = (8.0 * env.phase_matching_fwhm() / env.free_spectral_range()).ceil() as i64;
    per_side.clamp(32, 4000)
}

/// Samples the two-photon temporal correlation
/// `|e^{−Δω|τ|} Σ_m sinc(AmΔΩ) cos(mΔΩτ)|²` convolved with a Gaussian of
/// FWHM `jitter_fwhm` (detector jitter) over the given delay grid (s).
///
/// `Δω` is the angular half-width of the cavity Lorentzian, π·linewidth.
/// With `jitter_fwhm = 0` no convolution is applied; otherwise the grid
/// step must resolve the jitter (step ≤ jitter/10).
pub fn physical_temporal_correlation(
    env: &EnvelopeSpec,
    jitter_fwhm: f64,
    grid: &SampleGrid,
) -> Result<SampledDensity> {
    if !(jitter_fwhm.is_finite() && jitter_fwhm >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "jitter FWHM must be non-negative, got {jitter_fwhm} s"
        )));
    }
    if jitter_fwhm > 0.0 {
        let max_step = jitter_fwhm / 10.0;
        if grid.step() > max_step {
            return Err(Error::GridTooCoarse {
                step: grid.step(),
                max_step,
                what: "delay grid must resolve the detector jitter",
            });
        }
    }
    let spacing = 2.0 * std::f64::consts::PI * env.free_spectral_range(); // rad/s
    let half_width = std::f64::consts::PI * env.lorentzian_fwhm(); // Δω, rad/s
    let a = env.envelope_duration();
    let n0 = correlation_line_count(env);
    let weights: Vec<f64> = (0..=n0).map(|m| sinc(a * m as f64 * spacing)).collect();

    let mut values: Vec<f64> = (0..grid.points())
        .map(|i| {
            let tau = grid.coordinate(i);
            // Even sum over m: w_0 + 2 Σ_{m>0} w_m cos(mΔΩτ).
            let mut s = weights[0];
            for (m, w) in weights.iter().enumerate().skip(1) {
                s += 2.0 * w * (m as f64 * spacing * tau).cos();
            }
            let amp = (-half_width * tau.abs()).exp() * s;
            amp * amp
        })
        .collect();

    if jitter_fwhm > 0.0 {
        values = convolve_gaussian(&values, grid.step(), jitter_fwhm / FWHM_PER_SIGMA);
    }
    SampledDensity::from_values(DensityAxis::Delay, grid, values)
}

/// Discrete convolution with a unit-mass Gaussian kernel of standard
/// deviation `sigma`, zero-padded at the edges.
fn convolve_gaussian(values: &[f64], step: f64, sigma: f64) -> Vec<f64> {
    let half = ((4.0 * sigma / step).ceil() as usize).max(1);
    let kernel: Vec<f64> = (0..=half)
        .map(|k| {
            let x = k as f64 * step / sigma;
            (-0.5 * x * x).exp()
        })
        .collect();
    let mass: f64 = kernel[0] + 2.0 * kernel[1..].iter().sum::<f64>();
    let n = values.len() as i64;
    (0..n)
        .map(|i| {
            let mut acc = values[i as usize] * kernel[0];
            for (k, w) in kernel.iter().enumerate().skip(1) {
                let k = k as i64;
                if i - k >= 0 {
                    acc += values[(i - k) as usize] * w;
                }
                if i + k < n {
                    acc += values[(i + k) as usize] * w;
                }
            }
            acc / mass
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TWO_PI: f64 = std::f64::consts::TAU;

    fn narrowband() -> EnvelopeSpec {
        // 250 GHz phase matching, 2 GHz lines, 20 GHz spacing.
        EnvelopeSpec::new(250e9, 2e9, 20e9).unwrap()
    }

    #[test]
    fn envelope_duration_matches_bandwidth() {
        for b in [250e9, 7.4e12] {
            let env = EnvelopeSpec::new(b, 2e9, 20e9).unwrap();
            assert_relative_eq!(
                env.envelope_duration() * b,
                2.78 / std::f64::consts::PI,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn resolution_warning_fires_below_five() {
        let ok = EnvelopeSpec::new(250e9, 2e9, 20e9).unwrap();
        assert!(ok.resolution_warning().is_none());
        let bad = EnvelopeSpec::new(250e9, 5e9, 20e9).unwrap();
        assert!(bad.line_resolution_ratio() < 5.0);
        assert!(bad.resolution_warning().is_some());
    }

    #[test]
    fn spectrum_peaks_on_the_comb_lattice() {
        // Narrow lines (Γ = ΔΩ/100) pin every maximum to the lattice.
        let grid = SampleGrid::new(-TWO_PI * 50e9, TWO_PI * 50e9, 8192).unwrap();
        let spacing = TWO_PI * 20e9;
        let narrow = EnvelopeSpec::new(250e9, 0.2e9, 20e9).unwrap();
        let density = physical_spectrum(&narrow, &grid).unwrap();
        assert_relative_eq!(density.integral(), 1.0, max_relative = 1e-9);
        // Five lines fit in ±50 GHz: m = -2..=2.
        assert_eq!(density.local_maxima(0.01).len(), 5);
        for m in -2..=2i32 {
            let c = f64::from(m) * spacing;
            let (x, _) = density
                .argmax_in(c - spacing / 2.0, c + spacing / 2.0)
                .unwrap();
            assert!(
                (x - c).abs() <= grid.step(),
                "line {m} at {x}, expected {c}"
            );
        }

        // With 2 GHz lines the coherent tails of the neighbors shift each
        // maximum outward in proportion to the left/right line imbalance
        // (≈ Γ²/4ΔΩ per unit of harmonic-number imbalance, i.e. a few
        // percent of Γ at the comb edge); interior lines barely move.
        let env = narrowband();
        let density = physical_spectrum(&env, &grid).unwrap();
        let gamma = TWO_PI * env.lorentzian_fwhm();
        assert_eq!(density.local_maxima(0.01).len(), 5);
        for m in -2..=2i32 {
            let c = f64::from(m) * spacing;
            let (x, _) = density
                .argmax_in(c - spacing / 2.0, c + spacing / 2.0)
                .unwrap();
            let tol = grid.step()
                + if m.abs() == 2 { 0.05 * gamma } else { 0.02 * gamma };
            assert!((x - c).abs() <= tol, "line {m} at {x}, expected {c}");
        }
        // Global maximum at zero detuning.
        let (x_max, _) = density
            .samples()
            .iter()
            .fold((0.0, f64::NEG_INFINITY), |acc, &(x, v)| {
                if v > acc.1 { (x, v) } else { acc }
            });
        assert!(x_max.abs() <= grid.step());
    }

    #[test]
    fn central_line_width_matches_the_linewidth() {
        let env = narrowband();
        // Fine grid over the central line only.
        let grid = SampleGrid::new(-TWO_PI * 5e9, TWO_PI * 5e9, 8192).unwrap();
        let density = physical_spectrum(&env, &grid).unwrap();
        let samples = density.samples();
        let peak = samples.iter().map(|&(_, v)| v).fold(f64::NEG_INFINITY, f64::max);
        let half = peak / 2.0;
        // Interpolated half-height crossings around the center.
        let mut left = f64::NAN;
        let mut right = f64::NAN;
        for w in samples.windows(2) {
            let ((x0, v0), (x1, v1)) = (w[0], w[1]);
            if x1 <= 0.0 && v0 < half && v1 >= half {
                left = x0 + (half - v0) / (v1 - v0) * (x1 - x0);
            }
            if x0 >= 0.0 && v0 >= half && v1 < half {
                right = x0 + (half - v0) / (v1 - v0) * (x1 - x0);
            }
        }
        let fwhm_hz = (right - left) / TWO_PI;
        assert_relative_eq!(fwhm_hz, env.lorentzian_fwhm(), max_relative = 0.10);
    }

    #[test]
    fn correlation_peaks_every_round_trip_time() {
        let env = narrowband();
        // ±2.5 periods keeps every peak half a period away from the grid
        // edge, where the jitter convolution would clip a lobe and skew
        // its maximum inward.
        let grid = SampleGrid::symmetric(125e-12).unwrap();
        let density = physical_temporal_correlation(&env, 20e-12, &grid).unwrap();
        assert_relative_eq!(density.integral(), 1.0, max_relative = 1e-9);

        let period = 1.0 / env.free_spectral_range(); // 50 ps
        let peaks = density.local_maxima(0.02);
        assert_eq!(peaks.len(), 5, "peaks at {peaks:?}");
        for w in peaks.windows(2) {
            let gap = w[1].0 - w[0].0;
            assert!(
                (gap - period).abs() <= 0.5e-12,
                "peak spacing {gap} vs period {period}"
            );
        }
        for m in -2..=2i32 {
            let c = f64::from(m) * period;
            let (x, _) = density
                .argmax_in(c - period / 2.0, c + period / 2.0)
                .unwrap();
            assert!((x - c).abs() <= grid.step(), "peak {m} at {x}");
        }
        // The τ = 0 peak dominates and heights decay outward on each side.
        let heights: Vec<f64> = peaks.iter().map(|&(_, v)| v).collect();
        let center = heights.len() / 2;
        for i in 0..center {
            assert!(heights[i] <= heights[i + 1] * 1.001);
            let j = heights.len() - 1 - i;
            assert!(heights[j] <= heights[j - 1] * 1.001);
        }
    }

    #[test]
    fn comb_limit_pulses_center_on_the_delay_lattice() {
        // No jitter, vanishing linewidth: the sinc line weights Fourier-sum
        // to a train of flat-top pulses of half-width A centered at integer
        // multiples of ΔT. Gibbs ripple from the finite line count rides on
        // each flat top, so individual local maxima are not meaningful —
        // the pulse centroids and widths are.
        let env = EnvelopeSpec::new(250e9, 0.0, 20e9).unwrap();
        let period = 1.0 / env.free_spectral_range();
        let grid = SampleGrid::new(-2.6 * period, 2.6 * period, 5201).unwrap();
        let density = physical_temporal_correlation(&env, 0.0, &grid).unwrap();
        let gmax = density
            .samples()
            .iter()
            .map(|&(_, v)| v)
            .fold(f64::NEG_INFINITY, f64::max);
        let width_frac = 2.0 * env.envelope_duration() / period;
        for m in -2..=2i32 {
            let c = f64::from(m) * period;
            let (lo, hi) = (c - period / 2.0, c + period / 2.0);
            let centroid = density.centroid_in(lo, hi).unwrap();
            assert!(
                (centroid - c).abs() <= grid.step() / 2.0,
                "pulse {m} centroid {centroid}, expected {c}"
            );
            // Flat top: the half-max support fills ≈ 2A of each ΔT window…
            let in_window: Vec<f64> = density
                .samples()
                .iter()
                .filter(|&&(x, _)| lo <= x && x <= hi)
                .map(|&(_, v)| v)
                .collect();
            let above = in_window.iter().filter(|&&v| v > 0.5 * gmax).count();
            let frac = above as f64 / in_window.len() as f64;
            assert!(
                (frac - width_frac).abs() <= 0.2 * width_frac,
                "pulse {m} half-max fraction {frac} vs {width_frac}"
            );
            // …and the gaps between pulses are empty.
            let (_, v) = density
                .argmax_in(hi - period / 25.0, hi + period / 25.0)
                .unwrap();
            assert!(v <= 1e-3 * gmax, "inter-pulse density {v} vs max {gmax}");
        }
    }

    #[test]
    fn coarse_grids_are_rejected() {
        let env = narrowband();
        let coarse = SampleGrid::new(-TWO_PI * 50e9, TWO_PI * 50e9, 16).unwrap();
        match physical_spectrum(&env, &coarse) {
            Err(Error::GridTooCoarse { .. }) => {}
            other => panic!("expected GridTooCoarse, got {other:?}"),
        }
        let coarse_t = SampleGrid::new(-150e-12, 150e-12, 16).unwrap();
        match physical_temporal_correlation(&env, 20e-12, &coarse_t) {
            Err(Error::GridTooCoarse { .. }) => {}
            other => panic!("expected GridTooCoarse, got {other:?}"),
        }
    }

    #[test]
    fn csv_has_header_and_one_row_per_sample() {
        let env = narrowband();
        let grid = SampleGrid::new(-TWO_PI * 5e9, TWO_PI * 5e9, 64).unwrap();
        let density = physical_spectrum(&env, &grid).unwrap();
        let csv = density.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 65);
        assert_eq!(lines[0], "detuning_rad_per_s,density");
        for row in &lines[1..] {
            let mut cols = row.split(',');
            cols.next().unwrap().parse::<f64>().unwrap();
            assert!(cols.next().unwrap().parse::<f64>().unwrap() >= 0.0);
            assert!(cols.next().is_none());
        }
    }

    #[test]
    fn gaussian_convolution_preserves_mass_and_widens() {
        let n = 1001;
        let step = 1e-12;
        let mut spike = vec![0.0; n];
        spike[n / 2] = 1.0;
        let out = convolve_gaussian(&spike, step, 5e-12);
        let mass: f64 = out.iter().sum();
        assert_relative_eq!(mass, 1.0, max_relative = 1e-9);
        // Width of the blurred spike ≈ σ.
        let mean: f64 = out
            .iter()
            .enumerate()
            .map(|(i, v)| (i as f64 - (n / 2) as f64) * step * v)
            .sum();
        let var: f64 = out
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let x = (i as f64 - (n / 2) as f64) * step - mean;
                x * x * v
            })
            .sum();
        assert_relative_eq!(var.sqrt(), 5e-12, max_relative = 1e-3);
    }
}
