//! Spike-comb states on a frequency/time grid.
//!
//! A comb state is a finite superposition of sharp spectral lines ("teeth")
//! spaced by a free spectral range ΔΩ around a center frequency, or — in the
//! conjugate picture — a periodic train of temporal peaks spaced by
//! ΔT = 2π/ΔΩ. Both pictures are carried by [`SpikeComb`]: a sorted list of
//! `(lattice index, complex amplitude)` pairs over a discrete coordinate
//! lattice, tagged with the [`Basis`] it currently lives in.
//!
//! The index lattice may be finer than the tooth spacing: a comb with
//! `refinement` r puts lattice site `q` at detuning `q · ΔΩ/r` from the
//! center. Sub-tooth frequency shifts (the displacement operators used for
//! qudit encoding) stay exact by widening `r` instead of moving teeth off
//! grid.
//!
//! Conventions:
//! - Fourier kernel `⟨t|ω⟩ = e^{iωt}/√(2π)`, so a phase ramp
//!   `e^{-2πi m j / d}` across frequency teeth translates the temporal comb
//!   by `(j/d) ΔT`.
//! - Phases are tracked relative to the comb center; the carrier phase
//!   `e^{-i ω₀ Δt}` common to every tooth is dropped as a global phase.
//! - States are unit norm, and equality is judged up to a global phase via
//!   the overlap modulus.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Largest admissible |lattice index|. Shifts that would move a tooth beyond
/// this bound report [`Error::LatticeOverflow`]; legitimate protocol shifts
/// stay many orders of magnitude below it.
pub const MAX_LATTICE_INDEX: i64 = i32::MAX as i64;

/// Which coordinate the spike list is currently expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// Teeth at detunings `q · ΔΩ/r` (rad/s) from the center frequency.
    Frequency,
    /// Samples of one period of the temporal envelope, at times
    /// `u · r·ΔT/L` (s), where `L` is the sample count.
    Time,
}

// ---------------------------------------------------------------------------
// CombSpec
// ---------------------------------------------------------------------------

/// Geometry of a comb: center frequency, tooth spacing, and truncation.
///
/// The tooth spacing ΔΩ (rad/s) and the temporal period ΔT = 2π/ΔΩ (s) are
/// stored together; `ΔT · ΔΩ = 2π` holds to machine precision by
/// construction. A truncation of `N0` means teeth `m = -N0 ..= N0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CombSpec {
    center_frequency: f64, // rad/s
    spacing: f64,          // rad/s
    truncation: u32,
    time_period: f64, // s
}

impl CombSpec {
    /// Builds a spec from user-facing units: center frequency and free
    /// spectral range in Hz. A 20 GHz free spectral range gives
    /// ΔT = 50 ps exactly.
    pub fn new(center_hz: f64, free_spectral_range_hz: f64, truncation: u32) -> Result<Self> {
        if !(center_hz.is_finite() && center_hz >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "center frequency must be finite and non-negative, got {center_hz}"
            )));
        }
        if !(free_spectral_range_hz.is_finite() && free_spectral_range_hz > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "free spectral range must be positive, got {free_spectral_range_hz}"
            )));
        }
        Ok(CombSpec {
            center_frequency: TAU * center_hz,
            spacing: TAU * free_spectral_range_hz,
            truncation,
            time_period: 1.0 / free_spectral_range_hz,
        })
    }

    /// Builds a spec directly from angular quantities (rad/s). Unlike
    /// [`CombSpec::new`], the center may be any finite value: derived frames
    /// (e.g. the beamsplitter's difference-frequency frame) can legitimately
    /// center at or below zero.
    pub fn from_angular(center_rad_per_s: f64, spacing_rad_per_s: f64, truncation: u32) -> Result<Self> {
        if !center_rad_per_s.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "center frequency must be finite, got {center_rad_per_s}"
            )));
        }
        if !(spacing_rad_per_s.is_finite() && spacing_rad_per_s > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "spacing must be positive, got {spacing_rad_per_s}"
            )));
        }
        Ok(CombSpec {
            center_frequency: center_rad_per_s,
            spacing: spacing_rad_per_s,
            truncation,
            time_period: TAU / spacing_rad_per_s,
        })
    }

    /// Center frequency ω₀ in rad/s.
    pub fn center_frequency(&self) -> f64 {
        self.center_frequency
    }

    /// Tooth spacing ΔΩ in rad/s.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Tooth spacing in Hz (the free spectral range).
    pub fn spacing_hz(&self) -> f64 {
        self.spacing / TAU
    }

    /// Truncation N0: teeth run m = -N0 ..= N0.
    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Number of teeth, 2·N0 + 1.
    pub fn tooth_count(&self) -> usize {
        2 * self.truncation as usize + 1
    }

    /// Temporal period ΔT = 2π/ΔΩ in seconds.
    pub fn time_period(&self) -> f64 {
        self.time_period
    }

    /// True when two specs describe the same grid to relative precision
    /// `tol` (truncation must match exactly).
    pub fn same_grid(&self, other: &CombSpec, tol: f64) -> bool {
        let close = |a: f64, b: f64| {
            let scale = a.abs().max(b.abs()).max(1.0);
            (a - b).abs() <= tol * scale
        };
        close(self.center_frequency, other.center_frequency)
            && close(self.spacing, other.spacing)
            && self.truncation == other.truncation
    }
}

// ---------------------------------------------------------------------------
// SpikeComb
// ---------------------------------------------------------------------------

/// A pure single-photon comb state: sorted `(index, amplitude)` spikes on a
/// refined coordinate lattice, in either basis. Unit norm.
#[derive(Debug, Clone)]
pub struct SpikeComb {
    spec: CombSpec,
    basis: Basis,
    /// Lattice refinement r: the frequency lattice step is ΔΩ/r.
    refinement: u32,
    /// Sorted by index, strictly increasing. In the time basis this list is
    /// dense and covers `-Q ..= Q` contiguously.
    amplitudes: Vec<(i64, Complex64)>,
}

impl SpikeComb {
    /// Builds a frequency-basis comb from explicit spikes.
    ///
    /// Indices must be strictly increasing and lie within the construction
    /// window `|q| ≤ N0 · refinement`; the amplitude list is normalized.
    pub fn new(spec: CombSpec, refinement: u32, amplitudes: Vec<(i64, Complex64)>) -> Result<Self> {
        if refinement == 0 {
            return Err(Error::InvalidParameter("refinement must be ≥ 1".into()));
        }
        let bound = spec.truncation as i64 * refinement as i64;
        for window in amplitudes.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(Error::InvalidParameter(format!(
                    "spike indices must be strictly increasing, got {} then {}",
                    window[0].0, window[1].0
                )));
            }
        }
        if let (Some(first), Some(last)) = (amplitudes.first(), amplitudes.last())
            && (first.0 < -bound || last.0 > bound)
        {
            return Err(Error::InvalidParameter(format!(
                "spike index outside construction window ±{bound}"
            )));
        }
        let mut comb = SpikeComb {
            spec,
            basis: Basis::Frequency,
            refinement,
            amplitudes,
        };
        comb.normalize()?;
        Ok(comb)
    }

    /// Equal-amplitude single-photon comb: teeth m = -N0 ..= N0, each with
    /// amplitude 1/√(2N0+1), on the unrefined lattice.
    pub fn uniform(spec: CombSpec) -> Self {
        let n0 = spec.truncation as i64;
        let amp = Complex64::new(1.0 / (spec.tooth_count() as f64).sqrt(), 0.0);
        let amplitudes = (-n0..=n0).map(|m| (m, amp)).collect();
        SpikeComb {
            spec,
            basis: Basis::Frequency,
            refinement: 1,
            amplitudes,
        }
    }

    /// Internal constructor for operator outputs: skips the construction
    /// window check (displacements may widen support beyond ±N0·r) but keeps
    /// ordering, bound, and normalization guarantees.
    pub(crate) fn from_parts(
        spec: CombSpec,
        basis: Basis,
        refinement: u32,
        amplitudes: Vec<(i64, Complex64)>,
    ) -> Self {
        debug_assert!(amplitudes.windows(2).all(|w| w[0].0 < w[1].0));
        let mut comb = SpikeComb {
            spec,
            basis,
            refinement,
            amplitudes,
        };
        comb.normalize().expect("operator output must have positive norm");
        comb
    }

    pub fn spec(&self) -> &CombSpec {
        &self.spec
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn refinement(&self) -> u32 {
        self.refinement
    }

    /// Sorted `(index, amplitude)` pairs.
    pub fn amplitudes(&self) -> &[(i64, Complex64)] {
        &self.amplitudes
    }

    /// Lattice step in the frequency basis: ΔΩ / refinement (rad/s).
    pub fn lattice_step(&self) -> f64 {
        self.spec.spacing / self.refinement as f64
    }

    /// Sample spacing in the time basis: r·ΔT / L (s), where L is the sample
    /// count of the periodic window.
    pub fn time_step(&self) -> f64 {
        debug_assert_eq!(self.basis, Basis::Time);
        self.refinement as f64 * self.spec.time_period / self.amplitudes.len() as f64
    }

    /// Physical coordinate of lattice site `q`: detuning from the comb
    /// center (rad/s) in the frequency basis, or time (s) in the time basis.
    pub fn coordinate(&self, index: i64) -> f64 {
        match self.basis {
            Basis::Frequency => index as f64 * self.lattice_step(),
            Basis::Time => index as f64 * self.time_step(),
        }
    }

    /// Σ|a|² over all spikes.
    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|(_, a)| a.norm_sqr()).sum()
    }

    fn normalize(&mut self) -> Result<()> {
        let n = self.norm_sq();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "comb must have positive finite norm, got norm² = {n}"
            )));
        }
        let scale = 1.0 / n.sqrt();
        for (_, a) in &mut self.amplitudes {
            *a *= scale;
        }
        Ok(())
    }

    /// Count of teeth currently sitting beyond the nominal construction
    /// window ±N0·r. Displacements keep such teeth rather than dropping
    /// them; this reports how many there are.
    pub fn teeth_beyond_window(&self) -> usize {
        let bound = self.spec.truncation as i64 * self.refinement as i64;
        self.amplitudes
            .iter()
            .filter(|(q, _)| *q < -bound || *q > bound)
            .count()
    }

    /// Re-expresses the comb on a lattice `factor` times finer. Physical
    /// content is unchanged: index q becomes q·factor.
    pub fn refine(&self, factor: u32) -> Result<SpikeComb> {
        if factor == 0 {
            return Err(Error::InvalidParameter("refinement factor must be ≥ 1".into()));
        }
        if factor == 1 {
            return Ok(self.clone());
        }
        if self.basis != Basis::Frequency {
            return Err(Error::GridMismatch(
                "refinement applies to frequency-basis combs".into(),
            ));
        }
        let new_refinement = self.refinement.checked_mul(factor).ok_or(Error::LatticeOverflow {
            index: self.refinement as i64,
            bound: u32::MAX as i64,
        })?;
        let f = factor as i64;
        let amplitudes = self
            .amplitudes
            .iter()
            .map(|(q, a)| {
                q.checked_mul(f)
                    .filter(|nq| nq.abs() <= MAX_LATTICE_INDEX)
                    .map(|nq| (nq, *a))
                    .ok_or(Error::LatticeOverflow {
                        index: *q,
                        bound: MAX_LATTICE_INDEX,
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SpikeComb {
            spec: self.spec,
            basis: self.basis,
            refinement: new_refinement,
            amplitudes,
        })
    }

    /// Inner product ⟨self|other⟩.
    ///
    /// Frequency combs are aligned onto the least common refinement first;
    /// spikes at distinct lattice sites are orthogonal. Time-basis combs
    /// must share the same periodic window (refinement and sample count).
    pub fn overlap(&self, other: &SpikeComb) -> Result<Complex64> {
        if self.basis != other.basis {
            return Err(Error::GridMismatch(
                "cannot overlap combs in different bases".into(),
            ));
        }
        if !self.spec.same_grid(&other.spec, 1e-12) {
            return Err(Error::GridMismatch(
                "cannot overlap combs with different center or spacing".into(),
            ));
        }
        match self.basis {
            Basis::Frequency => {
                let l = lcm_u32(self.refinement, other.refinement)?;
                let a = self.refine(l / self.refinement)?;
                let b = other.refine(l / other.refinement)?;
                Ok(sparse_dot(&a.amplitudes, &b.amplitudes))
            }
            Basis::Time => {
                if self.refinement != other.refinement || self.amplitudes.len() != other.amplitudes.len() {
                    return Err(Error::GridMismatch(
                        "time-basis combs must share the same periodic window".into(),
                    ));
                }
                Ok(sparse_dot(&self.amplitudes, &other.amplitudes))
            }
        }
    }

    /// True when the two combs describe the same physical state up to a
    /// global phase: |⟨self|other⟩| ≥ 1 - tol (both are unit norm).
    pub fn equal_up_to_phase(&self, other: &SpikeComb, tol: f64) -> Result<bool> {
        Ok(self.overlap(other)?.norm() >= 1.0 - tol)
    }

    // -- basis transforms ---------------------------------------------------

    /// Frequency → time transform.
    ///
    /// The spike list is treated as one period of a frequency lattice with
    /// step ΔΩ/r; the temporal envelope is then periodic with window r·ΔT.
    /// Sampling that window at L = 2Q+1 points (Q covering every spike)
    /// gives the unitary centered discrete Fourier transform
    ///
    /// ```text
    /// b_u = (1/√L) Σ_q a_q e^{+2πi q u / L},   t_u = u · r·ΔT/L.
    /// ```
    ///
    /// The transform is exactly unitary, so a round trip through
    /// [`SpikeComb::to_frequency_basis`] reproduces the input to machine
    /// precision. For an equal-amplitude unrefined comb all temporal weight
    /// lands on t = 0 — the periodic extension of the lattice {m·ΔT}.
    pub fn to_time_basis(&self) -> Result<SpikeComb> {
        if self.basis != Basis::Frequency {
            return Err(Error::GridMismatch("comb is already in the time basis".into()));
        }
        let max_abs = self
            .amplitudes
            .iter()
            .map(|(q, _)| q.abs())
            .max()
            .unwrap_or(0);
        let q_half = max_abs
            .max(self.spec.truncation as i64 * self.refinement as i64)
            .max(self.refinement as i64);
        let l = 2 * q_half + 1;
        if l > 1 << 22 {
            return Err(Error::LatticeOverflow {
                index: q_half,
                bound: (1 << 21) as i64,
            });
        }
        let amplitudes = centered_dft(&self.amplitudes, l, 1.0);
        Ok(SpikeComb::from_parts(self.spec, Basis::Time, self.refinement, amplitudes))
    }

    /// Time → frequency transform: the inverse of [`SpikeComb::to_time_basis`]
    /// on the same periodic window, `a_q = (1/√L) Σ_u b_u e^{-2πi q u / L}`.
    pub fn to_frequency_basis(&self) -> Result<SpikeComb> {
        if self.basis != Basis::Time {
            return Err(Error::GridMismatch("comb is already in the frequency basis".into()));
        }
        let l = self.amplitudes.len() as i64;
        let amplitudes = centered_dft(&self.amplitudes, l, -1.0);
        Ok(SpikeComb::from_parts(
            self.spec,
            Basis::Frequency,
            self.refinement,
            amplitudes,
        ))
    }

    /// Multiplies each spike amplitude in place by `phase(index)`.
    pub(crate) fn apply_phase(&mut self, phase: impl Fn(i64) -> Complex64) {
        for (q, a) in &mut self.amplitudes {
            *a *= phase(*q);
        }
    }

    /// Translates every spike index by `steps`, widening the occupied window.
    pub(crate) fn translate_indices(&mut self, steps: i64) -> Result<()> {
        for (q, _) in &mut self.amplitudes {
            let nq = q.checked_add(steps).ok_or(Error::LatticeOverflow {
                index: *q,
                bound: MAX_LATTICE_INDEX,
            })?;
            if nq.abs() > MAX_LATTICE_INDEX {
                return Err(Error::LatticeOverflow {
                    index: nq,
                    bound: MAX_LATTICE_INDEX,
                });
            }
            *q = nq;
        }
        Ok(())
    }

    /// Cyclically rotates the time-basis sample window by `steps` grid
    /// cells (translation of a periodic signal).
    pub(crate) fn rotate_time_samples(&mut self, steps: i64) {
        debug_assert_eq!(self.basis, Basis::Time);
        let l = self.amplitudes.len() as i64;
        let q_half = (l - 1) / 2;
        let mut rotated = vec![Complex64::new(0.0, 0.0); l as usize];
        for (u, a) in &self.amplitudes {
            let nu = (u + steps + q_half).rem_euclid(l); // position in 0..L
            rotated[nu as usize] = *a;
        }
        for (slot, (u, a)) in self.amplitudes.iter_mut().enumerate() {
            *u = slot as i64 - q_half;
            *a = rotated[slot];
        }
    }
}

/// Unitary centered DFT of a sparse spike list over a window of L sites.
/// `sign` = +1 maps frequency → time, -1 maps time → frequency.
fn centered_dft(amplitudes: &[(i64, Complex64)], l: i64, sign: f64) -> Vec<(i64, Complex64)> {
    let q_half = (l - 1) / 2;
    let scale = 1.0 / (l as f64).sqrt();
    let mut out = Vec::with_capacity(l as usize);
    for u in -q_half..=q_half {
        let mut acc = Complex64::new(0.0, 0.0);
        for (q, a) in amplitudes {
            // Reduce q·u modulo L before forming the angle so large index
            // products cost no precision.
            let phase_steps = ((*q as i128 * u as i128).rem_euclid(l as i128)) as f64;
            let angle = sign * TAU * phase_steps / l as f64;
            acc += a * Complex64::from_polar(1.0, angle);
        }
        out.push((u, scale * acc));
    }
    out
}

/// Dot product Σ conj(a_q)·b_q over matching indices of two sorted lists.
fn sparse_dot(a: &[(i64, Complex64)], b: &[(i64, Complex64)]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += a[i].1.conj() * b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm_u32(a: u32, b: u32) -> Result<u32> {
    (a / gcd_u32(a, b)).checked_mul(b).ok_or(Error::LatticeOverflow {
        index: a as i64,
        bound: u32::MAX as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec_20ghz(n0: u32) -> CombSpec {
        // 193.4 THz center (1550 nm band), 20 GHz free spectral range.
        CombSpec::new(193.4e12, 20e9, n0).unwrap()
    }

    #[test]
    fn spec_period_times_spacing_is_tau() {
        let spec = spec_20ghz(32);
        assert_relative_eq!(spec.time_period() * spec.spacing(), TAU, max_relative = 1e-12);
        // 20 GHz free spectral range ⇒ ΔT = 50 ps exactly.
        assert_eq!(spec.time_period(), 50e-12);
    }

    #[test]
    fn spec_rejects_nonpositive_spacing() {
        assert!(CombSpec::new(193.4e12, 0.0, 4).is_err());
        assert!(CombSpec::new(193.4e12, -1.0, 4).is_err());
        assert!(CombSpec::new(f64::NAN, 20e9, 4).is_err());
    }

    #[test]
    fn uniform_comb_is_normalized_with_expected_teeth() {
        let comb = SpikeComb::uniform(spec_20ghz(8));
        assert_eq!(comb.amplitudes().len(), 17);
        assert_relative_eq!(comb.norm_sq(), 1.0, max_relative = 1e-15);
        // Every tooth has amplitude 1/√17.
        let expect = 1.0 / 17f64.sqrt();
        for (_, a) in comb.amplitudes() {
            assert_relative_eq!(a.re, expect, max_relative = 1e-15);
            assert_eq!(a.im, 0.0);
        }
    }

    #[test]
    fn degenerate_comb_has_single_tooth() {
        // N0 = 0 is a valid degenerate comb: one tooth at the center.
        let comb = SpikeComb::uniform(spec_20ghz(0));
        assert_eq!(comb.amplitudes(), &[(0, Complex64::new(1.0, 0.0))]);
    }

    #[test]
    fn construction_rejects_unsorted_and_out_of_window() {
        let spec = spec_20ghz(2);
        let a = Complex64::new(1.0, 0.0);
        assert!(SpikeComb::new(spec, 1, vec![(1, a), (0, a)]).is_err());
        assert!(SpikeComb::new(spec, 1, vec![(0, a), (3, a)]).is_err());
        assert!(SpikeComb::new(spec, 1, vec![]).is_err()); // zero norm
    }

    #[test]
    fn overlap_of_identical_combs_is_one() {
        let comb = SpikeComb::uniform(spec_20ghz(16));
        let ov = comb.overlap(&comb).unwrap();
        assert_relative_eq!(ov.re, 1.0, max_relative = 1e-14);
        assert!(ov.im.abs() < 1e-15);
    }

    #[test]
    fn equality_up_to_global_phase() {
        let comb = SpikeComb::uniform(spec_20ghz(8));
        let mut rotated = comb.clone();
        rotated.apply_phase(|_| Complex64::from_polar(1.0, 0.731));
        assert!(comb.equal_up_to_phase(&rotated, 1e-12).unwrap());
        // A phase ramp is not a global phase.
        let mut ramped = comb.clone();
        ramped.apply_phase(|q| Complex64::from_polar(1.0, 0.2 * q as f64));
        assert!(!comb.equal_up_to_phase(&ramped, 1e-3).unwrap());
    }

    #[test]
    fn refinement_preserves_state() {
        let comb = SpikeComb::uniform(spec_20ghz(4));
        let fine = comb.refine(6).unwrap();
        assert_eq!(fine.refinement(), 6);
        // Same physical coordinates: index 6q at step ΔΩ/6 equals q·ΔΩ.
        assert_relative_eq!(fine.coordinate(6), comb.coordinate(1), max_relative = 1e-15);
        let ov = comb.overlap(&fine).unwrap();
        assert_relative_eq!(ov.norm(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn round_trip_through_time_basis_is_identity() {
        for n0 in [1u32, 8, 33, 64] {
            let comb = SpikeComb::uniform(spec_20ghz(n0));
            let back = comb.to_time_basis().unwrap().to_frequency_basis().unwrap();
            let ov = comb.overlap(&back).unwrap().norm();
            assert!(ov >= 1.0 - 1e-9, "N0 = {n0}: round-trip overlap {ov}");
        }
    }

    #[test]
    fn round_trip_survives_nonuniform_amplitudes_and_refinement() {
        let spec = spec_20ghz(12);
        let teeth: Vec<(i64, Complex64)> = (-12..=12)
            .map(|m| {
                let a = Complex64::from_polar(1.0 / (1.0 + (m as f64 / 5.0).powi(2)), 0.17 * m as f64);
                (3 * m, a) // refinement-3 lattice, teeth still ΔΩ apart
            })
            .collect();
        let comb = SpikeComb::new(spec, 3, teeth).unwrap();
        let back = comb.to_time_basis().unwrap().to_frequency_basis().unwrap();
        assert!(comb.overlap(&back).unwrap().norm() >= 1.0 - 1e-9);
    }

    #[test]
    fn uniform_comb_concentrates_on_time_lattice() {
        // Equal teeth with no phase ramp: all temporal weight at t = 0,
        // i.e. ≥ 95% of the norm on the {m·ΔT} lattice (here exactly 100%).
        let time = SpikeComb::uniform(spec_20ghz(8)).to_time_basis().unwrap();
        let on_lattice: f64 = time
            .amplitudes()
            .iter()
            .filter(|(u, _)| *u == 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        assert!(on_lattice >= 0.95, "on-lattice weight {on_lattice}");
        assert_relative_eq!(on_lattice, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn single_tooth_gives_flat_temporal_distribution() {
        // N0 = 0: a single spectral line ⇒ every time sample has the same
        // modulus (the transform of a delta is flat).
        let time = SpikeComb::uniform(spec_20ghz(0)).to_time_basis().unwrap();
        assert!(time.amplitudes().len() >= 3);
        let first = time.amplitudes()[0].1.norm();
        for (_, a) in time.amplitudes() {
            assert_relative_eq!(a.norm(), first, max_relative = 1e-12);
        }
    }

    #[test]
    fn phase_ramp_translates_temporal_comb() {
        // d = L case: teeth at m with phases e^{-2πi m j / d} over a window
        // of L = 2N0+1 = d sites translate the time samples by exactly
        // j·(ΔT/d) — j grid cells. Checked against a manual cyclic shift.
        let n0 = 6u32;
        let d = (2 * n0 + 1) as i64; // 13
        let j = 5i64;
        let comb = SpikeComb::uniform(spec_20ghz(n0));
        let mut ramped = comb.clone();
        ramped.apply_phase(|m| Complex64::from_polar(1.0, -TAU * (m * j) as f64 / d as f64));

        let translated_via_ramp = ramped.to_time_basis().unwrap();
        let mut translated_directly = comb.to_time_basis().unwrap();
        translated_directly.rotate_time_samples(j);

        let ov = translated_via_ramp.overlap(&translated_directly).unwrap().norm();
        assert!(ov >= 1.0 - 1e-9, "duality overlap {ov}");
    }

    #[test]
    fn overlap_rejects_mismatched_grids() {
        let a = SpikeComb::uniform(spec_20ghz(4));
        let b = SpikeComb::uniform(CombSpec::new(193.4e12, 25e9, 4).unwrap());
        assert!(a.overlap(&b).is_err());
        let t = a.to_time_basis().unwrap();
        assert!(a.overlap(&t).is_err());
    }

    #[test]
    fn teeth_beyond_window_counts_displaced_support() {
        let comb = SpikeComb::uniform(spec_20ghz(3));
        assert_eq!(comb.teeth_beyond_window(), 0);
        let mut shifted = comb.clone();
        shifted.translate_indices(2).unwrap();
        assert_eq!(shifted.teeth_beyond_window(), 2); // teeth now at -1..=5
    }
}
