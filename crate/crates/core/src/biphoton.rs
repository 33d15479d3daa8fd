//! Two-photon comb states: frequency-anticorrelated tooth pairs.
//!
//! A biphoton comb is the superposition
//!
//! ```text
//! |φ⟩ = Σ_m a_m |ω_p/2 + mΔΩ + s⟩_H ⊗ |ω_p/2 - mΔΩ⟩_V
//! ```
//!
//! of signal/idler tooth pairs symmetric about half the pump frequency
//! ω_p/2, with an optional rigid shift `s` on the horizontally polarized
//! photon (the frequency half of an encoded message). Because the photons
//! are anticorrelated in frequency, the state is *not* an eigenstate of a
//! single-photon frequency shift — any s ≠ 0 makes the shifted state exactly
//! orthogonal to the unshifted one — while a single-photon time shift by the
//! full period ΔT returns the state to itself. Those two facts are what the
//! frequency half of the dense-coding alphabet rides on.
//!
//! After the frequency beamsplitter (see [`crate::protocol::apply_fbs`]) the
//! state factorizes; the separable form is stored here as a fixed H-photon
//! frequency plus a V-photon [`SpikeComb`].

use num_complex::Complex64;

use crate::comb::{CombSpec, SpikeComb};
use crate::error::{Error, Result};

/// Relative tolerance (in units of the tooth spacing) below which two
/// H-photon shifts count as the same shift.
const OFFSET_TOL: f64 = 1e-9;

/// Which photon of the pair an operation addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Photon {
    /// Horizontally polarized photon (carries the encoded frequency shift).
    H,
    /// Vertically polarized photon.
    V,
}

/// Separable (post-beamsplitter) form: H collapsed to one line, V a comb.
#[derive(Debug, Clone)]
pub struct SeparableForm {
    /// H-photon frequency in the beamsplitter's scaled output frame (rad/s):
    /// (ω_p + s)/√2 for an input shift s.
    pub photon_h_frequency: f64,
    /// V-photon comb in the scaled frame: teeth at (2mΔΩ + s)/√2.
    pub photon_v: SpikeComb,
}

/// A biphoton comb state, in entangled-pair or separable form.
///
/// `spec.center_frequency()` holds the pump frequency ω_p; the photon pair
/// of tooth `m` sits at ω_p/2 ± mΔΩ. Exactly one of the two forms is
/// populated: `pairs` before the frequency beamsplitter, `separable` after.
#[derive(Debug, Clone)]
pub struct BiphotonCombState {
    spec: CombSpec,
    pairs: Option<Vec<(i64, Complex64)>>,
    freq_offset_h: f64, // rad/s
    separable: Option<SeparableForm>,
}

impl BiphotonCombState {
    /// The uniform biphoton comb: every pair m = -N0 ..= N0 with equal
    /// amplitude 1/√(2N0+1), no shift.
    pub fn uniform(spec: CombSpec) -> Self {
        let n0 = spec.truncation() as i64;
        let amp = Complex64::new(1.0 / (spec.tooth_count() as f64).sqrt(), 0.0);
        BiphotonCombState {
            spec,
            pairs: Some((-n0..=n0).map(|m| (m, amp)).collect()),
            freq_offset_h: 0.0,
            separable: None,
        }
    }

    /// Builds an entangled-pair state from explicit pair amplitudes.
    pub fn from_pairs(spec: CombSpec, pairs: Vec<(i64, Complex64)>, freq_offset_h: f64) -> Result<Self> {
        let n0 = spec.truncation() as i64;
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidParameter(
                    "pair indices must be strictly increasing".into(),
                ));
            }
        }
        if let (Some(first), Some(last)) = (pairs.first(), pairs.last())
            && (first.0 < -n0 || last.0 > n0)
        {
            return Err(Error::InvalidParameter(format!(
                "pair index outside truncation window ±{n0}"
            )));
        }
        let norm_sq: f64 = pairs.iter().map(|(_, a)| a.norm_sqr()).sum();
        if !(norm_sq.is_finite() && norm_sq > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "biphoton state must have positive finite norm, got norm² = {norm_sq}"
            )));
        }
        let scale = 1.0 / norm_sq.sqrt();
        let pairs = pairs.into_iter().map(|(m, a)| (m, a * scale)).collect();
        Ok(BiphotonCombState {
            spec,
            pairs: Some(pairs),
            freq_offset_h,
            separable: None,
        })
    }

    pub(crate) fn from_separable(spec: CombSpec, freq_offset_h: f64, separable: SeparableForm) -> Self {
        BiphotonCombState {
            spec,
            pairs: None,
            freq_offset_h,
            separable: Some(separable),
        }
    }

    pub fn spec(&self) -> &CombSpec {
        &self.spec
    }

    /// Rigid frequency shift on the H photon (rad/s).
    pub fn freq_offset_h(&self) -> f64 {
        self.freq_offset_h
    }

    /// Entangled-pair amplitudes, absent once the beamsplitter has acted.
    pub fn pairs(&self) -> Option<&[(i64, Complex64)]> {
        self.pairs.as_deref()
    }

    /// Separable form, present only after the beamsplitter.
    pub fn separable(&self) -> Option<&SeparableForm> {
        self.separable.as_ref()
    }

    pub fn is_separable(&self) -> bool {
        self.separable.is_some()
    }

    pub(crate) fn pairs_required(&self) -> Result<&[(i64, Complex64)]> {
        self.pairs.as_deref().ok_or_else(|| {
            Error::WrongForm("operation needs the entangled-pair form (before the beamsplitter)".into())
        })
    }

    pub(crate) fn separable_required(&self) -> Result<&SeparableForm> {
        self.separable.as_ref().ok_or_else(|| {
            Error::WrongForm("operation needs the separable form (after the beamsplitter)".into())
        })
    }

    /// Multiplies pair amplitudes in place by `phase(m)` (entangled form only).
    pub(crate) fn apply_pair_phase(&mut self, phase: impl Fn(i64) -> Complex64) -> Result<()> {
        let pairs = self.pairs.as_mut().ok_or_else(|| {
            Error::WrongForm("phase encoding needs the entangled-pair form".into())
        })?;
        for (m, a) in pairs {
            *a *= phase(*m);
        }
        Ok(())
    }

    pub(crate) fn add_freq_offset_h(&mut self, shift_rad_per_s: f64) {
        self.freq_offset_h += shift_rad_per_s;
    }

    /// Shifts one photon in time by `dt` seconds (entangled form).
    ///
    /// Tooth pair m carries the phase `e^{-i(±mΔΩ)dt}` — the detuning of the
    /// shifted photon relative to its ω_p/2 carrier — with the carrier phase
    /// itself global and dropped. A shift by the full period ΔT multiplies
    /// every pair by `e^{∓2πim} = 1` and is the identity.
    pub fn shift_photon_time(&self, photon: Photon, dt: f64) -> Result<BiphotonCombState> {
        self.pairs_required()?;
        let spacing = self.spec.spacing();
        let sign = match photon {
            Photon::H => -1.0, // detuning +mΔΩ
            Photon::V => 1.0,  // detuning -mΔΩ
        };
        let mut out = self.clone();
        out.apply_pair_phase(|m| Complex64::from_polar(1.0, sign * m as f64 * spacing * dt))?;
        Ok(out)
    }

    /// Shifts the H photon in frequency by `dw` rad/s (entangled form).
    pub fn shift_photon_frequency_h(&self, dw: f64) -> Result<BiphotonCombState> {
        self.pairs_required()?;
        let mut out = self.clone();
        out.add_freq_offset_h(dw);
        Ok(out)
    }

    /// Inner product ⟨self|other⟩ between two states in the same form.
    ///
    /// Entangled pairs with different H shifts involve single-photon kets at
    /// different frequencies and are exactly orthogonal; equal shifts reduce
    /// to the pair-amplitude dot product. Separable states compare the H
    /// line (orthogonal unless equal) times the V-comb overlap.
    pub fn overlap(&self, other: &BiphotonCombState) -> Result<Complex64> {
        if !self.spec.same_grid(&other.spec, 1e-12) {
            return Err(Error::GridMismatch(
                "cannot overlap biphoton states on different grids".into(),
            ));
        }
        let tol = OFFSET_TOL * self.spec.spacing();
        match (&self.pairs, &other.pairs, &self.separable, &other.separable) {
            (Some(a), Some(b), _, _) => {
                if (self.freq_offset_h - other.freq_offset_h).abs() > tol {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                Ok(dot(a, b))
            }
            (_, _, Some(a), Some(b)) => {
                if (a.photon_h_frequency - b.photon_h_frequency).abs() > tol {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                a.photon_v.overlap(&b.photon_v)
            }
            _ => Err(Error::WrongForm(
                "cannot overlap an entangled-pair state with a separable state".into(),
            )),
        }
    }

    /// Relative-delay representation of an entangled-pair state.
    ///
    /// In the conjugate picture the pair superposition becomes a train of
    /// relative-delay spikes at τ = mΔT: pair m contributes its amplitude at
    /// that delay, and the H shift survives as an `e^{-i s t}` dependence on
    /// the absolute detection time that keeps states with different shifts
    /// orthogonal. The fast carrier `e^{-i(ω_p/2)(2t-τ)}` is common to every
    /// spike and tracked only as the tag it is.
    pub fn time_representation(&self) -> Result<TimeRepresentation> {
        let pairs = self.pairs_required()?;
        let dt = self.spec.time_period();
        Ok(TimeRepresentation {
            spec: self.spec,
            freq_offset_h: self.freq_offset_h,
            spikes: pairs.iter().map(|(m, a)| (*m, *m as f64 * dt, *a)).collect(),
        })
    }
}

fn dot(a: &[(i64, Complex64)], b: &[(i64, Complex64)]) -> Complex64 {
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

/// Relative-delay spike train of a biphoton comb: one spike per tooth pair
/// at τ = mΔT, tagged with the H-photon frequency shift.
#[derive(Debug, Clone)]
pub struct TimeRepresentation {
    spec: CombSpec,
    freq_offset_h: f64,
    /// `(pair index m, relative delay τ in seconds, amplitude)`.
    spikes: Vec<(i64, f64, Complex64)>,
}

impl TimeRepresentation {
    pub fn spec(&self) -> &CombSpec {
        &self.spec
    }

    pub fn freq_offset_h(&self) -> f64 {
        self.freq_offset_h
    }

    pub fn spikes(&self) -> &[(i64, f64, Complex64)] {
        &self.spikes
    }

    /// Inner product of two delay representations. States whose H photons
    /// are shifted differently acquire distinct `e^{-i s t}` detection-time
    /// dependences, making them orthogonal for any shift difference.
    pub fn overlap(&self, other: &TimeRepresentation) -> Result<Complex64> {
        if !self.spec.same_grid(&other.spec, 1e-12) {
            return Err(Error::GridMismatch(
                "cannot overlap delay representations on different grids".into(),
            ));
        }
        if (self.freq_offset_h - other.freq_offset_h).abs() > OFFSET_TOL * self.spec.spacing() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let a: Vec<(i64, Complex64)> = self.spikes.iter().map(|(m, _, c)| (*m, *c)).collect();
        let b: Vec<(i64, Complex64)> = other.spikes.iter().map(|(m, _, c)| (*m, *c)).collect();
        Ok(dot(&a, &b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec(n0: u32) -> CombSpec {
        // Pump at twice the 193.4 THz photon center (degenerate pairs).
        CombSpec::new(2.0 * 193.4e12, 20e9, n0).unwrap()
    }

    #[test]
    fn uniform_state_is_normalized() {
        let state = BiphotonCombState::uniform(spec(32));
        let n: f64 = state.pairs().unwrap().iter().map(|(_, a)| a.norm_sqr()).sum();
        assert_relative_eq!(n, 1.0, max_relative = 1e-12);
        assert!(!state.is_separable());
    }

    #[test]
    fn degenerate_truncation_gives_single_delay() {
        let state = BiphotonCombState::uniform(spec(0));
        let rep = state.time_representation().unwrap();
        assert_eq!(rep.spikes().len(), 1);
        assert_eq!(rep.spikes()[0].1, 0.0); // τ = 0 only
    }

    #[test]
    fn time_representation_lands_on_delay_lattice() {
        let state = BiphotonCombState::uniform(spec(8));
        let rep = state.time_representation().unwrap();
        let dt = state.spec().time_period();
        assert_eq!(rep.spikes().len(), 17);
        for (m, tau, _) in rep.spikes() {
            assert_relative_eq!(*tau, *m as f64 * dt, max_relative = 1e-15);
        }
    }

    #[test]
    fn full_period_shift_of_either_photon_is_invariant() {
        let state = BiphotonCombState::uniform(spec(16));
        let dt = state.spec().time_period();
        for photon in [Photon::H, Photon::V] {
            let shifted = state.shift_photon_time(photon, dt).unwrap();
            let ov = state
                .time_representation()
                .unwrap()
                .overlap(&shifted.time_representation().unwrap())
                .unwrap();
            assert!((ov.norm() - 1.0).abs() <= 1e-12, "{photon:?}: |overlap| = {}", ov.norm());
        }
    }

    #[test]
    fn fractional_period_shift_is_not_invariant() {
        let state = BiphotonCombState::uniform(spec(16));
        let dt = state.spec().time_period() / 3.0;
        let shifted = state.shift_photon_time(Photon::V, dt).unwrap();
        let ov = state.overlap(&shifted).unwrap().norm();
        assert!(ov < 0.5, "|overlap| = {ov}");
    }

    #[test]
    fn any_nonzero_frequency_shift_is_orthogonal() {
        // The pair comb is anticorrelated, so no single-photon frequency
        // shift — not even a full tooth ΔΩ — maps it to itself.
        let state = BiphotonCombState::uniform(spec(16));
        let spacing = state.spec().spacing();
        for s in [spacing / 4.0, spacing, 3.0 * spacing] {
            let shifted = state.shift_photon_frequency_h(s).unwrap();
            let ov = state.overlap(&shifted).unwrap().norm();
            assert!(ov <= 1e-12, "s = {s}: |overlap| = {ov}");
            let rep_ov = state
                .time_representation()
                .unwrap()
                .overlap(&shifted.time_representation().unwrap())
                .unwrap()
                .norm();
            assert!(rep_ov <= 1e-12);
        }
    }

    #[test]
    fn time_representation_rejects_separable_states() {
        let state = BiphotonCombState::uniform(spec(4));
        let split = crate::protocol::apply_fbs(&state).unwrap();
        assert!(split.time_representation().is_err());
    }
}
