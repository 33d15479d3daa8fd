//! Frequency/time displacement operators on spike combs.
//!
//! The two generators of the comb's translation algebra are
//!
//! - `D_f(Δω)`: rigid shift of every spectral line by Δω, and
//! - `D_t(Δt)`: temporal translation, i.e. the phase `e^{-i ω Δt}` on the
//!   line at ω (tracked relative to the comb center, whose carrier phase is
//!   global and dropped).
//!
//! They commute only up to the phase `D_f D_t = e^{i Δω Δt} D_t D_f`, which
//! is what makes the pair usable as conjugate qudit shift/clock operators on
//! a grid state. [`commutator_phase`] measures that phase directly on a test
//! comb.
//!
//! Frequency shifts must land on the comb's index lattice; shifts on a
//! sub-tooth fraction ΔΩ/n are handled exactly by refining the lattice to
//! the least commensurate step, so encoding shifts (ΔΩ/n) and logical shifts
//! (ΔΩ/d) coexist on a step of ΔΩ/lcm(d·n-structure) without rounding.

use num_complex::Complex64;

use crate::comb::{Basis, CombSpec, SpikeComb};
use crate::error::{Error, Result};

/// Largest lattice refinement [`apply_displacement`] will introduce to make
/// a frequency shift commensurate with the tooth spacing.
pub const MAX_AUTO_REFINEMENT: u32 = 1 << 16;

/// Absolute tolerance, in lattice steps, for deciding that a shift is an
/// integer number of steps.
const LATTICE_TOL: f64 = 1e-9;

/// Proportional slack covering float round-off on large step counts. Must
/// stay far below ≈1/(2.4·r²) — the relative error of the best rational
/// approximation with denominator r ≤ [`MAX_AUTO_REFINEMENT`] — or an
/// irrational shift multiple would be accepted through one of its
/// continued-fraction convergents instead of reporting
/// [`Error::OffLatticeShift`].
const LATTICE_FLOAT_SLACK: f64 = 1e-13;

/// Integer-closeness test shared by the lattice-commensuration paths.
fn near_integer(steps: f64, rounded: f64) -> bool {
    (steps - rounded).abs() <= LATTICE_TOL.max(LATTICE_FLOAT_SLACK * steps.abs())
}

/// Which conjugate coordinate a displacement moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DisplacementKind {
    Frequency,
    Time,
}

/// A single displacement: a frequency shift (rad/s) or a time shift (s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Displacement {
    kind: DisplacementKind,
    amount: f64,
}

impl Displacement {
    /// Frequency displacement by `amount` rad/s.
    pub fn frequency(amount_rad_per_s: f64) -> Self {
        Displacement {
            kind: DisplacementKind::Frequency,
            amount: amount_rad_per_s,
        }
    }

    /// Time displacement by `amount` seconds.
    pub fn time(amount_s: f64) -> Self {
        Displacement {
            kind: DisplacementKind::Time,
            amount: amount_s,
        }
    }

    pub fn kind(&self) -> DisplacementKind {
        self.kind
    }

    /// Shift magnitude: rad/s for frequency, seconds for time.
    pub fn amount(&self) -> f64 {
        self.amount
    }

    /// Composes two displacements of the same kind; amounts add exactly.
    pub fn compose(&self, other: &Displacement) -> Result<Displacement> {
        if self.kind != other.kind {
            return Err(Error::InvalidParameter(
                "cannot compose displacements of different kinds".into(),
            ));
        }
        Ok(Displacement {
            kind: self.kind,
            amount: self.amount + other.amount,
        })
    }

    /// The displacement repeated `n` times.
    pub fn repeated(&self, n: u32) -> Displacement {
        Displacement {
            kind: self.kind,
            amount: self.amount * n as f64,
        }
    }
}

/// Applies a displacement to a comb, in whichever basis the comb lives.
///
/// | kind      | frequency basis                          | time basis                       |
/// |-----------|------------------------------------------|----------------------------------|
/// | frequency | integer lattice translation (auto-refine)| phase `e^{+i Δω t_u}` per sample |
/// | time      | phase `e^{-i (qδ) Δt}` per tooth         | cyclic window rotation / exact   |
///
/// Frequency shifts that are not commensurate with any lattice step up to
/// [`MAX_AUTO_REFINEMENT`] report [`Error::OffLatticeShift`]; shifts whose
/// target indices leave the representable range report
/// [`Error::LatticeOverflow`]. Time displacements are exact phase
/// multiplications on the discrete spectrum and never move teeth off grid.
/// In the time basis a time shift by an integer number of sample cells is a
/// cyclic rotation of the periodic window; any other amount is carried out
/// exactly in the conjugate basis (transform, phase, transform back).
pub fn apply_displacement(comb: &SpikeComb, displacement: &Displacement) -> Result<SpikeComb> {
    match (displacement.kind, comb.basis()) {
        (DisplacementKind::Frequency, Basis::Frequency) => {
            let (mut shifted, steps) = commensurate(comb, displacement.amount)?;
            shifted.translate_indices(steps)?;
            Ok(shifted)
        }
        (DisplacementKind::Frequency, Basis::Time) => {
            let dt = comb.time_step();
            let dw = displacement.amount;
            let mut out = comb.clone();
            out.apply_phase(|u| Complex64::from_polar(1.0, dw * (u as f64 * dt)));
            Ok(out)
        }
        (DisplacementKind::Time, Basis::Frequency) => {
            // e^{-i ω_q Δt} with ω_q measured from the comb center; the
            // common carrier phase e^{-i ω₀ Δt} is global and dropped.
            let step = comb.lattice_step();
            let dt = displacement.amount;
            let mut out = comb.clone();
            out.apply_phase(|q| Complex64::from_polar(1.0, -(q as f64 * step) * dt));
            Ok(out)
        }
        (DisplacementKind::Time, Basis::Time) => {
            let cell = comb.time_step();
            let steps = displacement.amount / cell;
            let rounded = steps.round();
            if near_integer(steps, rounded) && rounded.abs() < 1e15 {
                let mut out = comb.clone();
                out.rotate_time_samples(rounded as i64);
                Ok(out)
            } else {
                // Off-grid temporal shift: exact via the frequency basis.
                let shifted = apply_displacement(&comb.to_frequency_basis()?, displacement)?;
                shifted.to_time_basis()
            }
        }
    }
}

/// Measures the relative phase between `D_f D_t |ψ⟩` and `D_t D_f |ψ⟩` on a
/// built-in test comb: returns `⟨D_t D_f ψ | D_f D_t ψ⟩`, which for unit
/// vectors differing only by a phase is exactly that phase. The expected
/// value is `e^{i Δω Δt}`.
pub fn commutator_phase(frequency: &Displacement, time: &Displacement) -> Result<Complex64> {
    if frequency.kind() != DisplacementKind::Frequency || time.kind() != DisplacementKind::Time {
        return Err(Error::InvalidParameter(
            "commutator_phase takes one frequency and one time displacement".into(),
        ));
    }
    let spec = CombSpec::new(193.4e12, 20e9, 8)?;
    let comb = SpikeComb::uniform(spec);
    let t_after_f = apply_displacement(&apply_displacement(&comb, frequency)?, time)?; // D_t D_f ψ
    let f_after_t = apply_displacement(&apply_displacement(&comb, time)?, frequency)?; // D_f D_t ψ
    t_after_f.overlap(&f_after_t)
}

/// Expresses `amount` rad/s as an integer number of lattice steps, refining
/// the comb as needed. Returns the (possibly refined) comb and the step count.
fn commensurate(comb: &SpikeComb, amount: f64) -> Result<(SpikeComb, i64)> {
    let base_step = comb.lattice_step();
    let ratio = amount / base_step; // steps on the current lattice
    for factor in 1..=MAX_AUTO_REFINEMENT {
        let steps = ratio * factor as f64;
        let rounded = steps.round();
        if near_integer(steps, rounded) {
            if rounded.abs() > crate::comb::MAX_LATTICE_INDEX as f64 {
                return Err(Error::LatticeOverflow {
                    index: rounded as i64,
                    bound: crate::comb::MAX_LATTICE_INDEX,
                });
            }
            let refined = comb.refine(factor)?;
            return Ok((refined, rounded as i64));
        }
    }
    Err(Error::OffLatticeShift {
        amount_rad_per_s: amount,
        lattice_step_rad_per_s: base_step,
        max_refinement: MAX_AUTO_REFINEMENT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn test_comb(n0: u32) -> SpikeComb {
        SpikeComb::uniform(CombSpec::new(193.4e12, 20e9, n0).unwrap())
    }

    #[test]
    fn composition_adds_amounts_exactly() {
        let a = Displacement::frequency(1.25e10);
        let b = Displacement::frequency(3.5e9);
        assert_eq!(a.compose(&b).unwrap().amount(), 1.25e10 + 3.5e9);
        assert!(a.compose(&Displacement::time(1e-12)).is_err());
    }

    #[test]
    fn frequency_shift_by_full_tooth_translates_indices() {
        let comb = test_comb(4);
        let shifted = apply_displacement(&comb, &Displacement::frequency(comb.spec().spacing())).unwrap();
        assert_eq!(shifted.refinement(), 1);
        let indices: Vec<i64> = shifted.amplitudes().iter().map(|(q, _)| *q).collect();
        assert_eq!(indices, (-3..=5).collect::<Vec<_>>());
    }

    #[test]
    fn sub_tooth_shift_refines_lattice() {
        let comb = test_comb(4);
        let shift = comb.spec().spacing() / 5.0;
        let shifted = apply_displacement(&comb, &Displacement::frequency(shift)).unwrap();
        assert_eq!(shifted.refinement(), 5);
        // Teeth sit at (m + 1/5)·ΔΩ: lattice indices 5m + 1.
        let indices: Vec<i64> = shifted.amplitudes().iter().map(|(q, _)| *q).collect();
        assert_eq!(indices, (-4..=4).map(|m| 5 * m + 1).collect::<Vec<_>>());
    }

    #[test]
    fn incommensurate_shift_is_rejected() {
        let comb = test_comb(2);
        let shift = comb.spec().spacing() * std::f64::consts::SQRT_2; // irrational multiple
        match apply_displacement(&comb, &Displacement::frequency(shift)) {
            Err(Error::OffLatticeShift { .. }) => {}
            other => panic!("expected OffLatticeShift, got {other:?}"),
        }
    }

    #[test]
    fn gigantic_shift_overflows_lattice() {
        let comb = test_comb(2);
        let shift = comb.spec().spacing() * 3e9; // 3·10⁹ teeth
        match apply_displacement(&comb, &Displacement::frequency(shift)) {
            Err(Error::LatticeOverflow { .. }) => {}
            other => panic!("expected LatticeOverflow, got {other:?}"),
        }
    }

    #[test]
    fn time_displacement_by_full_period_is_identity() {
        let comb = test_comb(16);
        let dt = comb.spec().time_period();
        let shifted = apply_displacement(&comb, &Displacement::time(dt)).unwrap();
        // e^{-i q ΔΩ ΔT} = e^{-2πi q} = 1 for every tooth.
        assert!(comb.equal_up_to_phase(&shifted, 1e-12).unwrap());
    }

    #[test]
    fn group_action_composition_equals_added_amounts() {
        let comb = test_comb(8);
        let d1 = Displacement::frequency(comb.spec().spacing() / 3.0);
        let d2 = Displacement::frequency(comb.spec().spacing() / 4.0);
        let two_step = apply_displacement(&apply_displacement(&comb, &d1).unwrap(), &d2).unwrap();
        let one_step = apply_displacement(&comb, &d1.compose(&d2).unwrap()).unwrap();
        let ov = two_step.overlap(&one_step).unwrap().norm();
        assert!(ov >= 1.0 - 1e-12, "group action overlap {ov}");

        let t1 = Displacement::time(7.3e-12);
        let t2 = Displacement::time(-2.1e-12);
        let two_step = apply_displacement(&apply_displacement(&comb, &t1).unwrap(), &t2).unwrap();
        let one_step = apply_displacement(&comb, &t1.compose(&t2).unwrap()).unwrap();
        assert!(two_step.overlap(&one_step).unwrap().norm() >= 1.0 - 1e-12);
    }

    #[test]
    fn displacements_are_unitary() {
        let comb = test_comb(8);
        for d in [
            Displacement::frequency(comb.spec().spacing() / 7.0),
            Displacement::time(3.9e-12),
        ] {
            let out = apply_displacement(&comb, &d).unwrap();
            assert_relative_eq!(out.norm_sq(), 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn commutator_phase_matches_exponent() {
        // Δω = ΔΩ/4, Δt = ΔT/3 ⇒ Δω·Δt = 2π/12 ⇒ phase e^{iπ/6}.
        let spec = CombSpec::new(193.4e12, 20e9, 8).unwrap();
        let df = Displacement::frequency(spec.spacing() / 4.0);
        let dt = Displacement::time(spec.time_period() / 3.0);
        let phase = commutator_phase(&df, &dt).unwrap();
        let expect = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
        assert!((phase - expect).norm() <= 1e-10, "phase {phase} vs {expect}");
    }

    #[test]
    fn commutator_phase_random_pairs() {
        let spec = CombSpec::new(193.4e12, 20e9, 8).unwrap();
        for (p, q, f) in [(1i64, 2u32, 0.37), (3, 8, 1.91), (-5, 12, -0.62)] {
            let dw = p as f64 * spec.spacing() / q as f64;
            let dt = f * spec.time_period();
            let phase = commutator_phase(&Displacement::frequency(dw), &Displacement::time(dt)).unwrap();
            let expect = Complex64::from_polar(1.0, dw * dt);
            assert!((phase - expect).norm() <= 1e-10);
        }
    }

    #[test]
    fn time_shift_in_time_basis_matches_frequency_route() {
        let comb = test_comb(6);
        let dt = 0.37 * comb.spec().time_period(); // off-grid amount
        let d = Displacement::time(dt);
        let via_time = apply_displacement(&comb.to_time_basis().unwrap(), &d).unwrap();
        let via_freq = apply_displacement(&comb, &d).unwrap().to_time_basis().unwrap();
        assert!(via_time.overlap(&via_freq).unwrap().norm() >= 1.0 - 1e-9);
    }
}
