//! Logical qudit carved out of a comb grid state.
//!
//! A comb state with tooth spacing ΔΩ supports a d-level logical system in
//! the style of a grid (GKP) encoding:
//!
//! - the shift operator `X = D_f(ΔΩ/d)` moves the whole comb by one
//!   sub-tooth step, taking the logical basis state |j̄⟩ to |j̄+1 mod d⟩
//!   (up to edge-of-truncation loss), and
//! - the clock operator `Z = D_t(ΔT)` multiplies tooth q (lattice step
//!   ΔΩ/d) by `e^{-2πi q/d}`, so |j̄⟩ — whose teeth sit at indices
//!   q ≡ j (mod d) — is an eigenstate with eigenvalue `(e^{-2πi/d})^j`.
//!
//! Together they satisfy the qudit Weyl relation `Z X = e^{-2πi/d} X Z`.
//! On a truncated comb `X^d` equals the identity only up to the two edge
//! teeth that translate past the truncation window, hence the documented
//! overlap bound `≥ 1 - 2/(2N0+1)`; `Z^d` is the identity to machine
//! precision.

use crate::comb::SpikeComb;
use crate::displacement::{apply_displacement, Displacement};
use crate::error::{Error, Result};

/// A base comb together with the logical dimension d it is split into.
#[derive(Debug, Clone)]
pub struct LogicalQudit {
    dimension: u32,
    base: SpikeComb,
}

impl LogicalQudit {
    /// Wraps a frequency-basis comb as a d-level logical system. The base
    /// comb plays the role of |0̄⟩.
    pub fn new(dimension: u32, base: SpikeComb) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::InvalidParameter(format!(
                "logical dimension must be ≥ 2, got {dimension}"
            )));
        }
        if base.basis() != crate::comb::Basis::Frequency {
            return Err(Error::GridMismatch(
                "logical qudit base comb must be in the frequency basis".into(),
            ));
        }
        Ok(LogicalQudit { dimension, base })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn base(&self) -> &SpikeComb {
        &self.base
    }

    /// The logical shift generator `X = D_f(ΔΩ/d)`.
    pub fn x(&self) -> Displacement {
        Displacement::frequency(self.base.spec().spacing() / self.dimension as f64)
    }

    /// The logical clock generator `Z = D_t(2π/ΔΩ) = D_t(ΔT)`.
    pub fn z(&self) -> Displacement {
        Displacement::time(self.base.spec().time_period())
    }

    /// Logical basis state `|j̄⟩ = X^j |0̄⟩`: the base comb displaced by
    /// j·ΔΩ/d, its teeth at detunings `(m + j/d)·ΔΩ`.
    pub fn basis_state(&self, j: u32) -> Result<SpikeComb> {
        if j >= self.dimension {
            return Err(Error::InvalidParameter(format!(
                "basis index {j} outside 0..{}",
                self.dimension
            )));
        }
        if j == 0 {
            return self.base.refine(self.dimension);
        }
        apply_displacement(&self.base, &self.x().repeated(j))
    }

    /// Applies `X^power` to a state of this qudit.
    pub fn apply_x(&self, state: &SpikeComb, power: u32) -> Result<SpikeComb> {
        apply_displacement(state, &self.x().repeated(power))
    }

    /// Applies `Z^power` to a state of this qudit.
    pub fn apply_z(&self, state: &SpikeComb, power: u32) -> Result<SpikeComb> {
        apply_displacement(state, &self.z().repeated(power))
    }
}
