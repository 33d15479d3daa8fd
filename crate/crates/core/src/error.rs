//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by comb construction, displacement algebra, the encoding
/// pipeline, and channel-capacity routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A constructor was handed parameters that violate a documented invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two combs live on incompatible grids (different spacing, center, basis,
    /// or sample count) and cannot be compared or combined.
    #[error("incompatible comb grids: {0}")]
    GridMismatch(String),

    /// A frequency shift does not land on the comb's index lattice and no
    /// refinement up to the supported maximum makes it commensurate.
    #[error(
        "off-lattice frequency shift: {amount_rad_per_s:.6e} rad/s is not an integer \
         multiple of the lattice step {lattice_step_rad_per_s:.6e} rad/s (max refinement {max_refinement})"
    )]
    OffLatticeShift {
        amount_rad_per_s: f64,
        lattice_step_rad_per_s: f64,
        max_refinement: u32,
    },

    /// A shift would push spike indices beyond the representable index range.
    #[error("lattice overflow: shift moves spike index {index} outside the representable range ±{bound}")]
    LatticeOverflow { index: i64, bound: i64 },

    /// The frequency beamsplitter was applied to a state that is already in
    /// separable (post-beamsplitter) form.
    #[error("frequency beamsplitter already applied: state is in separable form")]
    AlreadySeparable,

    /// An operation that needs the separable (post-beamsplitter) form was
    /// called on an entangled-pair state, or vice versa.
    #[error("state is in the wrong form for this operation: {0}")]
    WrongForm(String),

    /// A message lies outside the alphabet declared by the encoding parameters.
    #[error("message ({k}, {j}) outside alphabet ranges k < {c}, j < {d}")]
    MessageOutOfRange { k: u32, j: u32, c: u32, d: u32 },

    /// A sampling grid is too coarse to resolve the feature it must capture.
    #[error("sampling grid too coarse: step {step:.6e} exceeds the allowed maximum {max_step:.6e} ({what})")]
    GridTooCoarse {
        step: f64,
        max_step: f64,
        what: &'static str,
    },

    /// `symmetric_capacity` was given a matrix that is not circulant.
    #[error("transition matrix is not circulant (row {row} deviates by {deviation:.3e}); use blahut_arimoto instead")]
    NonCirculant { row: usize, deviation: f64 },

    /// A matrix row does not sum to one.
    #[error("row {row} of transition matrix sums to {sum} (must be 1 within {tolerance:.0e})")]
    NotRowStochastic { row: usize, sum: f64, tolerance: f64 },

    /// A preset name did not match any registered parameter set.
    #[error("unknown preset {name:?}; known presets: {known}")]
    UnknownPreset { name: String, known: String },

    /// A configuration file failed to parse or contained invalid values.
    #[error("configuration error: {0}")]
    Config(String),

    /// Filesystem failure while reading configuration or writing results.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenient alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
