//! Simulation and analysis toolkit for dense coding over biphoton
//! frequency combs.
//!
//! A frequency comb that carries one photon (or one photon pair) behaves as
//! a grid state in the time-frequency phase plane: it is simultaneously a
//! lattice of sharp spectral teeth and, conjugately, a train of sharp
//! temporal spikes. Displacing such a state by a fraction of a tooth in
//! frequency and a fraction of a period in time encodes two independent
//! symbols on one photon pair, and a frequency beamsplitter disentangles
//! them into separately measurable photons. This crate models that pipeline
//! end to end, idealized and noisy:
//!
//! * [`comb`] — sparse spike combs, the frequency↔time basis change, and
//!   overlaps; [`displacement`] — frequency/time displacement operators and
//!   their Weyl commutation phase; [`qudit`] — the logical qudit (X as a
//!   sub-tooth frequency shift, Z as a full-period time shift).
//! * [`biphoton`] — frequency-anticorrelated photon-pair combs and their
//!   relative-delay representation.
//! * [`envelope`] — physical line shapes (sinc phase-matching envelope,
//!   Lorentzian teeth, detector jitter) sampled as plottable densities.
//! * [`protocol`] — encode → frequency beamsplitter → noisy measurement →
//!   decode, plus a seeded Monte Carlo channel estimator.
//! * [`channel`] — the wrapped-Gaussian binned channel, closed-form
//!   symmetric capacity, and a Blahut–Arimoto cross-check.
//! * [`sweep`] — capacity versus alphabet size, headline totals and message
//!   counts, raw symbol counts, scheme comparisons.
//! * [`noise`] / [`presets`] — Gaussian noise budgets and the built-in
//!   `ppktp` / `ppln` parameter sets (also loadable from TOML).
//!
//! Conventions: angular frequencies (rad/s) internally with ordinary
//! frequencies (Hz) and seconds at the API boundary; time-basis amplitudes
//! follow ⟨t|ω⟩ = e^{iωt}/√(2π), so a frequency-domain phase ramp
//! e^{−2πimj/d} translates the time comb by (j/d)·ΔT; all capacities and
//! entropies are in bits.

pub mod biphoton;
pub mod channel;
pub mod comb;
pub mod displacement;
pub mod envelope;
pub mod error;
pub mod noise;
pub mod presets;
pub mod protocol;
pub mod qudit;
pub mod sweep;

pub use biphoton::{BiphotonCombState, Photon, SeparableForm, TimeRepresentation};
pub use channel::{
    blahut_arimoto, normal_cdf, symmetric_capacity, BoundaryModel, CapacityMethod,
    CapacityResult, ChannelSpec, Domain, TransitionMatrix,
};
pub use comb::{Basis, CombSpec, SpikeComb};
pub use displacement::{apply_displacement, commutator_phase, Displacement, DisplacementKind};
pub use envelope::{
    physical_spectrum, physical_temporal_correlation, DensityAxis, EnvelopeSpec, SampleGrid,
    SampledDensity,
};
pub use error::{Error, Result};
pub use noise::{linewidth_sigma, NoiseModel};
pub use presets::{known_presets, Preset, DEFAULT_TRUNCATION};
pub use protocol::{
    apply_fbs, decode, encode, inverse_fbs, measure_both, measure_frequency, measure_time,
    monte_carlo_channel, EncodingParams, Message, MeasurementRecord, TransitionCounts,
};
pub use qudit::LogicalQudit;
pub use sweep::{
    capacity_at, capacity_sweep, comparison_table, comparison_to_csv, comparison_to_text,
    default_alphabet_grid, log_spaced_grid, raw_symbol_count, sweep_to_csv, total_capacity,
    ComparisonRow, SchemeKind, TotalCapacity, ASYMPTOTIC_ALPHABET,
};
