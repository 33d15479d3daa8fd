//! Command-line front end for the biphoton comb dense-coding toolkit.
//!
//! Each subcommand drives one slice of the core crate: plotting the physical
//! line shapes (`spectra`, `correlation`), computing channel capacities
//! (`sweep`, `capacity`, `compare`), running the seeded Monte Carlo pipeline
//! (`simulate`), and checking the algebraic invariants the whole model rests
//! on (`selftest`). Artifacts are CSV (canonical) plus small static SVG
//! companions, written under `--out`.

mod svg;

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use bfc_core::{
    apply_fbs, blahut_arimoto, capacity_sweep, commutator_phase, comparison_table,
    comparison_to_csv, comparison_to_text, encode, inverse_fbs, log_spaced_grid,
    monte_carlo_channel, physical_spectrum, physical_temporal_correlation, raw_symbol_count,
    symmetric_capacity, sweep_to_csv, total_capacity, BiphotonCombState, BoundaryModel,
    ChannelSpec, CombSpec, Displacement, Domain, EncodingParams, EnvelopeSpec, LogicalQudit,
    Message, NoiseModel, Photon, Preset, SampleGrid, SpikeComb, TransitionMatrix,
    DEFAULT_TRUNCATION,
};

/// Monte Carlo alphabet for `simulate`: 6 frequency symbols in half-tooth
/// steps (c = 6, n = 2) and 4 time symbols per period (d = 4) — small enough
/// for clean per-cell statistics at the default trial count, large enough to
/// exercise both coordinates and the circular decoders.
const SIM_FREQ_SYMBOLS: u32 = 6;
const SIM_SUBTOOTH: u32 = 2;
const SIM_TIME_SYMBOLS: u32 = 4;

/// Point-count bounds for the auto-sized sample grids.
const MIN_GRID_POINTS: usize = 4096;
const MAX_GRID_POINTS: usize = 1 << 21;

#[derive(Parser, Debug)]
#[command(
    name = "bfc",
    version,
    about = "Dense coding over biphoton frequency combs: line shapes, channel capacities, Monte Carlo simulation",
    arg_required_else_help = true
)]
pub struct Cli {
    /// Parameter preset: a built-in name (ppktp, ppln) or a path to a TOML
    /// preset file.
    #[arg(long, global = true, default_value = "ppktp")]
    pub preset: String,

    /// Output directory for CSV/SVG artifacts (created if absent).
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,

    /// Override the preset's RNG seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Monte Carlo trial count for `simulate`.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub trials: u64,

    /// Alphabet-size grid for `sweep`, as `min:max:points` (log-spaced).
    #[arg(long = "n-grid", global = true, default_value = "10:10000:25")]
    pub n_grid: String,

    /// Which artifact formats to write.
    #[arg(long, global = true, value_enum, default_value_t = Format::Both)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Write the single-photon spectral density: comb lines under the
    /// phase-matching envelope.
    Spectra,
    /// Write the two-photon arrival-time correlation: a spike train blurred
    /// by detector jitter.
    Correlation,
    /// Sweep channel capacity over alphabet size for both domains.
    Sweep,
    /// Print asymptotic per-channel capacities, their total, and the
    /// distinguishable-message count.
    Capacity,
    /// Monte Carlo the encode → beamsplitter → measure → decode pipeline and
    /// compare the empirical rate to the analytic capacity.
    Simulate,
    /// Print the scheme-comparison table (bits per photon, analyzer loss).
    Compare,
    /// Run the built-in consistency checks and report pass/fail per check.
    Selftest,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
    Both,
}

impl Format {
    fn wants_csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }

    fn wants_svg(self) -> bool {
        matches!(self, Format::Svg | Format::Both)
    }
}

/// Executes one parsed command line.
pub fn run(cli: &Cli) -> Result<()> {
    let preset = load_preset(&cli.preset, cli.seed)?;
    match cli.command {
        Command::Spectra => cmd_spectra(cli, &preset),
        Command::Correlation => cmd_correlation(cli, &preset),
        Command::Sweep => cmd_sweep(cli, &preset),
        Command::Capacity => cmd_capacity(&preset),
        Command::Simulate => cmd_simulate(cli, &preset),
        Command::Compare => cmd_compare(cli),
        Command::Selftest => cmd_selftest(),
    }
}

/// Resolves `--preset`: a path to a TOML file (anything that ends in `.toml`
/// or names an existing file) or a built-in name. `seed` overrides the
/// preset's RNG seed field if given.
pub fn load_preset(spec: &str, seed: Option<u64>) -> Result<Preset> {
    let path = Path::new(spec);
    let mut preset = if spec.ends_with(".toml") || path.is_file() {
        Preset::from_file(path).with_context(|| format!("loading preset file `{spec}`"))?
    } else {
        Preset::by_name(spec)?
    };
    if let Some(s) = seed {
        preset.noise = preset.noise.with_seed(s);
    }
    Ok(preset)
}

/// Parses `--n-grid min:max:points` into a log-spaced alphabet grid.
pub fn parse_n_grid(text: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [min, max, points] = parts.as_slice() else {
        bail!("--n-grid must be min:max:points (e.g. 10:10000:25), got `{text}`");
    };
    let min: usize = min.trim().parse().with_context(|| format!("--n-grid min `{min}`"))?;
    let max: usize = max.trim().parse().with_context(|| format!("--n-grid max `{max}`"))?;
    let points: usize =
        points.trim().parse().with_context(|| format!("--n-grid points `{points}`"))?;
    if min < 2 {
        bail!("--n-grid min must be at least 2, got {min}");
    }
    if max < min {
        bail!("--n-grid max must be ≥ min, got {min}:{max}");
    }
    if points < 1 {
        bail!("--n-grid points must be at least 1, got {points}");
    }
    Ok(log_spaced_grid(min, max, points))
}

/// Filename-safe version of a preset name.
fn slug(name: &str) -> String {
    name.chars()
        .map(|ch| {
            let ch = ch.to_ascii_lowercase();
            if ch.is_ascii_alphanumeric() || ch == '-' || ch == '_' {
                ch
            } else {
                '_'
            }
        })
        .collect()
}

/// Writes the requested formats of one artifact into `--out` and announces
/// each file on stdout. `svg` is `None` for artifacts with no plot rendering
/// (e.g. transition counts).
fn write_artifacts(cli: &Cli, stem: &str, csv: &str, svg: Option<&str>) -> Result<()> {
    fs::create_dir_all(&cli.out)
        .with_context(|| format!("creating output directory `{}`", cli.out.display()))?;
    if cli.format.wants_csv() {
        let path = cli.out.join(format!("{stem}.csv"));
        fs::write(&path, csv).with_context(|| format!("writing `{}`", path.display()))?;
        println!("wrote {}", path.display());
    }
    if let Some(svg_text) = svg
        && cli.format.wants_svg()
    {
        let path = cli.out.join(format!("{stem}.svg"));
        fs::write(&path, svg_text).with_context(|| format!("writing `{}`", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Power-of-two point count that keeps the grid step at or below `max_step`,
/// clamped to [`MIN_GRID_POINTS`, `MAX_GRID_POINTS`].
fn auto_points(span: f64, max_step: f64) -> usize {
    let needed = (span / max_step).ceil().max(1.0) as usize + 1;
    needed.next_power_of_two().clamp(MIN_GRID_POINTS, MAX_GRID_POINTS)
}

/// Detuning grid for `spectra`: wide enough for the phase-matching main lobe
/// and its first sidelobes (±1.2·2πB_PM), fine enough to resolve the
/// Lorentzian teeth (ten samples per FWHM).
fn auto_spectrum_grid(env: &EnvelopeSpec) -> Result<SampleGrid> {
    let half_width = 1.2 * std::f64::consts::TAU * env.phase_matching_fwhm();
    let max_step = std::f64::consts::TAU * env.lorentzian_fwhm() / 10.0;
    Ok(SampleGrid::new(-half_width, half_width, auto_points(2.0 * half_width, max_step))?)
}

/// Delay grid for `correlation`: ±2.5 comb periods (five spikes), fine
/// enough to resolve the detector jitter, or the intrinsic spike width when
/// jitter is off.
fn auto_correlation_grid(preset: &Preset) -> Result<SampleGrid> {
    let half_width = 2.5 * preset.time_period();
    let max_step = if preset.jitter_fwhm > 0.0 {
        preset.jitter_fwhm / 10.0
    } else {
        preset.envelope_spec()?.envelope_duration() / 8.0
    };
    Ok(SampleGrid::new(-half_width, half_width, auto_points(2.0 * half_width, max_step))?)
}

fn cmd_spectra(cli: &Cli, preset: &Preset) -> Result<()> {
    let env = preset.envelope_spec()?;
    if let Some(warning) = env.resolution_warning() {
        eprintln!("warning: {warning}");
    }
    let grid = auto_spectrum_grid(&env)?;
    let density = physical_spectrum(&env, &grid)?;
    let peaks = density.local_maxima(0.05);
    println!(
        "spectra: preset {}, {} samples over ±{:.1} GHz, {} lines above 5% of peak",
        preset.name,
        grid.points(),
        grid.max() / std::f64::consts::TAU / 1e9,
        peaks.len()
    );
    let plot = svg::line_plot(
        &format!("Spectral density — {}", preset.name),
        "detuning from comb center (rad/s)",
        "density (arb. units)",
        density.samples(),
        false,
    );
    write_artifacts(cli, &format!("spectrum_{}", slug(&preset.name)), &density.to_csv(), Some(&plot))
}

fn cmd_correlation(cli: &Cli, preset: &Preset) -> Result<()> {
    let env = preset.envelope_spec()?;
    let grid = auto_correlation_grid(preset)?;
    let density = physical_temporal_correlation(&env, preset.jitter_fwhm, &grid)?;
    let peaks = density.local_maxima(0.02);
    println!(
        "correlation: preset {}, {} samples over ±{:.0} ps, {} peaks above 2% of maximum",
        preset.name,
        grid.points(),
        grid.max() * 1e12,
        peaks.len()
    );
    let plot = svg::line_plot(
        &format!("Arrival-time correlation — {}", preset.name),
        "relative delay (s)",
        "coincidence density (arb. units)",
        density.samples(),
        false,
    );
    write_artifacts(
        cli,
        &format!("correlation_{}", slug(&preset.name)),
        &density.to_csv(),
        Some(&plot),
    )
}

fn cmd_sweep(cli: &Cli, preset: &Preset) -> Result<()> {
    let grid = parse_n_grid(&cli.n_grid)?;
    for domain in [Domain::Frequency, Domain::Time] {
        let name = match domain {
            Domain::Frequency => "frequency",
            Domain::Time => "time",
        };
        let rows = capacity_sweep(preset, domain, &grid)?;
        let (n_last, bits_last) = *rows.last().expect("grid is non-empty");
        println!("sweep: {name} capacity at N = {n_last} is {bits_last:.4} bits ({} grid points)", rows.len());
        let points: Vec<(f64, f64)> = rows.iter().map(|&(n, b)| (n as f64, b)).collect();
        let plot = svg::line_plot(
            &format!("{name} channel capacity vs alphabet size — {}", preset.name),
            "alphabet size N",
            "capacity (bits)",
            &points,
            true,
        );
        write_artifacts(
            cli,
            &format!("sweep_{}_{name}", slug(&preset.name)),
            &sweep_to_csv(&rows),
            Some(&plot),
        )?;
    }
    Ok(())
}

fn cmd_capacity(preset: &Preset) -> Result<()> {
    let totals = total_capacity(preset)?;
    println!(
        "freq {:.2}, time {:.2}, total {:.2} bits, {} messages",
        totals.frequency_bits, totals.time_bits, totals.total_bits, totals.message_count
    );
    println!(
        "unrounded at N = 10000: freq {:.6}, time {:.6}",
        totals.frequency_bits_raw, totals.time_bits_raw
    );
    println!(
        "at N = 1000: freq {:.6}, time {:.6}",
        totals.frequency_bits_at_1k, totals.time_bits_at_1k
    );
    let raw_f = raw_symbol_count(preset, Domain::Frequency, 0.01)?;
    let raw_t = raw_symbol_count(preset, Domain::Time, 0.01)?;
    println!("raw symbols at 1% error: frequency {raw_f}, time {raw_t}");
    if let (Some(f), Some(t)) = (preset.expected_frequency_bits, preset.expected_time_bits) {
        println!("reference on record: freq {f:.2}, time {t:.2}");
    }
    Ok(())
}

/// The binned Gaussian channel matched to the `simulate` geometry in one
/// domain: symbol spacing ΔΩ/n (frequency) or ΔT/d (time), circular because
/// the decoders reduce modulo the alphabet.
fn sim_channel(preset: &Preset, params: &EncodingParams, domain: Domain) -> Result<ChannelSpec> {
    let spec = match domain {
        Domain::Frequency => ChannelSpec::new(
            params.c as usize,
            preset.free_spectral_range / params.n as f64,
            preset.noise.sigma_f_total(),
            domain,
            BoundaryModel::Circular,
        )?,
        Domain::Time => ChannelSpec::new(
            params.d as usize,
            preset.time_period() / params.d as f64,
            preset.noise.sigma_t_total(),
            domain,
            BoundaryModel::Circular,
        )?,
    };
    Ok(spec)
}

fn cmd_simulate(cli: &Cli, preset: &Preset) -> Result<()> {
    if cli.trials == 0 {
        bail!("--trials must be at least 1, got 0");
    }
    let params = EncodingParams::new(SIM_FREQ_SYMBOLS, SIM_SUBTOOTH, SIM_TIME_SYMBOLS)?;
    let state = BiphotonCombState::uniform(preset.biphoton_spec(DEFAULT_TRUNCATION)?);
    let counts = monte_carlo_channel(&state, &params, &preset.noise, cli.trials)?;
    let empirical = counts.mutual_information_bits();
    let freq_cap =
        symmetric_capacity(&TransitionMatrix::from_channel(&sim_channel(preset, &params, Domain::Frequency)?))?
            .capacity_bits;
    let time_cap =
        symmetric_capacity(&TransitionMatrix::from_channel(&sim_channel(preset, &params, Domain::Time)?))?
            .capacity_bits;
    println!(
        "simulate: preset {}, {} trials, alphabet {}×{} (frequency × time), seed {}",
        preset.name,
        cli.trials,
        params.c,
        params.d,
        preset.noise.rng_seed
    );
    println!("empirical mutual information: {empirical:.4} bits");
    println!(
        "analytic channel capacity:    {:.4} bits (frequency {freq_cap:.4} + time {time_cap:.4})",
        freq_cap + time_cap
    );
    write_artifacts(cli, &format!("transitions_{}", slug(&preset.name)), &counts.to_csv(), None)
}

fn cmd_compare(cli: &Cli) -> Result<()> {
    let rows = comparison_table()?;
    print!("{}", comparison_to_text(&rows));
    write_artifacts(cli, "comparison", &comparison_to_csv(&rows), None)
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

type CheckResult = std::result::Result<(), String>;
type Check = (&'static str, fn() -> CheckResult);

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn s<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

/// The checks behind `bfc selftest`, in print order.
fn selftest_checks() -> Vec<Check> {
    vec![
        ("displacement commutator carries the area phase", check_commutator),
        ("sub-tooth shifts compose to one full tooth", check_x_cycle),
        ("full-period time shifts are the identity", check_z_cycle),
        ("clock and shift obey the qudit Weyl relation", check_weyl),
        ("beamsplitter round trip is the identity", check_fbs_round_trip),
        ("pair comb is period-shift invariant and detuning-orthogonal", check_pair_shift_symmetries),
        ("uniform comb transforms to a single temporal spike", check_dft_concentration),
        ("transition rows match the frozen quadrature constants", check_quadrature_constants),
        ("closed-form capacity matches the iterative solver", check_capacity_cross),
        ("noiseless pipeline decodes every message", check_noiseless_round_trip),
    ]
}

fn cmd_selftest() -> Result<()> {
    let checks = selftest_checks();
    println!("selftest: {} checks", checks.len());
    let mut failures = 0usize;
    for (name, check) in &checks {
        match check() {
            Ok(()) => println!("  PASS  {name}"),
            Err(detail) => {
                failures += 1;
                println!("  FAIL  {name}: {detail}");
            }
        }
    }
    if failures > 0 {
        bail!("selftest: {failures} of {} checks failed", checks.len());
    }
    println!("selftest: all {} checks passed", checks.len());
    Ok(())
}

fn test_comb_spec(truncation: u32) -> std::result::Result<CombSpec, String> {
    CombSpec::new(193.4e12, 20e9, truncation).map_err(s)
}

fn test_pair_state(truncation: u32) -> std::result::Result<BiphotonCombState, String> {
    Ok(BiphotonCombState::uniform(
        CombSpec::new(2.0 * 192.0e12, 20e9, truncation).map_err(s)?,
    ))
}

/// `D_f D_t = e^{iΔωΔt} D_t D_f` for a fifth-of-a-tooth, fifth-of-a-period
/// displacement pair: the phase is e^{i·2π/25}.
fn check_commutator() -> CheckResult {
    let spacing = std::f64::consts::TAU * 20e9; // rad/s
    let period = 1.0 / 20e9; // s
    let phase = commutator_phase(
        &Displacement::frequency(spacing / 5.0),
        &Displacement::time(period / 5.0),
    )
    .map_err(s)?;
    let angle = std::f64::consts::TAU / 25.0;
    ensure(
        (phase.re - angle.cos()).abs() <= 1e-12 && (phase.im - angle.sin()).abs() <= 1e-12,
        || format!("got {phase}, want e^(i·2π/25)"),
    )
}

/// X^d moves the comb by exactly one tooth: the overlap deficit is the one
/// tooth that left the truncation window, 1/(2N₀+1) with N₀ = 32.
fn check_x_cycle() -> CheckResult {
    let qudit = LogicalQudit::new(5, SpikeComb::uniform(test_comb_spec(32)?)).map_err(s)?;
    let cycled = qudit.apply_x(qudit.base(), 5).map_err(s)?;
    let overlap = qudit.base().overlap(&cycled).map_err(s)?.norm();
    let want = 1.0 - 1.0 / 65.0;
    ensure(
        (overlap - want).abs() <= 1e-12 && cycled.teeth_beyond_window() == 1,
        || format!("overlap {overlap}, want {want}; teeth beyond window {}", cycled.teeth_beyond_window()),
    )
}

/// Z^d is a time shift by the full period ΔT — the identity on the comb.
fn check_z_cycle() -> CheckResult {
    let qudit = LogicalQudit::new(6, SpikeComb::uniform(test_comb_spec(16)?)).map_err(s)?;
    let cycled = qudit.apply_z(qudit.base(), 6).map_err(s)?;
    let overlap = qudit.base().overlap(&cycled).map_err(s)?.norm();
    ensure(overlap >= 1.0 - 1e-12, || format!("Z^6 overlap {overlap}"))
}

/// `Z X = e^{-2πi/d} X Z` on a basis state, d = 5.
fn check_weyl() -> CheckResult {
    let qudit = LogicalQudit::new(5, SpikeComb::uniform(test_comb_spec(8)?)).map_err(s)?;
    let state = qudit.basis_state(4).map_err(s)?;
    let zx = qudit.apply_z(&qudit.apply_x(&state, 1).map_err(s)?, 1).map_err(s)?;
    let xz = qudit.apply_x(&qudit.apply_z(&state, 1).map_err(s)?, 1).map_err(s)?;
    let overlap = xz.overlap(&zx).map_err(s)?;
    let angle = -std::f64::consts::TAU / 5.0;
    ensure(
        (overlap.re - angle.cos()).abs() <= 1e-10 && (overlap.im - angle.sin()).abs() <= 1e-10,
        || format!("got {overlap}, want e^(-i·2π/5)"),
    )
}

/// The frequency beamsplitter followed by its inverse restores an encoded
/// state exactly (unitarity on the protocol orbit).
fn check_fbs_round_trip() -> CheckResult {
    let params = EncodingParams::new(3, 2, 4).map_err(s)?;
    let encoded =
        encode(&test_pair_state(8)?, &params, Message { k: 2, j: 1 }).map_err(s)?;
    let round = inverse_fbs(&apply_fbs(&encoded).map_err(s)?).map_err(s)?;
    let overlap = round.overlap(&encoded).map_err(s)?.norm();
    ensure((overlap - 1.0).abs() <= 1e-12, || format!("round-trip overlap {overlap}"))
}

/// Shifting one photon by the full period ΔT leaves the pair state
/// invariant; detuning the H photon off the lattice gives an exactly
/// orthogonal state.
fn check_pair_shift_symmetries() -> CheckResult {
    let state = test_pair_state(8)?;
    let period = state.spec().time_period();
    let spacing = state.spec().spacing();
    let shifted = state.shift_photon_time(Photon::H, period).map_err(s)?;
    let same = state.overlap(&shifted).map_err(s)?;
    let detuned = state.shift_photon_frequency_h(0.37 * spacing).map_err(s)?;
    let cross = state.overlap(&detuned).map_err(s)?.norm();
    ensure(
        (same.re - 1.0).abs() <= 1e-12 && same.im.abs() <= 1e-12 && cross <= 1e-12,
        || format!("period-shift overlap {same}, detuned overlap {cross}"),
    )
}

/// The centered DFT of an equal-amplitude unrefined comb puts all temporal
/// weight at t = 0, and the transform is unitary.
fn check_dft_concentration() -> CheckResult {
    let time_basis = SpikeComb::uniform(test_comb_spec(16)?).to_time_basis().map_err(s)?;
    let at_zero = time_basis
        .amplitudes()
        .iter()
        .find(|(u, _)| *u == 0)
        .map(|(_, a)| a.norm_sqr())
        .unwrap_or(0.0);
    let norm = time_basis.norm_sq();
    ensure(
        at_zero >= 1.0 - 1e-12 && (norm - 1.0).abs() <= 1e-12,
        || format!("weight at t=0 is {at_zero}, norm {norm}"),
    )
}

/// A 4-symbol circular Gaussian channel (Δ = 1, σ = 0.5) against
/// independently computed cumulative-normal constants.
fn check_quadrature_constants() -> CheckResult {
    // Digits kept exactly as the reference computation produced them.
    #[allow(clippy::excessive_precision)]
    const ROW0: [f64; 4] = [
        0.682_689_492_139_645_58,
        0.157_305_642_550_119_03,
        0.002_699_222_760_116_526_4,
        0.157_305_642_550_118_92,
    ];
    const CAPACITY: f64 = 0.761_515_334_410_363_3;
    let spec =
        ChannelSpec::new(4, 1.0, 0.5, Domain::Time, BoundaryModel::Circular).map_err(s)?;
    let tm = TransitionMatrix::from_channel(&spec);
    let row = tm.row(0);
    for (i, (&got, want)) in row.iter().zip(ROW0).enumerate() {
        ensure((got - want).abs() <= 1e-12, || {
            format!("row[0][{i}] = {got:.17}, want {want:.17}")
        })?;
    }
    let capacity = symmetric_capacity(&tm).map_err(s)?.capacity_bits;
    ensure((capacity - CAPACITY).abs() <= 1e-10, || {
        format!("capacity {capacity:.13}, want {CAPACITY:.13}")
    })
}

/// Closed-form circulant capacity agrees with the iterative
/// Blahut–Arimoto solver on a 64-symbol channel.
fn check_capacity_cross() -> CheckResult {
    let spec =
        ChannelSpec::new(64, 1.0, 0.8, Domain::Frequency, BoundaryModel::Circular).map_err(s)?;
    let tm = TransitionMatrix::from_channel(&spec);
    let closed = symmetric_capacity(&tm).map_err(s)?.capacity_bits;
    let iterative = blahut_arimoto(&tm, 1e-9, 20_000);
    ensure(
        iterative.converged && (closed - iterative.capacity_bits).abs() <= 1e-6,
        || {
            format!(
                "closed form {closed:.9}, iterative {:.9} (converged: {})",
                iterative.capacity_bits, iterative.converged
            )
        },
    )
}

/// With all noise off, every message decodes to itself through the full
/// pipeline and the empirical rate is log₂(c·d).
fn check_noiseless_round_trip() -> CheckResult {
    let params = EncodingParams::new(6, 2, 4).map_err(s)?;
    let state = test_pair_state(32)?;
    let trials = 2 * params.message_count();
    let counts =
        monte_carlo_channel(&state, &params, &NoiseModel::noiseless(1), trials).map_err(s)?;
    for msg in params.messages() {
        let diagonal = counts.count(msg, msg);
        ensure(diagonal == 2, || {
            format!("message (k={}, j={}) decoded correctly {diagonal}/2 times", msg.k, msg.j)
        })?;
    }
    let rate = counts.mutual_information_bits();
    let want = (params.message_count() as f64).log2();
    ensure((rate - want).abs() <= 1e-9, || format!("rate {rate}, want {want}"))
}
