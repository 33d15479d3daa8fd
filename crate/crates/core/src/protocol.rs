//! The dense-coding pipeline: encode → frequency beamsplitter → measure →
//! decode, plus a seeded Monte Carlo driver for the whole channel.
//!
//! A message is a pair (k, j): k selects one of c frequency shifts in steps
//! of ΔΩ/n applied to the H photon, j selects one of d temporal shifts in
//! steps of ΔT/d applied as a phase ramp e^{−2πimj/d} across the tooth
//! pairs. The frequency beamsplitter (FBS) maps a photon pair at (ω₁, ω₂)
//! to ((ω₁+ω₂)/√2, (ω₁−ω₂)/√2), disentangling the comb: the sum photon
//! carries k alone, the difference photon is a single-photon comb whose
//! phase ramp carries j. Measurements invert the √2 bookkeeping scale
//! before adding Gaussian noise, so decoding happens on the original ΔΩ/n
//! and ΔT/d lattices.

use num_complex::Complex64;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::biphoton::{BiphotonCombState, SeparableForm};
use crate::comb::{Basis, CombSpec, SpikeComb};
use crate::error::{Error, Result};
use crate::noise::NoiseModel;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// Alphabet geometry of the protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodingParams {
    /// Number of temporal symbols: time shifts are multiples of ΔT/d.
    pub d: u32,
    /// Frequency subdivision: frequency shifts are multiples of ΔΩ/n.
    pub n: u32,
    /// Number of frequency symbols the bandwidth admits.
    pub c: u32,
}

impl EncodingParams {
    pub fn new(c: u32, n: u32, d: u32) -> Result<Self> {
        if c < 1 || n < 1 || d < 1 {
            return Err(Error::InvalidParameter(format!(
                "encoding parameters must all be ≥ 1, got c={c}, n={n}, d={d}"
            )));
        }
        Ok(EncodingParams { d, n, c })
    }

    /// Size of the message alphabet, c·d.
    pub fn message_count(&self) -> u64 {
        self.c as u64 * self.d as u64
    }

    /// Enumerates the alphabet in index order (index = k·d + j).
    pub fn messages(&self) -> impl Iterator<Item = Message> + '_ {
        let d = self.d;
        (0..self.c).flat_map(move |k| (0..d).map(move |j| Message { k, j }))
    }

    /// Flat index of a message, k·d + j.
    pub fn message_index(&self, msg: Message) -> usize {
        msg.k as usize * self.d as usize + msg.j as usize
    }
}

/// One of the c·d transmittable messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Message {
    /// Frequency symbol, 0 ≤ k < c.
    pub k: u32,
    /// Time symbol, 0 ≤ j < d.
    pub j: u32,
}

impl Message {
    pub fn checked(k: u32, j: u32, params: &EncodingParams) -> Result<Self> {
        if k >= params.c || j >= params.d {
            return Err(Error::MessageOutOfRange {
                k,
                j,
                c: params.c,
                d: params.d,
            });
        }
        Ok(Message { k, j })
    }
}

/// Outcome of one noisy measurement round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementRecord {
    /// Noisy H-photon frequency relative to the unshifted reference (Hz),
    /// in the unscaled (pre-beamsplitter) frame.
    pub freq_sample: f64,
    /// Noisy V-photon arrival time (s), rescaled to the ΔT lattice.
    pub time_sample: f64,
    /// The comb tooth whose arrival-time peak collapsed.
    pub m_drawn: i64,
}

/// Encodes message (k, j) on a fresh biphoton comb: the phase ramp
/// `e^{−2πimj/d}` across the tooth pairs (a time shift of the comb by
/// (j/d)ΔT) followed by a frequency shift of the H photon by kΔΩ/n.
pub fn encode(state: &BiphotonCombState, params: &EncodingParams, msg: Message) -> Result<BiphotonCombState> {
    Message::checked(msg.k, msg.j, params)?;
    state.pairs_required()?;
    if state.freq_offset_h() != 0.0 {
        return Err(Error::WrongForm(
            "encoding requires a fresh comb with no prior frequency shift".into(),
        ));
    }
    let d = params.d as i64;
    let j = msg.j as i64;
    let mut out = state.clone();
    out.apply_pair_phase(|m| {
        // e^{−2πi·mj/d} with the angle reduced modulo d before the float
        // division, so large |m| costs no precision.
        let phase_num = (m as i128 * j as i128).rem_euclid(d as i128) as f64;
        Complex64::from_polar(1.0, -std::f64::consts::TAU * phase_num / d as f64)
    })?;
    out.add_freq_offset_h(msg.k as f64 * state.spec().spacing() / params.n as f64);
    Ok(out)
}

/// Applies the frequency beamsplitter, disentangling the pair state.
///
/// Input pairs sit at (ω_p/2 + mΔΩ + s, ω_p/2 − mΔΩ); the output H photon
/// sits at the constant sum frequency (ω_p + s)/√2 and the V photon becomes
/// a single-photon comb at the difference frequencies (2mΔΩ + s)/√2 with
/// the input pair amplitudes.
pub fn apply_fbs(state: &BiphotonCombState) -> Result<BiphotonCombState> {
    if state.is_separable() {
        return Err(Error::AlreadySeparable);
    }
    let pairs = state.pairs_required()?;
    let spec = state.spec();
    let s = state.freq_offset_h();
    let photon_h_frequency = (spec.center_frequency() + s) / SQRT_2;
    let v_spec = CombSpec::from_angular(s / SQRT_2, 2.0 * spec.spacing() / SQRT_2, spec.truncation())?;
    let photon_v = SpikeComb::new(v_spec, 1, pairs.to_vec())?;
    Ok(BiphotonCombState::from_separable(
        *spec,
        s,
        SeparableForm {
            photon_h_frequency,
            photon_v,
        },
    ))
}

/// Inverts [`apply_fbs`], recovering the entangled-pair form exactly.
pub fn inverse_fbs(state: &BiphotonCombState) -> Result<BiphotonCombState> {
    let form = state.separable_required()?;
    let spec = state.spec();
    let s = SQRT_2 * form.photon_h_frequency - spec.center_frequency();
    if form.photon_v.basis() != Basis::Frequency {
        return Err(Error::WrongForm(
            "beamsplitter inversion needs the V photon in the frequency basis".into(),
        ));
    }
    if form.photon_v.refinement() != 1 {
        return Err(Error::WrongForm(
            "beamsplitter inversion needs an unrefined V comb (one tooth per pair)".into(),
        ));
    }
    let expected_center = s / SQRT_2;
    if (form.photon_v.spec().center_frequency() - expected_center).abs()
        > 1e-9 * spec.spacing()
    {
        return Err(Error::WrongForm(format!(
            "V comb center {} rad/s is inconsistent with the H photon frequency (expected {})",
            form.photon_v.spec().center_frequency(),
            expected_center
        )));
    }
    BiphotonCombState::from_pairs(*spec, form.photon_v.amplitudes().to_vec(), s)
}

/// Measures the H photon's frequency: the deterministic sum frequency is
/// rescaled back to the unshifted frame and reported relative to the k = 0
/// reference, plus one Gaussian draw of width σ_f,total. The draw happens
/// even at zero noise so the RNG stream does not depend on σ.
pub fn measure_frequency<R: Rng>(state: &BiphotonCombState, noise: &NoiseModel, rng: &mut R) -> Result<f64> {
    let form = state.separable_required()?;
    let shift_rad = SQRT_2 * form.photon_h_frequency - state.spec().center_frequency();
    let z: f64 = rng.sample(StandardNormal);
    Ok(shift_rad / std::f64::consts::TAU + noise.sigma_f_total() * z)
}

/// Measures the V photon's arrival time.
///
/// The comb superposition collapses onto one tooth m, drawn with
/// |amplitude|² weight from the truncated tooth set, and the arrival time
/// is that tooth's peak on the unscaled lattice: (φ + m)·ΔT, where the
/// fraction φ ∈ [0, 1) is the temporal offset encoded by the phase ramp
/// across the teeth. One Gaussian draw of width σ_t,total is added (drawn
/// even at zero noise). Returns `(time_sample, m_drawn)`.
pub fn measure_time<R: Rng>(
    state: &BiphotonCombState,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<(f64, i64)> {
    let form = state.separable_required()?;
    let comb = &form.photon_v;
    let amps = comb.amplitudes();
    let m = draw_tooth(amps, rng.random::<f64>());
    let phi = temporal_offset_fraction(amps);
    // The V comb lives in the √2-scaled difference frame; its period is
    // ΔT/√2, and the reported time undoes that scale.
    let period = SQRT_2 * comb.spec().time_period();
    let z: f64 = rng.sample(StandardNormal);
    Ok(((phi + m as f64) * period + noise.sigma_t_total() * z, m))
}

/// Full measurement round: frequency first, then time, from one RNG.
pub fn measure_both<R: Rng>(
    state: &BiphotonCombState,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<MeasurementRecord> {
    let freq_sample = measure_frequency(state, noise, rng)?;
    let (time_sample, m_drawn) = measure_time(state, noise, rng)?;
    Ok(MeasurementRecord {
        freq_sample,
        time_sample,
        m_drawn,
    })
}

/// Picks a tooth index with |amplitude|² probability given a uniform draw.
fn draw_tooth(amplitudes: &[(i64, Complex64)], u: f64) -> i64 {
    debug_assert!(!amplitudes.is_empty());
    let total: f64 = amplitudes.iter().map(|(_, a)| a.norm_sqr()).sum();
    let mut acc = 0.0;
    for (m, a) in amplitudes {
        acc += a.norm_sqr() / total;
        if u < acc {
            return *m;
        }
    }
    amplitudes.last().unwrap().0
}

/// Extracts the temporal offset fraction φ ∈ [0, 1) encoded by the phase
/// ramp across the comb teeth: adjacent-tooth phase steps of −2πφ average
/// coherently, so a pure ramp e^{−2πimφ} returns exactly φ.
fn temporal_offset_fraction(amplitudes: &[(i64, Complex64)]) -> f64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for w in amplitudes.windows(2) {
        let ((m0, a0), (m1, a1)) = (w[0], w[1]);
        if m1 == m0 + 1 {
            acc += a1 * a0.conj();
        }
    }
    if acc.norm_sqr() == 0.0 {
        return 0.0;
    }
    (-acc.arg() / std::f64::consts::TAU).rem_euclid(1.0)
}

/// Rounds to the nearest integer with exact halves going down.
fn round_half_down(x: f64) -> i64 {
    (x - 0.5).ceil() as i64
}

/// Decodes a measurement record back to a message: k̂ is the nearest
/// frequency bin of width ΔΩ/n wrapped into [0, c), ĵ the nearest fraction
/// bin of the period, d·frac(t/ΔT), wrapped into [0, d). Halfway samples
/// round to the lower bin.
pub fn decode(record: &MeasurementRecord, params: &EncodingParams, spec: &CombSpec) -> Message {
    let freq_bin = spec.spacing_hz() / params.n as f64;
    let k = round_half_down(record.freq_sample / freq_bin).rem_euclid(params.c as i64) as u32;
    let fraction = (record.time_sample / spec.time_period()).rem_euclid(1.0);
    let j = round_half_down(params.d as f64 * fraction).rem_euclid(params.d as i64) as u32;
    Message { k, j }
}

/// Joint counts of (sent message, decoded message) from a Monte Carlo run.
#[derive(Debug, Clone)]
pub struct TransitionCounts {
    params: EncodingParams,
    /// Row-major (sent index × decoded index) counts.
    counts: Vec<u64>,
    trials: u64,
}

impl TransitionCounts {
    pub fn params(&self) -> &EncodingParams {
        &self.params
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn count(&self, sent: Message, decoded: Message) -> u64 {
        let n = self.params.message_count() as usize;
        debug_assert_eq!(self.counts.len(), n * n);
        self.counts[self.params.message_index(sent) * n + self.params.message_index(decoded)]
    }

    /// Marginal counts over the frequency symbols: entry (k, k̂) sums the
    /// joint counts over all time symbols.
    pub fn frequency_marginal(&self) -> Vec<Vec<u64>> {
        let c = self.params.c as usize;
        let d = self.params.d as usize;
        let n = c * d;
        let mut out = vec![vec![0u64; c]; c];
        for (idx, &count) in self.counts.iter().enumerate() {
            let (sent, decoded) = (idx / n, idx % n);
            out[sent / d][decoded / d] += count;
        }
        out
    }

    /// Marginal counts over the time symbols: entry (j, ĵ).
    pub fn time_marginal(&self) -> Vec<Vec<u64>> {
        let c = self.params.c as usize;
        let d = self.params.d as usize;
        let n = c * d;
        let mut out = vec![vec![0u64; d]; d];
        for (idx, &count) in self.counts.iter().enumerate() {
            let (sent, decoded) = (idx / n, idx % n);
            out[sent % d][decoded % d] += count;
        }
        out
    }

    /// Plug-in mutual information (bits) of the empirical joint
    /// distribution of sent and decoded messages.
    pub fn mutual_information_bits(&self) -> f64 {
        let n = self.params.message_count() as usize;
        let total = self.trials as f64;
        let mut sent_totals = vec![0.0; n];
        let mut decoded_totals = vec![0.0; n];
        for (idx, &count) in self.counts.iter().enumerate() {
            sent_totals[idx / n] += count as f64;
            decoded_totals[idx % n] += count as f64;
        }
        let mut mi = 0.0;
        for (idx, &count) in self.counts.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let joint = count as f64 / total;
            let px = sent_totals[idx / n] / total;
            let py = decoded_totals[idx % n] / total;
            mi += joint * (joint / (px * py)).log2();
        }
        mi
    }

    /// CSV rows `sent,decoded,count` (flat message indices k·d + j),
    /// including zero cells so the table shape is explicit.
    pub fn to_csv(&self) -> String {
        let n = self.params.message_count() as usize;
        let mut csv = String::from("sent,decoded,count\n");
        for (idx, &count) in self.counts.iter().enumerate() {
            csv.push_str(&format!("{},{},{}\n", idx / n, idx % n, count));
        }
        csv
    }
}

/// Runs the full pipeline `trials` times with messages assigned round-robin
/// (trial i sends message i mod c·d) and one deterministic RNG stream per
/// trial, so identical seeds give identical counts and trials can be
/// partitioned arbitrarily without changing the result.
pub fn monte_carlo_channel(
    state: &BiphotonCombState,
    params: &EncodingParams,
    noise: &NoiseModel,
    trials: u64,
) -> Result<TransitionCounts> {
    if trials < 1 {
        return Err(Error::InvalidParameter(format!(
            "Monte Carlo needs at least one trial, got {trials}"
        )));
    }
    let n_messages = params.message_count() as usize;
    let mut prepared = Vec::with_capacity(n_messages);
    for msg in params.messages() {
        prepared.push(apply_fbs(&encode(state, params, msg)?)?);
    }
    let spec = state.spec();
    let mut counts = vec![0u64; n_messages * n_messages];
    let mut rng = ChaCha8Rng::seed_from_u64(noise.rng_seed);
    for trial in 0..trials {
        let sent_idx = (trial % n_messages as u64) as usize;
        rng.set_stream(trial);
        let record = measure_both(&prepared[sent_idx], noise, &mut rng)?;
        let decoded = decode(&record, params, spec);
        counts[sent_idx * n_messages + params.message_index(decoded)] += 1;
    }
    Ok(TransitionCounts {
        params: *params,
        counts,
        trials,
    })
}
