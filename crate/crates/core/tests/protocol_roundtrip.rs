//! End-to-end pipeline checks: every message of several alphabet geometries
//! survives encode → beamsplitter → measure → decode untouched when the
//! noise is switched off, runs are bit-reproducible from the seed, and the
//! measurement draws have the distributions they claim.

use bfc_core::channel::normal_cdf;
use bfc_core::{
    apply_fbs, decode, encode, measure_both, measure_time, monte_carlo_channel,
    BiphotonCombState, CombSpec, EncodingParams, Message, NoiseModel,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fresh(truncation: u32) -> BiphotonCombState {
    BiphotonCombState::uniform(CombSpec::new(2.0 * 192.0e12, 20e9, truncation).unwrap())
}

#[test]
fn noiseless_round_trip_is_exact_for_every_message() {
    let noise = NoiseModel::noiseless(3);
    for &(c, n, d) in &[
        (1u32, 1u32, 1u32),
        (6, 2, 4),
        (16, 4, 8),
        (202, 5, 1),
        (32, 8, 32),
    ] {
        let params = EncodingParams::new(c, n, d).unwrap();
        let state = fresh(32);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for msg in params.messages() {
            let sent = apply_fbs(&encode(&state, &params, msg).unwrap()).unwrap();
            let record = measure_both(&sent, &noise, &mut rng).unwrap();
            let decoded = decode(&record, &params, state.spec());
            assert_eq!(decoded, msg, "(c,n,d)=({c},{n},{d})");
        }
    }
}

#[test]
fn identical_seeds_give_identical_counts() {
    let params = EncodingParams::new(4, 2, 3).unwrap();
    let state = fresh(16);
    let noise = NoiseModel::new(4e9, 4e9, 1e-12, 2e-12, 1e-12, 42).unwrap();
    let a = monte_carlo_channel(&state, &params, &noise, 4_000).unwrap();
    let b = monte_carlo_channel(&state, &params, &noise, 4_000).unwrap();
    for sent in params.messages() {
        for dec in params.messages() {
            assert_eq!(a.count(sent, dec), b.count(sent, dec));
        }
    }

    let other = monte_carlo_channel(&state, &params, &noise.with_seed(43), 4_000).unwrap();
    let differs = params.messages().any(|s| {
        params
            .messages()
            .any(|dec| a.count(s, dec) != other.count(s, dec))
    });
    assert!(differs, "independent seeds produced identical noise");
}

/// Kolmogorov–Smirnov distance between sorted samples and the normal CDF.
fn ks_distance(samples: &mut [f64], sigma: f64) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = samples.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let cdf = normal_cdf(x / sigma);
        d = d.max((cdf - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - cdf).abs());
    }
    d
}

#[test]
fn frequency_noise_draws_are_gaussian() {
    let params = EncodingParams::new(1, 1, 1).unwrap();
    let state = fresh(8);
    let sent = apply_fbs(&encode(&state, &params, Message { k: 0, j: 0 }).unwrap()).unwrap();
    let sigma = 5e9;
    let noise = NoiseModel::new(0.0, sigma, 0.0, 0.0, 0.0, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12345);
    let n = 20_000;
    let mut samples: Vec<f64> = (0..n)
        .map(|_| {
            bfc_core::measure_frequency(&sent, &noise, &mut rng).unwrap()
        })
        .collect();
    // The noiseless part is ~0 Hz (k = 0), so the samples are pure noise.
    let d = ks_distance(&mut samples, sigma);
    let critical = 1.628 / (n as f64).sqrt(); // α = 0.01
    assert!(d <= critical, "KS distance {d} over critical {critical}");
}

#[test]
fn arrival_time_noise_draws_are_gaussian_around_the_tooth() {
    let params = EncodingParams::new(1, 1, 1).unwrap();
    let state = fresh(8);
    let sent = apply_fbs(&encode(&state, &params, Message { k: 0, j: 0 }).unwrap()).unwrap();
    let sigma = 2e-12;
    let noise = NoiseModel::new(0.0, 0.0, 0.0, sigma, 0.0, 1).unwrap();
    let period = state.spec().time_period();
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let n = 20_000;
    let mut samples: Vec<f64> = (0..n)
        .map(|_| {
            let (t, m) = measure_time(&sent, &noise, &mut rng).unwrap();
            t - m as f64 * period
        })
        .collect();
    let d = ks_distance(&mut samples, sigma);
    let critical = 1.628 / (n as f64).sqrt();
    assert!(d <= critical, "KS distance {d} over critical {critical}");
}

#[test]
fn tooth_collapse_follows_the_amplitude_weights() {
    // Uniform comb with 9 teeth: the drawn tooth index should be uniform.
    let params = EncodingParams::new(1, 1, 1).unwrap();
    let state = fresh(4);
    let sent = apply_fbs(&encode(&state, &params, Message { k: 0, j: 0 }).unwrap()).unwrap();
    let noise = NoiseModel::noiseless(0);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 18_000u32;
    let mut hist = [0u32; 9];
    for _ in 0..n {
        let (_, m) = measure_time(&sent, &noise, &mut rng).unwrap();
        hist[(m + 4) as usize] += 1;
    }
    let expected = n as f64 / 9.0;
    let chi2: f64 = hist
        .iter()
        .map(|&o| {
            let dlt = o as f64 - expected;
            dlt * dlt / expected
        })
        .sum();
    // χ² with 8 degrees of freedom, α = 0.001 ⇒ 26.12.
    assert!(chi2 <= 26.12, "χ² = {chi2}, histogram {hist:?}");
}

#[test]
fn decoding_wraps_circularly_in_both_coordinates() {
    let params = EncodingParams::new(6, 2, 4).unwrap();
    let spec = CombSpec::new(2.0 * 192.0e12, 20e9, 16).unwrap();
    let bin = spec.spacing_hz() / 2.0;
    let period = spec.time_period();
    let base = bfc_core::MeasurementRecord {
        freq_sample: 2.0 * bin + 0.2 * bin,
        time_sample: 0.25 * period + 0.03 * period,
        m_drawn: 0,
    };
    let reference = decode(&base, &params, &spec);
    assert_eq!(reference, Message { k: 2, j: 1 });
    for shift in [-2i64, -1, 1, 3] {
        let wrapped = bfc_core::MeasurementRecord {
            freq_sample: base.freq_sample + shift as f64 * 6.0 * bin,
            time_sample: base.time_sample + shift as f64 * period,
            m_drawn: 0,
        };
        assert_eq!(decode(&wrapped, &params, &spec), reference);
    }
}
