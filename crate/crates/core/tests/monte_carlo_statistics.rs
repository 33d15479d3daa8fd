//! The simulated transition counts must agree with the analytic model they
//! discretize: the decoded symbol shifts are wrapped Gaussians in each
//! coordinate, independent across coordinates, and the plug-in mutual
//! information of a long run lands on the analytic channel capacity.

use bfc_core::channel::{symmetric_capacity, BoundaryModel, ChannelSpec, Domain, TransitionMatrix};
use bfc_core::{monte_carlo_channel, BiphotonCombState, CombSpec, EncodingParams, NoiseModel};

const TRIALS: u64 = 120_000;

fn run() -> (
    EncodingParams,
    CombSpec,
    NoiseModel,
    bfc_core::TransitionCounts,
) {
    let params = EncodingParams::new(6, 2, 4).unwrap();
    let spec = CombSpec::new(2.0 * 192.0e12, 20e9, 32).unwrap();
    let state = BiphotonCombState::uniform(spec);
    // Broadband-source noise figures: 10 GHz shift and measurement in
    // frequency; 1 ps shift, 3 ps measurement, 0.24 ps linewidth in time.
    let noise = NoiseModel::new(10e9, 10e9, 1e-12, 3e-12, 0.24e-12, 2024).unwrap();
    let counts = monte_carlo_channel(&state, &params, &noise, TRIALS).unwrap();
    (params, spec, noise, counts)
}

fn frequency_channel(params: &EncodingParams, spec: &CombSpec, noise: &NoiseModel) -> TransitionMatrix {
    TransitionMatrix::from_channel(
        &ChannelSpec::new(
            params.c as usize,
            spec.spacing_hz() / params.n as f64,
            noise.sigma_f_total(),
            Domain::Frequency,
            BoundaryModel::Circular,
        )
        .unwrap(),
    )
}

fn time_channel(params: &EncodingParams, spec: &CombSpec, noise: &NoiseModel) -> TransitionMatrix {
    TransitionMatrix::from_channel(
        &ChannelSpec::new(
            params.d as usize,
            spec.time_period() / params.d as f64,
            noise.sigma_t_total(),
            Domain::Time,
            BoundaryModel::Circular,
        )
        .unwrap(),
    )
}

#[test]
fn decoded_shift_distributions_match_the_wrapped_gaussians() {
    let (params, spec, noise, counts) = run();

    // Aggregate decoded-minus-sent shifts; every sender sees the same
    // circulant row, so pooling across messages is exact.
    let mut freq_shift = vec![0u64; params.c as usize];
    let mut time_shift = vec![0u64; params.d as usize];
    for sent in params.messages() {
        for dec in params.messages() {
            let n = counts.count(sent, dec);
            freq_shift[(dec.k + params.c - sent.k) as usize % params.c as usize] += n;
            time_shift[(dec.j + params.d - sent.j) as usize % params.d as usize] += n;
        }
    }

    let f_row = frequency_channel(&params, &spec, &noise).row(0);
    let t_row = time_channel(&params, &spec, &noise).row(0);
    let total = TRIALS as f64;
    for (s, (&obs, &p)) in freq_shift.iter().zip(&f_row).enumerate() {
        let expect = total * p;
        let tol = 4.0 * (total * p * (1.0 - p)).sqrt() + 1.0;
        assert!(
            (obs as f64 - expect).abs() <= tol,
            "frequency shift {s}: observed {obs}, expected {expect:.1} ± {tol:.1}"
        );
    }
    for (s, (&obs, &p)) in time_shift.iter().zip(&t_row).enumerate() {
        let expect = total * p;
        let tol = 4.0 * (total * p * (1.0 - p)).sqrt() + 1.0;
        assert!(
            (obs as f64 - expect).abs() <= tol,
            "time shift {s}: observed {obs}, expected {expect:.1} ± {tol:.1}"
        );
    }
}

#[test]
fn plug_in_mutual_information_approaches_the_analytic_capacity() {
    let (params, spec, noise, counts) = run();
    let c_f = symmetric_capacity(&frequency_channel(&params, &spec, &noise))
        .unwrap()
        .capacity_bits;
    let c_t = symmetric_capacity(&time_channel(&params, &spec, &noise))
        .unwrap()
        .capacity_bits;
    let mi = counts.mutual_information_bits();
    // Uniform input achieves capacity on a circulant channel, and the two
    // coordinates carry independent noise, so the joint information is the
    // sum. The plug-in estimate carries a positive O(m²/N) bias of a few
    // millibits at this run length.
    assert!(
        (mi - (c_f + c_t)).abs() <= 0.02,
        "plug-in MI {mi} vs analytic {c_f} + {c_t} = {}",
        c_f + c_t
    );
}

#[test]
fn coordinates_decouple_in_the_joint_counts() {
    let (params, _, _, counts) = run();
    // P(k̂, ĵ | k, j) should factor: compare the joint decoded distribution
    // for one sent message against the product of its marginals.
    let sent = bfc_core::Message { k: 2, j: 1 };
    let mut joint = vec![vec![0f64; params.d as usize]; params.c as usize];
    let mut row_total = 0f64;
    for dec in params.messages() {
        let n = counts.count(sent, dec) as f64;
        joint[dec.k as usize][dec.j as usize] += n;
        row_total += n;
    }
    let k_marg: Vec<f64> = joint.iter().map(|r| r.iter().sum::<f64>() / row_total).collect();
    let j_marg: Vec<f64> = (0..params.d as usize)
        .map(|j| joint.iter().map(|r| r[j]).sum::<f64>() / row_total)
        .collect();
    for (k, row) in joint.iter().enumerate() {
        for (j, &n) in row.iter().enumerate() {
            let p = n / row_total;
            let q = k_marg[k] * j_marg[j];
            // Binomial fluctuation around the product, 5σ plus a floor.
            let tol = 5.0 * (q * (1.0 - q) / row_total).sqrt() + 2.0 / row_total;
            assert!(
                (p - q).abs() <= tol,
                "cell ({k},{j}): joint {p:.5} vs product {q:.5} ± {tol:.5}"
            );
        }
    }
}
