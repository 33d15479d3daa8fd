//! Discrete memoryless channel induced by Gaussian noise on a binned
//! lattice, and two independent capacity computations.
//!
//! A sent symbol is a bin center on a lattice of N bins of width Δ; noise
//! displaces it by a zero-mean Gaussian of standard deviation σ, and the
//! receiver reports the bin the displaced value lands in. The lattice is
//! treated as periodic (exactly so for the time channel, whose coordinate
//! is a phase over the comb period; as an explicit approximation for the
//! frequency window), which makes the transition matrix circulant:
//!
//! ```text
//! P(y|x) = Σ_w  Φ((y−x+0.5+wN)Δ/σ) − Φ((y−x−0.5+wN)Δ/σ)
//! ```
//!
//! summed over enough whole-period windings w to capture the Gaussian mass.
//! For a circulant matrix the capacity has the closed form
//! `C = log₂N − H(row)` at uniform input; the general Blahut–Arimoto
//! iteration is provided as an independent check and for non-symmetric
//! matrices.

use crate::error::{Error, Result};

/// Which physical coordinate a channel bins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Frequency bins of width Δ (Hz) across the source bandwidth.
    Frequency,
    /// Time bins of width Δ (s) across one comb period ΔT.
    Time,
}

/// How the lattice edges are treated. Both variants wrap; the distinction
/// records whether wrapping is exact or a stated approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryModel {
    /// The coordinate is genuinely periodic (time bins over one period).
    Circular,
    /// A finite window approximated as periodic (frequency bandwidth).
    WindowedAsCircular,
}

/// Geometry of a Gaussian-noise binned channel.
#[derive(Debug, Clone, Copy)]
pub struct ChannelSpec {
    /// Alphabet size (number of bins).
    pub n: usize,
    /// Bin width Δ, in the domain's units (Hz or s).
    pub bin_width: f64,
    /// Gaussian noise standard deviation, same units as `bin_width`.
    pub sigma: f64,
    pub domain: Domain,
    pub boundary: BoundaryModel,
}

impl ChannelSpec {
    pub fn new(n: usize, bin_width: f64, sigma: f64, domain: Domain, boundary: BoundaryModel) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("alphabet size must be ≥ 1".into()));
        }
        if !(bin_width.is_finite() && bin_width > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "bin width must be positive, got {bin_width}"
            )));
        }
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "noise sigma must be non-negative, got {sigma}"
            )));
        }
        Ok(ChannelSpec {
            n,
            bin_width,
            sigma,
            domain,
            boundary,
        })
    }

    /// Total lattice span N·Δ (one period of the wrapped coordinate).
    pub fn span(&self) -> f64 {
        self.n as f64 * self.bin_width
    }
}

/// Standard normal cumulative distribution function.
/// Standard normal CDF Φ(x), used to integrate Gaussian noise over bins.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / std::f64::consts::SQRT_2))
}

/// Row-stochastic transition matrix P(y|x).
///
/// Circulant matrices (every row a cyclic shift of the first) are stored as
/// their first row only, which keeps the N = 10⁴ sweeps cheap; general
/// matrices store all rows.
#[derive(Debug, Clone)]
pub enum TransitionMatrix {
    Circulant { row0: Vec<f64> },
    Dense { rows: Vec<Vec<f64>> },
}

/// Tolerance on row sums when validating externally supplied matrices.
pub const ROW_SUM_TOL: f64 = 1e-12;

impl TransitionMatrix {
    /// Builds the wrapped-Gaussian circulant matrix for a channel.
    ///
    /// Each entry is a difference of Gaussian CDFs, summed over whole-period
    /// windings `|w| ≤ W` with `W = ceil(8σ/(NΔ)) + 1`, which captures the
    /// Gaussian to beyond 8σ (tail mass < 1e−15). σ = 0 yields the identity.
    pub fn from_channel(spec: &ChannelSpec) -> Self {
        let n = spec.n;
        if spec.sigma == 0.0 {
            let mut row0 = vec![0.0; n];
            row0[0] = 1.0;
            return TransitionMatrix::Circulant { row0 };
        }
        let delta = spec.bin_width;
        let sigma = spec.sigma;
        let period = spec.span();
        let windings = (8.0 * sigma / period).ceil() as i64 + 1;
        let row0: Vec<f64> = (0..n)
            .map(|y| {
                let mut p = 0.0;
                for w in -windings..=windings {
                    let center = y as f64 * delta + w as f64 * period;
                    p += normal_cdf((center + 0.5 * delta) / sigma)
                        - normal_cdf((center - 0.5 * delta) / sigma);
                }
                p
            })
            .collect();
        TransitionMatrix::Circulant { row0 }
    }

    /// Wraps explicit rows, validating row-stochasticity.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidParameter("matrix must be non-empty".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if row.iter().any(|&p| !(0.0..=1.0 + ROW_SUM_TOL).contains(&p)) {
                return Err(Error::InvalidParameter(format!(
                    "row {i} has entries outside [0, 1]"
                )));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(Error::NotRowStochastic {
                    row: i,
                    sum,
                    tolerance: ROW_SUM_TOL,
                });
            }
        }
        Ok(TransitionMatrix::Dense { rows })
    }

    pub fn n(&self) -> usize {
        match self {
            TransitionMatrix::Circulant { row0 } => row0.len(),
            TransitionMatrix::Dense { rows } => rows.len(),
        }
    }

    /// Entry P(y|x).
    pub fn prob(&self, x: usize, y: usize) -> f64 {
        match self {
            TransitionMatrix::Circulant { row0 } => {
                let n = row0.len();
                row0[(y + n - x % n) % n]
            }
            TransitionMatrix::Dense { rows } => rows[x][y],
        }
    }

    /// Row x as a vector.
    pub fn row(&self, x: usize) -> Vec<f64> {
        (0..self.n()).map(|y| self.prob(x, y)).collect()
    }

    /// Maximum deviation of any row from a cyclic shift of row 0; exactly
    /// 0 for circulant storage.
    pub fn circulant_deviation(&self) -> f64 {
        match self {
            TransitionMatrix::Circulant { .. } => 0.0,
            TransitionMatrix::Dense { rows } => {
                let n = rows.len();
                let mut dev: f64 = 0.0;
                for (x, row) in rows.iter().enumerate() {
                    for (y, &p) in row.iter().enumerate() {
                        dev = dev.max((p - rows[0][(y + n - x) % n]).abs());
                    }
                }
                dev
            }
        }
    }

    /// Maximum deviation of any row sum from 1.
    pub fn row_sum_deviation(&self) -> f64 {
        match self {
            TransitionMatrix::Circulant { row0 } => {
                (row0.iter().sum::<f64>() - 1.0).abs()
            }
            TransitionMatrix::Dense { rows } => rows
                .iter()
                .map(|row| (row.iter().sum::<f64>() - 1.0).abs())
                .fold(0.0, f64::max),
        }
    }
}

/// Which algorithm produced a capacity figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityMethod {
    /// `log₂N − H(row)` at uniform input, valid for circulant matrices.
    ClosedFormSymmetric,
    /// Blahut–Arimoto alternating maximization.
    BlahutArimoto,
}

/// A capacity figure with the input distribution that achieves it.
#[derive(Debug, Clone)]
pub struct CapacityResult {
    pub capacity_bits: f64,
    pub n: usize,
    pub input_distribution: Vec<f64>,
    pub method: CapacityMethod,
    /// False only when Blahut–Arimoto hit its iteration cap before reaching
    /// the requested tolerance.
    pub converged: bool,
}

/// Shannon entropy of a probability row, in bits, with 0·log0 = 0.
fn entropy_bits(row: &[f64]) -> f64 {
    -row.iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// Closed-form capacity of a circulant (symmetric) channel:
/// `C = log₂N − H(row 0)`, achieved by the uniform input distribution.
pub fn symmetric_capacity(tm: &TransitionMatrix) -> Result<CapacityResult> {
    let dev = tm.circulant_deviation();
    if dev > 1e-12 {
        return Err(Error::NonCirculant {
            row: 0,
            deviation: dev,
        });
    }
    let n = tm.n();
    let row0 = tm.row(0);
    let capacity_bits = ((n as f64).log2() - entropy_bits(&row0)).max(0.0);
    Ok(CapacityResult {
        capacity_bits,
        n,
        input_distribution: vec![1.0 / n as f64; n],
        method: CapacityMethod::ClosedFormSymmetric,
        converged: true,
    })
}

/// Blahut–Arimoto capacity iteration for an arbitrary row-stochastic
/// channel.
///
/// Each pass computes the per-input divergences
/// `D_x = Σ_y P(y|x) ln(P(y|x)/q_y)` with `q_y = Σ_x r_x P(y|x)`, giving the
/// sandwich `Σ_x r_x D_x ≤ C ≤ max_x D_x`; the input distribution is then
/// reweighted by `e^{D_x}`. Iteration stops when the sandwich gap drops
/// below `tol` (in bits) or after `max_iter` passes (`converged = false`).
pub fn blahut_arimoto(tm: &TransitionMatrix, tol: f64, max_iter: usize) -> CapacityResult {
    let n = tm.n();
    let ln2 = std::f64::consts::LN_2;
    let mut r = vec![1.0 / n as f64; n];
    let mut capacity_nats = 0.0;
    let mut converged = false;
    let mut divergences = vec![0.0; n];
    for _ in 0..max_iter {
        // Output distribution under the current input.
        let mut q = vec![0.0; n];
        for (x, &rx) in r.iter().enumerate() {
            if rx == 0.0 {
                continue;
            }
            for (y, qy) in q.iter_mut().enumerate() {
                *qy += rx * tm.prob(x, y);
            }
        }
        let mut lower = 0.0; // Σ r_x D_x
        let mut upper = f64::NEG_INFINITY; // max D_x
        for x in 0..n {
            let mut d = 0.0;
            for (y, &qy) in q.iter().enumerate() {
                let p = tm.prob(x, y);
                if p > 0.0 && qy > 0.0 {
                    d += p * (p / qy).ln();
                }
            }
            divergences[x] = d;
            lower += r[x] * d;
            upper = upper.max(d);
        }
        capacity_nats = lower;
        if (upper - lower) / ln2 < tol {
            converged = true;
            break;
        }
        // Multiplicative update, normalized; subtracting the max exponent
        // keeps e^{D_x} finite for very clean channels.
        let dmax = upper;
        let mut z = 0.0;
        for x in 0..n {
            r[x] *= (divergences[x] - dmax).exp();
            z += r[x];
        }
        for rx in &mut r {
            *rx /= z;
        }
    }
    CapacityResult {
        capacity_bits: (capacity_nats / ln2).max(0.0),
        n,
        input_distribution: r,
        method: CapacityMethod::BlahutArimoto,
        converged,
    }
}
