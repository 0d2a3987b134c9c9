//! Monte Carlo validation of the analytic bounds: sample the observation
//! model `Y = sqrt(SNR) G X + N`, decode by exhaustive maximum likelihood,
//! and sandwich the empirical error probability between the Fano lower arm
//! and the union-bound upper arm.
//!
//! Trials are independent, keyed by `(seed, trial index)`, and reduced in
//! index order, so reports are bit-identical regardless of how many worker
//! threads run. The decoder enumerates the full binary hypercube, which at
//! desk scale is at least as powerful as decoding over a rate-distortion
//! codebook; the union bound therefore remains a valid upper arm.
//!
//! Only the discrete (Bernoulli/Hamming) model is simulated; continuous
//! results are covered by the closed-form bounds alone.

use nalgebra::DVector;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{achievable_error_ub, fano_lb_finite_n};
use crate::ensembles::{mi_logdet_gaussian, sample_matrix, EnsembleError, SensingMatrix};
use crate::infotheory::binary_entropy;
use crate::models::{EnsembleSpec, Scenario, SignalKind, SignalModel};
use crate::rng::{derive_seed, keyed_rng, stream};

/// Largest candidate set the exhaustive decoder accepts: 2^20.
pub const CANDIDATE_BUDGET: usize = 1 << 20;

/// Two-sided 95% normal quantile for the Wilson interval.
const WILSON_Z: f64 = 1.959963984540054;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("candidate budget exceeded: {got} > {budget}")]
    BudgetExceeded { got: usize, budget: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("simulation requires the BernoulliDiscrete model; continuous signals are bound-only")]
    ContinuousNotSimulated,
    #[error("trials must be positive")]
    NoTrials,
    #[error(transparent)]
    Ensemble(#[from] EnsembleError),
}

/// Candidate set for exhaustive maximum-likelihood decoding.
#[derive(Debug, Clone)]
pub enum Candidates {
    /// Every vector in {0, 1}^n.
    BinaryHypercube(usize),
    /// An explicit list, searched in lexicographic-value order for ties.
    List(Vec<DVector<f64>>),
}

impl Candidates {
    pub fn count(&self) -> usize {
        match self {
            Candidates::BinaryHypercube(n) => 1usize
                .checked_shl(*n as u32)
                .unwrap_or(usize::MAX),
            Candidates::List(v) => v.len(),
        }
    }
}

/// Draws an i.i.d. signal from the prior.
pub fn sample_signal(model: &SignalModel, n: usize, seed: u64) -> DVector<f64> {
    let mut rng = keyed_rng(seed, stream::SIGNAL, 0);
    DVector::from_fn(n, |_, _| {
        let active = rng.random::<f64>() < model.alpha;
        match model.kind {
            SignalKind::BernoulliDiscrete => {
                if active {
                    1.0
                } else {
                    0.0
                }
            }
            SignalKind::SparseGaussian => {
                let sigma_sq = if active { model.sigma1_sq } else { model.sigma0_sq };
                if sigma_sq > 0.0 {
                    let z: f64 = StandardNormal.sample(&mut rng);
                    z * sigma_sq.sqrt()
                } else {
                    0.0
                }
            }
        }
    })
}

/// One observation: y = sqrt(snr) G x + N with fresh unit-variance noise.
pub fn observe(
    matrix: &SensingMatrix,
    x: &DVector<f64>,
    snr: f64,
    seed: u64,
) -> Result<DVector<f64>, SimError> {
    if x.len() != matrix.n() {
        return Err(SimError::DimensionMismatch(format!(
            "signal has {} coordinates, matrix has n={}",
            x.len(),
            matrix.n()
        )));
    }
    let mut rng = keyed_rng(seed, stream::NOISE, 0);
    let noise = DVector::from_fn(matrix.m(), |_, _| StandardNormal.sample(&mut rng));
    Ok(snr.sqrt() * (&matrix.entries * x) + noise)
}

/// True when mask `a` is lexicographically smaller than `b` as a 0/1 vector
/// indexed from bit 0.
fn lex_smaller(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    a >> diff.trailing_zeros() & 1 == 0
}

/// Exhaustive ML decoding: the candidate minimizing ||y - sqrt(snr) G z||^2,
/// ties broken by the lexicographically smallest candidate.
///
/// The hypercube search walks a Gray code over the Gram form
/// E(z) = -2 z^T w + z^T M z (w = A^T y, M = A^T A, A = sqrt(snr) G), so each
/// of the 2^n steps costs O(n) instead of O(m n).
pub fn ml_decode_exhaustive(
    y: &DVector<f64>,
    matrix: &SensingMatrix,
    snr: f64,
    candidates: &Candidates,
) -> Result<DVector<f64>, SimError> {
    if candidates.count() > CANDIDATE_BUDGET {
        return Err(SimError::BudgetExceeded { got: candidates.count(), budget: CANDIDATE_BUDGET });
    }
    if y.len() != matrix.m() {
        return Err(SimError::DimensionMismatch(format!(
            "observation has {} entries, matrix has m={}",
            y.len(),
            matrix.m()
        )));
    }
    let a = matrix.entries.scale(snr.sqrt());
    match candidates {
        Candidates::BinaryHypercube(n) => {
            let n = *n;
            if n != matrix.n() {
                return Err(SimError::DimensionMismatch(format!(
                    "hypercube dimension {n} does not match matrix n={}",
                    matrix.n()
                )));
            }
            let w = a.transpose() * y;
            let gram = a.transpose() * &a;
            let cols = gram.as_slice(); // column-major: column j at [j n, (j+1) n)

            let mut s = vec![0.0f64; n]; // running M z
            let mut energy = 0.0f64; // E(0) with the constant ||y||^2 dropped
            let mut mask: u32 = 0;
            let (mut best_mask, mut best_energy) = (0u32, 0.0f64);
            for i in 1u64..1u64 << n {
                let j = i.trailing_zeros() as usize;
                let col = &cols[j * n..(j + 1) * n];
                if mask >> j & 1 == 0 {
                    energy += -2.0 * w[j] + 2.0 * s[j] + col[j];
                    for (sr, cr) in s.iter_mut().zip(col) {
                        *sr += *cr;
                    }
                    mask |= 1 << j;
                } else {
                    energy += 2.0 * w[j] - 2.0 * s[j] + col[j];
                    for (sr, cr) in s.iter_mut().zip(col) {
                        *sr -= *cr;
                    }
                    mask &= !(1 << j);
                }
                if energy < best_energy || (energy == best_energy && lex_smaller(mask, best_mask)) {
                    best_energy = energy;
                    best_mask = mask;
                }
            }
            Ok(DVector::from_fn(n, |j, _| f64::from(best_mask >> j & 1)))
        }
        Candidates::List(list) => {
            let mut best: Option<(f64, &DVector<f64>)> = None;
            for z in list {
                if z.len() != matrix.n() {
                    return Err(SimError::DimensionMismatch(format!(
                        "candidate has {} coordinates, matrix has n={}",
                        z.len(),
                        matrix.n()
                    )));
                }
                let e = (y - &a * z).norm_squared();
                let better = match &best {
                    None => true,
                    Some((be, bz)) => {
                        e < *be || (e == *be && z.iter().lt(bz.iter().map(|v| &*v)))
                    }
                };
                if better {
                    best = Some((e, z));
                }
            }
            best.map(|(_, z)| z.clone())
                .ok_or_else(|| SimError::DimensionMismatch("empty candidate list".to_string()))
        }
    }
}

/// Matched-filter thresholding baseline: x_hat_j = 1 iff
/// <y, a_j> > ||a_j||^2 / 2 with a_j the j-th column of sqrt(snr) G. Used as
/// a fixed alternative decoder the exhaustive one must not lose to.
pub fn threshold_decode(y: &DVector<f64>, matrix: &SensingMatrix, snr: f64) -> DVector<f64> {
    let a = matrix.entries.scale(snr.sqrt());
    DVector::from_fn(matrix.n(), |j, _| {
        let col = a.column(j);
        if y.dot(&col) > col.norm_squared() / 2.0 {
            1.0
        } else {
            0.0
        }
    })
}

/// Verdict of the Fano/union sandwich.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Consistent,
    FanoViolated,
    UnionViolated,
}

/// One Monte Carlo run with its analytic sandwich.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub scenario: Scenario,
    pub model: SignalModel,
    pub trials: usize,
    pub errors: usize,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Average log-det mutual information over the sampled matrices, bits.
    pub mean_mi_bits: f64,
    pub fano_lb: f64,
    pub union_ub: f64,
    pub verdict: Verdict,
    pub seed: u64,
}

impl SimulationReport {
    pub fn csv_header() -> &'static str {
        "n,m,snr,d0,alpha,trials,errors,p_hat,ci_low,ci_high,mean_mi_bits,fano_lb,union_ub,verdict,seed"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{:?},{}",
            self.scenario.n,
            self.scenario.m,
            self.scenario.snr,
            self.scenario.d0,
            self.model.alpha,
            self.trials,
            self.errors,
            self.p_hat,
            self.ci_low,
            self.ci_high,
            self.mean_mi_bits,
            self.fano_lb,
            self.union_ub,
            self.verdict,
            self.seed
        )
    }
}

/// Full simulation request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub scenario: Scenario,
    pub model: SignalModel,
    pub ensemble: EnsembleSpec,
    pub trials: usize,
    pub seed: u64,
    /// Reuse one matrix for every trial instead of redrawing (deterministic
    /// matrix studies); the default annealed mode redraws per trial.
    #[serde(default)]
    pub fixed_matrix: bool,
}

/// 95% Wilson score interval for e successes in t trials.
pub fn wilson_interval(errors: usize, trials: usize) -> (f64, f64) {
    let t = trials as f64;
    let p = errors as f64 / t;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / t;
    let center = (p + z2 / (2.0 * t)) / denom;
    let half = WILSON_Z * (p * (1.0 - p) / t + z2 / (4.0 * t * t)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

struct TrialOutcome {
    error: bool,
    mi_bits: f64,
}

fn run_trial(config: &SimulationConfig, fixed: Option<&SensingMatrix>, t: u64) -> Result<TrialOutcome, SimError> {
    let scenario = &config.scenario;
    let fresh;
    let matrix = match fixed {
        Some(g) => g,
        None => {
            let matrix_seed = derive_seed(config.seed, stream::TRIAL_MATRIX, t);
            fresh = sample_matrix(&config.ensemble, scenario.m, scenario.n, matrix_seed)?;
            &fresh
        }
    };
    let x = sample_signal(&config.model, scenario.n, derive_seed(config.seed, stream::TRIAL_SIGNAL, t));
    let y = observe(matrix, &x, scenario.snr, derive_seed(config.seed, stream::TRIAL_NOISE, t))?;
    let decoded = ml_decode_exhaustive(&y, matrix, scenario.snr, &Candidates::BinaryHypercube(scenario.n))?;
    let d_hamming = x.iter().zip(decoded.iter()).filter(|(a, b)| a != b).count() as f64;
    // an error is a reconstruction whose distortion exceeds the target:
    // d_H / n > d0, i.e. d_H >= floor(d0 n) + 1; d0 = 0 means any disagreement
    let threshold = (scenario.d0 * scenario.n as f64 + 1e-9).floor() + 1.0;
    let error = d_hamming >= threshold;
    Ok(TrialOutcome {
        error,
        mi_bits: mi_logdet_gaussian(matrix, config.model.alpha, scenario.snr),
    })
}

/// Runs the Monte Carlo sandwich. Trials run in parallel; the result does not
/// depend on the worker count.
pub fn run_simulation(config: &SimulationConfig) -> Result<SimulationReport, SimError> {
    let scenario = &config.scenario;
    if config.model.kind != SignalKind::BernoulliDiscrete {
        return Err(SimError::ContinuousNotSimulated);
    }
    if config.trials == 0 {
        return Err(SimError::NoTrials);
    }
    let candidate_count = Candidates::BinaryHypercube(scenario.n).count();
    if candidate_count > CANDIDATE_BUDGET {
        return Err(SimError::BudgetExceeded { got: candidate_count, budget: CANDIDATE_BUDGET });
    }

    let fixed = if config.fixed_matrix {
        Some(sample_matrix(
            &config.ensemble,
            scenario.m,
            scenario.n,
            derive_seed(config.seed, stream::TRIAL_MATRIX, 0),
        )?)
    } else {
        None
    };

    let outcomes: Vec<Result<TrialOutcome, SimError>> = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(config, fixed.as_ref(), t))
        .collect();

    // index-ordered sequential reduction keeps the sums bit-stable
    let mut errors = 0usize;
    let mut mi_sum = 0.0f64;
    for outcome in outcomes {
        let outcome = outcome?;
        if outcome.error {
            errors += 1;
        }
        mi_sum += outcome.mi_bits;
    }
    let mean_mi_bits = mi_sum / config.trials as f64;

    let p_hat = errors as f64 / config.trials as f64;
    let (ci_low, ci_high) = wilson_interval(errors, config.trials);
    let entropy = binary_entropy(config.model.alpha).expect("alpha validated by the model");
    let fano = fano_lb_finite_n(scenario.n, entropy, 2, scenario.d0, mean_mi_bits);
    let fano_lb = if fano.valid { fano.finite().unwrap_or(0.0) } else { 0.0 };
    let union = achievable_error_ub(scenario.n, scenario.m, scenario.snr, scenario.d0, entropy, 2);
    let union_ub = if union.valid { union.finite().unwrap_or(1.0) } else { 1.0 };

    let verdict = if ci_high < fano_lb {
        Verdict::FanoViolated
    } else if ci_low > union_ub {
        Verdict::UnionViolated
    } else {
        Verdict::Consistent
    };

    Ok(SimulationReport {
        scenario: scenario.clone(),
        model: config.model.clone(),
        trials: config.trials,
        errors,
        p_hat,
        ci_low,
        ci_high,
        mean_mi_bits,
        fano_lb,
        union_ub,
        verdict,
        seed: config.seed,
    })
}

/// Convenience wrapper over [`run_simulation`] in annealed (fresh matrix per
/// trial) mode.
pub fn estimate_error_probability(
    scenario: &Scenario,
    model: &SignalModel,
    ensemble: &EnsembleSpec,
    trials: usize,
    seed: u64,
) -> Result<SimulationReport, SimError> {
    run_simulation(&SimulationConfig {
        scenario: scenario.clone(),
        model: model.clone(),
        ensemble: ensemble.clone(),
        trials,
        seed,
        fixed_matrix: false,
    })
}

/// One row of a capacity sweep: the target capacity c = n/m and the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub c: f64,
    pub n: usize,
    pub m: usize,
    pub report: SimulationReport,
}

/// Sweeps (c, n) cells with m = round(n / c), holding snr, d0, and the priors
/// from the template fixed. Rows are keyed by (c, n) in the given order.
pub fn run_capacity_sweep(
    template: &Scenario,
    model: &SignalModel,
    ensemble: &EnsembleSpec,
    c_values: &[f64],
    n_values: &[usize],
    trials: usize,
    seed: u64,
) -> Result<Vec<SweepEntry>, SimError> {
    let mut out = Vec::with_capacity(c_values.len() * n_values.len());
    for (ci, &c) in c_values.iter().enumerate() {
        for &n in n_values {
            let m = ((n as f64 / c).round() as usize).max(1);
            let scenario = Scenario {
                n,
                m,
                snr: template.snr,
                d0: template.d0,
                distortion: template.distortion,
            };
            let report = run_simulation(&SimulationConfig {
                scenario,
                model: model.clone(),
                ensemble: ensemble.clone(),
                trials,
                seed: derive_seed(seed, stream::TRIAL_MATRIX, (ci * n_values.len() + 1) as u64 * 1_000_003 + n as u64),
                fixed_matrix: false,
            })?;
            out.push(SweepEntry { c, n, m, report });
        }
    }
    Ok(out)
}

/// True when p_hat is non-increasing across the reports within CI overlap:
/// each step either decreases p_hat or keeps overlapping intervals.
pub fn monotone_nonincreasing_within_ci(reports: &[&SimulationReport]) -> bool {
    reports.windows(2).all(|pair| {
        let (a, b) = (pair[0], pair[1]);
        b.p_hat <= a.p_hat || b.ci_low <= a.ci_high
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Distortion;
    use approx::assert_abs_diff_eq;

    fn dense() -> EnsembleSpec {
        EnsembleSpec::gaussian_dense()
    }

    #[test]
    fn signal_sampling_matches_prior() {
        let model = SignalModel::bernoulli(0.5).unwrap();
        let x = sample_signal(&model, 100_000, 1);
        let ones = x.iter().filter(|&&v| v == 1.0).count() as f64 / 100_000.0;
        assert!((ones - 0.5).abs() < 0.01, "fraction of ones = {ones}");

        let model = SignalModel::sparse_gaussian(0.1, 1.0, 0.0).unwrap();
        let x = sample_signal(&model, 100_000, 2);
        let active = x.iter().filter(|&&v| v != 0.0).count() as f64 / 100_000.0;
        assert!((active - 0.1).abs() < 0.01, "nonzero fraction = {active}");

        let a = sample_signal(&model, 64, 7);
        let b = sample_signal(&model, 64, 7);
        assert_eq!(a, b);
    }

    #[test]
    fn observe_is_unbiased_and_unit_noise() {
        let g = sample_matrix(&dense(), 4, 8, 3).unwrap();
        let model = SignalModel::bernoulli(0.5).unwrap();
        let x = sample_signal(&model, 8, 4);

        // SNR = 0: pure standard normal
        let mut sum_sq = 0.0;
        let draws = 25_000usize;
        for s in 0..draws {
            let y = observe(&g, &x, 0.0, s as u64).unwrap();
            sum_sq += y.norm_squared();
        }
        let var = sum_sq / (draws * 4) as f64;
        assert!((var - 1.0).abs() < 0.05, "sample variance = {var}");

        // mean equals sqrt(snr) G x
        let snr = 10.0;
        let mut mean = DVector::zeros(4);
        for s in 0..draws {
            mean += observe(&g, &x, snr, s as u64).unwrap();
        }
        mean /= draws as f64;
        let expect = snr.sqrt() * (&g.entries * &x);
        for i in 0..4 {
            // 3 sigma of the mean of `draws` unit normals
            assert!((mean[i] - expect[i]).abs() < 3.0 / (draws as f64).sqrt() * 1.5);
        }

        let a = observe(&g, &x, snr, 9).unwrap();
        let b = observe(&g, &x, snr, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn decoder_recovers_noiseless_signals() {
        let model = SignalModel::bernoulli(0.5).unwrap();
        for seed in 0..20 {
            let g = sample_matrix(&dense(), 12, 10, seed).unwrap();
            let x = sample_signal(&model, 10, seed + 100);
            let y = 1.0e6f64.sqrt() * (&g.entries * &x)
                + observe(&g, &DVector::zeros(10), 0.0, seed).unwrap();
            let decoded =
                ml_decode_exhaustive(&y, &g, 1.0e6, &Candidates::BinaryHypercube(10)).unwrap();
            assert_eq!(decoded, x, "seed {seed}");
        }
    }

    #[test]
    fn decoder_matches_brute_force_oracle() {
        let model = SignalModel::bernoulli(0.5).unwrap();
        for seed in 0..100u64 {
            let g = sample_matrix(&dense(), 3, 4, seed).unwrap();
            let x = sample_signal(&model, 4, seed + 500);
            let y = observe(&g, &x, 5.0, seed + 900).unwrap();
            let fast = ml_decode_exhaustive(&y, &g, 5.0, &Candidates::BinaryHypercube(4)).unwrap();

            // independent direct-evaluation oracle over all 16 candidates
            let a = g.entries.scale(5.0f64.sqrt());
            let (mut best_e, mut best) = (f64::INFINITY, DVector::zeros(4));
            for mask in 0u32..16 {
                let z = DVector::from_fn(4, |j, _| f64::from(mask >> j & 1));
                let e = (&y - &a * &z).norm_squared();
                if e < best_e {
                    best_e = e;
                    best = z;
                }
            }
            assert_abs_diff_eq!(
                (&y - &a * &fast).norm_squared(),
                best_e,
                epsilon = 1e-9
            );
            assert_eq!(fast, best, "seed {seed}");
        }
    }

    #[test]
    fn decoder_tie_break_is_lexicographic() {
        // SNR = 0 makes every candidate equally good: all-zeros wins
        let g = sample_matrix(&dense(), 3, 5, 1).unwrap();
        let y = observe(&g, &DVector::zeros(5), 0.0, 2).unwrap();
        let decoded = ml_decode_exhaustive(&y, &g, 0.0, &Candidates::BinaryHypercube(5)).unwrap();
        assert_eq!(decoded, DVector::zeros(5));
    }

    #[test]
    fn decoder_enforces_budget() {
        let g = sample_matrix(&dense(), 2, 4, 0).unwrap();
        let y = observe(&g, &DVector::zeros(4), 0.0, 0).unwrap();
        assert!(matches!(
            ml_decode_exhaustive(&y, &g, 1.0, &Candidates::BinaryHypercube(21)),
            Err(SimError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn list_candidates_work() {
        let g = sample_matrix(&dense(), 6, 4, 3).unwrap();
        let model = SignalModel::bernoulli(0.5).unwrap();
        let x = sample_signal(&model, 4, 11);
        let y = observe(&g, &x, 1.0e6, 12).unwrap();
        let list = Candidates::List(vec![DVector::zeros(4), x.clone()]);
        assert_eq!(ml_decode_exhaustive(&y, &g, 1.0e6, &list).unwrap(), x);
    }

    #[test]
    fn wilson_interval_sane() {
        let (lo, hi) = wilson_interval(0, 100);
        assert!(lo.abs() < 1e-12);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && hi > 0.5);
        let (lo, hi) = wilson_interval(100, 100);
        assert!(lo > 0.95);
        assert!(hi > 1.0 - 1e-12 && hi <= 1.0);
    }

    fn quick_config(n: usize, m: usize, snr: f64, d0: f64, trials: usize) -> SimulationConfig {
        SimulationConfig {
            scenario: Scenario::new(n, m, snr, d0, Distortion::Hamming).unwrap(),
            model: SignalModel::bernoulli(0.5).unwrap(),
            ensemble: dense(),
            trials,
            seed: 7,
            fixed_matrix: false,
        }
    }

    #[test]
    fn zero_snr_error_probability_is_near_one() {
        let report = run_simulation(&quick_config(8, 16, 0.0, 0.0, 400)).unwrap();
        assert!(report.p_hat > 0.95, "p_hat = {}", report.p_hat);
        assert!(report.ci_high >= report.fano_lb);
        assert_eq!(report.verdict, Verdict::Consistent);
    }

    #[test]
    fn reports_are_reproducible() {
        let config = quick_config(8, 24, 10.0, 0.0, 300);
        let a = run_simulation(&config).unwrap();
        let b = run_simulation(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn fixed_matrix_mode_differs_from_annealed() {
        let mut config = quick_config(8, 16, 1.0, 0.0, 200);
        let annealed = run_simulation(&config).unwrap();
        config.fixed_matrix = true;
        let fixed = run_simulation(&config).unwrap();
        // annealed MI averages over matrices; fixed-G MI is a single draw
        assert_ne!(annealed.mean_mi_bits, fixed.mean_mi_bits);
    }

    #[test]
    fn exhaustive_beats_thresholding() {
        let config = quick_config(8, 32, 10.0, 0.0, 400);
        let report = run_simulation(&config).unwrap();

        // replay the same trials with the thresholding decoder
        let mut threshold_errors = 0usize;
        for t in 0..config.trials as u64 {
            let g = sample_matrix(
                &config.ensemble,
                config.scenario.m,
                config.scenario.n,
                derive_seed(config.seed, stream::TRIAL_MATRIX, t),
            )
            .unwrap();
            let x = sample_signal(&config.model, 8, derive_seed(config.seed, stream::TRIAL_SIGNAL, t));
            let y = observe(&g, &x, 10.0, derive_seed(config.seed, stream::TRIAL_NOISE, t)).unwrap();
            if threshold_decode(&y, &g, 10.0) != x {
                threshold_errors += 1;
            }
        }
        let (_, ml_hi) = wilson_interval(report.errors, report.trials);
        let (th_lo, _) = wilson_interval(threshold_errors, config.trials);
        assert!(
            report.errors <= threshold_errors || ml_hi >= th_lo,
            "ml errors {} vs threshold {threshold_errors}",
            report.errors
        );
    }

    #[test]
    fn sweep_produces_keyed_rows() {
        let template = Scenario::new(8, 8, 10.0, 0.125, Distortion::Hamming).unwrap();
        let model = SignalModel::bernoulli(0.5).unwrap();
        let rows = run_capacity_sweep(&template, &model, &dense(), &[0.25, 0.5], &[8, 12], 50, 3).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].m, 32);
        assert_eq!(rows[3].m, 24);
        let empty = run_capacity_sweep(&template, &model, &dense(), &[], &[8], 50, 3).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn csv_row_matches_header_arity() {
        let report = run_simulation(&quick_config(8, 16, 1.0, 0.0, 50)).unwrap();
        let header_cols = SimulationReport::csv_header().split(',').count();
        assert_eq!(report.to_csv_row().split(',').count(), header_cols);
    }

    #[test]
    fn continuous_model_is_rejected() {
        let mut config = quick_config(8, 16, 1.0, 0.0, 10);
        config.model = SignalModel::sparse_gaussian(0.25, 1.0, 0.0).unwrap();
        config.scenario.distortion = Distortion::Squared;
        assert!(matches!(run_simulation(&config), Err(SimError::ContinuousNotSimulated)));
    }
}
