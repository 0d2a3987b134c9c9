//! Closed-form sensing-capacity bounds, error-probability bounds, and
//! sensor-count requirements for the fixed-SNR linear observation model.
//!
//! Capacity values are ratios of bits: a numerator of per-sensor mutual
//! information against a rate-distortion denominator. Nonpositive
//! denominators yield an `Unbounded` marker, never an infinite float.
//! Out-of-regime requests come back with `valid = false` and a reason rather
//! than an error, so sweeps over mixed-regime grids stay total. All o(1)
//! terms from the asymptotic statements are dropped.

use crate::infotheory::{
    binary_entropy, log2_1p, overlap_pmf, rd_binary_hamming, rd_mixture_gaussian,
};
use crate::models::{derived_count, BoundResult, BoundValue, Unit};

const LN_2: f64 = std::f64::consts::LN_2;

/// Per-coordinate cover constant K for the continuous (squared-distortion)
/// bounds, in bits.
pub const COVER_K_BITS: f64 = 1.0;

/// Default scale constant for the complexity-regularized comparison bound:
/// 50 (P + sigma)^2 {(1 + p) ln 2 + 4} at unit powers and p = 1.
pub const DEFAULT_C1: f64 = 1.0;
pub const DEFAULT_C2: f64 = 50.0 * 4.0 * (2.0 * LN_2 + 4.0);

/// A capacity bound: value = numerator_bits / denominator_bits, or Unbounded
/// when the denominator is nonpositive.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CapacityBound {
    pub result: BoundResult,
    pub numerator_bits: f64,
    pub denominator_bits: f64,
    pub regime_ok: bool,
}

impl CapacityBound {
    /// Finite value, if any.
    pub fn value(&self) -> Option<f64> {
        self.result.finite()
    }

    pub fn is_valid(&self) -> bool {
        self.result.valid
    }

    fn from_ratio(numerator_bits: f64, denominator_bits: f64, lemma: &str) -> Self {
        let value = if denominator_bits > 0.0 {
            BoundValue::Finite(numerator_bits / denominator_bits)
        } else {
            BoundValue::Unbounded
        };
        CapacityBound {
            result: BoundResult {
                value,
                unit: Unit::CapacityDimsPerSensor,
                lemma: lemma.to_string(),
                clamped: false,
                valid: true,
                reason: None,
            },
            numerator_bits,
            denominator_bits,
            regime_ok: true,
        }
    }

    fn out_of_regime(lemma: &str, reason: impl Into<String>) -> Self {
        CapacityBound {
            result: BoundResult::invalid(Unit::CapacityDimsPerSensor, lemma, reason),
            numerator_bits: f64::NAN,
            denominator_bits: f64::NAN,
            regime_ok: false,
        }
    }
}

fn probability_result(raw: f64, lemma: &str) -> BoundResult {
    let clamped_value = raw.clamp(0.0, 1.0);
    BoundResult {
        value: BoundValue::Finite(clamped_value),
        unit: Unit::Probability,
        lemma: lemma.to_string(),
        clamped: clamped_value != raw,
        valid: true,
        reason: None,
    }
}

/// Upper bound for Bernoulli signals under Hamming distortion with a full
/// diversity Gaussian ensemble: C <= (1/2) log2(1 + alpha SNR) / R_X(d0),
/// for d0 <= alpha.
pub fn ub_capacity_discrete_gaussian(alpha: f64, snr: f64, d0: f64) -> CapacityBound {
    const LEMMA: &str = "ub_discrete_gaussian";
    if snr < 0.0 {
        return CapacityBound::out_of_regime(LEMMA, format!("snr must be >= 0, got {snr}"));
    }
    let denominator = match rd_binary_hamming(alpha, d0) {
        Ok(r) => r,
        Err(e) => return CapacityBound::out_of_regime(LEMMA, e.to_string()),
    };
    CapacityBound::from_ratio(0.5 * log2_1p(alpha * snr), denominator, LEMMA)
}

/// Upper bound for the sparse-Gaussian signal under squared distortion:
/// C <= (1/2) log2(1 + alpha SNR) / (H(alpha) + (alpha/2) log2(alpha / 2 d0)),
/// for 0 < d0 <= alpha / 2. The denominator is the strict-sparse mixture
/// rate-distortion function evaluated at D = 2 d0.
pub fn ub_capacity_continuous_gaussian(alpha: f64, snr: f64, d0: f64) -> CapacityBound {
    const LEMMA: &str = "ub_continuous_gaussian";
    if snr < 0.0 {
        return CapacityBound::out_of_regime(LEMMA, format!("snr must be >= 0, got {snr}"));
    }
    if !(d0 > 0.0 && d0 <= alpha / 2.0) {
        return CapacityBound::out_of_regime(
            LEMMA,
            format!("requires 0 < d0 <= alpha/2 (d0={d0}, alpha={alpha})"),
        );
    }
    let denominator = match rd_mixture_gaussian(alpha, 1.0, 0.0, 2.0 * d0) {
        Ok(r) => r,
        Err(e) => return CapacityBound::out_of_regime(LEMMA, e.to_string()),
    };
    CapacityBound::from_ratio(0.5 * log2_1p(alpha * snr), denominator, LEMMA)
}

/// Achievable (lower) bound for discrete alphabets:
/// C = (1/2) log2(1 + SNR d0 / 2) / (H(X) - d0 log2(|X|-1) - d0 log2(1/d0)),
/// for 0 < d0 <= min_x P_X(x). H(X) = h2(alpha) for the binary prior.
pub fn lb_capacity_discrete(alpha: f64, alphabet_size: usize, snr: f64, d0: f64) -> CapacityBound {
    const LEMMA: &str = "lb_discrete";
    if alphabet_size < 2 {
        return CapacityBound::out_of_regime(LEMMA, "alphabet size must be >= 2");
    }
    if snr < 0.0 {
        return CapacityBound::out_of_regime(LEMMA, format!("snr must be >= 0, got {snr}"));
    }
    let min_px = alpha.min(1.0 - alpha);
    if !(d0 > 0.0 && d0 <= min_px) {
        return CapacityBound::out_of_regime(
            LEMMA,
            format!("requires 0 < d0 <= min_x P_X = {min_px}, got {d0}"),
        );
    }
    let h_x = match binary_entropy(alpha) {
        Ok(h) => h,
        Err(e) => return CapacityBound::out_of_regime(LEMMA, e.to_string()),
    };
    let extra = (alphabet_size - 1) as f64;
    let denominator = h_x - d0 * extra.log2() - d0 * (1.0 / d0).log2();
    CapacityBound::from_ratio(0.5 * log2_1p(snr * d0 / 2.0), denominator, LEMMA)
}

/// Weakly achievable bound for the strict-sparse Gaussian signal:
/// C(2 d0) = (1/2) log2(1 + d0 SNR) / (R_X(d0) - K). The value guarantees
/// reconstruction within distortion 2 d0.
pub fn lb_capacity_continuous(alpha: f64, snr: f64, d0: f64) -> CapacityBound {
    lb_capacity_continuous_scaled(alpha, snr, d0, 1.0)
}

fn lb_capacity_continuous_scaled(alpha: f64, snr: f64, d0: f64, lambda_min: f64) -> CapacityBound {
    const LEMMA: &str = "lb_continuous";
    if snr < 0.0 {
        return CapacityBound::out_of_regime(LEMMA, format!("snr must be >= 0, got {snr}"));
    }
    if !(d0 > 0.0) {
        return CapacityBound::out_of_regime(LEMMA, format!("requires d0 > 0, got {d0}"));
    }
    let rate = match rd_mixture_gaussian(alpha, 1.0, 0.0, d0) {
        Ok(r) => r,
        Err(e) => return CapacityBound::out_of_regime(LEMMA, e.to_string()),
    };
    let denominator = rate - COVER_K_BITS;
    let numerator = 0.5 * log2_1p(d0 * snr * lambda_min);
    let mut bound = CapacityBound::from_ratio(numerator, denominator, LEMMA);
    if denominator <= 0.0 {
        bound.result.valid = false;
        bound.result.reason = Some(format!(
            "R_X(d0) = {rate} bits does not exceed the cover constant K = {COVER_K_BITS}"
        ));
    }
    bound
}

/// Diversity-limited upper bound: the numerator is
/// (1/2) E_j[log2(1 + SNR j / l)] over the hypergeometric overlap J of the
/// row support (size l = round(beta n)) and signal support (k = round(alpha n)).
pub fn ub_capacity_diversity(alpha: f64, beta: f64, snr: f64, d0: f64, n: usize) -> CapacityBound {
    const LEMMA: &str = "ub_diversity";
    if snr < 0.0 {
        return CapacityBound::out_of_regime(LEMMA, format!("snr must be >= 0, got {snr}"));
    }
    if n == 0 {
        return CapacityBound::out_of_regime(LEMMA, "n must be positive");
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return CapacityBound::out_of_regime(LEMMA, format!("beta must lie in (0,1], got {beta}"));
    }
    let denominator = match rd_binary_hamming(alpha, d0) {
        Ok(r) => r,
        Err(e) => return CapacityBound::out_of_regime(LEMMA, e.to_string()),
    };
    let k = derived_count(alpha, n);
    let l = derived_count(beta, n);
    let overlap = match overlap_pmf(n, k, l) {
        Ok(p) => p,
        Err(e) => return CapacityBound::out_of_regime(LEMMA, e.to_string()),
    };
    let numerator = 0.5 * overlap.expect(|j| log2_1p(snr * j as f64 / l as f64));
    CapacityBound::from_ratio(numerator, denominator, LEMMA)
}

/// Achievable bound under correlated sensing gains across columns:
/// lb_capacity_continuous with SNR scaled by the smallest eigenvalue of the
/// normalized column covariance.
pub fn lb_capacity_correlated(alpha: f64, snr: f64, d0: f64, lambda_min: f64) -> CapacityBound {
    const LEMMA: &str = "lb_correlated";
    if !(0.0..=1.0).contains(&lambda_min) {
        return CapacityBound::out_of_regime(
            LEMMA,
            format!("lambda_min must lie in [0,1], got {lambda_min}"),
        );
    }
    let mut bound = lb_capacity_continuous_scaled(alpha, snr, d0, lambda_min);
    bound.result.lemma = LEMMA.to_string();
    bound
}

/// Evaluation mode for the deterministic-matrix bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub enum DeterministicMode {
    /// The printed lemma, verbatim: a sum of m-1 log terms over R - K.
    AsPrinted,
    /// Per-sensor chain matching the derivation: the first-row term plus the
    /// m-1 conditional terms, each halved, normalized by m (R - K).
    #[default]
    Normalized,
}

/// One conditional-entropy increment of the deterministic bound, in bits:
/// log2(1 + SNR alpha (1 - r) + (r alpha SNR / (alpha SNR + 1)) (1 + alpha SNR (1 - r))).
pub fn deterministic_row_term_bits(alpha: f64, snr: f64, r: f64) -> f64 {
    let a = alpha * snr;
    log2_1p(a * (1.0 - r) + (r * a / (a + 1.0)) * (1.0 + a * (1.0 - r)))
}

/// Upper bound for a deterministic sensing matrix from the consecutive-row
/// cross-correlations r_1..r_{m-1}. The denominator rate is the strict-sparse
/// mixture rate-distortion function at d0 minus the cover constant.
pub fn ub_capacity_deterministic(
    cross_correlations: &[f64],
    alpha: f64,
    snr: f64,
    d0: f64,
    m: usize,
    mode: DeterministicMode,
) -> CapacityBound {
    const LEMMA: &str = "ub_deterministic";
    if m < 2 {
        return CapacityBound::out_of_regime(LEMMA, format!("m must be >= 2, got {m}"));
    }
    if cross_correlations.len() != m - 1 {
        return CapacityBound::out_of_regime(
            LEMMA,
            format!("expected m-1 = {} cross-correlations, got {}", m - 1, cross_correlations.len()),
        );
    }
    if let Some(bad) = cross_correlations.iter().find(|r| !(-1.0..=1.0).contains(*r)) {
        return CapacityBound::out_of_regime(LEMMA, format!("cross-correlation {bad} outside [-1, 1]"));
    }
    if snr < 0.0 {
        return CapacityBound::out_of_regime(LEMMA, format!("snr must be >= 0, got {snr}"));
    }
    let rate = match rd_mixture_gaussian(alpha, 1.0, 0.0, d0) {
        Ok(r) => r,
        Err(e) => return CapacityBound::out_of_regime(LEMMA, e.to_string()),
    };
    let chain: f64 = cross_correlations
        .iter()
        .map(|&r| deterministic_row_term_bits(alpha, snr, r))
        .sum();
    let (numerator, denominator) = match mode {
        DeterministicMode::AsPrinted => (chain, rate - COVER_K_BITS),
        DeterministicMode::Normalized => (
            0.5 * log2_1p(alpha * snr) + 0.5 * chain,
            m as f64 * (rate - COVER_K_BITS),
        ),
    };
    CapacityBound::from_ratio(numerator, denominator, LEMMA)
}

/// Cross-correlation of consecutive rows of a length-L FIR Toeplitz sensing
/// matrix downsampled by fraction d: clamp(L (1 - d) / n, 0, 1).
pub fn fir_cross_correlation(filter_length: usize, downsample: f64, n: usize) -> f64 {
    (filter_length as f64 * (1.0 - downsample) / n as f64).clamp(0.0, 1.0)
}

/// Upper bound for the 0/1 ensemble with row supports placed uniformly at
/// random: C <= H(J) / (h2(alpha) - h2(d0)) with J the hypergeometric overlap
/// at the caller-supplied finite n.
pub fn ub_capacity_01_random(alpha: f64, beta: f64, d0: f64, n: usize) -> CapacityBound {
    const LEMMA: &str = "ub_01_random";
    if n == 0 {
        return CapacityBound::out_of_regime(LEMMA, "n must be positive");
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return CapacityBound::out_of_regime(LEMMA, format!("beta must lie in (0,1], got {beta}"));
    }
    if !(d0 >= 0.0 && d0 < alpha) {
        return CapacityBound::out_of_regime(LEMMA, format!("requires d0 < alpha (d0={d0}, alpha={alpha})"));
    }
    let denominator = match rd_binary_hamming(alpha, d0) {
        Ok(r) => r,
        Err(e) => return CapacityBound::out_of_regime(LEMMA, e.to_string()),
    };
    let overlap = match overlap_pmf(n, derived_count(alpha, n), derived_count(beta, n)) {
        Ok(p) => p,
        Err(e) => return CapacityBound::out_of_regime(LEMMA, e.to_string()),
    };
    CapacityBound::from_ratio(overlap.entropy(), denominator, LEMMA)
}

/// Upper bound for the 0/1 ensemble with contiguous (wraparound) row
/// supports: C <= h2(alpha + beta) / (h2(alpha) - h2(d0)), for alpha + beta <= 1.
pub fn ub_capacity_01_contiguous(alpha: f64, beta: f64, d0: f64) -> CapacityBound {
    const LEMMA: &str = "ub_01_contiguous";
    if !(beta > 0.0 && beta <= 1.0) {
        return CapacityBound::out_of_regime(LEMMA, format!("beta must lie in (0,1], got {beta}"));
    }
    if !(d0 >= 0.0 && d0 < alpha) {
        return CapacityBound::out_of_regime(LEMMA, format!("requires d0 < alpha (d0={d0}, alpha={alpha})"));
    }
    if alpha + beta > 1.0 {
        return CapacityBound::out_of_regime(
            LEMMA,
            format!("requires alpha + beta <= 1, got {}", alpha + beta),
        );
    }
    let numerator = binary_entropy(alpha + beta).expect("alpha + beta checked to lie in [0,1]");
    let denominator = match rd_binary_hamming(alpha, d0) {
        Ok(r) => r,
        Err(e) => return CapacityBound::out_of_regime(LEMMA, e.to_string()),
    };
    CapacityBound::from_ratio(numerator, denominator, LEMMA)
}

/// Finite-n Fano-type lower bound on the probability of reconstructing a
/// discrete i.i.d. source outside Hamming distortion d0:
/// P_e >= (n R_X(d0) - I - 1) / (n log2|X| - n (h2(d0) + d0 log2(|X|-1))),
/// clamped to [0, 1]. Mutual information is supplied in bits; substituting
/// an MI upper bound preserves the lower-bound direction.
pub fn fano_lb_finite_n(
    n: usize,
    entropy_bits: f64,
    alphabet_size: usize,
    d0: f64,
    mi_bits: f64,
) -> BoundResult {
    const LEMMA: &str = "fano_finite_n";
    if n == 0 || alphabet_size < 2 {
        return BoundResult::invalid(Unit::Probability, LEMMA, "need n >= 1 and |X| >= 2");
    }
    if mi_bits < 0.0 {
        return BoundResult::invalid(Unit::Probability, LEMMA, format!("mutual information must be >= 0, got {mi_bits}"));
    }
    if !(0.0..=1.0).contains(&d0) {
        return BoundResult::invalid(Unit::Probability, LEMMA, format!("d0={d0} outside [0, 1]"));
    }
    let nf = n as f64;
    let extra = (alphabet_size - 1) as f64;
    let h_d0 = match binary_entropy(d0) {
        Ok(h) => h,
        Err(e) => return BoundResult::invalid(Unit::Probability, LEMMA, e.to_string()),
    };
    let rate = entropy_bits - h_d0 - d0 * extra.log2();
    if rate < 0.0 {
        return BoundResult::invalid(
            Unit::Probability,
            LEMMA,
            format!("d0={d0} outside the lemma regime: R_X(d0) = {rate} < 0"),
        );
    }
    let denominator = nf * (alphabet_size as f64).log2() - nf * (h_d0 + d0 * extra.log2());
    if denominator <= 0.0 {
        return BoundResult::invalid(Unit::Probability, LEMMA, "degenerate denominator");
    }
    probability_result((nf * rate - mi_bits - 1.0) / denominator, LEMMA)
}

/// Asymptotic Fano-type bound P_e >= (R - K - I/n) / R, clamped to [0, 1].
/// The o(1) term is omitted.
pub fn fano_lb_asymptotic(rate_bits: f64, k_bits: f64, mi_per_dim_bits: f64) -> BoundResult {
    const LEMMA: &str = "fano_asymptotic";
    if !(rate_bits > 0.0) {
        return BoundResult::invalid(Unit::Probability, LEMMA, format!("rate must be > 0, got {rate_bits}"));
    }
    probability_result((rate_bits - k_bits - mi_per_dim_bits) / rate_bits, LEMMA)
}

/// Exact-recovery corollary: Pr(X^n != Xhat^n) >= (H - I/n - 1/n) / H,
/// clamped to [0, 1]. The o(1) terms are omitted.
pub fn fano_lb_exact_recovery(n: usize, entropy_bits: f64, mi_bits: f64) -> BoundResult {
    const LEMMA: &str = "fano_exact_recovery";
    if !(entropy_bits > 0.0) {
        return BoundResult::invalid(Unit::Probability, LEMMA, format!("entropy must be > 0, got {entropy_bits}"));
    }
    if n == 0 {
        return BoundResult::invalid(Unit::Probability, LEMMA, "n must be positive");
    }
    let nf = n as f64;
    probability_result((entropy_bits - mi_bits / nf - 1.0 / nf) / entropy_bits, LEMMA)
}

/// Chi-square union bound on the error probability of exhaustive ML
/// detection: P_e <= 2^{-(m/2) log2(1 + SNR d0/2) + n (H - d0 log2(|X|-1) - d0 log2(1/d0))},
/// capped at 1. A nonnegative exponent makes the bound vacuous (= 1).
pub fn achievable_error_ub(
    n: usize,
    m: usize,
    snr: f64,
    d0: f64,
    entropy_bits: f64,
    alphabet_size: usize,
) -> BoundResult {
    const LEMMA: &str = "achievable_union";
    if n == 0 || m == 0 || alphabet_size < 2 {
        return BoundResult::invalid(Unit::Probability, LEMMA, "need n, m >= 1 and |X| >= 2");
    }
    if snr < 0.0 {
        return BoundResult::invalid(Unit::Probability, LEMMA, format!("snr must be >= 0, got {snr}"));
    }
    let min_regime = 1.0; // caller checks d0 <= min_x P_X; d0 in [0,1] enforced here
    if !(0.0..=min_regime).contains(&d0) {
        return BoundResult::invalid(Unit::Probability, LEMMA, format!("d0={d0} outside [0, 1]"));
    }
    let extra = (alphabet_size - 1) as f64;
    let d0_log_inv = if d0 > 0.0 { d0 * (1.0 / d0).log2() } else { 0.0 };
    let exponent = -(m as f64 / 2.0) * log2_1p(snr * d0 / 2.0)
        + n as f64 * (entropy_bits - d0 * extra.log2() - d0_log_inv);
    let mut result = probability_result(exponent.exp2().min(1.0), LEMMA);
    result.clamped = exponent >= 0.0;
    result
}

/// Sign-pattern recovery lower bound:
/// P_e >= (H(U) - I(U;Y|G) - 1) / (n log2 3), clamped to [0, 1]. Callers may
/// plug in I(X;Y|G) for I(U;Y|G): the chain I(U;Y|G) = I(X;Y|G) - I(X;Y|G,U)
/// makes that an upper bound on I(U;Y|G), which preserves the direction.
pub fn sign_pattern_error_lb(n: usize, entropy_u_bits: f64, mi_u_bits: f64) -> BoundResult {
    const LEMMA: &str = "sign_pattern";
    if n == 0 {
        return BoundResult::invalid(Unit::Probability, LEMMA, "n must be positive");
    }
    if entropy_u_bits < 0.0 {
        return BoundResult::invalid(Unit::Probability, LEMMA, format!("entropy must be >= 0, got {entropy_u_bits}"));
    }
    probability_result(
        (entropy_u_bits - mi_u_bits - 1.0) / (n as f64 * 3f64.log2()),
        LEMMA,
    )
}

/// Minimum-sensor requirements: the achievability-derived count against the
/// complexity-regularized estimation count, plus both scaling orders.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SensorComparison {
    /// m >= 2 (log2(1/eps) + n (R_X(d0) - K)) / log2(1 + d0 SNR / 2).
    pub ours: BoundResult,
    /// m >= c1 c2 alpha n log2(n) / (d0 eps).
    pub theirs: BoundResult,
    /// Scaling order n h2(alpha).
    pub order_ours: f64,
    /// Scaling order alpha n log2(n).
    pub order_theirs: f64,
}

pub fn min_sensors_comparison(
    n: usize,
    alpha: f64,
    d0: f64,
    snr: f64,
    epsilon: f64,
    c1: f64,
    c2: f64,
) -> Result<SensorComparison, crate::infotheory::InfoError> {
    use crate::infotheory::InfoError;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(InfoError::ProbabilityOutOfDomain(epsilon));
    }
    let rate = rd_mixture_gaussian(alpha, 1.0, 0.0, d0)?;
    let nf = n as f64;
    let ours_raw = 2.0 * ((1.0 / epsilon).log2() + nf * (rate - COVER_K_BITS))
        / log2_1p(d0 * snr / 2.0);
    let ours = BoundResult {
        value: BoundValue::Finite(ours_raw.max(0.0)),
        unit: Unit::SensorCount,
        lemma: "min_sensors_achievability".to_string(),
        clamped: ours_raw < 0.0,
        valid: rate > COVER_K_BITS,
        reason: (rate <= COVER_K_BITS).then(|| format!("R_X(d0) = {rate} bits <= K")),
    };
    let theirs = BoundResult {
        value: BoundValue::Finite(c1 * c2 * alpha * nf * nf.log2() / (d0 * epsilon)),
        unit: Unit::SensorCount,
        lemma: "min_sensors_complexity_regularized".to_string(),
        clamped: false,
        valid: true,
        reason: None,
    };
    Ok(SensorComparison {
        ours,
        theirs,
        order_ours: nf * binary_entropy(alpha)?,
        order_theirs: alpha * nf * nf.log2(),
    })
}

/// Location of the sparsity at which the two scaling orders cross:
/// h2(alpha) = alpha log2(n). Below the crossing the complexity-regularized
/// order is smaller; above it the achievability order is.
pub fn scaling_order_crossing(n: usize) -> f64 {
    let target = (n as f64).log2();
    let gap = |alpha: f64| binary_entropy(alpha).unwrap() - alpha * target;
    // h2(alpha)/alpha decreases in alpha, so gap has a single sign change.
    let (mut lo, mut hi) = (1e-12, 0.5);
    debug_assert!(gap(lo) > 0.0 && gap(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
