//! Entropies, rate-distortion functions, and the hypergeometric overlap
//! distribution underlying every capacity bound.
//!
//! Everything here is a pure function returning bits. Binomial coefficients
//! go through log-gamma so the overlap pmf stays stable up to n ~ 10^4.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

const LN_2: f64 = std::f64::consts::LN_2;

#[derive(Debug, Error)]
pub enum InfoError {
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfDomain(f64),
    #[error("pmf is not normalized: sum = {0}")]
    NotNormalized(f64),
    #[error("pmf entry {0} is negative")]
    NegativeMass(f64),
    #[error("invalid counts: need 1 <= k, l <= n, got n={n}, k={k}, l={l}")]
    InvalidCounts { n: usize, k: usize, l: usize },
    #[error("distortion {d0} outside the regime [0, {max}]")]
    DistortionOutOfRegime { d0: f64, max: f64 },
    #[error("alpha {0} outside (0, 1/2]")]
    AlphaOutOfRange(f64),
    #[error("mean-squared distortion {d} outside (0, {max}]")]
    MsDistortionOutOfRange { d: f64, max: f64 },
    #[error("alphabet size must be >= 2, got {0}")]
    AlphabetTooSmall(usize),
}

/// log2(x) via the natural log, exact at x = 1.
#[inline]
fn log2(x: f64) -> f64 {
    x.ln() / LN_2
}

/// log2(1 + x), accurate for tiny x.
#[inline]
pub(crate) fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / LN_2
}

/// Binary entropy h2(p) in bits, with 0 log 0 = 0.
///
/// Uses ln_1p for the (1 - p) term so extreme sparsity ratios (p ~ 1e-12)
/// keep full relative accuracy.
pub fn binary_entropy(p: f64) -> Result<f64, InfoError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(InfoError::ProbabilityOutOfDomain(p));
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-(p * p.ln() + (1.0 - p) * (-p).ln_1p()) / LN_2)
}

/// Discrete entropy of a pmf in bits.
pub fn entropy_pmf(pmf: &[f64]) -> Result<f64, InfoError> {
    let mut sum = 0.0;
    for &p in pmf {
        if p < 0.0 {
            return Err(InfoError::NegativeMass(p));
        }
        sum += p;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(InfoError::NotNormalized(sum));
    }
    Ok(pmf.iter().filter(|&&p| p > 0.0).map(|&p| -p * log2(p)).sum())
}

/// ln C(n, k).
fn ln_choose(n: usize, k: usize) -> f64 {
    debug_assert!(k <= n);
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

/// log2 C(n, k).
pub fn log2_choose(n: usize, k: usize) -> f64 {
    ln_choose(n, k) / LN_2
}

/// Hypergeometric distribution of the overlap J between a k-subset and an
/// l-subset of n positions: Pr(j) = C(k,j) C(n-k,l-j) / C(n,l) on
/// j in [max(0, k+l-n), min(k, l)].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapDistribution {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    /// First overlap value carrying mass: max(0, k+l-n).
    pub j_min: usize,
    pub pmf: Vec<f64>,
}

impl OverlapDistribution {
    pub fn j_max(&self) -> usize {
        self.j_min + self.pmf.len() - 1
    }

    pub fn mean(&self) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .map(|(i, &p)| (self.j_min + i) as f64 * p)
            .sum()
    }

    /// Entropy H(J) in bits.
    pub fn entropy(&self) -> f64 {
        entropy_pmf(&self.pmf).expect("overlap pmf is normalized by construction")
    }

    /// E_j[f(j)] over the overlap distribution.
    pub fn expect(&self, f: impl Fn(usize) -> f64) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .map(|(i, &p)| p * f(self.j_min + i))
            .sum()
    }
}

/// Exact hypergeometric overlap pmf, computed via log-gamma and renormalized
/// to kill the residual rounding in the log-domain evaluation.
pub fn overlap_pmf(n: usize, k: usize, l: usize) -> Result<OverlapDistribution, InfoError> {
    if n == 0 || k == 0 || l == 0 || k > n || l > n {
        return Err(InfoError::InvalidCounts { n, k, l });
    }
    let j_min = (k + l).saturating_sub(n);
    let j_max = k.min(l);
    let ln_denom = ln_choose(n, l);
    let mut pmf: Vec<f64> = (j_min..=j_max)
        .map(|j| (ln_choose(k, j) + ln_choose(n - k, l - j) - ln_denom).exp())
        .collect();
    let sum: f64 = pmf.iter().sum();
    for p in &mut pmf {
        *p /= sum;
    }
    Ok(OverlapDistribution { n, k, l, j_min, pmf })
}

/// Binary rate-distortion function under Hamming distortion:
/// R(d0) = h2(alpha) - h2(d0), valid for 0 <= d0 <= alpha <= 1/2.
pub fn rd_binary_hamming(alpha: f64, d0: f64) -> Result<f64, InfoError> {
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(InfoError::AlphaOutOfRange(alpha));
    }
    if !(0.0..=alpha).contains(&d0) {
        return Err(InfoError::DistortionOutOfRegime { d0, max: alpha });
    }
    Ok(binary_entropy(alpha)? - binary_entropy(d0)?)
}

/// Rate-distortion function of a two-component Gaussian mixture under squared
/// distortion, in bits. The strict-sparse branch is selected when
/// sigma0_sq = 0. The printed piecewise form is kept as-is: it equals
/// h2(alpha) at the maximal distortion rather than 0.
pub fn rd_mixture_gaussian(alpha: f64, sigma1_sq: f64, sigma0_sq: f64, d: f64) -> Result<f64, InfoError> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(InfoError::AlphaOutOfRange(alpha));
    }
    let d_max = (1.0 - alpha) * sigma0_sq + alpha * sigma1_sq;
    if !(d > 0.0 && d <= d_max) {
        return Err(InfoError::MsDistortionOutOfRange { d, max: d_max });
    }
    let h_alpha = if alpha == 1.0 { 0.0 } else { binary_entropy(alpha)? };
    if sigma0_sq == 0.0 {
        // strict sparsity: R = H(alpha) + (alpha/2) log2(alpha sigma1^2 / D)
        return Ok(h_alpha + alpha / 2.0 * log2(alpha * sigma1_sq / d));
    }
    if d < sigma0_sq {
        Ok(h_alpha
            + (1.0 - alpha) / 2.0 * log2(sigma0_sq / d)
            + alpha / 2.0 * log2(sigma1_sq / d))
    } else {
        Ok(h_alpha + alpha / 2.0 * log2(alpha * sigma1_sq / (d - (1.0 - alpha) * sigma0_sq)))
    }
}

/// Per-dimension log neighbor count K(n, d0) of a rate-distortion cover, in
/// bits: pinned at 1 bit (= log2 2) for squared distortion, 0 for the
/// finite-n discrete Hamming bound which carries no such term.
pub fn cover_constant_k(distortion: crate::models::Distortion) -> f64 {
    match distortion {
        crate::models::Distortion::Squared => 1.0,
        crate::models::Distortion::Hamming => 0.0,
    }
}

/// Log-size of a Hamming ball of normalized radius d0 in an alphabet of the
/// given size: the exact log2 of C(n, round(d0 n)) (|X|-1)^{n d0} and its
/// n (h2(d0) + d0 log2(|X|-1)) entropy upper bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HammingBallLogSize {
    pub exact_bits: f64,
    pub entropy_bound_bits: f64,
}

pub fn hamming_ball_log_size(
    n: usize,
    d0: f64,
    alphabet_size: usize,
) -> Result<HammingBallLogSize, InfoError> {
    if alphabet_size < 2 {
        return Err(InfoError::AlphabetTooSmall(alphabet_size));
    }
    if !(0.0..=1.0).contains(&d0) {
        return Err(InfoError::DistortionOutOfRegime { d0, max: 1.0 });
    }
    let radius = (d0 * n as f64).round() as usize;
    let log_extra = (alphabet_size - 1) as f64;
    let exact_bits = log2_choose(n, radius.min(n)) + n as f64 * d0 * log2(log_extra);
    let entropy_bound_bits = n as f64 * (binary_entropy(d0)? + d0 * log2(log_extra));
    Ok(HammingBallLogSize { exact_bits, entropy_bound_bits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn binary_entropy_spot_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // h2(0.11) computed independently to high precision
        assert_abs_diff_eq!(binary_entropy(0.11).unwrap(), 0.4999159581645280, epsilon = 1e-12);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn entropy_pmf_spot_values() {
        let h = entropy_pmf(&[1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0]).unwrap();
        assert_abs_diff_eq!(h, 1.2516291673878228, epsilon = 1e-12);
        assert_eq!(entropy_pmf(&[1.0, 0.0, 0.0]).unwrap(), 0.0);
        assert_abs_diff_eq!(entropy_pmf(&[0.125; 8]).unwrap(), 3.0, epsilon = 1e-12);
        assert!(entropy_pmf(&[0.5, 0.4]).is_err());
    }

    #[test]
    fn overlap_pmf_small_case() {
        let d = overlap_pmf(4, 2, 2).unwrap();
        assert_eq!(d.j_min, 0);
        assert_abs_diff_eq!(d.pmf[0], 1.0 / 6.0, epsilon = 1e-13);
        assert_abs_diff_eq!(d.pmf[1], 2.0 / 3.0, epsilon = 1e-13);
        assert_abs_diff_eq!(d.pmf[2], 1.0 / 6.0, epsilon = 1e-13);
        assert_abs_diff_eq!(d.mean(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn overlap_pmf_full_diversity_is_point_mass() {
        let d = overlap_pmf(10, 3, 10).unwrap();
        assert_eq!(d.j_min, 3);
        assert_eq!(d.pmf.len(), 1);
        assert_eq!(d.pmf[0], 1.0);
    }

    #[test]
    fn overlap_pmf_rejects_bad_counts() {
        assert!(overlap_pmf(4, 0, 2).is_err());
        assert!(overlap_pmf(4, 5, 2).is_err());
    }

    #[test]
    fn rd_binary_hamming_spot_values() {
        assert_eq!(rd_binary_hamming(0.5, 0.0).unwrap(), 1.0);
        assert_abs_diff_eq!(rd_binary_hamming(0.5, 0.11).unwrap(), 0.5000840418354720, epsilon = 1e-12);
        assert_eq!(rd_binary_hamming(0.1, 0.1).unwrap(), 0.0);
        assert!(rd_binary_hamming(0.1, 0.2).is_err());
    }

    #[test]
    fn rd_mixture_spot_values() {
        // alpha = 1 reduces to the pure Gaussian (1/2) log2(sigma^2 / D)
        assert_abs_diff_eq!(rd_mixture_gaussian(1.0, 1.0, 0.0, 0.25).unwrap(), 1.0, epsilon = 1e-12);
        // H(0.5) + 0.25 log2(0.5/0.125) = 1.5
        assert_abs_diff_eq!(rd_mixture_gaussian(0.5, 1.0, 0.0, 0.125).unwrap(), 1.5, epsilon = 1e-12);
        // at the upper edge D = alpha sigma1^2 the log term vanishes
        let h = binary_entropy(0.3).unwrap();
        assert_abs_diff_eq!(rd_mixture_gaussian(0.3, 1.0, 0.0, 0.3).unwrap(), h, epsilon = 1e-12);
        assert!(rd_mixture_gaussian(0.5, 1.0, 0.0, 0.6).is_err());
        assert!(rd_mixture_gaussian(0.5, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn rd_binary_strictly_decreasing_in_d0() {
        let alpha = 0.37;
        let mut prev = rd_binary_hamming(alpha, 0.0).unwrap();
        for i in 1..=100 {
            let d0 = alpha * i as f64 / 100.0;
            let r = rd_binary_hamming(alpha, d0).unwrap();
            assert!(r < prev, "not decreasing at d0={d0}");
            prev = r;
        }
        assert_eq!(prev, 0.0);
    }

    #[test]
    fn cover_constant_values() {
        assert_eq!(cover_constant_k(crate::models::Distortion::Squared), 1.0);
        assert_eq!(cover_constant_k(crate::models::Distortion::Hamming), 0.0);
    }

    #[test]
    fn hamming_ball_spot_values() {
        let b = hamming_ball_log_size(10, 0.0, 2).unwrap();
        assert_eq!(b.exact_bits, 0.0);
        assert_eq!(b.entropy_bound_bits, 0.0);

        let b = hamming_ball_log_size(10, 0.1, 2).unwrap();
        assert_abs_diff_eq!(b.exact_bits, 10.0f64.log2(), epsilon = 1e-12);
        assert_abs_diff_eq!(b.entropy_bound_bits, 10.0 * binary_entropy(0.1).unwrap(), epsilon = 1e-12);
        assert!(b.entropy_bound_bits >= b.exact_bits);
    }
}
