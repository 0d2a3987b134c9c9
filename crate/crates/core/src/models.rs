//! Domain types shared by every other module: signal priors, sensing-matrix
//! ensembles, scenarios, and bound results.
//!
//! All types are immutable values and freely shareable across threads.
//! Entropies, rates, and mutual informations are in bits (base-2 logs)
//! throughout. SNR is stored linear; dB conversion is a CLI concern.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Prior on the signal X.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalModel {
    pub kind: SignalKind,
    /// Sparsity ratio, in (0, 1/2].
    pub alpha: f64,
    /// Active-component variance (SparseGaussian only).
    #[serde(default = "one")]
    pub sigma1_sq: f64,
    /// Inactive-component variance.
    #[serde(default)]
    pub sigma0_sq: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignalKind {
    BernoulliDiscrete,
    SparseGaussian,
}

impl SignalModel {
    pub fn bernoulli(alpha: f64) -> Result<Self, ModelError> {
        Self::new(SignalKind::BernoulliDiscrete, alpha, 1.0, 0.0)
    }

    pub fn sparse_gaussian(alpha: f64, sigma1_sq: f64, sigma0_sq: f64) -> Result<Self, ModelError> {
        Self::new(SignalKind::SparseGaussian, alpha, sigma1_sq, sigma0_sq)
    }

    pub fn new(
        kind: SignalKind,
        alpha: f64,
        sigma1_sq: f64,
        sigma0_sq: f64,
    ) -> Result<Self, ModelError> {
        if !(alpha > 0.0 && alpha <= 0.5) {
            return Err(ModelError::AlphaOutOfRange(alpha));
        }
        if !(sigma1_sq > 0.0) {
            return Err(ModelError::BadVariance("sigma1_sq must be > 0".into()));
        }
        if !(sigma0_sq >= 0.0 && sigma0_sq <= sigma1_sq) {
            return Err(ModelError::BadVariance(
                "sigma0_sq must satisfy 0 <= sigma0_sq <= sigma1_sq".into(),
            ));
        }
        Ok(Self { kind, alpha, sigma1_sq, sigma0_sq })
    }
}

/// Sensing-matrix ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    /// Diversity ratio, in (0, 1].
    pub beta: f64,
    /// Filter length L (ToeplitzFIR only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filter_length: Option<usize>,
    /// Downsampling fraction d in [0, 1] (ToeplitzFIR only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub downsample: Option<f64>,
    /// Symmetric PSD column covariance with unit diagonal (CorrelatedColumns only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column_covariance: Option<Vec<Vec<f64>>>,
    /// Explicit real matrix, row-major (Explicit only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EnsembleKind {
    GaussianDense,
    GaussianDiluted,
    ZeroOneRandom,
    ZeroOneContiguous,
    ToeplitzFIR,
    CorrelatedColumns,
    Explicit,
}

impl EnsembleSpec {
    pub fn gaussian_dense() -> Self {
        Self::bare(EnsembleKind::GaussianDense, 1.0)
    }

    pub fn gaussian_diluted(beta: f64) -> Self {
        Self::bare(EnsembleKind::GaussianDiluted, beta)
    }

    pub fn zero_one_random(beta: f64) -> Self {
        Self::bare(EnsembleKind::ZeroOneRandom, beta)
    }

    pub fn zero_one_contiguous(beta: f64) -> Self {
        Self::bare(EnsembleKind::ZeroOneContiguous, beta)
    }

    pub fn toeplitz_fir(filter_length: usize, downsample: f64) -> Self {
        Self {
            filter_length: Some(filter_length),
            downsample: Some(downsample),
            ..Self::bare(EnsembleKind::ToeplitzFIR, 1.0)
        }
    }

    pub fn correlated_columns(column_covariance: Vec<Vec<f64>>) -> Self {
        Self {
            column_covariance: Some(column_covariance),
            ..Self::bare(EnsembleKind::CorrelatedColumns, 1.0)
        }
    }

    pub fn explicit(matrix: Vec<Vec<f64>>) -> Self {
        Self {
            matrix: Some(matrix),
            ..Self::bare(EnsembleKind::Explicit, 1.0)
        }
    }

    fn bare(kind: EnsembleKind, beta: f64) -> Self {
        Self {
            kind,
            beta,
            filter_length: None,
            downsample: None,
            column_covariance: None,
            matrix: None,
        }
    }

    pub fn check(&self) -> Result<(), ModelError> {
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(ModelError::BetaOutOfRange(self.beta));
        }
        if self.kind == EnsembleKind::ToeplitzFIR {
            let l = self.filter_length.ok_or(ModelError::MissingField("filter_length"))?;
            if l == 0 {
                return Err(ModelError::MissingField("filter_length"));
            }
            let d = self.downsample.ok_or(ModelError::MissingField("downsample"))?;
            if !(0.0..=1.0).contains(&d) {
                return Err(ModelError::DownsampleOutOfRange(d));
            }
        }
        if self.kind == EnsembleKind::CorrelatedColumns && self.column_covariance.is_none() {
            return Err(ModelError::MissingField("column_covariance"));
        }
        if self.kind == EnsembleKind::Explicit && self.matrix.is_none() {
            return Err(ModelError::MissingField("matrix"));
        }
        Ok(())
    }
}

/// Distortion measure for reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Distortion {
    Hamming,
    Squared,
}

/// A concrete problem instance: dimensions, SNR, and distortion target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    /// Signal dimension.
    pub n: usize,
    /// Sensor count.
    pub m: usize,
    /// Linear signal-to-noise ratio, >= 0.
    pub snr: f64,
    /// Average distortion level, >= 0.
    pub d0: f64,
    pub distortion: Distortion,
}

impl Scenario {
    pub fn new(n: usize, m: usize, snr: f64, d0: f64, distortion: Distortion) -> Result<Self, ModelError> {
        if n == 0 || m == 0 {
            return Err(ModelError::ZeroDimension);
        }
        if !(snr >= 0.0) {
            return Err(ModelError::NegativeSnr(snr));
        }
        if !(d0 >= 0.0) {
            return Err(ModelError::NegativeDistortion(d0));
        }
        Ok(Self { n, m, snr, d0, distortion })
    }

    /// Expected support size k = round(alpha n), at least 1.
    pub fn sparsity_count(&self, alpha: f64) -> usize {
        derived_count(alpha, self.n)
    }

    /// Per-row support size l = round(beta n), at least 1.
    pub fn diversity_count(&self, beta: f64) -> usize {
        derived_count(beta, self.n)
    }
}

/// round(ratio * n) clamped to [1, n]. Counts are fixed deterministically.
pub fn derived_count(ratio: f64, n: usize) -> usize {
    ((ratio * n as f64).round() as usize).clamp(1, n)
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("alpha must lie in (0, 1/2], got {0}")]
    AlphaOutOfRange(f64),
    #[error("beta must lie in (0, 1], got {0}")]
    BetaOutOfRange(f64),
    #[error("downsample fraction must lie in [0, 1], got {0}")]
    DownsampleOutOfRange(f64),
    #[error("{0}")]
    BadVariance(String),
    #[error("n and m must be positive")]
    ZeroDimension,
    #[error("snr must be >= 0, got {0}")]
    NegativeSnr(f64),
    #[error("d0 must be >= 0, got {0}")]
    NegativeDistortion(f64),
    #[error("ensemble spec is missing required field `{0}`")]
    MissingField(&'static str),
}

/// Unit of a bound value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Unit {
    Bits,
    CapacityDimsPerSensor,
    Probability,
    SensorCount,
}

/// A bound value; `Unbounded` marks a nonpositive denominator rather than an
/// infinite float so CSV output stays parseable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BoundValue {
    Finite(f64),
    Unbounded,
}

impl BoundValue {
    pub fn finite(&self) -> Option<f64> {
        match self {
            BoundValue::Finite(v) => Some(*v),
            BoundValue::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, BoundValue::Unbounded)
    }
}

/// A bound with provenance and validity metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub value: BoundValue,
    pub unit: Unit,
    /// Which lemma or formula produced the value.
    pub lemma: String,
    /// True whenever the raw value was clamped into its domain.
    pub clamped: bool,
    pub valid: bool,
    /// Non-empty whenever valid is false.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl BoundResult {
    pub fn finite(&self) -> Option<f64> {
        self.value.finite()
    }

    pub(crate) fn invalid(unit: Unit, lemma: &str, reason: impl Into<String>) -> Self {
        Self {
            value: BoundValue::Finite(0.0),
            unit,
            lemma: lemma.to_string(),
            clamped: false,
            valid: false,
            reason: Some(reason.into()),
        }
    }
}

/// One violated regime constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Lemma or constraint the configuration falls outside of.
    pub constraint: String,
    pub message: String,
}

/// Report-only validation outcome: an empty list means every downstream bound
/// is in-regime.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn violation(&mut self, constraint: &str, message: impl Into<String>) {
        self.violations.push(Violation { constraint: constraint.to_string(), message: message.into() });
    }

    fn warning(&mut self, constraint: &str, message: impl Into<String>) {
        self.warnings.push(Violation { constraint: constraint.to_string(), message: message.into() });
    }
}

/// Checks every lemma precondition the bound evaluators rely on and lists the
/// violated ones. Report-only: nothing here is an error.
pub fn validate(scenario: &Scenario, model: &SignalModel, ensemble: &EnsembleSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let alpha = model.alpha;
    let d0 = scenario.d0;

    match scenario.distortion {
        Distortion::Hamming => {
            if model.kind != SignalKind::BernoulliDiscrete {
                report.violation("distortion", "Hamming distortion requires the BernoulliDiscrete model");
            }
            if !(0.0..=1.0).contains(&d0) {
                report.violation("distortion", format!("Hamming requires d0 in [0,1], got {d0}"));
            }
            if d0 > alpha {
                report.violation(
                    "ub_discrete_gaussian",
                    format!("upper bound requires d0 <= alpha (d0={d0}, alpha={alpha})"),
                );
            }
            let min_px = alpha.min(1.0 - alpha);
            if d0 > min_px {
                report.violation(
                    "lb_discrete",
                    format!("achievable bound requires d0 <= min(alpha, 1-alpha) = {min_px}, got {d0}"),
                );
            }
        }
        Distortion::Squared => {
            if model.kind != SignalKind::SparseGaussian {
                report.violation("distortion", "squared distortion requires the SparseGaussian model");
            }
            if d0 > alpha / 2.0 {
                report.violation(
                    "ub_continuous_gaussian",
                    format!("upper bound requires d0 <= alpha/2 (d0={d0}, alpha={alpha})"),
                );
            }
            let d_max = (1.0 - alpha) * model.sigma0_sq + alpha * model.sigma1_sq;
            if d0 > d_max {
                report.violation(
                    "rate-distortion",
                    format!("d0={d0} exceeds the mixture rate-distortion domain bound {d_max}"),
                );
            }
        }
    }

    if ensemble.check().is_err() {
        report.violation("ensemble", "ensemble spec is incomplete or out of range");
        return report;
    }

    if ensemble.kind == EnsembleKind::ZeroOneContiguous && alpha + ensemble.beta > 1.0 {
        report.violation(
            "ub_01_contiguous",
            format!("contiguous 0/1 bound needs alpha + beta <= 1, got {}", alpha + ensemble.beta),
        );
    }

    if ensemble.kind == EnsembleKind::ToeplitzFIR {
        let l = ensemble.filter_length.unwrap_or(0);
        if l > scenario.n {
            report.violation("ToeplitzFIR", format!("filter length {l} exceeds n={}", scenario.n));
        } else {
            let d = ensemble.downsample.unwrap_or(0.0);
            let stride = crate::ensembles::fir_stride(l, d);
            let needed = (scenario.n - l) / stride + 1;
            if scenario.m < needed {
                report.warning(
                    "ToeplitzFIR coverage",
                    format!("m={} rows do not cover the field; need m >= {needed} at stride {stride}", scenario.m),
                );
            }
        }
    }

    report
}
