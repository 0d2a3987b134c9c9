//! Sensing-matrix samplers and numeric mutual-information evaluators.
//!
//! Every sampler is pure given `(spec, m, n, seed)`: row `i` draws from its
//! own keyed stream, so results are independent of evaluation order and
//! bit-identical across runs and thread counts. All rows are l2-normalized
//! after sampling.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::infotheory::log2_1p;
use crate::models::{derived_count, EnsembleKind, EnsembleSpec, ModelError};
use crate::rng::{keyed_rng, stream};

#[derive(Debug, Error)]
pub enum EnsembleError {
    #[error(transparent)]
    Spec(#[from] ModelError),
    #[error("matrix dimensions must be positive, got m={m}, n={n}")]
    ZeroDimension { m: usize, n: usize },
    #[error("filter length {filter_length} exceeds n={n}")]
    FilterTooLong { filter_length: usize, n: usize },
    #[error("row {row} of the FIR matrix would end at {end} > n={n}; reduce m or the stride")]
    FirOutOfField { row: usize, end: usize, n: usize },
    #[error("explicit matrix has {got} rows/cols, expected {expected}")]
    ShapeMismatch { got: String, expected: String },
    #[error("row {0} has zero norm and cannot be normalized")]
    ZeroRow(usize),
    #[error("column covariance must be symmetric within 1e-9")]
    NotSymmetric,
    #[error("column covariance is not positive semidefinite: eigenvalue {0}")]
    NotPsd(f64),
    #[error("column covariance must have a unit diagonal, got {0}")]
    DiagonalNotUnit(f64),
}

/// A sampled sensing matrix with unit-l2-norm rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SensingMatrix {
    pub entries: DMatrix<f64>,
    pub ensemble: EnsembleSpec,
    pub seed: u64,
}

impl SensingMatrix {
    pub fn m(&self) -> usize {
        self.entries.nrows()
    }

    pub fn n(&self) -> usize {
        self.entries.ncols()
    }

    /// CSV serialization: a `m,n,ensemble` header line, then the row-major
    /// entries one row per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n,ensemble\n");
        out.push_str(&format!("{},{},{:?}\n", self.m(), self.n(), self.ensemble.kind));
        for i in 0..self.m() {
            let row: Vec<String> = (0..self.n()).map(|j| format!("{}", self.entries[(i, j)])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Shift between consecutive rows of the FIR ensemble for a downsampling
/// fraction d: s = max(1, round(1/(1-d))); full downsampling (d = 1) means
/// disjoint supports, s = L.
pub fn fir_stride(filter_length: usize, downsample: f64) -> usize {
    if downsample >= 1.0 {
        return filter_length.max(1);
    }
    ((1.0 / (1.0 - downsample)).round() as usize).max(1)
}

fn normalize_rows(entries: &mut DMatrix<f64>) -> Result<(), EnsembleError> {
    for i in 0..entries.nrows() {
        let norm = entries.row(i).norm();
        if norm < 1e-12 {
            return Err(EnsembleError::ZeroRow(i));
        }
        let mut row = entries.row_mut(i);
        row /= norm;
    }
    Ok(())
}

/// Samples an m x n sensing matrix from the given ensemble. Row `i` is a
/// function of `(seed, i)` only.
pub fn sample_matrix(
    spec: &EnsembleSpec,
    m: usize,
    n: usize,
    seed: u64,
) -> Result<SensingMatrix, EnsembleError> {
    spec.check()?;
    if m == 0 || n == 0 {
        return Err(EnsembleError::ZeroDimension { m, n });
    }
    let mut entries = DMatrix::zeros(m, n);
    match spec.kind {
        EnsembleKind::GaussianDense | EnsembleKind::GaussianDiluted => {
            let beta = if spec.kind == EnsembleKind::GaussianDense { 1.0 } else { spec.beta };
            for i in 0..m {
                let mut rng = keyed_rng(seed, stream::MATRIX_ROW, i as u64);
                loop {
                    let mut any = false;
                    for j in 0..n {
                        let active = beta >= 1.0 || rng.random::<f64>() < beta;
                        entries[(i, j)] = if active {
                            any = true;
                            StandardNormal.sample(&mut rng)
                        } else {
                            0.0
                        };
                    }
                    if any {
                        break;
                    }
                }
            }
        }
        EnsembleKind::ZeroOneRandom => {
            let l = derived_count(spec.beta, n);
            for i in 0..m {
                let mut rng = keyed_rng(seed, stream::MATRIX_ROW, i as u64);
                // partial Fisher-Yates: the first l entries of a uniformly
                // random permutation of 0..n
                let mut idx: Vec<usize> = (0..n).collect();
                for t in 0..l {
                    let j = rng.random_range(t..n);
                    idx.swap(t, j);
                    entries[(i, idx[t])] = 1.0;
                }
            }
        }
        EnsembleKind::ZeroOneContiguous => {
            let l = derived_count(spec.beta, n);
            for i in 0..m {
                let mut rng = keyed_rng(seed, stream::MATRIX_ROW, i as u64);
                let start = rng.random_range(0..n);
                for t in 0..l {
                    entries[(i, (start + t) % n)] = 1.0;
                }
            }
        }
        EnsembleKind::ToeplitzFIR => {
            let filter_length = spec.filter_length.expect("checked by spec.check()");
            if filter_length > n {
                return Err(EnsembleError::FilterTooLong { filter_length, n });
            }
            let stride = fir_stride(filter_length, spec.downsample.expect("checked by spec.check()"));
            for i in 0..m {
                let start = i * stride;
                let end = start + filter_length;
                if end > n {
                    return Err(EnsembleError::FirOutOfField { row: i, end, n });
                }
                for j in start..end {
                    entries[(i, j)] = 1.0;
                }
            }
        }
        EnsembleKind::CorrelatedColumns => {
            let cov = spec.column_covariance.as_ref().expect("checked by spec.check()");
            let factor = covariance_factor(cov, n)?;
            for i in 0..m {
                let mut rng = keyed_rng(seed, stream::MATRIX_ROW, i as u64);
                let z = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
                entries.row_mut(i).copy_from(&(&factor * z).transpose());
            }
        }
        EnsembleKind::Explicit => {
            let rows = spec.matrix.as_ref().expect("checked by spec.check()");
            if rows.len() != m || rows.iter().any(|r| r.len() != n) {
                return Err(EnsembleError::ShapeMismatch {
                    got: format!("{}x{:?}", rows.len(), rows.first().map_or(0, Vec::len)),
                    expected: format!("{m}x{n}"),
                });
            }
            for (i, r) in rows.iter().enumerate() {
                for (j, &v) in r.iter().enumerate() {
                    entries[(i, j)] = v;
                }
            }
        }
    }
    normalize_rows(&mut entries)?;
    Ok(SensingMatrix { entries, ensemble: spec.clone(), seed })
}

/// Validated square root V Lambda^{1/2} of an n x n column covariance.
fn covariance_factor(cov: &[Vec<f64>], n: usize) -> Result<DMatrix<f64>, EnsembleError> {
    if cov.len() != n || cov.iter().any(|r| r.len() != n) {
        return Err(EnsembleError::ShapeMismatch {
            got: format!("{}x{:?}", cov.len(), cov.first().map_or(0, Vec::len)),
            expected: format!("{n}x{n}"),
        });
    }
    let sigma = DMatrix::from_fn(n, n, |i, j| cov[i][j]);
    check_covariance(&sigma)?;
    let eig = sigma.symmetric_eigen();
    let sqrt_vals = DVector::from_iterator(n, eig.eigenvalues.iter().map(|&v| v.max(0.0).sqrt()));
    Ok(&eig.eigenvectors * DMatrix::from_diagonal(&sqrt_vals))
}

fn check_covariance(sigma: &DMatrix<f64>) -> Result<(), EnsembleError> {
    let n = sigma.nrows();
    for i in 0..n {
        if (sigma[(i, i)] - 1.0).abs() > 1e-9 {
            return Err(EnsembleError::DiagonalNotUnit(sigma[(i, i)]));
        }
        for j in 0..i {
            if (sigma[(i, j)] - sigma[(j, i)]).abs() > 1e-9 {
                return Err(EnsembleError::NotSymmetric);
            }
        }
    }
    let min = sigma
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |a, &b| a.min(b));
    if min < -1e-9 {
        return Err(EnsembleError::NotPsd(min));
    }
    Ok(())
}

/// Smallest eigenvalue of a normalized (unit-diagonal, symmetric PSD) column
/// covariance, clamped into [0, inf).
pub fn column_lambda_min(covariance: &[Vec<f64>]) -> Result<f64, EnsembleError> {
    let n = covariance.len();
    let sigma = covariance_matrix(covariance, n)?;
    check_covariance(&sigma)?;
    let min = sigma
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |a, &b| a.min(b));
    Ok(min.max(0.0))
}

fn covariance_matrix(cov: &[Vec<f64>], n: usize) -> Result<DMatrix<f64>, EnsembleError> {
    if n == 0 || cov.iter().any(|r| r.len() != n) {
        return Err(EnsembleError::ShapeMismatch {
            got: format!("{}x{:?}", cov.len(), cov.first().map_or(0, Vec::len)),
            expected: "square".to_string(),
        });
    }
    Ok(DMatrix::from_fn(n, n, |i, j| cov[i][j]))
}

/// Inner products of consecutive rows: r_i = <G_i, G_{i+1}> for unit rows.
pub fn row_cross_correlations(matrix: &SensingMatrix) -> Vec<f64> {
    let m = matrix.m();
    (0..m.saturating_sub(1))
        .map(|i| matrix.entries.row(i).dot(&matrix.entries.row(i + 1)))
        .collect()
}

/// Mutual information of the Gaussian channel induced by a fixed matrix with
/// an i.i.d. input of per-coordinate power alpha, in bits:
/// (1/2) sum_i log2(1 + lambda_i alpha snr) over the eigenvalues of G G^T.
///
/// The eigen-decomposition runs on the smaller of the two Gram matrices;
/// their nonzero spectra coincide and zero eigenvalues contribute nothing.
pub fn mi_logdet_gaussian(matrix: &SensingMatrix, alpha: f64, snr: f64) -> f64 {
    let g = &matrix.entries;
    let gram = if g.ncols() < g.nrows() {
        g.transpose() * g
    } else {
        g * g.transpose()
    };
    gram.symmetric_eigen()
        .eigenvalues
        .iter()
        .map(|&lambda| 0.5 * log2_1p(lambda.max(0.0) * alpha * snr))
        .sum()
}
