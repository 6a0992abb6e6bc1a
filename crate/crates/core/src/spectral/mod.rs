//! Eigendecomposition of adjacency matrices and the graph Fourier transform.
//!
//! The decomposition `A = V diag(lambda) V^-1` is computed numerically for a
//! general (non-symmetric) real matrix. Eigenpairs are ordered by frequency,
//! the principal argument of the eigenvalue in `(-pi, pi]`, with ties broken by
//! modulus. Each eigenvector has unit 2-norm and its first entry of largest
//! magnitude is real and positive.
//!
//! The exact distinctness test lives in [`crate::exact`]; the two paths share
//! no code.

mod report;
mod schur;

use std::cmp::Ordering;

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::GraphSignal;
use crate::matrix::Matrix;
use crate::scalar::Real;

pub use report::{SpectrumRecord, SpectrumReport};
use schur::abs1;

/// Acceptance thresholds for a numerical decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralConfig<T> {
    /// Reject when the 1-norm condition number of the eigenvector basis
    /// exceeds this value.
    pub cond_tol: T,
    /// Relative gap below which two eigenvalues count as coincident; see
    /// [`EigenDecomposition::has_distinct_eigenvalues`].
    pub gap_tol: T,
    /// QR sweeps allowed per eigenvalue before giving up.
    pub max_iter_per_eigenvalue: usize,
}

impl<T: Real> Default for SpectralConfig<T> {
    fn default() -> Self {
        SpectralConfig {
            cond_tol: T::lit(T::COND_TOL),
            gap_tol: T::lit(T::GAP_TOL),
            max_iter_per_eigenvalue: 60,
        }
    }
}

/// Eigenvalues, eigenvectors (columns of `vectors`) and the inverse basis of a
/// diagonalizable matrix.
#[derive(Clone, Debug)]
pub struct EigenDecomposition<T> {
    eigenvalues: Vec<Complex<T>>,
    vectors: Matrix<Complex<T>>,
    inverse: Matrix<Complex<T>>,
    min_gap: T,
    cond: T,
    gap_tol: T,
    ordering: Vec<usize>,
}

impl<T: Real> EigenDecomposition<T> {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[Complex<T>] {
        &self.eigenvalues
    }

    /// Eigenvector basis `V`; column `k` is the eigenvector of `eigenvalues()[k]`.
    pub fn vectors(&self) -> &Matrix<Complex<T>> {
        &self.vectors
    }

    /// `V^-1`; row `k` holds the analysis vector of frequency index `k`.
    pub fn inverse(&self) -> &Matrix<Complex<T>> {
        &self.inverse
    }

    /// Smallest distance between two eigenvalues (infinite for n = 1).
    pub fn min_gap(&self) -> T {
        self.min_gap
    }

    /// `||V||_1 * ||V^-1||_1`.
    pub fn cond_estimate(&self) -> T {
        self.cond
    }

    /// Position `k` of the frequency ordering came from Schur diagonal entry
    /// `ordering()[k]`.
    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn max_modulus(&self) -> T {
        self.eigenvalues
            .iter()
            .fold(T::zero(), |acc, l| acc.max(l.norm()))
    }

    /// Numerical distinctness: `min_gap > gap_tol * max|lambda|`.
    pub fn has_distinct_eigenvalues(&self) -> bool {
        self.min_gap > self.gap_tol * self.max_modulus()
    }

    /// Frequency of each eigenvalue, in decomposition order.
    pub fn frequencies(&self) -> Vec<T> {
        self.eigenvalues.iter().map(|&l| frequency(l)).collect()
    }

    /// Graph Fourier transform `X = V^-1 x`.
    pub fn gft(&self, x: &[T]) -> Result<Vec<Complex<T>>> {
        let xc: Vec<Complex<T>> = x.iter().map(|&v| Complex::new(v, T::zero())).collect();
        self.gft_complex(&xc)
    }

    pub fn gft_complex(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.check_len(x.len())?;
        Ok(self.inverse.mul_vec(x))
    }

    /// Inverse transform `x = V X`.
    pub fn igft(&self, spectrum: &[Complex<T>]) -> Result<GraphSignal<Complex<T>>> {
        self.check_len(spectrum.len())?;
        Ok(GraphSignal::new(self.vectors.mul_vec(spectrum)))
    }

    /// `V diag(lambda) V^-1`.
    pub fn reconstruct(&self) -> Matrix<Complex<T>> {
        let n = self.n();
        let scaled = Matrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * self.eigenvalues[j]);
        scaled.matmul(&self.inverse)
    }

    pub fn spectrum_report(&self) -> Result<SpectrumReport<T>> {
        SpectrumReport::new(self)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: len,
            });
        }
        Ok(())
    }
}

/// Principal argument in `(-pi, pi]`. Eigenvalues within rounding of the real
/// axis get frequency exactly `0` or `pi`.
pub fn frequency<T: Real>(lambda: Complex<T>) -> T {
    let snap = T::lit(64.0) * T::epsilon() * lambda.norm();
    if lambda.im.abs() <= snap {
        return if lambda.re >= T::zero() {
            T::zero()
        } else {
            T::PI()
        };
    }
    let w = lambda.im.atan2(lambda.re);
    if w <= -T::PI() {
        T::PI()
    } else {
        w
    }
}

fn frequency_order<T: Real>(values: &[Complex<T>]) -> Vec<usize> {
    let keys: Vec<(T, T)> = values.iter().map(|&l| (frequency(l), l.norm())).collect();
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| {
        keys[a]
            .0
            .partial_cmp(&keys[b].0)
            .unwrap_or(Ordering::Equal)
            .then(keys[a].1.partial_cmp(&keys[b].1).unwrap_or(Ordering::Equal))
    });
    idx
}

fn min_pairwise_gap<T: Real>(values: &[Complex<T>]) -> T {
    let mut gap = T::infinity();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            gap = gap.min((values[i] - values[j]).norm());
        }
    }
    gap
}

/// Eigenvalues only, in frequency order. Works for defective matrices.
pub fn eigenvalues<T: Real>(a: &Matrix<T>) -> Result<Vec<Complex<T>>> {
    let cfg = SpectralConfig::<T>::default();
    require_square(a)?;
    let s = schur::schur(a, cfg.max_iter_per_eigenvalue)?;
    let diag: Vec<Complex<T>> = (0..a.rows()).map(|i| s.t[(i, i)]).collect();
    Ok(frequency_order(&diag)
        .into_iter()
        .map(|i| diag[i])
        .collect())
}

/// Full complex eigendecomposition of a general real matrix.
///
/// Fails with [`Error::NotDiagonalizable`] when the eigenvector basis is
/// singular or its condition estimate exceeds `cfg.cond_tol`, which is what a
/// defective matrix (such as a raw DAG adjacency) produces.
pub fn eigendecompose<T: Real>(
    a: &Matrix<T>,
    cfg: &SpectralConfig<T>,
) -> Result<EigenDecomposition<T>> {
    require_square(a)?;
    let n = a.rows();
    let s = schur::schur(a, cfg.max_iter_per_eigenvalue)?;
    let diag: Vec<Complex<T>> = (0..n).map(|i| s.t[(i, i)]).collect();
    let min_gap = min_pairwise_gap(&diag);
    let fail = |cond: T| Error::NotDiagonalizable {
        min_gap: min_gap.to_f64().unwrap_or(f64::NAN),
        cond: cond.to_f64().unwrap_or(f64::INFINITY),
    };

    let t_norm =
        s.t.as_slice()
            .iter()
            .fold(T::zero(), |acc, z| acc.max(abs1(*z)));
    let small = (T::epsilon() * t_norm).max(T::min_positive_value().sqrt());
    let big = T::max_value().sqrt();

    let order = frequency_order(&diag);
    let mut vectors = Matrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let lambda = diag[k];
        // back substitution for (T - lambda I) y = 0 with y_k = 1
        let mut y = vec![Complex::<T>::zero(); n];
        y[k] = Complex::one();
        for j in (0..k).rev() {
            let sum = (j + 1..=k).fold(Complex::<T>::zero(), |acc, i| acc + s.t[(j, i)] * y[i]);
            let mut denom = s.t[(j, j)] - lambda;
            if abs1(denom) < small {
                denom = Complex::new(small, T::zero());
            }
            y[j] = -sum / denom;
            if abs1(y[j]) > big {
                let scale = abs1(y[j]);
                for v in y.iter_mut().take(k + 1) {
                    *v /= scale;
                }
            }
        }
        let v = s.q.mul_vec(&y);
        let v = normalize(v).ok_or_else(|| fail(T::infinity()))?;
        for (i, z) in v.into_iter().enumerate() {
            vectors[(i, col)] = z;
        }
    }

    let inverse = invert(&vectors).ok_or_else(|| fail(T::infinity()))?;
    let cond = norm1(&vectors) * norm1(&inverse);
    if !cond.is_finite() || cond > cfg.cond_tol {
        return Err(fail(cond));
    }
    Ok(EigenDecomposition {
        eigenvalues: order.iter().map(|&k| diag[k]).collect(),
        vectors,
        inverse,
        min_gap,
        cond,
        gap_tol: cfg.gap_tol,
        ordering: order,
    })
}

fn require_square<T>(a: &Matrix<T>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(())
}

/// Unit 2-norm; first entry of (near-)largest magnitude made real positive.
fn normalize<T: Real>(mut v: Vec<Complex<T>>) -> Option<Vec<Complex<T>>> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    if !norm.is_finite() || norm == T::zero() {
        return None;
    }
    let max = v.iter().fold(T::zero(), |acc, z| acc.max(z.norm()));
    let cutoff = max * (T::one() - T::lit(1024.0) * T::epsilon());
    let pivot = v.iter().find(|z| z.norm() >= cutoff)?;
    let phase = pivot.conj() / pivot.norm();
    for z in v.iter_mut() {
        *z = *z * phase / norm;
    }
    Some(v)
}

fn norm1<T: Real>(m: &Matrix<Complex<T>>) -> T {
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m[(i, j)].norm()).sum::<T>())
        .fold(T::zero(), T::max)
}

/// Inverse by LU with partial pivoting; `None` if singular.
fn invert<T: Real>(m: &Matrix<Complex<T>>) -> Option<Matrix<Complex<T>>> {
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = Matrix::<Complex<T>>::identity(n);
    for k in 0..n {
        let (p, best) = (k..n)
            .map(|i| (i, a[(i, k)].norm()))
            .fold((k, T::zero()), |acc, c| if c.1 > acc.1 { c } else { acc });
        if best == T::zero() || !best.is_finite() {
            return None;
        }
        a.swap_rows(k, p);
        inv.swap_rows(k, p);
        let pivot = a[(k, k)];
        for i in k + 1..n {
            let f = a[(i, k)] / pivot;
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                a[(i, j)] = a[(i, j)] - f * a[(k, j)];
            }
            for j in 0..n {
                inv[(i, j)] = inv[(i, j)] - f * inv[(k, j)];
            }
        }
    }
    for k in (0..n).rev() {
        let pivot = a[(k, k)];
        for j in 0..n {
            let mut s = inv[(k, j)];
            for i in k + 1..n {
                s -= a[(k, i)] * inv[(i, j)];
            }
            inv[(k, j)] = s / pivot;
        }
    }
    if inv
        .as_slice()
        .iter()
        .all(|z| z.re.is_finite() && z.im.is_finite())
    {
        Some(inv)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Matrix<f64> {
        Matrix::from_fn(n, n, |i, j| if j == (i + 1) % n { 1.0 } else { 0.0 })
    }

    fn path(n: usize) -> Matrix<f64> {
        Matrix::from_fn(n, n, |i, j| if j == i + 1 { 1.0 } else { 0.0 })
    }

    #[test]
    fn cycle_roots_of_unity() {
        let n = 8;
        let d = eigendecompose(&cycle(n), &SpectralConfig::default()).unwrap();
        let mut expected: Vec<Complex<f64>> = (0..n)
            .map(|k| Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
            .collect();
        let ord = frequency_order(&expected);
        expected = ord.into_iter().map(|i| expected[i]).collect();
        for (got, want) in d.eigenvalues().iter().zip(&expected) {
            assert!((got - want).norm() < 1e-12, "{got} vs {want}");
        }
        let w = d.frequencies();
        assert!(w.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(*w.last().unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn identity_is_accepted() {
        let d = eigendecompose(&Matrix::<f64>::identity(3), &SpectralConfig::default()).unwrap();
        assert!(d
            .eigenvalues()
            .iter()
            .all(|l| (l - Complex::one()).norm() < 1e-15));
        assert!(d.cond_estimate() < 1.0 + 1e-12);
        assert!(!d.has_distinct_eigenvalues());
    }

    #[test]
    fn nilpotent_path_is_rejected() {
        let err = eigendecompose(&path(8), &SpectralConfig::default()).unwrap_err();
        assert!(matches!(err, Error::NotDiagonalizable { .. }));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn jordan_block_with_nonzero_eigenvalue_is_rejected() {
        let a = Matrix::from_vec(2, 2, vec![2.0, 1.0, 0.0, 2.0]);
        assert!(eigendecompose(&a, &SpectralConfig::default()).is_err());
    }

    #[test]
    fn phase_convention() {
        let a = Matrix::from_vec(3, 3, vec![1.0, 2.0, 0.0, 0.5, -1.0, 3.0, 0.0, 1.0, 2.0]);
        let d = eigendecompose(&a, &SpectralConfig::default()).unwrap();
        for k in 0..3 {
            let col = d.vectors().column(k);
            let norm: f64 = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
            let max = col.iter().fold(0.0f64, |m, z| m.max(z.norm()));
            let lead = col
                .iter()
                .find(|z| z.norm() >= max * (1.0 - 1e-12))
                .unwrap();
            assert!(lead.im.abs() < 1e-15 && lead.re > 0.0);
        }
    }

    #[test]
    fn f32_decomposition() {
        let d = eigendecompose(&cycle(5).map(|&v| v as f32), &SpectralConfig::default()).unwrap();
        let back = d.reconstruct();
        for i in 0..5 {
            for j in 0..5 {
                let want = if j == (i + 1) % 5 { 1.0 } else { 0.0 };
                assert!((back[(i, j)].re - want).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn frequency_principal_branch() {
        assert_eq!(frequency(Complex::new(-1.0, -0.0)), std::f64::consts::PI);
        assert_eq!(frequency(Complex::new(2.0, 1e-18)), 0.0);
        assert!((frequency(Complex::new(0.0, -1.0)) + std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn length_checks() {
        let d = eigendecompose(&cycle(3), &SpectralConfig::default()).unwrap();
        assert!(d.gft(&[1.0, 2.0]).is_err());
        assert!(d.igft(&[Complex::zero(); 4]).is_err());
    }
}
