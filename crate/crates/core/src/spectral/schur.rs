//! Complex Schur decomposition of a general real matrix: Householder reduction
//! to upper Hessenberg form followed by single-shift QR iteration with
//! Wilkinson shifts. The orthogonal factor is accumulated so `A = Q T Q^H`.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Real;

pub(crate) struct Schur<T> {
    pub t: Matrix<Complex<T>>,
    pub q: Matrix<Complex<T>>,
}

#[inline]
pub(crate) fn abs1<T: Real>(z: Complex<T>) -> T {
    z.re.abs() + z.im.abs()
}

fn max_abs<T: Real>(m: &Matrix<Complex<T>>) -> T {
    m.as_slice()
        .iter()
        .fold(T::zero(), |acc, z| acc.max(z.norm()))
}

pub(crate) fn schur<T: Real>(a: &Matrix<T>, max_iter_per_eigenvalue: usize) -> Result<Schur<T>> {
    let n = a.rows();
    let mut h = a.map(|&x| Complex::new(x, T::zero()));
    let mut q = Matrix::identity(n);
    hessenberg(&mut h, &mut q);
    qr_iterate(&mut h, &mut q, max_iter_per_eigenvalue)?;
    // clear the strictly lower part left by deflation
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = Complex::zero();
        }
    }
    Ok(Schur { t: h, q })
}

fn hessenberg<T: Real>(h: &mut Matrix<Complex<T>>, q: &mut Matrix<Complex<T>>) {
    let n = h.rows();
    let two = T::one() + T::one();
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<Complex<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm == T::zero() {
            continue;
        }
        let x0 = v[0];
        let phase = if x0.norm() == T::zero() {
            Complex::one()
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if vnorm == T::zero() {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H <- P H, P = I - 2 v v^H acting on rows k+1..n
        for j in 0..n {
            let s = v
                .iter()
                .enumerate()
                .fold(Complex::<T>::zero(), |acc, (i, vi)| {
                    acc + vi.conj() * h[(k + 1 + i, j)]
                });
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= *vi * s * two;
            }
        }
        // H <- H P and Q <- Q P on columns k+1..n
        for m in [&mut *h, &mut *q] {
            for i in 0..n {
                let s = v
                    .iter()
                    .enumerate()
                    .fold(Complex::<T>::zero(), |acc, (j, vj)| {
                        acc + m[(i, k + 1 + j)] * *vj
                    });
                for (j, vj) in v.iter().enumerate() {
                    m[(i, k + 1 + j)] -= s * vj.conj() * two;
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = Complex::zero();
        }
    }
}

/// Rotation `[[c, s], [-conj(s), c]]` mapping `(a, b)` to `(r, 0)`.
fn givens<T: Real>(a: Complex<T>, b: Complex<T>) -> (T, Complex<T>) {
    let bn = b.norm();
    if bn == T::zero() {
        return (T::one(), Complex::zero());
    }
    let an = a.norm();
    if an == T::zero() {
        return (T::zero(), b.conj() / bn);
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

fn rotate_rows<T: Real>(
    m: &mut Matrix<Complex<T>>,
    p: usize,
    cols: std::ops::Range<usize>,
    c: T,
    s: Complex<T>,
) {
    for j in cols {
        let (x, y) = (m[(p, j)], m[(p + 1, j)]);
        m[(p, j)] = x * c + s * y;
        m[(p + 1, j)] = -s.conj() * x + y * c;
    }
}

fn rotate_cols<T: Real>(
    m: &mut Matrix<Complex<T>>,
    p: usize,
    rows: std::ops::Range<usize>,
    c: T,
    s: Complex<T>,
) {
    for i in rows {
        let (x, y) = (m[(i, p)], m[(i, p + 1)]);
        m[(i, p)] = x * c + y * s.conj();
        m[(i, p + 1)] = -x * s + y * c;
    }
}

fn wilkinson_shift<T: Real>(h: &Matrix<Complex<T>>, hi: usize) -> Complex<T> {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let two = T::one() + T::one();
    let half_diff = (a - d) / two;
    let disc = (half_diff * half_diff + b * c).sqrt();
    let mean = (a + d) / two;
    let (m1, m2) = (mean + disc, mean - disc);
    if (m1 - d).norm() <= (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

fn qr_iterate<T: Real>(
    h: &mut Matrix<Complex<T>>,
    q: &mut Matrix<Complex<T>>,
    max_iter_per_eigenvalue: usize,
) -> Result<()> {
    let n = h.rows();
    if n < 2 {
        return Ok(());
    }
    let eps = T::epsilon();
    let norm = max_abs(h).max(T::min_positive_value());
    let budget = max_iter_per_eigenvalue * n;
    let mut total = 0;
    let mut iter = 0;
    let mut hi = n - 1;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let mut s = abs1(h[(l - 1, l - 1)]) + abs1(h[(l, l)]);
            if s == T::zero() {
                s = norm;
            }
            if abs1(h[(l, l - 1)]) <= eps * s {
                h[(l, l - 1)] = Complex::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > budget {
            return Err(Error::NoConvergence(total));
        }
        let shift = if iter % 11 == 10 {
            let sub = h[(hi, hi - 1)].re.abs();
            h[(hi, hi)] + Complex::new(T::lit(0.75) * sub, T::zero())
        } else {
            wilkinson_shift(h, hi)
        };
        // implicit single-shift step on the active window l..=hi
        let mut x = h[(l, l)] - shift;
        let mut y = h[(l + 1, l)];
        for k in l..hi {
            if k > l {
                x = h[(k, k - 1)];
                y = h[(k + 1, k - 1)];
            }
            let (c, s) = givens(x, y);
            let first_col = if k > l { k - 1 } else { l };
            rotate_rows(h, k, first_col..n, c, s);
            rotate_cols(h, k, 0..(k + 3).min(hi + 1), c, s);
            rotate_cols(q, k, 0..n, c, s);
            if k > l {
                h[(k + 1, k - 1)] = Complex::zero();
            }
        }
    }
    Ok(())
}
