//! Exact arithmetic: characteristic polynomials, square-free tests and
//! determinants over integers, rationals and a prime field.
//!
//! Eigenvalue distinctness is decided from the characteristic polynomial
//! `p(x) = det(xI - A)`: the eigenvalues are distinct iff `gcd(p, p')` is
//! constant. For an integer matrix the test first runs modulo the prime
//! `2^61 - 1`. A monic integer polynomial that is square-free modulo a prime is
//! square-free over the rationals, so a positive modular answer is a
//! certificate; a negative one falls back to Euclid over the rationals.

use std::ops::Div;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, ModP, Ring};

/// Univariate polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R>(Vec<R>);

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.0.last()
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * ring_from_usize::<R>(i))
            .collect();
        Poly::new(coeffs)
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> Poly<S> {
        Poly::new(self.0.iter().map(f).collect())
    }

    pub fn eval(&self, x: &R) -> R {
        self.0
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

impl<F: Field> Poly<F> {
    /// Remainder of Euclidean division; panics if `divisor` is zero.
    pub fn rem(&self, divisor: &Poly<F>) -> Poly<F> {
        let d = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.0[d].clone();
        let mut r = self.0.clone();
        while r.len() > d {
            let top = r.len() - 1;
            let q = r[top].clone() / lead.clone();
            if !q.is_zero() {
                for (i, c) in divisor.0.iter().enumerate() {
                    let k = top - d + i;
                    r[k] = r[k].clone() - q.clone() * c.clone();
                }
            }
            r.pop();
        }
        Poly::new(r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly<F>) -> Poly<F> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.leading().cloned() {
            Some(lead) => Poly::new(a.0.into_iter().map(|c| c / lead.clone()).collect()),
            None => a,
        }
    }

    /// True iff `p` has no repeated root in the algebraic closure.
    pub fn is_square_free(&self) -> bool {
        if self.degree().is_none_or(|d| d == 0) {
            return true;
        }
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

fn ring_from_usize<R: Ring>(mut k: usize) -> R {
    let mut acc = R::zero();
    let mut pow = R::one();
    while k > 0 {
        if k & 1 == 1 {
            acc = acc + pow.clone();
        }
        pow = pow.clone() + pow;
        k >>= 1;
    }
    acc
}

/// Characteristic polynomial `det(xI - A)` by Berkowitz's division-free
/// algorithm; works over any commutative ring. Ascending coefficients.
pub fn charpoly_berkowitz<R: Ring>(a: &Matrix<R>) -> Poly<R> {
    assert!(a.is_square(), "charpoly of non-square matrix");
    let n = a.rows();
    // highest-degree first while building
    let mut p: Vec<R> = vec![R::one()];
    for r in 0..n {
        let diag = a[(r, r)].clone();
        let row: Vec<R> = (0..r).map(|j| a[(r, j)].clone()).collect();
        let mut col: Vec<R> = (0..r).map(|i| a[(i, r)].clone()).collect();
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(R::one());
        toeplitz.push(-diag);
        for _ in 0..r {
            let dot = row
                .iter()
                .zip(&col)
                .fold(R::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
            toeplitz.push(-dot);
            col = (0..r)
                .map(|i| (0..r).fold(R::zero(), |acc, j| acc + a[(i, j)].clone() * col[j].clone()))
                .collect();
        }
        let next: Vec<R> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(R::zero(), |acc, j| {
                    acc + toeplitz[i - j].clone() * p[j].clone()
                })
            })
            .collect();
        p = next;
    }
    p.reverse();
    Poly::new(p)
}

/// Characteristic polynomial over a field via similarity reduction to upper
/// Hessenberg form followed by the Hessenberg recurrence. O(n^3).
pub fn charpoly_hessenberg<F: Field>(a: &Matrix<F>) -> Poly<F> {
    assert!(a.is_square(), "charpoly of non-square matrix");
    let n = a.rows();
    let mut h = a.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else {
            continue;
        };
        if piv != j + 1 {
            h.swap_rows(piv, j + 1);
            for i in 0..n {
                let t = h[(i, piv)].clone();
                h[(i, piv)] = h[(i, j + 1)].clone();
                h[(i, j + 1)] = t;
            }
        }
        let pivot = h[(j + 1, j)].clone();
        for k in j + 2..n {
            if h[(k, j)].is_zero() {
                continue;
            }
            let u = h[(k, j)].clone() / pivot.clone();
            for c in 0..n {
                let v = h[(k, c)].clone() - u.clone() * h[(j + 1, c)].clone();
                h[(k, c)] = v;
            }
            for r in 0..n {
                let v = h[(r, j + 1)].clone() + u.clone() * h[(r, k)].clone();
                h[(r, j + 1)] = v;
            }
        }
    }

    // p[k] = charpoly of the leading k x k block, ascending coefficients
    let mut p: Vec<Vec<F>> = vec![vec![F::one()]];
    for k in 0..n {
        let mut next = vec![F::zero(); k + 2];
        for (d, c) in p[k].iter().enumerate() {
            next[d + 1] = next[d + 1].clone() + c.clone();
            next[d] = next[d].clone() - h[(k, k)].clone() * c.clone();
        }
        let mut t = F::one();
        for i in (0..k).rev() {
            t = t * h[(i + 1, i)].clone();
            if t.is_zero() {
                break;
            }
            let f = h[(i, k)].clone() * t.clone();
            if f.is_zero() {
                continue;
            }
            for (d, c) in p[i].iter().enumerate() {
                next[d] = next[d].clone() - f.clone() * c.clone();
            }
        }
        p.push(next);
    }
    Poly::new(p.pop().expect("nonempty"))
}

/// Determinant by fraction-free (Bareiss) elimination; every division is exact.
pub fn determinant_bareiss<T>(a: &Matrix<T>) -> T
where
    T: Ring + Div<Output = T>,
{
    assert!(a.is_square(), "determinant of non-square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign_flip = !sign_flip;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (m[(k, k)].clone() * m[(i, j)].clone()
                    - m[(i, k)].clone() * m[(k, j)].clone())
                    / prev.clone();
                m[(i, j)] = v;
            }
            m[(i, k)] = T::zero();
        }
        prev = m[(k, k)].clone();
    }
    let det = if n == 0 {
        T::one()
    } else {
        m[(n - 1, n - 1)].clone()
    };
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Matrix entries that convert to an exact rational.
pub trait ExactEntry {
    fn to_rational(&self) -> Option<BigRational>;
}

macro_rules! exact_int {
    ($($t:ty),*) => {$(
        impl ExactEntry for $t {
            fn to_rational(&self) -> Option<BigRational> {
                Some(BigRational::from_integer(BigInt::from(*self)))
            }
        }
    )*};
}
exact_int!(i8, i16, i32, i64, i128, u8, u16, u32, u64, usize);

impl ExactEntry for BigInt {
    fn to_rational(&self) -> Option<BigRational> {
        Some(BigRational::from_integer(self.clone()))
    }
}

impl ExactEntry for BigRational {
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

impl ExactEntry for Ratio<i64> {
    fn to_rational(&self) -> Option<BigRational> {
        Some(BigRational::new(
            BigInt::from(*self.numer()),
            BigInt::from(*self.denom()),
        ))
    }
}

/// Finite floats are dyadic rationals and convert exactly.
impl ExactEntry for f64 {
    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
}

impl ExactEntry for f32 {
    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
}

fn rational_entries<E: ExactEntry>(a: &Matrix<E>) -> Result<Matrix<BigRational>> {
    let mut q = Vec::with_capacity(a.rows() * a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            q.push(a[(i, j)].to_rational().ok_or(Error::NonExactEntries {
                row: i + 1,
                col: j + 1,
            })?);
        }
    }
    Ok(Matrix::from_vec(a.rows(), a.cols(), q))
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

/// Scales a matrix by the least common multiple of its denominators so every
/// entry becomes an integer; returns the scaled matrix and the factor.
/// Eigenvalue distinctness is invariant under the scaling.
pub fn to_integer_matrix<E: ExactEntry>(a: &Matrix<E>) -> Result<(Matrix<BigInt>, BigInt)> {
    let q = rational_entries(a)?;
    let lcm = q
        .as_slice()
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints = q.map(|q| q.numer() * (&lcm / q.denom()));
    Ok((ints, lcm))
}

/// Exact characteristic polynomial of a rational-valued matrix.
pub fn characteristic_polynomial<E: ExactEntry>(a: &Matrix<E>) -> Result<Poly<BigRational>> {
    require_square(a)?;
    Ok(charpoly_berkowitz(&rational_entries(a)?))
}

/// Square-free test for an integer polynomial: modular certificate first,
/// rational Euclid when the certificate is inconclusive.
pub fn integer_poly_is_square_free(p: &Poly<BigInt>) -> bool {
    let modular = p.map(ModP::from_bigint);
    if modular.degree() == p.degree() && modular.is_square_free() {
        return true;
    }
    rational_is_square_free(p)
}

pub(crate) fn rational_is_square_free(p: &Poly<BigInt>) -> bool {
    p.map(|c| BigRational::from_integer(c.clone()))
        .is_square_free()
}

/// True iff all eigenvalues of `a` are distinct (its characteristic polynomial
/// is square-free). Decided without floating point.
pub fn distinct_eigenvalues_exact<E: ExactEntry>(a: &Matrix<E>) -> Result<bool> {
    require_square(a)?;
    let (ints, _) = to_integer_matrix(a)?;
    Ok(integer_poly_is_square_free(&charpoly_berkowitz(&ints)))
}

/// Exact determinant of a rational-valued matrix.
pub fn determinant_exact<E: ExactEntry>(a: &Matrix<E>) -> Result<BigRational> {
    require_square(a)?;
    let (ints, scale) = to_integer_matrix(a)?;
    let det = BigRational::from_integer(determinant_bareiss(&ints));
    Ok(det / BigRational::from_integer(num_traits::pow(scale, a.rows())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(n: usize, data: &[i64]) -> Matrix<BigInt> {
        Matrix::from_vec(n, n, data.iter().map(|&v| BigInt::from(v)).collect())
    }

    fn cycle(n: usize) -> Matrix<i64> {
        Matrix::from_fn(n, n, |i, j| i64::from(j == (i + 1) % n))
    }

    fn big(p: &Poly<BigInt>) -> Vec<i64> {
        p.coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn berkowitz_small_cases() {
        // [[1,2],[3,4]]: x^2 - 5x - 2
        let a = int_matrix(2, &[1, 2, 3, 4]);
        assert_eq!(big(&charpoly_berkowitz(&a)), vec![-2, -5, 1]);
        // cycle of length 4: x^4 - 1
        let c = cycle(4).map(|&v| BigInt::from(v));
        assert_eq!(big(&charpoly_berkowitz(&c)), vec![-1, 0, 0, 0, 1]);
        // empty matrix
        let e: Matrix<BigInt> = Matrix::zeros(0, 0);
        assert_eq!(big(&charpoly_berkowitz(&e)), vec![1]);
    }

    #[test]
    fn hessenberg_agrees_with_berkowitz() {
        let a = int_matrix(4, &[2, -1, 0, 3, 1, 0, 5, -2, 0, 4, 1, 1, -3, 2, 2, 0]);
        let b = charpoly_berkowitz(&a).map(ModP::from_bigint);
        let h = charpoly_hessenberg(&a.map(ModP::from_bigint));
        assert_eq!(b, h);
        let q = charpoly_hessenberg(&a.map(|v| BigRational::from_integer(v.clone())));
        assert_eq!(
            q,
            charpoly_berkowitz(&a).map(|c| BigRational::from_integer(c.clone()))
        );
    }

    #[test]
    fn hessenberg_needs_pivot() {
        // zero in the first subdiagonal position forces a row/column swap
        let a = int_matrix(3, &[1, 2, 3, 0, 4, 5, 6, 7, 8]);
        let b = charpoly_berkowitz(&a).map(ModP::from_bigint);
        assert_eq!(charpoly_hessenberg(&a.map(ModP::from_bigint)), b);
    }

    #[test]
    fn square_free_cases() {
        assert!(distinct_eigenvalues_exact(&cycle(8)).unwrap());
        assert!(!distinct_eigenvalues_exact(&Matrix::<i64>::zeros(2, 2)).unwrap());
        assert!(!distinct_eigenvalues_exact(&Matrix::<i64>::identity(3)).unwrap());
        let half = Matrix::from_vec(2, 2, vec![0.0, 0.5, 1.0, 0.0]);
        assert!(distinct_eigenvalues_exact(&half).unwrap());
        let bad = Matrix::from_vec(1, 1, vec![f64::NAN]);
        assert!(matches!(
            distinct_eigenvalues_exact(&bad),
            Err(Error::NonExactEntries { row: 1, col: 1 })
        ));
        let rect = Matrix::<i64>::zeros(2, 3);
        assert!(matches!(
            distinct_eigenvalues_exact(&rect),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn gcd_finds_repeated_factor() {
        // (x - 1)^2 (x + 2) = x^3 - 3x + 2
        let p = Poly::new(vec![2, -3, 0, 1].into_iter().map(BigInt::from).collect());
        assert!(!integer_poly_is_square_free(&p));
        let q = Poly::new(vec![-1, 0, 1].into_iter().map(BigInt::from).collect());
        assert!(integer_poly_is_square_free(&q));
        let g = p
            .map(|c| BigRational::from_integer(c.clone()))
            .gcd(&q.map(|c| BigRational::from_integer(c.clone())));
        assert_eq!(g.degree(), Some(1));
    }

    #[test]
    fn bareiss_determinant() {
        let a = int_matrix(3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]);
        assert_eq!(determinant_bareiss(&a), BigInt::from(6));
        let p = int_matrix(3, &[0, 1, 0, 0, 0, 1, 1, 0, 0]);
        assert_eq!(determinant_bareiss(&p), BigInt::from(1));
        let s = int_matrix(2, &[1, 2, 2, 4]);
        assert_eq!(determinant_bareiss(&s), BigInt::zero());
        let q = Matrix::from_vec(2, 2, vec![0.5, 0.0, 0.0, 3.0]);
        assert_eq!(
            determinant_exact(&q).unwrap(),
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );
    }
}
