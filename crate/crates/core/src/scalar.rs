//! Scalar abstractions.
//!
//! Numeric code (eigendecomposition, spectral filtering) is written against
//! [`Real`], implemented for `f32` and `f64`. Exact code (characteristic
//! polynomials, determinants) is written against [`Ring`] and [`Field`], which
//! cover big integers, big rationals and the prime field [`ModP`].

use std::fmt::{self, Debug, Display};
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, One, Zero};

/// Floating point scalar used by the numeric (spectral) path.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Default relative eigenvalue-gap tolerance.
    const GAP_TOL: f64;
    /// Default eigenvector-basis condition threshold.
    const COND_TOL: f64;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }
}

impl Real for f32 {
    const GAP_TOL: f64 = 1e-4;
    const COND_TOL: f64 = 1e3;
}

impl Real for f64 {
    const GAP_TOL: f64 = 1e-10;
    const COND_TOL: f64 = 1e6;
}

/// Commutative ring with identity.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl Field for BigRational {}
impl Field for ModP {}
impl Field for f64 {}
impl Field for f32 {}

/// Residues modulo the Mersenne prime 2^61 - 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ModP(u64);

impl ModP {
    pub const MODULUS: u64 = (1 << 61) - 1;

    pub fn new(v: u64) -> Self {
        ModP(v % Self::MODULUS)
    }

    pub fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(Self::MODULUS as i64) as u64;
        ModP(r)
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(Self::MODULUS);
        let r = ((v % &m) + &m) % &m;
        let (_, digits) = r.to_u64_digits();
        ModP(digits.first().copied().unwrap_or(0))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce(x: u128) -> u64 {
        let m = Self::MODULUS as u128;
        let folded = (x & m) + (x >> 61);
        let folded = (folded & m) + (folded >> 61);
        let r = folded as u64;
        if r >= Self::MODULUS {
            r - Self::MODULUS
        } else {
            r
        }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = ModP(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self) -> Self {
        assert!(self.0 != 0, "inverse of zero in ModP");
        self.pow(Self::MODULUS - 2)
    }
}

impl Debug for ModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for ModP {
    type Output = ModP;
    fn add(self, rhs: ModP) -> ModP {
        let s = self.0 + rhs.0;
        ModP(if s >= Self::MODULUS {
            s - Self::MODULUS
        } else {
            s
        })
    }
}

impl Sub for ModP {
    type Output = ModP;
    fn sub(self, rhs: ModP) -> ModP {
        if self.0 >= rhs.0 {
            ModP(self.0 - rhs.0)
        } else {
            ModP(self.0 + Self::MODULUS - rhs.0)
        }
    }
}

impl Mul for ModP {
    type Output = ModP;
    fn mul(self, rhs: ModP) -> ModP {
        ModP(Self::reduce(self.0 as u128 * rhs.0 as u128))
    }
}

impl Div for ModP {
    type Output = ModP;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: ModP) -> ModP {
        self * rhs.inv()
    }
}

impl Neg for ModP {
    type Output = ModP;
    fn neg(self) -> ModP {
        if self.0 == 0 {
            self
        } else {
            ModP(Self::MODULUS - self.0)
        }
    }
}

impl Zero for ModP {
    fn zero() -> Self {
        ModP(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for ModP {
    fn one() -> Self {
        ModP(1)
    }
}
