//! Arbitrary-precision rational numbers in canonical form.
//!
//! [`Rational`] is a thin wrapper around [`num::BigRational`] that fixes the
//! canonical representation (gcd-reduced, positive denominator), adds the
//! integer square-root helpers the radical arithmetic needs, and pins the
//! textual format used throughout the crate: `p/q`, or just `p` when the
//! denominator is one.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use crate::error::{OrbitError, Result};

/// An exact rational number `p/q` with `gcd(p, q) = 1` and `q > 0`.
///
/// The canonical form is maintained by `num::BigRational`; equality and
/// hashing are therefore structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Build `p/q`.  Panics when `q == 0`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        let q = q.into();
        assert!(!q.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(p.into(), q))
    }

    /// The integer `n` as a rational.
    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from(n.into()))
    }

    /// Additive identity.
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    /// Multiplicative identity.
    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// Numerator (sign-carrying).
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator (always positive).
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Whether the value is zero.
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Whether the value is one.
    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Whether the denominator is one.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Whether the value is strictly negative.
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Whether the value is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Sign as `-1`, `0`, `+1`.
    pub fn signum(&self) -> i8 {
        if self.0.is_zero() {
            0
        } else if self.0.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(OrbitError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    /// `self^k` for a signed integer exponent; errors on `0^negative`.
    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 && self.is_zero() {
            return Err(OrbitError::DivisionByZero);
        }
        Ok(Rational(self.0.pow(k)))
    }

    /// Exact square root, when `self` is the square of a rational.
    ///
    /// Returns `None` for negative values and non-squares.
    pub fn sqrt_exact(&self) -> Option<Rational> {
        if self.is_negative() {
            return None;
        }
        let np = exact_int_sqrt(self.numer())?;
        let dp = exact_int_sqrt(self.denom())?;
        Some(Rational(BigRational::new(np, dp)))
    }

    /// Access the underlying `BigRational`.
    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = OrbitError;

    /// Parse `p` or `p/q` with optional leading sign.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || OrbitError::Parse(format!("invalid rational `{s}`"));
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let p = BigInt::from_str(num_str).map_err(|_| bad())?;
        let q = BigInt::from_str(den_str).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(p, q))
    }
}

// ---------------------------------------------------------------------------
// Integer helpers shared with the radical arithmetic.
// ---------------------------------------------------------------------------

/// Exact integer square root: `Some(r)` with `r² = n`, or `None`.
pub fn exact_int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Decompose a positive integer as `n = t² · s` with `s` squarefree.
///
/// Returns `(t, s)`.  Uses trial division, which is entirely adequate for the
/// small radicands produced by form normalisation.
pub fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "squarefree decomposition of non-positive integer");
    let mut rest = n.clone();
    let mut t = BigInt::one();
    let mut s = BigInt::one();
    let mut d = BigInt::from(2);
    while &d * &d <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&d) {
            rest /= &d;
            e += 1;
        }
        if e > 0 {
            if e >= 2 {
                t *= d.pow(e / 2);
            }
            if e % 2 == 1 {
                s *= &d;
            }
        }
        d += 1;
    }
    if rest > BigInt::one() {
        s *= rest;
    }
    (t, s)
}

/// Smallest prime factor of `n > 1`.
pub fn smallest_prime_factor(n: &BigInt) -> BigInt {
    assert!(n > &BigInt::one());
    let mut d = BigInt::from(2);
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            return d;
        }
        d += 1;
    }
    n.clone()
}

/// All positive divisors of `n ≠ 0`, in increasing order.
pub fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}
