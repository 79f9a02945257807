//! Exact arithmetic in multi-quadratic extensions of ℚ.
//!
//! An [`ExactScalar`] is a finite ℚ-linear combination of square roots of
//! distinct squarefree positive integers,
//!
//! ```text
//!     c₁·√r₁ + c₂·√r₂ + … + c_k·√r_k ,      cᵢ ∈ ℚ,  rᵢ squarefree ≥ 1,
//! ```
//!
//! stored as a map from the radicand `rᵢ` to the coefficient `cᵢ` (the
//! radicand `1` carries the rational part).  Because the square roots of
//! distinct squarefree integers are linearly independent over ℚ, this
//! representation is canonical: two scalars are equal as real numbers exactly
//! when their term maps coincide, so equality, hashing and zero-testing are
//! structural.
//!
//! Square roots of rationals are normalised into this shape via
//! `√(p/q) = √(pq)/q` followed by extraction of the square part of `pq`.
//!
//! Inversion works by conjugation: picking a prime `p` dividing some
//! radicand, writing `z = A + √p·B` with `A`, `B` free of `p`, and recursing
//! on `z·z̄ = A² − p·B²`, which lives in a subfield generated by fewer primes.
//! The denominator never vanishes for `z ≠ 0` because adjoining `√p` to the
//! subfield is a proper quadratic extension.
//!
//! The sign of a nonzero scalar is decided exactly by refining dyadic
//! rational enclosures of each `√rᵢ` until the interval sum excludes zero;
//! this terminates because a nonzero scalar is a nonzero real number.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::{Integer, One};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{smallest_prime_factor, squarefree_decompose, Rational};
use crate::error::{OrbitError, Result};

/// An element of a multi-quadratic extension ℚ(√r₁, …, √r_k) in canonical
/// form.  See the module documentation for the representation invariants.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    /// radicand (squarefree, ≥ 1) → nonzero rational coefficient.
    terms: BTreeMap<BigInt, Rational>,
}

impl ExactScalar {
    /// The scalar `0`.
    pub fn zero() -> Self {
        ExactScalar::default()
    }

    /// The scalar `1`.
    pub fn one() -> Self {
        ExactScalar::from_rational(Rational::one())
    }

    /// Embed a rational number.
    pub fn from_rational(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(BigInt::one(), c);
        }
        ExactScalar { terms }
    }

    /// Embed an integer.
    pub fn from_int(n: i64) -> Self {
        ExactScalar::from_rational(Rational::from_int(n))
    }

    /// The exact square root of a nonnegative rational, normalised so that
    /// the radicand is a squarefree positive integer:
    /// `√(p/q) = (t/q)·√s` where `pq = t²·s`.
    pub fn sqrt_rational(r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(OrbitError::NegativeRadicand(r.to_string()));
        }
        if r.is_zero() {
            return Ok(ExactScalar::zero());
        }
        let pq = r.numer() * r.denom();
        let (t, s) = squarefree_decompose(&pq);
        let coeff = Rational::new(t, r.denom().clone());
        Ok(ExactScalar::term(coeff, s))
    }

    /// The single term `c·√s`; `s` must already be squarefree and positive.
    fn term(c: Rational, s: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(s, c);
        }
        ExactScalar { terms }
    }

    /// Whether the scalar is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the scalar is one.
    pub fn is_one(&self) -> bool {
        self.as_rational().map(|r| r.is_one()).unwrap_or(false)
    }

    /// Whether the scalar lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (s, c) = self.terms.iter().next().unwrap();
                if s.is_one() {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// The value as a rational, or a `NotRational` error.
    pub fn expect_rational(&self) -> Result<Rational> {
        self.as_rational()
            .ok_or_else(|| OrbitError::NotRational(self.to_string()))
    }

    /// Iterate over `(radicand, coefficient)` pairs in increasing radicand
    /// order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &Rational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, s: BigInt, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Exact sign: `-1`, `0` or `+1`.
    ///
    /// Rational scalars are decided directly.  Otherwise each `√rᵢ` is
    /// enclosed in a rational interval, the enclosures are combined by
    /// interval arithmetic, and the precision is doubled until zero is
    /// excluded.  Termination is guaranteed because the scalar, being
    /// canonically nonzero, is a nonzero real number.
    pub fn sign(&self) -> i8 {
        if self.terms.is_empty() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return r.signum();
        }
        let mut bits = 8u32;
        loop {
            let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
            for (s, c) in &self.terms {
                let (slo, shi) = sqrt_enclosure(s, bits);
                let (tlo, thi) = if c.is_negative() {
                    (c * &shi, c * &slo)
                } else {
                    (c * &slo, c * &shi)
                };
                lo += &tlo;
                hi += &thi;
            }
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
            assert!(bits < (1 << 20), "sign refinement failed to converge");
        }
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse.  Errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(OrbitError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(ExactScalar::from_rational(r.inv()?));
        }
        // Pick a prime p dividing some radicand and split z = A + √p·B with
        // A, B free of p.
        let p = self
            .terms
            .keys()
            .filter(|s| !s.is_one())
            .map(smallest_prime_factor)
            .min()
            .expect("irrational scalar has a radicand > 1");
        let mut a = ExactScalar::zero();
        let mut b = ExactScalar::zero();
        for (s, c) in &self.terms {
            if s.is_multiple_of(&p) {
                b.add_term(s / &p, c.clone());
            } else {
                a.add_term(s.clone(), c.clone());
            }
        }
        // z·z̄ = A² − p·B² lives in the subfield without √p and is nonzero
        // because √p is irrational over that subfield.
        let p_scalar = ExactScalar::from_rational(Rational::from_int(p.clone()));
        let norm = &(&a * &a) - &(&p_scalar * &(&b * &b));
        assert!(
            !norm.is_zero(),
            "conjugate norm vanished; canonical form violated"
        );
        let norm_inv = norm.inv()?;
        // (A − √p·B) / (A² − p·B²)
        let sqrt_p = ExactScalar::term(Rational::one(), p);
        let conj = &a - &(&sqrt_p * &b);
        Ok(&conj * &norm_inv)
    }

    /// Square root within the scalar field, when representable.
    ///
    /// Succeeds for every nonnegative rational, and for two-term values
    /// `a + b·√s` whose root splits as `√u + √v` with `u, v` rational — the
    /// case `a² − s·b²` a rational square (e.g. `√(5 + 2√6) = √2 + √3`).
    /// Returns `None` for negative values and for roots that leave the
    /// field.
    pub fn sqrt(&self) -> Option<ExactScalar> {
        if self.sign() < 0 {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return ExactScalar::sqrt_rational(&r).ok();
        }
        if self.terms.len() == 2 {
            let mut it = self.terms.iter();
            let (s0, c0) = it.next().unwrap();
            let (s1, c1) = it.next().unwrap();
            // BTreeMap order puts the rational part (radicand 1) first when
            // present; a two-term value without rational part has no root of
            // the form √u + √v with u, v rational.
            if s0.is_one() {
                let (a, b, s) = (c0.clone(), c1.clone(), s1.clone());
                // √(a + b√s) = √u + √v where u + v = a, u·v = s·b²/4,
                // requiring the discriminant a² − s·b² to be a square.
                let s_rat = Rational::from_int(s);
                let disc = &(&a * &a) - &(&s_rat * &(&b * &b));
                if let Some(d) = disc.sqrt_exact() {
                    let half = Rational::new(1, 2);
                    let u = &(&a + &d) * &half;
                    let v = &(&a - &d) * &half;
                    if !u.is_negative() && !v.is_negative() {
                        let ru = ExactScalar::sqrt_rational(&u).ok()?;
                        let rv = ExactScalar::sqrt_rational(&v).ok()?;
                        // b > 0 gives √u + √v; b < 0 gives |√u − √v|.
                        let cand = if b.is_negative() {
                            (&ru - &rv).abs()
                        } else {
                            &ru + &rv
                        };
                        if (&cand * &cand) == *self {
                            return Some(cand);
                        }
                    }
                }
            }
        }
        None
    }

    /// Approximate value as `f64` (for display only; never used in logic).
    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0;
        for (s, c) in &self.terms {
            let sf = big_to_f64(s).sqrt();
            let cf = big_to_f64(c.numer()) / big_to_f64(c.denom());
            acc += cf * sf;
        }
        acc
    }
}

fn big_to_f64(n: &BigInt) -> f64 {
    n.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// Rational enclosure `lo ≤ √s ≤ hi` obtained by `bits` bisection steps
/// starting from consecutive integers around the integer square root.
fn sqrt_enclosure(s: &BigInt, bits: u32) -> (Rational, Rational) {
    let r = s.sqrt();
    if &(&r * &r) == s {
        let e = Rational::from_int(r);
        return (e.clone(), e);
    }
    let mut lo = Rational::from_int(r.clone());
    let mut hi = Rational::from_int(r + 1);
    let target = Rational::from_int(s.clone());
    let half = Rational::new(1, 2);
    for _ in 0..bits {
        let mid = (&lo + &hi) * half.clone();
        if &mid * &mid <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

impl From<Rational> for ExactScalar {
    fn from(r: Rational) -> Self {
        ExactScalar::from_rational(r)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), -c);
        }
        out
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (s1, c1) in &self.terms {
            for (s2, c2) in &rhs.terms {
                // √r·√s = g·√(rs/g²) with g = gcd(r, s); the reduced radicand
                // is squarefree because r/g and s/g are coprime squarefree.
                let g = s1.gcd(s2);
                let s = (s1 / &g) * (s2 / &g);
                let c = &(c1 * c2) * &Rational::from_int(g);
                out.add_term(s, c);
            }
        }
        out
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| (s.clone(), -c))
            .collect();
        ExactScalar { terms }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        for (s, c) in &rhs.terms {
            self.add_term(s.clone(), c.clone());
        }
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        for (s, c) in &rhs.terms {
            self.add_term(s.clone(), -c);
        }
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = (&*self) * rhs;
    }
}

// ---------------------------------------------------------------------------
// Textual format: `3/7-1/7*sqrt(2)`, `sqrt(2)`, `-5`, `0`, …
// ---------------------------------------------------------------------------

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            let term = if s.is_one() {
                c.to_string()
            } else if c.is_one() {
                format!("sqrt({s})")
            } else if (-c).is_one() {
                format!("-sqrt({s})")
            } else {
                format!("{c}*sqrt({s})")
            };
            if i > 0 && !term.starts_with('-') {
                write!(f, "+")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactScalar {
    type Err = OrbitError;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(OrbitError::Parse("empty scalar".into()));
        }
        // Split into signed terms at top-level '+'/'-' (never inside `sqrt(…)`).
        let bytes = compact.as_bytes();
        let mut acc = ExactScalar::zero();
        let mut start = 0usize;
        let mut depth = 0i32;
        let mut cuts = Vec::new();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > 0 => cuts.push(i),
                _ => {}
            }
        }
        cuts.push(compact.len());
        for cut in cuts {
            let term = &compact[start..cut];
            acc += &parse_term(term, &compact)?;
            start = cut;
        }
        Ok(acc)
    }
}

fn parse_term(term: &str, whole: &str) -> Result<ExactScalar> {
    let bad = || OrbitError::Parse(format!("invalid scalar `{whole}`"));
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => (-Rational::one(), rest),
        None => (Rational::one(), term.strip_prefix('+').unwrap_or(term)),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coeff_str, radical) = match body.find("sqrt(") {
        Some(pos) => {
            let inner = body[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
            let coeff = match &body[..pos] {
                "" => "1".to_string(),
                c => c.strip_suffix('*').ok_or_else(bad)?.to_string(),
            };
            (coeff, Some(inner.to_string()))
        }
        None => (body.to_string(), None),
    };
    let coeff: Rational = coeff_str.parse().map_err(|_| bad())?;
    let coeff = &sign * &coeff;
    match radical {
        None => Ok(ExactScalar::from_rational(coeff)),
        Some(r) => {
            let rad: Rational = r.parse().map_err(|_| bad())?;
            let root = ExactScalar::sqrt_rational(&rad)?;
            Ok(&ExactScalar::from_rational(coeff) * &root)
        }
    }
}

// ---------------------------------------------------------------------------
// Serde: a scalar is a list of `{ "radicand": "p/q", "coeff": "p/q" }` terms.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermRepr {
    radicand: String,
    coeff: String,
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(s, c)| TermRepr {
                radicand: s.to_string(),
                coeff: c.to_string(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut acc = ExactScalar::zero();
        for t in terms {
            let rad: Rational = t.radicand.parse().map_err(D::Error::custom)?;
            let coeff: Rational = t.coeff.parse().map_err(D::Error::custom)?;
            let root = ExactScalar::sqrt_rational(&rad).map_err(D::Error::custom)?;
            acc += &(&ExactScalar::from_rational(coeff) * &root);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d)
    }

    fn sqrt(n: i64) -> ExactScalar {
        ExactScalar::sqrt_rational(&Rational::from_int(n)).unwrap()
    }

    #[test]
    fn radicand_normalisation() {
        // √(1/2) = (1/2)·√2
        let r = ExactScalar::sqrt_rational(&q(1, 2)).unwrap();
        let expected = &ExactScalar::from_rational(q(1, 2)) * &sqrt(2);
        assert_eq!(r, expected);
        // √(9/4) = 3/2 is rational
        let r = ExactScalar::sqrt_rational(&q(9, 4)).unwrap();
        assert_eq!(r.as_rational(), Some(q(3, 2)));
        // √72 = 6√2
        let r = sqrt(72);
        assert_eq!(r, &ExactScalar::from_int(6) * &sqrt(2));
        assert!(ExactScalar::sqrt_rational(&q(-1, 1)).is_err());
    }

    #[test]
    fn products_reduce_radicands() {
        // √2·√6 = 2√3
        let p = &sqrt(2) * &sqrt(6);
        assert_eq!(p, &ExactScalar::from_int(2) * &sqrt(3));
        // (√2)² = 2
        assert_eq!((&sqrt(2) * &sqrt(2)).as_rational(), Some(q(2, 1)));
    }

    #[test]
    fn inverse_of_three_plus_sqrt_two() {
        // Oracle for the conjugation-based inverse, frozen after independent
        // hand computation: (3 + √2)(3 − √2) = 7, so the inverse must be
        // 3/7 − (1/7)√2.  Verified here both against the frozen value and by
        // multiplying back.
        let z = &ExactScalar::from_int(3) + &sqrt(2);
        let inv = z.inv().unwrap();
        let frozen = &ExactScalar::from_rational(q(3, 7))
            - &(&ExactScalar::from_rational(q(1, 7)) * &sqrt(2));
        assert_eq!(inv, frozen);
        assert!((&z * &inv).is_one());
    }

    #[test]
    fn inverse_in_biquadratic_field() {
        // (1 + √2 + √3)⁻¹, checked by multiplying back.
        let z = &(&ExactScalar::one() + &sqrt(2)) + &sqrt(3);
        let inv = z.inv().unwrap();
        assert!((&z * &inv).is_one());
        // A denser element mixing √2, √3, √6.
        let z = &(&(&ExactScalar::from_rational(q(1, 3)) * &sqrt(6)) - &sqrt(2))
            + &(&ExactScalar::from_int(2) * &sqrt(3));
        let inv = z.inv().unwrap();
        assert!((&z * &inv).is_one());
        assert_eq!(
            ExactScalar::zero().inv(),
            Err(OrbitError::DivisionByZero)
        );
    }

    #[test]
    fn sqrt_in_field() {
        // Rational squares and plain radicals.
        assert_eq!(
            ExactScalar::from_rational(Rational::new(9, 4)).sqrt(),
            Some(ExactScalar::from_rational(Rational::new(3, 2)))
        );
        assert_eq!(ExactScalar::from_int(2).sqrt(), Some(sqrt(2)));
        // √(5 + 2√6) = √2 + √3.
        let d = &ExactScalar::from_int(5) + &(&ExactScalar::from_int(2) * &sqrt(6));
        assert_eq!(d.sqrt(), Some(&sqrt(2) + &sqrt(3)));
        // √((√3 − √2)²) = √3 − √2 via the b < 0 branch: 5 − 2√6.
        let d = &ExactScalar::from_int(5) - &(&ExactScalar::from_int(2) * &sqrt(6));
        assert_eq!(d.sqrt(), Some(&sqrt(3) - &sqrt(2)));
        // 1 + √2 is positive but its root leaves the field.
        let d = &ExactScalar::one() + &sqrt(2);
        assert_eq!(d.sqrt(), None);
        // Negative values have no real root.
        assert_eq!(ExactScalar::from_int(-4).sqrt(), None);
    }

    #[test]
    fn sign_by_interval_refinement() {
        // √2 + √3 − √5 > 0 but the naive integer enclosures straddle zero.
        let z = &(&sqrt(2) + &sqrt(3)) - &sqrt(5);
        assert_eq!(z.sign(), 1);
        let w = &sqrt(5) - &(&sqrt(2) + &sqrt(3));
        assert_eq!(w.sign(), -1);
        // 7/5 − √2 < 0 and 3/2 − √2 > 0 (tight rational bounds on √2).
        assert_eq!((&ExactScalar::from_rational(q(7, 5)) - &sqrt(2)).sign(), -1);
        assert_eq!((&ExactScalar::from_rational(q(3, 2)) - &sqrt(2)).sign(), 1);
        assert_eq!(ExactScalar::zero().sign(), 0);
    }

    #[test]
    fn canonical_equality_and_zero() {
        // √8 − 2√2 = 0 must cancel structurally.
        let z = &sqrt(8) - &(&ExactScalar::from_int(2) * &sqrt(2));
        assert!(z.is_zero());
        // √2·√3 − √6 = 0.
        let z = &(&sqrt(2) * &sqrt(3)) - &sqrt(6);
        assert!(z.is_zero());
    }

    #[test]
    fn display_and_parse_round_trip() {
        let z = &(&ExactScalar::from_rational(q(3, 7))
            - &(&ExactScalar::from_rational(q(1, 7)) * &sqrt(2)))
            + &sqrt(3);
        let s = z.to_string();
        assert_eq!(s, "3/7-1/7*sqrt(2)+sqrt(3)");
        let back: ExactScalar = s.parse().unwrap();
        assert_eq!(back, z);
        let parsed: ExactScalar = "2*sqrt(1/2)".parse().unwrap();
        assert_eq!(parsed, sqrt(2));
        assert_eq!("0".parse::<ExactScalar>().unwrap(), ExactScalar::zero());
        assert!("sqrt(2".parse::<ExactScalar>().is_err());
        assert!("".parse::<ExactScalar>().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let z = &(&ExactScalar::from_rational(q(-5, 3)) * &sqrt(6)) + &ExactScalar::one();
        let json = serde_json::to_string(&z).unwrap();
        let back: ExactScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, z);
    }
}
