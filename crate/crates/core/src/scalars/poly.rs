//! Dense univariate polynomials over ℚ, with exactly the factorisation
//! machinery needed to split characteristic polynomials of orthogonal Lie
//! algebra elements.
//!
//! The eigenvalues of such an element come in quadruples `{ζ, −ζ, ζ̄, −ζ̄}`,
//! so its characteristic polynomial is `±xᵏ·g(x²)` for some `g ∈ ℚ[y]`.
//! [`poly_even_factorization`] strips the power of `x`, verifies the parity,
//! compresses to `g`, factors `g` into irreducibles over ℚ, and returns the
//! even polynomials `u(x²)` — one per irreducible factor `u` of `g`.  Each
//! `u(x²)` is precisely the product of one orbit of irreducible factors of
//! the characteristic polynomial under `x ↦ −x` (for example
//! `x⁴ + x² + 1 = (x² + x + 1)(x² − x + 1)` is reported as a single even
//! quartic, not as its two non-even quadratic factors).
//!
//! Factoring `g` itself uses squarefree (Yun) decomposition, the rational
//! root theorem, and quadratic-pair splitting of quartics through the
//! resolvent cubic of the depressed form.  Degrees up to five — ambient
//! dimension up to ten — are guaranteed; anything harder reports
//! `FactorizationIncomplete` rather than guessing.

use std::fmt;

use num::bigint::BigInt;
use num::{Integer, One, Zero};

use super::rational::{positive_divisors, Rational};
use crate::error::{OrbitError, Result};

/// A polynomial with rational coefficients, stored dense, lowest degree
/// first, with no trailing zero coefficients (the zero polynomial is the
/// empty list).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    /// Build from coefficients (lowest degree first); trailing zeros are
    /// trimmed.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(Rational::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// A constant polynomial.
    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::from_ints(&[0, 1])
    }

    /// The monomial `c·x^d`.
    pub fn monomial(c: Rational, d: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[d] = c;
        Poly::new(coeffs)
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// All coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Whether the leading coefficient is one.
    pub fn is_monic(&self) -> bool {
        self.leading().map(Rational::is_one).unwrap_or(false)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Negation.
    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| -a).collect())
    }

    /// Sum.
    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::new(out)
    }

    /// Difference.
    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    /// Product.
    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(out)
    }

    /// Power by repeated squaring.
    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let dl = d.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap() / &dl;
            let t = Poly::monomial(c, rd - dd);
            q = q.add(&t);
            rem = rem.sub(&t.mul(d));
        }
        (q, rem)
    }

    /// Exact quotient; panics when the division is not exact.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            // normalising remainders keeps coefficient growth in check
            b = r.monic();
        }
        a.monic()
    }

    /// Formal derivative.
    /// Extended Euclid: returns `(g, s, t)` with `g = gcd(self, rhs)` monic
    /// (or zero when both inputs are zero) and `s·self + t·rhs = g`.
    pub fn ext_gcd(&self, rhs: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Inverse of `self` in `ℚ[x]/(modulus)`, or `None` when
    /// `gcd(self, modulus)` is not constant.
    pub fn invert_mod(&self, modulus: &Poly) -> Option<Poly> {
        let (g, s, _) = self.ext_gcd(modulus);
        if g.degree() == Some(0) {
            let (_, r) = s.divrem(modulus);
            Some(r)
        } else {
            None
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * &Rational::from_int(i as i64 + 1))
                .collect(),
        )
    }

    /// Evaluate at a rational point by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Composition `self(g(x))` by Horner's rule.
    pub fn compose(&self, g: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Whether every odd-degree coefficient vanishes.
    pub fn is_even_poly(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % 2 == 0 || c.is_zero())
    }

    /// For an even polynomial `h(x) = g(x²)`, return `g`.
    pub fn compress_even(&self) -> Poly {
        assert!(self.is_even_poly(), "compressing a non-even polynomial");
        Poly::new(self.coeffs.iter().step_by(2).cloned().collect())
    }

    /// Substitute `x²`: returns `self(x²)`.
    pub fn stretch(&self) -> Poly {
        let mut out = vec![Rational::zero(); self.coeffs.len() * 2];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        Poly::new(out)
    }

    // -- factorisation ----------------------------------------------------

    /// Squarefree decomposition by Yun's algorithm: returns each squarefree
    /// part with its multiplicity; the product of `part^mult` recovers the
    /// monic normalisation of `self`.
    pub fn squarefree_parts(&self) -> Vec<(Poly, usize)> {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_exact(&a);
        let mut d = df.div_exact(&a).sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1usize;
        while b.degree().unwrap_or(0) > 0 {
            let part = b.gcd(&d);
            if part.degree().unwrap_or(0) > 0 {
                out.push((part.clone(), i));
            }
            b = b.div_exact(&part);
            d = d.div_exact(&part).sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// All rational roots with multiplicities, by the rational root theorem
    /// on the primitive integer model.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        if self.is_zero() {
            return vec![];
        }
        let mut out = Vec::new();
        let mut f = self.clone();
        // Peel roots at zero first so the constant coefficient is nonzero.
        let k = f
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial");
        if k > 0 {
            out.push((Rational::zero(), k));
            f = Poly::new(f.coeffs[k..].to_vec());
        }
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        // Primitive integer model.
        let mut lcm = BigInt::one();
        for c in &f.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = f
            .coeffs
            .iter()
            .map(|c| {
                let r = c * &Rational::from_int(lcm.clone());
                debug_assert!(r.is_integer());
                r.numer().clone()
            })
            .collect();
        let a0 = ints.first().unwrap().clone();
        let an = ints.last().unwrap().clone();
        debug_assert!(!a0.is_zero() && !an.is_zero());
        let mut candidates = Vec::new();
        for p in positive_divisors(&a0) {
            for q in positive_divisors(&an) {
                let c = Rational::new(p.clone(), q.clone());
                candidates.push(c.clone());
                candidates.push(-&c);
            }
        }
        candidates.sort();
        candidates.dedup();
        for c in candidates {
            if f.eval(&c).is_zero() {
                let lin = Poly::new(vec![-&c, Rational::one()]);
                let mut mult = 0usize;
                loop {
                    let (q, r) = f.divrem(&lin);
                    if !r.is_zero() {
                        break;
                    }
                    f = q;
                    mult += 1;
                }
                out.push((c, mult));
            }
        }
        out
    }

    /// Factor the monic normalisation into monic irreducible factors over ℚ
    /// with multiplicities, sorted by degree and then coefficients.
    ///
    /// Complete for squarefree parts of degree ≤ 4 after rational-root
    /// peeling; degree ≥ 5 remainders without rational roots report
    /// [`OrbitError::FactorizationIncomplete`].
    pub fn factor(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(OrbitError::FactorizationIncomplete(
                "zero polynomial".into(),
            ));
        }
        let mut out: Vec<(Poly, usize)> = Vec::new();
        for (part, mult) in self.squarefree_parts() {
            for f in factor_squarefree(&part)? {
                match out.iter_mut().find(|(g, _)| *g == f) {
                    Some((_, m)) => *m += mult,
                    None => out.push((f, mult)),
                }
            }
        }
        out.sort_by(|(a, _), (b, _)| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs.cmp(&b.coeffs))
        });
        Ok(out)
    }
}

/// Factor a monic squarefree polynomial into monic irreducibles.
fn factor_squarefree(f: &Poly) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    let mut rem = f.monic();
    for (root, mult) in f.rational_roots() {
        debug_assert_eq!(mult, 1, "squarefree part with repeated root");
        let lin = Poly::new(vec![-&root, Rational::one()]);
        rem = rem.div_exact(&lin);
        out.push(lin);
    }
    match rem.degree().unwrap_or(0) {
        0 => {}
        1 => out.push(rem),
        2 | 3 => out.push(rem), // no rational root ⇒ irreducible at degree ≤ 3
        4 => match quartic_quadratic_split(&rem) {
            Some((a, b)) => {
                out.push(a);
                out.push(b);
            }
            None => out.push(rem),
        },
        d => {
            return Err(OrbitError::FactorizationIncomplete(format!(
                "irreducibility test for degree-{d} remainder is unsupported"
            )))
        }
    }
    Ok(out)
}

/// Split a monic quartic with no rational roots into two monic rational
/// quadratics, when possible.
///
/// The quartic is depressed to `t⁴ + p·t² + q·t + r`; a splitting
/// `(t² + a·t + b)(t² − a·t + c)` exists over ℚ exactly when the resolvent
/// cubic `z³ + 2p·z² + (p² − 4r)·z − q²` has a rational root `z = a²` that is
/// the square of a rational (plus the biquadratic special cases for `q = 0`).
fn quartic_quadratic_split(f: &Poly) -> Option<(Poly, Poly)> {
    debug_assert_eq!(f.degree(), Some(4));
    debug_assert!(f.is_monic());
    let quarter_a3 = &f.coeff(3) * &Rational::new(1, 4);
    // d(t) = f(t − a₃/4) has no t³ term.
    let shift = Poly::new(vec![-&quarter_a3, Rational::one()]);
    let d = f.compose(&shift);
    debug_assert!(d.coeff(3).is_zero());
    let p = d.coeff(2);
    let q = d.coeff(1);
    let r = d.coeff(0);
    let two = Rational::from_int(2);

    let mut split: Option<(Poly, Poly)> = None;
    if q.is_zero() {
        // (t² + b)(t² + c) with b + c = p, bc = r …
        let disc = &(&p * &p) - &(&Rational::from_int(4) * &r);
        if let Some(s) = disc.sqrt_exact() {
            let b = &(&p + &s) / &two;
            let c = &(&p - &s) / &two;
            split = Some((
                Poly::new(vec![b, Rational::zero(), Rational::one()]),
                Poly::new(vec![c, Rational::zero(), Rational::one()]),
            ));
        } else {
            // … or (t² + at + b)(t² − at + b) with b² = r, a² = 2b − p.
            if let Some(sr) = r.sqrt_exact() {
                for b in [sr.clone(), -&sr] {
                    let a2 = &(&two * &b) - &p;
                    if let Some(a) = a2.sqrt_exact() {
                        if !a.is_zero() {
                            split = Some((
                                Poly::new(vec![b.clone(), a.clone(), Rational::one()]),
                                Poly::new(vec![b.clone(), -&a, Rational::one()]),
                            ));
                            break;
                        }
                    }
                }
            }
        }
    } else {
        // Resolvent cubic in z = a².
        let resolvent = Poly::new(vec![
            -&(&q * &q),
            &(&p * &p) - &(&Rational::from_int(4) * &r),
            &two * &p,
            Rational::one(),
        ]);
        let mut roots: Vec<Rational> =
            resolvent.rational_roots().into_iter().map(|(z, _)| z).collect();
        roots.sort();
        for z in roots {
            if !z.is_positive() {
                continue;
            }
            if let Some(a) = z.sqrt_exact() {
                let q_over_a = &q / &a;
                let b = &(&(&p + &z) - &q_over_a) / &two;
                let c = &(&(&p + &z) + &q_over_a) / &two;
                split = Some((
                    Poly::new(vec![b, a.clone(), Rational::one()]),
                    Poly::new(vec![c, -&a, Rational::one()]),
                ));
                break;
            }
        }
    }

    let (f1, f2) = split?;
    debug_assert_eq!(f1.mul(&f2), d, "depressed quartic split must multiply back");
    // Undo the depression: t = y + a₃/4.
    let unshift = Poly::new(vec![quarter_a3, Rational::one()]);
    let g1 = f1.compose(&unshift);
    let g2 = f2.compose(&unshift);
    debug_assert_eq!(g1.mul(&g2), *f);
    // Canonical order.
    if g1.coeffs() <= g2.coeffs() {
        Some((g1, g2))
    } else {
        Some((g2, g1))
    }
}

/// Factor a characteristic polynomial of an orthogonal Lie algebra element
/// into the zero-eigenvalue multiplicity and its even irreducible-class
/// factors.
///
/// Returns `(k, classes)` where `p(x) = lead·xᵏ·∏ u(x²)^m` and each listed
/// class polynomial `u(x²)` is even, equal to the product of one orbit of
/// monic irreducible factors of `p` under `x ↦ −x` (`u` irreducible over ℚ).
/// Classes are sorted by degree, then descending on coefficient vectors, so
/// that real-pair classes `x² − a²` come out with ascending datum.
///
/// Errors: [`OrbitError::NotEvenOdd`] when `p(x) ≠ ±p(−x)`, and
/// [`OrbitError::FactorizationIncomplete`] outside the supported degree range.
pub fn poly_even_factorization(p: &Poly) -> Result<(usize, Vec<(Poly, usize)>)> {
    if p.is_zero() {
        return Err(OrbitError::FactorizationIncomplete(
            "zero polynomial".into(),
        ));
    }
    let k = p
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial");
    let h = Poly::new(p.coeffs()[k..].to_vec());
    if !h.is_even_poly() {
        return Err(OrbitError::NotEvenOdd);
    }
    let g = h.compress_even().monic();
    let factors = g.factor()?;
    let mut classes: Vec<(Poly, usize)> = factors
        .into_iter()
        .map(|(u, m)| (u.stretch(), m))
        .collect();
    classes.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| b.coeffs().cmp(a.coeffs()))
    });
    Ok((k, classes))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{sign}")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
