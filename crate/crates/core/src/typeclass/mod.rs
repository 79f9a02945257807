//! Indecomposable-type bookkeeping for pairs `(Y, W; γ)`: an orthogonal-algebra
//! element `Y` on a nondegenerate symmetric bilinear space decomposes into
//! indecomposable summands, and each summand is named by a [`TypeLabel`]
//! (eigenvalue class, height, and an optional sign invariant). A full
//! decomposition is recorded as a [`TypeMultiset`].
//!
//! Labels have a canonical string grammar used across the crate and the CLI:
//! `D<sign>_<m>(0)`, `D_<m>(0,0)`, `D_<m>(RP a=<q>)`, `D<sign>_<m>(IP b=<q>)`,
//! `D_<m>(CQ <c4,c2,c0>)`.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{OrbitError, Result};
use crate::scalars::{Poly, Rational};

mod classify;
mod synthesize;

pub use classify::{
    classify_pair, induced_form_signs, jordan_chevalley, nilpotent_block_structure,
    primary_split, SubPair,
};
pub use synthesize::{label_dim_index, synthesize_type};
pub(crate) use synthesize::{zero_even_model, zero_odd_model};

/// Which part of the real spectrum an indecomposable summand lives on.
///
/// Eigenvalues of an orthogonal-algebra element come in quadruples
/// `ζ, −ζ, ζ̄, −ζ̄`; the degenerate quadruples give three further shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenvalueClass {
    /// Eigenvalue 0 (nilpotent summand).
    Zero,
    /// Real pair `±√a`, stored by the rational `a > 0` (so the class
    /// polynomial is `x² − a`); `a` may or may not be a rational square.
    RP {
        /// The square of the eigenvalue pair; positive.
        a: Rational,
    },
    /// Imaginary pair `±i√b`, stored by the rational `b > 0` (class
    /// polynomial `x² + b`).
    IP {
        /// Negative of the square of the eigenvalue pair; positive.
        b: Rational,
    },
    /// Full complex quadruple, stored as the monic even quartic
    /// `x⁴ + c₂x² + c₀` it satisfies, with `c₂² − 4c₀ < 0`.
    CQ {
        /// The minimal polynomial of the quadruple: monic, even, quartic,
        /// irreducible over ℚ with non-real roots.
        quartic: Poly,
    },
}

impl EigenvalueClass {
    /// Canonical printing/sorting rank: CQ < IP < RP < Zero.
    fn kind_rank(&self) -> u8 {
        match self {
            EigenvalueClass::CQ { .. } => 0,
            EigenvalueClass::IP { .. } => 1,
            EigenvalueClass::RP { .. } => 2,
            EigenvalueClass::Zero => 3,
        }
    }

    /// Rational data determining the class within its kind, in display order.
    fn datum(&self) -> Vec<Rational> {
        match self {
            EigenvalueClass::Zero => vec![],
            EigenvalueClass::RP { a } => vec![a.clone()],
            EigenvalueClass::IP { b } => vec![b.clone()],
            EigenvalueClass::CQ { quartic } => vec![quartic.coeff(2), quartic.coeff(0)],
        }
    }

    /// Number of Jordan blocks of the nilpotent part spanned by one
    /// indecomposable of this class (per chosen height).
    pub fn blocks_per_summand(&self) -> usize {
        match self {
            EigenvalueClass::Zero => 1,
            EigenvalueClass::RP { .. } | EigenvalueClass::IP { .. } => 2,
            EigenvalueClass::CQ { .. } => 4,
        }
    }

    /// The monic polynomial cutting out this class's generalized eigenspace.
    pub fn class_poly(&self) -> Poly {
        match self {
            EigenvalueClass::Zero => Poly::x(),
            EigenvalueClass::RP { a } => Poly::new(vec![-a.clone(), Rational::zero(), Rational::one()]),
            EigenvalueClass::IP { b } => Poly::new(vec![b.clone(), Rational::zero(), Rational::one()]),
            EigenvalueClass::CQ { quartic } => quartic.clone(),
        }
    }

    /// Interpret one even class polynomial (a factor produced by
    /// characteristic-polynomial factorization, or `x` itself) as a class.
    ///
    /// Degree-2 factors `x² + c` split on the sign of `c`; degree-4 factors
    /// must have negative discriminant `c₂² − 4c₀ < 0` (a genuine complex
    /// quadruple). Anything else — irrational real/imaginary pairs hiding in
    /// a positive-discriminant quartic, or degree ≥ 6 — is unsupported.
    pub fn from_class_poly(f: &Poly) -> Result<EigenvalueClass> {
        if *f == Poly::x() {
            return Ok(EigenvalueClass::Zero);
        }
        match f.degree() {
            Some(2) if f.is_monic() && f.coeff(1).is_zero() => {
                let c = f.coeff(0);
                if c.is_negative() {
                    Ok(EigenvalueClass::RP { a: -&c })
                } else if c.is_positive() {
                    Ok(EigenvalueClass::IP { b: c })
                } else {
                    Err(OrbitError::UnsupportedEigenvalues(f.to_string()))
                }
            }
            Some(4) if f.is_monic() && f.is_even_poly() => {
                let c2 = f.coeff(2);
                let c0 = f.coeff(0);
                let disc = &(&c2 * &c2) - &(&Rational::from_int(4) * &c0);
                if disc.is_negative() {
                    Ok(EigenvalueClass::CQ { quartic: f.clone() })
                } else {
                    Err(OrbitError::UnsupportedEigenvalues(f.to_string()))
                }
            }
            _ => Err(OrbitError::UnsupportedEigenvalues(f.to_string())),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            EigenvalueClass::Zero => Ok(()),
            EigenvalueClass::RP { a } => {
                if a.is_positive() {
                    Ok(())
                } else {
                    Err(OrbitError::InvalidLabel(format!(
                        "real-pair datum a={a} must be positive"
                    )))
                }
            }
            EigenvalueClass::IP { b } => {
                if b.is_positive() {
                    Ok(())
                } else {
                    Err(OrbitError::InvalidLabel(format!(
                        "imaginary-pair datum b={b} must be positive"
                    )))
                }
            }
            EigenvalueClass::CQ { quartic } => {
                let ok = quartic.degree() == Some(4)
                    && quartic.is_monic()
                    && quartic.is_even_poly();
                if !ok {
                    return Err(OrbitError::InvalidLabel(format!(
                        "quartic {quartic} must be monic and even of degree 4"
                    )));
                }
                let c2 = quartic.coeff(2);
                let c0 = quartic.coeff(0);
                let disc = &(&c2 * &c2) - &(&Rational::from_int(4) * &c0);
                if disc.is_negative() {
                    Ok(())
                } else {
                    Err(OrbitError::InvalidLabel(format!(
                        "quartic {quartic} has non-negative discriminant; eigenvalues are not a complex quadruple"
                    )))
                }
            }
        }
    }
}

/// Canonical name of one indecomposable summand: eigenvalue class, height
/// `m` (largest Jordan-block exponent: blocks have size `m + 1`), and a sign
/// invariant exactly when the class carries one (Zero with even height, and
/// IP at any height). Zero with odd height denotes the paired two-block
/// summand printed `D_<m>(0,0)`.
#[derive(Clone, Debug)]
pub struct TypeLabel {
    class: EigenvalueClass,
    height: usize,
    sign: Option<i8>,
}

impl TypeLabel {
    /// Build a label, validating the class datum and the sign slot: a sign
    /// is required exactly for even-height nilpotent types and for
    /// imaginary-pair types, and must be `±1`.
    pub fn new(class: EigenvalueClass, height: usize, sign: Option<i8>) -> Result<Self> {
        class.validate()?;
        if let Some(s) = sign {
            if s != 1 && s != -1 {
                return Err(OrbitError::InvalidLabel(format!(
                    "sign must be +1 or -1, got {s}"
                )));
            }
        }
        let needs_sign = match class {
            EigenvalueClass::Zero => height % 2 == 0,
            EigenvalueClass::IP { .. } => true,
            EigenvalueClass::RP { .. } | EigenvalueClass::CQ { .. } => false,
        };
        if needs_sign != sign.is_some() {
            return Err(OrbitError::InvalidLabel(format!(
                "label with class {:?} and height {height} {} a sign",
                class,
                if needs_sign { "requires" } else { "does not take" }
            )));
        }
        Ok(TypeLabel { class, height, sign })
    }

    /// `D<sign>_<m>(0)` or `D_<m>(0,0)` depending on the parity of `m`.
    pub fn zero(height: usize, sign: impl Into<Option<i8>>) -> Result<Self> {
        TypeLabel::new(EigenvalueClass::Zero, height, sign.into())
    }

    /// `D_<m>(RP a=<a>)`.
    pub fn rp(height: usize, a: Rational) -> Result<Self> {
        TypeLabel::new(EigenvalueClass::RP { a }, height, None)
    }

    /// `D<sign>_<m>(IP b=<b>)`.
    pub fn ip(height: usize, sign: i8, b: Rational) -> Result<Self> {
        TypeLabel::new(EigenvalueClass::IP { b }, height, Some(sign))
    }

    /// `D_<m>(CQ 1,<c2>,<c0>)`.
    pub fn cq(height: usize, c2: Rational, c0: Rational) -> Result<Self> {
        let quartic = Poly::new(vec![
            c0,
            Rational::zero(),
            c2,
            Rational::zero(),
            Rational::one(),
        ]);
        TypeLabel::new(EigenvalueClass::CQ { quartic }, height, None)
    }

    /// The eigenvalue class of the label.
    pub fn class(&self) -> &EigenvalueClass {
        &self.class
    }

    /// The height `m` (the indecomposable has Jordan blocks of size `m+1`).
    pub fn height(&self) -> usize {
        self.height
    }

    /// The sign `ε`, present exactly when the type carries one.
    pub fn sign(&self) -> Option<i8> {
        self.sign
    }

    /// Canonical sort key: class kind, height descending, sign (− before +),
    /// then the class datum ascending.
    fn key(&self) -> (u8, Reverse<usize>, u8, Vec<Rational>) {
        let sign_rank = match self.sign {
            Some(-1) | None => 0,
            Some(_) => 1,
        };
        (
            self.class.kind_rank(),
            Reverse(self.height),
            sign_rank,
            self.class.datum(),
        )
    }
}

impl PartialEq for TypeLabel {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for TypeLabel {}

impl PartialOrd for TypeLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TypeLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            Some(1) => "+",
            Some(_) => "-",
            None => "",
        };
        write!(f, "D{sign}_{}", self.height)?;
        match &self.class {
            EigenvalueClass::Zero => {
                if self.height % 2 == 0 {
                    write!(f, "(0)")
                } else {
                    write!(f, "(0,0)")
                }
            }
            EigenvalueClass::RP { a } => write!(f, "(RP a={a})"),
            EigenvalueClass::IP { b } => write!(f, "(IP b={b})"),
            EigenvalueClass::CQ { quartic } => {
                write!(f, "(CQ 1,{},{})", quartic.coeff(2), quartic.coeff(0))
            }
        }
    }
}

impl FromStr for TypeLabel {
    type Err = OrbitError;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = || OrbitError::InvalidLabel(s.to_string());
        let t = s.trim();
        let rest = t.strip_prefix('D').ok_or_else(invalid)?;
        let (sign, rest) = if let Some(r) = rest.strip_prefix('+') {
            (Some(1i8), r)
        } else if let Some(r) = rest.strip_prefix('-') {
            (Some(-1i8), r)
        } else {
            (None, rest)
        };
        let rest = rest.strip_prefix('_').ok_or_else(invalid)?;
        let open = rest.find('(').ok_or_else(invalid)?;
        let height: usize = rest[..open].parse().map_err(|_| invalid())?;
        let body = rest[open + 1..].strip_suffix(')').ok_or_else(invalid)?;
        let class = if body == "0" || body == "0,0" {
            if (body == "0,0") == (height % 2 == 1) {
                EigenvalueClass::Zero
            } else {
                return Err(invalid());
            }
        } else if let Some(q) = body.strip_prefix("RP a=") {
            EigenvalueClass::RP {
                a: q.trim().parse().map_err(|_| invalid())?,
            }
        } else if let Some(q) = body.strip_prefix("IP b=") {
            EigenvalueClass::IP {
                b: q.trim().parse().map_err(|_| invalid())?,
            }
        } else if let Some(q) = body.strip_prefix("CQ ") {
            let parts: Vec<&str> = q.split(',').collect();
            if parts.len() != 3 {
                return Err(invalid());
            }
            let c4: Rational = parts[0].trim().parse().map_err(|_| invalid())?;
            if !c4.is_one() {
                return Err(invalid());
            }
            let c2: Rational = parts[1].trim().parse().map_err(|_| invalid())?;
            let c0: Rational = parts[2].trim().parse().map_err(|_| invalid())?;
            EigenvalueClass::CQ {
                quartic: Poly::new(vec![
                    c0,
                    Rational::zero(),
                    c2,
                    Rational::zero(),
                    Rational::one(),
                ]),
            }
        } else {
            return Err(invalid());
        };
        TypeLabel::new(class, height, sign).map_err(|_| invalid())
    }
}

impl Serialize for TypeLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TypeLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Counted collection of [`TypeLabel`]s describing a full decomposition.
/// Prints as ` + `-joined tokens (repeated per multiplicity) in canonical
/// label order, so equal multisets have equal strings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeMultiset(BTreeMap<TypeLabel, usize>);

impl TypeMultiset {
    /// The empty multiset.
    pub fn new() -> Self {
        TypeMultiset(BTreeMap::new())
    }

    /// Add `count` copies of `label` (adding zero copies is a no-op).
    pub fn insert(&mut self, label: TypeLabel, count: usize) {
        if count > 0 {
            *self.0.entry(label).or_insert(0) += count;
        }
    }

    /// Remove one copy of `label`; false when it is not present.
    pub fn remove_one(&mut self, label: &TypeLabel) -> bool {
        match self.0.get_mut(label) {
            Some(c) if *c > 1 => {
                *c -= 1;
                true
            }
            Some(_) => {
                self.0.remove(label);
                true
            }
            None => false,
        }
    }

    /// The multiplicity of `label` (zero if absent).
    pub fn count(&self, label: &TypeLabel) -> usize {
        self.0.get(label).copied().unwrap_or(0)
    }

    /// Distinct labels with their multiplicities, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&TypeLabel, usize)> {
        self.0.iter().map(|(l, c)| (l, *c))
    }

    /// Total number of summands, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.0.values().sum()
    }

    /// Whether the multiset has no labels at all.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of (dimension, index) over all summands with multiplicity.
    pub fn total_dim_index(&self) -> Result<(usize, usize)> {
        let mut dim = 0;
        let mut index = 0;
        for (label, count) in self.iter() {
            let (d, i) = label_dim_index(label)?;
            dim += d * count;
            index += i * count;
        }
        Ok((dim, index))
    }
}

impl FromIterator<TypeLabel> for TypeMultiset {
    fn from_iter<I: IntoIterator<Item = TypeLabel>>(iter: I) -> Self {
        let mut out = TypeMultiset::new();
        for label in iter {
            out.insert(label, 1);
        }
        out
    }
}

impl fmt::Display for TypeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (label, count) in self.iter() {
            for _ in 0..count {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "{label}")?;
                first = false;
            }
        }
        Ok(())
    }
}

impl FromStr for TypeMultiset {
    type Err = OrbitError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() {
            return Ok(TypeMultiset::new());
        }
        t.split(" + ").map(|tok| tok.parse()).collect::<Result<_>>()
    }
}

impl Serialize for TypeMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TypeMultiset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
