//! Adjoint-orbit classification for the affine orthogonal group.
//!
//! An adjoint orbit of `O(p,q) ⋉ ℝⁿ` is encoded by a *triple*: a
//! nondegenerate symmetric form `γ` on a space `W`, an operator `Y` in the
//! orthogonal Lie algebra of `γ`, and a marked nonzero isotropic vector `v°`
//! annihilated by `Y`.  Two triples are equivalent when an isometry
//! intertwines the operators *and* maps one marked vector to the other.
//!
//! The complete invariant is an [`AdjointOrbitLabel`]: a distinguished
//! nilpotent part ([`DistinguishedLabel`]) remembering how `v°` sits inside
//! the operator's Jordan structure — its height `h`, and the parameter
//! `p = γ(w, v°)` over solutions of `Yʰw = v°` — plus an ordinary
//! [`TypeMultiset`] for the rest of the space.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{OrbitError, Result};
use crate::formspace::{
    orthocomplement, signature_index, standard_k, standardize_with_isotropic, FormSpace,
};
use crate::linalg::{orthogonality_check, Matrix, OrthKind};
use crate::scalars::{ExactScalar, Rational};
use crate::typeclass::{
    classify_pair, zero_even_model, zero_odd_model, EigenvalueClass, TypeLabel, TypeMultiset,
};

/// A form space with a skew-adjoint operator and a marked vector: the raw
/// input of adjoint-orbit classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointTriple {
    /// The ambient form space `(W, γ)`.
    pub space: FormSpace,
    /// The operator, an element of the orthogonal Lie algebra of the form.
    pub y: Matrix,
    /// The marked vector `v°`: nonzero, isotropic, annihilated by `y`.
    pub v0: Matrix,
}

#[derive(Serialize, Deserialize)]
struct TripleFile {
    gram: Matrix,
    #[serde(rename = "Y")]
    y: Matrix,
    v0: Matrix,
}

impl Serialize for AdjointTriple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TripleFile {
            gram: self.space.gram.clone(),
            y: self.y.clone(),
            v0: self.v0.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AdjointTriple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = TripleFile::deserialize(d)?;
        Ok(AdjointTriple {
            space: FormSpace::new(f.gram),
            y: f.y,
            v0: f.v0,
        })
    }
}

/// The distinguished (marked-vector-carrying) part of an adjoint orbit
/// label.  The three cases are mutually exclusive: a nonzero parameter
/// forces even height and a single Jordan chain; a zero parameter needs a
/// second chain and splits by the parity of the height.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DistinguishedLabel {
    /// Nonzero parameter `p = ε·μ²`: even height `h > 0`, one chain of
    /// length `h+1`.
    Case1 {
        /// Distinguished height (even, positive).
        h: usize,
        /// Sign of the parameter.
        eps: i8,
        /// Modulus squared `μ² = |p|`, a positive rational.
        mu2: Rational,
    },
    /// Zero parameter, odd height: two chains of length `h+1`.
    Case2 {
        /// Distinguished height (odd).
        h: usize,
    },
    /// Zero parameter, even height (possibly `0`): two chains of length
    /// `h+1`.
    Case3 {
        /// Distinguished height (even).
        h: usize,
    },
}

impl DistinguishedLabel {
    /// Check the case-specific constraints on height, sign, and modulus.
    pub fn validate(&self) -> Result<()> {
        match self {
            DistinguishedLabel::Case1 { h, eps, mu2 } => {
                if *h == 0 || *h % 2 != 0 {
                    return Err(OrbitError::InvalidLabel(format!(
                        "nonzero-parameter distinguished height must be even and positive, got {h}"
                    )));
                }
                if *eps != 1 && *eps != -1 {
                    return Err(OrbitError::InvalidLabel(format!(
                        "sign must be +1 or -1, got {eps}"
                    )));
                }
                if !mu2.is_positive() {
                    return Err(OrbitError::InvalidLabel(format!(
                        "modulus squared must be positive, got {mu2}"
                    )));
                }
            }
            DistinguishedLabel::Case2 { h } => {
                if *h % 2 != 1 {
                    return Err(OrbitError::InvalidLabel(format!(
                        "two-chain distinguished height written D_h(0,0) must be odd, got {h}"
                    )));
                }
            }
            DistinguishedLabel::Case3 { h } => {
                if *h % 2 != 0 {
                    return Err(OrbitError::InvalidLabel(format!(
                        "two-chain distinguished height written D+_h(0)+D-_h(0) must be even, got {h}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The distinguished height.
    pub fn height(&self) -> usize {
        match self {
            DistinguishedLabel::Case1 { h, .. }
            | DistinguishedLabel::Case2 { h }
            | DistinguishedLabel::Case3 { h } => *h,
        }
    }

    /// The parameter invariant `p`: `ε·μ²` in case 1, zero otherwise.
    pub fn parameter(&self) -> Rational {
        match self {
            DistinguishedLabel::Case1 { eps, mu2, .. } => {
                if *eps > 0 {
                    mu2.clone()
                } else {
                    -mu2.clone()
                }
            }
            _ => Rational::zero(),
        }
    }

    /// Dimension of the distinguished summand.
    pub fn dim(&self) -> usize {
        match self {
            DistinguishedLabel::Case1 { h, .. } => h + 1,
            DistinguishedLabel::Case2 { h } | DistinguishedLabel::Case3 { h } => 2 * (h + 1),
        }
    }

    /// Index (negative inertia) of the form restricted to the distinguished
    /// summand.
    pub fn index(&self) -> usize {
        match self {
            DistinguishedLabel::Case1 { h, eps, .. } => {
                let q = h / 2;
                let corner = if q % 2 == 0 { *eps } else { -eps };
                q + usize::from(corner < 0)
            }
            DistinguishedLabel::Case2 { h } | DistinguishedLabel::Case3 { h } => h + 1,
        }
    }

    /// The plain types underlying the distinguished summand once the marked
    /// vector is forgotten; used for multiset subtraction.
    pub fn underlying_types(&self) -> Result<Vec<TypeLabel>> {
        match self {
            DistinguishedLabel::Case1 { h, eps, .. } => {
                Ok(vec![TypeLabel::new(EigenvalueClass::Zero, *h, Some(*eps))?])
            }
            DistinguishedLabel::Case2 { h } => {
                Ok(vec![TypeLabel::new(EigenvalueClass::Zero, *h, None)?])
            }
            DistinguishedLabel::Case3 { h } => Ok(vec![
                TypeLabel::new(EigenvalueClass::Zero, *h, Some(1))?,
                TypeLabel::new(EigenvalueClass::Zero, *h, Some(-1))?,
            ]),
        }
    }
}

impl fmt::Display for DistinguishedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistinguishedLabel::Case1 { h, eps, mu2 } => {
                let s = if *eps > 0 { '+' } else { '-' };
                write!(f, "u{{D{s}_{h}(0), mu2={mu2}}}")
            }
            DistinguishedLabel::Case2 { h } => write!(f, "u{{D_{h}(0,0)}}"),
            DistinguishedLabel::Case3 { h } => write!(f, "u{{D+_{h}(0)+D-_{h}(0)}}"),
        }
    }
}

impl FromStr for DistinguishedLabel {
    type Err = OrbitError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || OrbitError::Parse(format!("invalid distinguished label: {s}"));
        let inner = s
            .strip_prefix("u{")
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(bad)?;
        let label = if let Some((tok, q)) = inner.split_once(", mu2=") {
            let t: TypeLabel = tok.parse().map_err(|_| bad())?;
            let (h, eps) = match (t.class(), t.sign()) {
                (EigenvalueClass::Zero, Some(e)) => (t.height(), e),
                _ => return Err(bad()),
            };
            let mu2: Rational = q.parse().map_err(|_| bad())?;
            DistinguishedLabel::Case1 { h, eps, mu2 }
        } else if let Some((left, right)) = inner.split_once(")+") {
            let plus: TypeLabel = format!("{left})").parse().map_err(|_| bad())?;
            let minus: TypeLabel = right.parse().map_err(|_| bad())?;
            if !matches!(plus.class(), EigenvalueClass::Zero)
                || !matches!(minus.class(), EigenvalueClass::Zero)
                || plus.sign() != Some(1)
                || minus.sign() != Some(-1)
                || plus.height() != minus.height()
            {
                return Err(bad());
            }
            DistinguishedLabel::Case3 { h: plus.height() }
        } else {
            let t: TypeLabel = inner.parse().map_err(|_| bad())?;
            if !matches!(t.class(), EigenvalueClass::Zero) || t.sign().is_some() {
                return Err(bad());
            }
            DistinguishedLabel::Case2 { h: t.height() }
        };
        label.validate()?;
        Ok(label)
    }
}

impl Serialize for DistinguishedLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DistinguishedLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// Complete adjoint-orbit invariant: the distinguished part plus the type
/// multiset of the complementary summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointOrbitLabel {
    /// The distinguished (marked) nilpotent part.
    pub distinguished: DistinguishedLabel,
    /// Types of the orthogonal complement of the distinguished summand.
    pub rest: TypeMultiset,
}

impl AdjointOrbitLabel {
    /// Total `(dimension, index)` of any space realizing this label.
    pub fn dim_index(&self) -> Result<(usize, usize)> {
        let (rd, ri) = self.rest.total_dim_index()?;
        Ok((self.distinguished.dim() + rd, self.distinguished.index() + ri))
    }
}

impl fmt::Display for AdjointOrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rest.is_empty() {
            write!(f, "{}", self.distinguished)
        } else {
            write!(f, "{} + {}", self.distinguished, self.rest)
        }
    }
}

impl FromStr for AdjointOrbitLabel {
    type Err = OrbitError;

    fn from_str(s: &str) -> Result<Self> {
        let close = s
            .find('}')
            .ok_or_else(|| OrbitError::Parse(format!("invalid adjoint label: {s}")))?;
        let distinguished: DistinguishedLabel = s[..=close].parse()?;
        let tail = &s[close + 1..];
        let rest = if tail.trim().is_empty() {
            TypeMultiset::new()
        } else {
            let tokens = tail.strip_prefix(" + ").ok_or_else(|| {
                OrbitError::Parse(format!("expected ' + ' before type tokens in: {s}"))
            })?;
            tokens.parse()?
        };
        Ok(AdjointOrbitLabel {
            distinguished,
            rest,
        })
    }
}

impl Serialize for AdjointOrbitLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for AdjointOrbitLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// Check the four triple invariants: shape/algebra membership of `y`,
/// nonzero isotropy of `v0`, and `y·v0 = 0`.
pub fn validate_triple(t: &AdjointTriple) -> Result<()> {
    let n = t.space.dim;
    if !t.y.is_square() || t.y.rows() != n || t.v0.rows() != n || t.v0.cols() != 1 {
        return Err(OrbitError::DimensionMismatch(format!(
            "triple shapes: space dim {n}, operator {}x{}, marked vector {}x{}",
            t.y.rows(),
            t.y.cols(),
            t.v0.rows(),
            t.v0.cols()
        )));
    }
    if !orthogonality_check(&t.y, &t.space.gram, &OrthKind::Algebra) {
        return Err(OrbitError::NotInAlgebra(
            "skew-adjoint for the form (not in the orthogonal Lie algebra)".into(),
        ));
    }
    if t.v0.is_zero_matrix() || !t.space.pairing(&t.v0, &t.v0).is_zero() {
        return Err(OrbitError::NotIsotropic);
    }
    if !t.y.matmul(&t.v0).is_zero_matrix() {
        return Err(OrbitError::NotAnnihilated);
    }
    Ok(())
}

/// The largest `h ≥ 0` with `v° ∈ image(yʰ)`.  Always well defined: `h = 0`
/// is witnessed by `w = v°`, and the chain of images shrinks away from `v°`
/// within at most `dim` steps because `v°` lies in the nilpotent Fitting
/// summand of `y`.
pub fn distinguished_height(t: &AdjointTriple) -> Result<usize> {
    validate_triple(t)?;
    Ok(height_unchecked(t))
}

fn height_unchecked(t: &AdjointTriple) -> usize {
    let n = t.space.dim;
    let mut power = Matrix::identity(n);
    let mut h = 0;
    loop {
        let next = t.y.matmul(&power);
        if h + 1 > n || !next.image_contains(&t.v0) {
            return h;
        }
        power = next;
        h += 1;
    }
}

/// The parameter `p = γ(w, v°)` over any solution `w` of `yʰ w = v°`, where
/// `h` is the distinguished height.  Well-definedness (independence of the
/// solution) is re-proved at runtime by checking that every kernel vector of
/// `yʰ` pairs to zero with `v°`; its failure would be an internal error.
pub fn parameter_of(t: &AdjointTriple) -> Result<Rational> {
    validate_triple(t)?;
    parameter_unchecked(t, height_unchecked(t))
}

fn parameter_unchecked(t: &AdjointTriple, h: usize) -> Result<Rational> {
    let yh = t.y.pow(h as u32);
    let w = yh
        .solve(&t.v0)
        .map_err(|_| OrbitError::internal("height witness system became inconsistent"))?;
    let p = t.space.pairing(&w, &t.v0);
    let kernel = yh.nullspace();
    for j in 0..kernel.cols() {
        if !t.space.pairing(&kernel.col(j), &t.v0).is_zero() {
            return Err(OrbitError::internal(
                "parameter set is not a singleton: a kernel vector pairs nontrivially with v°",
            ));
        }
    }
    p.as_rational().ok_or_else(|| {
        OrbitError::NotRational(format!("distinguished parameter {p} is irrational"))
    })
}

/// Classify a triple into its complete adjoint-orbit label.
pub fn classify_adjoint(t: &AdjointTriple) -> Result<AdjointOrbitLabel> {
    validate_triple(t)?;
    let h = height_unchecked(t);
    let p = parameter_unchecked(t, h)?;
    let distinguished = if !p.is_zero() {
        if h % 2 != 0 {
            return Err(OrbitError::internal(
                "odd distinguished height with nonzero parameter contradicts the classification",
            ));
        }
        DistinguishedLabel::Case1 {
            h,
            eps: p.signum(),
            mu2: p.abs(),
        }
    } else if h % 2 == 1 {
        DistinguishedLabel::Case2 { h }
    } else {
        DistinguishedLabel::Case3 { h }
    };

    let mut rest = classify_pair(&t.y, &t.space)?;
    for ty in distinguished.underlying_types()? {
        if !rest.remove_one(&ty) {
            return Err(OrbitError::internal(format!(
                "underlying type {ty} of the distinguished part is missing from the pair classification"
            )));
        }
    }
    let label = AdjointOrbitLabel {
        distinguished,
        rest,
    };

    let (dim, index) = label.dim_index()?;
    let sig = signature_index(&t.space)?;
    if dim != t.space.dim || index != sig.negatives {
        return Err(OrbitError::internal(format!(
            "orbit label bookkeeping ({dim}, {index}) does not match the space signature {sig}"
        )));
    }
    Ok(label)
}

/// Split off the distinguished summand: returns `(W̃, complement)` as column
/// bases.  `W̃` carries the marked vector and one chain (nonzero parameter)
/// or two chains (zero parameter); its Gram determinant is certified to be
/// `± the product of the antidiagonal entries`, hence nonzero.
pub fn split_distinguished(t: &AdjointTriple) -> Result<(Matrix, Matrix)> {
    validate_triple(t)?;
    let h = height_unchecked(t);
    let p = parameter_unchecked(t, h)?;

    // A chain vector w with yʰw = v° *and* yʰ⁺¹w = 0, so that the chain
    // Gram is anti-triangular.  Solvability of the stacked system follows
    // from the Jordan structure: v° is a combination of bottoms of chains
    // of length ≥ h+1.
    let yh = t.y.pow(h as u32);
    let yh1 = t.y.matmul(&yh);
    let stacked = Matrix::vstack(&[&yh, &yh1]);
    let target = Matrix::vstack(&[&t.v0, &Matrix::zeros(t.space.dim, 1)]);
    let w = stacked
        .solve(&target)
        .map_err(|_| OrbitError::internal("no chain vector annihilated one step above v°"))?;

    let mut cols: Vec<Matrix> = Vec::with_capacity(2 * (h + 1));
    let mut cur = w.clone();
    for _ in 0..=h {
        cols.push(cur.clone());
        cur = t.y.matmul(&cur);
    }

    if p.is_zero() {
        // Second chain on a kernel vector of yʰ⁺¹ pairing nontrivially with
        // v°; existence is equivalent to the maximality of h.
        let kernel = yh1.nullspace();
        let z = (0..kernel.cols())
            .map(|j| kernel.col(j))
            .find(|z| !t.space.pairing(z, &t.v0).is_zero())
            .ok_or_else(|| {
                OrbitError::internal(
                    "no kernel vector pairs with v°, contradicting height maximality",
                )
            })?;
        let mut cur = z;
        for _ in 0..=h {
            cols.push(cur.clone());
            cur = t.y.matmul(&cur);
        }
    }

    let refs: Vec<&Matrix> = cols.iter().collect();
    let wtilde = Matrix::hstack(&refs);
    let gram_sub = wtilde.transpose().matmul(&t.space.gram.matmul(&wtilde));
    if !antidiagonal_certificate(&gram_sub) {
        return Err(OrbitError::internal(
            "distinguished-summand Gram determinant is not ± the antidiagonal product",
        ));
    }
    if gram_sub.det().is_zero() {
        return Err(OrbitError::internal("distinguished summand is degenerate"));
    }

    let complement = orthocomplement(&t.space, &wtilde)?;
    debug_assert!(wtilde.image_contains(&t.v0));
    debug_assert_eq!(wtilde.cols() + complement.cols(), t.space.dim);
    Ok((wtilde, complement))
}

/// `det G = ± ∏ antidiagonal entries`, exactly.
fn antidiagonal_certificate(g: &Matrix) -> bool {
    let n = g.rows();
    let mut prod = ExactScalar::one();
    for k in 0..n {
        prod = &prod * g.at(k, n - 1 - k);
    }
    let det = g.det();
    det == prod || det == -&prod
}

/// Canonical model of the distinguished part alone: `(y, gram, v°)`, all
/// rational.  For case 1 the chain basis is scaled by the modulus, which
/// multiplies the standard Gram by `μ²` and makes the marked vector `ε·e_q`
/// exactly; the two-chain cases place the marked vector at the bottom of
/// the second chain.
fn distinguished_model(d: &DistinguishedLabel) -> Result<(Matrix, Matrix, Matrix)> {
    d.validate()?;
    match d {
        DistinguishedLabel::Case1 { h, eps, mu2 } => {
            let (y, gram) = zero_even_model(*h, *eps);
            let gram = gram.scale(&ExactScalar::from_rational(mu2.clone()));
            let mut v0 = Matrix::zeros(h + 1, 1);
            v0.set(h / 2, 0, ExactScalar::from_int(i64::from(*eps)));
            Ok((y, gram, v0))
        }
        DistinguishedLabel::Case2 { h } | DistinguishedLabel::Case3 { h } => {
            let (y, gram) = zero_odd_model(*h);
            let v0 = Matrix::basis_vector(2 * (h + 1), h + 1);
            Ok((y, gram, v0))
        }
    }
}

/// Build a canonical triple realizing `label`, presented over the standard
/// Gram matrix with `v° = e_{n+1}` (the last basis vector).  The result is
/// re-classified as a hard post-check.
pub fn synthesize_adjoint(label: &AdjointOrbitLabel) -> Result<AdjointTriple> {
    let (yd, gd, v0d) = distinguished_model(&label.distinguished)?;
    let mut ys = vec![yd];
    let mut grams = vec![gd];
    for (ty, count) in label.rest.iter() {
        for _ in 0..count {
            let (y, sp) = crate::typeclass::synthesize_type(ty)?;
            ys.push(y);
            grams.push(sp.gram);
        }
    }
    let y_refs: Vec<&Matrix> = ys.iter().collect();
    let g_refs: Vec<&Matrix> = grams.iter().collect();
    let y = Matrix::direct_sum(&y_refs);
    let gram = Matrix::direct_sum(&g_refs);
    let n2 = y.rows();
    let mut v0 = Matrix::zeros(n2, 1);
    v0.set_block(0, 0, &v0d);

    let space = FormSpace::new(gram);
    let (p, k_std) = standardize_with_isotropic(&space, &v0)?;
    let p_inv = p
        .inverse()
        .map_err(|_| OrbitError::internal("standardizing change of basis is singular"))?;
    let t = AdjointTriple {
        space: FormSpace::new(k_std),
        y: p.matmul(&y).matmul(&p_inv),
        v0: p.matmul(&v0),
    };
    validate_triple(&t)
        .map_err(|e| OrbitError::internal(format!("synthesized triple is invalid: {e}")))?;

    let back = classify_adjoint(&t)?;
    if back != *label {
        return Err(OrbitError::internal(format!(
            "synthesis post-check failed: built {back}, wanted {label}"
        )));
    }
    Ok(t)
}

/// The adjoint action of a group element `(B, v)` on an algebra element
/// `(ξ, w)` of the semidirect product: `(BξB⁻¹, −BξB⁻¹v + Bw)`.
pub fn semidirect_adjoint_action(
    g: &Matrix,
    b: &Matrix,
    v: &Matrix,
    xi: &Matrix,
    w: &Matrix,
) -> Result<(Matrix, Matrix)> {
    if !orthogonality_check(b, g, &OrthKind::Group) {
        return Err(OrbitError::NotInAlgebra(
            "an isometry of the translation form".into(),
        ));
    }
    if !orthogonality_check(xi, g, &OrthKind::Algebra) {
        return Err(OrbitError::NotInAlgebra(
            "skew-adjoint for the translation form".into(),
        ));
    }
    let conj = b.matmul(xi).matmul(&b.inverse()?);
    let moved = &b.matmul(w) - &conj.matmul(v);
    Ok((conj, moved))
}

/// Embed a semidirect-product algebra element `(X, ṽ)` as a stabilizer
/// triple: the `(n+2)×(n+2)` operator
/// `[[0,0,0],[ṽ,X,0],[0,−ṽᵀG,0]]` over the standard Gram, with marked
/// vector `e_{n+1}`.
pub fn embed_semidirect(g: &Matrix, x: &Matrix, vtil: &Matrix) -> Result<AdjointTriple> {
    let n = g.rows();
    if !x.is_square() || x.rows() != n || vtil.rows() != n || vtil.cols() != 1 {
        return Err(OrbitError::DimensionMismatch(format!(
            "translation form is {n}x{n}, X is {}x{}, vector is {}x{}",
            x.rows(),
            x.cols(),
            vtil.rows(),
            vtil.cols()
        )));
    }
    if !orthogonality_check(x, g, &OrthKind::Algebra) {
        return Err(OrbitError::NotInAlgebra(
            "skew-adjoint for the translation form".into(),
        ));
    }
    let mut y = Matrix::zeros(n + 2, n + 2);
    y.set_block(1, 1, x);
    y.set_block(1, 0, vtil);
    let row = vtil.transpose().matmul(g).scale(&-&ExactScalar::one());
    y.set_block(n + 1, 1, &row);
    let k = standard_k(g);
    let t = AdjointTriple {
        space: FormSpace::new(k),
        y,
        v0: Matrix::basis_vector(n + 2, n + 1),
    };
    debug_assert!(validate_triple(&t).is_ok());
    Ok(t)
}

/// Embed a semidirect-product group element `(B, v)` as the stabilizer
/// isometry `[[1,0,0],[v,B,0],[−½vᵀGv, −vᵀGB, 1]]` of the standard Gram; it
/// fixes `e_{n+1}` and intertwines [`embed_semidirect`] with
/// [`semidirect_adjoint_action`].
pub fn embed_semidirect_group(g: &Matrix, b: &Matrix, v: &Matrix) -> Result<Matrix> {
    let n = g.rows();
    if !b.is_square() || b.rows() != n || v.rows() != n || v.cols() != 1 {
        return Err(OrbitError::DimensionMismatch(format!(
            "translation form is {n}x{n}, B is {}x{}, vector is {}x{}",
            b.rows(),
            b.cols(),
            v.rows(),
            v.cols()
        )));
    }
    if !orthogonality_check(b, g, &OrthKind::Group) {
        return Err(OrbitError::NotInAlgebra(
            "an isometry of the translation form".into(),
        ));
    }
    let mut p = Matrix::identity(n + 2);
    p.set_block(1, 1, b);
    p.set_block(1, 0, v);
    let vtg = v.transpose().matmul(g);
    let half = ExactScalar::from_rational(Rational::new(1, 2));
    let corner = -&(vtg.matmul(v).scalar() * &half);
    p.set(n + 1, 0, corner);
    let row = vtg.matmul(b).scale(&-&ExactScalar::one());
    p.set_block(n + 1, 1, &row);
    let k = standard_k(g);
    debug_assert!(orthogonality_check(&p, &k, &OrthKind::Group));
    debug_assert_eq!(p.matmul(&Matrix::basis_vector(n + 2, n + 1)), Matrix::basis_vector(n + 2, n + 1));
    Ok(p)
}

/// A seeded random isometry of the standard Gram `k_std` fixing the marked
/// vector `e_{n+1}`: the Cayley transform of a random stabilizer-algebra
/// element.  Deterministic per seed; resamples on a singular `I + S`.
pub fn random_stabilizer_element(k_std: &Matrix, seed: u64) -> Matrix {
    let n = k_std.rows() - 2;
    let g = crate::formspace::middle_block(k_std);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut skew = Matrix::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let e: i64 = rng.gen_range(-3..=3);
                skew.set(i, j, ExactScalar::from_int(e));
                skew.set(j, i, ExactScalar::from_int(-e));
            }
        }
        let x = match g.inverse() {
            Ok(gi) => gi.matmul(&skew),
            Err(_) => unreachable!("standard middle block is invertible"),
        };
        let vtil = Matrix::from_fn(n, 1, |_, _| ExactScalar::from_int(rng.gen_range(-3..=3)));
        let s = match embed_semidirect(&g, &x, &vtil) {
            Ok(t) => t.y,
            Err(_) => continue,
        };
        if let Ok(p) = cayley_of_stabilizer(k_std, &s) {
            return p;
        }
    }
}

/// Cayley transform of a stabilizer-algebra element; isolated so the
/// `S = 0 → identity` degenerate case is directly testable.
fn cayley_of_stabilizer(k_std: &Matrix, s: &Matrix) -> Result<Matrix> {
    let p = crate::formspace::cayley_isometry(k_std, s)?;
    let n2 = k_std.rows();
    debug_assert_eq!(
        p.matmul(&Matrix::basis_vector(n2, n2 - 1)),
        Matrix::basis_vector(n2, n2 - 1)
    );
    Ok(p)
}
