//! Coadjoint-orbit classification for the affine orthogonal group.
//!
//! A coadjoint orbit of `O(p,q) ⋉ ℝⁿ` is encoded by a *cotuple*: a form
//! space `(V, γ)`, an operator `Y` in the orthogonal Lie algebra, and a
//! marked vector `v` — unconstrained this time, in contrast with the
//! adjoint side.  Cotuples `(Y, v)` and `(Y′, v′)` over isometric spaces
//! are equivalent when an isometry `P` maps `v` to `v′` and `Y′ =
//! P(Y + L_{w,v})P⁻¹` for some *shear* `L_{w,v} = w⊗v* − v⊗w*`.  Over the
//! standard Gram matrix with `v = e_{n+1}`, the shears span exactly the
//! annihilator of the stabilizer subalgebra under the trace pairing
//! `(Y, Z) ↦ tr(YZ)`, so cotuple classes correspond to coadjoint orbits of
//! the stabilizer group — the affine orthogonal group — on the dual of its
//! Lie algebra.
//!
//! The complete invariant is a [`CoadjointOrbitLabel`]: a [`CotypeLabel`]
//! for the marked summand plus a [`TypeMultiset`] for the complement.
//! Classification recurses on the marked vector: a nonzero isotropic `v`
//! strips a hyperbolic pair off the space (the *little* cotuple), an
//! anisotropic `v` splits off a line after a shear correction, and `v = 0`
//! reduces to plain pair classification.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::adjoint::{AdjointOrbitLabel, DistinguishedLabel};
use crate::error::{OrbitError, Result};
use crate::formspace::{
    middle_block, orthocomplement, signature_index, standard_k, standardize_with_isotropic,
    FormSpace,
};
use crate::linalg::{orthogonality_check, Matrix, OrthKind};
use crate::scalars::{ExactScalar, Rational};
use crate::typeclass::{classify_pair, zero_odd_model, TypeMultiset};

/// A form space with a skew-adjoint operator and a marked vector: the raw
/// input of coadjoint-orbit classification.  Unlike the adjoint side, the
/// marked vector is arbitrary — it may be zero, anisotropic, or isotropic,
/// and need not be annihilated by the operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoTuple {
    /// The ambient form space `(V, γ)`.
    pub space: FormSpace,
    /// The operator, an element of the orthogonal Lie algebra of the form.
    pub y: Matrix,
    /// The marked vector (any vector of the space).
    pub v: Matrix,
}

#[derive(Serialize, Deserialize)]
struct CoTupleFile {
    gram: Matrix,
    #[serde(rename = "Y")]
    y: Matrix,
    v: Matrix,
}

impl Serialize for CoTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoTupleFile {
            gram: self.space.gram.clone(),
            y: self.y.clone(),
            v: self.v.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = CoTupleFile::deserialize(d)?;
        Ok(CoTuple {
            space: FormSpace::new(f.gram),
            y: f.y,
            v: f.v,
        })
    }
}

/// The marked indecomposable summand of a coadjoint orbit label.  The four
/// cases are determined by the marked vector: zero, anisotropic (spanning a
/// definite line), or nonzero isotropic with an even- or odd-dimensional
/// marked summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CotypeLabel {
    /// Zero marked vector; the whole space is an ordinary type.
    ZeroCo,
    /// Anisotropic marked vector spanning a line of norm `ε·α²`.
    OneDimCo {
        /// Sign of the marked vector's norm.
        eps: i8,
        /// Absolute value `α²` of the norm, a positive rational.
        alpha2: Rational,
    },
    /// Isotropic marked vector, even marked summand `n = 2h+2`: two Jordan
    /// chains of length `h+1`.
    EvenAffine {
        /// Dimension of the marked summand (even, ≥ 2).
        n: usize,
    },
    /// Isotropic marked vector, odd marked summand `n = 2m+3`: a single
    /// Jordan chain of length `n` with modulus `μ`.
    OddAffine {
        /// Dimension of the marked summand (odd, ≥ 3).
        n: usize,
        /// Sign of the anisotropic line at the bottom of the recursion.
        eps: i8,
        /// Modulus squared `μ²`, a positive rational.
        mu2: Rational,
    },
}

impl CotypeLabel {
    /// Check the case-specific constraints on dimension, sign, and modulus.
    pub fn validate(&self) -> Result<()> {
        match self {
            CotypeLabel::ZeroCo => {}
            CotypeLabel::OneDimCo { eps, alpha2 } => {
                if *eps != 1 && *eps != -1 {
                    return Err(OrbitError::InvalidLabel(format!(
                        "sign must be +1 or -1, got {eps}"
                    )));
                }
                if !alpha2.is_positive() {
                    return Err(OrbitError::InvalidLabel(format!(
                        "marked-line norm squared must be positive, got {alpha2}"
                    )));
                }
            }
            CotypeLabel::EvenAffine { n } => {
                if *n < 2 || *n % 2 != 0 {
                    return Err(OrbitError::InvalidLabel(format!(
                        "even marked summand written N_n(0,0) needs even n ≥ 2, got {n}"
                    )));
                }
            }
            CotypeLabel::OddAffine { n, eps, mu2 } => {
                if *n < 3 || *n % 2 != 1 {
                    return Err(OrbitError::InvalidLabel(format!(
                        "odd marked summand written N±_n(0) needs odd n ≥ 3, got {n}"
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
        }
        Ok(())
    }

    /// Whether the marked vector of this cotype is nonzero isotropic.
    pub fn is_affine(&self) -> bool {
        matches!(
            self,
            CotypeLabel::EvenAffine { .. } | CotypeLabel::OddAffine { .. }
        )
    }

    /// Dimension of the marked summand.
    pub fn dim(&self) -> usize {
        match self {
            CotypeLabel::ZeroCo => 0,
            CotypeLabel::OneDimCo { .. } => 1,
            CotypeLabel::EvenAffine { n } | CotypeLabel::OddAffine { n, .. } => *n,
        }
    }

    /// Index (negative inertia) of the form restricted to the marked
    /// summand.
    pub fn index(&self) -> usize {
        match self {
            CotypeLabel::ZeroCo => 0,
            CotypeLabel::OneDimCo { eps, .. } => usize::from(*eps < 0),
            CotypeLabel::EvenAffine { n } => n / 2,
            CotypeLabel::OddAffine { n, eps, .. } => (n - 1) / 2 + usize::from(*eps < 0),
        }
    }
}

impl fmt::Display for CotypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CotypeLabel::ZeroCo => write!(f, "zero"),
            CotypeLabel::OneDimCo { eps, alpha2 } => {
                let s = if *eps > 0 { '+' } else { '-' };
                write!(f, "1dim{s}, a2={alpha2}")
            }
            CotypeLabel::EvenAffine { n } => write!(f, "N_{n}(0,0)"),
            CotypeLabel::OddAffine { n, eps, mu2 } => {
                let s = if *eps > 0 { '+' } else { '-' };
                write!(f, "N{s}_{n}(0), mu2={mu2}")
            }
        }
    }
}

impl FromStr for CotypeLabel {
    type Err = OrbitError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || OrbitError::Parse(format!("invalid cotype label: {s}"));
        let sign_of = |c: char| match c {
            '+' => Ok(1_i8),
            '-' => Ok(-1_i8),
            _ => Err(bad()),
        };
        let label = if s == "zero" {
            CotypeLabel::ZeroCo
        } else if let Some(tail) = s.strip_prefix("1dim") {
            let eps = sign_of(tail.chars().next().ok_or_else(bad)?)?;
            let q = tail[1..].strip_prefix(", a2=").ok_or_else(bad)?;
            CotypeLabel::OneDimCo {
                eps,
                alpha2: q.parse().map_err(|_| bad())?,
            }
        } else if let Some(tail) = s.strip_prefix("N_") {
            let n_str = tail.strip_suffix("(0,0)").ok_or_else(bad)?;
            CotypeLabel::EvenAffine {
                n: n_str.parse().map_err(|_| bad())?,
            }
        } else if let Some(tail) = s.strip_prefix('N') {
            let eps = sign_of(tail.chars().next().ok_or_else(bad)?)?;
            let tail = tail[1..].strip_prefix('_').ok_or_else(bad)?;
            let (n_str, q) = tail.split_once("(0), mu2=").ok_or_else(bad)?;
            CotypeLabel::OddAffine {
                n: n_str.parse().map_err(|_| bad())?,
                eps,
                mu2: q.parse().map_err(|_| bad())?,
            }
        } else {
            return Err(bad());
        };
        label.validate()?;
        Ok(label)
    }
}

impl Serialize for CotypeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CotypeLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// Complete coadjoint-orbit invariant: the marked part plus the type
/// multiset of the complementary summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoadjointOrbitLabel {
    /// The marked (cotype) part.
    pub cotype: CotypeLabel,
    /// Types of the orthogonal complement of the marked summand.
    pub rest: TypeMultiset,
}

impl CoadjointOrbitLabel {
    /// Total `(dimension, index)` of any space realizing this label.
    pub fn dim_index(&self) -> Result<(usize, usize)> {
        let (rd, ri) = self.rest.total_dim_index()?;
        Ok((self.cotype.dim() + rd, self.cotype.index() + ri))
    }
}

impl fmt::Display for CoadjointOrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rest.is_empty() {
            write!(f, "{}", self.cotype)
        } else {
            write!(f, "{} + {}", self.cotype, self.rest)
        }
    }
}

impl FromStr for CoadjointOrbitLabel {
    type Err = OrbitError;

    fn from_str(s: &str) -> Result<Self> {
        // A cotype token never contains the ` + ` separator, so the first
        // occurrence splits it from the type tokens.
        let (head, tail) = match s.split_once(" + ") {
            Some((head, tail)) => (head, Some(tail)),
            None => (s, None),
        };
        Ok(CoadjointOrbitLabel {
            cotype: head.parse()?,
            rest: match tail {
                Some(tokens) => tokens.parse()?,
                None => TypeMultiset::new(),
            },
        })
    }
}

impl Serialize for CoadjointOrbitLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CoadjointOrbitLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// A coadjoint functional in little-algebra coordinates: the value on a
/// stabilizer-algebra element `Z(X, z̃)` is `tr(M·X) + pᵀ·z̃`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoFunctional {
    /// Pairing matrix against the rotational part `X`.
    #[serde(rename = "M")]
    pub m: Matrix,
    /// Pairing (momentum) covector against the translational part `z̃`.
    pub p: Matrix,
    /// Gram matrix of the translation form the coordinates refer to.
    #[serde(rename = "littleGram")]
    pub little_gram: Matrix,
}

impl CoFunctional {
    /// Lift back to a representative cotuple; see [`functional_to_tuple`].
    pub fn to_tuple(&self) -> Result<CoTuple> {
        functional_to_tuple(&self.m, &self.p, &self.little_gram)
    }
}

/// Check the cotuple invariants: shapes, and algebra membership of `y`.
/// The marked vector is unconstrained.
pub fn validate_cotuple(t: &CoTuple) -> Result<()> {
    let n = t.space.dim;
    if !t.y.is_square() || t.y.rows() != n || t.v.rows() != n || t.v.cols() != 1 {
        return Err(OrbitError::DimensionMismatch(format!(
            "cotuple shapes: space dim {n}, operator {}x{}, marked vector {}x{}",
            t.y.rows(),
            t.y.cols(),
            t.v.rows(),
            t.v.cols()
        )));
    }
    if !orthogonality_check(&t.y, &t.space.gram, &OrthKind::Algebra) {
        return Err(OrbitError::NotInAlgebra(
            "skew-adjoint for the form (not in the orthogonal Lie algebra)".into(),
        ));
    }
    Ok(())
}

/// The shear `L_{w,v} = w⊗v* − v⊗w*`, i.e. the matrix
/// `w·vᵀ·G − v·wᵀ·G`.  It is always an element of the orthogonal Lie
/// algebra, and conjugation is equivariant: `P·L_{w,v}·P⁻¹ = L_{Pw,Pv}` for
/// any isometry `P`.
pub fn shear_map(w: &Matrix, v: &Matrix, space: &FormSpace) -> Result<Matrix> {
    let n = space.dim;
    if w.rows() != n || w.cols() != 1 || v.rows() != n || v.cols() != 1 {
        return Err(OrbitError::DimensionMismatch(format!(
            "shear vectors must be {n}x1, got {}x{} and {}x{}",
            w.rows(),
            w.cols(),
            v.rows(),
            v.cols()
        )));
    }
    let g = &space.gram;
    let l = &w.matmul(&v.transpose().matmul(g)) - &v.matmul(&w.transpose().matmul(g));
    debug_assert!(orthogonality_check(&l, g, &OrthKind::Algebra));
    Ok(l)
}

/// Move a cotuple by the equivalence `(P, w)`: the result is
/// `(P(Y + L_{w,v})P⁻¹, Pv)` over the same space.  `P` must be an isometry
/// of the form; the orbit label is unchanged.
pub fn apply_cotuple_equivalence(t: &CoTuple, p: &Matrix, w: &Matrix) -> Result<CoTuple> {
    validate_cotuple(t)?;
    if !p.is_square() || p.rows() != t.space.dim {
        return Err(OrbitError::DimensionMismatch(format!(
            "equivalence isometry must be {0}x{0}, got {1}x{2}",
            t.space.dim,
            p.rows(),
            p.cols()
        )));
    }
    if !orthogonality_check(p, &t.space.gram, &OrthKind::Group) {
        return Err(OrbitError::NotInAlgebra("an isometry of the form".into()));
    }
    let l = shear_map(w, &t.v, &t.space)?;
    let p_inv = p.inverse()?;
    Ok(CoTuple {
        space: t.space.clone(),
        y: p.matmul(&(&t.y + &l)).matmul(&p_inv),
        v: p.matmul(&t.v),
    })
}

/// The little cotuple of a cotuple with nonzero isotropic marked vector:
/// re-present over the standard Gram matrix with `v = e_{n+1}`, then read
/// off the middle block `Ỹ` and the right column `ṽ` of the operator over
/// the translation form `G`.  Skew-adjointness forces the two corner
/// entries of the standardized operator to vanish; this is re-checked
/// exactly rather than assumed.
pub fn little_cotype(t: &CoTuple) -> Result<CoTuple> {
    validate_cotuple(t)?;
    let (p, k_std) = standardize_with_isotropic(&t.space, &t.v)?;
    let p_inv = p.inverse()?;
    let y_std = p.matmul(&t.y).matmul(&p_inv);
    let n = t.space.dim - 2;
    if !y_std.at(0, n + 1).is_zero() || !y_std.at(n + 1, 0).is_zero() {
        return Err(OrbitError::internal(
            "corner entries of the standardized operator do not vanish",
        ));
    }
    let little = CoTuple {
        space: FormSpace::new(middle_block(&k_std)),
        y: y_std.block(1, 1, n, n),
        v: y_std.block(1, n + 1, n, 1),
    };
    validate_cotuple(&little)
        .map_err(|e| OrbitError::internal(format!("little cotuple is invalid: {e}")))?;
    Ok(little)
}

fn classify_unchecked(t: &CoTuple) -> Result<CoadjointOrbitLabel> {
    if t.v.is_zero_matrix() {
        let rest = if t.space.dim == 0 {
            TypeMultiset::new()
        } else {
            classify_pair(&t.y, &t.space)?
        };
        return Ok(CoadjointOrbitLabel {
            cotype: CotypeLabel::ZeroCo,
            rest,
        });
    }

    let c = t.space.pairing(&t.v, &t.v);
    if !c.is_zero() {
        // Anisotropic marked line.  Subtracting the shear L_{Yv/γ(v,v), v}
        // annihilates v and preserves its orthocomplement, splitting the
        // cotuple into a marked line plus a plain pair.
        let w = t.y.matmul(&t.v).scale(&c.inv()?);
        let y2 = &t.y - &shear_map(&w, &t.v, &t.space)?;
        if !y2.matmul(&t.v).is_zero_matrix() {
            return Err(OrbitError::internal(
                "shear correction failed to annihilate the marked vector",
            ));
        }
        let comp = orthocomplement(&t.space, &t.v)?;
        let rest = if comp.cols() == 0 {
            TypeMultiset::new()
        } else {
            let y_comp = comp.solve(&y2.matmul(&comp)).map_err(|_| {
                OrbitError::internal(
                    "shear-corrected operator does not preserve the marked complement",
                )
            })?;
            classify_pair(&y_comp, &t.space.restrict(&comp))?
        };
        let cr = c.as_rational().ok_or_else(|| {
            OrbitError::NotRational(format!("marked-vector norm {c} is irrational"))
        })?;
        return Ok(CoadjointOrbitLabel {
            cotype: CotypeLabel::OneDimCo {
                eps: cr.signum(),
                alpha2: cr.abs(),
            },
            rest,
        });
    }

    // Nonzero isotropic marked vector: classify the little cotuple, then
    // lift its marked part through the two stripped dimensions.
    let sub = classify_unchecked(&little_cotype(t)?)?;
    let cotype = match sub.cotype {
        CotypeLabel::ZeroCo => CotypeLabel::EvenAffine { n: 2 },
        CotypeLabel::OneDimCo { eps, alpha2 } => CotypeLabel::OddAffine {
            n: 3,
            eps,
            mu2: alpha2,
        },
        CotypeLabel::EvenAffine { n } => CotypeLabel::EvenAffine { n: n + 2 },
        CotypeLabel::OddAffine { n, eps, mu2 } => CotypeLabel::OddAffine { n: n + 2, eps, mu2 },
    };
    Ok(CoadjointOrbitLabel {
        cotype,
        rest: sub.rest,
    })
}

/// Classify a cotuple into its complete coadjoint-orbit label.
pub fn classify_cotuple(t: &CoTuple) -> Result<CoadjointOrbitLabel> {
    validate_cotuple(t)?;
    let label = classify_unchecked(t)?;
    let (dim, index) = label.dim_index()?;
    let sig = signature_index(&t.space)?;
    if dim != t.space.dim || index != sig.negatives {
        return Err(OrbitError::internal(format!(
            "orbit label bookkeeping ({dim}, {index}) does not match the space signature {sig}"
        )));
    }
    Ok(label)
}

/// Canonical model of an affine marked summand alone: `(y, gram, v)`.  The
/// even case is the two-chain nilpotent pair with the marked vector at the
/// top of the second chain; the odd case is a single chain of length `n`
/// whose Gram matrix is antidiagonal with an `ε` in the middle and whose
/// operator carries the modulus `μ` (a quadratic surd when `μ²` is not a
/// perfect square).
fn affine_cotype_model(cotype: &CotypeLabel) -> Result<(Matrix, Matrix, Matrix)> {
    match cotype {
        CotypeLabel::EvenAffine { n } => {
            let h = n / 2 - 1;
            let (y, gram) = zero_odd_model(h);
            Ok((y, gram, Matrix::basis_vector(*n, n - 1)))
        }
        CotypeLabel::OddAffine { n, eps, mu2 } => {
            let k = (n - 3) / 2 + 1;
            let mu = ExactScalar::sqrt_rational(mu2)?;
            let shift = Matrix::upper_shift(k);
            let mut y = Matrix::zeros(*n, *n);
            y.set_block(0, 0, &shift.transpose().scale(&-&ExactScalar::one()));
            y.set_block(k + 1, k + 1, &shift);
            y.set(0, k, if *eps > 0 { -&mu } else { mu.clone() });
            y.set(k, k + 1, mu);
            let mut gram = Matrix::zeros(*n, *n);
            for i in 0..k {
                gram.set(i, k + 1 + i, ExactScalar::one());
                gram.set(k + 1 + i, i, ExactScalar::one());
            }
            gram.set(k, k, ExactScalar::from_int(i64::from(*eps)));
            Ok((y, gram, Matrix::basis_vector(*n, n - 1)))
        }
        _ => Err(OrbitError::NotAffineCotype),
    }
}

/// Build a canonical cotuple realizing `label`.  Affine cotypes are
/// presented over the standard Gram matrix with `v = e_{n+1}`; the zero and
/// one-dimensional cotypes keep the plain block-diagonal presentation (their
/// marked vector is not isotropic, so no hyperbolic re-presentation exists).
/// The result is re-classified as a hard post-check.
pub fn synthesize_cotype(label: &CoadjointOrbitLabel) -> Result<CoTuple> {
    label.cotype.validate()?;
    let mut ys: Vec<Matrix> = Vec::new();
    let mut grams: Vec<Matrix> = Vec::new();
    let mut vhead = Matrix::zeros(0, 1);
    match &label.cotype {
        CotypeLabel::ZeroCo => {}
        CotypeLabel::OneDimCo { eps, alpha2 } => {
            let norm = if *eps > 0 {
                alpha2.clone()
            } else {
                -alpha2.clone()
            };
            let mut gram = Matrix::zeros(1, 1);
            gram.set(0, 0, ExactScalar::from_rational(norm));
            ys.push(Matrix::zeros(1, 1));
            grams.push(gram);
            vhead = Matrix::basis_vector(1, 0);
        }
        CotypeLabel::EvenAffine { .. } | CotypeLabel::OddAffine { .. } => {
            let (y, gram, v) = affine_cotype_model(&label.cotype)?;
            ys.push(y);
            grams.push(gram);
            vhead = v;
        }
    }
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
    let mut v = Matrix::zeros(y.rows(), 1);
    v.set_block(0, 0, &vhead);

    let t = if label.cotype.is_affine() {
        let space = FormSpace::new(gram);
        let (p, k_std) = standardize_with_isotropic(&space, &v)?;
        let p_inv = p
            .inverse()
            .map_err(|_| OrbitError::internal("standardizing change of basis is singular"))?;
        CoTuple {
            space: FormSpace::new(k_std),
            y: p.matmul(&y).matmul(&p_inv),
            v: p.matmul(&v),
        }
    } else {
        CoTuple {
            space: FormSpace::new(gram),
            y,
            v,
        }
    };
    validate_cotuple(&t)
        .map_err(|e| OrbitError::internal(format!("synthesized cotuple is invalid: {e}")))?;

    let back = classify_cotuple(&t)?;
    if back != *label {
        return Err(OrbitError::internal(format!(
            "synthesis post-check failed: built {back}, wanted {label}"
        )));
    }
    Ok(t)
}

/// Restrict the trace functional `Z ↦ tr(YZ)` of a standardized cotuple to
/// the stabilizer algebra, in little-algebra coordinates: on the stabilizer
/// element `Z(X, z̃)` the value is `tr(Ỹ·X) − 2·ṽᵀ·G·z̃`, where `Ỹ` is the
/// middle block of `Y` and `ṽ` its middle right column.  (Multiplying the
/// block forms out, `tr(YZ)` picks up `tr(ỸX)` from the middle and the
/// translation coupling *twice* — once from the first row of `Y` against
/// `z̃` and once from `ṽ` against the last row of `Z` — which is where the
/// factor −2 comes from; the tests re-verify this on a full basis.)
/// Returns `M = Ỹ` and the momentum covector `p = −2Gṽ`.
pub fn tuple_to_functional(t: &CoTuple) -> Result<CoFunctional> {
    validate_cotuple(t)?;
    if t.space.dim < 2 {
        return Err(OrbitError::DimensionMismatch(
            "functional extraction needs a standardized cotuple of dimension ≥ 2".into(),
        ));
    }
    let n = t.space.dim - 2;
    let g = middle_block(&t.space.gram);
    if t.space.gram != standard_k(&g) || t.v != Matrix::basis_vector(n + 2, n + 1) {
        return Err(OrbitError::DimensionMismatch(
            "cotuple is not presented over the standard Gram matrix with marked vector e_{n+1}"
                .into(),
        ));
    }
    let vtil = t.y.block(1, n + 1, n, 1);
    let p = g.matmul(&vtil).scale(&ExactScalar::from_int(-2));
    Ok(CoFunctional {
        m: t.y.block(1, 1, n, n),
        p,
        little_gram: g,
    })
}

/// Lift functional data back to a representative cotuple over the standard
/// Gram matrix: `Ỹ` is the `G`-skew part `(M − G⁻¹MᵀG)/2` of `M` (the
/// orthogonal projection under the trace pairing), `ṽ = −½G⁻¹p`, and the
/// remaining block entries are zero.  [`tuple_to_functional`] is a
/// one-sided inverse: the round trip fixes every functional, and fixes `M`
/// itself exactly when `M` is already `G`-skew.
pub fn functional_to_tuple(m: &Matrix, p: &Matrix, g: &Matrix) -> Result<CoTuple> {
    let n = g.rows();
    if !g.is_square()
        || !g.is_symmetric()
        || !m.is_square()
        || m.rows() != n
        || p.rows() != n
        || p.cols() != 1
    {
        return Err(OrbitError::DimensionMismatch(format!(
            "translation form is {}x{}, M is {}x{}, p is {}x{}",
            g.rows(),
            g.cols(),
            m.rows(),
            m.cols(),
            p.rows(),
            p.cols()
        )));
    }
    let g_inv = g
        .inverse()
        .map_err(|_| OrbitError::DegenerateForm(g.rows() - g.rank()))?;
    let half = ExactScalar::from_rational(Rational::new(1, 2));
    let ytil = (m - &g_inv.matmul(&m.transpose()).matmul(g)).scale(&half);
    let vtil = g_inv.matmul(p).scale(&-&half);
    let mut y = Matrix::zeros(n + 2, n + 2);
    y.set_block(1, 1, &ytil);
    y.set_block(1, n + 1, &vtil);
    let row = vtil.transpose().matmul(g).scale(&-&ExactScalar::one());
    y.set_block(0, 1, &row);
    let t = CoTuple {
        space: FormSpace::new(standard_k(g)),
        y,
        v: Matrix::basis_vector(n + 2, n + 1),
    };
    validate_cotuple(&t)
        .map_err(|e| OrbitError::internal(format!("lifted cotuple is invalid: {e}")))?;
    Ok(t)
}

/// Map an adjoint-orbit label to its coadjoint partner.  The one-chain
/// distinguished part of even height `h` pairs with the odd marked summand
/// of dimension `h+1`, with the sign twisted by `(−1)^{h/2}` so that the
/// indices agree; the two-chain part of height `h` pairs with the even
/// marked summand of dimension `2(h+1)`.  The remaining types transfer
/// unchanged.  Dimension and index equality is re-checked at runtime.
pub fn adjoint_to_coadjoint(label: &AdjointOrbitLabel) -> Result<CoadjointOrbitLabel> {
    label.distinguished.validate()?;
    let cotype = match &label.distinguished {
        DistinguishedLabel::Case1 { h, eps, mu2 } => CotypeLabel::OddAffine {
            n: h + 1,
            eps: if (h / 2) % 2 == 0 { *eps } else { -eps },
            mu2: mu2.clone(),
        },
        DistinguishedLabel::Case2 { h } | DistinguishedLabel::Case3 { h } => {
            CotypeLabel::EvenAffine { n: 2 * (h + 1) }
        }
    };
    let out = CoadjointOrbitLabel {
        cotype,
        rest: label.rest.clone(),
    };
    if out.dim_index()? != label.dim_index()? {
        return Err(OrbitError::internal(format!(
            "orbit matching changed dimension or index between {label} and {out}"
        )));
    }
    Ok(out)
}

/// Map a coadjoint-orbit label to its adjoint partner; inverse of
/// [`adjoint_to_coadjoint`].  Only affine cotypes have partners — the
/// matching is between marked-isotropic summands and distinguished types.
pub fn coadjoint_to_adjoint(label: &CoadjointOrbitLabel) -> Result<AdjointOrbitLabel> {
    label.cotype.validate()?;
    let distinguished = match &label.cotype {
        CotypeLabel::ZeroCo | CotypeLabel::OneDimCo { .. } => {
            return Err(OrbitError::NotAffineCotype)
        }
        CotypeLabel::OddAffine { n, eps, mu2 } => {
            let h = n - 1;
            DistinguishedLabel::Case1 {
                h,
                eps: if (h / 2) % 2 == 0 { *eps } else { -eps },
                mu2: mu2.clone(),
            }
        }
        CotypeLabel::EvenAffine { n } => {
            let h = n / 2 - 1;
            if h % 2 == 1 {
                DistinguishedLabel::Case2 { h }
            } else {
                DistinguishedLabel::Case3 { h }
            }
        }
    };
    let out = AdjointOrbitLabel {
        distinguished,
        rest: label.rest.clone(),
    };
    if out.dim_index()? != label.dim_index()? {
        return Err(OrbitError::internal(format!(
            "orbit matching changed dimension or index between {label} and {out}"
        )));
    }
    Ok(out)
}

/// An orbit label of either kind, so the matching can take and return one
/// type and text interfaces can accept both grammars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitLabel {
    /// An adjoint-orbit label (grammar `u{…}`).
    Adjoint(AdjointOrbitLabel),
    /// A coadjoint-orbit label (grammar `zero`, `1dim±`, `N…`).
    Coadjoint(CoadjointOrbitLabel),
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Adjoint(l) => write!(f, "{l}"),
            OrbitLabel::Coadjoint(l) => write!(f, "{l}"),
        }
    }
}

impl FromStr for OrbitLabel {
    type Err = OrbitError;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with("u{") {
            Ok(OrbitLabel::Adjoint(s.parse()?))
        } else {
            Ok(OrbitLabel::Coadjoint(s.parse()?))
        }
    }
}

impl Serialize for OrbitLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrbitLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

/// The adjoint↔coadjoint orbit matching, dispatching on the label kind.
/// It preserves dimension, index, modulus squared, and the Jordan partition
/// of canonical representatives.
pub fn orbit_bijection(label: &OrbitLabel) -> Result<OrbitLabel> {
    match label {
        OrbitLabel::Adjoint(l) => Ok(OrbitLabel::Coadjoint(adjoint_to_coadjoint(l)?)),
        OrbitLabel::Coadjoint(l) => Ok(OrbitLabel::Adjoint(coadjoint_to_adjoint(l)?)),
    }
}
