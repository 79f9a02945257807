//! orbitforge: exact classification of adjoint and coadjoint orbits of
//! affine orthogonal groups.
//!
//! The groups in scope are the semidirect products `O(k, l) ⋉ ℝⁿ` of an
//! orthogonal group of a nondegenerate symmetric bilinear form with its
//! translation module — the Poincaré group `O(3, 1) ⋉ ℝ⁴` being the primary
//! client.  The crate decides, with proofs by invariants rather than
//! numerics, which orbit of the adjoint or coadjoint action a given element
//! lies on, produces a canonical representative for every orbit label, and
//! exhibits the orbit-matching bijection between the two actions.
//!
//! Everything is computed in exact arithmetic ([`scalars`]): rationals,
//! real quadratic irrationalities, and rational polynomial factorisation.
//!
//! Module map, bottom up:
//!
//! * [`scalars`] — `Rational`, `ExactScalar` (ℚ adjoined square roots),
//!   `Poly` and the even characteristic-polynomial factorisation.
//! * [`linalg`] — dense exact matrices: kernels, ranks, determinants,
//!   characteristic polynomials, generalized eigenspaces.
//! * [`formspace`] — symmetric bilinear forms: signatures, orthogonal
//!   complements, isotropic standardisation.
//! * [`typeclass`] — indecomposable-type labels for orthogonal Lie algebra
//!   elements, classification of `(form, element)` pairs into multisets of
//!   types, and synthesis of canonical pairs from labels.
//! * [`adjoint`] — orbits of the affine (adjoint) action: distinguished
//!   heights, the affine parameter, classification and synthesis, and the
//!   semidirect-product group action itself.
//! * [`coadjoint`] — orbits of the coadjoint action: cotype labels, the
//!   shear normalisation, classification and synthesis, functionals, and
//!   the adjoint↔coadjoint orbit bijection.
//! * [`poincare`] — the flagship `O(3,1) ⋉ ℝ⁴` instance: the orbit-family
//!   atlas, a catalog of canonical representatives, and family matching.

#![forbid(unsafe_code)]
#![warn(missing_docs)]

pub mod adjoint;
pub mod coadjoint;
pub mod error;
pub mod formspace;
pub mod linalg;
pub mod scalars;
pub mod typeclass;

pub use adjoint::{AdjointOrbitLabel, AdjointTriple, DistinguishedLabel};
pub use coadjoint::{CoFunctional, CoTuple, CoadjointOrbitLabel, CotypeLabel, OrbitLabel};
pub use error::{ErrorClass, OrbitError, Result};
pub use formspace::Signature;
pub use linalg::Matrix;
pub use scalars::{ExactScalar, Poly, Rational};
pub use typeclass::{EigenvalueClass, TypeLabel, TypeMultiset};
