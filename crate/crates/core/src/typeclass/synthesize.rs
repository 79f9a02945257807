//! Construction of a representative pair `(Y, W; γ)` for any well-formed
//! type label, and the derived (dimension, index) measurement.
//!
//! Zero-class labels use explicit antidiagonal Gram models. The spectral
//! classes build `Y` from companion blocks chained by a nilpotent shift and
//! then solve the linear system `YᵀK + KY = 0` exactly for a symmetric Gram
//! `K`, selecting a nondegenerate solution with the label's sign invariants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{OrbitError, Result};
use crate::formspace::{signature_index, FormSpace};
use crate::linalg::{kron, orthogonality_check, Matrix, OrthKind};
use crate::scalars::ExactScalar;

use super::classify::{induced_form_signs, SubPair};
use super::{EigenvalueClass, TypeLabel};

/// Build a representative pair whose classification is exactly `{label}`.
pub fn synthesize_type(label: &TypeLabel) -> Result<(Matrix, FormSpace)> {
    let m = label.height();
    let (y, gram) = match label.class() {
        EigenvalueClass::Zero => {
            if m % 2 == 0 {
                zero_even_model(m, label.sign().expect("validated sign"))
            } else {
                zero_odd_model(m)
            }
        }
        class => {
            let companion = class_companion(class);
            let y = spectral_chain(m, &companion);
            let gram = select_gram(label, &y)?;
            (y, gram)
        }
    };
    debug_assert!(orthogonality_check(&y, &gram, &OrthKind::Algebra));
    let space = FormSpace::new(gram);
    debug_assert!(space.is_nondegenerate());
    Ok((y, space))
}

/// Dimension and index of the label's representative pair.
pub fn label_dim_index(label: &TypeLabel) -> Result<(usize, usize)> {
    let (_, space) = synthesize_type(label)?;
    Ok((space.dim, signature_index(&space)?.negatives))
}

/// Single Jordan chain of even height `m` with sign `ε`: dimension `m + 1`,
/// Gram `[[0, I_q, 0], [I_q, 0, 0], [0, 0, (−1)^q ε]]` with `q = m/2`, and
/// `Y` cycling the hyperbolic pairs through the sign line.
pub(crate) fn zero_even_model(m: usize, eps: i8) -> (Matrix, Matrix) {
    let eps_scalar = ExactScalar::from_int(eps as i64);
    if m == 0 {
        return (
            Matrix::zeros(1, 1),
            Matrix::diagonal(&[eps_scalar]),
        );
    }
    let q = m / 2;
    let d = m + 1;
    let mut y = Matrix::zeros(d, d);
    for i in 0..q.saturating_sub(1) {
        y.set(i + 1, i, ExactScalar::one());
    }
    y.set(m, q - 1, ExactScalar::one());
    for i in 1..q {
        y.set(q + i - 1, q + i, -&ExactScalar::one());
    }
    let corner = if q % 2 == 0 { -&eps_scalar } else { eps_scalar.clone() };
    y.set(m - 1, m, corner);

    let mut k = Matrix::zeros(d, d);
    for i in 0..q {
        k.set(i, q + i, ExactScalar::one());
        k.set(q + i, i, ExactScalar::one());
    }
    let diag = if q % 2 == 0 { eps_scalar } else { -&eps_scalar };
    k.set(m, m, diag);
    (y, k)
}

/// Two paired Jordan chains of odd height `m`: dimension `2(m + 1)`,
/// hyperbolic Gram `[[0, I], [I, 0]]`, `Y = diag(−Nᵀ, N)`.
pub(crate) fn zero_odd_model(m: usize) -> (Matrix, Matrix) {
    let p = m + 1;
    let n = Matrix::upper_shift(p);
    let y = Matrix::direct_sum(&[&n.transpose().scale(&-&ExactScalar::one()), &n]);
    let mut k = Matrix::zeros(2 * p, 2 * p);
    k.set_block(0, p, &Matrix::identity(p));
    k.set_block(p, 0, &Matrix::identity(p));
    (y, k)
}

/// Companion matrix of the class polynomial.
fn class_companion(class: &EigenvalueClass) -> Matrix {
    let f = class.class_poly();
    let d = f.degree().expect("class polynomial is nonzero");
    Matrix::from_fn(d, d, |i, j| {
        if j == d - 1 {
            ExactScalar::from_rational(-&f.coeff(i))
        } else if i == j + 1 {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        }
    })
}

/// `Y = I_{m+1} ⊗ C + N_{m+1} ⊗ I`: `m + 1` companion copies chained by the
/// nilpotent shift, so the semisimple part is the block-diagonal companion
/// and the nilpotent part has `deg C` Jordan blocks of size `m + 1`.
fn spectral_chain(m: usize, companion: &Matrix) -> Matrix {
    let chain = m + 1;
    let d = companion.rows();
    &kron(&Matrix::identity(chain), companion)
        + &kron(&Matrix::upper_shift(chain), &Matrix::identity(d))
}

/// Basis of the space of symmetric `K` with `YᵀK + KY = 0`.
fn invariant_symmetric_grams(y: &Matrix) -> Result<Vec<Matrix>> {
    let d = y.rows();
    let var = |i: usize, j: usize| -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * d - i * (i + 1) / 2 + j
    };
    let nvars = d * (d + 1) / 2;
    let mut rows: Vec<Vec<ExactScalar>> = Vec::with_capacity(nvars);
    for a in 0..d {
        for b in a..d {
            let mut row = vec![ExactScalar::zero(); nvars];
            for c in 0..d {
                let y_ca = y.at(c, a);
                if !y_ca.is_zero() {
                    let k = var(c, b);
                    row[k] = &row[k] + y_ca;
                }
                let y_cb = y.at(c, b);
                if !y_cb.is_zero() {
                    let k = var(a, c);
                    row[k] = &row[k] + y_cb;
                }
            }
            rows.push(row);
        }
    }
    let system = Matrix::from_rows(rows)?;
    let nullspace = system.nullspace();
    Ok(nullspace
        .cols_iter()
        .map(|col| Matrix::from_fn(d, d, |i, j| col.at(var(i, j), 0).clone()))
        .collect())
}

/// Deterministic search for a nondegenerate element of the solution space:
/// single basis elements, then small two-term combinations, then seeded
/// random small-integer combinations.
fn first_nondegenerate(basis: &[Matrix]) -> Option<Matrix> {
    for b in basis {
        if !b.det().is_zero() {
            return Some(b.clone());
        }
    }
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            for (ci, cj) in [(1i64, 1i64), (1, -1), (1, 2), (2, 1), (1, -2), (2, -1)] {
                let cand = &basis[i].scale(&ExactScalar::from_int(ci))
                    + &basis[j].scale(&ExactScalar::from_int(cj));
                if !cand.det().is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..200 {
        let mut cand = Matrix::zeros(basis[0].rows(), basis[0].cols());
        for b in basis {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                cand = &cand + &b.scale(&ExactScalar::from_int(c));
            }
        }
        if !cand.det().is_zero() {
            return Some(cand);
        }
    }
    None
}

/// Solve for a Gram matrix realizing the label on the chained companion `y`,
/// enforcing the label's sign invariants.
fn select_gram(label: &TypeLabel, y: &Matrix) -> Result<Matrix> {
    let m = label.height();
    let basis = invariant_symmetric_grams(y)?;
    let mut k = first_nondegenerate(&basis)
        .ok_or_else(|| OrbitError::Unrealizable(label.to_string()))?;
    let d = y.rows();
    let chain = m + 1;

    match label.class() {
        EigenvalueClass::RP { .. } => {
            let sig = signature_index(&FormSpace::new(k.clone()))?;
            if (sig.negatives, sig.positives) != (chain, chain) {
                return Err(OrbitError::internal(
                    "real-pair representative is not hyperbolic",
                ));
            }
        }
        EigenvalueClass::CQ { .. } => {
            let sig = signature_index(&FormSpace::new(k.clone()))?;
            if (sig.negatives, sig.positives) != (2 * chain, 2 * chain) {
                return Err(OrbitError::internal(
                    "complex-quadruple representative is not hyperbolic",
                ));
            }
        }
        EigenvalueClass::IP { .. } => {
            let eps = label.sign().expect("validated sign");
            if m % 2 == 0 {
                // Index determines the sign: ind = m + (1 − ε).
                let ind = signature_index(&FormSpace::new(k.clone()))?.negatives;
                let want = m + (1 - eps) as usize;
                let other = m + (1 + eps) as usize;
                if ind == other {
                    k = k.scale(&-&ExactScalar::one());
                } else if ind != want {
                    return Err(OrbitError::internal(
                        "imaginary-pair Gram index is off the two admissible values",
                    ));
                }
                let ind = signature_index(&FormSpace::new(k.clone()))?.negatives;
                if ind != want {
                    return Err(OrbitError::internal(
                        "imaginary-pair Gram negation did not produce the required index",
                    ));
                }
                // The quotient sign s at height m must satisfy s = (−1)^{m/2}·ε.
                let s_expected: i8 = if m % 4 == 0 { eps } else { -eps };
                let (neg, pos) = quotient_signs(label, y, &k, m)?;
                let matches = (s_expected == 1 && neg == 0 && pos == 2)
                    || (s_expected == -1 && neg == 2 && pos == 0);
                if !matches {
                    return Err(OrbitError::internal(
                        "imaginary-pair quotient sign violates the even-height convention",
                    ));
                }
            } else {
                let (neg, pos) = quotient_signs(label, y, &k, m)?;
                let cand_sign: i8 = match (neg, pos) {
                    (0, 2) => 1,
                    (2, 0) => -1,
                    _ => {
                        return Err(OrbitError::internal(
                            "odd-height imaginary-pair quotient form is not definite",
                        ))
                    }
                };
                if cand_sign != eps {
                    k = k.scale(&-&ExactScalar::one());
                    let (neg, pos) = quotient_signs(label, y, &k, m)?;
                    let flipped: i8 = if pos == 2 && neg == 0 { 1 } else { -1 };
                    if flipped != eps {
                        return Err(OrbitError::internal(
                            "imaginary-pair quotient sign did not flip under negation",
                        ));
                    }
                }
                let ind = signature_index(&FormSpace::new(k.clone()))?.negatives;
                if ind != m + 1 {
                    return Err(OrbitError::internal(
                        "odd-height imaginary-pair representative is not hyperbolic",
                    ));
                }
            }
        }
        EigenvalueClass::Zero => unreachable!("zero class uses explicit models"),
    }

    debug_assert_eq!(k.rows(), d);
    Ok(k)
}

/// Quotient-form signature of the candidate pair at height `m`.
fn quotient_signs(label: &TypeLabel, y: &Matrix, k: &Matrix, m: usize) -> Result<(usize, usize)> {
    let pair = SubPair {
        class: label.class().clone(),
        y: y.clone(),
        space: FormSpace::new(k.clone()),
        basis: Matrix::identity(y.rows()),
    };
    induced_form_signs(&pair, label.class(), m)
}
