//! Symmetric bilinear forms: signatures, orthogonal complements, and
//! standardisation along an isotropic vector.
//!
//! A form space is a finite-dimensional real vector space carried as the Gram
//! matrix of its form in the working basis.  The central construction is
//! [`standardize_with_isotropic`]: given a nondegenerate symmetric form `γ`
//! and an isotropic vector `v ≠ 0`, produce the change of basis that exhibits
//! the space as (isotropic line) ⊕ (definite-diagonal middle) ⊕ (the line
//! through `v`), with Gram matrix [`standard_k`] of the middle block and `v`
//! landing on the last basis vector.  This is how affine classification peels
//! one hyperbolic pair off the ambient space, and how synthesis glues
//! canonical blocks back together.
//!
//! Sign conventions everywhere: signatures are reported negatives first, so
//! Minkowski space `diag(−1,−1,−1,1)` has signature `(3, 1)`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{OrbitError, Result};
use crate::linalg::Matrix;
use crate::scalars::ExactScalar;

/// A finite-dimensional space equipped with a symmetric bilinear form,
/// carried as its Gram matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormSpace {
    /// Dimension of the space.
    pub dim: usize,
    /// Gram matrix of the form (symmetric).
    pub gram: Matrix,
}

impl FormSpace {
    /// Wrap a symmetric Gram matrix as a form space.
    pub fn new(gram: Matrix) -> Self {
        assert!(gram.is_symmetric(), "gram matrix must be symmetric");
        FormSpace {
            dim: gram.rows(),
            gram,
        }
    }

    /// The pairing `γ(u, v) = uᵀ · gram · v`.
    pub fn pairing(&self, u: &Matrix, v: &Matrix) -> ExactScalar {
        pairing(&self.gram, u, v)
    }

    /// The form space on a subspace: Gram matrix `bᵀ · gram · b` for a basis
    /// `b` given by columns.
    pub fn restrict(&self, basis: &Matrix) -> FormSpace {
        assert_eq!(basis.rows(), self.dim, "basis lives in this space");
        FormSpace::new(basis.transpose().matmul(&self.gram.matmul(basis)))
    }

    /// Whether the form is nondegenerate.
    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim
    }
}

/// Inertia of a nondegenerate symmetric bilinear form: the number of negative
/// and positive entries in any diagonalising basis.  The count of negatives
/// is the *index* of the form.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
pub struct Signature {
    /// Number of `−1` entries in a diagonalisation (the index).
    pub negatives: usize,
    /// Number of `+1` entries in a diagonalisation.
    pub positives: usize,
}

impl Signature {
    /// Total dimension of the underlying space.
    pub fn dim(&self) -> usize {
        self.negatives + self.positives
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.negatives, self.positives)
    }
}

/// The pairing `uᵀ · gram · v` as a scalar.
pub fn pairing(gram: &Matrix, u: &Matrix, v: &Matrix) -> ExactScalar {
    u.transpose().matmul(&gram.matmul(v)).scalar().clone()
}

/// Symmetric congruence diagonalisation: returns `(c, d)` with
/// `cᵀ · m · c` diagonal with entries `d`.
pub fn diagonalize_symmetric(m: &Matrix) -> (Matrix, Vec<ExactScalar>) {
    assert!(m.is_symmetric(), "diagonalising a non-symmetric matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut c = Matrix::identity(n);

    // Apply the column operation `col_t += f·col_s` as a congruence (column
    // then mirrored row) on `a`, and as a plain column operation on `c`.
    let congruence_add = |a: &mut Matrix, c: &mut Matrix, t: usize, s: usize, f: &ExactScalar| {
        for i in 0..n {
            let v = a.at(i, t) + &(f * a.at(i, s));
            a.set(i, t, v);
        }
        for j in 0..n {
            let v = a.at(t, j) + &(f * a.at(s, j));
            a.set(t, j, v);
        }
        for i in 0..n {
            let v = c.at(i, t) + &(f * c.at(i, s));
            c.set(i, t, v);
        }
    };
    let congruence_swap = |a: &mut Matrix, c: &mut Matrix, t: usize, s: usize| {
        for i in 0..n {
            let x = a.at(i, t).clone();
            let y = a.at(i, s).clone();
            a.set(i, t, y);
            a.set(i, s, x);
        }
        for j in 0..n {
            let x = a.at(t, j).clone();
            let y = a.at(s, j).clone();
            a.set(t, j, y);
            a.set(s, j, x);
        }
        for i in 0..n {
            let x = c.at(i, t).clone();
            let y = c.at(i, s).clone();
            c.set(i, t, y);
            c.set(i, s, x);
        }
    };

    for k in 0..n {
        if a.at(k, k).is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a.at(j, j).is_zero()) {
                congruence_swap(&mut a, &mut c, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a.at(k, j).is_zero()) {
                // a[k][k] = a[j][j] = 0 but a[k][j] ≠ 0: adding column j to
                // column k makes the diagonal entry 2·a[k][j] ≠ 0.
                congruence_add(&mut a, &mut c, k, j, &ExactScalar::one());
            } else {
                continue; // row and column k vanish from k on: radical
            }
        }
        let pivot_inv = a.at(k, k).inv().expect("nonzero diagonal pivot");
        for j in k + 1..n {
            if a.at(k, j).is_zero() {
                continue;
            }
            let f = -&(a.at(k, j) * &pivot_inv);
            congruence_add(&mut a, &mut c, j, k, &f);
        }
    }
    let d = (0..n).map(|i| a.at(i, i).clone()).collect();
    (c, d)
}

/// Inertia of a symmetric Gram matrix as `(negatives, positives, zeros)`.
/// Degenerate forms are allowed; `zeros` is the radical dimension.
pub fn inertia(gram: &Matrix) -> (usize, usize, usize) {
    let (_, d) = diagonalize_symmetric(gram);
    let mut neg = 0;
    let mut pos = 0;
    let mut zero = 0;
    for x in &d {
        match x.sign() {
            -1 => neg += 1,
            0 => zero += 1,
            _ => pos += 1,
        }
    }
    (neg, pos, zero)
}

/// Signature of a nondegenerate form space, negatives first.
///
/// Errors with [`OrbitError::DegenerateForm`] (carrying the radical
/// dimension) when the form has a nonzero radical.
pub fn signature_index(s: &FormSpace) -> Result<Signature> {
    let (negatives, positives, zeros) = inertia(&s.gram);
    if zeros != 0 {
        return Err(OrbitError::DegenerateForm(zeros));
    }
    Ok(Signature {
        negatives,
        positives,
    })
}

/// Basis (as columns) of the `γ`-orthogonal complement of the span of the
/// columns of `subspace`.
///
/// Requires the restriction of the form to the subspace to be nondegenerate,
/// so that the complement is a genuine direct summand; errors with
/// [`OrbitError::DegenerateRestriction`] otherwise.
pub fn orthocomplement(s: &FormSpace, subspace: &Matrix) -> Result<Matrix> {
    assert_eq!(
        s.dim,
        subspace.rows(),
        "subspace lives in the form's space"
    );
    let d = subspace.cols();
    if subspace.rank() != d {
        return Err(OrbitError::DimensionMismatch(
            "subspace columns are not independent".into(),
        ));
    }
    if s.restrict(subspace).gram.rank() != d {
        return Err(OrbitError::DegenerateRestriction);
    }
    Ok(subspace.transpose().matmul(&s.gram).nullspace())
}

/// The standard Gram matrix of (isotropic) ⊕ (middle `g`) ⊕ (isotropic):
/// `K[0][n+1] = K[n+1][0] = 1` around a middle block `g`.
pub fn standard_k(g: &Matrix) -> Matrix {
    assert!(g.is_square());
    let n = g.rows();
    let mut k = Matrix::zeros(n + 2, n + 2);
    k.set(0, n + 1, ExactScalar::one());
    k.set(n + 1, 0, ExactScalar::one());
    k.set_block(1, 1, g);
    k
}

/// The middle block `G` of a standard Gram matrix produced by
/// [`standard_k`].
pub fn middle_block(k_std: &Matrix) -> Matrix {
    assert!(k_std.is_square() && k_std.rows() >= 2);
    k_std.block(1, 1, k_std.rows() - 2, k_std.cols() - 2)
}

/// Standardise a nondegenerate symmetric form along an isotropic vector.
///
/// Returns `(p, k_std)` where `k_std = standard_k(g)` for a middle block
/// `g = diag(−1,…,−1, 1,…,1)` (negatives first) and the invertible `p`
/// satisfies both
///
/// * `pᵀ · k_std · p = gram`, and
/// * `p · v = e_{n+1}` (the last standard basis vector).
///
/// Errors: [`OrbitError::DegenerateForm`] when `gram` is singular,
/// [`OrbitError::NotIsotropic`] when `γ(v, v) ≠ 0` or `v = 0` (in
/// particular, for definite forms, which have no isotropic vectors at all),
/// and [`OrbitError::NotRational`] in the corner case where a middle rescale
/// `1/√|d|` leaves the scalar field.
pub fn standardize_with_isotropic(s: &FormSpace, v: &Matrix) -> Result<(Matrix, Matrix)> {
    let gram = &s.gram;
    let n2 = s.dim;
    assert_eq!(v.rows(), n2, "vector lives in the form's space");
    assert_eq!(v.cols(), 1, "v is a column vector");
    if v.is_zero_matrix() || !pairing(gram, v, v).is_zero() {
        return Err(OrbitError::NotIsotropic);
    }

    // A vector pairing nontrivially with v: some standard basis vector does,
    // unless gram·v = 0 — which would make the form degenerate.
    let gv = gram.matmul(v);
    let Some(i) = (0..n2).find(|&i| !gv.at(i, 0).is_zero()) else {
        return Err(OrbitError::DegenerateForm(n2 - gram.rank()));
    };
    let u = Matrix::basis_vector(n2, i);
    let c = pairing(gram, &u, v);
    let c_inv = c.inv()?;
    // e₀ = u/c − (γ(u,u) / 2c²)·v is isotropic with γ(e₀, v) = 1.
    let uu = pairing(gram, &u, &u);
    let half = ExactScalar::from_rational(crate::scalars::Rational::new(1, 2));
    let coeff = &(&uu * &half) * &(&c_inv * &c_inv);
    let e0 = &u.scale(&c_inv) - &v.scale(&coeff);
    debug_assert!(pairing(gram, &e0, &e0).is_zero());
    debug_assert!(pairing(gram, &e0, v).is_one());

    // Middle: γ-orthocomplement of span{e₀, v}, diagonalised and rescaled.
    let span = Matrix::hstack(&[&e0, v]);
    let w = orthocomplement(s, &span)?;
    let n = n2 - 2;
    if w.cols() != n {
        return Err(OrbitError::DegenerateForm(n2 - gram.rank()));
    }
    let m = w.transpose().matmul(&gram.matmul(&w));
    let (cmat, d) = diagonalize_symmetric(&m);
    let mut scaled_cols: Vec<(i8, Matrix)> = Vec::with_capacity(n);
    let wc = w.matmul(&cmat);
    for (j, dj) in d.iter().enumerate() {
        let sgn = dj.sign();
        if sgn == 0 {
            return Err(OrbitError::DegenerateForm(n2 - gram.rank()));
        }
        let root = dj.abs().sqrt().ok_or_else(|| {
            OrbitError::NotRational(format!(
                "middle rescale 1/sqrt({}) leaves the scalar field",
                dj.abs()
            ))
        })?;
        scaled_cols.push((sgn, wc.col(j).scale(&root.inv()?)));
    }
    // Negatives first.
    scaled_cols.sort_by_key(|(sgn, _)| *sgn);
    let neg = scaled_cols.iter().filter(|(sgn, _)| *sgn < 0).count();
    let mut g_entries = vec![ExactScalar::from_int(-1); neg];
    g_entries.extend(vec![ExactScalar::one(); n - neg]);
    let g = Matrix::diagonal(&g_entries);

    // Basis matrix: columns e₀, middle…, v; its Gram is standard_k(g).
    let mut parts: Vec<&Matrix> = vec![&e0];
    let cols: Vec<Matrix> = scaled_cols.into_iter().map(|(_, col)| col).collect();
    parts.extend(cols.iter());
    parts.push(v);
    let b = Matrix::hstack(&parts);
    let k_std = standard_k(&g);
    debug_assert_eq!(b.transpose().matmul(&gram.matmul(&b)), k_std);
    let p = b
        .inverse()
        .map_err(|_| OrbitError::internal("standardizing basis is singular"))?;
    Ok((p, k_std))
}

/// Cayley transform `(I − X)(I + X)⁻¹` of an algebra element `X`
/// (one with `Xᵀ·gram + gram·X = 0`); the result is an exact isometry of
/// `gram`. Errors with [`OrbitError::SingularMatrix`] when `I + X` is
/// singular.
pub fn cayley_isometry(gram: &Matrix, x: &Matrix) -> Result<Matrix> {
    debug_assert!((x.transpose().matmul(gram) + gram.matmul(x)).is_zero_matrix());
    let id = Matrix::identity(x.rows());
    let p = (&id - x).matmul(&(&id + x).inverse()?);
    debug_assert_eq!(p.transpose().matmul(&gram.matmul(&p)), *gram);
    Ok(p)
}

/// A random exact isometry of the space, deterministic per `rng` state:
/// the Cayley transform of `gram⁻¹·A` for a random small-integer
/// skew-symmetric `A`, resampling until `I + X` is invertible.
pub fn random_isometry(s: &FormSpace, rng: &mut impl rand::Rng) -> Matrix {
    let n = s.dim;
    let gram_inv = s
        .gram
        .inverse()
        .expect("random_isometry requires a nondegenerate form");
    loop {
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let e = ExactScalar::from_int(rng.gen_range(-3..=3));
                a.set(i, j, e.clone());
                a.set(j, i, -&e);
            }
        }
        let x = gram_inv.matmul(&a);
        if let Ok(p) = cayley_isometry(&s.gram, &x) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    fn sqrt(n: i64) -> ExactScalar {
        ExactScalar::sqrt_rational(&Rational::from_int(n)).unwrap()
    }

    fn minkowski() -> Matrix {
        Matrix::from_int_rows(&[
            &[-1, 0, 0, 0],
            &[0, -1, 0, 0],
            &[0, 0, -1, 0],
            &[0, 0, 0, 1],
        ])
    }

    #[test]
    fn signatures_negatives_first() {
        let mink = FormSpace::new(minkowski());
        assert_eq!(
            signature_index(&mink).unwrap(),
            Signature {
                negatives: 3,
                positives: 1,
            }
        );
        let k = FormSpace::new(standard_k(&minkowski()));
        assert_eq!(
            signature_index(&k).unwrap(),
            Signature {
                negatives: 4,
                positives: 2,
            }
        );
        // Degenerate form: error reports the radical dimension.
        let d = FormSpace::new(Matrix::from_int_rows(&[
            &[1, 0, 0],
            &[0, 0, 0],
            &[0, 0, -1],
        ]));
        assert_eq!(signature_index(&d), Err(OrbitError::DegenerateForm(1)));
        // Off-diagonal hyperbolic plane has signature (1, 1).
        let h = FormSpace::new(Matrix::from_int_rows(&[&[0, 1], &[1, 0]]));
        assert_eq!(
            signature_index(&h).unwrap(),
            Signature {
                negatives: 1,
                positives: 1,
            }
        );
    }

    #[test]
    fn standard_k_determinant_is_one() {
        // det [[0,0,1],[0,G,0],[1,0,0]] = −det G = +1 for Minkowski G:
        // expanding along the first row picks the (0,5) entry with sign
        // (−1)^5, and the remaining minor expands along its last row to
        // +det G = −1.
        let k = standard_k(&minkowski());
        assert_eq!(k.det(), ExactScalar::one());
        assert_eq!(middle_block(&k), minkowski());
    }

    #[test]
    fn diagonalization_congruence_identity() {
        let m = Matrix::from_int_rows(&[&[0, 1, 2], &[1, 0, 3], &[2, 3, 0]]);
        let (c, d) = diagonalize_symmetric(&m);
        let recon = c.transpose().matmul(&m.matmul(&c));
        assert_eq!(recon, Matrix::diagonal(&d.to_vec()));
    }

    #[test]
    fn orthocomplement_dimensions_and_pairing() {
        let k = FormSpace::new(standard_k(&minkowski()));
        // Complement of the hyperbolic plane span{e₀, e₅} is the middle.
        let span = Matrix::hstack(&[&Matrix::basis_vector(6, 0), &Matrix::basis_vector(6, 5)]);
        let comp = orthocomplement(&k, &span).unwrap();
        assert_eq!(comp.cols(), 4);
        for col in comp.cols_iter() {
            assert!(k.pairing(&Matrix::basis_vector(6, 0), &col).is_zero());
            assert!(k.pairing(&Matrix::basis_vector(6, 5), &col).is_zero());
        }
        // An isotropic line has degenerate restriction: no direct complement.
        let e0 = Matrix::basis_vector(6, 0);
        assert_eq!(
            orthocomplement(&k, &e0),
            Err(OrbitError::DegenerateRestriction)
        );
    }

    #[test]
    fn standardize_contract_on_rational_input() {
        // Scramble standard_k(diag(−1, 1)) by a rational congruence and ask
        // for it back.
        let g = Matrix::from_int_rows(&[&[-1, 0], &[0, 1]]);
        let k = standard_k(&g);
        let q = Matrix::from_int_rows(&[
            &[1, 2, 0, -1],
            &[0, 1, 1, 0],
            &[1, 0, 1, 0],
            &[0, 1, 0, 1],
        ]);
        assert!(!q.det().is_zero());
        let gram = q.transpose().matmul(&k.matmul(&q));
        let v = q.inverse().unwrap().col(3);
        assert!(pairing(&gram, &v, &v).is_zero());

        let space = FormSpace::new(gram.clone());
        let (p, k_out) = standardize_with_isotropic(&space, &v).unwrap();
        assert_eq!(k_out, k);
        assert_eq!(p.transpose().matmul(&k_out.matmul(&p)), gram);
        assert_eq!(p.matmul(&v), Matrix::basis_vector(4, 3));
    }

    #[test]
    fn standardize_with_irrational_isotropic_vector() {
        // Minkowski space, v = (1/√2)(−e₀ + e₃) is isotropic.
        let g = minkowski();
        let inv_sqrt2 = sqrt(2).inv().unwrap();
        let v = Matrix::col_from(vec![
            -&inv_sqrt2,
            ExactScalar::zero(),
            ExactScalar::zero(),
            inv_sqrt2.clone(),
        ]);
        assert!(pairing(&g, &v, &v).is_zero());
        let space = FormSpace::new(g.clone());
        let (p, k_out) = standardize_with_isotropic(&space, &v).unwrap();
        assert_eq!(
            middle_block(&k_out),
            Matrix::from_int_rows(&[&[-1, 0], &[0, -1]])
        );
        assert_eq!(p.transpose().matmul(&k_out.matmul(&p)), g);
        assert_eq!(p.matmul(&v), Matrix::basis_vector(4, 3));
    }

    #[test]
    fn standardize_rejects_bad_inputs() {
        let g = FormSpace::new(minkowski());
        // Timelike vector is not isotropic.
        let e3 = Matrix::basis_vector(4, 3);
        assert_eq!(
            standardize_with_isotropic(&g, &e3),
            Err(OrbitError::NotIsotropic)
        );
        // Zero vector is rejected.
        let z = Matrix::zeros(4, 1);
        assert_eq!(
            standardize_with_isotropic(&g, &z),
            Err(OrbitError::NotIsotropic)
        );
        // Degenerate form is rejected with its radical dimension.
        let dg = FormSpace::new(Matrix::from_int_rows(&[&[0, 0], &[0, 1]]));
        let e0 = Matrix::basis_vector(2, 0);
        assert_eq!(
            standardize_with_isotropic(&dg, &e0),
            Err(OrbitError::DegenerateForm(1))
        );
    }

    #[test]
    fn random_isometry_preserves_form_and_varies() {
        use rand::SeedableRng;
        let space = FormSpace::new(minkowski());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let p1 = random_isometry(&space, &mut rng);
        let p2 = random_isometry(&space, &mut rng);
        for p in [&p1, &p2] {
            assert_eq!(
                p.transpose().matmul(&space.gram.matmul(p)),
                space.gram,
                "isometry must preserve the form exactly"
            );
        }
        assert_ne!(p1, p2);
        // Same seed reproduces the same element.
        let mut rng2 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        assert_eq!(random_isometry(&space, &mut rng2), p1);
    }

    #[test]
    fn cayley_of_zero_is_identity() {
        let g = minkowski();
        let z = Matrix::zeros(4, 4);
        assert_eq!(cayley_isometry(&g, &z).unwrap(), Matrix::identity(4));
    }
}
