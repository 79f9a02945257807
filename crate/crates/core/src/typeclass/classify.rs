//! Decomposition of a pair `(Y, W; γ)` into its indecomposable type multiset:
//! primary (eigenvalue-class) splitting, Jordan–Chevalley decomposition,
//! nilpotent block structure, quotient-form sign extraction, and the full
//! classifier.

use crate::error::{OrbitError, Result};
use crate::formspace::{inertia, signature_index, FormSpace};
use crate::linalg::{generalized_eigenspace, orthogonality_check, Matrix, OrthKind};
use crate::scalars::{poly_even_factorization, Poly};

use super::{EigenvalueClass, TypeLabel, TypeMultiset};

/// One primary summand of a pair: the restriction of `Y` and of the form to
/// a single eigenvalue class's generalized eigenspace.
#[derive(Clone, Debug)]
pub struct SubPair {
    /// The eigenvalue class the summand belongs to.
    pub class: EigenvalueClass,
    /// Restriction of Y, written in the summand's own coordinates.
    pub y: Matrix,
    /// Restriction of the form to the summand.
    pub space: FormSpace,
    /// Columns embed the summand's coordinates into the ambient space.
    pub basis: Matrix,
}

/// Split a pair into one sub-pair per eigenvalue class of `y` (including the
/// Zero class when 0 is an eigenvalue). The summands are `y`-invariant,
/// mutually orthogonal, and each carries a nondegenerate restricted form.
pub fn primary_split(y: &Matrix, space: &FormSpace) -> Result<Vec<SubPair>> {
    if !y.is_square() || y.rows() != space.dim {
        return Err(OrbitError::DimensionMismatch(format!(
            "operator is {}x{} but the form space has dimension {}",
            y.rows(),
            y.cols(),
            space.dim
        )));
    }
    if !orthogonality_check(y, &space.gram, &OrthKind::Algebra) {
        return Err(OrbitError::NotInAlgebra(
            "skew-adjoint for the form (not in the orthogonal Lie algebra)".into(),
        ));
    }
    let chi = y.char_poly()?;
    let (k, classes) = poly_even_factorization(&chi)?;
    let mut class_polys: Vec<(EigenvalueClass, Poly)> = Vec::new();
    if k >= 1 {
        class_polys.push((EigenvalueClass::Zero, Poly::x()));
    }
    for (f, _) in &classes {
        class_polys.push((EigenvalueClass::from_class_poly(f)?, f.clone()));
    }

    let mut out = Vec::new();
    for (class, f) in class_polys {
        let basis = generalized_eigenspace(y, &f)?;
        let y_sub = basis
            .solve(&y.matmul(&basis))
            .map_err(|_| OrbitError::internal("generalized eigenspace is not invariant"))?;
        let sub_space = space.restrict(&basis);
        if !sub_space.is_nondegenerate() {
            return Err(OrbitError::internal(
                "restriction of the form to a primary summand is degenerate",
            ));
        }
        out.push(SubPair {
            class,
            y: y_sub,
            space: sub_space,
            basis,
        });
    }

    let total: usize = out.iter().map(|s| s.space.dim).sum();
    assert_eq!(total, space.dim, "primary summand dimensions must fill the space");
    debug_assert!(pairwise_orthogonal(space, &out));
    Ok(out)
}

fn pairwise_orthogonal(space: &FormSpace, parts: &[SubPair]) -> bool {
    for (i, a) in parts.iter().enumerate() {
        for b in parts.iter().skip(i + 1) {
            let cross = a.basis.transpose().matmul(&space.gram.matmul(&b.basis));
            if !cross.is_zero_matrix() {
                return false;
            }
        }
    }
    true
}

/// Jordan-block partition of a nilpotent map: the multiset of block sizes in
/// descending order. The count of blocks of size `s` is
/// `rank Nˢ⁻¹ − 2·rank Nˢ + rank Nˢ⁺¹`.
pub fn nilpotent_block_structure(n: &Matrix, space: &FormSpace) -> Result<Vec<usize>> {
    assert!(n.is_square() && n.rows() == space.dim, "pair shape mismatch");
    debug_assert!(orthogonality_check(n, &space.gram, &OrthKind::Algebra));
    let d = n.rows();
    let mut ranks = Vec::with_capacity(d + 2);
    let mut power = Matrix::identity(d);
    ranks.push(d);
    for _ in 0..=d {
        power = power.matmul(n);
        ranks.push(power.rank());
    }
    if ranks[d] != 0 {
        return Err(OrbitError::NotNilpotent);
    }
    let mut partition = Vec::new();
    for s in (1..=d).rev() {
        let count = ranks[s - 1] + ranks[s + 1] - 2 * ranks[s];
        for _ in 0..count {
            partition.push(s);
        }
    }
    debug_assert_eq!(partition.iter().sum::<usize>(), d);
    Ok(partition)
}

/// Split `y` into its commuting semisimple and nilpotent parts `(S, N)`,
/// `y = S + N`. Both parts are polynomials in `y` (so they inherit algebra
/// membership and invariant subspaces), computed by Newton iteration for a
/// root of the squarefree part of the characteristic polynomial in the
/// quotient ring modulo the characteristic polynomial.
pub fn jordan_chevalley(y: &Matrix) -> Result<(Matrix, Matrix)> {
    assert!(y.is_square());
    let d = y.rows();
    let chi = y.char_poly()?;
    let rad = chi.div_exact(&chi.gcd(&chi.derivative())).monic();
    let rad_deriv = rad.derivative();

    let mut s_poly = Poly::x();
    let mut converged = false;
    for _ in 0..64 {
        let val = eval_mod(&rad, &s_poly, &chi);
        if val.is_zero() {
            converged = true;
            break;
        }
        let der = eval_mod(&rad_deriv, &s_poly, &chi);
        let inv = der
            .invert_mod(&chi)
            .ok_or_else(|| OrbitError::internal("semisimple-part Newton step not invertible"))?;
        s_poly = s_poly.sub(&val.mul(&inv)).divrem(&chi).1;
    }
    if !converged {
        return Err(OrbitError::internal(
            "semisimple-part Newton iteration did not converge",
        ));
    }

    let s = y.eval_poly(&s_poly);
    let n = y - &s;
    debug_assert!(n.pow(d as u32).is_zero_matrix(), "nilpotent part must vanish");
    debug_assert!(
        s.eval_poly(&rad).is_zero_matrix(),
        "semisimple part must satisfy the squarefree polynomial"
    );
    debug_assert_eq!(s.matmul(&n), n.matmul(&s));
    Ok((s, n))
}

/// Evaluate `p(s)` in the quotient ring of polynomials modulo `modulus`.
fn eval_mod(p: &Poly, s: &Poly, modulus: &Poly) -> Poly {
    let mut acc = Poly::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc
            .mul(s)
            .add(&Poly::constant(c.clone()))
            .divrem(modulus)
            .1;
    }
    acc
}

/// Signature `(negatives, positives)` of the quotient form at height `m` for
/// a single-class sub-pair.
///
/// Write `N` for the nilpotent part of the sub-pair's map and `S` for its
/// semisimple part. On `ker N^{m+1}` modulo the radical
/// `R_m = ker N^m + N·ker N^{m+2}`, the form `γ(u, N^m v)` is symmetric for
/// even `m` and the form `γ(u, S·N^m v)` is symmetric for odd `m`; their
/// signatures separate the sign-decorated types. For the Zero class at odd
/// `m` the quotient form is skew-symmetric, and the pair count `t` of
/// two-block summands is returned as `(t, t)`.
pub fn induced_form_signs(
    pair: &SubPair,
    class: &EigenvalueClass,
    m: usize,
) -> Result<(usize, usize)> {
    let (s, n) = match class {
        EigenvalueClass::Zero => (None, pair.y.clone()),
        EigenvalueClass::IP { .. } => {
            let (s, n) = jordan_chevalley(&pair.y)?;
            (Some(s), n)
        }
        _ => {
            return Err(OrbitError::internal(
                "quotient-form signs are defined only for the Zero and IP classes",
            ))
        }
    };

    let reps = quotient_representatives(&n, m);
    let quotient_dim = reps.cols();

    if matches!(class, EigenvalueClass::Zero) && m % 2 == 1 {
        // Skew quotient form: blocks pair off; report the pair count twice.
        let form = quotient_form(&pair.space, &reps, &n.pow(m as u32), None);
        if form.rank() != quotient_dim || quotient_dim % 2 != 0 {
            return Err(OrbitError::internal(
                "odd-height quotient form is not a nondegenerate pairing",
            ));
        }
        let t = quotient_dim / 2;
        return Ok((t, t));
    }

    let twist = if m % 2 == 1 { s.as_ref() } else { None };
    let form = quotient_form(&pair.space, &reps, &n.pow(m as u32), twist);
    debug_assert!(form.is_symmetric());
    let (neg, pos, zero) = inertia(&form);
    if zero > 0 {
        return Err(OrbitError::internal(
            "quotient form at a present height is degenerate",
        ));
    }
    Ok((neg, pos))
}

/// Columns spanning `ker N^{m+1}` modulo `R_m = ker N^m + N·ker N^{m+2}`.
fn quotient_representatives(n: &Matrix, m: usize) -> Matrix {
    let kernel = n.pow(m as u32 + 1).nullspace();
    let radical = Matrix::hstack(&[
        &n.pow(m as u32).nullspace(),
        &n.matmul(&n.pow(m as u32 + 2).nullspace()),
    ]);
    let mut span = radical.clone();
    let mut rank = span.rank();
    let mut reps: Vec<Matrix> = Vec::new();
    for col in kernel.cols_iter() {
        let extended = Matrix::hstack(&[&span, &col]);
        let r = extended.rank();
        if r > rank {
            reps.push(col);
            span = extended;
            rank = r;
        }
    }
    if reps.is_empty() {
        Matrix::zeros(n.rows(), 0)
    } else {
        let refs: Vec<&Matrix> = reps.iter().collect();
        Matrix::hstack(&refs)
    }
}

/// Matrix of `(u, v) ↦ γ(u, [S·]N^m v)` on the representative columns.
fn quotient_form(space: &FormSpace, reps: &Matrix, n_pow: &Matrix, twist: Option<&Matrix>) -> Matrix {
    let mut op = n_pow.matmul(reps);
    if let Some(s) = twist {
        op = s.matmul(&op);
    }
    reps.transpose().matmul(&space.gram.matmul(&op))
}

/// Classify a pair into its complete multiset of indecomposable type labels.
pub fn classify_pair(y: &Matrix, space: &FormSpace) -> Result<TypeMultiset> {
    let mut out = TypeMultiset::new();
    for sub in primary_split(y, space)? {
        let n = match &sub.class {
            EigenvalueClass::Zero => sub.y.clone(),
            _ => jordan_chevalley(&sub.y)?.1,
        };
        let partition = nilpotent_block_structure(&n, &sub.space)?;
        for (size, count) in group_sizes(&partition) {
            let m = size - 1;
            match &sub.class {
                EigenvalueClass::Zero => {
                    if m % 2 == 0 {
                        let (neg, pos) = induced_form_signs(&sub, &sub.class, m)?;
                        if neg + pos != count {
                            return Err(OrbitError::internal(
                                "zero-class quotient dimension does not match the block count",
                            ));
                        }
                        out.insert(TypeLabel::zero(m, -1)?, neg);
                        out.insert(TypeLabel::zero(m, 1)?, pos);
                    } else {
                        let (t, t2) = induced_form_signs(&sub, &sub.class, m)?;
                        if t != t2 || 2 * t != count {
                            return Err(OrbitError::internal(
                                "odd-height zero blocks do not pair off",
                            ));
                        }
                        out.insert(TypeLabel::zero(m, None)?, t);
                    }
                }
                EigenvalueClass::RP { a } => {
                    if count % 2 != 0 {
                        return Err(OrbitError::internal(
                            "real-pair blocks must come in twos",
                        ));
                    }
                    out.insert(TypeLabel::rp(m, a.clone())?, count / 2);
                }
                EigenvalueClass::IP { b } => {
                    let (neg, pos) = induced_form_signs(&sub, &sub.class, m)?;
                    if neg + pos != count || neg % 2 != 0 || pos % 2 != 0 {
                        return Err(OrbitError::internal(
                            "imaginary-pair quotient signature is not evenly paired",
                        ));
                    }
                    // For even heights the quotient sign s and the label sign
                    // ε are related by s = (−1)^{m/2}·ε; odd heights use the
                    // quotient sign itself.
                    let pos_sign: i8 = if m % 2 == 1 || m % 4 == 0 { 1 } else { -1 };
                    out.insert(TypeLabel::ip(m, pos_sign, b.clone())?, pos / 2);
                    out.insert(TypeLabel::ip(m, -pos_sign, b.clone())?, neg / 2);
                }
                EigenvalueClass::CQ { quartic } => {
                    if count % 4 != 0 {
                        return Err(OrbitError::internal(
                            "complex-quadruple blocks must come in fours",
                        ));
                    }
                    let label = TypeLabel::new(
                        EigenvalueClass::CQ {
                            quartic: quartic.clone(),
                        },
                        m,
                        None,
                    )?;
                    out.insert(label, count / 4);
                }
            }
        }
    }

    let (total_dim, total_index) = out.total_dim_index()?;
    assert_eq!(total_dim, space.dim, "type dimensions must sum to the space dimension");
    assert_eq!(
        total_index,
        signature_index(space)?.negatives,
        "type indices must sum to the space index"
    );
    Ok(out)
}

/// Collapse a descending partition into (size, count) pairs.
fn group_sizes(partition: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &s in partition {
        match out.last_mut() {
            Some((size, count)) if *size == s => *count += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}
