//! Dense exact matrices over [`ExactScalar`].
//!
//! Everything here is textbook Gauss–Jordan over an exact field: reduced row
//! echelon form drives rank, kernels, linear solves, and inversion, while
//! determinants come from triangularisation and characteristic polynomials
//! from the Faddeev–LeVerrier recurrence.  Dimensions relevant to the crate
//! are tiny (≤ 12), so asymptotics are irrelevant; what matters is that
//! every predicate ("is this entry zero?", "is this system solvable?") is
//! decided exactly.
//!
//! Column vectors are `n×1` matrices; 1×1 products such as `wᵀ·G·v` are read
//! back with [`Matrix::scalar`].  Zero-dimensional matrices are first-class
//! citizens: empty forms and empty kernels occur routinely at the base of
//! the classification recursions.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{OrbitError, Result};
use crate::scalars::{ExactScalar, Poly, Rational};

/// A dense `rows × cols` matrix of exact scalars, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl Matrix {
    /// The `rows × cols` zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    /// The `n × n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    /// Build from explicit rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(OrbitError::DimensionMismatch(
                "matrix rows of unequal length".into(),
            ));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from a function of the index pair.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Convenience constructor from integer literals.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| ExactScalar::from_int(c)).collect())
                .collect(),
        )
        .expect("integer literal rows of equal length")
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(entries: &[ExactScalar]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                ExactScalar::zero()
            }
        })
    }

    /// A column vector from entries.
    pub fn col_from(entries: Vec<ExactScalar>) -> Self {
        let rows = entries.len();
        Matrix {
            rows,
            cols: 1,
            data: entries,
        }
    }

    /// The `i`-th standard basis column vector in dimension `n`.
    /// The n×n single nilpotent Jordan block with ones on the superdiagonal,
    /// i.e. the left shift `N e₁ = 0`, `N e_{j+1} = e_j`.
    pub fn upper_shift(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if j == i + 1 {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            }
        })
    }

    /// The `i`-th standard basis column vector of length `n`.
    pub fn basis_vector(n: usize, i: usize) -> Self {
        let mut v = Matrix::zeros(n, 1);
        v.set(i, 0, ExactScalar::one());
        v
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Whether the matrix is square.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> &ExactScalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }

    /// Overwrite entry at `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        self.data[i * self.cols + j] = v;
    }

    /// Whether every entry is zero.
    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(ExactScalar::is_zero)
    }

    /// Whether `self == selfᵀ`.
    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    /// Whether `selfᵀ == −self`.
    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..=i).all(|j| (self.at(i, j) + self.at(j, i)).is_zero())
            })
    }

    /// The sole entry of a 1×1 matrix.
    pub fn scalar(&self) -> &ExactScalar {
        assert!(
            self.rows == 1 && self.cols == 1,
            "scalar() requires a 1×1 matrix"
        );
        &self.data[0]
    }

    /// Transpose.
    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Entry-wise map.
    pub fn map(&self, mut f: impl FnMut(&ExactScalar) -> ExactScalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    /// Scale every entry.
    pub fn scale(&self, c: &ExactScalar) -> Matrix {
        self.map(|x| x * c)
    }

    /// Matrix product.
    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul dimension mismatch: {}×{} by {}×{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let cur = out.at(i, j) + &prod;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Matrix power (square matrices).
    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square(), "pow requires a square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.matmul(self);
        }
        acc
    }

    /// Trace.
    pub fn trace(&self) -> ExactScalar {
        assert!(self.is_square(), "trace requires a square matrix");
        let mut t = ExactScalar::zero();
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        t
    }

    /// Copy of column `j` as an `n×1` matrix.
    pub fn col(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.rows, 1, |i, _| self.at(i, j).clone())
    }

    /// Iterator over columns.
    pub fn cols_iter(&self) -> impl Iterator<Item = Matrix> + '_ {
        (0..self.cols).map(|j| self.col(j))
    }

    /// Copy of the block starting at `(r0, c0)` of size `nrows × ncols`.
    pub fn block(&self, r0: usize, c0: usize, nrows: usize, ncols: usize) -> Matrix {
        assert!(r0 + nrows <= self.rows && c0 + ncols <= self.cols);
        Matrix::from_fn(nrows, ncols, |i, j| self.at(r0 + i, c0 + j).clone())
    }

    /// Overwrite the block starting at `(r0, c0)` with `m`.
    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Matrix) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols);
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.at(i, j).clone());
            }
        }
    }

    /// Concatenate side by side (equal row counts).
    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        assert!(parts.iter().all(|p| p.rows == rows));
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut c = 0;
        for p in parts {
            out.set_block(0, c, p);
            c += p.cols;
        }
        out
    }

    /// Concatenate top to bottom (equal column counts).
    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        assert!(parts.iter().all(|p| p.cols == cols));
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Matrix::zeros(rows, cols);
        let mut r = 0;
        for p in parts {
            out.set_block(r, 0, p);
            r += p.rows;
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.set_block(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    // -- elimination -------------------------------------------------------

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // Find a pivot in this column at or below `row`.
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    let a = m.at(row, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.at(row, col).inv().expect("pivot is nonzero");
            for j in col..m.cols {
                let v = m.at(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for j in col..m.cols {
                    let v = m.at(r, j) - &(&factor * m.at(row, j));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the kernel, returned as the columns of an `n×k` matrix
    /// (`k = n − rank`; `k = 0` gives an `n×0` matrix).
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let mut out = Matrix::zeros(n, free.len());
        for (k, &fj) in free.iter().enumerate() {
            out.set(fj, k, ExactScalar::one());
            for (prow, &pcol) in pivots.iter().enumerate() {
                out.set(pcol, k, -r.at(prow, fj));
            }
        }
        out
    }

    /// One solution `X` of `self · X = b` (free variables set to zero), or
    /// [`OrbitError::InconsistentSystem`] when none exists.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        if b.rows != self.rows {
            return Err(OrbitError::DimensionMismatch(format!(
                "solve: lhs has {} rows, rhs has {}",
                self.rows, b.rows
            )));
        }
        let aug = Matrix::hstack(&[self, b]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(OrbitError::InconsistentSystem);
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (prow, &pcol) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pcol, j, r.at(prow, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    /// Whether `v` lies in the column space.
    pub fn image_contains(&self, v: &Matrix) -> bool {
        self.solve(v).is_ok()
    }

    /// Determinant, by fraction-full Gaussian elimination.
    pub fn det(&self) -> ExactScalar {
        assert!(self.is_square(), "det requires a square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut sign = 1i8;
        let mut det = ExactScalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return ExactScalar::zero();
            };
            if p != col {
                sign = -sign;
                for j in 0..n {
                    let a = m.at(col, j).clone();
                    let b = m.at(p, j).clone();
                    m.set(col, j, b);
                    m.set(p, j, a);
                }
            }
            let pivot = m.at(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col) * &inv;
                for j in col..n {
                    let v = m.at(r, j) - &(&factor * m.at(col, j));
                    m.set(r, j, v);
                }
            }
        }
        if sign < 0 {
            -&det
        } else {
            det
        }
    }

    /// Inverse, or [`OrbitError::SingularMatrix`].
    pub fn inverse(&self) -> Result<Matrix> {
        assert!(self.is_square(), "inverse requires a square matrix");
        let n = self.rows;
        let aug = Matrix::hstack(&[self, &Matrix::identity(n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
            return Err(OrbitError::SingularMatrix);
        }
        Ok(r.block(0, n, n, n))
    }

    // -- polynomial structure ----------------------------------------------

    /// Evaluate a rational polynomial at this (square) matrix.
    pub fn eval_poly(&self, p: &Poly) -> Matrix {
        assert!(self.is_square(), "eval_poly requires a square matrix");
        let n = self.rows;
        let mut acc = Matrix::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.matmul(self);
            if !c.is_zero() {
                let ce = ExactScalar::from_rational(c.clone());
                for i in 0..n {
                    let v = acc.at(i, i) + &ce;
                    acc.set(i, i, v);
                }
            }
        }
        acc
    }

    /// Monic characteristic polynomial `det(x·I − self)`, by the
    /// Faddeev–LeVerrier recurrence.
    ///
    /// Errors with [`OrbitError::NotRational`] when a coefficient fails to
    /// be rational (possible for matrices with irrational entries that do
    /// not lie in any rational orthogonal Lie algebra).
    pub fn char_poly(&self) -> Result<Poly> {
        assert!(self.is_square(), "char_poly requires a square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Matrix::identity(n);
        for k in 1..=n {
            let am = self.matmul(&m);
            let c = -&am.trace() * &ExactScalar::from_rational(Rational::new(1, k as i64));
            coeffs[n - k] = c.expect_rational().map_err(|_| {
                OrbitError::NotRational(format!(
                    "characteristic polynomial coefficient of x^{}",
                    n - k
                ))
            })?;
            m = am;
            let ce = ExactScalar::from_rational(coeffs[n - k].clone());
            for i in 0..n {
                let v = m.at(i, i) + &ce;
                m.set(i, i, v);
            }
        }
        Ok(Poly::new(coeffs))
    }
}

/// Basis of the generalized eigenspace of `y` for the even class polynomial
/// `u(x²)`-style factor `f`: the kernel of `f(y)^dim`, columns of the result.
///
/// `f` must divide the characteristic polynomial of `y`; otherwise the
/// kernel would be zero and the call errors with [`OrbitError::NotAFactor`].
pub fn generalized_eigenspace(y: &Matrix, f: &Poly) -> Result<Matrix> {
    assert!(y.is_square());
    let chi = y.char_poly()?;
    let (_, rem) = chi.divrem(f);
    if !rem.is_zero() {
        return Err(OrbitError::NotAFactor(f.to_string()));
    }
    let n = y.rows() as u32;
    Ok(y.eval_poly(f).pow(n).nullspace())
}

/// Kronecker (tensor) product: the block matrix `(a[i][j] · b)`.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        a.at(i / b.rows(), j / b.cols()) * b.at(i % b.rows(), j % b.cols())
    })
}

/// Which orthogonality condition [`orthogonality_check`] tests.
#[derive(Clone, Debug)]
pub enum OrthKind {
    /// Lie algebra condition `mᵀ·gram + gram·m = 0`.
    Algebra,
    /// Group condition `mᵀ·gram·m = gram`.
    Group,
    /// Algebra condition together with annihilation `m·v = 0`.
    StabilizerAlgebra(Matrix),
    /// Group condition together with fixing `m·v = v`.
    StabilizerGroup(Matrix),
}

/// Test whether `m` satisfies the orthogonality condition selected by `kind`
/// with respect to the symmetric bilinear form `gram`.
pub fn orthogonality_check(m: &Matrix, gram: &Matrix, kind: &OrthKind) -> bool {
    let algebra = |m: &Matrix| (m.transpose().matmul(gram) + gram.matmul(m)).is_zero_matrix();
    let group = |m: &Matrix| m.transpose().matmul(gram).matmul(m) == *gram;
    match kind {
        OrthKind::Algebra => algebra(m),
        OrthKind::Group => group(m),
        OrthKind::StabilizerAlgebra(v) => algebra(m) && m.matmul(v).is_zero_matrix(),
        OrthKind::StabilizerGroup(v) => group(m) && m.matmul(v) == *v,
    }
}

// -- operators --------------------------------------------------------------

impl Index<(usize, usize)> for Matrix {
    type Output = ExactScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ExactScalar {
        self.at(i, j)
    }
}

macro_rules! matrix_binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait<&Matrix> for &Matrix {
            type Output = Matrix;
            fn $method(self, rhs: &Matrix) -> Matrix {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
        impl $trait<Matrix> for Matrix {
            type Output = Matrix;
            fn $method(self, rhs: Matrix) -> Matrix {
                $trait::$method(&self, &rhs)
            }
        }
    };
}

matrix_binop!(Add, add, |a, b| {
    assert!(a.rows == b.rows && a.cols == b.cols, "matrix sum shape");
    Matrix::from_fn(a.rows, a.cols, |i, j| a.at(i, j) + b.at(i, j))
});
matrix_binop!(Sub, sub, |a, b| {
    assert!(a.rows == b.rows && a.cols == b.cols, "matrix difference shape");
    Matrix::from_fn(a.rows, a.cols, |i, j| a.at(i, j) - b.at(i, j))
});
matrix_binop!(Mul, mul, |a, b| a.matmul(b));

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|x| -x)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}×{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "[ {} ]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// -- serde --------------------------------------------------------------------

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed: std::result::Result<Vec<Vec<ExactScalar>>, D::Error> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| s.parse::<ExactScalar>().map_err(D::Error::custom))
                    .collect()
            })
            .collect();
        Matrix::from_rows(parsed?).map_err(D::Error::custom)
    }
}
