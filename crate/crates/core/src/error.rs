//! Error taxonomy shared by the whole crate.
//!
//! Errors fall into three classes, which the CLI maps onto distinct process
//! exit codes:
//!
//! * [`ErrorClass::Parse`] — malformed textual input (labels, scalars, JSON
//!   payloads);
//! * [`ErrorClass::Precondition`] — structurally valid input that violates a
//!   mathematical precondition (a matrix that is not in the orthogonal Lie
//!   algebra, a degenerate bilinear form, an unsupported eigenvalue
//!   configuration, …);
//! * [`ErrorClass::Internal`] — a theorem the implementation relies on failed
//!   to hold at runtime.  These indicate a bug and are never expected on any
//!   input accepted by the precondition checks.

use thiserror::Error;

/// Coarse classification of an [`OrbitError`], used for CLI exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed textual/JSON input.
    Parse,
    /// A mathematical precondition on the input is violated.
    Precondition,
    /// An internal invariant failed; this is a bug.
    Internal,
}

/// Unified error type for every fallible operation in the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OrbitError {
    // ---- parse errors -------------------------------------------------
    /// A scalar, rational, label or similar string failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    // ---- mathematical precondition errors ------------------------------
    /// Division by zero in exact scalar arithmetic.
    #[error("division by zero")]
    DivisionByZero,
    /// Square root of a negative rational was requested.
    #[error("square root of negative rational {0}")]
    NegativeRadicand(String),
    /// A value that must be rational (e.g. a characteristic-polynomial
    /// coefficient) contains an irrational part.
    #[error("expected a rational value, found {0}")]
    NotRational(String),
    /// Matrix dimensions do not match the operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// A matrix expected to be invertible is singular.
    #[error("singular matrix")]
    SingularMatrix,
    /// A linear system has no solution.
    #[error("inconsistent linear system")]
    InconsistentSystem,
    /// The polynomial is not even (equivalently, not equal to ±its own
    /// reflection), so it cannot be the characteristic polynomial of an
    /// element of an orthogonal Lie algebra.
    #[error("polynomial is neither even nor odd")]
    NotEvenOdd,
    /// Factorisation over the rationals is outside the supported range.
    #[error("factorisation incomplete: {0}")]
    FactorizationIncomplete(String),
    /// Eigenvalue configuration outside the supported vocabulary (rational
    /// a > 0 for real pairs, rational b > 0 for imaginary pairs, complex
    /// quadruples for irreducible even quartics).
    #[error("unsupported eigenvalue configuration: {0}")]
    UnsupportedEigenvalues(String),
    /// A bilinear form required to be nondegenerate is degenerate; carries
    /// the dimension of the radical.
    #[error("degenerate symmetric bilinear form (radical dimension {0})")]
    DegenerateForm(usize),
    /// The restriction of the ambient form to a subspace is degenerate, so
    /// the orthogonal complement does not split off.
    #[error("restriction of the form to the subspace is degenerate")]
    DegenerateRestriction,
    /// The matrix was required to be nilpotent.
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    /// The polynomial is not a factor of the characteristic polynomial.
    #[error("polynomial {0} does not divide the characteristic polynomial")]
    NotAFactor(String),
    /// No representative with the requested invariants exists.
    #[error("label is not realizable: {0}")]
    Unrealizable(String),
    /// The operation requires an affine cotype (nonzero isotropic marked
    /// vector).
    #[error("cotype is not affine")]
    NotAffineCotype,
    /// The matrix is not in the orthogonal Lie algebra / group of the form.
    #[error("matrix is not {0}")]
    NotInAlgebra(String),
    /// The vector was required to be isotropic and nonzero.
    #[error("vector is not a nonzero isotropic vector")]
    NotIsotropic,
    /// The vector was required to be annihilated by the matrix.
    #[error("matrix does not annihilate the marked vector")]
    NotAnnihilated,
    /// A requested signature is inconsistent with the label being built.
    #[error("inconsistent signature: {0}")]
    InconsistentSignature(String),
    /// The label cannot be realised (for example a sign/height combination
    /// outside the classification).
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    /// Input does not belong to any catalogued orbit family of the group.
    #[error("no matching orbit family: {0}")]
    NoMatchingFamily(String),

    // ---- internal invariant violations ----------------------------------
    /// An internal theorem-backed assertion failed.  Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl OrbitError {
    /// Classify this error for exit-code mapping.
    pub fn class(&self) -> ErrorClass {
        use OrbitError::*;
        match self {
            Parse(_) => ErrorClass::Parse,
            Internal(_) => ErrorClass::Internal,
            _ => ErrorClass::Precondition,
        }
    }

    /// Shorthand constructor for internal invariant violations.
    pub fn internal(msg: impl Into<String>) -> Self {
        OrbitError::Internal(msg.into())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, OrbitError>;
