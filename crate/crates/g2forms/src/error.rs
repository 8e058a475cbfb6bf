//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by the exterior-algebra layer.
#[derive(Debug, Clone, Error)]
pub enum FormError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("interior product requires degree >= 1")]
    InteriorDegreeZero,
    #[error("orientation form is zero")]
    ZeroOrientation,
    #[error("matrix shape {rows}x{cols} incompatible with {with}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        with: String,
    },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is singular")]
    Singular,
    #[error("multi-index {0:?} invalid for dimension {1}")]
    BadMultiIndex(Vec<u8>, usize),
}

/// Text-level failure with a position, used by the structure-constant and
/// structure-file parsers.
#[derive(Debug, Clone, Error)]
#[error("parse error at line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }
}

/// Validity failures of SU(3)- and G2-structures and of the constructions
/// built on top of them. Each rejected precondition gets its own variant so
/// callers can tell them apart.
#[derive(Debug, Clone, Error)]
pub enum StructureError {
    #[error("2-form is not stable: omega^3 = 0")]
    OmegaNotStable,
    #[error("3-form is not stable of positive type (invariant lambda = {0:.3e} >= 0)")]
    PsiNotStable(f64),
    #[error("forms are not compatible: |omega wedge psi| = {0:.3e}")]
    NotCompatible(f64),
    #[error("forms are not normalized: |psi+ wedge psi- - (2/3) omega^3| = {0:.3e}")]
    NotNormalized(f64),
    #[error("induced bilinear form is not positive definite")]
    MetricNotPositiveDefinite,
    #[error("3-form does not induce a definite bilinear form")]
    NotAG2Form,
    #[error("vector is not unit: g(n,n) = {0}")]
    NotUnit(f64),
    #[error("matrix is not a derivation (Leibniz residual {0:.3e})")]
    NotDerivation(f64),
    #[error("structure constants violate the Jacobi identity (residual {0:.3e})")]
    JacobiFailed(f64),
    #[error("derivation is not the real form of a traceless complex 3x3 matrix (residual {0:.3e})")]
    NotRealifiedTraceless(f64),
    #[error("structure is not coupled (residual {0:.3e})")]
    NotCoupled(f64),
    #[error("structure is not nearly Kahler")]
    NotNearlyKahler,
    #[error("cone construction requires coupled constant != 3: d(phi) = 0 and the torsion 1-form would vanish")]
    ConeConstantThree,
    #[error("rescaling constant must be nonzero")]
    ZeroRescale,
    #[error(transparent)]
    Form(#[from] FormError),
}
