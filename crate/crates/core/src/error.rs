use thiserror::Error;

/// Errors raised while building or checking algebraic objects.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientDimension { left: usize, right: usize },

    #[error("invalid tolerance: {0}")]
    Tolerance(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("not a C*-presentation: {0}")]
    NotCStar(String),

    #[error("{what} check failed, residual {residual:.3e}")]
    Homomorphism { what: String, residual: f64 },

    #[error("Hopf axiom `{axiom}` failed, residual {residual:.3e}")]
    HopfAxiom { axiom: String, residual: f64 },

    #[error("coaction condition `{condition}` failed, residual {residual:.3e}")]
    Coaction { condition: String, residual: f64 },

    #[error("cocycle identity violated, residual {0:.3e}")]
    Cocycle(f64),

    #[error("element is not a projection, residual {0:.3e}")]
    NotProjection(f64),

    #[error("element is not unitary, residual {0:.3e}")]
    NotUnitary(f64),

    #[error("non-integer value {value} where an integer was required ({context})")]
    NonInteger { value: f64, context: String },

    #[error("unsupported size: {0}")]
    Unsupported(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    /// A theorem-level consistency check failed. On verified inputs this is a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// True for errors that indicate a violated theorem or broken convention rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
