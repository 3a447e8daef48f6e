use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("cannot evaluate a Laurent polynomial at zero")]
    ZeroPoint,

    #[error("multiplicity of a unit factor is unbounded")]
    UnitFactor,

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("not a Seifert matrix of a connected surface: V - V^T has elementary divisor {divisor}")]
    InvalidSeifert { divisor: String },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("cosine {0} is outside [-1, 1]")]
    CosineOutOfRange(String),

    #[error("matrix is not Hermitian under t -> t^-1 at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("localized diagonalization needs a quadratic trace factor t + t^-1 - 2c with |c| < 1, got {0}")]
    FactorNotApplicable(String),

    #[error("point {point} does not match the localizing factor {factor}")]
    PointMismatch { point: String, factor: String },

    #[error("points {0} and {1} coincide")]
    CoincidentPoints(String, String),

    #[error("signature at {point} is unresolved (exact value needs an algebraic extension); nullity {nullity}, one-sided jump bound {jump_bound}")]
    Unresolved {
        point: String,
        nullity: usize,
        jump_bound: usize,
    },

    #[error("{0} is not a critical point of this step function")]
    NotCritical(String),

    #[error("samples inside the arc ({start}, {end}) disagree: {values:?}")]
    InconsistentArc {
        start: String,
        end: String,
        values: Vec<i64>,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
