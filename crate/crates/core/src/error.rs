use thiserror::Error;

pub type Result<T> = std::result::Result<T, LithoError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LithoError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("field point {0:?} lies at or below the substrate interface")]
    BelowInterface([f64; 3]),

    #[error("points coincide: {0:?}")]
    CoincidentPoints([f64; 3]),

    #[error("point {0:?} lies inside or on the deposited structure")]
    InsideDeposition([f64; 3]),

    #[error("frequency mismatch: {0}")]
    FrequencyMismatch(String),

    #[error("material model has a pole on the real frequency axis at {0}")]
    RealAxisPole(f64),

    #[error("k-space truncation cannot be chosen automatically: {0}")]
    Truncation(String),

    #[error("finite-difference stencil around {0:?} leaves the admissible region")]
    StencilOutside([f64; 3]),
}
