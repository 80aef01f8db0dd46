use thiserror::Error;

use crate::models::ModelId;

/// Errors raised by the geometry kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coordinates outside the {model:?} model domain")]
    OutOfDomain { model: ModelId },

    #[error("tangent vector is not a unit vector (hyperbolic norm {norm})")]
    NotUnit { norm: f64 },

    #[error("tangent vector is not tangent to the hyperboloid (product with base {product})")]
    NotTangent { product: f64 },

    #[error("invalid curvature interval ({lo}, {hi})")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("value {value} is outside the open interval ({lo}, {hi})")]
    OutsideInterval { value: f64, lo: f64, hi: f64 },

    #[error("speed encoding requires a positive argument, got {0}")]
    NonPositive(f64),

    #[error("non-finite curve data at node {0}")]
    NonFinite(usize),

    #[error("integrator step size underflow at t = {0}")]
    StepUnderflow(f64),

    #[error("invalid parameter grid: {0}")]
    InvalidGrid(&'static str),

    #[error("unit tangents do not match at the junction (gap {0})")]
    TangentMismatch(f64),

    #[error("normal translation by {rho} is singular at t = {t} (curvature {kappa})")]
    SingularTranslation { rho: f64, t: f64, kappa: f64 },

    #[error("the interval (-1, 1) has no reduced normal form")]
    MinusOneOne,

    #[error("curvature {kappa} leaves the admissible band ({lo}, {hi})")]
    BandViolation { kappa: f64, lo: f64, hi: f64 },

    #[error("curvature interval ({lo}, {hi}) is not contained in [-1, 1]")]
    NotContained { lo: f64, hi: f64 },

    #[error("{tau} is not a valid total turning for this pair of unit tangents")]
    InvalidTurning { tau: f64 },

    #[error("chart argument is not strictly increasing at node {0}")]
    NotConvex(usize),

    #[error("curve is not regular at node {0}")]
    Degenerate(usize),

    #[error("incompatible inputs: {0}")]
    Mismatch(String),

    #[error("root is not bracketed: {0}")]
    NotBracketed(&'static str),

    #[error("steering did not converge within budget")]
    SteeringFailed,

    #[error("loop curvature {0} is not admissible")]
    InadmissibleLoop(f64),

    #[error("curve is undersampled: chart argument jumps by {0} between nodes")]
    Undersampled(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
