//! Geometry kernel for curves of constrained geodesic curvature in the
//! hyperbolic plane.
//!
//! Everything is generic over a [`Real`] scalar; the `*64` aliases below fix
//! it to `f64`, which is what the command-line tool uses.

pub mod classify;
pub mod curves;
pub mod error;
pub mod homotopy;
pub mod interp;
pub mod models;
pub mod ode;
pub mod scalar;
pub mod transform;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Vec3f64 = models::Vec3<f64>;
pub type Mat3f64 = models::Mat3<f64>;
pub type ModelPoint64 = models::ModelPoint<f64>;
pub type ModelVector64 = models::ModelVector<f64>;
pub type Isometry64 = models::Isometry<f64>;
pub type CurvatureInterval64 = curves::CurvatureInterval<f64>;
pub type IntrinsicCurve64 = curves::IntrinsicCurve<f64>;
pub type SampledCurve64 = curves::SampledCurve<f64>;
pub type ReductionRecipe64 = transform::ReductionRecipe<f64>;
pub type HomotopyFamily64 = homotopy::HomotopyFamily<f64>;
pub type MercatorProfile64 = homotopy::MercatorProfile<f64>;
pub type ArgumentCurve64 = homotopy::ArgumentCurve<f64>;
pub type RegionR64 = classify::RegionR<f64>;
pub type TurningClass64 = classify::TurningClass<f64>;
pub type Voidness64 = classify::Voidness<f64>;
