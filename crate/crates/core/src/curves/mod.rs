//! Curves reconstructed from speed and curvature, their traces, turning and
//! ideal-boundary maps.

mod backends;
mod encoding;
mod intrinsic;
mod mercator;
mod sampled;

pub use backends::{
    disk_frame, disk_frames_at, disk_vector, halfplane_frame, halfplane_frames_at, halfplane_vector, lambda_disk,
    lambda_halfplane, mat2_inv, mat2_mul, CMat2, Mat2,
};
pub use encoding::{h_decode, h_encode, hk_decode, hk_encode, CurvatureInterval};
pub use intrinsic::{concat, constant_curve, IntrinsicCurve};
#[allow(unused_imports)]
pub(crate) use intrinsic::{constant_from_frame, frame_rhs, project_frame};
pub use mercator::{cumulative_integral, derivative, mercator_curvature, mercator_graph};
pub use sampled::{
    alpha_pm, alpha_pm_frame, alpha_pm_lifted, chart_arguments, curvature_det, total_turning, BoundaryPoint, SampledCurve, Side,
};
#[allow(unused_imports)]
pub(crate) use sampled::wrap_pi;

use crate::models::{Mat3, ModelVector};
use crate::scalar::Real;

/// Unit tangent `(column 0, column 1)` of a frame, on the hyperboloid.
pub fn frame_vector<T: Real>(m: &Mat3<T>) -> ModelVector<T> {
    ModelVector::from_hyperboloid(&m.column(0), &m.column(1), crate::models::ModelId::Hyperboloid)
}
