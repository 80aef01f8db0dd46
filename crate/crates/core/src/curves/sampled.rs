use crate::error::{Error, Result};
use crate::models::{spacelike_norm, Isometry, Mat3, ModelId, ModelPoint, ModelVector, Vec3};
use crate::scalar::{c, Real};

/// An evaluated trace. Column 0 of each frame is the point, column 1 the
/// unit tangent `tau` and column 2 the normal `nu = gamma x tau`.
///
/// `speeds` is signed: the velocity is `speed * tau`. It is negative where
/// a normal translation reversed the direction of travel while keeping the
/// tangent co-oriented with the original curve.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledCurve<T> {
    params: Vec<T>,
    frames: Vec<Isometry<T>>,
    curvatures: Vec<T>,
    speeds: Vec<T>,
}

impl<T: Real> SampledCurve<T> {
    pub fn new(params: Vec<T>, frames: Vec<Isometry<T>>, curvatures: Vec<T>, speeds: Vec<T>) -> Result<Self> {
        let n = params.len();
        if n == 0 || frames.len() != n || curvatures.len() != n || speeds.len() != n {
            return Err(Error::InvalidGrid("sampled curve arrays must have equal nonzero length"));
        }
        if params.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidGrid("parameters must be nondecreasing"));
        }
        if let Some(i) = (0..n).find(|&i| !frames[i].matrix().is_finite() || curvatures[i].is_nan() || !speeds[i].is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { params, frames, curvatures, speeds })
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    pub fn frames(&self) -> &[Isometry<T>] {
        &self.frames
    }

    pub fn curvatures(&self) -> &[T] {
        &self.curvatures
    }

    pub fn speeds(&self) -> &[T] {
        &self.speeds
    }

    pub fn point(&self, i: usize) -> Vec3<T> {
        self.frames[i].matrix().column(0)
    }

    pub fn tangent(&self, i: usize) -> Vec3<T> {
        self.frames[i].matrix().column(1)
    }

    pub fn normal(&self, i: usize) -> Vec3<T> {
        self.frames[i].matrix().column(2)
    }

    pub fn points(&self) -> Vec<Vec3<T>> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    pub fn model_point(&self, i: usize, model: ModelId) -> ModelPoint<T> {
        ModelPoint::from_hyperboloid(&self.point(i), model)
    }

    /// Unit tangent at node `i`, expressed in `model`.
    pub fn unit_tangent(&self, i: usize, model: ModelId) -> ModelVector<T> {
        ModelVector::from_hyperboloid(&self.point(i), &self.tangent(i), model)
    }

    /// Chart coordinates of the trace in a planar model.
    pub fn chart_points(&self, model: ModelId) -> Vec<num_complex::Complex<T>> {
        (0..self.len()).filter_map(|i| self.model_point(i, model).chart()).collect()
    }

    pub fn first_frame(&self) -> &Mat3<T> {
        self.frames[0].matrix()
    }

    pub fn last_frame(&self) -> &Mat3<T> {
        self.frames[self.len() - 1].matrix()
    }

    /// Image under an isometry; curvatures and speeds are unchanged.
    pub fn transformed(&self, g: &Isometry<T>) -> Self {
        Self { frames: self.frames.iter().map(|f| g.compose(f)).collect(), ..self.clone() }
    }
}

/// A point of the circle at infinity, by its angle in the disk chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint<T> {
    pub angle: T,
}

impl<T: Real> BoundaryPoint<T> {
    /// Boundary point represented by a future-pointing lightlike vector.
    pub fn from_lightlike(x: &Vec3<T>) -> Self {
        let two_pi = T::PI() * c(2.0);
        let mut a = x[2].atan2(x[1]);
        if a < T::zero() {
            a = a + two_pi;
        }
        if a >= two_pi {
            a = T::zero();
        }
        Self { angle: a }
    }

    /// Signed angular difference `other - self`, reduced to `(-pi, pi]`.
    pub fn delta(&self, other: &Self) -> T {
        wrap_pi(other.angle - self.angle)
    }
}

pub(crate) fn wrap_pi<T: Real>(a: T) -> T {
    let two_pi = T::PI() * c(2.0);
    let mut d = a % two_pi;
    if d > T::PI() {
        d = d - two_pi;
    } else if d <= -T::PI() {
        d = d + two_pi;
    }
    d
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Endpoint of the geodesic ray leaving `gamma` in direction `+nu` or `-nu`.
pub fn alpha_pm_frame<T: Real>(frame: &Mat3<T>, side: Side) -> BoundaryPoint<T> {
    let (g, n) = (frame.column(0), frame.column(2));
    let v = match side {
        Side::Plus => g + n,
        Side::Minus => g - n,
    };
    BoundaryPoint::from_lightlike(&v)
}

/// [`alpha_pm_frame`] at node `i` of a sampled curve.
pub fn alpha_pm<T: Real>(sc: &SampledCurve<T>, i: usize, side: Side) -> BoundaryPoint<T> {
    alpha_pm_frame(sc.frames[i].matrix(), side)
}

/// Disk-chart angle of `alpha_pm` at every node, lifted continuously.
pub fn alpha_pm_lifted<T: Real>(sc: &SampledCurve<T>, side: Side) -> Result<Vec<T>> {
    let mut out: Vec<T> = Vec::with_capacity(sc.len());
    for i in 0..sc.len() {
        let a = alpha_pm(sc, i, side).angle;
        match out.last() {
            None => out.push(a),
            Some(&prev) => {
                let step = wrap_pi(a - prev);
                if step.abs() > T::FRAC_PI_2() {
                    return Err(Error::Undersampled(step.as_f64()));
                }
                out.push(prev + step);
            }
        }
    }
    Ok(out)
}

/// `det(gamma, gamma', gamma'') / |gamma'|^3`.
pub fn curvature_det<T: Real>(g: &Vec3<T>, dg: &Vec3<T>, ddg: &Vec3<T>) -> Result<T> {
    let speed = spacelike_norm(dg);
    if !(speed > T::zero()) {
        return Err(Error::Degenerate(0));
    }
    let det = Mat3::from_columns(g, dg, ddg).det();
    Ok(det / (speed * speed * speed))
}

/// Half-plane chart argument of the unit tangent at every node, lifted
/// continuously.
pub fn chart_arguments<T: Real>(sc: &SampledCurve<T>) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(sc.len());
    let limit = T::FRAC_PI_2();
    for i in 0..sc.len() {
        let d = sc.unit_tangent(i, ModelId::HalfPlane).chart_dir().unwrap_or_default();
        if !(d.norm() > T::zero()) {
            return Err(Error::Degenerate(i));
        }
        let a = d.arg();
        match out.last() {
            None => out.push(a),
            Some(&prev) => {
                let step = wrap_pi(a - prev);
                if step.abs() > limit {
                    return Err(Error::Undersampled(step.as_f64()));
                }
                out.push(prev + step);
            }
        }
    }
    Ok(out)
}

/// Total turning in the half-plane chart.
pub fn total_turning<T: Real>(sc: &SampledCurve<T>) -> Result<T> {
    let args = chart_arguments(sc)?;
    Ok(args[args.len() - 1] - args[0])
}
