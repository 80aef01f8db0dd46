//! Graphs `y = y(x)` in the Mercator strip.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::models::{isometry_from_unit_tangent, ModelPoint, ModelVector};
use crate::scalar::{c, Real};

use super::sampled::SampledCurve;

/// Curvature of the graph of `y` at `x`, given `y'` and `y''`, measured with
/// the orientation of the `(x, y)` strip.
///
/// The map `(x, y) -> e^{y + ix}` reverses orientation, so this is minus the
/// curvature of the same curve with the orientation of the hyperbolic plane.
pub fn mercator_curvature<T: Real>(x: T, dy: T, ddy: T) -> T {
    let w = T::one() + dy * dy;
    let (s, co) = x.sin_cos();
    (ddy * s / w - dy * co) / w.sqrt()
}

/// Second-order derivative estimates of sampled data on a nonuniform grid.
pub fn derivative<T: Real>(xs: &[T], ys: &[T]) -> Vec<T> {
    let n = xs.len();
    if n < 2 {
        return vec![T::zero(); n];
    }
    if n == 2 {
        let d = (ys[1] - ys[0]) / (xs[1] - xs[0]);
        return vec![d; 2];
    }
    let three_point = |x0: T, x1: T, x2: T, y0: T, y1: T, y2: T, at: T| {
        // Derivative of the quadratic through three points, evaluated at `at`.
        let l0 = (T::one() + T::one()) * at - x1 - x2;
        let l1 = (T::one() + T::one()) * at - x0 - x2;
        let l2 = (T::one() + T::one()) * at - x0 - x1;
        y0 * l0 / ((x0 - x1) * (x0 - x2)) + y1 * l1 / ((x1 - x0) * (x1 - x2)) + y2 * l2 / ((x2 - x0) * (x2 - x1))
    };
    let mut d = vec![T::zero(); n];
    d[0] = three_point(xs[0], xs[1], xs[2], ys[0], ys[1], ys[2], xs[0]);
    for i in 1..n - 1 {
        d[i] = three_point(xs[i - 1], xs[i], xs[i + 1], ys[i - 1], ys[i], ys[i + 1], xs[i]);
    }
    d[n - 1] = three_point(xs[n - 3], xs[n - 2], xs[n - 1], ys[n - 3], ys[n - 2], ys[n - 1], xs[n - 1]);
    d
}

/// Integrates `y' = f` with the endpoint-corrected trapezoid rule.
pub fn cumulative_integral<T: Real>(xs: &[T], f: &[T], df: &[T], y0: T) -> Vec<T> {
    let half = c::<T>(0.5);
    let twelfth = c::<T>(1.0 / 12.0);
    let mut y = Vec::with_capacity(xs.len());
    y.push(y0);
    for i in 1..xs.len() {
        let h = xs[i] - xs[i - 1];
        let step = h * (f[i - 1] + f[i]) * half - h * h * (df[i] - df[i - 1]) * twelfth;
        y.push(y[i - 1] + step);
    }
    y
}

/// The curve `x -> (x, y(x))` with `y(x) = y0 + int_a^x f`, sampled at `xs`.
///
/// Curvatures are reported with the orientation of the hyperbolic plane.
pub fn mercator_graph<T: Real>(xs: &[T], f: &[T], y0: T) -> Result<SampledCurve<T>> {
    let n = xs.len();
    if n < 3 || f.len() != n {
        return Err(Error::InvalidGrid("graph needs at least three samples"));
    }
    if !(xs[0] > T::zero()) || !(xs[n - 1] < T::PI()) || xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid("graph abscissae must increase inside (0, pi)"));
    }
    if let Some(i) = f.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let df = derivative(xs, f);
    let ys = cumulative_integral(xs, f, &df, y0);
    let mut frames = Vec::with_capacity(n);
    let mut kappa = Vec::with_capacity(n);
    let mut speed = Vec::with_capacity(n);
    for i in 0..n {
        let base = ModelPoint::mercator(xs[i], ys[i])?;
        let v = ModelVector::planar(base, Complex::new(T::one(), f[i]))?.normalized()?;
        frames.push(isometry_from_unit_tangent(&v)?);
        kappa.push(-mercator_curvature(xs[i], f[i], df[i]));
        speed.push((T::one() + f[i] * f[i]).sqrt() / xs[i].sin());
    }
    SampledCurve::new(xs.to_vec(), frames, kappa, speed)
}
