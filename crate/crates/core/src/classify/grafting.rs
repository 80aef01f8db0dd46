use crate::curves::{mat2_mul, Mat2};
use crate::scalar::Real;

/// `[[r (cos t - sin t), -r (cos t + sin t)], [cos t + sin t, sin t - cos t]]`.
pub fn grafting_form<T: Real>(r: T, theta: T) -> Mat2<T> {
    let (s, co) = theta.sin_cos();
    [[r * (co - s), -r * (co + s)], [co + s, s - co]]
}

fn normalize<T: Real>(m: &Mat2<T>) -> Option<Mat2<T>> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if !(det > T::zero()) || !det.is_finite() {
        return None;
    }
    let k = det.sqrt().recip();
    Some([[m[0][0] * k, m[0][1] * k], [m[1][0] * k, m[1][1] * k]])
}

/// Recovers `(r, theta)` with `phi1 phi0^-1` projectively equal to
/// [`grafting_form`]`(r, theta)`, `r > 0` and `0 < theta < pi/2`.
pub fn grafting_check<T: Real>(phi0: &Mat2<T>, phi1: &Mat2<T>) -> Option<(T, T)> {
    let inv0 = [[phi0[1][1], -phi0[0][1]], [-phi0[1][0], phi0[0][0]]];
    let mut m = normalize(&mat2_mul(phi1, &inv0))?;
    if m[1][0] < T::zero() {
        m = [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]];
    }
    let tol = crate::models::tol::<T>(1e-8);
    if !(m[1][0] > tol) {
        return None;
    }
    let theta = T::FRAC_PI_4() + (m[1][1] / m[1][0]).atan();
    let r = -m[0][1] / m[1][0];
    if !(r > T::zero()) || !(theta > T::zero() && theta < T::FRAC_PI_2()) {
        return None;
    }
    let k = normalize(&grafting_form(r, theta))?;
    let scale = T::one().max(m.iter().flatten().fold(T::zero(), |a, x| a.max(x.abs())));
    let gap = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).fold(T::zero(), |a, (i, j)| a.max((k[i][j] - m[i][j]).abs()));
    (gap <= tol * scale).then_some((r, theta))
}
