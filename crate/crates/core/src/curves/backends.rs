//! Frame equation in the half-plane and disk, with frames presented as
//! Möbius transformations. In `H` the reference unit tangent is `1` at `i`;
//! in `D` it is `1/2` at `0`.

use num_complex::Complex;

use crate::error::Result;
use crate::models::{convert_vector, ModelId, ModelPoint, ModelVector};
use crate::scalar::{c, Real};

use super::intrinsic::IntrinsicCurve;

pub type Mat2<T> = [[T; 2]; 2];
pub type CMat2<T> = [[Complex<T>; 2]; 2];

/// `1/2 sigma [[0, 1 + kappa], [1 - kappa, 0]]`.
pub fn lambda_halfplane<T: Real>(sigma: T, kappa: T) -> Mat2<T> {
    let h = sigma * c(0.5);
    [[T::zero(), h * (T::one() + kappa)], [h * (T::one() - kappa), T::zero()]]
}

/// `1/2 sigma [[i kappa, 1], [1, -i kappa]]`.
pub fn lambda_disk<T: Real>(sigma: T, kappa: T) -> CMat2<T> {
    let h = sigma * c(0.5);
    let z = T::zero();
    [[Complex::new(z, h * kappa), Complex::new(h, z)], [Complex::new(h, z), Complex::new(z, -h * kappa)]]
}

pub fn mat2_mul<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

/// Inverse of a unimodular matrix.
pub fn mat2_inv<T: Real>(a: &Mat2<T>) -> Mat2<T> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]
}

/// The Möbius frame sending the reference tangent to `v`.
pub fn halfplane_frame<T: Real>(v: &ModelVector<T>) -> Result<Mat2<T>> {
    let w = convert_vector(&v.normalized()?, ModelId::HalfPlane)?;
    let g = w.base.chart().unwrap_or_default();
    let dir = w.chart_dir().unwrap_or_default();
    let z = (dir / dir.norm()).sqrt().conj();
    let gz = g * z;
    let s = g.im.sqrt();
    Ok([[gz.im / s, gz.re / s], [z.im / s, z.re / s]])
}

/// Unit tangent (in `H`) that a Möbius frame assigns to the curve.
pub fn halfplane_vector<T: Real>(m: &Mat2<T>) -> Result<ModelVector<T>> {
    let i = Complex::i();
    let num = i * m[0][0] + m[0][1];
    let den = i * m[1][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    ModelVector::planar(ModelPoint::half_plane(num / den)?, Complex::new(det, T::zero()) / (den * den))?.normalized()
}

pub fn disk_frame<T: Real>(v: &ModelVector<T>) -> Result<CMat2<T>> {
    let w = convert_vector(&v.normalized()?, ModelId::Disk)?;
    let g = w.base.chart().unwrap_or_default();
    let dir = w.chart_dir().unwrap_or_default();
    let z = (dir / dir.norm()).sqrt();
    let r = (T::one() - g.norm_sqr()).sqrt().recip();
    Ok([[z * r, g * z.conj() * r], [g.conj() * z * r, z.conj() * r]])
}

pub fn disk_vector<T: Real>(m: &CMat2<T>) -> Result<ModelVector<T>> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let d = m[1][1];
    ModelVector::planar(ModelPoint::disk(m[0][1] / d)?, det / (d * d * c::<T>(2.0)))?.normalized()
}

fn rhs_halfplane<T: Real>(y: &[T; 4], sigma: T, kappa: T) -> [T; 4] {
    let l = lambda_halfplane(sigma, kappa);
    let p = mat2_mul(&[[y[0], y[1]], [y[2], y[3]]], &l);
    [p[0][0], p[0][1], p[1][0], p[1][1]]
}

fn project_halfplane<T: Real>(y: &mut [T; 4]) {
    let det = y[0] * y[3] - y[1] * y[2];
    let s = det.abs().sqrt().recip();
    y.iter_mut().for_each(|v| *v = *v * s);
}

fn rhs_disk<T: Real>(y: &[T; 8], sigma: T, kappa: T) -> [T; 8] {
    let l = lambda_disk(sigma, kappa);
    let m = unpack_disk(y);
    let mut out = [T::zero(); 8];
    for r in 0..2 {
        for col in 0..2 {
            let v = m[r][0] * l[0][col] + m[r][1] * l[1][col];
            out[4 * r + 2 * col] = v.re;
            out[4 * r + 2 * col + 1] = v.im;
        }
    }
    out
}

fn unpack_disk<T: Real>(y: &[T; 8]) -> CMat2<T> {
    [
        [Complex::new(y[0], y[1]), Complex::new(y[2], y[3])],
        [Complex::new(y[4], y[5]), Complex::new(y[6], y[7])],
    ]
}

fn pack_disk<T: Real>(m: &CMat2<T>) -> [T; 8] {
    [m[0][0].re, m[0][0].im, m[0][1].re, m[0][1].im, m[1][0].re, m[1][0].im, m[1][1].re, m[1][1].im]
}

fn project_disk<T: Real>(y: &mut [T; 8]) {
    let m = unpack_disk(y);
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let s = det.sqrt().inv();
    let scaled = [[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]];
    *y = pack_disk(&scaled);
}

/// Half-plane Möbius frames of `curve` at the parameters `ts`.
pub fn halfplane_frames_at<T: Real>(curve: &IntrinsicCurve<T>, ts: &[T]) -> Result<Vec<Mat2<T>>> {
    let start = crate::curves::frame_vector(curve.frame0().matrix());
    let m0 = halfplane_frame(&start)?;
    let y0 = [m0[0][0], m0[0][1], m0[1][0], m0[1][1]];
    let states = curve.solve_cells(ts, y0, rhs_halfplane, project_halfplane)?;
    Ok(states.iter().map(|y| [[y[0], y[1]], [y[2], y[3]]]).collect())
}

pub fn disk_frames_at<T: Real>(curve: &IntrinsicCurve<T>, ts: &[T]) -> Result<Vec<CMat2<T>>> {
    let start = crate::curves::frame_vector(curve.frame0().matrix());
    let y0 = pack_disk(&disk_frame(&start)?);
    let states = curve.solve_cells(ts, y0, rhs_disk, project_disk)?;
    Ok(states.iter().map(unpack_disk).collect())
}
