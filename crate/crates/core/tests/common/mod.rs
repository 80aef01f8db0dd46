#![allow(dead_code)]

pub mod homotopy;

use hypcurve_core::curves::{CurvatureInterval, IntrinsicCurve};
use hypcurve_core::models::{
    convert_vector, isometry_from_unit_tangent, lorentz_product, ModelId, ModelPoint, ModelVector, Vec3,
};
use num_complex::Complex;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unit tangent at a random point of a bounded patch of the half-plane.
pub fn random_tangent(rng: &mut ChaCha8Rng, model: ModelId) -> ModelVector<f64> {
    let z = Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.5..2.0));
    let phi: f64 = rng.gen_range(-3.1..3.1);
    let v = ModelVector::planar(ModelPoint::half_plane(z).unwrap(), Complex::from_polar(z.im, phi)).unwrap();
    convert_vector(&v, model).unwrap()
}

/// Random value strictly inside the bounds, at most 3 away from a finite end.
pub fn inside(rng: &mut ChaCha8Rng, b: &CurvatureInterval<f64>) -> f64 {
    let (lo, hi) = (b.lo, b.hi);
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => lo + (hi - lo) * rng.gen_range(0.05..0.95),
        (true, false) => lo + rng.gen_range(0.05..3.0),
        (false, true) => hi - rng.gen_range(0.05..3.0),
        (false, false) => rng.gen_range(-3.0..3.0),
    }
}

/// Curve with piecewise-linear speed and curvature on a random grid.
pub fn random_curve(rng: &mut ChaCha8Rng, b: &CurvatureInterval<f64>, cells: usize) -> IntrinsicCurve<f64> {
    let u = random_tangent(rng, ModelId::Hyperboloid);
    random_curve_from(rng, &u, b, cells, 0.3..1.5)
}

pub fn random_curve_from(
    rng: &mut ChaCha8Rng,
    u: &ModelVector<f64>,
    b: &CurvatureInterval<f64>,
    cells: usize,
    speed: std::ops::Range<f64>,
) -> IntrinsicCurve<f64> {
    let mut grid: Vec<f64> = (0..cells - 1).map(|_| rng.gen_range(0.02..0.98)).collect();
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.insert(0, 0.0);
    grid.push(1.0);
    let sigma: Vec<f64> = grid.iter().map(|_| rng.gen_range(speed.clone())).collect();
    let kappa: Vec<f64> = grid.iter().map(|_| inside(rng, b)).collect();
    IntrinsicCurve::from_decoded(isometry_from_unit_tangent(u).unwrap(), grid, &sigma, &kappa, *b).unwrap()
}

/// Curvature `det(g, g', g'') / |g'|^3` of points sampled at spacing `h`,
/// from five-point central differences at the middle sample.
pub fn fd_curvature(p: &[Vec3<f64>; 5], h: f64) -> f64 {
    let d1 = (p[0] * (1.0 / 12.0) - p[1] * (2.0 / 3.0) + p[3] * (2.0 / 3.0) - p[4] * (1.0 / 12.0)) * (1.0 / h);
    let d2 = (p[0] * (-1.0 / 12.0) + p[1] * (4.0 / 3.0) - p[2] * 2.5 + p[3] * (4.0 / 3.0) - p[4] * (1.0 / 12.0))
        * (1.0 / (h * h));
    let g = p[2];
    let det = g[0] * (d1[1] * d2[2] - d1[2] * d2[1]) - g[1] * (d1[0] * d2[2] - d1[2] * d2[0])
        + g[2] * (d1[0] * d2[1] - d1[1] * d2[0]);
    let speed = lorentz_product(&d1, &d1).sqrt();
    det / speed.powi(3)
}

/// Speed `|g'|` at the middle of five samples at spacing `h`.
pub fn fd_speed(p: &[Vec3<f64>; 5], h: f64) -> f64 {
    let d1 = (p[0] * (1.0 / 12.0) - p[1] * (2.0 / 3.0) + p[3] * (2.0 / 3.0) - p[4] * (1.0 / 12.0)) * (1.0 / h);
    lorentz_product(&d1, &d1).sqrt()
}

/// Five parameters centred at `t` with spacing `h`.
pub fn stencil(t: f64, h: f64) -> Vec<f64> {
    (0..5).map(|k| t + (k as f64 - 2.0) * h).collect()
}

pub fn points_of(frames: &[hypcurve_core::models::Mat3<f64>]) -> [Vec3<f64>; 5] {
    [frames[0].column(0), frames[1].column(0), frames[2].column(0), frames[3].column(0), frames[4].column(0)]
}

/// Curve with curvature constant on each of `cells` pieces, jumps encoded by
/// repeated grid nodes.
pub fn random_chain_from(
    rng: &mut ChaCha8Rng,
    u: &ModelVector<f64>,
    b: &CurvatureInterval<f64>,
    cells: usize,
    length: std::ops::Range<f64>,
) -> IntrinsicCurve<f64> {
    let mut cuts: Vec<f64> = (0..cells - 1).map(|_| rng.gen_range(0.05..0.95)).collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let total = rng.gen_range(length);
    let ks: Vec<f64> = (0..cells).map(|_| inside(rng, b)).collect();
    let mut grid = vec![0.0];
    let mut kappa = vec![ks[0]];
    for (i, &t) in cuts.iter().enumerate() {
        grid.extend([t, t]);
        kappa.extend([ks[i], ks[i + 1]]);
    }
    grid.push(1.0);
    kappa.push(ks[cells - 1]);
    let sigma = vec![total; grid.len()];
    IntrinsicCurve::from_decoded(isometry_from_unit_tangent(u).unwrap(), grid, &sigma, &kappa, *b).unwrap()
}
