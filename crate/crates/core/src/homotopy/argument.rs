//! Convex curves parametrized by the half-plane chart argument of their
//! tangent, and the straight-line deformation between two of them.

use num_complex::Complex;

use crate::curves::{chart_arguments, total_turning, CurvatureInterval, SampledCurve};
use crate::error::{Error, Result};
use crate::interp::linspace;
use crate::models::{isometry_from_unit_tangent, ModelId, ModelPoint, ModelVector};
use crate::scalar::{c, Real};

/// A curve `z(theta)` in the half-plane chart whose tangent at `theta` is
/// parallel to `e^{i theta}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArgumentCurve<T> {
    /// Uniform grid from the initial to the final tangent argument.
    pub theta: Vec<T>,
    pub z: Vec<Complex<T>>,
    /// Euclidean radius of curvature, `|dz/dtheta|`.
    pub radius: Vec<T>,
}

impl<T: Real> ArgumentCurve<T> {
    pub fn turning(&self) -> T {
        self.theta[self.theta.len() - 1] - self.theta[0]
    }

    /// Hyperbolic curvature `y / R + cos(theta)` at node `i`.
    pub fn curvature(&self, i: usize) -> T {
        self.z[i].im / self.radius[i] + self.theta[i].cos()
    }

    pub fn to_sampled(&self) -> Result<SampledCurve<T>> {
        let n = self.theta.len();
        let mut frames = Vec::with_capacity(n);
        let mut kappa = Vec::with_capacity(n);
        let mut speed = Vec::with_capacity(n);
        for i in 0..n {
            let base = ModelPoint::half_plane(self.z[i])?;
            let dir = Complex::from_polar(T::one(), self.theta[i]);
            let v = ModelVector::planar(base, dir)?.normalized()?;
            frames.push(isometry_from_unit_tangent(&v)?);
            kappa.push(self.curvature(i));
            speed.push(self.radius[i] / self.z[i].im);
        }
        SampledCurve::new(self.theta.clone(), frames, kappa, speed)
    }
}

/// Euclidean center and radius of the osculating circle of a curve through
/// `z` with chart direction `dir` and hyperbolic curvature `kappa > 1`.
pub fn osculating_circle_h<T: Real>(z: Complex<T>, dir: Complex<T>, kappa: T) -> Result<(Complex<T>, T)> {
    if !(kappa > T::one()) || !kappa.is_finite() {
        return Err(Error::BandViolation { kappa: kappa.as_f64(), lo: 1.0, hi: f64::INFINITY });
    }
    let e = dir / dir.norm();
    let r = z.im / (kappa - e.re);
    Ok((z + Complex::<T>::i() * e * r, r))
}

/// Resamples a curve of curvature above 1 on `n` equally spaced values of
/// its tangent argument.
pub fn reparam_by_argument<T: Real>(sc: &SampledCurve<T>, n: usize) -> Result<ArgumentCurve<T>> {
    if n < 2 || sc.len() < 2 {
        return Err(Error::InvalidGrid("argument resampling needs at least two nodes"));
    }
    let th = chart_arguments(sc)?;
    let zs = sc.chart_points(ModelId::HalfPlane);
    let kap = sc.curvatures();
    let slack = crate::models::tol::<T>(1e-12);
    for i in 0..sc.len() {
        if !(kap[i] > T::one()) {
            return Err(Error::BandViolation { kappa: kap[i].as_f64(), lo: 1.0, hi: f64::INFINITY });
        }
        if i > 0 && th[i] < th[i - 1] - slack {
            return Err(Error::NotConvex(i));
        }
    }
    let radius: Vec<T> = (0..sc.len()).map(|i| zs[i].im / (kap[i] - th[i].cos())).collect();
    let last = sc.len() - 1;
    let grid = linspace(th[0], th[last], n);
    let (two, three) = (c::<T>(2.0), c::<T>(3.0));
    let mut z = Vec::with_capacity(n);
    let mut rad = Vec::with_capacity(n);
    for (j, &t) in grid.iter().enumerate() {
        if j == 0 || j == n - 1 {
            let i = if j == 0 { 0 } else { last };
            z.push(zs[i]);
            rad.push(radius[i]);
            continue;
        }
        let mut i = th.partition_point(|&v| v <= t).saturating_sub(1).min(last - 1);
        while i > 0 && th[i + 1] <= th[i] {
            i -= 1;
        }
        let h = th[i + 1] - th[i];
        if !(h > T::zero()) {
            return Err(Error::NotConvex(i + 1));
        }
        let s = (t - th[i]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let d0 = Complex::from_polar(radius[i], th[i]) * h;
        let d1 = Complex::from_polar(radius[i + 1], th[i + 1]) * h;
        let zi = zs[i] * (two * s3 - three * s2 + T::one())
            + d0 * (s3 - two * s2 + s)
            + zs[i + 1] * (three * s2 - two * s3)
            + d1 * (s3 - s2);
        let k = kap[i] + (kap[i + 1] - kap[i]) * s;
        z.push(zi);
        rad.push(zi.im / (k - t.cos()));
    }
    Ok(ArgumentCurve { theta: grid, z, radius: rad })
}

/// A one-parameter family of curves `s -> gamma_s`.
#[derive(Clone, Debug)]
pub struct HomotopyFamily<T> {
    pub s: Vec<T>,
    pub curves: Vec<SampledCurve<T>>,
    pub bounds: CurvatureInterval<T>,
    pub turning: T,
    /// Median parameters per `s`, for families built from graph profiles.
    pub lambda_mu: Vec<(T, T)>,
}

/// Worst-case deviations of a family from its constraints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyReport<T> {
    pub min_kappa: T,
    pub max_kappa: T,
    pub max_turning_drift: T,
    pub max_endpoint_drift: T,
    pub inside_bounds: bool,
}

impl<T: Real> HomotopyFamily<T> {
    pub fn report(&self) -> Result<FamilyReport<T>> {
        let mut min_k = T::infinity();
        let mut max_k = T::neg_infinity();
        let mut drift = T::zero();
        let mut ends = T::zero();
        let first = &self.curves[0];
        let (p0, p1) = (first.point(0), first.point(first.len() - 1));
        for sc in &self.curves {
            for &k in sc.curvatures() {
                min_k = min_k.min(k);
                max_k = max_k.max(k);
            }
            drift = drift.max((total_turning(sc)? - self.turning).abs());
            ends = ends.max(sc.point(0).max_abs_diff(&p0)).max(sc.point(sc.len() - 1).max_abs_diff(&p1));
        }
        let inside = self.curves.iter().all(|sc| sc.curvatures().iter().all(|&k| self.bounds.contains(k)));
        Ok(FamilyReport {
            min_kappa: min_k,
            max_kappa: max_k,
            max_turning_drift: drift,
            max_endpoint_drift: ends,
            inside_bounds: inside,
        })
    }
}

/// Straight-line deformation between two curves with curvature above 1,
/// the same endpoints and the same turning, in argument parametrization.
/// Curvature at each argument stays between the two input curvatures.
pub fn contract_disjoint<T: Real>(
    a0: &ArgumentCurve<T>,
    a1: &ArgumentCurve<T>,
    bounds: &CurvatureInterval<T>,
    s_grid: &[T],
) -> Result<HomotopyFamily<T>> {
    let nodes = a0.theta.len();
    if a1.theta.len() != nodes {
        return Err(Error::Mismatch("argument grids differ in size".into()));
    }
    let tol6 = crate::models::tol::<T>(1e-6);
    let (t0, t1) = (a0.turning(), a1.turning());
    if (t0 - t1).abs() > tol6 {
        return Err(Error::Mismatch(format!("turnings differ: {} vs {}", t0.as_f64(), t1.as_f64())));
    }
    if (a0.theta[0] - a1.theta[0]).abs() > tol6 {
        return Err(Error::Mismatch("initial tangents differ".into()));
    }
    let last = nodes - 1;
    for &i in &[0, last] {
        let gap = (a0.z[i] - a1.z[i]).norm();
        if gap > tol6 * T::one().max(a0.z[i].norm()) {
            return Err(Error::Mismatch(format!("endpoints differ by {}", gap.as_f64())));
        }
    }
    let mut curves = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        if !(s >= T::zero() && s <= T::one()) {
            return Err(Error::OutsideInterval { value: s.as_f64(), lo: 0.0, hi: 1.0 });
        }
        let r = T::one() - s;
        let arg = ArgumentCurve {
            theta: a0.theta.clone(),
            z: a0.z.iter().zip(&a1.z).map(|(&p, &q)| p * r + q * s).collect(),
            radius: a0.radius.iter().zip(&a1.radius).map(|(&p, &q)| p * r + q * s).collect(),
        };
        for i in 0..nodes {
            let k = arg.curvature(i);
            if !bounds.contains(k) {
                return Err(Error::BandViolation { kappa: k.as_f64(), lo: bounds.lo.as_f64(), hi: bounds.hi.as_f64() });
            }
        }
        curves.push(arg.to_sampled()?);
    }
    Ok(HomotopyFamily { s: s_grid.to_vec(), curves, bounds: *bounds, turning: t0, lambda_mu: Vec::new() })
}
