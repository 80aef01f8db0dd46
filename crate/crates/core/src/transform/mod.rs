//! Normal translation of curves and reduction of curvature intervals to
//! normal form.

mod reduction;

pub use reduction::{
    apply_recipe, classify_interval, invert_recipe, reduce, transported_bounds, IntervalClass, ReductionRecipe,
};

use crate::curves::{CurvatureInterval, IntrinsicCurve, SampledCurve};
use crate::error::{Error, Result};
use crate::models::{isometry_from_unit_tangent, reorthonormalize, Isometry, Mat3, ModelVector};
use crate::scalar::{c, Real};

/// Smallest admissible distance between `coth rho` and the curvature range.
pub const SINGULAR_GUARD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Circle,
    Horocycle,
    Hypercircle,
}

impl Regime {
    pub fn of<T: Real>(kappa: T) -> Self {
        let a = kappa.abs();
        if a > T::one() {
            Regime::Circle
        } else if a < T::one() {
            Regime::Hypercircle
        } else {
            Regime::Horocycle
        }
    }
}

/// Signed radius: `atanh(1/kappa)` for circles, `atanh(kappa)` for
/// hypercircles, `+-inf` for horocycles.
pub fn radius_of_curvature<T: Real>(kappa: T) -> T {
    match Regime::of(kappa) {
        Regime::Circle => kappa.recip().atanh(),
        Regime::Hypercircle => kappa.atanh(),
        Regime::Horocycle => kappa.signum() * T::infinity(),
    }
}

/// Inverse of [`radius_of_curvature`] within a regime.
pub fn curvature_of_radius<T: Real>(r: T, regime: Regime) -> T {
    match regime {
        Regime::Circle => r.tanh().recip(),
        Regime::Hypercircle => r.tanh(),
        Regime::Horocycle => r.signum(),
    }
}

/// Curvature after normal translation by `rho`:
/// `(kappa cosh rho - sinh rho) / (cosh rho - kappa sinh rho)`.
///
/// Infinite curvature (a point) maps to `-coth rho`.
pub fn translate_curvature<T: Real>(kappa: T, rho: T) -> T {
    if rho == T::zero() {
        return kappa;
    }
    let (s, ch) = (rho.sinh(), rho.cosh());
    if kappa.is_infinite() {
        return -ch / s;
    }
    (kappa * ch - s) / (ch - kappa * s)
}

/// Image of a curvature interval under normal translation by `rho`.
///
/// Only curvatures on the regular side of the pole `coth rho` survive a
/// translation that keeps the direction of travel, so the interval is first
/// cut there; the pole itself goes to the infinity on its side.
pub fn translate_bounds<T: Real>(b: &CurvatureInterval<T>, rho: T) -> Result<CurvatureInterval<T>> {
    if rho == T::zero() {
        return Ok(*b);
    }
    let pole = rho.tanh().recip();
    let near = |k: T| (k - pole).abs() <= crate::models::tol::<T>(1e-12) * (T::one() + pole.abs());
    let singular = if rho > T::zero() { b.lo >= pole || near(b.lo) } else { b.hi <= pole || near(b.hi) };
    if singular {
        return Err(Error::SingularTranslation { rho: rho.as_f64(), t: f64::NAN, kappa: pole.as_f64() });
    }
    if rho > T::zero() {
        let hi = if b.hi >= pole || near(b.hi) { T::infinity() } else { translate_curvature(b.hi, rho) };
        CurvatureInterval::new(translate_curvature(b.lo, rho), hi)
    } else {
        let lo = if b.lo <= pole || near(b.lo) { T::neg_infinity() } else { translate_curvature(b.lo, rho) };
        CurvatureInterval::new(lo, translate_curvature(b.hi, rho))
    }
}

/// Right factor moving a frame a distance `rho` along its normal.
pub fn normal_shift<T: Real>(rho: T) -> Mat3<T> {
    let (s, ch) = (rho.sinh(), rho.cosh());
    let z = T::zero();
    Mat3([[ch, z, s], [z, T::one(), z], [s, z, ch]])
}

/// Parallel transport of `u` a distance `rho` along the geodesic in the
/// direction of its normal.
pub fn translate_unit_tangent<T: Real>(u: &ModelVector<T>, rho: T) -> Result<ModelVector<T>> {
    let m = *isometry_from_unit_tangent(u)?.matrix() * normal_shift(rho);
    Ok(ModelVector::from_hyperboloid(&m.column(0), &m.column(1), u.model()))
}

fn check_regular<T: Real>(kappas: &[T], rho: T) -> Result<()> {
    if rho == T::zero() {
        return Ok(());
    }
    let target = rho.tanh().recip();
    let lo = kappas.iter().copied().fold(T::infinity(), T::min);
    let hi = kappas.iter().copied().fold(T::neg_infinity(), T::max);
    let dist = if target < lo {
        lo - target
    } else if target > hi {
        target - hi
    } else {
        T::zero()
    };
    if dist < c(SINGULAR_GUARD) {
        let i = (0..kappas.len())
            .min_by(|&a, &b| (kappas[a] - target).abs().partial_cmp(&(kappas[b] - target).abs()).expect("finite"))
            .unwrap_or(0);
        return Err(Error::SingularTranslation { rho: rho.as_f64(), t: i as f64, kappa: kappas[i].as_f64() });
    }
    Ok(())
}

/// Pointwise normal translation `cosh(rho) gamma + sinh(rho) nu` of a trace.
///
/// The tangent is kept co-oriented with the original curve, so the speed
/// becomes `sigma (cosh rho - kappa sinh rho)` and may be negative.
pub fn normal_translate<T: Real>(sc: &SampledCurve<T>, rho: T) -> Result<SampledCurve<T>> {
    if let Err(Error::SingularTranslation { rho, kappa, t }) = check_regular(sc.curvatures(), rho) {
        let t = sc.params()[t as usize].as_f64();
        return Err(Error::SingularTranslation { rho, t, kappa });
    }
    let (s, ch) = (rho.sinh(), rho.cosh());
    let shift = normal_shift(rho);
    let mut frames = Vec::with_capacity(sc.len());
    let mut kappa = Vec::with_capacity(sc.len());
    let mut speed = Vec::with_capacity(sc.len());
    for i in 0..sc.len() {
        let k = sc.curvatures()[i];
        frames.push(Isometry::from_matrix_unchecked(reorthonormalize(&(*sc.frames()[i].matrix() * shift))));
        kappa.push(translate_curvature(k, rho));
        speed.push(sc.speeds()[i] * (ch - k * s));
    }
    SampledCurve::new(sc.params().to_vec(), frames, kappa, speed)
}

/// Normal translation of curvature data, exact at the grid nodes.
///
/// Requires the direction of travel to be preserved, i.e.
/// `cosh rho - kappa sinh rho > 0` at every node.
pub fn normal_translate_intrinsic<T: Real>(curve: &IntrinsicCurve<T>, rho: T) -> Result<IntrinsicCurve<T>> {
    let kappa = curve.kappa();
    let grid = curve.grid();
    check_regular(&kappa, rho).map_err(|e| match e {
        Error::SingularTranslation { rho, kappa, t } => {
            Error::SingularTranslation { rho, t: grid[t as usize].as_f64(), kappa }
        }
        e => e,
    })?;
    let (s, ch) = (rho.sinh(), rho.cosh());
    let mut sigma = curve.sigma();
    for (i, (sg, &k)) in sigma.iter_mut().zip(&kappa).enumerate() {
        let factor = ch - k * s;
        if !(factor > T::zero()) {
            return Err(Error::SingularTranslation { rho: rho.as_f64(), t: grid[i].as_f64(), kappa: k.as_f64() });
        }
        *sg = *sg * factor;
    }
    let new_kappa: Vec<T> = kappa.iter().map(|&k| translate_curvature(k, rho)).collect();
    let frame0 = Isometry::from_matrix_unchecked(reorthonormalize(&(*curve.frame0().matrix() * normal_shift(rho))));
    let bounds = translate_bounds(curve.bounds(), rho)?;
    IntrinsicCurve::from_decoded(frame0, grid.to_vec(), &sigma, &new_kappa, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radius_examples() {
        assert!((radius_of_curvature(2f64.tanh().recip()) - 2.0).abs() < 1e-14);
        assert!((radius_of_curvature((-0.5f64).tanh()) + 0.5).abs() < 1e-15);
        assert_eq!(radius_of_curvature(1.0f64), f64::INFINITY);
        assert_eq!(radius_of_curvature(-1.0f64), f64::NEG_INFINITY);
    }

    #[test]
    fn geodesic_becomes_hypercircle() {
        assert!((translate_curvature(0.0, 1.0) + 1f64.tanh()).abs() < 1e-15);
        assert_eq!(translate_curvature(1.0, 0.7), 1.0);
        assert_eq!(translate_curvature(-1.0, 0.7), -1.0);
    }

    #[test]
    fn translation_shifts_radius() {
        for &(k, rho) in &[(3.0f64, 0.2f64), (0.4, -0.9), (-0.2, 0.3), (-5.0, 0.1)] {
            let r = radius_of_curvature(k);
            let r2 = radius_of_curvature(translate_curvature(k, rho));
            assert!((r2 - (r - rho)).abs() < 1e-12, "{k} {rho}");
        }
    }
}
