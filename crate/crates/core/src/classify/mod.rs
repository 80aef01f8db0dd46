//! Turning classes, confinement regions and voidness decisions for spaces
//! of curves with curvature in an open interval.

mod grafting;

use std::fmt;

use num_complex::Complex;

pub use grafting::{grafting_check, grafting_form};

use crate::curves::{
    alpha_pm_lifted, mercator_graph, total_turning, CurvatureInterval, IntrinsicCurve, SampledCurve, Side,
};
use crate::error::{Error, Result};
use crate::homotopy::{arc_curvatures, canonical_profile, envelopes, loop_concat, steer, steer_candidates, SteerOptions};
use crate::interp::{linspace, trapezoid};
use crate::models::{
    convert_vector, isometry_from_unit_tangent, lorentz_cross, lorentz_product, Isometry, ModelId, ModelPoint,
    ModelVector, Vec3,
};
use crate::scalar::{c, Real};
use crate::transform::{classify_interval, IntervalClass};

/// Tolerance of the region membership tests.
pub const REGION_TOL: f64 = 1e-10;
/// Margin by which a turning must violate a bound to be certified empty.
pub const CERTIFICATE_MARGIN: f64 = 1e-6;

/// Admissible total turnings `base + 2 pi n` from `u` to `v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TurningClass<T> {
    /// Representative in `[0, 2 pi)`.
    pub base_turning: T,
}

impl<T: Real> TurningClass<T> {
    pub fn turning(&self, n: i64) -> T {
        self.base_turning + c::<T>(2.0 * std::f64::consts::PI * n as f64)
    }

    /// `n` with `tau = base + 2 pi n`.
    pub fn index(&self, tau: T) -> Result<i64> {
        let two_pi = T::PI() * c(2.0);
        let q = (tau - self.base_turning) / two_pi;
        let n = q.round();
        if !tau.is_finite() || ((q - n) * two_pi).abs() > crate::models::tol::<T>(1e-6) {
            return Err(Error::InvalidTurning { tau: tau.as_f64() });
        }
        Ok(n.to_i64().unwrap_or(0))
    }
}

fn chart_angle<T: Real>(v: &ModelVector<T>) -> Result<T> {
    let h = convert_vector(v, ModelId::HalfPlane)?;
    Ok(h.chart_dir().unwrap_or_default().arg())
}

/// Residue class of total turnings of curves from `u` to `v`, measured in
/// the half-plane chart.
pub fn valid_turnings<T: Real>(u: &ModelVector<T>, v: &ModelVector<T>) -> Result<TurningClass<T>> {
    u.require_unit()?;
    v.require_unit()?;
    let two_pi = T::PI() * c(2.0);
    let mut base = (chart_angle(v)? - chart_angle(u)?) % two_pi;
    if base < T::zero() {
        base = base + two_pi;
    }
    if base >= two_pi {
        base = T::zero();
    }
    Ok(TurningClass { base_turning: base })
}

/// Open region between the two curves of curvature `kappa1` and `kappa2`
/// tangent to `u`, on the side `u` points to.
///
/// A point `x` lies on the curve of curvature `k` tangent to `u` exactly
/// when `x . n + k (1 + x . p) = 0`, with `p` the base of `u` and
/// `n = p x u` its normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionR<T> {
    pub kappa1: T,
    pub kappa2: T,
    pub base: Vec3<T>,
    pub tangent: Vec3<T>,
    pub normal: Vec3<T>,
}

impl<T: Real> RegionR<T> {
    /// Signed side of `x` relative to the boundary curve of curvature `k`.
    pub fn boundary_value(&self, k: T, x: &Vec3<T>) -> T {
        lorentz_product(x, &self.normal) + k * (T::one() + lorentz_product(x, &self.base))
    }

    /// Curvature of the curve tangent to `u` through `x`.
    pub fn foliation_curvature(&self, x: &Vec3<T>) -> T {
        lorentz_product(x, &self.normal) / (-T::one() - lorentz_product(x, &self.base))
    }

    fn margins(&self, p: &ModelPoint<T>) -> Result<[T; 3]> {
        let x = p.to_hyperboloid()?;
        Ok([
            self.boundary_value(self.kappa1, &x),
            -self.boundary_value(self.kappa2, &x),
            lorentz_product(&x, &self.tangent),
        ])
    }

    pub fn contains(&self, p: &ModelPoint<T>) -> Result<bool> {
        let tol = crate::models::tol::<T>(REGION_TOL);
        Ok(self.margins(p)?.iter().all(|&m| m > tol))
    }

    pub fn closure_contains(&self, p: &ModelPoint<T>) -> Result<bool> {
        let tol = crate::models::tol::<T>(REGION_TOL);
        Ok(self.margins(p)?.iter().all(|&m| m >= -tol))
    }
}

pub fn region_r<T: Real>(kappa1: T, kappa2: T, u: &ModelVector<T>) -> Result<RegionR<T>> {
    let one = T::one();
    if !(kappa1 >= -one && kappa2 <= one && kappa1 < kappa2) {
        return Err(Error::NotContained { lo: kappa1.as_f64(), hi: kappa2.as_f64() });
    }
    u.require_unit()?;
    let (p, t) = u.to_hyperboloid()?;
    Ok(RegionR { kappa1, kappa2, base: p, tangent: t, normal: lorentz_cross(&p, &t) })
}

pub fn region_contains<T: Real>(r: &RegionR<T>, p: &ModelPoint<T>) -> Result<bool> {
    r.contains(p)
}

/// The unit vector `(1, 0)` at `(pi/2, 0)` in the Mercator model.
pub fn mercator_reference<T: Real>() -> ModelVector<T> {
    let base = ModelPoint::mercator(T::FRAC_PI_2(), T::zero()).expect("reference point is in the strip");
    ModelVector::planar(base, Complex::new(T::one(), T::zero())).expect("reference vector is unit")
}

/// Isometry taking `u` to the Mercator reference vector.
pub fn normalizing_isometry<T: Real>(u: &ModelVector<T>) -> Result<Isometry<T>> {
    let q_ref = isometry_from_unit_tangent(&mercator_reference::<T>())?;
    Ok(q_ref.compose(&isometry_from_unit_tangent(u)?.inverse()))
}

/// Whether the curve, moved so that it starts at the Mercator reference
/// vector, is a graph over `x` with `x` strictly increasing.
pub fn is_graph_in_m<T: Real>(sc: &SampledCurve<T>) -> bool {
    let Ok(q) = normalizing_isometry(&sc.unit_tangent(0, ModelId::Hyperboloid)) else {
        return false;
    };
    let mut prev: Option<(T, T)> = None;
    for i in 0..sc.len() {
        let x = q.apply_vec3(&sc.point(i));
        let ModelPoint::Mercator(m) = ModelPoint::from_hyperboloid(&x, ModelId::Mercator) else {
            return false;
        };
        let t = sc.params()[i];
        if let Some((pt, px)) = prev {
            if t > pt && !(m.re > px) {
                return false;
            }
        }
        prev = Some((t, m.re));
    }
    true
}

/// A curve certifying that a space is nonempty.
#[derive(Clone, Debug)]
pub enum Witness<T> {
    Intrinsic(IntrinsicCurve<T>),
    Sampled(SampledCurve<T>),
}

impl<T: Real> Witness<T> {
    pub fn sampled(&self) -> Result<SampledCurve<T>> {
        match self {
            Witness::Intrinsic(c) => c.integrate(),
            Witness::Sampled(s) => Ok(s.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EmptyReason<T> {
    /// The endpoint lies outside the closed confinement region.
    OutsideRegion,
    /// The final tangent points backwards relative to the graph direction.
    BackwardTangent,
    /// No slope profile can meet both boundary slopes.
    SlopeInfeasible,
    /// The endpoint height is outside the range allowed by the envelopes.
    AreaInfeasible { area: T, lower: T, upper: T },
    /// Graphs realize a single turning, and it differs from the request.
    TurningUnique { turning: T },
    /// Monotonicity of a boundary map bounds the turning from one side.
    Obstruction { side: Side, bound: T },
}

impl<T: Real> fmt::Display for EmptyReason<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmptyReason::OutsideRegion => write!(f, "endpoint outside the confinement region"),
            EmptyReason::BackwardTangent => write!(f, "final tangent points backwards"),
            EmptyReason::SlopeInfeasible => write!(f, "boundary slopes incompatible with the curvature band"),
            EmptyReason::AreaInfeasible { area, lower, upper } => {
                write!(f, "endpoint height {area} outside [{lower}, {upper}]")
            }
            EmptyReason::TurningUnique { turning } => write!(f, "only turning {turning} is attainable"),
            EmptyReason::Obstruction { side: Side::Minus, bound } => write!(f, "turning must be at least {bound}"),
            EmptyReason::Obstruction { side: Side::Plus, bound } => write!(f, "turning must be at most {bound}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Voidness<T> {
    NonEmpty(Witness<T>),
    Empty(EmptyReason<T>),
    /// Neither a witness nor a certificate was found. The bounds are the
    /// certified turning limits, when known.
    UnknownWithinBudget { lower: Option<T>, upper: Option<T> },
}

#[derive(Clone, Copy, Debug)]
pub struct VoidnessOptions {
    pub steer: SteerOptions,
    /// Steering solutions examined when looking for a witness.
    pub candidates: usize,
    /// Grid size for graph profiles.
    pub profile_nodes: usize,
}

impl Default for VoidnessOptions {
    fn default() -> Self {
        Self { steer: SteerOptions::default(), candidates: 8, profile_nodes: 2049 }
    }
}

/// Decides whether curves from `u` to `v` with curvature in `b` and total
/// turning `tau` exist.
pub fn voidness_report<T: Real>(
    b: &CurvatureInterval<T>,
    u: &ModelVector<T>,
    v: &ModelVector<T>,
    tau: T,
    opts: &VoidnessOptions,
) -> Result<Voidness<T>> {
    valid_turnings(u, v)?.index(tau)?;
    match classify_interval(b) {
        IntervalClass::Contained | IntervalClass::MinusOneOne => contained_report(b, u, v, tau, opts),
        _ => steered_report(b, u, v, tau, opts),
    }
}

/// Half-plane turning of any graph from the reference vector `start` to
/// `end` (final slope `beta`), carried back to the original position by
/// `q_inv`.
fn graph_turning<T: Real>(q_inv: &Isometry<T>, start: &ModelVector<T>, end: &ModelVector<T>, beta: T) -> Result<T> {
    let (a, b) = match (start.base, end.base) {
        (ModelPoint::Mercator(s), ModelPoint::Mercator(e)) => (s.re, e.re),
        _ => return Err(Error::Mismatch("expected Mercator vectors".into())),
    };
    let normalized = (b - a) - beta.atan();
    Ok(normalized + chart_rotation(q_inv, start, end)?)
}

/// Change of the half-plane chart argument of `g'(z)` along a segment
/// joining the bases of two vectors.
fn chart_rotation<T: Real>(g: &Isometry<T>, from: &ModelVector<T>, to: &ModelVector<T>) -> Result<T> {
    let z0 = ModelPoint::from_hyperboloid(&from.base.to_hyperboloid()?, ModelId::HalfPlane).chart().unwrap_or_default();
    let z1 = ModelPoint::from_hyperboloid(&to.base.to_hyperboloid()?, ModelId::HalfPlane).chart().unwrap_or_default();
    let steps = 512;
    let mut total = T::zero();
    let mut prev: Option<T> = None;
    for k in 0..=steps {
        let s = T::from_usize_lossy(k) / T::from_usize_lossy(steps);
        let z = z0 + (z1 - z0) * s;
        let w = ModelVector::planar(ModelPoint::half_plane(z)?, Complex::new(T::one(), T::zero()))?;
        let a = g.apply_vector(&w)?.chart_dir().unwrap_or_default().arg();
        if let Some(p) = prev {
            total = total + crate::curves::wrap_pi(a - p);
        }
        prev = Some(a);
    }
    Ok(total)
}

fn contained_report<T: Real>(
    b: &CurvatureInterval<T>,
    u: &ModelVector<T>,
    v: &ModelVector<T>,
    tau: T,
    opts: &VoidnessOptions,
) -> Result<Voidness<T>> {
    let unknown = Voidness::UnknownWithinBudget { lower: None, upper: None };
    let region = region_r(b.lo, b.hi, u)?;
    if !region.closure_contains(&v.base)? {
        return Ok(Voidness::Empty(EmptyReason::OutsideRegion));
    }
    if !region.contains(&v.base)? {
        return Ok(unknown);
    }
    let q = normalizing_isometry(u)?;
    let q_inv = q.inverse();
    let vm = convert_vector(&q.apply_vector(v)?, ModelId::Mercator)?;
    let um = mercator_reference::<T>();
    let d = vm.chart_dir().unwrap_or_default();
    let tol = crate::models::tol::<T>(REGION_TOL);
    if d.re < -tol {
        return Ok(Voidness::Empty(EmptyReason::BackwardTangent));
    }
    if !(d.re > tol) {
        return Ok(unknown);
    }
    let ModelPoint::Mercator(end) = vm.base else { unreachable!("converted to Mercator") };
    let (a, bx, alpha, beta, area) = (T::FRAC_PI_2(), end.re, T::zero(), d.im / d.re, end.im);

    let turning = graph_turning(&q_inv, &um, &vm, beta)?;
    let two_pi = T::PI() * c(2.0);
    if ((tau - turning) / two_pi).round() != T::zero() {
        return Ok(Voidness::Empty(EmptyReason::TurningUnique { turning }));
    }

    // Strip curvature is the negative of hyperbolic curvature.
    let outer = (-b.hi, -b.lo);
    let xs = linspace(a, bx, opts.profile_nodes.max(65));
    let margin = crate::models::tol::<T>(1e-8);
    let (lower, upper) = envelopes(&xs, alpha, beta, outer)?;
    if lower[0] > alpha + margin || upper[0] < alpha - margin || lower.iter().zip(&upper).any(|(l, u)| l > &(*u + margin)) {
        return Ok(Voidness::Empty(EmptyReason::SlopeInfeasible));
    }
    let (lo_area, hi_area) = (trapezoid(&xs, &lower), trapezoid(&xs, &upper));
    let scale = T::one() + area.abs();
    if area < lo_area - margin * scale || area > hi_area + margin * scale {
        return Ok(Voidness::Empty(EmptyReason::AreaInfeasible { area, lower: lo_area, upper: hi_area }));
    }

    let pad = c::<T>(crate::homotopy::BAND_PADDING).min((outer.1 - outer.0) * c(0.25));
    let inner = (outer.0 + pad, outer.1 - pad);
    let Some(f0) = canonical_profile(&xs, alpha, beta, area, inner)? else {
        return Ok(unknown);
    };
    let graph = mercator_graph(&xs, &f0, T::zero())?;
    Ok(Voidness::NonEmpty(Witness::Sampled(graph.transformed(&q_inv))))
}

/// Certified turning bounds from the monotone boundary maps, computed
/// along a reference curve from `u` to `v`.
fn obstruction_bounds<T: Real>(
    b: &CurvatureInterval<T>,
    u: &ModelVector<T>,
    v: &ModelVector<T>,
    opts: &VoidnessOptions,
) -> Result<(Option<T>, Option<T>)> {
    let one = T::one();
    let want_lower = b.lo >= -one;
    let want_upper = b.hi <= one;
    if !want_lower && !want_upper {
        return Ok((None, None));
    }
    let wide = CurvatureInterval::new(c(-3.0), c(3.0))?;
    let reference = steer(u, v, &wide, &opts.steer)?.integrate()?;
    let turning = total_turning(&reference)?;
    let two_pi = T::PI() * c(2.0);
    let bound = |side: Side| -> Result<T> {
        let alpha = alpha_pm_lifted(&reference, side)?;
        let change = alpha[alpha.len() - 1] - alpha[0];
        // `change - turning` depends only on the end data.
        let offset = change - turning;
        let mut residue = change % two_pi;
        match side {
            Side::Minus => {
                if residue < T::zero() {
                    residue = residue + two_pi;
                }
                Ok(residue - offset)
            }
            Side::Plus => {
                if residue > T::zero() {
                    residue = residue - two_pi;
                }
                Ok(residue - offset)
            }
        }
    };
    let lower = if want_lower { Some(bound(Side::Minus)?) } else { None };
    let upper = if want_upper { Some(bound(Side::Plus)?) } else { None };
    Ok((lower, upper))
}

fn steered_report<T: Real>(
    b: &CurvatureInterval<T>,
    u: &ModelVector<T>,
    v: &ModelVector<T>,
    tau: T,
    opts: &VoidnessOptions,
) -> Result<Voidness<T>> {
    let margin = crate::models::tol::<T>(CERTIFICATE_MARGIN);
    let (lower, upper) = obstruction_bounds(b, u, v, opts)?;
    if let Some(l) = lower {
        if tau < l - margin {
            return Ok(Voidness::Empty(EmptyReason::Obstruction { side: Side::Minus, bound: l }));
        }
    }
    if let Some(h) = upper {
        if tau > h + margin {
            return Ok(Voidness::Empty(EmptyReason::Obstruction { side: Side::Plus, bound: h }));
        }
    }
    let (k_lo, k_hi) = arc_curvatures(b);
    let positive = (k_hi > T::one()).then_some(k_hi);
    let negative = (k_lo < -T::one()).then_some(k_lo);
    let two_pi = T::PI() * c(2.0);
    for cand in steer_candidates(u, v, b, &opts.steer, opts.candidates.max(1))? {
        let tw = total_turning(&cand.integrate()?)?;
        let n = ((tau - tw) / two_pi).round().to_i64().unwrap_or(0);
        let loop_kappa = match n.signum() {
            0 => return Ok(Voidness::NonEmpty(Witness::Intrinsic(cand))),
            1 => positive,
            _ => negative,
        };
        if let Some(k) = loop_kappa {
            return Ok(Voidness::NonEmpty(Witness::Intrinsic(loop_concat(&cand, n, k)?)));
        }
    }
    Ok(Voidness::UnknownWithinBudget { lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(x: f64, y: f64, dx: f64, dy: f64) -> ModelVector<f64> {
        ModelVector::planar(ModelPoint::half_plane(Complex::new(x, y)).unwrap(), Complex::new(dx, dy))
            .unwrap()
            .normalized()
            .unwrap()
    }

    #[test]
    fn base_turnings() {
        let u = hp(0.0, 1.0, 1.0, 0.0);
        assert_eq!(valid_turnings(&u, &u).unwrap().base_turning, 0.0);
        let v = hp(2.0, 1.0, 0.0, 1.0);
        let t = valid_turnings(&u, &v).unwrap();
        assert!((t.base_turning - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert_eq!(t.index(t.base_turning - 4.0 * std::f64::consts::PI).unwrap(), -2);
        assert!(t.index(1.0).is_err());
    }

    #[test]
    fn reference_vector_is_e2_at_apex() {
        let (p, t) = mercator_reference::<f64>().to_hyperboloid().unwrap();
        assert!(p.max_abs_diff(&Vec3::e0()) < 1e-15);
        assert!(t.max_abs_diff(&Vec3::e2()) < 1e-15);
    }
}
