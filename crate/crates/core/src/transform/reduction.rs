use crate::curves::{CurvatureInterval, IntrinsicCurve};
use crate::error::{Error, Result};
use crate::models::{isometry_from_unit_tangent, reflect_in_geodesic, Isometry, ModelVector, Reflection};
use crate::scalar::{c, Real};

use super::{normal_translate_intrinsic, translate_bounds, translate_unit_tangent};

/// Position of a curvature interval relative to `[-1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntervalClass {
    Contained,
    Disjoint,
    Overlapping,
    Containing,
    MinusOneOne,
}

impl IntervalClass {
    pub fn name(self) -> &'static str {
        match self {
            IntervalClass::Contained => "contained",
            IntervalClass::Disjoint => "disjoint",
            IntervalClass::Overlapping => "overlapping",
            IntervalClass::Containing => "containing",
            IntervalClass::MinusOneOne => "minus-one-one",
        }
    }
}

pub fn classify_interval<T: Real>(b: &CurvatureInterval<T>) -> IntervalClass {
    let one = T::one();
    if b.lo == -one && b.hi == one {
        IntervalClass::MinusOneOne
    } else if b.lo >= -one && b.hi <= one {
        IntervalClass::Contained
    } else if b.hi <= -one || b.lo >= one {
        IntervalClass::Disjoint
    } else if b.lo < -one && b.hi > one {
        IntervalClass::Containing
    } else {
        IntervalClass::Overlapping
    }
}

/// `arccoth k` for `|k| >= 1`, with `arccoth(+-inf) = 0`.
fn arccoth<T: Real>(k: T) -> T {
    if k.is_infinite() {
        T::zero()
    } else {
        k.recip().atanh()
    }
}

/// Reflection, normal translation and final isometry taking a curve space
/// to its normal form.
///
/// Applied in order: reflect in the geodesic through the initial tangent
/// (when `pre_reflection` is set), translate along the normal by `rho`, then
/// move the start to `ubar` with `post_isometry`. The inverse recipe runs
/// the inverse steps in reverse order.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionRecipe<T> {
    pub class: IntervalClass,
    pub pre_reflection: Option<Reflection<T>>,
    pub rho: T,
    pub post_isometry: Isometry<T>,
    pub kappa0: T,
    pub source_bounds: CurvatureInterval<T>,
    pub target_bounds: CurvatureInterval<T>,
    pub u: ModelVector<T>,
    pub v: ModelVector<T>,
    pub ubar: ModelVector<T>,
    pub vbar: ModelVector<T>,
    pub inverse: bool,
}

impl<T: Real> ReductionRecipe<T> {
    pub fn reflected(&self) -> bool {
        self.pre_reflection.is_some()
    }

    /// Image of a unit tangent (the end tangent of a curve, say).
    pub fn apply_to_vector(&self, w: &ModelVector<T>) -> Result<ModelVector<T>> {
        let model = w.model();
        let mut w = *w;
        if !self.inverse {
            if let Some(r) = &self.pre_reflection {
                w = r.apply_vector(&w)?;
            }
            w = translate_unit_tangent(&w, self.rho)?;
            w = self.post_isometry.apply_vector(&w)?;
        } else {
            w = self.post_isometry.inverse().apply_vector(&w)?;
            w = translate_unit_tangent(&w, -self.rho)?;
            if let Some(r) = &self.pre_reflection {
                w = r.apply_vector(&w)?;
            }
        }
        crate::models::convert_vector(&w, model)
    }
}

/// Normal form for curves from `u` to `v` with curvature in `b`, started at
/// `ubar`.
pub fn reduce<T: Real>(
    b: &CurvatureInterval<T>,
    u: &ModelVector<T>,
    v: &ModelVector<T>,
    ubar: &ModelVector<T>,
) -> Result<ReductionRecipe<T>> {
    let class = classify_interval(b);
    let one = T::one();
    let half = c::<T>(0.5);
    let (reflect, bb) = match class {
        IntervalClass::MinusOneOne => return Err(Error::MinusOneOne),
        IntervalClass::Contained => (b.lo == -one, b),
        IntervalClass::Disjoint => (b.hi <= -one, b),
        IntervalClass::Overlapping => (b.lo < -one, b),
        IntervalClass::Containing => (false, b),
    };
    let work = if reflect { bb.negated() } else { *bb };
    let (rho, kappa0) = match class {
        IntervalClass::Contained => {
            let r1 = work.lo.atanh();
            (r1, (work.hi.atanh() - r1).tanh())
        }
        IntervalClass::Disjoint => {
            let (r1, r2) = (arccoth(work.lo), arccoth(work.hi));
            (r2, (r1 - r2).tanh().recip())
        }
        IntervalClass::Overlapping => {
            let r2 = arccoth(work.hi);
            (r2, (work.lo.atanh() - r2).tanh())
        }
        IntervalClass::Containing => {
            let (r1, r2) = (arccoth(work.lo), arccoth(work.hi));
            ((r1 + r2) * half, ((r2 - r1) * half).tanh().recip())
        }
        IntervalClass::MinusOneOne => unreachable!(),
    };
    let target_bounds = match class {
        IntervalClass::Contained => CurvatureInterval::new(T::zero(), kappa0)?,
        IntervalClass::Disjoint => CurvatureInterval::new(kappa0, T::infinity())?,
        IntervalClass::Overlapping => CurvatureInterval::new(kappa0, T::infinity())?,
        IntervalClass::Containing => CurvatureInterval::new(-kappa0, kappa0)?,
        IntervalClass::MinusOneOne => unreachable!(),
    };
    let pre_reflection = if reflect { Some(reflect_in_geodesic(u)?) } else { None };
    let u1 = match &pre_reflection {
        Some(r) => r.apply_vector(u)?,
        None => *u,
    };
    let u2 = translate_unit_tangent(&u1, rho)?;
    let post_isometry = isometry_from_unit_tangent(ubar)?.compose(&isometry_from_unit_tangent(&u2)?.inverse());
    let mut recipe = ReductionRecipe {
        class,
        pre_reflection,
        rho,
        post_isometry,
        kappa0,
        source_bounds: *b,
        target_bounds,
        u: *u,
        v: *v,
        ubar: *ubar,
        vbar: *ubar,
        inverse: false,
    };
    recipe.vbar = recipe.apply_to_vector(v)?;
    Ok(recipe)
}

/// Recipe undoing `r`; its source and target swap roles.
pub fn invert_recipe<T: Real>(r: &ReductionRecipe<T>) -> ReductionRecipe<T> {
    ReductionRecipe {
        source_bounds: r.target_bounds,
        target_bounds: r.source_bounds,
        u: r.ubar,
        v: r.vbar,
        ubar: r.u,
        vbar: r.v,
        inverse: !r.inverse,
        ..r.clone()
    }
}

/// Transports a curve through the recipe. Curvature data is mapped exactly at
/// the grid nodes, so piecewise-constant data maps exactly.
pub fn apply_recipe<T: Real>(r: &ReductionRecipe<T>, curve: &IntrinsicCurve<T>) -> Result<IntrinsicCurve<T>> {
    let mut c = curve.clone();
    if !r.inverse {
        if let Some(refl) = &r.pre_reflection {
            c = c.reflected(refl)?;
        }
        c = normal_translate_intrinsic(&c, r.rho)?;
        c = c.with_frame0(r.post_isometry.compose(c.frame0()));
    } else {
        c = c.with_frame0(r.post_isometry.inverse().compose(c.frame0()));
        c = normal_translate_intrinsic(&c, -r.rho)?;
        if let Some(refl) = &r.pre_reflection {
            c = c.reflected(refl)?;
        }
    }
    let band = &r.target_bounds;
    if let Some(k) = c.kappa().into_iter().find(|&k| !band.contains(k)) {
        return Err(Error::BandViolation { kappa: k.as_f64(), lo: band.lo.as_f64(), hi: band.hi.as_f64() });
    }
    c.with_bounds(r.target_bounds)
}

/// Curvature bounds after the reflection and translation of `r`.
pub fn transported_bounds<T: Real>(r: &ReductionRecipe<T>) -> Result<CurvatureInterval<T>> {
    let b = if r.reflected() { r.source_bounds.negated() } else { r.source_bounds };
    translate_bounds(&b, r.rho)
}
