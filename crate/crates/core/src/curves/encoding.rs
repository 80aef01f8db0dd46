//! Coordinate diffeomorphisms identifying positive speeds and curvatures in
//! an open interval with the whole real line.

use crate::error::{Error, Result};
use crate::scalar::{c, Real};

/// Curvature bounds `(lo, hi)` with `lo < hi`; either side may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureInterval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> CurvatureInterval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || !(lo < hi) || lo == T::infinity() || hi == T::neg_infinity() {
            return Err(Error::InvalidInterval { lo: lo.as_f64(), hi: hi.as_f64() });
        }
        Ok(Self { lo, hi })
    }

    pub fn unbounded() -> Self {
        Self { lo: T::neg_infinity(), hi: T::infinity() }
    }

    pub fn contains(&self, t: T) -> bool {
        t > self.lo && t < self.hi
    }

    pub fn contains_closed(&self, t: T) -> bool {
        t >= self.lo && t <= self.hi
    }

    /// The interval of negated curvatures, `(-hi, -lo)`.
    pub fn negated(&self) -> Self {
        Self { lo: -self.hi, hi: -self.lo }
    }

    /// Smallest interval containing both.
    pub fn hull(&self, o: &Self) -> Self {
        Self { lo: self.lo.min(o.lo), hi: self.hi.max(o.hi) }
    }

    pub fn encode(&self, t: T) -> Result<T> {
        hk_encode(t, self.lo, self.hi)
    }

    pub fn decode(&self, s: T) -> T {
        hk_decode(s, self.lo, self.hi)
    }
}

/// `h(t) = t - 1/t` on positive reals.
pub fn h_encode<T: Real>(t: T) -> Result<T> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::NonPositive(t.as_f64()));
    }
    Ok(t - t.recip())
}

/// Positive root of `t^2 - s t - 1 = 0`, arranged to avoid cancellation.
pub fn h_decode<T: Real>(s: T) -> T {
    let two = c::<T>(2.0);
    let r = s.hypot(two);
    if s >= T::zero() {
        (s + r) / two
    } else {
        two / (r - s)
    }
}

/// `(lo - t)^-1 + (hi - t)^-1`, `t + (hi - t)^-1`, `t + (lo - t)^-1` or the
/// identity, according to which bounds are finite.
pub fn hk_encode<T: Real>(t: T, lo: T, hi: T) -> Result<T> {
    if !(t > lo && t < hi) || !t.is_finite() {
        return Err(Error::OutsideInterval { value: t.as_f64(), lo: lo.as_f64(), hi: hi.as_f64() });
    }
    Ok(match (lo.is_finite(), hi.is_finite()) {
        (true, true) => (lo - t).recip() + (hi - t).recip(),
        (false, true) => t + (hi - t).recip(),
        (true, false) => t + (lo - t).recip(),
        (false, false) => t,
    })
}

/// Inverse of [`hk_encode`]; the result always lies strictly inside `(lo, hi)`.
pub fn hk_decode<T: Real>(s: T, lo: T, hi: T) -> T {
    let t = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => {
            // With t = m + x and half-width w the equation becomes
            // s x^2 + 2x - s w^2 = 0.
            let half = c::<T>(0.5);
            let m = (lo + hi) * half;
            let w = (hi - lo) * half;
            let sw = s * w;
            m + sw * w / (T::one() + T::one().hypot(sw))
        }
        (false, true) => hi - h_decode(hi - s),
        (true, false) => lo + h_decode(s - lo),
        (false, false) => return s,
    };
    // Saturated inputs round onto a bound; keep the result inside.
    let ulp = |x: T| (x.abs() * T::epsilon()).max(T::min_positive_value());
    let t = if lo.is_finite() { t.max(lo + ulp(lo)) } else { t };
    if hi.is_finite() {
        t.min(hi - ulp(hi))
    } else {
        t
    }
}
