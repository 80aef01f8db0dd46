//! One-dimensional interpolation, quadrature and bracketing root finding.

use crate::error::{Error, Result};
use crate::scalar::{c, Real};

/// Index `i` with `xs[i] <= x <= xs[i + 1]`, clamped to the table.
pub fn locate<T: Real>(xs: &[T], x: T) -> usize {
    let n = xs.len();
    if n < 2 || x <= xs[0] {
        return 0;
    }
    if x >= xs[n - 1] {
        return n - 2;
    }
    let i = xs.partition_point(|&v| v <= x);
    i.saturating_sub(1).min(n - 2)
}

pub fn linear<T: Real>(xs: &[T], ys: &[T], x: T) -> T {
    if xs.len() == 1 {
        return ys[0];
    }
    let i = locate(xs, x);
    let w = xs[i + 1] - xs[i];
    if w == T::zero() {
        return ys[i + 1];
    }
    let s = (x - xs[i]) / w;
    ys[i] + (ys[i + 1] - ys[i]) * s
}

/// Fritsch-Carlson slopes of the monotone piecewise cubic through the data.
pub fn pchip_slopes<T: Real>(xs: &[T], ys: &[T]) -> Vec<T> {
    let n = xs.len();
    if n < 2 {
        return vec![T::zero(); n];
    }
    let h: Vec<T> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<T> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
    if n == 2 {
        return vec![delta[0]; 2];
    }
    let mut d = vec![T::zero(); n];
    let two = c::<T>(2.0);
    let three = c::<T>(3.0);
    for i in 1..n - 1 {
        if delta[i - 1] * delta[i] > T::zero() {
            let w1 = two * h[i] + h[i - 1];
            let w2 = h[i] + two * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    let end = |h0: T, h1: T, d0: T, d1: T| {
        let mut s = ((two * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if s * d0 <= T::zero() {
            s = T::zero();
        } else if d0 * d1 < T::zero() && s.abs() > (three * d0).abs() {
            s = three * d0;
        }
        s
    };
    d[0] = end(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

/// Cubic Hermite evaluation given values and slopes at the nodes.
pub fn hermite<T: Real>(xs: &[T], ys: &[T], ds: &[T], x: T) -> T {
    if xs.len() == 1 {
        return ys[0];
    }
    let i = locate(xs, x);
    let h = xs[i + 1] - xs[i];
    if h == T::zero() {
        return ys[i + 1];
    }
    let s = (x - xs[i]) / h;
    let (two, three) = (c::<T>(2.0), c::<T>(3.0));
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = two * s3 - three * s2 + T::one();
    let h10 = s3 - two * s2 + s;
    let h01 = three * s2 - two * s3;
    let h11 = s3 - s2;
    h00 * ys[i] + h10 * h * ds[i] + h01 * ys[i + 1] + h11 * h * ds[i + 1]
}

/// Monotone cubic interpolant.
#[derive(Clone, Debug)]
pub struct Pchip<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    ds: Vec<T>,
}

impl<T: Real> Pchip<T> {
    pub fn new(xs: Vec<T>, ys: Vec<T>) -> Self {
        let ds = pchip_slopes(&xs, &ys);
        Self { xs, ys, ds }
    }

    pub fn eval(&self, x: T) -> T {
        hermite(&self.xs, &self.ys, &self.ds, x)
    }
}

/// Composite trapezoid rule on arbitrary nodes.
pub fn trapezoid<T: Real>(xs: &[T], ys: &[T]) -> T {
    let half = c::<T>(0.5);
    xs.windows(2).zip(ys.windows(2)).fold(T::zero(), |acc, (x, y)| acc + (x[1] - x[0]) * (y[0] + y[1]) * half)
}

/// `n` equally spaced points from `a` to `b` inclusive.
pub fn linspace<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    if n == 1 {
        return vec![a];
    }
    let step = (b - a) / T::from_usize_lossy(n - 1);
    (0..n).map(|i| if i + 1 == n { b } else { a + step * T::from_usize_lossy(i) }).collect()
}

/// Bisection for a root of a monotone function on `[lo, hi]`.
///
/// Requires `f(lo)` and `f(hi)` of opposite sign (or zero); stops after 80
/// halvings or when the bracket is narrower than `1e-12`.
pub fn bisect<T: Real, F: FnMut(T) -> T>(mut f: F, mut lo: T, mut hi: T, what: &'static str) -> Result<T> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }
    if !(flo * fhi < T::zero()) {
        return Err(Error::NotBracketed(what));
    }
    let tol = crate::models::tol::<T>(1e-12);
    let half = c::<T>(0.5);
    for _ in 0..80 {
        let mid = (lo + hi) * half;
        let fm = f(mid);
        if fm == T::zero() {
            return Ok(mid);
        }
        if (fm < T::zero()) == (flo < T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo).abs() <= tol {
            break;
        }
    }
    Ok((lo + hi) * half)
}
