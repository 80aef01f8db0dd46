//! Graph profiles in the Mercator strip and the median deformation.
//!
//! A curve that is a graph `x -> (x, y(x))` is described by its slope
//! `f = y'`. Curvatures in this module use the strip orientation, so a
//! band `(k1, k2)` here corresponds to hyperbolic curvature in `(-k2, -k1)`.

use crate::curves::{derivative, mercator_curvature, mercator_graph, total_turning, CurvatureInterval};
use crate::error::{Error, Result};
use crate::interp::trapezoid;
use crate::ode::{integrate, OdeOptions};
use crate::scalar::{c, Real};

use super::HomotopyFamily;

/// Padding used for inner bands when the profile leaves more room.
pub const BAND_PADDING: f64 = 1e-4;
/// Magnitude at which a terminal solution is treated as blown up.
pub const BLOW_UP: f64 = 1e8;

/// Slope derivative of the graph of a curve of strip curvature `kappa`:
/// `(1 + z^2) / sin x * (z cos x + kappa sqrt(1 + z^2))`.
pub fn psi<T: Real>(kappa: T, x: T, z: T) -> T {
    let w = T::one() + z * z;
    w / x.sin() * (z * x.cos() + kappa * w.sqrt())
}

fn solve_from<T: Real>(kappa: T, xs: &[T], start: usize, value: T) -> Result<Vec<T>> {
    let n = xs.len();
    let outputs: Vec<T> = if start == 0 { xs.to_vec() } else { xs.iter().rev().copied().collect() };
    let limit = c::<T>(BLOW_UP);
    let opts = OdeOptions { stop_on_underflow: true, max_steps: 200_000, ..OdeOptions::default() };
    let run = integrate(
        |x, y: &[T; 1]| [psi(kappa, x, y[0])],
        outputs[0],
        [value],
        &outputs,
        &opts,
        |_| {},
        |_, y| !(y[0].abs() <= limit),
    )?;
    let mut out: Vec<T> = run.values.into_iter().map(|v| v[0]).collect();
    if out.len() < n {
        let sign = if run.last[0] < T::zero() { -T::one() } else { T::one() };
        out.resize(n, sign * T::infinity());
    }
    if start != 0 {
        out.reverse();
    }
    Ok(out)
}

/// Forward solution of `g' = psi_kappa(x, g)`, `g(xs[0]) = alpha`, on `xs`.
/// Values past a blow-up are reported as signed infinity.
pub fn solve_g<T: Real>(kappa: T, xs: &[T], alpha: T) -> Result<Vec<T>> {
    check_grid(xs)?;
    solve_from(kappa, xs, 0, alpha)
}

/// Backward solution of `h' = psi_kappa(x, h)`, `h(xs[last]) = beta`, on
/// `xs`. Left of a blow-up the solution is extended by its limit, a signed
/// infinity.
pub fn solve_h<T: Real>(kappa: T, xs: &[T], beta: T) -> Result<Vec<T>> {
    check_grid(xs)?;
    solve_from(kappa, xs, xs.len() - 1, beta)
}

fn check_grid<T: Real>(xs: &[T]) -> Result<()> {
    let n = xs.len();
    if n < 3 || !(xs[0] > T::zero()) || !(xs[n - 1] < T::PI()) || xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid("profile abscissae must increase inside (0, pi)"));
    }
    Ok(())
}

/// Third smallest of five values, infinities included.
pub fn median5<T: Real>(mut v: [T; 5]) -> T {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    v[2]
}

fn median3<T: Real>(a: T, b: T, c: T) -> T {
    a.min(b).max(a.max(b).min(c))
}

/// Largest violation of `psi_lo(x, f) <= f' <= psi_hi(x, f)` measured by
/// difference quotients, beyond the variation of `psi` across each cell.
/// Nonpositive when the inequality holds on the grid.
pub fn condition_residual<T: Real>(xs: &[T], f: &[T], bands: (T, T)) -> T {
    let mut worst = T::neg_infinity();
    let slack = crate::models::tol::<T>(1e-9);
    for i in 0..xs.len() - 1 {
        let q = (f[i + 1] - f[i]) / (xs[i + 1] - xs[i]);
        let (l0, l1) = (psi(bands.0, xs[i], f[i]), psi(bands.0, xs[i + 1], f[i + 1]));
        let (u0, u1) = (psi(bands.1, xs[i], f[i]), psi(bands.1, xs[i + 1], f[i + 1]));
        let lower = l0.min(l1) - (l1 - l0).abs() - slack * T::one().max(q.abs());
        let upper = u0.max(u1) + (u1 - u0).abs() + slack * T::one().max(q.abs());
        worst = worst.max(lower - q).max(q - upper);
    }
    worst
}

/// Slope profile of a graph on `[a, b]` with its boundary data and inner
/// curvature bands.
#[derive(Clone, Debug)]
pub struct MercatorProfile<T> {
    pub xs: Vec<T>,
    pub f: Vec<T>,
    pub alpha: T,
    pub beta: T,
    /// Target area `int_a^b f`.
    pub area: T,
    /// Height of the graph at `a`.
    pub y0: T,
    /// Inner bands `k1_bar < k2_bar`.
    pub bands: (T, T),
    h_lo: Vec<T>,
    h_hi: Vec<T>,
}

impl<T: Real> MercatorProfile<T> {
    /// Profile with explicit inner bands; `f` must satisfy the differential
    /// inequality for them on the grid.
    pub fn with_bands(xs: Vec<T>, f: Vec<T>, bands: (T, T)) -> Result<Self> {
        check_grid(&xs)?;
        if f.len() != xs.len() {
            return Err(Error::InvalidGrid("profile values and abscissae differ in length"));
        }
        if let Some(i) = f.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        if !(bands.0 < bands.1) || bands.0 < -T::one() || bands.1 > T::one() {
            return Err(Error::NotContained { lo: bands.0.as_f64(), hi: bands.1.as_f64() });
        }
        let r = condition_residual(&xs, &f, bands);
        if r > T::zero() {
            return Err(Error::BandViolation { kappa: r.as_f64(), lo: bands.0.as_f64(), hi: bands.1.as_f64() });
        }
        let n = xs.len();
        let h_lo = solve_h(bands.0, &xs, f[n - 1])?;
        let h_hi = solve_h(bands.1, &xs, f[n - 1])?;
        Ok(Self {
            area: trapezoid(&xs, &f),
            alpha: f[0],
            beta: f[n - 1],
            y0: T::zero(),
            xs,
            f,
            bands,
            h_lo,
            h_hi,
        })
    }

    /// Profile whose graph has strip curvature in the open band `outer`;
    /// inner bands are padded by at most `BAND_PADDING`, and by at most half
    /// the room the profile leaves.
    pub fn new(xs: Vec<T>, f: Vec<T>, outer: (T, T)) -> Result<Self> {
        check_grid(&xs)?;
        if f.len() != xs.len() {
            return Err(Error::InvalidGrid("profile values and abscissae differ in length"));
        }
        let df = derivative(&xs, &f);
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..xs.len() {
            let k = mercator_curvature(xs[i], f[i], df[i]);
            lo = lo.min(k);
            hi = hi.max(k);
        }
        for k in [lo, hi] {
            if !(k > outer.0 && k < outer.1) {
                return Err(Error::BandViolation { kappa: k.as_f64(), lo: outer.0.as_f64(), hi: outer.1.as_f64() });
            }
        }
        let delta = c::<T>(BAND_PADDING);
        let half = c::<T>(0.5);
        let bands = (outer.0 + delta.min((lo - outer.0) * half), outer.1 - delta.min((outer.1 - hi) * half));
        Self::with_bands(xs, f, bands)
    }

    pub fn with_y0(mut self, y0: T) -> Self {
        self.y0 = y0;
        self
    }

    pub fn a(&self) -> T {
        self.xs[0]
    }

    pub fn b(&self) -> T {
        self.xs[self.xs.len() - 1]
    }

    /// `h` for the lower and upper inner band.
    pub fn terminal_solutions(&self) -> (&[T], &[T]) {
        (&self.h_lo, &self.h_hi)
    }

    /// `f_(lambda, mu) = midd(h_k1, g_lambda, f, g_mu, h_k2)`.
    pub fn median_profile(&self, lambda: T, mu: T) -> Result<Vec<T>> {
        let gl = solve_g(lambda, &self.xs, self.alpha)?;
        let gm = if mu == lambda { gl.clone() } else { solve_g(mu, &self.xs, self.alpha)? };
        Ok((0..self.xs.len()).map(|i| median5([self.h_lo[i], gl[i], self.f[i], gm[i], self.h_hi[i]])).collect())
    }
}

/// `(k_minus, k_plus)`: the largest `k` with `g_k <= f` and the smallest with
/// `f <= g_k`, within the inner bands.
pub fn kappa_band<T: Real>(p: &MercatorProfile<T>) -> Result<(T, T)> {
    let below = |k: T| -> Result<bool> {
        let g = solve_g(k, &p.xs, p.alpha)?;
        Ok(g.iter().zip(&p.f).all(|(&g, &f)| g <= f + slack(f)))
    };
    let above = |k: T| -> Result<bool> {
        let g = solve_g(k, &p.xs, p.alpha)?;
        Ok(g.iter().zip(&p.f).all(|(&g, &f)| f <= g + slack(f)))
    };
    let (lo, hi) = p.bands;
    let k_minus = if below(hi)? { hi } else { bisect_predicate(lo, hi, |k| below(k))? };
    let k_plus = if above(lo)? { lo } else { bisect_predicate_rev(lo, hi, |k| above(k))? };
    Ok((k_minus.min(k_plus), k_plus.max(k_minus)))
}

fn slack<T: Real>(f: T) -> T {
    crate::models::tol::<T>(1e-11) * T::one().max(f.abs())
}

/// Largest `k` in `[lo, hi]` with `pred(k)`, for `pred` true on a lower set.
fn bisect_predicate<T: Real>(mut lo: T, mut hi: T, mut pred: impl FnMut(T) -> Result<bool>) -> Result<T> {
    let tol = crate::models::tol::<T>(1e-12);
    for _ in 0..80 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) * c(0.5);
        if pred(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Smallest `k` in `[lo, hi]` with `pred(k)`, for `pred` true on an upper set.
fn bisect_predicate_rev<T: Real>(mut lo: T, mut hi: T, mut pred: impl FnMut(T) -> Result<bool>) -> Result<T> {
    let tol = crate::models::tol::<T>(1e-12);
    for _ in 0..80 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) * c(0.5);
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `A(lambda, mu)`, the trapezoid integral of the median profile.
pub fn area<T: Real>(p: &MercatorProfile<T>, lambda: T, mu: T) -> Result<T> {
    Ok(trapezoid(&p.xs, &p.median_profile(lambda, mu)?))
}

/// The point `(lambda, mu)` with `mu - lambda = s (k_plus - k_minus)` and
/// `A(lambda, mu) = A0`.
pub fn find_lambda_mu<T: Real>(p: &MercatorProfile<T>, s: T) -> Result<(T, T)> {
    let band = kappa_band(p)?;
    find_lambda_mu_in(p, band, s)
}

fn find_lambda_mu_in<T: Real>(p: &MercatorProfile<T>, (km, kp): (T, T), s: T) -> Result<(T, T)> {
    if !(s >= T::zero() && s <= T::one()) {
        return Err(Error::OutsideInterval { value: s.as_f64(), lo: 0.0, hi: 1.0 });
    }
    let gap = (kp - km) * s;
    let (lo, hi) = (km, kp - gap);
    let target = p.area;
    let tol = crate::models::tol::<T>(1e-10) * (T::one() + target.abs());
    let f = |l: T| area(p, l, l + gap).map(|a| a - target);
    let f_lo = f(lo)?;
    if f_lo.abs() <= tol || hi <= lo {
        return Ok((lo, lo + gap));
    }
    let f_hi = f(hi)?;
    if f_hi.abs() <= tol {
        return Ok((hi, hi + gap));
    }
    let mut err = None;
    let root = crate::interp::bisect(
        |l| match f(l) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                T::zero()
            }
        },
        lo,
        hi,
        "area along the median segment",
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok((root, root + gap)),
    }
}

/// Deformation `s -> f_s` of the profile into the canonical profile `f_0`,
/// with `f_1 = f`. Curves are graphs in the strip starting at `(a, y0)`.
pub fn contract_contained<T: Real>(p: &MercatorProfile<T>, s_grid: &[T]) -> Result<(HomotopyFamily<T>, Vec<Vec<T>>)> {
    let band = kappa_band(p)?;
    let mut curves = Vec::with_capacity(s_grid.len());
    let mut profiles = Vec::with_capacity(s_grid.len());
    let mut lambda_mu = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let (l, m) = find_lambda_mu_in(p, band, s)?;
        let f = p.median_profile(l, m)?;
        curves.push(mercator_graph(&p.xs, &f, p.y0)?);
        profiles.push(f);
        lambda_mu.push((l, m));
    }
    let turning = match curves.first() {
        Some(sc) => total_turning(sc)?,
        None => T::zero(),
    };
    let bounds = CurvatureInterval::new(-p.bands.1, -p.bands.0)?;
    Ok((HomotopyFamily { s: s_grid.to_vec(), curves, bounds, turning, lambda_mu }, profiles))
}

/// Pointwise envelopes `max(g_k1, h_k2)` and `min(g_k2, h_k1)` that every
/// profile with the given boundary data and bands lies between.
pub fn envelopes<T: Real>(xs: &[T], alpha: T, beta: T, bands: (T, T)) -> Result<(Vec<T>, Vec<T>)> {
    let g_lo = solve_g(bands.0, xs, alpha)?;
    let g_hi = solve_g(bands.1, xs, alpha)?;
    let h_lo = solve_h(bands.0, xs, beta)?;
    let h_hi = solve_h(bands.1, xs, beta)?;
    let lower = (0..xs.len()).map(|i| g_lo[i].max(h_hi[i])).collect();
    let upper = (0..xs.len()).map(|i| g_hi[i].min(h_lo[i])).collect();
    Ok((lower, upper))
}

/// The canonical profile `midd(h_k1, g_k0, h_k2)` with area `target`, if
/// the boundary data admits one for these bands.
pub fn canonical_profile<T: Real>(xs: &[T], alpha: T, beta: T, target: T, bands: (T, T)) -> Result<Option<Vec<T>>> {
    let h_lo = solve_h(bands.0, xs, beta)?;
    let h_hi = solve_h(bands.1, xs, beta)?;
    if !(h_hi[0] <= alpha && alpha <= h_lo[0]) {
        return Ok(None);
    }
    let build = |k: T| -> Result<Vec<T>> {
        let g = solve_g(k, xs, alpha)?;
        Ok((0..xs.len()).map(|i| median3(h_hi[i], g[i], h_lo[i])).collect())
    };
    let area_of = |k: T| -> Result<T> { Ok(trapezoid(xs, &build(k)?)) };
    let (a_lo, a_hi) = (area_of(bands.0)?, area_of(bands.1)?);
    if !(a_lo.is_finite() && a_hi.is_finite()) || target < a_lo || target > a_hi {
        return Ok(None);
    }
    let k0 = if a_hi == a_lo {
        bands.0
    } else {
        let mut err = None;
        let k = crate::interp::bisect(
            |k| match area_of(k) {
                Ok(a) => a - target,
                Err(e) => {
                    err = Some(e);
                    T::zero()
                }
            },
            bands.0,
            bands.1,
            "canonical profile area",
        );
        match (err, k) {
            (Some(e), _) => return Err(e),
            (None, Ok(k)) => k,
            (None, Err(_)) => {
                if (a_lo - target).abs() <= (a_hi - target).abs() {
                    bands.0
                } else {
                    bands.1
                }
            }
        }
    };
    build(k0).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interp::linspace;

    fn grid() -> Vec<f64> {
        linspace(std::f64::consts::FRAC_PI_2, 2.2, 257)
    }

    #[test]
    fn meridian_solution_is_zero() {
        let g = solve_g(0.0, &grid(), 0.0).unwrap();
        assert!(g.iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn medians() {
        assert_eq!(median5([1.0, 2.0, 3.0, 4.0, 5.0]), 3.0);
        assert_eq!(median5([f64::NEG_INFINITY, 0.0, 1.0, 2.0, f64::INFINITY]), 1.0);
        assert_eq!(median5([5.0, f64::INFINITY, 1.0, f64::NEG_INFINITY, 2.0]), 2.0);
    }

    #[test]
    fn terminal_solution_blows_up_to_infinity() {
        let xs = linspace(0.2f64, 3.0, 129);
        let h = solve_h(1.0, &xs, 0.0).unwrap();
        assert!(h[0].is_infinite() || h[0].abs() > 1.0);
        assert_eq!(h[128], 0.0, "{:?}", &h[120..]);
    }

    #[test]
    fn hypercircle_profile_is_its_own_band_point() {
        let xs = grid();
        let g = solve_g(0.2, &xs, 0.0).unwrap();
        let p = MercatorProfile::with_bands(xs, g, (-0.5, 0.5)).unwrap();
        let (km, kp) = kappa_band(&p).unwrap();
        assert!((km - 0.2).abs() < 1e-8 && (kp - 0.2).abs() < 1e-8, "{km} {kp}");
        let (l, m) = find_lambda_mu(&p, 0.5).unwrap();
        assert!((l - 0.2).abs() < 1e-8 && (m - 0.2).abs() < 1e-8);
    }
}
