//! Endpoint matching with chains of constant-curvature arcs.

use crate::curves::{concat, constant_from_frame, CurvatureInterval, IntrinsicCurve};
use crate::error::{Error, Result};
use crate::models::{isometry_from_unit_tangent, Isometry, Mat3, ModelVector};
use crate::scalar::{c, Real};

#[derive(Clone, Copy, Debug)]
pub struct SteerOptions {
    /// Number of shooting restarts allowed.
    pub budget: usize,
    /// Largest number of arcs tried.
    pub max_arcs: usize,
    pub max_iterations: usize,
}

impl Default for SteerOptions {
    fn default() -> Self {
        Self { budget: 64, max_arcs: 10, max_iterations: 200 }
    }
}

/// Generator `[[0, 1, 0], [1, 0, -k], [0, k, 0]]` of unit-speed motion with
/// curvature `k`.
fn generator<T: Real>(k: T) -> Mat3<T> {
    let (z, o) = (T::zero(), T::one());
    Mat3([[z, o, z], [o, z, -k], [z, k, z]])
}

/// `exp(l X_k)` in closed form, using `X^3 = (1 - k^2) X`.
pub fn arc_matrix<T: Real>(k: T, l: T) -> Mat3<T> {
    let x = generator(k);
    let x2 = x * x;
    let w2 = T::one() - k * k;
    let (f1, f2) = if (w2 * l * l).abs() < c(1e-6) {
        let q = w2 * l * l;
        let l2 = l * l;
        (
            l * (T::one() + q / c(6.0) + q * q / c(120.0)),
            l2 * (c::<T>(0.5) + q / c(24.0) + q * q / c(720.0)),
        )
    } else if w2 > T::zero() {
        let w = w2.sqrt();
        ((w * l).sinh() / w, ((w * l).cosh() - T::one()) / w2)
    } else {
        let w = (-w2).sqrt();
        ((w * l).sin() / w, (T::one() - (w * l).cos()) / (-w2))
    };
    Mat3::identity() + x.scale(f1) + x2.scale(f2)
}

/// Length of a full circle of curvature `k`, `2 pi / sqrt(k^2 - 1)`.
pub fn circle_length<T: Real>(k: T) -> Option<T> {
    (k.abs() > T::one()).then(|| c::<T>(2.0) * T::PI() / (k * k - T::one()).sqrt())
}

fn lorentz_inverse<T: Real>(m: &Mat3<T>) -> Mat3<T> {
    let s = Mat3::lorentz_metric();
    s * m.transpose() * s
}

/// Two curvature values strictly inside `b` used for the arcs.
pub fn arc_curvatures<T: Real>(b: &CurvatureInterval<T>) -> (T, T) {
    let tenth = c::<T>(0.1);
    let one = T::one();
    let two = c::<T>(2.0);
    match (b.lo.is_finite(), b.hi.is_finite()) {
        (true, true) => {
            let gap = b.hi - b.lo;
            (b.lo + tenth * gap, b.hi - tenth * gap)
        }
        (true, false) => (b.lo + tenth * one.max(b.lo.abs()), two * one.max(b.lo.abs()) + one),
        (false, true) => (-(two * one.max(b.hi.abs()) + one), b.hi - tenth * one.max(b.hi.abs())),
        (false, false) => (-two, two),
    }
}

/// Halton sequence point `i` in the given base.
fn halton(mut i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

const PRIMES: [usize; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

struct Shooter<T> {
    kappas: Vec<T>,
    target: Mat3<T>,
}

impl<T: Real> Shooter<T> {
    fn end(&self, lens: &[T]) -> (Mat3<T>, Vec<Mat3<T>>) {
        let mut p = Mat3::identity();
        let mut prefixes = Vec::with_capacity(lens.len());
        for (&k, &l) in self.kappas.iter().zip(lens) {
            p = p * arc_matrix(k, l);
            prefixes.push(p);
        }
        (p, prefixes)
    }

    fn residual(&self, e: &Mat3<T>) -> ([T; 3], T) {
        let r = lorentz_inverse(e) * self.target;
        let v = [r.0[1][0], r.0[2][0], r.0[2][1]];
        (v, r.max_abs_diff(&Mat3::identity()))
    }

    /// Rows: residual components; columns: arc lengths.
    fn jacobian(&self, e: &Mat3<T>, prefixes: &[Mat3<T>]) -> Vec<[T; 3]> {
        let e_inv = lorentz_inverse(e);
        prefixes
            .iter()
            .zip(&self.kappas)
            .map(|(p, &k)| {
                let d = (e_inv * *p * generator(k) * lorentz_inverse(p) * self.target).scale(-T::one());
                [d.0[1][0], d.0[2][0], d.0[2][1]]
            })
            .collect()
    }

    /// Damped minimum-norm Gauss-Newton on the arc lengths.
    fn solve(&self, mut lens: Vec<T>, iters: usize) -> Option<Vec<T>> {
        let tol = crate::models::tol::<T>(1e-12);
        let (mut e, mut pre) = self.end(&lens);
        let (mut r, mut err) = self.residual(&e);
        let mut mu = c::<T>(1e-6);
        for _ in 0..iters {
            if err < tol {
                return Some(lens);
            }
            let jac = self.jacobian(&e, &pre);
            // (J J^T + mu I) y = r, then step = -J^T y.
            let mut a = [[T::zero(); 3]; 3];
            for col in &jac {
                for i in 0..3 {
                    for j in 0..3 {
                        a[i][j] = a[i][j] + col[i] * col[j];
                    }
                }
            }
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = row[i] + mu;
            }
            let Some(y) = solve3(&a, &r) else {
                mu = mu * c(10.0);
                continue;
            };
            let trial: Vec<T> = lens
                .iter()
                .zip(&jac)
                .map(|(&l, col)| (l - (col[0] * y[0] + col[1] * y[1] + col[2] * y[2])).max(T::zero()))
                .collect();
            let (e2, pre2) = self.end(&trial);
            let (r2, err2) = self.residual(&e2);
            let n_old = r.iter().fold(T::zero(), |acc, &x| acc + x * x);
            let n_new = r2.iter().fold(T::zero(), |acc, &x| acc + x * x);
            if n_new < n_old || err2 < err {
                lens = trial;
                e = e2;
                pre = pre2;
                r = r2;
                err = err2;
                mu = (mu / c(3.0)).max(c(1e-12));
            } else {
                mu = mu * c(4.0);
                if mu > c(1e8) {
                    return None;
                }
            }
        }
        (err < tol).then_some(lens)
    }
}

fn solve3<T: Real>(a: &[[T; 3]; 3], b: &[T; 3]) -> Option<[T; 3]> {
    let m = Mat3(*a);
    let det = m.det();
    if !(det.abs() > T::min_positive_value()) || !det.is_finite() {
        return None;
    }
    let mut out = [T::zero(); 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut mk = m;
        for i in 0..3 {
            mk.0[i][k] = b[i];
        }
        *o = mk.det() / det;
    }
    Some(out)
}

/// Builds the curve for a chain of arcs, dropping empty arcs and merging
/// neighbours of equal curvature.
pub fn arc_chain<T: Real>(
    frame0: Isometry<T>,
    arcs: &[(T, T)],
    bounds: CurvatureInterval<T>,
) -> Result<IntrinsicCurve<T>> {
    let eps = crate::models::tol::<T>(1e-12);
    let mut merged: Vec<(T, T)> = Vec::new();
    for &(k, l) in arcs {
        if l <= eps {
            continue;
        }
        match merged.last_mut() {
            Some(last) if last.0 == k => last.1 = last.1 + l,
            _ => merged.push((k, l)),
        }
    }
    if merged.is_empty() {
        return Err(Error::NonPositive(0.0));
    }
    let total = merged.iter().fold(T::zero(), |a, p| a + p.1);
    let mut grid = vec![T::zero()];
    let mut kappa = vec![merged[0].0];
    let mut acc = T::zero();
    for (i, &(k, l)) in merged.iter().enumerate() {
        acc = acc + l;
        let t = if i + 1 == merged.len() { T::one() } else { acc / total };
        grid.push(t);
        kappa.push(k);
        if i + 1 < merged.len() {
            grid.push(t);
            kappa.push(merged[i + 1].0);
        }
    }
    let sigma = vec![total; grid.len()];
    IntrinsicCurve::from_decoded(frame0, grid, &sigma, &kappa, bounds)
}

/// All successful arc chains from `u` to `v` found within the budget, in
/// search order, stopping after `want` successes.
pub fn steer_candidates<T: Real>(
    u: &ModelVector<T>,
    v: &ModelVector<T>,
    b: &CurvatureInterval<T>,
    opts: &SteerOptions,
    want: usize,
) -> Result<Vec<IntrinsicCurve<T>>> {
    if !(b.lo < -T::one() || b.hi > T::one()) {
        return Err(Error::Mismatch("steering needs a bound of absolute value above 1".into()));
    }
    let q0 = isometry_from_unit_tangent(u)?;
    let q1 = isometry_from_unit_tangent(v)?;
    let target = *q0.inverse().compose(&q1).matrix();
    let (k_lo, k_hi) = arc_curvatures(b);
    let mut found = Vec::new();

    if target.max_abs_diff(&Mat3::identity()) < crate::models::tol::<T>(1e-12) {
        let k = if k_hi.abs() > T::one() { k_hi } else { k_lo };
        let len = circle_length(k).expect("one arc curvature is a circle");
        found.push(arc_chain(q0, &[(k, len)], *b)?);
        return Ok(found);
    }

    let dist = crate::models::hyperboloid_distance(&target.column(0), &crate::models::Vec3::e0());
    let free_scale = c::<T>(2.0) * dist + c(2.0);
    let mut attempts = 0usize;
    let mut seed = 1usize;
    'outer: while attempts < opts.budget {
        for n in 3..=opts.max_arcs.max(3) {
            for first_hi in [true, false] {
                if attempts >= opts.budget {
                    break 'outer;
                }
                attempts += 1;
                let kappas: Vec<T> =
                    (0..n).map(|j| if (j % 2 == 0) == first_hi { k_hi } else { k_lo }).collect();
                let lens: Vec<T> = kappas
                    .iter()
                    .enumerate()
                    .map(|(j, &k)| {
                        let h = c::<T>(0.05 + 0.9 * halton(seed, PRIMES[j % PRIMES.len()]));
                        circle_length(k).unwrap_or(free_scale) * h
                    })
                    .collect();
                seed += 1;
                let shooter = Shooter { kappas: kappas.clone(), target };
                let Some(mut sol) = shooter.solve(lens, opts.max_iterations) else {
                    continue;
                };
                for (l, &k) in sol.iter_mut().zip(&kappas) {
                    if let Some(cl) = circle_length(k) {
                        *l = *l % cl;
                    }
                }
                let arcs: Vec<(T, T)> = kappas.iter().copied().zip(sol).collect();
                let Ok(curve) = arc_chain(q0, &arcs, *b) else { continue };
                let end = curve.end_frame()?;
                let gap = end.max_abs_diff(q1.matrix());
                if gap < crate::models::tol::<T>(1e-7) * T::one().max(q1.matrix().0[0][0]) {
                    found.push(curve);
                    if found.len() >= want {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(found)
}

/// A chain of arcs at two curvatures inside `b` joining `u` to `v`.
pub fn steer<T: Real>(
    u: &ModelVector<T>,
    v: &ModelVector<T>,
    b: &CurvatureInterval<T>,
    opts: &SteerOptions,
) -> Result<IntrinsicCurve<T>> {
    steer_candidates(u, v, b, opts, 1)?.into_iter().next().ok_or(Error::SteeringFailed)
}

/// Appends `|n|` full circles of curvature `kappa_loop` at the end of `c`,
/// shifting the total turning by `2 pi |n| sign(kappa_loop)`.
pub fn loop_concat<T: Real>(c: &IntrinsicCurve<T>, n: i64, kappa_loop: T) -> Result<IntrinsicCurve<T>> {
    if n == 0 {
        return Ok(c.clone());
    }
    let Some(len) = circle_length(kappa_loop) else {
        return Err(Error::InadmissibleLoop(kappa_loop.as_f64()));
    };
    if !c.bounds().contains(kappa_loop) {
        return Err(Error::InadmissibleLoop(kappa_loop.as_f64()));
    }
    let end = Isometry::from_matrix(crate::models::reorthonormalize(&c.end_frame()?))?;
    let loops = constant_from_frame(end, kappa_loop, len * T::from_usize_lossy(n.unsigned_abs() as usize), *c.bounds())?;
    concat(c, &loops)
}
