//! Independent oracles for the homotopy constructions.

use std::f64::consts::{FRAC_PI_2, PI};

use hypcurve_core::curves::{frame_vector, total_turning, CurvatureInterval, SampledCurve};
use hypcurve_core::homotopy::{loop_concat, osculating_circle_h, steer, SteerOptions};
use hypcurve_core::interp::{linspace, trapezoid};
use hypcurve_core::models::{ModelId, ModelVector};
use num_complex::Complex;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn coth(x: f64) -> f64 {
    x.tanh().recip()
}

pub fn arccoth(x: f64) -> f64 {
    0.5 * ((x + 1.0) / (x - 1.0)).ln()
}

pub fn end_gap(sc: &SampledCurve<f64>, v: &ModelVector<f64>) -> f64 {
    let (p, t) = v.to_hyperboloid().unwrap();
    let m = sc.last_frame();
    m.column(0).max_abs_diff(&p).max(m.column(1).max_abs_diff(&t))
}

/// Euclidean centre and radius of the osculating circle at node `i`.
pub fn osculating_at(sc: &SampledCurve<f64>, i: usize) -> (Complex<f64>, f64) {
    let v = sc.unit_tangent(i, ModelId::HalfPlane);
    let z = sc.chart_points(ModelId::HalfPlane)[i];
    osculating_circle_h(z, v.chart_dir().unwrap(), sc.curvatures()[i]).unwrap()
}

// Slope ODE for graphs of strip curvature `k`, written out independently.
pub fn slope_rhs(k: f64, x: f64, z: f64) -> f64 {
    let w = 1.0 + z * z;
    w / x.sin() * (z * x.cos() + k * w.sqrt())
}

pub fn rk4_step(k: f64, x: f64, z: f64, h: f64) -> f64 {
    let k1 = slope_rhs(k, x, z);
    let k2 = slope_rhs(k, x + h / 2.0, z + h / 2.0 * k1);
    let k3 = slope_rhs(k, x + h / 2.0, z + h / 2.0 * k2);
    let k4 = slope_rhs(k, x + h, z + h * k3);
    z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Profile with strip curvature `ks[j]` between `cuts[j-1]` and `cuts[j]`.
pub fn piecewise_profile(xs: &[f64], alpha: f64, ks: &[f64], cuts: &[f64]) -> Vec<f64> {
    let piece = |x: f64| cuts.iter().filter(|&&c| c <= x).count();
    let mut f = vec![alpha];
    for i in 0..xs.len() - 1 {
        let (x0, x1) = (xs[i], xs[i + 1]);
        let mut z = f[i];
        let mut x = x0;
        for &c in cuts.iter().filter(|&&c| c > x0 && c < x1) {
            z = rk4_step(ks[piece(x)], x, z, c - x);
            x = c;
        }
        // Substeps keep the oracle well below the tolerances checked here.
        let m = 4;
        let h = (x1 - x) / m as f64;
        let k = ks[piece(x)];
        for _ in 0..m {
            z = rk4_step(k, x, z, h);
            x += h;
        }
        f.push(z);
    }
    f
}

pub fn bisect(mut lo: f64, mut hi: f64, mut f: impl FnMut(f64) -> f64) -> Option<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..70 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (fhi > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

pub const ALPHA: f64 = 0.1;
pub const BANDS: (f64, f64) = (-0.6, 0.6);

pub fn profile_grid(n: usize) -> Vec<f64> {
    linspace(FRAC_PI_2 - 0.4, FRAC_PI_2 + 0.6, n)
}

/// Three-piece profiles sharing `alpha`, final slope and area with the
/// reference profile `(k_a, k_b, k_c)` cut at `(m1, m2)`.
pub fn profiles_with_shared_data(rng: &mut ChaCha8Rng, xs: &[f64], count: usize) -> Vec<Vec<f64>> {
    let (a, b) = (xs[0], xs[xs.len() - 1]);
    let span = b - a;
    let reference = ([0.3, -0.2, 0.25], [a + 0.3 * span, a + 0.65 * span]);
    let f_ref = piecewise_profile(xs, ALPHA, &reference.0, &reference.1);
    let beta = f_ref[f_ref.len() - 1];
    let target = trapezoid(xs, &f_ref);
    let mut out = vec![f_ref];
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        assert!(attempts < 50 * count, "could not build profiles with shared data");
        let ka = reference.0[0] + rng.gen_range(-0.12..0.12);
        let kb = reference.0[1] + rng.gen_range(-0.12..0.12);
        let m1 = reference.1[0] + rng.gen_range(-0.1..0.1) * span;
        let solve_kc = |m2: f64| {
            bisect(-0.45, 0.45, |kc| piecewise_profile(xs, ALPHA, &[ka, kb, kc], &[m1, m2]).last().unwrap() - beta)
        };
        let area_gap = |m2: f64| match solve_kc(m2) {
            Some(kc) => trapezoid(xs, &piecewise_profile(xs, ALPHA, &[ka, kb, kc], &[m1, m2])) - target,
            None => f64::NAN,
        };
        let probes = linspace(m1 + 0.05 * span, b - 0.05 * span, 12);
        let values: Vec<f64> = probes.iter().map(|&m| area_gap(m)).collect();
        let Some(j) = (0..probes.len() - 1)
            .find(|&j| values[j].is_finite() && values[j + 1].is_finite() && values[j].signum() != values[j + 1].signum())
        else {
            continue;
        };
        let Some(m2) = bisect(probes[j], probes[j + 1], |m| {
            let g = area_gap(m);
            if g.is_nan() { values[j] } else { g }
        }) else {
            continue;
        };
        let kc = solve_kc(m2).unwrap();
        let f = piecewise_profile(xs, ALPHA, &[ka, kb, kc], &[m1, m2]);
        assert!((trapezoid(xs, &f) - target).abs() < 1e-10);
        out.push(f);
    }
    out
}

pub fn lipschitz(xs: &[f64], f: &[f64]) -> f64 {
    (0..xs.len() - 1).fold(0.0, |m: f64, i| m.max(((f[i + 1] - f[i]) / (xs[i + 1] - xs[i])).abs()))
}

pub fn disjoint_pair(rng: &mut ChaCha8Rng, b: &CurvatureInterval<f64>) -> Option<(SampledCurve<f64>, SampledCurve<f64>)> {
    let u = super::random_tangent(rng, ModelId::HalfPlane);
    let mut c0 = super::random_chain_from(rng, &u, b, 3, 0.5..3.0);
    let v = frame_vector(&c0.end_frame().unwrap());
    let mut c1 = steer(&u, &v, b, &SteerOptions::default()).ok()?;
    let gap = total_turning(&c0.integrate().unwrap()).unwrap() - total_turning(&c1.integrate().unwrap()).unwrap();
    let n = (gap / (2.0 * PI)).round() as i64;
    if n > 0 {
        c1 = loop_concat(&c1, n, coth(1.0)).unwrap();
    } else if n < 0 {
        c0 = loop_concat(&c0, -n, coth(1.0)).unwrap();
    }
    Some((c0.integrate().unwrap(), c1.integrate().unwrap()))
}
