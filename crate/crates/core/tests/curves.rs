mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use hypcurve_core::curves::{
    alpha_pm_lifted, concat, constant_curve, curvature_det, h_decode, h_encode, halfplane_frames_at,
    halfplane_vector, hk_decode, hk_encode, mercator_curvature, mercator_graph, total_turning, CurvatureInterval,
    IntrinsicCurve, Side,
};
use hypcurve_core::models::{
    distance, hyperboloid_distance, isometry_from_unit_tangent, lorentz_product, Isometry, Mat3, ModelId,
    ModelPoint, ModelVector, Vec3,
};
use num_complex::Complex;
use proptest::prelude::*;
use rand::Rng;

fn start() -> ModelVector<f64> {
    ModelVector::ambient(Vec3::e0(), Vec3::e1()).unwrap()
}

fn coth(x: f64) -> f64 {
    x.tanh().recip()
}

#[test]
fn speed_encoding_examples() {
    assert_eq!(h_encode(1.0).unwrap(), 0.0);
    assert_eq!(h_decode(0.0), 1.0);
    let mut rng = common::rng(3);
    for _ in 0..100 {
        let t: f64 = 10f64.powf(rng.gen_range(-3.0..3.0));
        assert!((h_decode(h_encode(t).unwrap()) - t).abs() <= 1e-12 * t);
    }
}

#[test]
fn curvature_encoding_examples() {
    assert_eq!(hk_encode(0.0, -1.0, 1.0).unwrap(), 0.0);
    for t in [-5.0, -0.3, 0.0, 2.5] {
        assert_eq!(hk_encode(t, f64::NEG_INFINITY, f64::INFINITY).unwrap(), t);
    }
}

proptest! {
    #[test]
    fn curvature_encoding_round_trips(a in -3.0..3.0f64, w in 0.01..5.0f64, s in 0.001..0.999f64, shape in 0usize..4) {
        let (lo, hi) = match shape {
            0 => (a, a + w),
            1 => (a, f64::INFINITY),
            2 => (f64::NEG_INFINITY, a),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        };
        let t = match shape {
            0 => a + w * s,
            1 => a + 10.0 * s,
            2 => a - 10.0 * s,
            _ => 20.0 * s - 10.0,
        };
        let back = hk_decode(hk_encode(t, lo, hi).unwrap(), lo, hi);
        prop_assert!((back - t).abs() < 1e-10 * (1.0 + t.abs()), "{t} -> {back} on ({lo}, {hi})");
    }
}

#[test]
fn unit_speed_geodesic() {
    let sc = constant_curve(&start(), 0.0, 2.0).unwrap().integrate().unwrap();
    for i in 0..sc.len() {
        let s = 2.0 * sc.params()[i];
        let want = Vec3::new(s.cosh(), s.sinh(), 0.0);
        assert!(sc.point(i).max_abs_diff(&want) < 1e-9 * s.cosh());
    }
    assert_eq!(sc.curvatures().iter().copied().fold(0.0, f64::max), 0.0);
}

#[test]
fn circle_closes_and_turns_once() {
    let k = coth(1.0);
    let sc = constant_curve(&start(), k, 2.0 * PI * 1f64.sinh()).unwrap().integrate().unwrap();
    let (a, b) = (sc.first_frame(), sc.last_frame());
    assert!(hyperboloid_distance(&a.column(0), &b.column(0)) < 1e-6);
    assert!(a.column(1).max_abs_diff(&b.column(1)) < 1e-6);
    assert!((total_turning(&sc).unwrap() - 2.0 * PI).abs() < 1e-6);
}

#[test]
fn constant_curvature_equidistance() {
    for r in [0.25f64, 0.5, 1.0, 2.0] {
        // Circle: constant distance to the centre on the normal side.
        let sc = constant_curve(&start(), coth(r), 3.0).unwrap().integrate().unwrap();
        let centre = Vec3::e0() * r.cosh() + Vec3::e2() * r.sinh();
        for i in 0..sc.len() {
            assert!((hyperboloid_distance(&sc.point(i), &centre) - r).abs() < 1e-6);
        }
        // Hypercircle: constant distance to the geodesic through the foot point.
        let sc = constant_curve(&start(), r.tanh(), 3.0).unwrap().integrate().unwrap();
        let normal = Vec3::e0() * r.sinh() + Vec3::e2() * r.cosh();
        for i in 0..sc.len() {
            let d = lorentz_product(&sc.point(i), &normal).abs().asinh();
            assert!((d - r).abs() < 1e-6);
        }
    }
}

#[test]
fn curves_with_small_curvature_never_close() {
    for k in [-1.0, -0.6, 0.0, 0.4, 1.0] {
        let sc = constant_curve(&start(), k, 12.0).unwrap().integrate().unwrap();
        let p0 = sc.point(0);
        let d: Vec<f64> = (0..sc.len()).map(|i| hyperboloid_distance(&p0, &sc.point(i))).collect();
        assert!(d.windows(2).all(|w| w[1] > w[0]), "kappa = {k}");
    }
}

#[test]
fn frames_stay_in_the_group() {
    let mut rng = common::rng(4);
    let s = Mat3::<f64>::lorentz_metric();
    for _ in 0..10 {
        let b = CurvatureInterval::new(-3.0, 3.0).unwrap();
        let sc = common::random_curve(&mut rng, &b, 6).integrate().unwrap();
        for f in sc.frames() {
            let m = f.matrix();
            assert!((m.transpose() * s * *m).max_abs_diff(&s) < 1e-9);
        }
    }
}

#[test]
fn reconstruction_recovers_speed_and_curvature() {
    let mut rng = common::rng(5);
    let b = CurvatureInterval::new(-2.0, 2.5).unwrap();
    let h = 1e-3;
    for _ in 0..5 {
        let curve = common::random_curve(&mut rng, &b, 5);
        let g = curve.grid().to_vec();
        for w in g.windows(2) {
            if w[1] - w[0] < 10.0 * h {
                continue;
            }
            let t = 0.5 * (w[0] + w[1]);
            let p = common::points_of(&curve.frames_at(&common::stencil(t, h)).unwrap());
            let (sigma, kappa) = curve.eval(t);
            assert!((common::fd_speed(&p, h) - sigma).abs() < 1e-6 * sigma.max(1.0));
            assert!((common::fd_curvature(&p, h) - kappa).abs() < 1e-6 * (1.0 + kappa.abs()));
        }
    }
}

#[test]
fn sampled_circle_curvature_by_differences() {
    let k = coth(1.0);
    let curve = constant_curve(&start(), k, 2.0 * PI * 1f64.sinh()).unwrap();
    let sc = curve.integrate().unwrap();
    let h = sc.params()[1] - sc.params()[0];
    for i in [3, 50, 100] {
        let p = [sc.point(i - 2), sc.point(i - 1), sc.point(i), sc.point(i + 1), sc.point(i + 2)];
        assert!((common::fd_curvature(&p, h) - k).abs() < 1e-5);
        let (g, dg) = (sc.point(i), (sc.point(i + 1) - sc.point(i - 1)) * (0.5 / h));
        let ddg = (sc.point(i + 1) - sc.point(i) * 2.0 + sc.point(i - 1)) * (1.0 / (h * h));
        assert!((curvature_det(&g, &dg, &ddg).unwrap() - k).abs() < 1e-3);
    }
}

#[test]
fn horocycle_curvature_and_boundary_point() {
    let sc = constant_curve(&start(), 1.0, 6.0).unwrap().integrate().unwrap();
    let plus = alpha_pm_lifted(&sc, Side::Plus).unwrap();
    assert!(plus.iter().all(|a| (a - plus[0]).abs() < 1e-9));
    let minus = alpha_pm_lifted(&sc, Side::Minus).unwrap();
    assert!(minus.windows(2).all(|w| w[1] != w[0]));
}

#[test]
fn boundary_maps_are_monotone() {
    let mut rng = common::rng(6);
    for (b, side) in [
        (CurvatureInterval::new(-3.0, 0.95).unwrap(), Side::Plus),
        (CurvatureInterval::new(-0.95, 3.0).unwrap(), Side::Minus),
    ] {
        for _ in 0..25 {
            let sc = common::random_curve(&mut rng, &b, 4).integrate().unwrap();
            let a = alpha_pm_lifted(&sc, side).unwrap();
            let steps: Vec<f64> = a.windows(2).map(|w| w[1] - w[0]).collect();
            let positive = steps.iter().all(|&d| d > 0.0);
            let negative = steps.iter().all(|&d| d < 0.0);
            assert!(positive || negative, "{side:?} not monotone");
        }
    }
}

#[test]
fn backends_agree() {
    let mut rng = common::rng(7);
    let b = CurvatureInterval::new(-2.0, 2.0).unwrap();
    for _ in 0..25 {
        let curve = common::random_curve(&mut rng, &b, 5);
        let end = curve.end_frame().unwrap();
        let m = halfplane_frames_at(&curve, &[1.0]).unwrap()[0];
        let (p, t) = halfplane_vector(&m).unwrap().to_hyperboloid().unwrap();
        let scale = end.column(0).euclidean_norm();
        assert!(p.max_abs_diff(&end.column(0)) < 1e-7 * scale);
        assert!(t.max_abs_diff(&end.column(1)) < 1e-7 * scale);
    }
}

#[test]
fn mercator_curvature_matches_hyperboloid_curvature() {
    // y(x) = c - (0.1 / 3) cos(3x), so f = 0.1 sin(3x).
    let y = |x: f64| -(0.1 / 3.0) * (3.0 * x).cos();
    let point = |x: f64| ModelPoint::mercator(x, y(x)).unwrap().to_hyperboloid().unwrap();
    let h = 1e-3;
    for k in 0..10 {
        let x = 1.1 + 0.1 * k as f64;
        let p = [point(x - 2.0 * h), point(x - h), point(x), point(x + h), point(x + 2.0 * h)];
        let kappa_h = common::fd_curvature(&p, h);
        let kappa_m = mercator_curvature(x, 0.1 * (3.0 * x).sin(), 0.3 * (3.0 * x).cos());
        assert!((kappa_m + kappa_h).abs() < 1e-6, "{kappa_m} vs {kappa_h}");
    }
    assert_eq!(mercator_curvature(1.0, 0.0, 0.0), 0.0);
}

#[test]
fn horocycle_graph_has_unit_curvature() {
    let u = ModelVector::planar(ModelPoint::mercator(FRAC_PI_2, 0.0).unwrap(), Complex::new(1.0, 0.0)).unwrap();
    let sc = constant_curve(&u, 1.0, 0.8).unwrap().integrate().unwrap();
    let mut xs = Vec::new();
    let mut fs = Vec::new();
    for i in 0..sc.len() {
        let v = sc.unit_tangent(i, ModelId::Mercator);
        let d = v.chart_dir().unwrap();
        xs.push(v.base.chart().unwrap().re);
        fs.push(d.im / d.re);
    }
    for i in 5..xs.len() - 5 {
        let df = (fs[i + 1] - fs[i - 1]) / (xs[i + 1] - xs[i - 1]);
        let k = mercator_curvature(xs[i], fs[i], df);
        assert!((k + 1.0).abs() < 1e-4, "{k}");
    }
}

#[test]
fn graph_of_zero_slope_is_a_meridian() {
    let xs: Vec<f64> = (0..33).map(|i| 1.0 + i as f64 / 32.0).collect();
    let sc = mercator_graph(&xs, &vec![0.0; 33], 0.0).unwrap();
    assert!(sc.curvatures().iter().all(|&k| k == 0.0));
    let f: Vec<f64> = xs.iter().map(|x| 0.2 * x).collect();
    let sc = mercator_graph(&xs, &f, 0.0).unwrap();
    let d = sc.unit_tangent(32, ModelId::Mercator).chart_dir().unwrap();
    assert!((d.im / d.re - f[32]).abs() < 1e-12);
}

#[test]
fn turning_examples() {
    let up = ModelVector::planar(ModelPoint::half_plane(Complex::<f64>::i()).unwrap(), Complex::i()).unwrap();
    let ray = constant_curve(&up, 0.0, 3.0).unwrap().integrate().unwrap();
    assert!(total_turning(&ray).unwrap().abs() < 1e-12);

    let mut rng = common::rng(8);
    let b = CurvatureInterval::new(-2.0, 2.0).unwrap();
    let c = common::random_curve(&mut rng, &b, 4);
    let end = hypcurve_core::curves::frame_vector(&c.end_frame().unwrap());
    let circle = constant_curve(&end, coth(1.0), 2.0 * PI * 1f64.sinh()).unwrap();
    let joined = concat(&c, &circle).unwrap();
    let before = total_turning(&c.integrate().unwrap()).unwrap();
    let after = total_turning(&joined.integrate().unwrap()).unwrap();
    assert!((after - before - 2.0 * PI).abs() < 1e-6);
}

#[test]
fn aligned_geodesics_concatenate() {
    let a = constant_curve(&start(), 0.0, 1.0).unwrap();
    let m = a.end_frame().unwrap();
    let b = IntrinsicCurve::from_decoded(
        Isometry::from_matrix(m).unwrap(),
        vec![0.0, 1.0],
        &[2.0, 2.0],
        &[0.0, 0.0],
        *a.bounds(),
    )
    .unwrap();
    let c = concat(&a, &b).unwrap();
    assert!((c.length() - 3.0).abs() < 1e-12);
    let end = c.end_frame().unwrap().column(0);
    assert!(end.max_abs_diff(&Vec3::new(3f64.cosh(), 3f64.sinh(), 0.0)) < 1e-8);
    let p = ModelPoint::hyperboloid(end).unwrap();
    assert!((distance(&ModelPoint::hyperboloid(Vec3::e0()).unwrap(), &p).unwrap() - 3.0).abs() < 1e-9);
    let _ = isometry_from_unit_tangent(&start());
}
