//! SVG figures and CSV traces of sampled curves.

use std::fmt::Write;

use num_complex::Complex;

use hypcurve_core::curves::{alpha_pm_frame, SampledCurve, Side};
use hypcurve_core::models::ModelId;

use crate::error::{CliError, CliResult};

const SIZE: f64 = 1000.0;
const MARGIN: f64 = 50.0;
const DISK_RADIUS: f64 = 450.0;

/// Maps chart coordinates into the viewport, with `y` pointing up.
struct Viewport {
    scale: f64,
    origin: (f64, f64),
}

impl Viewport {
    fn map(&self, z: Complex<f64>) -> (f64, f64) {
        (self.origin.0 + self.scale * z.re, self.origin.1 - self.scale * z.im)
    }
}

fn viewport(model: ModelId, pts: &[Complex<f64>]) -> Viewport {
    let span = SIZE - 2.0 * MARGIN;
    match model {
        ModelId::Disk => Viewport { scale: DISK_RADIUS, origin: (SIZE / 2.0, SIZE / 2.0) },
        ModelId::HalfPlane => {
            let (lo, hi) = bounds(pts.iter().map(|z| z.re));
            let top = pts.iter().map(|z| z.im).fold(0.0, f64::max);
            let width = (hi - lo).max(top).max(1e-9);
            let scale = span / width;
            let mid = 0.5 * (lo + hi);
            Viewport { scale, origin: (SIZE / 2.0 - scale * mid, SIZE - MARGIN) }
        }
        _ => {
            let (lo, hi) = bounds(pts.iter().map(|z| z.im));
            let scale = (span / std::f64::consts::PI).min(span / (hi - lo).max(1e-9));
            let mid = 0.5 * (lo + hi);
            Viewport { scale, origin: (MARGIN, SIZE / 2.0 + scale * mid) }
        }
    }
}

fn bounds(it: impl Iterator<Item = f64>) -> (f64, f64) {
    it.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)))
}

/// Renders the trace in the disk, half-plane or Mercator chart.
///
/// With `alpha` set, the endpoints at infinity of the normal geodesic rays
/// at both ends of the curve are marked on the boundary.
pub fn svg(sc: &SampledCurve<f64>, model: ModelId, alpha: bool) -> CliResult<String> {
    if model == ModelId::Hyperboloid {
        return Err(CliError::Validation("the hyperboloid model cannot be rendered".into()));
    }
    let pts = sc.chart_points(model);
    let vp = viewport(model, &pts);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="1000" height="1000" viewBox="0 0 1000 1000">"#
    );
    let _ = writeln!(out, r#"<rect width="1000" height="1000" fill="white"/>"#);
    let edge = r##"fill="none" stroke="#444444" stroke-width="1""##;
    match model {
        ModelId::Disk => {
            let _ = writeln!(out, r#"<circle cx="500.000" cy="500.000" r="{DISK_RADIUS:.3}" {edge}/>"#);
        }
        ModelId::HalfPlane => {
            let y = vp.origin.1;
            let _ = writeln!(out, r#"<line x1="0.000" y1="{y:.3}" x2="1000.000" y2="{y:.3}" {edge}/>"#);
        }
        _ => {
            for x in [0.0, std::f64::consts::PI] {
                let px = vp.origin.0 + vp.scale * x;
                let _ = writeln!(out, r#"<line x1="{px:.3}" y1="0.000" x2="{px:.3}" y2="1000.000" {edge}/>"#);
            }
        }
    }
    let mut coords = String::new();
    for (i, z) in pts.iter().enumerate() {
        let (x, y) = vp.map(*z);
        if i > 0 {
            coords.push(' ');
        }
        let _ = write!(coords, "{x:.3},{y:.3}");
    }
    let _ = writeln!(out, r##"<polyline fill="none" stroke="#1f4e9c" stroke-width="2" points="{coords}"/>"##);
    if alpha && model == ModelId::Disk && !sc.is_empty() {
        for frame in [sc.first_frame(), sc.last_frame()] {
            for (side, colour) in [(Side::Plus, "#c0392b"), (Side::Minus, "#27ae60")] {
                let a = alpha_pm_frame(frame, side).angle;
                let (x, y) = vp.map(Complex::from_polar(1.0, a));
                let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="6.000" fill="{colour}"/>"#);
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Trace with columns `t,x0,x1,x2,kappa,sigma`; hyperboloid coordinates.
pub fn csv(sc: &SampledCurve<f64>) -> String {
    let mut out = String::from("t,x0,x1,x2,kappa,sigma\n");
    for i in 0..sc.len() {
        let p = sc.point(i);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            sc.params()[i],
            p[0],
            p[1],
            p[2],
            sc.curvatures()[i],
            sc.speeds()[i]
        );
    }
    out
}
