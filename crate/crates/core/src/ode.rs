//! Adaptive Dormand-Prince 5(4) integration of `y' = f(t, y)` on fixed-size
//! states, with an optional projection applied after every accepted step.

use crate::error::{Error, Result};
use crate::scalar::{c, Real};

#[derive(Clone, Copy, Debug)]
pub struct OdeOptions<T> {
    pub rtol: T,
    pub atol: T,
    pub initial_step: T,
    pub max_steps: usize,
    /// Treat step-size underflow as a stop instead of an error.
    pub stop_on_underflow: bool,
}

impl<T: Real> Default for OdeOptions<T> {
    fn default() -> Self {
        let tol = crate::models::tol::<T>(1e-10);
        Self { rtol: tol, atol: tol, initial_step: c(1e-3), max_steps: 2_000_000, stop_on_underflow: false }
    }
}

/// Result of an integration run. `values[i]` is the state at `outputs[i]`;
/// when `stopped` is `Some(k)`, the stop condition fired before `outputs[k]`
/// and only the first `k` values are present.
#[derive(Clone, Debug)]
pub struct OdeRun<T, const N: usize> {
    pub values: Vec<[T; N]>,
    pub stopped: Option<usize>,
    /// Last accepted state.
    pub last: [T; N],
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<T: Real, const N: usize>(y: &[T; N], terms: &[(f64, &[T; N])], h: T) -> [T; N] {
    let mut out = *y;
    for (coef, k) in terms {
        let ch = c::<T>(*coef) * h;
        for i in 0..N {
            out[i] = out[i] + ch * k[i];
        }
    }
    out
}

/// Integrates from `t0` through every time in `outputs` (monotone in the
/// direction of integration, first entry may equal `t0`). Steps are clipped
/// so every output time is hit exactly.
///
/// `stop` is checked on each accepted state; returning `true` ends the run
/// early (used for blow-up detection).
pub fn integrate<T, const N: usize, F, P, S>(
    f: F,
    t0: T,
    y0: [T; N],
    outputs: &[T],
    opts: &OdeOptions<T>,
    mut project: P,
    mut stop: S,
) -> Result<OdeRun<T, N>>
where
    T: Real,
    F: Fn(T, &[T; N]) -> [T; N],
    P: FnMut(&mut [T; N]),
    S: FnMut(T, &[T; N]) -> bool,
{
    let mut values = Vec::with_capacity(outputs.len());
    let Some(&last) = outputs.last() else {
        return Ok(OdeRun { values, stopped: None, last: y0 });
    };
    let dir = if last >= t0 { T::one() } else { -T::one() };
    let mut t = t0;
    let mut y = y0;
    let mut h = opts.initial_step.abs() * dir;
    let mut k1 = f(t, &y);
    let mut steps = 0usize;
    let five = c::<T>(5.0);
    let fifth = c::<T>(0.2);

    for (idx, &target) in outputs.iter().enumerate() {
        while (target - t) * dir > T::zero() {
            steps += 1;
            if steps > opts.max_steps {
                if opts.stop_on_underflow {
                    return Ok(OdeRun { values, stopped: Some(idx), last: y });
                }
                return Err(Error::StepUnderflow(t.as_f64()));
            }
            let remaining = target - t;
            let clipped = (h * dir) >= (remaining * dir);
            let step = if clipped { remaining } else { h };
            let min_step = T::epsilon() * c::<T>(16.0) * T::one().max(t.abs());
            if step.abs() < min_step && !clipped {
                if opts.stop_on_underflow {
                    return Ok(OdeRun { values, stopped: Some(idx), last: y });
                }
                return Err(Error::StepUnderflow(t.as_f64()));
            }

            let k2 = f(t + c::<T>(A21) * step, &axpy(&y, &[(A21, &k1)], step));
            let k3 = f(t + c::<T>(0.3) * step, &axpy(&y, &[(A31, &k1), (A32, &k2)], step));
            let k4 = f(t + c::<T>(0.8) * step, &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], step));
            let k5 = f(
                t + c::<T>(8.0 / 9.0) * step,
                &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], step),
            );
            let k6 = f(t + step, &axpy(&y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], step));
            let y_new = axpy(&y, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], step);
            let k7 = f(t + step, &y_new);

            let mut err = T::zero();
            let mut finite = true;
            for i in 0..N {
                let e = step
                    * (c::<T>(E1) * k1[i]
                        + c::<T>(E3) * k3[i]
                        + c::<T>(E4) * k4[i]
                        + c::<T>(E5) * k5[i]
                        + c::<T>(E6) * k6[i]
                        + c::<T>(E7) * k7[i]);
                let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
                let r = e.abs() / sc;
                finite &= r.is_finite();
                err = err.max(r);
            }
            if !finite {
                h = step * fifth;
                continue;
            }

            if err <= T::one() {
                t = if clipped { target } else { t + step };
                y = y_new;
                project(&mut y);
                k1 = f(t, &y);
                if stop(t, &y) {
                    return Ok(OdeRun { values, stopped: Some(idx), last: y });
                }
                let grow = if err == T::zero() { five } else { (c::<T>(0.9) * err.powf(-fifth)).min(five) };
                if !clipped {
                    h = step * grow;
                } else {
                    h = h.abs().max((step * grow).abs()) * dir;
                }
            } else {
                h = step * (c::<T>(0.9) * err.powf(-fifth)).max(fifth);
            }
        }
        values.push(y);
    }
    Ok(OdeRun { values, stopped: None, last: y })
}
