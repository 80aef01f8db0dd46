use crate::error::{Error, Result};
use crate::models::{isometry_from_unit_tangent, reorthonormalize, tol, Isometry, Mat3, ModelVector, Reflection};
use crate::ode::{self, OdeOptions};
use crate::scalar::{c, Real};

use super::encoding::{h_decode, h_encode, CurvatureInterval};
use super::sampled::SampledCurve;

/// Output spacing of [`IntrinsicCurve::integrate`], in units of
/// `arclength * (1 + |kappa|)`.
const OUTPUT_SPACING: f64 = 0.05;
const MIN_OUTPUT_NODES: usize = 64;

/// A curve given by its initial frame and encoded speed/curvature samples.
///
/// Between grid nodes the decoded speed and curvature are interpolated
/// linearly. A grid node may appear twice in a row; the two samples are the
/// one-sided limits of a jump.
#[derive(Clone, Debug, PartialEq)]
pub struct IntrinsicCurve<T> {
    frame0: Isometry<T>,
    grid: Vec<T>,
    sigma_hat: Vec<T>,
    kappa_hat: Vec<T>,
    bounds: CurvatureInterval<T>,
}

impl<T: Real> IntrinsicCurve<T> {
    pub fn new(
        frame0: Isometry<T>,
        grid: Vec<T>,
        sigma_hat: Vec<T>,
        kappa_hat: Vec<T>,
        bounds: CurvatureInterval<T>,
    ) -> Result<Self> {
        let n = grid.len();
        if n < 2 || sigma_hat.len() != n || kappa_hat.len() != n {
            return Err(Error::InvalidGrid("grid, sigma_hat and kappa_hat need equal length >= 2"));
        }
        if grid[0] != T::zero() || grid[n - 1] != T::one() {
            return Err(Error::InvalidGrid("grid must start at 0 and end at 1"));
        }
        for i in 1..n {
            if !(grid[i] >= grid[i - 1]) {
                return Err(Error::InvalidGrid("grid must be nondecreasing"));
            }
            if i >= 2 && grid[i] == grid[i - 2] {
                return Err(Error::InvalidGrid("a grid node may repeat at most once"));
            }
        }
        for i in 0..n {
            if !grid[i].is_finite() || !sigma_hat[i].is_finite() || !kappa_hat[i].is_finite() {
                return Err(Error::NonFinite(i));
            }
        }
        Ok(Self { frame0, grid, sigma_hat, kappa_hat, bounds })
    }

    /// Builds a curve from decoded speeds and curvatures.
    pub fn from_decoded(
        frame0: Isometry<T>,
        grid: Vec<T>,
        sigma: &[T],
        kappa: &[T],
        bounds: CurvatureInterval<T>,
    ) -> Result<Self> {
        let sigma_hat = sigma.iter().map(|&s| h_encode(s)).collect::<Result<Vec<_>>>()?;
        let kappa_hat = kappa.iter().map(|&k| bounds.encode(k)).collect::<Result<Vec<_>>>()?;
        Self::new(frame0, grid, sigma_hat, kappa_hat, bounds)
    }

    pub fn frame0(&self) -> &Isometry<T> {
        &self.frame0
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn sigma_hat(&self) -> &[T] {
        &self.sigma_hat
    }

    pub fn kappa_hat(&self) -> &[T] {
        &self.kappa_hat
    }

    pub fn bounds(&self) -> &CurvatureInterval<T> {
        &self.bounds
    }

    pub fn sigma(&self) -> Vec<T> {
        self.sigma_hat.iter().map(|&s| h_decode(s)).collect()
    }

    pub fn kappa(&self) -> Vec<T> {
        self.kappa_hat.iter().map(|&k| self.bounds.decode(k)).collect()
    }

    /// Same curve, with curvatures re-encoded for other bounds.
    pub fn with_bounds(&self, bounds: CurvatureInterval<T>) -> Result<Self> {
        Self::from_decoded(self.frame0, self.grid.clone(), &self.sigma(), &self.kappa(), bounds)
    }

    /// Curve whose decoded speed and curvature interpolate a sampled trace
    /// linearly between its nodes; the parameter is rescaled to `[0, 1]`.
    pub fn from_sampled(sc: &SampledCurve<T>, bounds: CurvatureInterval<T>) -> Result<Self> {
        let p = sc.params();
        let n = p.len();
        if n < 2 || !(p[n - 1] > p[0]) {
            return Err(Error::InvalidGrid("sampled trace has no extent"));
        }
        let span = p[n - 1] - p[0];
        let grid: Vec<T> = p.iter().map(|&t| if t == p[n - 1] { T::one() } else { (t - p[0]) / span }).collect();
        let sigma: Vec<T> = sc.speeds().iter().map(|&s| s * span).collect();
        Self::from_decoded(sc.frames()[0], grid, &sigma, sc.curvatures(), bounds)
    }

    /// Same data, started from another frame.
    pub fn with_frame0(&self, frame0: Isometry<T>) -> Self {
        Self { frame0, ..self.clone() }
    }

    /// Hyperbolic length, `int sigma dt`.
    pub fn length(&self) -> T {
        let s = self.sigma();
        let half = c::<T>(0.5);
        (1..self.grid.len()).fold(T::zero(), |acc, i| acc + (self.grid[i] - self.grid[i - 1]) * (s[i] + s[i - 1]) * half)
    }

    /// Decoded `(sigma, kappa)` at parameter `t`, taking the right-hand
    /// value at a jump.
    pub fn eval(&self, t: T) -> (T, T) {
        let (s, k) = (self.sigma(), self.kappa());
        let i = right_cell(&self.grid, t);
        cell_value(&self.grid, &s, &k, i, t)
    }

    /// The curve reflected by `r`: the image of the frame is re-oriented and
    /// the curvature changes sign.
    pub fn reflected(&self, r: &Reflection<T>) -> Result<Self> {
        let flip = Mat3::from_columns(
            &crate::models::Vec3::e0(),
            &crate::models::Vec3::e1(),
            &(-crate::models::Vec3::e2()),
        );
        let m = r.matrix() * *self.frame0.matrix() * flip;
        let frame0 = Isometry::from_matrix(reorthonormalize(&m))?;
        let kappa: Vec<T> = self.kappa().iter().map(|&k| -k).collect();
        Self::from_decoded(frame0, self.grid.clone(), &self.sigma(), &kappa, self.bounds.negated())
    }

    /// Frames `Phi(t)` at the requested parameters (nondecreasing, in `[0, 1]`).
    pub fn frames_at(&self, ts: &[T]) -> Result<Vec<Mat3<T>>> {
        let y0 = self.frame0.matrix().to_row_major();
        let states = self.solve_cells(ts, y0, frame_rhs, project_frame)?;
        Ok(states.iter().map(Mat3::from_row_major).collect())
    }

    /// Integrates `y' = rhs(y, sigma(t), kappa(t))` cell by cell and samples
    /// the state at `ts`.
    pub(crate) fn solve_cells<const N: usize>(
        &self,
        ts: &[T],
        y0: [T; N],
        rhs: fn(&[T; N], T, T) -> [T; N],
        project: fn(&mut [T; N]),
    ) -> Result<Vec<[T; N]>> {
        if ts.windows(2).any(|w| w[1] < w[0]) || ts.iter().any(|&t| !(t >= T::zero() && t <= T::one())) {
            return Err(Error::InvalidGrid("requested parameters must be sorted in [0, 1]"));
        }
        let (s, k) = (self.sigma(), self.kappa());
        let opts = OdeOptions::default();
        let mut out = Vec::with_capacity(ts.len());
        let mut state = y0;
        let mut t_cur = T::zero();
        let mut next = 0usize;
        for i in 0..self.grid.len() - 1 {
            while next < ts.len() && ts[next] <= t_cur {
                out.push(state);
                next += 1;
            }
            let (t0, t1) = (self.grid[i], self.grid[i + 1]);
            if t1 == t0 {
                continue;
            }
            let start = next;
            while next < ts.len() && ts[next] <= t1 {
                next += 1;
            }
            let mut targets: Vec<T> = ts[start..next].to_vec();
            if targets.last() != Some(&t1) {
                targets.push(t1);
            }
            let (s0, s1, k0, k1) = (s[i], s[i + 1], k[i], k[i + 1]);
            let w = t1 - t0;
            let f = move |t: T, y: &[T; N]| {
                let a = (t - t0) / w;
                rhs(y, s0 + (s1 - s0) * a, k0 + (k1 - k0) * a)
            };
            let run = ode::integrate(f, t0, state, &targets, &opts, project, |_, _| false)?;
            for (j, v) in run.values.iter().enumerate() {
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(Error::NonFinite(i));
                }
                if start + j < next {
                    out.push(*v);
                }
            }
            state = *run.values.last().expect("at least one target");
            t_cur = t1;
        }
        while next < ts.len() {
            out.push(state);
            next += 1;
        }
        Ok(out)
    }

    pub fn end_frame(&self) -> Result<Mat3<T>> {
        Ok(self.frames_at(&[T::one()])?[0])
    }

    /// Output parameters: each cell is split finely enough for its length
    /// and curvature, with a floor on the total; jump nodes appear twice.
    pub fn output_params(&self) -> Vec<(T, usize)> {
        let (s, k) = (self.sigma(), self.kappa());
        let half = c::<T>(0.5);
        let mut counts = Vec::with_capacity(self.grid.len() - 1);
        for i in 0..self.grid.len() - 1 {
            let w = self.grid[i + 1] - self.grid[i];
            if w == T::zero() {
                counts.push(0usize);
                continue;
            }
            let len = w * (s[i] + s[i + 1]) * half;
            let curl = T::one() + k[i].abs().max(k[i + 1].abs());
            let n = (len * curl / c(OUTPUT_SPACING)).ceil().to_usize().unwrap_or(1).max(1);
            counts.push(n);
        }
        let total: usize = counts.iter().sum();
        if total < MIN_OUTPUT_NODES {
            let f = MIN_OUTPUT_NODES.div_ceil(total.max(1));
            counts.iter_mut().for_each(|n| *n *= f);
        }
        let mut params = vec![(T::zero(), 0usize)];
        for (i, &n) in counts.iter().enumerate() {
            let (t0, t1) = (self.grid[i], self.grid[i + 1]);
            if n == 0 {
                params.push((t1, i + 1));
                continue;
            }
            for j in 1..=n {
                let t = if j == n { t1 } else { t0 + (t1 - t0) * T::from_usize_lossy(j) / T::from_usize_lossy(n) };
                params.push((t, i));
            }
        }
        params
    }

    /// Solves the frame equation and samples the trace.
    pub fn integrate(&self) -> Result<SampledCurve<T>> {
        let params = self.output_params();
        let ts: Vec<T> = params.iter().map(|p| p.0).collect();
        let frames = self.frames_at(&ts)?;
        let (s, k) = (self.sigma(), self.kappa());
        let mut speeds = Vec::with_capacity(ts.len());
        let mut curvatures = Vec::with_capacity(ts.len());
        for &(t, cell) in &params {
            let (sig, kap) = cell_value(&self.grid, &s, &k, cell.min(self.grid.len() - 2), t);
            speeds.push(sig);
            curvatures.push(kap);
        }
        let frames = frames.into_iter().map(|m| Isometry::from_matrix_unchecked(m)).collect();
        SampledCurve::new(ts, frames, curvatures, speeds)
    }
}

/// Index of the cell used to the right of `t`.
fn right_cell<T: Real>(grid: &[T], t: T) -> usize {
    grid.partition_point(|&v| v <= t).saturating_sub(1).min(grid.len() - 2)
}

fn cell_value<T: Real>(grid: &[T], s: &[T], k: &[T], i: usize, t: T) -> (T, T) {
    let w = grid[i + 1] - grid[i];
    if w == T::zero() {
        return (s[i + 1], k[i + 1]);
    }
    let a = ((t - grid[i]) / w).max(T::zero()).min(T::one());
    (s[i] + (s[i + 1] - s[i]) * a, k[i] + (k[i + 1] - k[i]) * a)
}

/// Right-hand side of `Phi' = Phi Lambda`,
/// `Lambda = sigma [[0, 1, 0], [1, 0, -kappa], [0, kappa, 0]]`.
pub(crate) fn frame_rhs<T: Real>(y: &[T; 9], sigma: T, kappa: T) -> [T; 9] {
    let mut d = [T::zero(); 9];
    for r in 0..3 {
        let (g, t, n) = (y[3 * r], y[3 * r + 1], y[3 * r + 2]);
        d[3 * r] = sigma * t;
        d[3 * r + 1] = sigma * (g + kappa * n);
        d[3 * r + 2] = -sigma * kappa * t;
    }
    d
}

pub(crate) fn project_frame<T: Real>(y: &mut [T; 9]) {
    *y = reorthonormalize(&Mat3::from_row_major(y)).to_row_major();
}

/// Curve of constant curvature `kappa` and given length, starting at `u`.
pub fn constant_curve<T: Real>(u: &ModelVector<T>, kappa: T, arclength: T) -> Result<IntrinsicCurve<T>> {
    if !(arclength > T::zero()) || !arclength.is_finite() {
        return Err(Error::NonPositive(arclength.as_f64()));
    }
    if !kappa.is_finite() {
        return Err(Error::NonFinite(0));
    }
    let frame0 = isometry_from_unit_tangent(u)?;
    constant_from_frame(frame0, kappa, arclength, CurvatureInterval::unbounded())
}

pub(crate) fn constant_from_frame<T: Real>(
    frame0: Isometry<T>,
    kappa: T,
    arclength: T,
    bounds: CurvatureInterval<T>,
) -> Result<IntrinsicCurve<T>> {
    IntrinsicCurve::from_decoded(frame0, vec![T::zero(), T::one()], &[arclength; 2], &[kappa; 2], bounds)
}

/// Concatenation; the parameter split is proportional to length so the
/// speed stays continuous when it was constant on both pieces.
pub fn concat<T: Real>(c1: &IntrinsicCurve<T>, c2: &IntrinsicCurve<T>) -> Result<IntrinsicCurve<T>> {
    let end = c1.end_frame()?;
    let start = c2.frame0.matrix();
    let gap = (0..2).map(|j| end.column(j).max_abs_diff(&start.column(j))).fold(T::zero(), T::max);
    let scale = T::one().max(end.column(0).euclidean_norm());
    if gap > tol::<T>(1e-8) * scale {
        return Err(Error::TangentMismatch(gap.as_f64()));
    }
    let (l1, l2) = (c1.length(), c2.length());
    let w = l1 / (l1 + l2);
    let mut grid: Vec<T> = c1.grid.iter().map(|&t| t * w).collect();
    grid.extend(c2.grid.iter().map(|&t| if t == T::one() { T::one() } else { w + (T::one() - w) * t }));
    let mut sigma: Vec<T> = c1.sigma().iter().map(|&s| s / w).collect();
    sigma.extend(c2.sigma().iter().map(|&s| s / (T::one() - w)));
    let mut kappa = c1.kappa();
    kappa.extend(c2.kappa());
    let bounds = c1.bounds.hull(&c2.bounds);
    IntrinsicCurve::from_decoded(c1.frame0, grid, &sigma, &kappa, bounds)
}
