//! Points, tangent vectors and isometries of the hyperbolic plane, and exact
//! conversions among the disk `D`, half-plane `H`, hyperboloid `L` and
//! Mercator `M` models.
//!
//! The hyperboloid is the canonical representation; the three planar models
//! are charts of it. The conversions are fixed once:
//!
//! * `L -> D`: stereographic projection from `(-1, 0, 0)`,
//!   `(x0, x1, x2) -> (x1 + i x2) / (1 + x0)`;
//! * `H -> D`: Cayley map `z -> (z - i) / (z + i)`;
//! * `M -> H`: `(x, y) -> e^{y + i x}`, with `x` in `(0, pi)`.
//!
//! `D`, `H` and `L` carry compatible orientations. The Mercator strip with
//! its standard `(x, y)` orientation is oppositely oriented, because
//! `(x, y) -> e^{y + i x}` is antiholomorphic.

mod isometry;
pub mod lorentz;

use num_complex::Complex;

pub use isometry::{isometry_from_unit_tangent, reflect_in_geodesic, reorthonormalize, Isometry, Reflection};
pub use lorentz::{lorentz_cross, lorentz_product, spacelike_norm, Mat3, Vec3};

use crate::error::{Error, Result};
use crate::scalar::{c, Real};

/// Tolerance used when a hyperboloid point or vector is constructed.
pub const CONSTRUCTION_TOL: f64 = 1e-12;
/// Tolerance used for values produced by arithmetic.
pub const ARITHMETIC_TOL: f64 = 1e-10;

/// Scales a nominal double-precision tolerance up for lower-precision scalars.
pub(crate) fn tol<T: Real>(nominal: f64) -> T {
    c::<T>(nominal).max(T::epsilon() * c(256.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelId {
    Disk,
    HalfPlane,
    Hyperboloid,
    Mercator,
}

impl ModelId {
    pub const ALL: [ModelId; 4] = [ModelId::Disk, ModelId::HalfPlane, ModelId::Hyperboloid, ModelId::Mercator];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::Disk => "disk",
            ModelId::HalfPlane => "halfplane",
            ModelId::Hyperboloid => "hyperboloid",
            ModelId::Mercator => "mercator",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "disk" | "d" => Some(ModelId::Disk),
            "halfplane" | "half-plane" | "h" => Some(ModelId::HalfPlane),
            "hyperboloid" | "l" => Some(ModelId::Hyperboloid),
            "mercator" | "m" => Some(ModelId::Mercator),
            _ => None,
        }
    }
}

/// A point of the hyperbolic plane in one of the four models.
///
/// Planar charts use a complex coordinate; for `Mercator` the real part is
/// `x` in `(0, pi)` and the imaginary part is `y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModelPoint<T> {
    Disk(Complex<T>),
    HalfPlane(Complex<T>),
    Hyperboloid(Vec3<T>),
    Mercator(Complex<T>),
}

impl<T: Real> ModelPoint<T> {
    pub fn disk(z: Complex<T>) -> Result<Self> {
        let p = ModelPoint::Disk(z);
        p.validate()?;
        Ok(p)
    }

    pub fn half_plane(z: Complex<T>) -> Result<Self> {
        let p = ModelPoint::HalfPlane(z);
        p.validate()?;
        Ok(p)
    }

    pub fn hyperboloid(x: Vec3<T>) -> Result<Self> {
        let p = ModelPoint::Hyperboloid(x);
        p.validate_with(tol(CONSTRUCTION_TOL))?;
        Ok(p)
    }

    pub fn mercator(x: T, y: T) -> Result<Self> {
        let p = ModelPoint::Mercator(Complex::new(x, y));
        p.validate()?;
        Ok(p)
    }

    pub fn model(&self) -> ModelId {
        match self {
            ModelPoint::Disk(_) => ModelId::Disk,
            ModelPoint::HalfPlane(_) => ModelId::HalfPlane,
            ModelPoint::Hyperboloid(_) => ModelId::Hyperboloid,
            ModelPoint::Mercator(_) => ModelId::Mercator,
        }
    }

    /// Planar chart coordinate, `None` for hyperboloid points.
    pub fn chart(&self) -> Option<Complex<T>> {
        match *self {
            ModelPoint::Disk(z) | ModelPoint::HalfPlane(z) | ModelPoint::Mercator(z) => Some(z),
            ModelPoint::Hyperboloid(_) => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_with(tol(ARITHMETIC_TOL))
    }

    /// Checks the model invariants; the hyperboloid equation is checked
    /// relative to `x0^2`.
    pub fn validate_with(&self, eps: T) -> Result<()> {
        let ok = match *self {
            ModelPoint::Disk(z) => z.re.is_finite() && z.im.is_finite() && z.norm_sqr() < T::one(),
            ModelPoint::HalfPlane(z) => z.re.is_finite() && z.im.is_finite() && z.im > T::zero(),
            ModelPoint::Hyperboloid(x) => {
                x.is_finite()
                    && x[0] > T::zero()
                    && (lorentz_product(&x, &x) + T::one()).abs() <= eps * T::one().max(x[0] * x[0])
            }
            ModelPoint::Mercator(z) => z.im.is_finite() && z.re > T::zero() && z.re < T::PI(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfDomain { model: self.model() })
        }
    }

    /// Hyperboloid coordinates of this point.
    pub fn to_hyperboloid(&self) -> Result<Vec3<T>> {
        self.validate()?;
        Ok(match *self {
            ModelPoint::Hyperboloid(x) => x,
            ModelPoint::Disk(w) => {
                let two = c::<T>(2.0);
                let r2 = w.norm_sqr();
                let d = T::one() - r2;
                Vec3::new((T::one() + r2) / d, two * w.re / d, two * w.im / d)
            }
            ModelPoint::HalfPlane(z) => half_plane_to_hyperboloid(z),
            ModelPoint::Mercator(m) => {
                let (s, co) = m.re.sin_cos();
                Vec3::new(m.im.cosh() / s, m.im.sinh() / s, -co / s)
            }
        })
    }

    /// Expresses a hyperboloid point in `model`.
    pub fn from_hyperboloid(x: &Vec3<T>, model: ModelId) -> Self {
        match model {
            ModelId::Hyperboloid => ModelPoint::Hyperboloid(*x),
            ModelId::Disk => {
                let d = T::one() + x[0];
                ModelPoint::Disk(Complex::new(x[1] / d, x[2] / d))
            }
            ModelId::HalfPlane => {
                let q = x[0] - x[1];
                ModelPoint::HalfPlane(Complex::new(-x[2] / q, T::one() / q))
            }
            ModelId::Mercator => {
                let s = (T::one() + x[2] * x[2]).sqrt();
                ModelPoint::Mercator(Complex::new(T::one().atan2(-x[2]), (x[1] / s).asinh()))
            }
        }
    }
}

fn half_plane_to_hyperboloid<T: Real>(z: Complex<T>) -> Vec3<T> {
    let two_y = c::<T>(2.0) * z.im;
    let r2 = z.norm_sqr();
    Vec3::new((r2 + T::one()) / two_y, (r2 - T::one()) / two_y, -z.re / z.im)
}

/// Converts a point to another model.
pub fn convert_point<T: Real>(p: &ModelPoint<T>, to: ModelId) -> Result<ModelPoint<T>> {
    if p.model() == to {
        p.validate()?;
        return Ok(*p);
    }
    let x = p.to_hyperboloid()?;
    Ok(ModelPoint::from_hyperboloid(&x, to))
}

/// Hyperbolic distance, `2 asinh(|p - q|_L / 2)`; this equals
/// `arccosh(-p.q)` but keeps full precision for nearby points.
pub fn distance<T: Real>(p: &ModelPoint<T>, q: &ModelPoint<T>) -> Result<T> {
    Ok(hyperboloid_distance(&p.to_hyperboloid()?, &q.to_hyperboloid()?))
}

pub fn hyperboloid_distance<T: Real>(p: &Vec3<T>, q: &Vec3<T>) -> T {
    let d = *p - *q;
    let two = c::<T>(2.0);
    two * (spacelike_norm(&d) / two).asinh()
}

/// Coordinates of a tangent vector in the chart of its base point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Direction<T> {
    Planar(Complex<T>),
    Ambient(Vec3<T>),
}

/// A tangent vector, with coordinates in the same model as its base point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelVector<T> {
    pub base: ModelPoint<T>,
    pub dir: Direction<T>,
}

impl<T: Real> ModelVector<T> {
    /// A tangent vector in a planar chart.
    pub fn planar(base: ModelPoint<T>, dir: Complex<T>) -> Result<Self> {
        if base.model() == ModelId::Hyperboloid {
            return Err(Error::OutOfDomain { model: ModelId::Hyperboloid });
        }
        base.validate()?;
        Ok(Self { base, dir: Direction::Planar(dir) })
    }

    /// A tangent vector on the hyperboloid; must be Lorentz-orthogonal to
    /// its base point.
    pub fn ambient(base: Vec3<T>, dir: Vec3<T>) -> Result<Self> {
        let base = ModelPoint::hyperboloid(base)?;
        let v = Self { base, dir: Direction::Ambient(dir) };
        v.check_tangent(tol(ARITHMETIC_TOL))?;
        Ok(v)
    }

    /// Builds a unit vector in `model` from a hyperboloid point and unit tangent.
    pub fn from_hyperboloid(p: &Vec3<T>, u: &Vec3<T>, model: ModelId) -> Self {
        let base = ModelPoint::from_hyperboloid(p, model);
        let dir = match model {
            ModelId::Hyperboloid => Direction::Ambient(*u),
            _ => Direction::Planar(d_from_hyperboloid(p, u, model)),
        };
        Self { base, dir }
    }

    pub fn model(&self) -> ModelId {
        self.base.model()
    }

    fn check_tangent(&self, eps: T) -> Result<()> {
        if let (ModelPoint::Hyperboloid(p), Direction::Ambient(v)) = (&self.base, &self.dir) {
            let prod = lorentz_product(p, v);
            let scale = T::one().max(p.euclidean_norm() * v.euclidean_norm());
            if prod.abs() > eps * scale {
                return Err(Error::NotTangent { product: prod.as_f64() });
            }
        }
        Ok(())
    }

    /// Hyperbolic length of the vector.
    pub fn norm(&self) -> T {
        match (&self.base, &self.dir) {
            (ModelPoint::Hyperboloid(_), Direction::Ambient(v)) => spacelike_norm(v),
            (ModelPoint::Disk(w), Direction::Planar(v)) => c::<T>(2.0) * v.norm() / (T::one() - w.norm_sqr()),
            (ModelPoint::HalfPlane(z), Direction::Planar(v)) => v.norm() / z.im,
            (ModelPoint::Mercator(m), Direction::Planar(v)) => v.norm() / m.re.sin(),
            _ => T::nan(),
        }
    }

    pub fn is_unit(&self, eps: T) -> bool {
        (self.norm() - T::one()).abs() <= eps
    }

    /// Rescales to unit hyperbolic length.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::NotUnit { norm: n.as_f64() });
        }
        let dir = match self.dir {
            Direction::Planar(v) => Direction::Planar(v / n),
            Direction::Ambient(v) => Direction::Ambient(v * (T::one() / n)),
        };
        Ok(Self { base: self.base, dir })
    }

    /// Fails unless the vector has unit length to `1e-10`.
    pub fn require_unit(&self) -> Result<()> {
        if self.is_unit(tol(ARITHMETIC_TOL)) {
            Ok(())
        } else {
            Err(Error::NotUnit { norm: self.norm().as_f64() })
        }
    }

    pub fn chart_dir(&self) -> Option<Complex<T>> {
        match self.dir {
            Direction::Planar(v) => Some(v),
            Direction::Ambient(_) => None,
        }
    }

    /// Base point and direction on the hyperboloid.
    pub fn to_hyperboloid(&self) -> Result<(Vec3<T>, Vec3<T>)> {
        let p = self.base.to_hyperboloid()?;
        let v = match (&self.base, &self.dir) {
            (ModelPoint::Hyperboloid(_), Direction::Ambient(v)) => *v,
            (base, Direction::Planar(v)) if base.model() != ModelId::Hyperboloid => {
                d_to_hyperboloid(&base.chart().unwrap_or_default(), v, base.model())
            }
            _ => return Err(Error::OutOfDomain { model: self.model() }),
        };
        Ok((p, v))
    }
}

/// Differential of the chart -> hyperboloid map.
fn d_to_hyperboloid<T: Real>(z: &Complex<T>, v: &Complex<T>, model: ModelId) -> Vec3<T> {
    let (two, four) = (c::<T>(2.0), c::<T>(4.0));
    match model {
        ModelId::Disk => {
            let (a, b) = (z.re, z.im);
            let d = T::one() - z.norm_sqr();
            let d2 = d * d;
            Vec3::new(
                four * (a * v.re + b * v.im) / d2,
                ((two * d + four * a * a) * v.re + four * a * b * v.im) / d2,
                (four * a * b * v.re + (two * d + four * b * b) * v.im) / d2,
            )
        }
        ModelId::HalfPlane => {
            let (x, y) = (z.re, z.im);
            let y2 = y * y;
            Vec3::new(
                x / y * v.re + (y2 - x * x - T::one()) / (two * y2) * v.im,
                x / y * v.re + (y2 - x * x + T::one()) / (two * y2) * v.im,
                -v.re / y + x / y2 * v.im,
            )
        }
        ModelId::Mercator => {
            let (s, co) = z.re.sin_cos();
            let (sh, ch) = (z.im.sinh(), z.im.cosh());
            let s2 = s * s;
            Vec3::new(
                -ch * co / s2 * v.re + sh / s * v.im,
                -sh * co / s2 * v.re + ch / s * v.im,
                v.re / s2,
            )
        }
        ModelId::Hyperboloid => Vec3::new(T::nan(), T::nan(), T::nan()),
    }
}

/// Differential of the hyperboloid -> chart map.
fn d_from_hyperboloid<T: Real>(x: &Vec3<T>, v: &Vec3<T>, model: ModelId) -> Complex<T> {
    match model {
        ModelId::Disk => {
            let d = T::one() + x[0];
            Complex::new(v[1] / d - x[1] * v[0] / (d * d), v[2] / d - x[2] * v[0] / (d * d))
        }
        ModelId::HalfPlane => {
            let q = x[0] - x[1];
            let dq = v[0] - v[1];
            Complex::new(-v[2] / q + x[2] * dq / (q * q), -dq / (q * q))
        }
        ModelId::Mercator => {
            let w = T::one() + x[2] * x[2];
            let s = w.sqrt();
            let q = x[1] / s;
            let dq = v[1] / s - x[1] * x[2] * v[2] / (w * s);
            Complex::new(v[2] / w, dq / (T::one() + q * q).sqrt())
        }
        ModelId::Hyperboloid => Complex::new(T::nan(), T::nan()),
    }
}

/// Converts a tangent vector to another model through the chart differentials.
pub fn convert_vector<T: Real>(v: &ModelVector<T>, to: ModelId) -> Result<ModelVector<T>> {
    if v.model() == to {
        v.base.validate()?;
        return Ok(*v);
    }
    let (p, u) = v.to_hyperboloid()?;
    Ok(ModelVector::from_hyperboloid(&p, &u, to))
}
