use crate::error::{Error, Result};
use crate::scalar::{c, Real};

use super::lorentz::{lorentz_cross, lorentz_product, spacelike_norm, Mat3, Vec3};
use super::{tol, Direction, ModelPoint, ModelVector, ARITHMETIC_TOL};

/// An orientation-preserving isometry, an element of `SO+(2,1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry<T> {
    m: Mat3<T>,
}

impl<T: Real> Isometry<T> {
    pub fn identity() -> Self {
        Self { m: Mat3::identity() }
    }

    /// Validates `Q^T S Q = S`, `det Q = 1` and `Q00 > 0`.
    pub fn from_matrix(m: Mat3<T>) -> Result<Self> {
        let q = Self { m };
        if q.is_valid(tol(ARITHMETIC_TOL)) {
            Ok(q)
        } else {
            Err(Error::Mismatch("matrix is not in SO+(2,1)".into()))
        }
    }

    /// Wraps a matrix already known to be in `SO+(2,1)`.
    pub(crate) fn from_matrix_unchecked(m: Mat3<T>) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &Mat3<T> {
        &self.m
    }

    pub fn is_valid(&self, eps: T) -> bool {
        if !self.m.is_finite() || !(self.m.0[0][0] > T::zero()) {
            return false;
        }
        let s = Mat3::lorentz_metric();
        let g = self.m.transpose() * s * self.m;
        let scale = self.m.0.iter().flatten().fold(T::one(), |a, &x| a.max(x.abs()));
        let eps = eps * scale * scale;
        g.max_abs_diff(&s) <= eps && (self.m.det() - T::one()).abs() <= eps
    }

    /// `Q^{-1} = S Q^T S`.
    pub fn inverse(&self) -> Self {
        let s = Mat3::lorentz_metric();
        Self { m: s * self.m.transpose() * s }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { m: self.m * other.m }
    }

    pub fn apply_vec3(&self, x: &Vec3<T>) -> Vec3<T> {
        self.m.mul_vec(x)
    }

    /// Applies to a point, answering in the point's own model.
    pub fn apply_point(&self, p: &ModelPoint<T>) -> Result<ModelPoint<T>> {
        let x = p.to_hyperboloid()?;
        Ok(ModelPoint::from_hyperboloid(&self.apply_vec3(&x), p.model()))
    }

    pub fn apply_vector(&self, v: &ModelVector<T>) -> Result<ModelVector<T>> {
        let (p, u) = v.to_hyperboloid()?;
        Ok(ModelVector::from_hyperboloid(&self.apply_vec3(&p), &self.apply_vec3(&u), v.model()))
    }
}

/// The isometry sending `e0` to the base point of `v` and `e1` to `v`.
///
/// Its columns are the positively oriented frame `(p, u, p x u)`.
pub fn isometry_from_unit_tangent<T: Real>(v: &ModelVector<T>) -> Result<Isometry<T>> {
    v.require_unit()?;
    let (p, u) = v.to_hyperboloid()?;
    let n = lorentz_cross(&p, &u);
    Ok(Isometry::from_matrix_unchecked(reorthonormalize(&Mat3::from_columns(&p, &u, &n))))
}

/// Lorentz Gram-Schmidt on the columns `(g, t, n)` of a frame: normalize
/// `g`, project `t` orthogonally to it, then rebuild `n = g x t`.
pub fn reorthonormalize<T: Real>(m: &Mat3<T>) -> Mat3<T> {
    let mut g = m.column(0);
    g = g * (T::one() / (-lorentz_product(&g, &g)).sqrt());
    let mut t = m.column(1);
    t += g * lorentz_product(&t, &g);
    t = t * (T::one() / spacelike_norm(&t));
    let n = lorentz_cross(&g, &t);
    Mat3::from_columns(&g, &t, &n)
}

/// Reflection in a geodesic, `x -> x - 2 (x.n) n` for the unit spacelike
/// normal `n` of the plane containing the geodesic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reflection<T> {
    normal: Vec3<T>,
}

impl<T: Real> Reflection<T> {
    pub fn normal(&self) -> &Vec3<T> {
        &self.normal
    }

    pub fn apply_vec3(&self, x: &Vec3<T>) -> Vec3<T> {
        *x - self.normal * (c::<T>(2.0) * lorentz_product(x, &self.normal))
    }

    pub fn matrix(&self) -> Mat3<T> {
        Mat3::from_columns(
            &self.apply_vec3(&Vec3::e0()),
            &self.apply_vec3(&Vec3::e1()),
            &self.apply_vec3(&Vec3::e2()),
        )
    }

    pub fn apply_point(&self, p: &ModelPoint<T>) -> Result<ModelPoint<T>> {
        let x = p.to_hyperboloid()?;
        Ok(ModelPoint::from_hyperboloid(&self.apply_vec3(&x), p.model()))
    }

    pub fn apply_vector(&self, v: &ModelVector<T>) -> Result<ModelVector<T>> {
        let (p, u) = v.to_hyperboloid()?;
        Ok(ModelVector::from_hyperboloid(&self.apply_vec3(&p), &self.apply_vec3(&u), v.model()))
    }
}

/// Reflection in the geodesic through the base of `v` in direction `v`.
pub fn reflect_in_geodesic<T: Real>(v: &ModelVector<T>) -> Result<Reflection<T>> {
    let (p, u) = v.to_hyperboloid()?;
    let n = lorentz_cross(&p, &u);
    let len = spacelike_norm(&n);
    if !(len > T::zero()) {
        return Err(Error::NotUnit { norm: 0.0 });
    }
    Ok(Reflection { normal: n * (T::one() / len) })
}

impl<T: Real> ModelVector<T> {
    /// Hyperboloid base point and direction, without any chart conversion
    /// when the vector already lives on the hyperboloid.
    pub fn ambient_parts(&self) -> Option<(Vec3<T>, Vec3<T>)> {
        match (&self.base, &self.dir) {
            (ModelPoint::Hyperboloid(p), Direction::Ambient(u)) => Some((*p, *u)),
            _ => None,
        }
    }
}
