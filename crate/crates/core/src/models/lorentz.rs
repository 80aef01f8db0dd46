//! Minkowski space E^{2,1}: vectors, 3x3 matrices, and the Lorentz
//! bilinear form with signature (-, +, +).

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use crate::scalar::Real;

/// A vector in E^{2,1}, coordinates `(x0, x1, x2)`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vec3<T>(pub [T; 3]);

impl<T: Real> Vec3<T> {
    #[inline]
    pub fn new(x0: T, x1: T, x2: T) -> Self {
        Self([x0, x1, x2])
    }

    pub fn e0() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    pub fn e1() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    pub fn e2() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    /// Euclidean cross product.
    pub fn cross(&self, o: &Self) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = o.0;
        Self::new(a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)
    }

    /// Applies `S = diag(-1, 1, 1)`.
    #[inline]
    pub fn flip_time(&self) -> Self {
        Self::new(-self.0[0], self.0[1], self.0[2])
    }

    pub fn euclidean_norm(&self) -> T {
        (self.0[0] * self.0[0] + self.0[1] * self.0[1] + self.0[2] * self.0[2]).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Largest absolute coordinate difference.
    pub fn max_abs_diff(&self, o: &Self) -> T {
        (0..3).fold(T::zero(), |m, i| m.max((self.0[i] - o.0[i]).abs()))
    }
}

/// Lorentz product `-x0 y0 + x1 y1 + x2 y2`.
#[inline]
pub fn lorentz_product<T: Real>(x: &Vec3<T>, y: &Vec3<T>) -> T {
    -x.0[0] * y.0[0] + x.0[1] * y.0[1] + x.0[2] * y.0[2]
}

/// Lorentz vector product `S(x × y)`; Lorentz-orthogonal to both factors.
#[inline]
pub fn lorentz_cross<T: Real>(x: &Vec3<T>, y: &Vec3<T>) -> Vec3<T> {
    x.cross(y).flip_time()
}

/// Lorentz norm of a spacelike vector.
#[inline]
pub fn spacelike_norm<T: Real>(x: &Vec3<T>) -> T {
    lorentz_product(x, x).max(T::zero()).sqrt()
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2])
    }
}

impl<T: Real> AddAssign for Vec3<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2])
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.0[0], -self.0[1], -self.0[2])
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.0[0] * s, self.0[1] * s, self.0[2] * s)
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> IndexMut<usize> for Vec3<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.0[i]
    }
}

/// Row-major 3x3 real matrix.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

impl<T: Real> Mat3<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self([[o, z, z], [z, o, z], [z, z, o]])
    }

    pub fn from_columns(c0: &Vec3<T>, c1: &Vec3<T>, c2: &Vec3<T>) -> Self {
        Self([
            [c0[0], c1[0], c2[0]],
            [c0[1], c1[1], c2[1]],
            [c0[2], c1[2], c2[2]],
        ])
    }

    /// `S = diag(-1, 1, 1)`.
    pub fn lorentz_metric() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self([[-o, z, z], [z, o, z], [z, z, o]])
    }

    /// Builds a matrix from 9 row-major entries.
    pub fn from_row_major(v: &[T; 9]) -> Self {
        Self([[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]])
    }

    pub fn to_row_major(&self) -> [T; 9] {
        let m = &self.0;
        [
            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
        ]
    }

    #[inline]
    pub fn column(&self, j: usize) -> Vec3<T> {
        Vec3::new(self.0[0][j], self.0[1][j], self.0[2][j])
    }

    pub fn set_column(&mut self, j: usize, v: &Vec3<T>) {
        for i in 0..3 {
            self.0[i][j] = v[i];
        }
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn det(&self) -> T {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn mul_vec(&self, v: &Vec3<T>) -> Vec3<T> {
        let m = &self.0;
        Vec3::new(
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        )
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for x in row.iter_mut() {
                *x = *x * s;
            }
        }
        out
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        let mut m = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                m = m.max((self.0[i][j] - o.0[i][j]).abs());
            }
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl<T: Real> Mul for Mat3<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = [[T::zero(); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j] + self.0[i][2] * o.0[2][j];
            }
        }
        Self(out)
    }
}

impl<T: Real> Add for Mat3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut out = self;
        for i in 0..3 {
            for j in 0..3 {
                out.0[i][j] = out.0[i][j] + o.0[i][j];
            }
        }
        out
    }
}
