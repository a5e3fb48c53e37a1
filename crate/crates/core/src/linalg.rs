//! Small fixed-size vectors and square matrices.
//!
//! Everything here is stack-allocated and sized at compile time: the group
//! realizations never need more than 6×6. Matrices are row-major.

use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// 3-vector over the crate scalar.
#[derive(Copy, Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3<S>(pub [S; 3]);

impl<S: Scalar> Vec3<S> {
    pub fn zero() -> Self {
        Vec3([S::zero(); 3])
    }

    pub fn new(x: S, y: S, z: S) -> Self {
        Vec3([x, y, z])
    }

    pub fn dot(self, rhs: Self) -> S {
        self.0[0] * rhs.0[0] + self.0[1] * rhs.0[1] + self.0[2] * rhs.0[2]
    }

    pub fn cross(self, rhs: Self) -> Self {
        Vec3([
            self.0[1] * rhs.0[2] - self.0[2] * rhs.0[1],
            self.0[2] * rhs.0[0] - self.0[0] * rhs.0[2],
            self.0[0] * rhs.0[1] - self.0[1] * rhs.0[0],
        ])
    }

    pub fn norm(self) -> S {
        self.dot(self).sqrt()
    }

    pub fn scale(self, k: S) -> Self {
        Vec3([self.0[0] * k, self.0[1] * k, self.0[2] * k])
    }

    pub fn max_abs(self) -> S {
        self.0.iter().fold(S::zero(), |m, &x| m.max(x.abs()))
    }
}

impl<S: Scalar> Add for Vec3<S> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Vec3([self.0[0] + r.0[0], self.0[1] + r.0[1], self.0[2] + r.0[2]])
    }
}

impl<S: Scalar> Sub for Vec3<S> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Vec3([self.0[0] - r.0[0], self.0[1] - r.0[1], self.0[2] - r.0[2]])
    }
}

impl<S: Scalar> Neg for Vec3<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl<S> Index<usize> for Vec3<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S> IndexMut<usize> for Vec3<S> {
    fn index_mut(&mut self, i: usize) -> &mut S {
        &mut self.0[i]
    }
}

/// Square matrix of static dimension `N`, row-major.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Mat<S, const N: usize>(pub [[S; N]; N]);

pub type Mat3<S> = Mat<S, 3>;
pub type Mat4<S> = Mat<S, 4>;
pub type Mat5<S> = Mat<S, 5>;
pub type Mat6<S> = Mat<S, 6>;

impl<S: Scalar, const N: usize> Mat<S, N> {
    pub fn zero() -> Self {
        Mat([[S::zero(); N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = S::one();
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for i in 0..N {
            for j in 0..N {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn apply(&self, v: &[S; N]) -> [S; N] {
        let mut out = [S::zero(); N];
        for i in 0..N {
            let mut acc = S::zero();
            for j in 0..N {
                acc += self.0[i][j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> S {
        let mut m = S::zero();
        for i in 0..N {
            for j in 0..N {
                m = m.max((self.0[i][j] - rhs.0[i][j]).abs());
            }
        }
        m
    }

    pub fn max_abs(&self) -> S {
        self.max_abs_diff(&Self::zero())
    }

    pub fn scale(&self, k: S) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= k;
            }
        }
        m
    }

    /// Row-major flattening, for reports.
    pub fn to_rows(&self) -> Vec<Vec<S>> {
        self.0.iter().map(|r| r.to_vec()).collect()
    }
}

impl<S: Scalar, const N: usize> Mul for Mat<S, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == S::zero() {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<S: Scalar, const N: usize> Add for Mat<S, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }
}

impl<S: Scalar, const N: usize> Sub for Mat<S, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }
}

impl<S: Scalar> Mat3<S> {
    pub fn apply_vec3(&self, v: Vec3<S>) -> Vec3<S> {
        Vec3(self.apply(&v.0))
    }

    /// Matrix commutator `AB - BA`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        *self * *rhs - *rhs * *self
    }

    pub fn det(&self) -> S {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

/// Skew-symmetric matrix `[n]ₓ` with `[n]ₓ v = n × v`.
pub fn skew<S: Scalar>(n: Vec3<S>) -> Mat3<S> {
    let z = S::zero();
    Mat([
        [z, -n[2], n[1]],
        [n[2], z, -n[0]],
        [-n[1], n[0], z],
    ])
}

/// Commutator for any square dimension.
pub fn commutator<S: Scalar, const N: usize>(a: &Mat<S, N>, b: &Mat<S, N>) -> Mat<S, N> {
    *a * *b - *b * *a
}
