//! Proper rotations stored as axis-angle vectors.
//!
//! The 3×3 matrix is regenerated on demand via the Rodrigues formula, and
//! composed rotations are re-extracted to axis-angle, so `RᵀR = I` holds to
//! machine precision over arbitrarily long composition chains. Extraction
//! runs a polar-decomposition cleanup first whenever orthogonality drift
//! exceeds [`crate::tolerances::ORTHOGONALITY`].

use crate::linalg::{skew, Mat3, Vec3};
use crate::scalar::Scalar;
use crate::tolerances;
use serde::{Deserialize, Serialize};

/// Rotation as an axis-angle 3-vector `θ` (radians); the rotation angle is
/// `|θ|` and the axis is `θ/|θ|`.
#[derive(Copy, Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Rotation<S> {
    pub theta: Vec3<S>,
}

impl<S: Scalar> Rotation<S> {
    pub fn identity() -> Self {
        Rotation { theta: Vec3::zero() }
    }

    pub fn from_axis_angle(axis: Vec3<S>, angle: S) -> Self {
        let n = axis.norm();
        if n == S::zero() {
            return Self::identity();
        }
        Rotation { theta: axis.scale(angle / n) }
    }

    pub fn is_identity(&self) -> bool {
        self.theta.norm() == S::zero()
    }

    /// Rodrigues: `R = I + sinθ [n]ₓ + (1−cosθ)[n]ₓ²`.
    pub fn matrix(&self) -> Mat3<S> {
        let angle = self.theta.norm();
        if angle == S::zero() {
            return Mat3::identity();
        }
        let n = self.theta.scale(S::one() / angle);
        let k = skew(n);
        let k2 = k * k;
        Mat3::identity() + k.scale(angle.sin()) + k2.scale(S::one() - angle.cos())
    }

    /// Inverse rotation. Negating the axis-angle vector keeps
    /// `inverse().matrix()` bitwise equal to `matrix().transpose()`.
    pub fn inverse(&self) -> Self {
        Rotation { theta: -self.theta }
    }

    /// Apply to a vector.
    pub fn apply(&self, v: Vec3<S>) -> Vec3<S> {
        self.matrix().apply_vec3(v)
    }

    /// Apply the inverse rotation to a vector.
    pub fn apply_inv(&self, v: Vec3<S>) -> Vec3<S> {
        self.inverse().matrix().apply_vec3(v)
    }

    /// Compose rotations: `(self ∘ rhs)` acts as `self.matrix() * rhs.matrix()`.
    pub fn compose(&self, rhs: &Self) -> Self {
        Self::from_matrix(self.matrix() * rhs.matrix())
    }

    /// Extract axis-angle from a (near-)orthogonal matrix.
    ///
    /// The angle comes from `atan2(|skew|, tr − 1)`, which stays
    /// well-conditioned at both ends of `[0, π]`; near π the axis is read
    /// off `R + I = 2nnᵀ + O(π−θ)` instead of the degenerating skew part.
    pub fn from_matrix(mut m: Mat3<S>) -> Self {
        let drift = (m.transpose() * m).max_abs_diff(&Mat3::identity());
        if drift > S::from_f64_lossy(tolerances::ORTHOGONALITY) {
            m = polar_orthogonalize(m);
        }
        let tr = m.0[0][0] + m.0[1][1] + m.0[2][2];
        let skew_vec = Vec3::new(
            m.0[2][1] - m.0[1][2],
            m.0[0][2] - m.0[2][0],
            m.0[1][0] - m.0[0][1],
        );
        // |skew_vec| = 2 sinθ, tr − 1 = 2 cosθ.
        let sin2 = skew_vec.norm();
        let angle = sin2.atan2(tr - S::one());
        if angle < S::from_f64_lossy(1e-7) {
            // sinθ ≈ θ: the skew part is 2θ·n to leading order.
            return Rotation { theta: skew_vec.scale(S::half()) };
        }
        if S::PI() - angle < S::from_f64_lossy(1e-3) {
            // The skew part degenerates; read nnᵀ = (sym(R) − cosθ·I)/(1 − cosθ)
            // off the symmetric part instead, which stays machine-accurate.
            let sym = (m + m.transpose()).scale(S::half());
            let cos_t = (tr - S::one()) * S::half();
            let denom = S::one() - cos_t;
            let nn = |i: usize, j: usize| (sym.0[i][j] - if i == j { cos_t } else { S::zero() }) / denom;
            let diag = [nn(0, 0).max(S::zero()), nn(1, 1).max(S::zero()), nn(2, 2).max(S::zero())];
            let k = if diag[0] >= diag[1] && diag[0] >= diag[2] {
                0
            } else if diag[1] >= diag[2] {
                1
            } else {
                2
            };
            let mut axis = Vec3::zero();
            axis[k] = diag[k].sqrt();
            for j in 0..3 {
                if j != k {
                    axis[j] = nn(j, k) / axis[k];
                }
            }
            let mut axis = axis.scale(S::one() / axis.norm());
            // Fix the overall sign so that sinθ·n matches the skew part.
            if axis.dot(skew_vec) < S::zero() {
                axis = -axis;
            }
            return Rotation { theta: axis.scale(angle) };
        }
        let n = skew_vec.scale(S::one() / sin2);
        Rotation { theta: n.scale(angle) }
    }
}

/// Newton iteration for the orthogonal polar factor: `R ← ½(R + R⁻ᵀ)`.
pub fn polar_orthogonalize<S: Scalar>(mut m: Mat3<S>) -> Mat3<S> {
    for _ in 0..20 {
        let inv_t = invert3(&m).transpose();
        m = (m + inv_t).scale(S::half());
        let drift = (m.transpose() * m).max_abs_diff(&Mat3::identity());
        if drift < S::from_f64_lossy(1e-15) {
            break;
        }
    }
    m
}

fn invert3<S: Scalar>(m: &Mat3<S>) -> Mat3<S> {
    let a = &m.0;
    let det = m.det();
    let mut inv = Mat3::zero();
    inv.0[0][0] = a[1][1] * a[2][2] - a[1][2] * a[2][1];
    inv.0[0][1] = a[0][2] * a[2][1] - a[0][1] * a[2][2];
    inv.0[0][2] = a[0][1] * a[1][2] - a[0][2] * a[1][1];
    inv.0[1][0] = a[1][2] * a[2][0] - a[1][0] * a[2][2];
    inv.0[1][1] = a[0][0] * a[2][2] - a[0][2] * a[2][0];
    inv.0[1][2] = a[0][2] * a[1][0] - a[0][0] * a[1][2];
    inv.0[2][0] = a[1][0] * a[2][1] - a[1][1] * a[2][0];
    inv.0[2][1] = a[0][1] * a[2][0] - a[0][0] * a[2][1];
    inv.0[2][2] = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    inv.scale(S::one() / det)
}
