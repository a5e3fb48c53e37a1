//! Element algebra and matrix realizations for the Galilei group G(1:3),
//! the dual Galilei group G(3:1), and the 1+1-dimensional Poincaré group.
//!
//! Both ten-parameter groups share the parameter tuple `(b, a, v, R)` — time
//! translation, space translation, boost velocity, rotation — but compose
//! differently. With `β = v/c`:
//!
//! Galilei product:
//! ```text
//! (b₂,a₂,v₂,R₂)(b₁,a₁,v₁,R₁) = (b₂+b₁, a₂+R₂a₁+b₁v₂, v₂+R₂v₁, R₂R₁)
//! ```
//! Dual Galilei product (time translations are central):
//! ```text
//! (b₂,a₂,v₂,R₂)(b₁,a₁,v₁,R₁) = (b₂+b₁−(v₂·R₂a₁)/c², a₂+R₂a₁, v₂+R₂v₁, R₂R₁)
//! ```
//!
//! Acting on the homogeneous column `(x, ct, 1)`, the Galilei group advances
//! positions by `Rx + vt + a` and shifts time, while the dual group rotates
//! and translates positions only and shears time by `−β·Rx`. The homogeneous
//! 4×4 parts form a dual pair `D(g)` / `C(g) = Dᵀ(g⁻¹)` whose bilinear
//! pairing `xᵘyᵤ` is invariant.
//!
//! `c` is a scaling constant carried by every element (default 1); it is not
//! a speed limit for either group.

use crate::error::{Error, Result};
use crate::linalg::{Mat, Mat3, Mat4, Mat5, Vec3};
use crate::rotation::Rotation;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Which product law an element composes under.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Galilei,
    DualGalilei,
}

/// Group element `(b, a, v, R)` with flavor tag and scaling constant.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct GroupElement<S> {
    pub flavor: Flavor,
    /// Time translation.
    pub b: S,
    /// Space translation.
    pub a: Vec3<S>,
    /// Boost velocity.
    pub v: Vec3<S>,
    /// Rotation, stored axis-angle under the JSON key `theta`.
    #[serde(rename = "theta", with = "rotation_as_theta")]
    pub rot: Rotation<S>,
    pub c: S,
}

mod rotation_as_theta {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S2: Scalar, Ser: Serializer>(
        rot: &Rotation<S2>,
        ser: Ser,
    ) -> std::result::Result<Ser::Ok, Ser::Error> {
        rot.theta.serialize(ser)
    }

    pub fn deserialize<'de, S2: Scalar, De: Deserializer<'de>>(
        de: De,
    ) -> std::result::Result<Rotation<S2>, De::Error> {
        Ok(Rotation { theta: Vec3::deserialize(de)? })
    }
}

impl<S: Scalar> GroupElement<S> {
    pub fn identity(flavor: Flavor, c: S) -> Self {
        GroupElement {
            flavor,
            b: S::zero(),
            a: Vec3::zero(),
            v: Vec3::zero(),
            rot: Rotation::identity(),
            c,
        }
    }

    pub fn new(flavor: Flavor, b: S, a: Vec3<S>, v: Vec3<S>, rot: Rotation<S>) -> Self {
        GroupElement { flavor, b, a, v, rot, c: S::one() }
    }

    pub fn with_c(mut self, c: S) -> Self {
        self.c = c;
        self
    }

    /// Boost in units of `c`.
    pub fn beta(&self) -> Vec3<S> {
        self.v.scale(S::one() / self.c)
    }

    /// Strip translations, keeping the homogeneous `(v, R)` part.
    pub fn homogeneous_part(&self) -> Self {
        GroupElement { b: S::zero(), a: Vec3::zero(), ..*self }
    }
}

fn check_compatible<S: Scalar>(g2: &GroupElement<S>, g1: &GroupElement<S>) -> Result<()> {
    if g2.flavor != g1.flavor {
        return Err(Error::FlavorMismatch { expected: g2.flavor, found: g1.flavor });
    }
    if g2.c != g1.c {
        return Err(Error::ScaleMismatch {
            left: g2.c.to_f64().unwrap_or(f64::NAN),
            right: g1.c.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(())
}

/// Product `g₂·g₁` under the common flavor's law.
pub fn compose<S: Scalar>(g2: &GroupElement<S>, g1: &GroupElement<S>) -> Result<GroupElement<S>> {
    check_compatible(g2, g1)?;
    let r2a1 = g2.rot.apply(g1.a);
    let b = match g2.flavor {
        Flavor::Galilei => g2.b + g1.b,
        Flavor::DualGalilei => g2.b + g1.b - g2.v.dot(r2a1) / (g2.c * g2.c),
    };
    let a = match g2.flavor {
        Flavor::Galilei => g2.a + r2a1 + g2.v.scale(g1.b),
        Flavor::DualGalilei => g2.a + r2a1,
    };
    Ok(GroupElement {
        flavor: g2.flavor,
        b,
        a,
        v: g2.v + g2.rot.apply(g1.v),
        rot: g2.rot.compose(&g1.rot),
        c: g2.c,
    })
}

/// Group inverse under the element's flavor.
pub fn inverse<S: Scalar>(g: &GroupElement<S>) -> GroupElement<S> {
    let rinv = g.rot.inverse();
    match g.flavor {
        Flavor::Galilei => GroupElement {
            flavor: g.flavor,
            b: -g.b,
            a: -rinv.apply(g.a - g.v.scale(g.b)),
            v: -rinv.apply(g.v),
            rot: rinv,
            c: g.c,
        },
        Flavor::DualGalilei => GroupElement {
            flavor: g.flavor,
            b: -g.b - g.v.dot(g.a) / (g.c * g.c),
            a: -rinv.apply(g.a),
            v: -rinv.apply(g.v),
            rot: rinv,
            c: g.c,
        },
    }
}

/// 5×5 homogeneous-coordinate realization acting on the column `(x, ct, 1)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct AffineMatrix<S> {
    pub mat: Mat5<S>,
    pub c: S,
}

impl<S: Scalar> AffineMatrix<S> {
    /// Transform an event `(x, ct)`.
    pub fn apply_event(&self, x: Vec3<S>, ct: S) -> (Vec3<S>, S) {
        let col = [x[0], x[1], x[2], ct, S::one()];
        let out = self.mat.apply(&col);
        (Vec3::new(out[0], out[1], out[2]), out[3])
    }
}

/// Faithful 5×5 realization of either flavor.
///
/// Galilei rows: `[R  β  a; 0  1  cb; 0  0  1]`; dual rows:
/// `[R  0  a; −(R⁻¹β)ᵀ  1  cb; 0  0  1]`.
pub fn to_affine<S: Scalar>(g: &GroupElement<S>) -> AffineMatrix<S> {
    let r = g.rot.matrix();
    let beta = g.beta();
    let mut m = Mat5::identity();
    for i in 0..3 {
        for j in 0..3 {
            m.0[i][j] = r.0[i][j];
        }
        m.0[i][4] = g.a[i];
    }
    m.0[3][4] = g.c * g.b;
    match g.flavor {
        Flavor::Galilei => {
            for i in 0..3 {
                m.0[i][3] = beta[i];
            }
        }
        Flavor::DualGalilei => {
            let row = g.rot.apply_inv(beta);
            for j in 0..3 {
                m.0[3][j] = -row[j];
            }
        }
    }
    AffineMatrix { mat: m, c: g.c }
}

/// Which member of the dual pair of homogeneous realizations.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixKind {
    /// Spacetime-point representation `D(g)`.
    D,
    /// Derivative-operator representation `C(g) = Dᵀ(g⁻¹)`.
    C,
}

/// 4×4 homogeneous matrix of kind `D` or `C`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct HomogeneousMatrix<S> {
    pub mat: Mat4<S>,
    pub kind: MatrixKind,
}

/// Homogeneous realization of the `(v, R)` part of `g`; translations are
/// stripped. `D` fixes the time row, `C` fixes the space block up to
/// rotation and shears time by `−(R⁻¹β)ᵀ`.
pub fn homogeneous_matrix<S: Scalar>(g: &GroupElement<S>, kind: MatrixKind) -> HomogeneousMatrix<S> {
    let r = g.rot.matrix();
    let beta = g.beta();
    let mut m = Mat4::identity();
    for i in 0..3 {
        for j in 0..3 {
            m.0[i][j] = r.0[i][j];
        }
    }
    match kind {
        MatrixKind::D => {
            for i in 0..3 {
                m.0[i][3] = beta[i];
            }
        }
        MatrixKind::C => {
            let row = g.rot.apply_inv(beta);
            for j in 0..3 {
                m.0[3][j] = -row[j];
            }
        }
    }
    HomogeneousMatrix { mat: m, kind }
}

/// Residual `|⟨D(g)x, C(g)y⟩ − ⟨x,y⟩|` of the invariant pairing, for the
/// homogeneous part of `g`.
pub fn pairing_invariance<S: Scalar>(g: &GroupElement<S>, x: [S; 4], y: [S; 4]) -> S {
    let d = homogeneous_matrix(g, MatrixKind::D).mat;
    let c = homogeneous_matrix(g, MatrixKind::C).mat;
    let dx = d.apply(&x);
    let cy = c.apply(&y);
    let before = (0..4).fold(S::zero(), |s, i| s + x[i] * y[i]);
    let after = (0..4).fold(S::zero(), |s, i| s + dx[i] * cy[i]);
    (after - before).abs()
}

/// Element of the 1+1-dimensional Poincaré group (boost rapidity expressed
/// through `β`, plus space/time translations).
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Poincare2Element<S> {
    pub beta: S,
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> Poincare2Element<S> {
    pub fn gamma(&self) -> S {
        (S::one() - self.beta * self.beta).sqrt().recip()
    }
}

/// 3×3 matrix `[γ  γβ  a; γβ  γ  cb; 0  0  1]` acting on `(x, ct, 1)`.
pub fn poincare2_matrix<S: Scalar>(p: &Poincare2Element<S>) -> Result<Mat3<S>> {
    if p.beta.abs() >= S::one() {
        return Err(Error::BetaOutOfRange {
            beta: p.beta.to_f64().unwrap_or(f64::NAN),
            bound: 1.0,
        });
    }
    let g = p.gamma();
    let z = S::zero();
    Ok(Mat([
        [g, g * p.beta, p.a],
        [g * p.beta, g, p.c * p.b],
        [z, z, S::one()],
    ]))
}

/// Element of the centrally extended Galilei group: a central parameter `α`
/// riding along a Galilei element, with central charge scale `κ = m`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct ExtendedGroupElement<S> {
    pub alpha: S,
    pub g: GroupElement<S>,
    pub mass: S,
}

impl<S: Scalar> ExtendedGroupElement<S> {
    pub fn identity(mass: S, c: S) -> Self {
        ExtendedGroupElement {
            alpha: S::zero(),
            g: GroupElement::identity(Flavor::Galilei, c),
            mass,
        }
    }

    /// Pure central element `(α, e)`.
    pub fn central(alpha: S, mass: S, c: S) -> Self {
        ExtendedGroupElement { alpha, ..Self::identity(mass, c) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = GroupElement<f64>;

    fn gal(b: f64, a: [f64; 3], v: [f64; 3]) -> G {
        G::new(Flavor::Galilei, b, Vec3(a), Vec3(v), Rotation::identity())
    }

    fn dual(b: f64, a: [f64; 3], v: [f64; 3]) -> G {
        G::new(Flavor::DualGalilei, b, Vec3(a), Vec3(v), Rotation::identity())
    }

    #[test]
    fn galilei_compose_worked_example() {
        // (1,(1,0,0),(0,1,0),I)·(2,(0,0,3),(1,0,0),I) = (3,(1,2,3),(1,1,0),I)
        let g = compose(&gal(1.0, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]),
                        &gal(2.0, [0.0, 0.0, 3.0], [1.0, 0.0, 0.0])).unwrap();
        assert_eq!(g.b, 3.0);
        assert_eq!(g.a.0, [1.0, 2.0, 3.0]);
        assert_eq!(g.v.0, [1.0, 1.0, 0.0]);
    }

    #[test]
    fn dual_compose_worked_example() {
        // (1,(1,0,0),(0,2,0),I)·(2,(0,3,0),(0,0,0),I) = (−3,(1,3,0),(0,2,0),I)
        let g = compose(&dual(1.0, [1.0, 0.0, 0.0], [0.0, 2.0, 0.0]),
                        &dual(2.0, [0.0, 3.0, 0.0], [0.0, 0.0, 0.0])).unwrap();
        assert_eq!(g.b, -3.0);
        assert_eq!(g.a.0, [1.0, 3.0, 0.0]);
        assert_eq!(g.v.0, [0.0, 2.0, 0.0]);
    }

    #[test]
    fn identity_is_neutral() {
        let g = gal(0.7, [0.1, -0.2, 0.3], [1.0, 0.0, -0.5]);
        let e = G::identity(Flavor::Galilei, 1.0);
        assert_eq!(compose(&e, &g).unwrap(), g);
        assert_eq!(compose(&g, &e).unwrap(), g);
    }

    #[test]
    fn dual_inverse_worked_example() {
        // (1,(2,0,0),(3,0,0),I)⁻¹ = (−7,(−2,0,0),(−3,0,0),I) at c = 1
        let g = dual(1.0, [2.0, 0.0, 0.0], [3.0, 0.0, 0.0]);
        let gi = inverse(&g);
        assert_eq!(gi.b, -7.0);
        assert_eq!(gi.a.0, [-2.0, 0.0, 0.0]);
        assert_eq!(gi.v.0, [-3.0, 0.0, 0.0]);
        let e = compose(&gi, &g).unwrap();
        assert!(e.b.abs() < 1e-15 && e.a.max_abs() < 1e-15 && e.v.max_abs() < 1e-15);
    }

    #[test]
    fn pure_translation_inverse() {
        let g = gal(0.0, [0.4, -1.0, 2.0], [0.0, 0.0, 0.0]);
        let gi = inverse(&g);
        assert_eq!(gi.a.0, [-0.4, 1.0, -2.0]);
        assert_eq!(gi.b, 0.0);
    }

    #[test]
    fn flavor_mismatch_is_rejected() {
        let e = compose(&gal(0.0, [0.0; 3], [0.0; 3]), &dual(0.0, [0.0; 3], [0.0; 3]));
        assert!(matches!(e, Err(Error::FlavorMismatch { .. })));
    }

    #[test]
    fn dual_affine_time_shear() {
        // β = (0.1,0,0), a = b = 0 on (x=(1,0,0), ct=5) → ct' = 4.9
        let g = dual(0.0, [0.0; 3], [0.1, 0.0, 0.0]);
        let (x, ct) = to_affine(&g).apply_event(Vec3::new(1.0, 0.0, 0.0), 5.0);
        assert!((x - Vec3::new(1.0, 0.0, 0.0)).max_abs() < 1e-15);
        assert!((ct - 4.9).abs() < 1e-15);
    }

    #[test]
    fn galilei_affine_boost_drift() {
        // β = (0.1,0,0) on (x=0, ct=5) → x' = (0.5,0,0)
        let g = gal(0.0, [0.0; 3], [0.1, 0.0, 0.0]);
        let (x, ct) = to_affine(&g).apply_event(Vec3::zero(), 5.0);
        assert!((x - Vec3::new(0.5, 0.0, 0.0)).max_abs() < 1e-15);
        assert_eq!(ct, 5.0);
    }

    #[test]
    fn affine_identity() {
        let e = G::identity(Flavor::DualGalilei, 1.0);
        assert_eq!(to_affine(&e).mat.0, Mat5::<f64>::identity().0);
    }

    #[test]
    fn homogeneous_c_worked_example() {
        // R = I, β = (0.2,0,0): C has bottom row (−0.2, 0, 0, 1), space block I.
        let g = dual(0.0, [0.0; 3], [0.2, 0.0, 0.0]);
        let c = homogeneous_matrix(&g, MatrixKind::C).mat;
        assert_eq!(c.0[3], [-0.2, 0.0, 0.0, 1.0]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c.0[i][j], if i == j { 1.0 } else { 0.0 });
            }
        }
        let d = homogeneous_matrix(&G::identity(Flavor::Galilei, 1.0), MatrixKind::D).mat;
        assert_eq!(d.0, Mat4::<f64>::identity().0);
    }

    #[test]
    fn duality_relation_is_exact() {
        // C(g) = Dᵀ(g⁻¹) entrywise, bitwise.
        let g = G::new(
            Flavor::Galilei,
            0.3,
            Vec3::new(1.0, -0.5, 0.2),
            Vec3::new(0.4, 0.1, -0.7),
            Rotation { theta: Vec3::new(0.2, -0.9, 0.5) },
        );
        let c = homogeneous_matrix(&g, MatrixKind::C).mat;
        let dt = homogeneous_matrix(&inverse(&g), MatrixKind::D).mat.transpose();
        assert_eq!(c.0, dt.0);
    }

    #[test]
    fn pairing_invariance_boost() {
        let g = gal(0.0, [0.0; 3], [0.3, 0.0, 0.0]);
        let r = pairing_invariance(&g, [1.0, 0.0, 0.0, 2.0], [4.0, 0.0, 0.0, 5.0]);
        assert!(r < 1e-12, "pairing residual = {r}");
        assert_eq!(pairing_invariance(&g, [0.0; 4], [0.0; 4]), 0.0);
    }

    #[test]
    fn poincare2_rest_frame_and_boost() {
        let rest = Poincare2Element::<f64> { beta: 0.0, a: 2.0, b: 3.0, c: 1.0 };
        let m = poincare2_matrix(&rest).unwrap();
        assert_eq!(m.0, [[1.0, 0.0, 2.0], [0.0, 1.0, 3.0], [0.0, 0.0, 1.0]]);

        // β = 0.6 → γ = 1.25
        let boost = Poincare2Element::<f64> { beta: 0.6, a: 0.0, b: 0.0, c: 1.0 };
        let m = poincare2_matrix(&boost).unwrap();
        assert!((m.0[0][0] - 1.25).abs() < 1e-15);
        assert!((m.0[0][1] - 0.75).abs() < 1e-15);
        assert!((m.0[1][0] - 0.75).abs() < 1e-15);
        assert!((m.0[1][1] - 1.25).abs() < 1e-15);

        assert!(matches!(
            poincare2_matrix(&Poincare2Element::<f64> { beta: 1.0, a: 0.0, b: 0.0, c: 1.0 }),
            Err(Error::BetaOutOfRange { .. })
        ));
    }

    #[test]
    fn poincare2_velocity_addition() {
        let b1 = 0.5;
        let b2 = -0.3;
        let m1 = poincare2_matrix(&Poincare2Element::<f64> { beta: b1, a: 0.0, b: 0.0, c: 1.0 }).unwrap();
        let m2 = poincare2_matrix(&Poincare2Element::<f64> { beta: b2, a: 0.0, b: 0.0, c: 1.0 }).unwrap();
        let sum = (b1 + b2) / (1.0 + b1 * b2);
        let m12 = poincare2_matrix(&Poincare2Element::<f64> { beta: sum, a: 0.0, b: 0.0, c: 1.0 }).unwrap();
        assert!((m2 * m1).max_abs_diff(&m12) < 1e-14);
    }

    #[test]
    fn element_json_round_trip() {
        let g = G::new(
            Flavor::DualGalilei,
            0.25,
            Vec3::new(1.0, 2.0, 3.0),
            Vec3::new(-0.1, 0.0, 0.4),
            Rotation { theta: Vec3::new(0.0, 0.5, 0.0) },
        )
        .with_c(2.0);
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"flavor\":\"dual-galilei\""));
        assert!(s.contains("\"theta\""));
        let back: G = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
