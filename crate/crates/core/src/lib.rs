//! Group theory of the Galilei group G(1:3) and its dual G(3:1), with
//! numerical verification end to end: product laws and matrix realizations,
//! the contraction family connecting both groups to the 1+1 Poincaré group,
//! Lie-algebra tables cross-checked against realizations, unitary
//! irreducible representations on sampled wavefunctions, and the two
//! Galilean limits of electromagnetism — including the statics-only
//! character of the electric limit.
//!
//! All core math is generic over the floating-point scalar via
//! [`scalar::Scalar`]; `f64` aliases for the main types live at the crate
//! root and are what the verification suites and the CLI use.

// Numeric kernels index several arrays in lockstep; iterator rewrites of
// those loops read worse, not better.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod container;
pub mod contraction;
pub mod em;
pub mod error;
pub mod fft;
pub mod grid;
pub mod groups;
pub mod linalg;
pub mod poisson;
pub mod poly;
pub mod report;
pub mod reps;
pub mod rng;
pub mod rotation;
pub mod scalar;
pub mod special;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Working precision of the verification targets.
pub type Real = f64;

pub type Vec3r = linalg::Vec3<Real>;
pub type Mat3r = linalg::Mat3<Real>;
pub type Mat4r = linalg::Mat4<Real>;
pub type Mat5r = linalg::Mat5<Real>;
pub type RotationR = rotation::Rotation<Real>;
pub type GroupElementR = groups::GroupElement<Real>;
pub type ExtendedGroupElementR = groups::ExtendedGroupElement<Real>;
pub type AffineMatrixR = groups::AffineMatrix<Real>;
pub type HomogeneousMatrixR = groups::HomogeneousMatrix<Real>;
pub type Poincare2ElementR = groups::Poincare2Element<Real>;
pub type ContractedFamilyElementR = contraction::ContractedFamilyElement<Real>;
pub type AlgebraVectorR = algebra::AlgebraVector<Real>;
pub type StructureConstantTableR = algebra::StructureConstantTable<Real>;
pub type CocycleValueR = algebra::CocycleValue<Real>;
pub type Grid3r = grid::Grid3<Real>;
pub type WaveFunctionR = reps::WaveFunction<Real>;
pub type FieldStateR = em::FieldState<Real>;
pub type PotentialStateR = em::PotentialState<Real>;
pub type SourceStateR = em::SourceState<Real>;
pub type FrameChangeR = em::FrameChange<Real>;

/// Single-precision aliases, for callers that want the generic core at f32.
pub type GroupElement32 = groups::GroupElement<f32>;
pub type Rotation32 = rotation::Rotation<f32>;
pub type Grid32 = grid::Grid3<f32>;
