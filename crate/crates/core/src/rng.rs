//! Deterministic counter-based random numbers for property sweeps.
//!
//! Reports must be bit-reproducible across runs and across language ports,
//! so sweeps do not use a stateful generator. Each draw is a pure function
//! of `(seed, stream name, counter)`:
//!
//! ```text
//! key     = splitmix64_mix(seed ⊕ fnv1a64(stream))
//! draw(i) = splitmix64_mix(key + (i+1) * 0x9E3779B97F4A7C15)
//! u64 → f64 in [0,1): take the top 53 bits, scale by 2⁻⁵³
//! ```
//!
//! `splitmix64_mix` is the finalizer of Steele et al.'s SplitMix64;
//! `fnv1a64` is the standard 64-bit FNV-1a hash of the UTF-8 stream name.

use crate::algebra::{AlgebraFlavor, AlgebraVector};
use crate::groups::{Flavor, GroupElement};
use crate::linalg::Vec3;
use crate::rotation::Rotation;
use crate::scalar::Scalar;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a64(s: &str) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for b in s.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// Stateless counter-based stream of uniform draws.
#[derive(Copy, Clone, Debug)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(seed: u64, stream: &str) -> Self {
        CounterRng { key: splitmix64_mix(seed ^ fnv1a64(stream)) }
    }

    pub fn bits(&self, counter: u64) -> u64 {
        splitmix64_mix(self.key.wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN)))
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&self, counter: u64) -> f64 {
        (self.bits(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&self, counter: u64, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform(counter)
    }
}

/// Sequential consumer over a [`CounterRng`]; still deterministic, the
/// counter just advances internally.
#[derive(Debug)]
pub struct Draws {
    rng: CounterRng,
    counter: u64,
}

impl Draws {
    pub fn new(seed: u64, stream: &str) -> Self {
        Draws { rng: CounterRng::new(seed, stream), counter: 0 }
    }

    pub fn uniform(&mut self) -> f64 {
        let x = self.rng.uniform(self.counter);
        self.counter += 1;
        x
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn index(&mut self, n: usize) -> usize {
        let x = self.rng.bits(self.counter);
        self.counter += 1;
        (x % n as u64) as usize
    }

    pub fn vec3<S: Scalar>(&mut self, lo: f64, hi: f64) -> Vec3<S> {
        Vec3::new(
            S::from_f64_lossy(self.range(lo, hi)),
            S::from_f64_lossy(self.range(lo, hi)),
            S::from_f64_lossy(self.range(lo, hi)),
        )
    }

    pub fn scalar<S: Scalar>(&mut self, lo: f64, hi: f64) -> S {
        S::from_f64_lossy(self.range(lo, hi))
    }

    /// Uniform direction on the sphere (rejection-free via z, φ).
    pub fn unit_vec3<S: Scalar>(&mut self) -> Vec3<S> {
        let z = self.range(-1.0, 1.0);
        let phi = self.range(0.0, std::f64::consts::TAU);
        let r = (1.0 - z * z).sqrt();
        Vec3::new(
            S::from_f64_lossy(r * phi.cos()),
            S::from_f64_lossy(r * phi.sin()),
            S::from_f64_lossy(z),
        )
    }

    /// Random rotation: uniform axis, angle uniform in `[0, π)`.
    pub fn rotation<S: Scalar>(&mut self) -> Rotation<S> {
        let axis = self.unit_vec3::<S>();
        let angle = S::from_f64_lossy(self.range(0.0, std::f64::consts::PI));
        Rotation::from_axis_angle(axis, angle)
    }

    /// Random group element with order-unity parameters (`b, a_i, v_i` in
    /// `[−2, 2)`, full random rotation) at `c = 1`.
    pub fn group_element<S: Scalar>(&mut self, flavor: Flavor) -> GroupElement<S> {
        GroupElement {
            flavor,
            b: self.scalar(-2.0, 2.0),
            a: self.vec3(-2.0, 2.0),
            v: self.vec3(-2.0, 2.0),
            rot: self.rotation(),
            c: S::one(),
        }
    }

    /// Random algebra vector with coefficients in `[−1, 1)`.
    pub fn algebra_vector<S: Scalar>(&mut self, flavor: AlgebraFlavor, c: S) -> AlgebraVector<S> {
        let mut v = AlgebraVector::zero(flavor, c);
        for x in v.coeffs.iter_mut() {
            *x = self.scalar(-1.0, 1.0);
        }
        v
    }
}
