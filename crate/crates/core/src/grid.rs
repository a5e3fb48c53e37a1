//! Uniform periodic 3-D grids: coordinates, spectral operators, exact
//! resampling maps, and 4th-order stencils.
//!
//! Grids are centered: along axis `d` the sample index `i` carries the
//! coordinate `(i − n_d/2)·h_d`, wrapped periodically over the extent
//! `L_d = n_d·h_d`. Two derivative backends are provided:
//!
//! * spectral — exact on the trigonometric interpolant (Nyquist mode
//!   dropped), used for periodic-smooth work;
//! * 4th-order central differences — used for the refinement studies where
//!   a measurable truncation order is the point.
//!
//! Rigid translations are applied as Fourier shifts (exact on the
//! interpolant); rotations from the octahedral subgroup of the cube act as
//! exact index permutations. Anything else falls back to trilinear
//! interpolation.

use crate::error::{Error, Result};
use crate::fft::fft3;
use crate::linalg::{Mat3, Vec3};
use crate::rotation::Rotation;
use crate::scalar::{cis, Scalar, C};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// Uniform centered periodic grid.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid3<S> {
    pub n: [usize; 3],
    pub step: [S; 3],
}

impl<S: Scalar> Grid3<S> {
    pub fn cubic(n: usize, step: S) -> Self {
        Grid3 { n: [n; 3], step: [step; 3] }
    }

    pub fn len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: [usize; 3]) -> usize {
        (i[0] * self.n[1] + i[1]) * self.n[2] + i[2]
    }

    /// Coordinate of sample `i` along `axis`.
    pub fn coord(&self, axis: usize, i: usize) -> S {
        (S::from_f64_lossy(i as f64) - S::from_f64_lossy((self.n[axis] / 2) as f64))
            * self.step[axis]
    }

    pub fn point(&self, i: [usize; 3]) -> Vec3<S> {
        Vec3::new(self.coord(0, i[0]), self.coord(1, i[1]), self.coord(2, i[2]))
    }

    pub fn extent(&self, axis: usize) -> S {
        self.step[axis] * S::from_f64_lossy(self.n[axis] as f64)
    }

    pub fn cell_volume(&self) -> S {
        self.step[0] * self.step[1] * self.step[2]
    }

    /// FFT-layout wavenumber of mode `m` along `axis` (signed; Nyquist kept
    /// negative).
    pub fn freq(&self, axis: usize, m: usize) -> S {
        let n = self.n[axis];
        let signed = if m < n / 2 { m as f64 } else { m as f64 - n as f64 };
        S::from_f64_lossy(signed) * S::TAU() / self.extent(axis)
    }

    /// The centered reciprocal grid: step `2π/(n·h)` per axis.
    pub fn reciprocal(&self) -> Grid3<S> {
        Grid3 {
            n: self.n,
            step: [
                S::TAU() / self.extent(0),
                S::TAU() / self.extent(1),
                S::TAU() / self.extent(2),
            ],
        }
    }

    pub fn iter_indices(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let n = self.n;
        (0..n[0]).flat_map(move |i| (0..n[1]).flat_map(move |j| (0..n[2]).map(move |k| [i, j, k])))
    }

    pub fn same_shape(&self, other: &Self) -> Result<()> {
        if self != other {
            return Err(Error::GridMismatch(format!("{:?} vs {:?}", self, other)));
        }
        Ok(())
    }
}

/// Discrete L² norm with the cell-volume measure.
pub fn l2_norm<S: Scalar>(grid: &Grid3<S>, data: &[C<S>]) -> S {
    let sum = data.iter().fold(S::zero(), |acc, z| acc + z.norm_sqr());
    (sum * grid.cell_volume()).sqrt()
}

pub fn l2_norm_real<S: Scalar>(grid: &Grid3<S>, data: &[S]) -> S {
    let sum = data.iter().fold(S::zero(), |acc, &x| acc + x * x);
    (sum * grid.cell_volume()).sqrt()
}

pub fn max_abs<S: Scalar>(data: &[S]) -> S {
    data.iter().fold(S::zero(), |m, &x| m.max(x.abs()))
}

pub fn max_norm_c<S: Scalar>(data: &[C<S>]) -> S {
    data.iter().fold(S::zero(), |m, z| m.max(z.norm()))
}

/// Multiply each sample by a function of its grid point.
pub fn multiply_phase<S: Scalar>(
    grid: &Grid3<S>,
    data: &mut [C<S>],
    mut phase: impl FnMut(Vec3<S>) -> S,
) {
    for idx in grid.iter_indices() {
        let p = grid.point(idx);
        data[grid.index(idx)] *= cis(phase(p));
    }
}

/// `out(x) = f(x − s)`: exact Fourier shift of the periodic interpolant.
pub fn spectral_shift<S: Scalar>(grid: &Grid3<S>, data: &[C<S>], s: Vec3<S>) -> Vec<C<S>> {
    let mut spec = data.to_vec();
    fft3(&mut spec, grid.n, false);
    for idx in grid.iter_indices() {
        let k = Vec3::new(
            grid.freq(0, idx[0]),
            grid.freq(1, idx[1]),
            grid.freq(2, idx[2]),
        );
        spec[grid.index(idx)] *= cis(-k.dot(s));
    }
    fft3(&mut spec, grid.n, true);
    spec
}

/// Spectral partial derivative along `axis` (Nyquist mode zeroed).
pub fn spectral_derivative<S: Scalar>(grid: &Grid3<S>, data: &[C<S>], axis: usize) -> Vec<C<S>> {
    let mut spec = data.to_vec();
    fft3(&mut spec, grid.n, false);
    for idx in grid.iter_indices() {
        let m = idx[axis];
        let k = if m == grid.n[axis] / 2 { S::zero() } else { grid.freq(axis, m) };
        spec[grid.index(idx)] *= Complex::new(S::zero(), k);
    }
    fft3(&mut spec, grid.n, true);
    spec
}

/// Apply a diagonal spectral multiplier `F(k)`.
pub fn spectral_filter<S: Scalar>(
    grid: &Grid3<S>,
    data: &[C<S>],
    mut f: impl FnMut(Vec3<S>) -> C<S>,
) -> Vec<C<S>> {
    let mut spec = data.to_vec();
    fft3(&mut spec, grid.n, false);
    for idx in grid.iter_indices() {
        let k = Vec3::new(
            grid.freq(0, idx[0]),
            grid.freq(1, idx[1]),
            grid.freq(2, idx[2]),
        );
        spec[grid.index(idx)] *= f(k);
    }
    fft3(&mut spec, grid.n, true);
    spec
}

/// 4th-order central difference along `axis`, periodic.
pub fn fd4_derivative_c<S: Scalar>(grid: &Grid3<S>, data: &[C<S>], axis: usize) -> Vec<C<S>> {
    let n = grid.n;
    let len = n[axis] as isize;
    let inv = (S::from_f64_lossy(12.0) * grid.step[axis]).recip();
    let eight = S::from_f64_lossy(8.0);
    let mut out = vec![Complex::new(S::zero(), S::zero()); data.len()];
    for idx in grid.iter_indices() {
        let at = |off: isize| {
            let mut j = idx;
            j[axis] = ((idx[axis] as isize + off).rem_euclid(len)) as usize;
            data[grid.index(j)]
        };
        out[grid.index(idx)] =
            ((at(1) - at(-1)) * eight - at(2) + at(-2)) * inv;
    }
    out
}

/// 4th-order central difference of a real field.
pub fn fd4_derivative<S: Scalar>(grid: &Grid3<S>, data: &[S], axis: usize) -> Vec<S> {
    let n = grid.n;
    let len = n[axis] as isize;
    let inv = (S::from_f64_lossy(12.0) * grid.step[axis]).recip();
    let eight = S::from_f64_lossy(8.0);
    let mut out = vec![S::zero(); data.len()];
    for idx in grid.iter_indices() {
        let at = |off: isize| {
            let mut j = idx;
            j[axis] = ((idx[axis] as isize + off).rem_euclid(len)) as usize;
            data[grid.index(j)]
        };
        out[grid.index(idx)] = ((at(1) - at(-1)) * eight - at(2) + at(-2)) * inv;
    }
    out
}

/// Spectral derivative of a real field (imaginary residue discarded).
pub fn spectral_derivative_real<S: Scalar>(grid: &Grid3<S>, data: &[S], axis: usize) -> Vec<S> {
    let complex: Vec<C<S>> = data.iter().map(|&x| Complex::new(x, S::zero())).collect();
    spectral_derivative(grid, &complex, axis).iter().map(|z| z.re).collect()
}

/// Derivative backend selector.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivScheme {
    Spectral,
    Fd4,
}

/// Real-field derivative with the chosen backend.
pub fn derivative_real<S: Scalar>(
    grid: &Grid3<S>,
    data: &[S],
    axis: usize,
    scheme: DerivScheme,
) -> Vec<S> {
    match scheme {
        DerivScheme::Spectral => spectral_derivative_real(grid, data, axis),
        DerivScheme::Fd4 => fd4_derivative(grid, data, axis),
    }
}

// ---------------------------------------------------------------------------
// Octahedral rotations: exact index-space resampling
// ---------------------------------------------------------------------------

/// A proper rotation of the cube, stored as a signed permutation:
/// `(R x)_{perm[d]} = sign[d] · x_d`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct OctahedralRotation {
    pub perm: [usize; 3],
    pub neg: [bool; 3],
}

impl OctahedralRotation {
    pub const IDENTITY: OctahedralRotation =
        OctahedralRotation { perm: [0, 1, 2], neg: [false, false, false] };

    /// All 24 proper rotations.
    pub fn all() -> Vec<OctahedralRotation> {
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut out = Vec::with_capacity(24);
        for perm in perms {
            for bits in 0..8u8 {
                let neg = [bits & 1 != 0, bits & 2 != 0, bits & 4 != 0];
                let r = OctahedralRotation { perm, neg };
                if r.det() == 1 {
                    out.push(r);
                }
            }
        }
        debug_assert_eq!(out.len(), 24);
        out
    }

    fn perm_sign(&self) -> i32 {
        match self.perm {
            [0, 1, 2] | [1, 2, 0] | [2, 0, 1] => 1,
            _ => -1,
        }
    }

    pub fn det(&self) -> i32 {
        let s = self.neg.iter().fold(1, |acc, &n| if n { -acc } else { acc });
        self.perm_sign() * s
    }

    pub fn matrix<S: Scalar>(&self) -> Mat3<S> {
        let mut m = Mat3::zero();
        for d in 0..3 {
            m.0[self.perm[d]][d] = if self.neg[d] { -S::one() } else { S::one() };
        }
        m
    }

    pub fn to_rotation<S: Scalar>(&self) -> Rotation<S> {
        Rotation::from_matrix(self.matrix())
    }

    /// Inverse signed permutation.
    pub fn inverse(&self) -> OctahedralRotation {
        let mut perm = [0usize; 3];
        let mut neg = [false; 3];
        for d in 0..3 {
            perm[self.perm[d]] = d;
            neg[self.perm[d]] = self.neg[d];
        }
        OctahedralRotation { perm, neg }
    }

    /// Recognize a rotation whose matrix is a signed permutation (within
    /// `tol`); returns `None` otherwise.
    pub fn from_rotation<S: Scalar>(rot: &Rotation<S>, tol: S) -> Option<OctahedralRotation> {
        let m = rot.matrix();
        let mut perm = [usize::MAX; 3];
        let mut neg = [false; 3];
        for d in 0..3 {
            let mut found = None;
            for r in 0..3 {
                let x = m.0[r][d];
                if (x.abs() - S::one()).abs() < tol {
                    if found.is_some() {
                        return None;
                    }
                    found = Some((r, x < S::zero()));
                } else if x.abs() > tol {
                    return None;
                }
            }
            let (r, s) = found?;
            perm[d] = r;
            neg[d] = s;
        }
        // Columns must hit distinct rows; proper rotations only.
        let mut seen = [false; 3];
        for &p in &perm {
            if seen[p] {
                return None;
            }
            seen[p] = true;
        }
        let oct = OctahedralRotation { perm, neg };
        (oct.det() == 1).then_some(oct)
    }
}

/// Exact pullback `out(x) = f(R⁻¹ x)` by index permutation. The grid must
/// have equal extent along axes mixed by the permutation.
pub fn octahedral_pullback<S: Scalar, T: Copy + Default>(
    grid: &Grid3<S>,
    data: &[T],
    rot: &OctahedralRotation,
) -> Vec<T> {
    let inv = rot.inverse();
    for d in 0..3 {
        assert_eq!(
            grid.n[d], grid.n[inv.perm[d]],
            "octahedral pullback needs matching axis sizes"
        );
    }
    let n = grid.n;
    let mut out = vec![T::default(); data.len()];
    for idx in grid.iter_indices() {
        // integer offsets of the output point
        let off = [
            idx[0] as i64 - (n[0] / 2) as i64,
            idx[1] as i64 - (n[1] / 2) as i64,
            idx[2] as i64 - (n[2] / 2) as i64,
        ];
        // source point R⁻¹ x as integer offsets: (R⁻¹x)_{perm[d]} = ±x_d
        let mut src_off = [0i64; 3];
        for d in 0..3 {
            src_off[inv.perm[d]] = if inv.neg[d] { -off[d] } else { off[d] };
        }
        let src = [
            (src_off[0] + (n[0] / 2) as i64).rem_euclid(n[0] as i64) as usize,
            (src_off[1] + (n[1] / 2) as i64).rem_euclid(n[1] as i64) as usize,
            (src_off[2] + (n[2] / 2) as i64).rem_euclid(n[2] as i64) as usize,
        ];
        out[grid.index(idx)] = data[grid.index(src)];
    }
    out
}

/// Periodic trilinear sample of a complex field at an arbitrary point.
pub fn sample_trilinear<S: Scalar>(grid: &Grid3<S>, data: &[C<S>], p: Vec3<S>) -> C<S> {
    let mut base = [0usize; 3];
    let mut frac = [S::zero(); 3];
    for d in 0..3 {
        let u = p[d] / grid.step[d] + S::from_f64_lossy((grid.n[d] / 2) as f64);
        let fl = u.floor();
        base[d] = (fl.to_f64().unwrap() as i64).rem_euclid(grid.n[d] as i64) as usize;
        frac[d] = u - fl;
    }
    let mut acc = Complex::new(S::zero(), S::zero());
    for corner in 0..8usize {
        let mut w = S::one();
        let mut idx = [0usize; 3];
        for d in 0..3 {
            if corner >> d & 1 == 1 {
                idx[d] = (base[d] + 1) % grid.n[d];
                w *= frac[d];
            } else {
                idx[d] = base[d];
                w *= S::one() - frac[d];
            }
        }
        acc += data[grid.index(idx)] * w;
    }
    acc
}

/// `out(x) = f(R⁻¹x)` for an arbitrary rotation, via trilinear sampling.
pub fn trilinear_pullback<S: Scalar>(grid: &Grid3<S>, data: &[C<S>], rot: &Rotation<S>) -> Vec<C<S>> {
    let rinv = rot.inverse().matrix();
    let mut out = vec![Complex::new(S::zero(), S::zero()); data.len()];
    for idx in grid.iter_indices() {
        let x = grid.point(idx);
        out[grid.index(idx)] = sample_trilinear(grid, data, rinv.apply_vec3(x));
    }
    out
}

/// Pull a complex field back through `x ↦ R⁻¹(x − s)`: exact permutation for
/// octahedral `R` plus an exact Fourier shift, trilinear otherwise.
pub fn rotate_shift_pullback<S: Scalar>(
    grid: &Grid3<S>,
    data: &[C<S>],
    rot: &Rotation<S>,
    shift: Vec3<S>,
) -> Vec<C<S>> {
    let rotated = match OctahedralRotation::from_rotation(rot, S::from_f64_lossy(1e-12)) {
        Some(oct) => {
            if oct == OctahedralRotation::IDENTITY {
                data.to_vec()
            } else {
                octahedral_pullback(grid, data, &oct)
            }
        }
        None => trilinear_pullback(grid, data, rot),
    };
    if shift.max_abs() == S::zero() {
        rotated
    } else {
        spectral_shift(grid, &rotated, shift)
    }
}
