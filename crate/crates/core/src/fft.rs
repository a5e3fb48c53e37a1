//! Radix-2 complex FFT, generic over the crate scalar.
//!
//! Grids in this crate are powers of two per axis, so a plain iterative
//! Cooley-Tukey covers every need; keeping it in-crate also makes CLI
//! reports bit-reproducible. Forward transform is unnormalized,
//! `F[k] = Σ_j f[j] e^{-2πijk/N}`; the inverse divides by `N`.

use crate::scalar::{Scalar, C};
use num_complex::Complex;

fn bit_reverse_permute<S: Scalar>(data: &mut [C<S>]) {
    let n = data.len();
    let mut j = 0usize;
    for i in 0..n {
        if i < j {
            data.swap(i, j);
        }
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
    }
}

/// In-place FFT over a power-of-two slice.
pub fn fft_inplace<S: Scalar>(data: &mut [C<S>], inverse: bool) {
    let n = data.len();
    assert!(n.is_power_of_two(), "fft length must be a power of two, got {n}");
    if n <= 1 {
        return;
    }
    bit_reverse_permute(data);
    let sign = if inverse { S::one() } else { -S::one() };
    let mut len = 2;
    while len <= n {
        let ang = sign * S::TAU() / S::from_f64_lossy(len as f64);
        let wlen = crate::scalar::cis(ang);
        for start in (0..n).step_by(len) {
            let mut w = Complex::new(S::one(), S::zero());
            for k in 0..len / 2 {
                let u = data[start + k];
                let t = data[start + k + len / 2] * w;
                data[start + k] = u + t;
                data[start + k + len / 2] = u - t;
                w *= wlen;
            }
        }
        len <<= 1;
    }
    if inverse {
        let scale = S::from_f64_lossy(n as f64).recip();
        for x in data.iter_mut() {
            *x *= scale;
        }
    }
}

/// FFT along one axis of a 3-D row-major array of shape `n`.
pub fn fft_axis<S: Scalar>(data: &mut [C<S>], n: [usize; 3], axis: usize, inverse: bool) {
    let stride = match axis {
        0 => n[1] * n[2],
        1 => n[2],
        _ => 1,
    };
    let len = n[axis];
    let mut line = vec![Complex::new(S::zero(), S::zero()); len];
    // Iterate over all 1-D lines along `axis`.
    let (outer, inner) = match axis {
        0 => (n[1], n[2]),
        1 => (n[0], n[2]),
        _ => (n[0], n[1]),
    };
    for o in 0..outer {
        for i in 0..inner {
            let base = match axis {
                0 => o * n[2] + i,
                1 => o * n[1] * n[2] + i,
                _ => o * n[1] * n[2] + i * n[2],
            };
            for (k, slot) in line.iter_mut().enumerate() {
                *slot = data[base + k * stride];
            }
            fft_inplace(&mut line, inverse);
            for (k, slot) in line.iter().enumerate() {
                data[base + k * stride] = *slot;
            }
        }
    }
}

/// Full 3-D FFT.
pub fn fft3<S: Scalar>(data: &mut [C<S>], n: [usize; 3], inverse: bool) {
    debug_assert_eq!(data.len(), n[0] * n[1] * n[2]);
    for axis in 0..3 {
        fft_axis(data, n, axis, inverse);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dft_oracle(f: &[C<f64>], inverse: bool) -> Vec<C<f64>> {
        let n = f.len();
        let sign = if inverse { 1.0 } else { -1.0 };
        let mut out = vec![Complex::new(0.0, 0.0); n];
        for (k, slot) in out.iter_mut().enumerate() {
            for (j, &x) in f.iter().enumerate() {
                let ang = sign * std::f64::consts::TAU * (j * k) as f64 / n as f64;
                *slot += x * Complex::new(ang.cos(), ang.sin());
            }
            if inverse {
                *slot /= n as f64;
            }
        }
        out
    }

    #[test]
    fn matches_direct_dft() {
        let mut data: Vec<C<f64>> = (0..16)
            .map(|i| Complex::new((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos()))
            .collect();
        let expected = dft_oracle(&data, false);
        fft_inplace(&mut data, false);
        for (a, b) in data.iter().zip(&expected) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn round_trip_and_parseval() {
        let orig: Vec<C<f64>> = (0..64)
            .map(|i| Complex::new((i as f64).sin(), (i as f64 * 0.11).cos()))
            .collect();
        let mut data = orig.clone();
        fft_inplace(&mut data, false);
        let spec_energy: f64 = data.iter().map(|z| z.norm_sqr()).sum::<f64>() / 64.0;
        let time_energy: f64 = orig.iter().map(|z| z.norm_sqr()).sum();
        assert!((spec_energy - time_energy).abs() < 1e-9);
        fft_inplace(&mut data, true);
        for (a, b) in data.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn three_d_round_trip() {
        let n = [4, 8, 2];
        let orig: Vec<C<f64>> = (0..n[0] * n[1] * n[2])
            .map(|i| Complex::new((i as f64 * 0.31).cos(), (i as f64 * 0.17).sin()))
            .collect();
        let mut data = orig.clone();
        fft3(&mut data, n, false);
        fft3(&mut data, n, true);
        for (a, b) in data.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
