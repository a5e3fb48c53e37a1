//! Electrostatic Poisson solvers: Fourier-space division on periodic grids
//! and conjugate gradients with the 7-point Laplacian under zero-Dirichlet
//! walls.
//!
//! The field convention follows the gauge-field definition used throughout
//! the crate, `E = +∇A0` for static potentials, so Gauss's law
//! `∇·E = (c/g²)ρ` becomes `∇²A0 = (c/g²)ρ`.

use crate::error::{Error, Result};
use crate::fft::fft3;
use crate::grid::{derivative_real, DerivScheme, Grid3};
use crate::scalar::{Scalar, C};
use num_complex::Complex;

/// Boundary handling for [`solve_poisson`].
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PoissonBc {
    /// Spectral solve; a uniform neutralizing background absorbs any net
    /// charge (the k = 0 mode is dropped).
    PeriodicNeutralized,
    /// Spectral solve that refuses non-neutral sources.
    PeriodicStrict,
    /// Zero potential on the box boundary, 7-point Laplacian + CG.
    DirichletZero,
}

pub struct PoissonSolution<S> {
    pub a0: Vec<S>,
    /// `E = ∇A0`, componentwise.
    pub e: [Vec<S>; 3],
    /// Residual of the discrete system actually solved: spectral Gauss-law
    /// residual for the periodic paths, `‖L_h A0 − rhs‖∞` for CG.
    pub solver_residual: S,
    pub cg_iterations: usize,
}

/// Solve `∇²A0 = (c/g²)ρ` and return `A0` and `E = ∇A0`.
pub fn solve_poisson<S: Scalar>(
    grid: &Grid3<S>,
    rho: &[S],
    c: S,
    coupling: S,
    bc: PoissonBc,
) -> Result<PoissonSolution<S>> {
    let scale = c / (coupling * coupling);
    match bc {
        PoissonBc::PeriodicNeutralized | PoissonBc::PeriodicStrict => {
            let total: S = rho.iter().fold(S::zero(), |s, &x| s + x) * grid.cell_volume();
            if bc == PoissonBc::PeriodicStrict
                && total.abs() > S::from_f64_lossy(1e-10)
            {
                return Err(Error::Precondition(format!(
                    "periodic solve without background requires a neutral source, got total charge {total}"
                )));
            }
            solve_periodic(grid, rho, scale)
        }
        PoissonBc::DirichletZero => solve_dirichlet(grid, rho, scale),
    }
}

fn solve_periodic<S: Scalar>(grid: &Grid3<S>, rho: &[S], scale: S) -> Result<PoissonSolution<S>> {
    let mut spec: Vec<C<S>> = rho.iter().map(|&x| Complex::new(x * scale, S::zero())).collect();
    fft3(&mut spec, grid.n, false);
    for idx in grid.iter_indices() {
        let k = [
            grid.freq(0, idx[0]),
            grid.freq(1, idx[1]),
            grid.freq(2, idx[2]),
        ];
        let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        let lin = grid.index(idx);
        if k2 == S::zero() {
            spec[lin] = Complex::new(S::zero(), S::zero());
        } else {
            spec[lin] = -spec[lin] / k2;
        }
    }
    fft3(&mut spec, grid.n, true);
    let a0: Vec<S> = spec.iter().map(|z| z.re).collect();
    let e = [
        derivative_real(grid, &a0, 0, DerivScheme::Spectral),
        derivative_real(grid, &a0, 1, DerivScheme::Spectral),
        derivative_real(grid, &a0, 2, DerivScheme::Spectral),
    ];
    // measure the spectral Gauss residual against the neutralized source
    let mean = rho.iter().fold(S::zero(), |s, &x| s + x)
        / S::from_f64_lossy(grid.len() as f64);
    let mut div = vec![S::zero(); grid.len()];
    for (axis, comp) in e.iter().enumerate() {
        let d = derivative_real(grid, comp, axis, DerivScheme::Spectral);
        for (acc, x) in div.iter_mut().zip(&d) {
            *acc += *x;
        }
    }
    let mut worst = S::zero();
    for (d, &r) in div.iter().zip(rho) {
        worst = worst.max((*d - scale * (r - mean)).abs());
    }
    Ok(PoissonSolution { a0, e, solver_residual: worst, cg_iterations: 0 })
}

/// 7-point Laplacian with zero-Dirichlet exterior.
fn apply_laplacian<S: Scalar>(grid: &Grid3<S>, x: &[S], out: &mut [S]) {
    let n = grid.n;
    let inv = [
        (grid.step[0] * grid.step[0]).recip(),
        (grid.step[1] * grid.step[1]).recip(),
        (grid.step[2] * grid.step[2]).recip(),
    ];
    for idx in grid.iter_indices() {
        let lin = grid.index(idx);
        let mut acc = S::zero();
        for d in 0..3 {
            let center = x[lin];
            let mut up = S::zero();
            if idx[d] + 1 < n[d] {
                let mut j = idx;
                j[d] += 1;
                up = x[grid.index(j)];
            }
            let mut dn = S::zero();
            if idx[d] > 0 {
                let mut j = idx;
                j[d] -= 1;
                dn = x[grid.index(j)];
            }
            acc += (up - S::two() * center + dn) * inv[d];
        }
        out[lin] = acc;
    }
}

fn solve_dirichlet<S: Scalar>(grid: &Grid3<S>, rho: &[S], scale: S) -> Result<PoissonSolution<S>> {
    let rhs: Vec<S> = rho.iter().map(|&x| x * scale).collect();
    let len = grid.len();
    let mut a0 = vec![S::zero(); len];
    let mut r = rhs.clone(); // residual = rhs − L·0
    let mut p = r.clone();
    let mut lp = vec![S::zero(); len];
    let dot = |a: &[S], b: &[S]| a.iter().zip(b).fold(S::zero(), |s, (&x, &y)| s + x * y);
    let mut rr = dot(&r, &r);
    let rhs_scale = rhs.iter().fold(S::zero(), |m, &x| m.max(x.abs())).max(S::one());
    let tol = S::from_f64_lossy(1e-12) * rhs_scale;
    let max_iter = 4 * grid.n[0].max(grid.n[1]).max(grid.n[2]) * 8;
    let mut iters = 0;
    for _ in 0..max_iter {
        if rr.sqrt() < tol * S::from_f64_lossy((len as f64).sqrt()) {
            break;
        }
        apply_laplacian(grid, &p, &mut lp);
        let alpha = rr / dot(&p, &lp);
        for i in 0..len {
            a0[i] += alpha * p[i];
            r[i] -= alpha * lp[i];
        }
        let rr_new = dot(&r, &r);
        let beta = rr_new / rr;
        rr = rr_new;
        for i in 0..len {
            p[i] = r[i] + beta * p[i];
        }
        iters += 1;
    }
    apply_laplacian(grid, &a0, &mut lp);
    let mut worst = S::zero();
    for (l, q) in lp.iter().zip(&rhs) {
        worst = worst.max((*l - *q).abs());
    }
    if worst > S::from_f64_lossy(crate::tolerances::POISSON_CG) * rhs_scale {
        return Err(Error::CgDiverged {
            residual: worst.to_f64().unwrap_or(f64::NAN),
            iters,
        });
    }
    // E from centered differences (one-sided 2nd order at the walls).
    let e = [
        dirichlet_gradient(grid, &a0, 0),
        dirichlet_gradient(grid, &a0, 1),
        dirichlet_gradient(grid, &a0, 2),
    ];
    Ok(PoissonSolution { a0, e, solver_residual: worst, cg_iterations: iters })
}

fn dirichlet_gradient<S: Scalar>(grid: &Grid3<S>, a0: &[S], axis: usize) -> Vec<S> {
    let n = grid.n;
    let h2 = S::two() * grid.step[axis];
    let mut out = vec![S::zero(); a0.len()];
    for idx in grid.iter_indices() {
        let lin = grid.index(idx);
        let get = |i: usize| {
            let mut j = idx;
            j[axis] = i;
            a0[grid.index(j)]
        };
        let i = idx[axis];
        out[lin] = if i == 0 {
            let f0 = get(0);
            let f1 = get(1);
            let f2 = get(2);
            (-S::from_f64_lossy(3.0) * f0 + S::from_f64_lossy(4.0) * f1 - f2) / h2
        } else if i == n[axis] - 1 {
            let f0 = get(i);
            let f1 = get(i - 1);
            let f2 = get(i - 2);
            (S::from_f64_lossy(3.0) * f0 - S::from_f64_lossy(4.0) * f1 + f2) / h2
        } else {
            (get(i + 1) - get(i - 1)) / h2
        };
    }
    out
}
