//! Contraction of the 1+1 Poincaré group along its translation subgroups.
//!
//! Scaling all parameters except the time translation by `1/α` and
//! conjugating by `S = diag(1/α, 1, 1)` gives the one-parameter family
//!
//! ```text
//! temporal:  [γ(α)      γ(α)β   a ]        spatial:  [γ(α)      γ(α)β/α²  a ]
//!            [γ(α)β/α²  γ(α)    cb]                  [γ(α)β     γ(α)      cb]
//!            [0         0       1 ]                  [0         0         1 ]
//! ```
//!
//! with `γ(α) = (1 − (β/α)²)^{-1/2}`. For each fixed `α ≥ 1` the matrices
//! form a group; at `α = 1` they are the Poincaré matrices. As `α → ∞` the
//! temporal family converges to the 1+1 Galilei matrices and the spatial
//! family (obtained by scaling everything but `a`) to the 1+1 dual Galilei
//! matrices, each at rate `O(α⁻²)` in the slowest entry.

use crate::error::{Error, Result};

use crate::linalg::{Mat, Mat3};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Which translation subgroup is held fixed during the contraction.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContractionMode {
    /// `b → b`; limit is the Galilei group.
    Temporal,
    /// `a → a`; limit is the dual Galilei group.
    Spatial,
}

/// Element of the scaled family `G(α)`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractedFamilyElement<S> {
    pub alpha: S,
    pub mode: ContractionMode,
    pub beta: S,
    pub a: S,
    pub b: S,
    pub c: S,
}

impl<S: Scalar> ContractedFamilyElement<S> {
    pub fn gamma(&self) -> S {
        let r = self.beta / self.alpha;
        (S::one() - r * r).sqrt().recip()
    }
}

/// The 3×3 matrix of the family member; requires `|β| < α`.
pub fn family_matrix<S: Scalar>(e: &ContractedFamilyElement<S>) -> Result<Mat3<S>> {
    if e.beta.abs() >= e.alpha {
        return Err(Error::BetaOutOfRange {
            beta: e.beta.to_f64().unwrap_or(f64::NAN),
            bound: e.alpha.to_f64().unwrap_or(f64::NAN),
        });
    }
    let g = e.gamma();
    let a2 = e.alpha * e.alpha;
    let z = S::zero();
    let m = match e.mode {
        ContractionMode::Temporal => Mat([
            [g, g * e.beta, e.a],
            [g * e.beta / a2, g, e.c * e.b],
            [z, z, S::one()],
        ]),
        ContractionMode::Spatial => Mat([
            [g, g * e.beta / a2, e.a],
            [g * e.beta, g, e.c * e.b],
            [z, z, S::one()],
        ]),
    };
    Ok(m)
}

/// α → ∞ limit of the temporal family: `[1 β a; 0 1 cb; 0 0 1]`.
pub fn temporal_limit<S: Scalar>(beta: S, a: S, b: S, c: S) -> Mat3<S> {
    let z = S::zero();
    let o = S::one();
    Mat([[o, beta, a], [z, o, c * b], [z, z, o]])
}

/// α → ∞ limit of the spatial family: `[1 0 a; β 1 cb; 0 0 1]`.
pub fn spatial_limit<S: Scalar>(beta: S, a: S, b: S, c: S) -> Mat3<S> {
    let z = S::zero();
    let o = S::one();
    Mat([[o, z, a], [beta, o, c * b], [z, z, o]])
}

/// Limit matrix for a given mode.
pub fn limit_matrix<S: Scalar>(mode: ContractionMode, beta: S, a: S, b: S, c: S) -> Mat3<S> {
    match mode {
        ContractionMode::Temporal => temporal_limit(beta, a, b, c),
        ContractionMode::Spatial => spatial_limit(beta, a, b, c),
    }
}

/// One row of a convergence table: `(α, ‖G(α) − limit‖∞)`.
#[derive(Copy, Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub alpha: f64,
    pub distance: f64,
}

/// Convergence certificate for one contraction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub mode: ContractionMode,
    pub rows: Vec<ConvergenceRow>,
    /// Log-log slope of distance vs α, fitted by least squares with the
    /// first two rows discarded; `≈ −2` for both modes.
    pub rate: f64,
    /// Row-major limit matrix.
    pub limit_matrix: Vec<Vec<f64>>,
}

/// Default α-schedule: decades `10⁰ .. 10⁸`.
pub fn default_alpha_schedule() -> Vec<f64> {
    (0..=8).map(|k| 10f64.powi(k)).collect()
}

/// Tabulate `‖G(α) − limit‖∞` over an increasing α-schedule and fit the
/// log-log convergence rate (first two rows excluded from the fit; zero
/// distances are skipped).
pub fn convergence_report(
    mode: ContractionMode,
    beta: f64,
    a: f64,
    b: f64,
    c: f64,
    alphas: &[f64],
) -> Result<ConvergenceReport> {
    if alphas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Precondition("alpha schedule must be strictly increasing".into()));
    }
    let limit = limit_matrix(mode, beta, a, b, c);
    let mut rows = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let m = family_matrix(&ContractedFamilyElement { alpha, mode, beta, a, b, c })?;
        rows.push(ConvergenceRow { alpha, distance: m.max_abs_diff(&limit) });
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .skip(2)
        .filter(|r| r.distance > 0.0)
        .map(|r| (r.alpha.ln(), r.distance.ln()))
        .collect();
    let rate = fit_slope(&pts);
    Ok(ConvergenceReport { mode, rows, rate, limit_matrix: limit.to_rows() })
}

/// Least-squares slope of `y` against `x`; NaN with fewer than two points.
pub fn fit_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return f64::NAN;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use crate::groups::{poincare2_matrix, Poincare2Element};
    use super::*;

    #[test]
    fn family_reduces_to_poincare_at_alpha_one() {
        let e = ContractedFamilyElement {
            alpha: 1.0,
            mode: ContractionMode::Temporal,
            beta: 0.6,
            a: 0.2,
            b: -0.4,
            c: 1.0,
        };
        let p = Poincare2Element { beta: 0.6, a: 0.2, b: -0.4, c: 1.0 };
        assert!(family_matrix(&e).unwrap().max_abs_diff(&poincare2_matrix(&p).unwrap()) < 1e-15);

        let e = ContractedFamilyElement { mode: ContractionMode::Spatial, ..e };
        assert!(family_matrix(&e).unwrap().max_abs_diff(&poincare2_matrix(&p).unwrap()) < 1e-15);
    }

    #[test]
    fn temporal_subluminal_entry_value() {
        // α = 10, β = 0.5: entry (2,1) = γ(10)·0.5/100 ≈ 5.0063e−3
        let e = ContractedFamilyElement {
            alpha: 10.0,
            mode: ContractionMode::Temporal,
            beta: 0.5,
            a: 0.0,
            b: 0.0,
            c: 1.0,
        };
        let m = family_matrix(&e).unwrap();
        let expected = (1.0 - 0.05f64 * 0.05).sqrt().recip() * 0.5 / 100.0;
        assert!((m.0[1][0] - expected).abs() < 1e-18);
        assert!((expected - 5.0063e-3).abs() < 1e-7);
    }

    #[test]
    fn spatial_large_alpha_reaches_limit() {
        let e = ContractedFamilyElement {
            alpha: 1e6,
            mode: ContractionMode::Spatial,
            beta: 0.5,
            a: 2.0,
            b: 3.0,
            c: 1.0,
        };
        let lim = Mat([[1.0, 0.0, 2.0], [0.5, 1.0, 3.0], [0.0, 0.0, 1.0]]);
        assert!(family_matrix(&e).unwrap().max_abs_diff(&lim) < 1e-10);
        assert_eq!(spatial_limit(0.5, 2.0, 3.0, 1.0).0, lim.0);
    }

    #[test]
    fn temporal_limit_matches_family_and_superluminal_is_legal() {
        let lim = temporal_limit(0.5, 2.0, 3.0, 1.0);
        assert_eq!(lim.0, [[1.0, 0.5, 2.0], [0.0, 1.0, 3.0], [0.0, 0.0, 1.0]]);
        let e = ContractedFamilyElement {
            alpha: 1e6,
            mode: ContractionMode::Temporal,
            beta: 0.5,
            a: 2.0,
            b: 3.0,
            c: 1.0,
        };
        assert!(family_matrix(&e).unwrap().max_abs_diff(&lim) < 1e-10);

        // β = 5 is fine after contraction.
        let sup = temporal_limit(5.0, 0.0, 0.0, 1.0);
        assert_eq!(sup.0, [[1.0, 5.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        let e = ContractedFamilyElement { alpha: 1e8, beta: 5.0, a: 0.0, b: 0.0, ..e };
        assert!(family_matrix(&e).unwrap().max_abs_diff(&sup) < 1e-10);
    }

    #[test]
    fn beta_must_stay_below_alpha() {
        let e = ContractedFamilyElement {
            alpha: 2.0,
            mode: ContractionMode::Spatial,
            beta: 2.0,
            a: 0.0,
            b: 0.0,
            c: 1.0,
        };
        assert!(family_matrix(&e).is_err());
    }

    #[test]
    fn spatial_limit_row_action() {
        // (x=1, ct=0) → x' = 1 + a, ct' = β + cb
        let m = spatial_limit(0.7, 2.0, 3.0, 1.0);
        let out = m.apply(&[1.0, 0.0, 1.0]);
        assert_eq!(out[0], 3.0);
        assert_eq!(out[1], 0.7 + 3.0);
    }

    #[test]
    fn limits_swap_under_space_time_exchange() {
        // Swapping the space and time rows exchanges the two limits with
        // (a, cb) ↦ (cb, a).
        let (beta, a, b, c) = (0.37, 1.4, -0.8, 1.0);
        let t = temporal_limit(beta, a, b, c);
        let s = spatial_limit(beta, c * b, a / c, c);
        let p = Mat([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!((p * t * p).max_abs_diff(&s) < 1e-15);
    }

    #[test]
    fn convergence_rate_is_quadratic() {
        let alphas = default_alpha_schedule();
        let rep = convergence_report(ContractionMode::Temporal, 0.5, 0.3, 0.1, 1.0, &alphas).unwrap();
        assert!((rep.rate + 2.0).abs() < 0.05, "temporal rate = {}", rep.rate);
        let rep = convergence_report(ContractionMode::Spatial, 0.5, 0.3, 0.1, 1.0, &alphas).unwrap();
        assert!((rep.rate + 2.0).abs() < 0.05, "spatial rate = {}", rep.rate);

        // Distances shrink monotonically past the first row.
        for w in rep.rows.windows(2).skip(1) {
            assert!(w[1].distance < w[0].distance);
        }
    }

    #[test]
    fn zero_beta_is_exact_at_every_alpha() {
        let rep = convergence_report(
            ContractionMode::Spatial,
            0.0,
            1.0,
            2.0,
            1.0,
            &default_alpha_schedule(),
        )
        .unwrap();
        for row in &rep.rows {
            assert_eq!(row.distance, 0.0);
        }
        assert!(rep.rate.is_nan());
    }
}
