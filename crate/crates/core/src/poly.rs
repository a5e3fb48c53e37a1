//! Exact multivariate polynomials in `(x₁, x₂, x₃, t)`.
//!
//! Just enough structure to apply first-order differential operators with
//! polynomial coefficients and compare the results coefficient-wise; used by
//! the differential-realization cross-check in [`crate::algebra`].

use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Variable index: 0..2 are the space coordinates, 3 is time.
pub const T: usize = 3;

/// Sparse polynomial keyed by exponent tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    terms: BTreeMap<[u8; 4], S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: S) -> Self {
        let mut p = Self::zero();
        p.add_term([0; 4], c);
        p
    }

    /// The coordinate monomial `x_i` (or `t` for `i == T`).
    pub fn var(i: usize) -> Self {
        let mut exp = [0u8; 4];
        exp[i] = 1;
        let mut p = Self::zero();
        p.add_term(exp, S::one());
        p
    }

    pub fn monomial(exp: [u8; 4], c: S) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    fn add_term(&mut self, exp: [u8; 4], c: S) {
        if c == S::zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(S::zero);
        *entry += c;
        if *entry == S::zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&exp, &c) in &rhs.terms {
            out.add_term(exp, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(-S::one()))
    }

    pub fn scale(&self, k: S) -> Self {
        let mut out = Self::zero();
        for (&exp, &c) in &self.terms {
            out.add_term(exp, c * k);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&ea, &ca) in &self.terms {
            for (&eb, &cb) in &rhs.terms {
                let exp = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    /// Exact partial derivative with respect to variable `i`.
    pub fn diff(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (&exp, &c) in &self.terms {
            if exp[i] == 0 {
                continue;
            }
            let mut e = exp;
            e[i] -= 1;
            out.add_term(e, c * S::from_f64_lossy(f64::from(exp[i])));
        }
        out
    }

    /// Largest coefficient magnitude of `self`.
    pub fn max_coeff(&self) -> S {
        self.terms.values().fold(S::zero(), |m, &c| m.max(c.abs()))
    }

    pub fn eval(&self, x: [S; 4]) -> S {
        let mut acc = S::zero();
        for (&exp, &c) in &self.terms {
            let mut term = c;
            for (i, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    term *= x[i];
                }
            }
            acc += term;
        }
        acc
    }
}
