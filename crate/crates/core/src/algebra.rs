//! Lie algebras of the two groups, the centrally extended Galilei algebra,
//! the projective cocycle, and the extended product law.
//!
//! Basis order is `(χ_b, χ_{a1..a3}, χ_{v1..v3}, χ_{θ1..θ3}[, χ_M])`. Boost
//! generators are **β-parametrized for the dual algebra** (matching the
//! `1/c` in its boxed bracket and `K = i(E/c) d/dp` in the representation)
//! and **v-parametrized for the Galilei and extended algebras** (matching
//! `[χ_v, χ_b] = χ_a` with unit coefficient). The hand-coded tables:
//!
//! ```text
//! common:   [θi,θj] = ε_ijk θk   [θi,aj] = ε_ijk ak   [θi,vj] = ε_ijk vk
//!           [ai,aj] = [vi,vj] = 0,   [θi,b] = [ai,b] = 0
//! galilei:  [vi,b]  = a_i,           [vi,aj] = 0
//! dual:     [vi,b]  = 0,             [vi,aj] = −(1/c) δ_ij b
//! extended: galilei plus  [vi,aj] = −δ_ij M,  M central
//! ```
//!
//! The sign of the dual `[v,a]` bracket and of the extended `[v,a]` bracket
//! is fixed by the matrix realizations (and independently by the
//! differential-operator realization and the representation commutator
//! `[K₁,P₁] = −i(E/c)`); every table here is double-checked against
//! generators extracted numerically from those realizations.
//!
//! The projective phase of the Galilei representations is carried by the
//! cocycle
//!
//! ```text
//! γ(g₂,g₁) = ½ (a₂·R₂v₁ − v₂·R₂a₁ + b₁ v₂·R₂v₁),   ω = m γ
//! ```
//!
//! which satisfies the 2-cocycle identity exactly; the extended product law
//! absorbs it: `(α₂,g₂)(α₁,g₁) = (α₂ + α₁ + ω/κ, g₂g₁)` with `κ = m`.

use crate::error::{Error, Result};
use crate::groups::{compose, to_affine, ExtendedGroupElement, Flavor, GroupElement};
use crate::linalg::{commutator, Mat, Mat5, Mat6, Vec3};
use crate::poly::{Poly, T};
use crate::rotation::Rotation;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Which Lie algebra a vector or table belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraFlavor {
    Galilei,
    DualGalilei,
    ExtendedGalilei,
}

impl AlgebraFlavor {
    pub fn dim(self) -> usize {
        match self {
            AlgebraFlavor::ExtendedGalilei => 11,
            _ => 10,
        }
    }
}

/// Index of χ_b.
pub const IDX_B: usize = 0;
/// First space-translation index; `IDX_A + i` is χ_{a_{i+1}}.
pub const IDX_A: usize = 1;
/// First boost index.
pub const IDX_V: usize = 4;
/// First rotation index.
pub const IDX_TH: usize = 7;
/// Central-charge index (extended algebra only).
pub const IDX_M: usize = 10;

/// Human-readable basis label.
pub fn basis_name(k: usize) -> &'static str {
    const NAMES: [&str; 11] = ["b", "a1", "a2", "a3", "v1", "v2", "v3", "th1", "th2", "th3", "M"];
    NAMES[k]
}

/// One stored table row: the `(i, j)` pair with its `(k, f_{ij}^k)` list.
pub type TableRow<S> = ((usize, usize), Vec<(usize, S)>);

/// Sparse antisymmetric structure-constant table: for `i < j`,
/// `[χ_i, χ_j] = Σ_k f_{ij}^k χ_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstantTable<S> {
    pub flavor: AlgebraFlavor,
    pub c: S,
    entries: BTreeMap<(usize, usize), Vec<(usize, S)>>,
}

fn eps(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

impl<S: Scalar> StructureConstantTable<S> {
    /// Hand-coded table for a flavor at scaling constant `c`.
    pub fn new(flavor: AlgebraFlavor, c: S) -> Self {
        let mut entries: BTreeMap<(usize, usize), Vec<(usize, S)>> = BTreeMap::new();
        let mut put = |i: usize, j: usize, k: usize, f: S| {
            if f == S::zero() {
                return;
            }
            if i < j {
                entries.entry((i, j)).or_default().push((k, f));
            } else {
                entries.entry((j, i)).or_default().push((k, -f));
            }
        };
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let e = S::from_f64_lossy(eps(i, j, k));
                    if e == S::zero() {
                        continue;
                    }
                    if i < j {
                        put(IDX_TH + i, IDX_TH + j, IDX_TH + k, e);
                    }
                    put(IDX_TH + i, IDX_A + j, IDX_A + k, e);
                    put(IDX_TH + i, IDX_V + j, IDX_V + k, e);
                }
            }
        }
        match flavor {
            AlgebraFlavor::Galilei => {
                for i in 0..3 {
                    put(IDX_V + i, IDX_B, IDX_A + i, S::one());
                }
            }
            AlgebraFlavor::DualGalilei => {
                for i in 0..3 {
                    put(IDX_V + i, IDX_A + i, IDX_B, -c.recip());
                }
            }
            AlgebraFlavor::ExtendedGalilei => {
                for i in 0..3 {
                    put(IDX_V + i, IDX_B, IDX_A + i, S::one());
                    put(IDX_V + i, IDX_A + i, IDX_M, -S::one());
                }
            }
        }
        // put() only stores nonzero products, so dedupe is unnecessary.
        StructureConstantTable { flavor, c, entries }
    }

    /// Build a table from explicit `(i, j, coeffs)` rows with `i < j`.
    pub fn from_rows(
        flavor: AlgebraFlavor,
        c: S,
        rows: impl IntoIterator<Item = ((usize, usize), Vec<(usize, S)>)>,
    ) -> Self {
        let mut entries: BTreeMap<(usize, usize), Vec<(usize, S)>> = BTreeMap::new();
        for ((i, j), coeffs) in rows {
            assert!(i < j, "rows must be upper-triangular");
            let filtered: Vec<_> = coeffs.into_iter().filter(|(_, f)| *f != S::zero()).collect();
            if !filtered.is_empty() {
                entries.insert((i, j), filtered);
            }
        }
        StructureConstantTable { flavor, c, entries }
    }

    /// Structure constant `f_{ij}^k` (antisymmetrized lookup).
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> S {
        if i == j {
            return S::zero();
        }
        let (key, sign) = if i < j { ((i, j), S::one()) } else { ((j, i), -S::one()) };
        self.entries
            .get(&key)
            .and_then(|v| v.iter().find(|(kk, _)| *kk == k))
            .map_or(S::zero(), |(_, f)| sign * *f)
    }

    /// True if every bracket involving basis element `k` vanishes.
    pub fn is_central(&self, k: usize) -> bool {
        let dim = self.flavor.dim();
        for other in 0..dim {
            for target in 0..dim {
                if self.coefficient(k, other, target) != S::zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Largest `|f_{ij}^k − g_{ij}^k|` over all index triples.
    pub fn max_abs_diff(&self, rhs: &Self) -> S {
        let dim = self.flavor.dim().max(rhs.flavor.dim());
        let mut m = S::zero();
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in 0..dim {
                    m = m.max((self.coefficient(i, j, k) - rhs.coefficient(i, j, k)).abs());
                }
            }
        }
        m
    }

    /// Rows for reports, sorted.
    pub fn rows(&self) -> Vec<TableRow<S>> {
        self.entries.iter().map(|(k, v)| (*k, v.clone())).collect()
    }
}

/// Coefficient vector over the ordered basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraVector<S> {
    pub flavor: AlgebraFlavor,
    pub c: S,
    pub coeffs: Vec<S>,
}

impl<S: Scalar> AlgebraVector<S> {
    pub fn zero(flavor: AlgebraFlavor, c: S) -> Self {
        AlgebraVector { flavor, c, coeffs: vec![S::zero(); flavor.dim()] }
    }

    pub fn basis(flavor: AlgebraFlavor, c: S, k: usize) -> Self {
        let mut v = Self::zero(flavor, c);
        v.coeffs[k] = S::one();
        v
    }

    pub fn max_abs(&self) -> S {
        self.coeffs.iter().fold(S::zero(), |m, &x| m.max(x.abs()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| a + b).collect();
        AlgebraVector { flavor: self.flavor, c: self.c, coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| a - b).collect();
        AlgebraVector { flavor: self.flavor, c: self.c, coeffs }
    }

    pub fn scale(&self, k: S) -> Self {
        AlgebraVector {
            flavor: self.flavor,
            c: self.c,
            coeffs: self.coeffs.iter().map(|&x| x * k).collect(),
        }
    }
}

/// Bilinear antisymmetric bracket from the flavor's table.
pub fn bracket<S: Scalar>(x: &AlgebraVector<S>, y: &AlgebraVector<S>) -> Result<AlgebraVector<S>> {
    if x.flavor != y.flavor {
        return Err(Error::Precondition(format!(
            "algebra flavor mismatch: {:?} vs {:?}",
            x.flavor, y.flavor
        )));
    }
    if x.c != y.c {
        return Err(Error::ScaleMismatch {
            left: x.c.to_f64().unwrap_or(f64::NAN),
            right: y.c.to_f64().unwrap_or(f64::NAN),
        });
    }
    let table = StructureConstantTable::new(x.flavor, x.c);
    Ok(bracket_with(&table, x, y))
}

/// Bracket against an explicit table (used by the cross-checks).
pub fn bracket_with<S: Scalar>(
    table: &StructureConstantTable<S>,
    x: &AlgebraVector<S>,
    y: &AlgebraVector<S>,
) -> AlgebraVector<S> {
    let mut out = AlgebraVector::zero(x.flavor, x.c);
    for ((i, j), coeffs) in &table.entries {
        let w = x.coeffs[*i] * y.coeffs[*j] - x.coeffs[*j] * y.coeffs[*i];
        if w == S::zero() {
            continue;
        }
        for (k, f) in coeffs {
            out.coeffs[*k] += w * *f;
        }
    }
    out
}

/// `max |[x,[y,z]] + [y,[z,x]] + [z,[x,y]]|` coefficient.
pub fn jacobi_residual<S: Scalar>(
    table: &StructureConstantTable<S>,
    x: &AlgebraVector<S>,
    y: &AlgebraVector<S>,
    z: &AlgebraVector<S>,
) -> S {
    let a = bracket_with(table, x, &bracket_with(table, y, z));
    let b = bracket_with(table, y, &bracket_with(table, z, x));
    let c = bracket_with(table, z, &bracket_with(table, x, y));
    a.add(&b).add(&c).max_abs()
}

// ---------------------------------------------------------------------------
// Matrix realizations and generator extraction
// ---------------------------------------------------------------------------

/// One-parameter subgroup of a plain flavor along basis direction `k`.
fn one_parameter_element<S: Scalar>(flavor: Flavor, c: S, k: usize, s: S) -> GroupElement<S> {
    let mut g = GroupElement::identity(flavor, c);
    match k {
        IDX_B => g.b = s,
        _ if (IDX_A..IDX_V).contains(&k) => g.a[k - IDX_A] = s,
        _ if (IDX_V..IDX_TH).contains(&k) => {
            // Dual boosts are β-parametrized, Galilei boosts v-parametrized.
            g.v[k - IDX_V] = match flavor {
                Flavor::Galilei => s,
                Flavor::DualGalilei => c * s,
            };
        }
        _ => {
            let mut th = Vec3::zero();
            th[k - IDX_TH] = s;
            g.rot = Rotation { theta: th };
        }
    }
    g
}

fn clamp_small<S: Scalar, const N: usize>(m: &mut Mat<S, N>, tol: S) {
    for row in m.0.iter_mut() {
        for x in row.iter_mut() {
            if x.abs() < tol {
                *x = S::zero();
            }
        }
    }
}

/// Richardson-extrapolated central difference of a matrix-valued map.
fn differentiate<S: Scalar, const N: usize>(f: impl Fn(S) -> Mat<S, N>, h: S) -> Mat<S, N> {
    let four = S::two() * S::two();
    let three = S::two() + S::one();
    let d = |step: S| (f(step) - f(-step)).scale((S::two() * step).recip());
    let coarse = d(h);
    let fine = d(h * S::half());
    let mut out = (fine.scale(four) - coarse).scale(three.recip());
    clamp_small(&mut out, S::from_f64_lossy(1e-12));
    out
}

/// Basis generators of the 5×5 realization, one per basis element, obtained
/// by differentiating `to_affine` along the one-parameter subgroups.
pub fn generators_from_realization<S: Scalar>(flavor: Flavor, c: S) -> Vec<Mat5<S>> {
    let h = S::from_f64_lossy(1e-6);
    (0..10)
        .map(|k| differentiate(|s| to_affine(&one_parameter_element(flavor, c, k, s)).mat, h))
        .collect()
}

/// 6×6 realization of the extended Galilei group on `(x, ct, u, 1)`:
/// `x' = Rx + βct + a`, `ct' = ct + cb`,
/// `u' = u + v·Rx + ½v²t + ½a·v − α`.
///
/// Matrix multiplication reproduces [`extended_compose`] exactly, which is
/// what makes it usable as the extraction oracle for the extended table.
pub fn extended_affine<S: Scalar>(e: &ExtendedGroupElement<S>) -> Mat6<S> {
    let g = &e.g;
    let r = g.rot.matrix();
    let beta = g.beta();
    let half = S::half();
    let mut m = Mat6::identity();
    for i in 0..3 {
        for j in 0..3 {
            m.0[i][j] = r.0[i][j];
        }
        m.0[i][3] = beta[i];
        m.0[i][5] = g.a[i];
    }
    m.0[3][5] = g.c * g.b;
    // u-row: (vᵀR) x + (½v²/c)(ct) + u + (½a·v − α)
    let vt_r = g.rot.apply_inv(g.v);
    for j in 0..3 {
        m.0[4][j] = vt_r[j];
    }
    m.0[4][3] = half * g.v.dot(g.v) / g.c;
    m.0[4][5] = half * g.a.dot(g.v) - e.alpha;
    m
}

/// Generators of the extended 6×6 realization, basis order
/// `(b, a, v, θ, M)`; boosts v-parametrized.
pub fn extended_generators_from_realization<S: Scalar>(c: S) -> Vec<Mat6<S>> {
    let h = S::from_f64_lossy(1e-6);
    let mass = S::one(); // the realization does not involve κ
    (0..11)
        .map(|k| {
            differentiate(
                |s| {
                    let e = if k == IDX_M {
                        ExtendedGroupElement::central(s, mass, c)
                    } else {
                        ExtendedGroupElement {
                            alpha: S::zero(),
                            g: one_parameter_element(Flavor::Galilei, c, k, s),
                            mass,
                        }
                    };
                    extended_affine(&e)
                },
                h,
            )
        })
        .collect()
}

/// Expand matrix commutators of the given generators over the generator
/// basis (the generators are mutually Frobenius-orthogonal for all three
/// realizations) and return the resulting table plus the largest expansion
/// residual.
pub fn table_from_generators<S: Scalar, const N: usize>(
    flavor: AlgebraFlavor,
    c: S,
    gens: &[Mat<S, N>],
) -> (StructureConstantTable<S>, S) {
    let dim = gens.len();
    let dot = |a: &Mat<S, N>, b: &Mat<S, N>| {
        let mut s = S::zero();
        for i in 0..N {
            for j in 0..N {
                s += a.0[i][j] * b.0[i][j];
            }
        }
        s
    };
    let norms: Vec<S> = gens.iter().map(|g| dot(g, g)).collect();
    let clamp = S::from_f64_lossy(1e-9);
    let mut rows = Vec::new();
    let mut worst_residual = S::zero();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let comm = commutator(&gens[i], &gens[j]);
            let mut coeffs = Vec::new();
            let mut reconstructed = Mat::<S, N>::zero();
            for (k, gen) in gens.iter().enumerate() {
                let mut f = dot(&comm, gen) / norms[k];
                if f.abs() < clamp {
                    f = S::zero();
                }
                if f != S::zero() {
                    coeffs.push((k, f));
                    reconstructed = reconstructed + gen.scale(f);
                }
            }
            worst_residual = worst_residual.max(comm.max_abs_diff(&reconstructed));
            if !coeffs.is_empty() {
                rows.push(((i, j), coeffs));
            }
        }
    }
    (StructureConstantTable::from_rows(flavor, c, rows), worst_residual)
}

/// Extract the structure constants of a plain flavor from its 5×5
/// realization.
pub fn extracted_table<S: Scalar>(flavor: Flavor, c: S) -> (StructureConstantTable<S>, S) {
    let gens = generators_from_realization(flavor, c);
    let af = match flavor {
        Flavor::Galilei => AlgebraFlavor::Galilei,
        Flavor::DualGalilei => AlgebraFlavor::DualGalilei,
    };
    table_from_generators(af, c, &gens)
}

/// Extract the extended table from the 6×6 realization.
pub fn extracted_extended_table<S: Scalar>(c: S) -> (StructureConstantTable<S>, S) {
    let gens = extended_generators_from_realization(c);
    table_from_generators(AlgebraFlavor::ExtendedGalilei, c, &gens)
}

// ---------------------------------------------------------------------------
// Differential-operator realization
// ---------------------------------------------------------------------------

/// First-order differential operator with polynomial coefficients:
/// `Σ_i coeff_i ∂_i` over `(x₁,x₂,x₃,t)`.
struct DiffOp<S> {
    coeff: [Poly<S>; 4],
}

impl<S: Scalar> DiffOp<S> {
    fn apply(&self, f: &Poly<S>) -> Poly<S> {
        let mut out = Poly::zero();
        for (i, c) in self.coeff.iter().enumerate() {
            out = out.add(&c.mul(&f.diff(i)));
        }
        out
    }
}

/// The differential realization of basis element `k`:
///
/// both flavors: `χ_b = −∂t`, `χ_{a_i} = −∂_i`, `χ_{θ_i} = −ε_{ijk} x_j ∂_k`;
/// dual boosts `χ_{v_i} = (x_i/c) ∂t` (β-parametrized), Galilei boosts
/// `χ_{v_i} = −t ∂_i` (v-parametrized).
fn differential_generator<S: Scalar>(flavor: Flavor, c: S, k: usize) -> DiffOp<S> {
    let zero = || Poly::zero();
    let mut coeff = [zero(), zero(), zero(), zero()];
    match k {
        IDX_B => coeff[T] = Poly::constant(-S::one()),
        _ if (IDX_A..IDX_V).contains(&k) => coeff[k - IDX_A] = Poly::constant(-S::one()),
        _ if (IDX_V..IDX_TH).contains(&k) => {
            let i = k - IDX_V;
            match flavor {
                Flavor::DualGalilei => coeff[T] = Poly::var(i).scale(c.recip()),
                Flavor::Galilei => coeff[i] = Poly::var(T).scale(-S::one()),
            }
        }
        _ => {
            let i = k - IDX_TH;
            for j in 0..3 {
                for l in 0..3 {
                    let e = S::from_f64_lossy(eps(i, j, l));
                    if e != S::zero() {
                        coeff[l] = coeff[l].add(&Poly::var(j).scale(-e));
                    }
                }
            }
        }
    }
    DiffOp { coeff }
}

/// All monomials in `(x, t)` of total degree ≤ 4.
pub fn default_test_polynomials<S: Scalar>() -> Vec<Poly<S>> {
    let mut polys = Vec::new();
    for d0 in 0..=4u8 {
        for d1 in 0..=4 - d0 {
            for d2 in 0..=4 - d0 - d1 {
                for d3 in 0..=4 - d0 - d1 - d2 {
                    polys.push(Poly::monomial([d0, d1, d2, d3], S::one()));
                }
            }
        }
    }
    polys
}

/// Apply every commutator `[χ_i, χ_j]` of the differential realization to
/// the test polynomials and compare against the structure-constant
/// prediction; returns the largest coefficient discrepancy.
pub fn differential_realization_check<S: Scalar>(
    flavor: Flavor,
    c: S,
    polys: &[Poly<S>],
) -> S {
    let af = match flavor {
        Flavor::Galilei => AlgebraFlavor::Galilei,
        Flavor::DualGalilei => AlgebraFlavor::DualGalilei,
    };
    let table = StructureConstantTable::new(af, c);
    let ops: Vec<DiffOp<S>> = (0..10).map(|k| differential_generator(flavor, c, k)).collect();
    let mut worst = S::zero();
    for i in 0..10 {
        for j in (i + 1)..10 {
            for f in polys {
                let comm = ops[i].apply(&ops[j].apply(f)).sub(&ops[j].apply(&ops[i].apply(f)));
                let mut predicted = Poly::zero();
                for k in 0..10 {
                    let coef = table.coefficient(i, j, k);
                    if coef != S::zero() {
                        predicted = predicted.add(&ops[k].apply(f).scale(coef));
                    }
                }
                worst = worst.max(comm.sub(&predicted).max_coeff());
            }
        }
    }
    worst
}

// ---------------------------------------------------------------------------
// Cocycle and central extension
// ---------------------------------------------------------------------------

/// A cocycle evaluation, with the pair it was evaluated on.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleValue<S> {
    pub gamma: S,
    pub omega: S,
    pub pair: (GroupElement<S>, GroupElement<S>),
}

/// `γ(g₂,g₁) = ½(a₂·R₂v₁ − v₂·R₂a₁ + b₁ v₂·R₂v₁)` and `ω = mγ`.
///
/// Defined for the Galilei flavor only; the dual group is itself a central
/// extension and carries no algebraic cocycle.
pub fn cocycle_gamma<S: Scalar>(
    g2: &GroupElement<S>,
    g1: &GroupElement<S>,
    mass: S,
) -> Result<CocycleValue<S>> {
    if g2.flavor != Flavor::Galilei || g1.flavor != Flavor::Galilei {
        return Err(Error::WrongFlavor { required: Flavor::Galilei });
    }
    let r2v1 = g2.rot.apply(g1.v);
    let r2a1 = g2.rot.apply(g1.a);
    let gamma = S::half() * (g2.a.dot(r2v1) - g2.v.dot(r2a1) + g1.b * g2.v.dot(r2v1));
    Ok(CocycleValue { gamma, omega: mass * gamma, pair: (*g2, *g1) })
}

/// Product law of the centrally extended Galilei group:
/// `α = α₂ + α₁ + ω(g₂,g₁)/κ` with `κ = m`, group parts composed as Galilei.
pub fn extended_compose<S: Scalar>(
    e2: &ExtendedGroupElement<S>,
    e1: &ExtendedGroupElement<S>,
) -> Result<ExtendedGroupElement<S>> {
    if e2.mass != e1.mass {
        return Err(Error::MassMismatch {
            left: e2.mass.to_f64().unwrap_or(f64::NAN),
            right: e1.mass.to_f64().unwrap_or(f64::NAN),
        });
    }
    let w = cocycle_gamma(&e2.g, &e1.g, e2.mass)?;
    Ok(ExtendedGroupElement {
        alpha: e2.alpha + e1.alpha + w.omega / e2.mass,
        g: compose(&e2.g, &e1.g)?,
        mass: e2.mass,
    })
}

/// Inverse in the extended group.
pub fn extended_inverse<S: Scalar>(e: &ExtendedGroupElement<S>) -> Result<ExtendedGroupElement<S>> {
    let ginv = crate::groups::inverse(&e.g);
    let w = cocycle_gamma(&ginv, &e.g, e.mass)?;
    Ok(ExtendedGroupElement { alpha: -e.alpha - w.omega / e.mass, g: ginv, mass: e.mass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_boxed_brackets() {
        let t = StructureConstantTable::new(AlgebraFlavor::DualGalilei, 1.0);
        // [v1, a1] lands on χ_b; [v1, b] = 0 (time translations central).
        assert_eq!(t.coefficient(IDX_V, IDX_A, IDX_B), -1.0);
        assert_eq!(t.coefficient(IDX_V, IDX_B, IDX_A), 0.0);
        assert!(t.is_central(IDX_B));
    }

    #[test]
    fn galilei_boxed_brackets() {
        let t = StructureConstantTable::new(AlgebraFlavor::Galilei, 1.0);
        assert_eq!(t.coefficient(IDX_V, IDX_B, IDX_A), 1.0);
        assert_eq!(t.coefficient(IDX_V, IDX_A, IDX_B), 0.0);
        assert!(!t.is_central(IDX_B));
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let c = 1.0;
        let x = AlgebraVector::basis(AlgebraFlavor::DualGalilei, c, IDX_V + 1);
        let y = AlgebraVector::basis(AlgebraFlavor::DualGalilei, c, IDX_A + 1);
        let xy = bracket(&x, &y).unwrap();
        let yx = bracket(&y, &x).unwrap();
        assert!(xy.add(&yx).max_abs() == 0.0);
        assert!(bracket(&x, &x).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn rotation_sector_closes() {
        let c = 1.0;
        for flavor in [AlgebraFlavor::Galilei, AlgebraFlavor::DualGalilei] {
            let th1 = AlgebraVector::basis(flavor, c, IDX_TH);
            let th2 = AlgebraVector::basis(flavor, c, IDX_TH + 1);
            let out = bracket(&th1, &th2).unwrap();
            assert_eq!(out.coeffs[IDX_TH + 2], 1.0);
        }
    }

    #[test]
    fn extracted_tables_match_hand_coded() {
        for (flavor, af) in [
            (Flavor::Galilei, AlgebraFlavor::Galilei),
            (Flavor::DualGalilei, AlgebraFlavor::DualGalilei),
        ] {
            for c in [1.0, 2.0] {
                let (extracted, resid) = extracted_table::<f64>(flavor, c);
                let hand = StructureConstantTable::new(af, c);
                let diff = extracted.max_abs_diff(&hand);
                assert!(diff < 1e-8, "{flavor:?} c={c}: table diff = {diff}");
                assert!(resid < 1e-8, "{flavor:?} c={c}: expansion residual = {resid}");
            }
        }
    }

    #[test]
    fn extended_table_matches_six_dim_realization() {
        for c in [1.0, 2.0] {
            let (extracted, resid) = extracted_extended_table::<f64>(c);
            let hand = StructureConstantTable::new(AlgebraFlavor::ExtendedGalilei, c);
            let diff = extracted.max_abs_diff(&hand);
            assert!(diff < 1e-8, "extended c={c}: table diff = {diff}");
            assert!(resid < 1e-8);
            assert!(hand.is_central(IDX_M));
            assert!(extracted.is_central(IDX_M));
        }
    }

    #[test]
    fn extended_affine_is_homomorphism() {
        let mk = |b: f64, a: [f64; 3], v: [f64; 3], th: [f64; 3]| ExtendedGroupElement {
            alpha: 0.3,
            g: GroupElement::new(Flavor::Galilei, b, Vec3(a), Vec3(v), Rotation { theta: Vec3(th) }),
            mass: 1.7,
        };
        let e2 = mk(0.4, [1.0, -0.2, 0.3], [0.5, 0.1, -0.4], [0.2, 0.0, -0.6]);
        let e1 = mk(-0.7, [0.3, 0.8, -1.0], [-0.2, 0.4, 0.6], [0.0, 0.9, 0.1]);
        let lhs = extended_affine(&extended_compose(&e2, &e1).unwrap());
        let rhs = extended_affine(&e2) * extended_affine(&e1);
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn cocycle_boost_translation_example() {
        // g2 pure boost v = (1,0,0), g1 pure translation a = (3,0,0): γ = −1.5.
        let g2 = GroupElement::new(
            Flavor::Galilei,
            0.0,
            Vec3::zero(),
            Vec3::new(1.0, 0.0, 0.0),
            Rotation::identity(),
        );
        let g1 = GroupElement::new(
            Flavor::Galilei,
            0.0,
            Vec3::new(3.0, 0.0, 0.0),
            Vec3::zero(),
            Rotation::identity(),
        );
        let w = cocycle_gamma(&g2, &g1, 2.0).unwrap();
        assert_eq!(w.gamma, -1.5);
        assert_eq!(w.omega, -3.0);

        let e = GroupElement::identity(Flavor::Galilei, 1.0);
        assert_eq!(cocycle_gamma(&g2, &e, 1.0).unwrap().gamma, 0.0);
    }

    #[test]
    fn cocycle_rejects_dual_flavor() {
        let g = GroupElement::identity(Flavor::DualGalilei, 1.0);
        assert!(cocycle_gamma(&g, &g, 1.0).is_err());
    }

    #[test]
    fn commutator_word_yields_central_element() {
        // (−v)(−a)(v)(a) composes to the central element (−a·v, e); its true
        // representation phase is e^{−iκα} = e^{+i m a·v}.
        let mass = 1.3;
        let v = Vec3::new(0.7, -0.3, 0.2);
        let a = Vec3::new(0.4, 1.1, -0.5);
        let boost = |v: Vec3<f64>| ExtendedGroupElement {
            alpha: 0.0,
            g: GroupElement::new(Flavor::Galilei, 0.0, Vec3::zero(), v, Rotation::identity()),
            mass,
        };
        let transl = |a: Vec3<f64>| ExtendedGroupElement {
            alpha: 0.0,
            g: GroupElement::new(Flavor::Galilei, 0.0, a, Vec3::zero(), Rotation::identity()),
            mass,
        };
        let w = extended_compose(
            &boost(-v),
            &extended_compose(&transl(-a), &extended_compose(&boost(v), &transl(a)).unwrap())
                .unwrap(),
        )
        .unwrap();
        assert!(w.g.a.max_abs() < 1e-15 && w.g.v.max_abs() < 1e-15 && w.g.b.abs() < 1e-15);
        assert!((w.alpha - (-a.dot(v))).abs() < 1e-14, "alpha = {}", w.alpha);
        // phase exponent −κα = +m a·v
        assert!(((-mass * w.alpha) - mass * a.dot(v)).abs() < 1e-13);
    }

    #[test]
    fn central_elements_compose_additively() {
        let e1 = ExtendedGroupElement::<f64>::central(0.4, 1.0, 1.0);
        let e2 = ExtendedGroupElement::central(-1.1, 1.0, 1.0);
        let w = extended_compose(&e2, &e1).unwrap();
        assert!((w.alpha - (-0.7)).abs() < 1e-15);
        assert_eq!(w.g, GroupElement::identity(Flavor::Galilei, 1.0));
    }

    #[test]
    fn extended_inverse_round_trip() {
        let e = ExtendedGroupElement::<f64> {
            alpha: 0.9,
            g: GroupElement::new(
                Flavor::Galilei,
                0.3,
                Vec3::new(1.0, 2.0, -0.5),
                Vec3::new(0.4, -0.1, 0.2),
                Rotation { theta: Vec3::new(0.1, 0.2, 0.3) },
            ),
            mass: 2.0,
        };
        let w = extended_compose(&extended_inverse(&e).unwrap(), &e).unwrap();
        assert!(w.alpha.abs() < 1e-14);
        assert!(w.g.a.max_abs() < 1e-14 && w.g.v.max_abs() < 1e-14);
    }

    #[test]
    fn differential_realization_matches_tables() {
        let polys = default_test_polynomials::<f64>();
        for flavor in [Flavor::Galilei, Flavor::DualGalilei] {
            for c in [1.0, 2.0] {
                let worst = differential_realization_check(flavor, c, &polys);
                assert!(worst < 1e-12, "{flavor:?} c={c}: residual {worst}");
            }
        }
    }

    #[test]
    fn boost_translation_commutator_on_polynomial() {
        // [χ_v1, χ_a1] applied to f = t·x₁ at c = 1, dual flavor: the bracket
        // is −(1/c)χ_b, and −χ_b f = ∂t(t x₁) = x₁.
        let f = Poly::<f64>::var(0).mul(&Poly::var(T));
        let v1 = differential_generator(Flavor::DualGalilei, 1.0, IDX_V);
        let a1 = differential_generator(Flavor::DualGalilei, 1.0, IDX_A);
        let comm = v1.apply(&a1.apply(&f)).sub(&a1.apply(&v1.apply(&f)));
        // equals +x₁ = −(1/c)·χ_b f
        assert_eq!(comm, Poly::var(0));
        let b = differential_generator(Flavor::DualGalilei, 1.0, IDX_B);
        assert_eq!(comm, b.apply(&f).scale(-1.0));
    }

    #[test]
    fn rotation_commutator_on_polynomial() {
        // [χ_θ1, χ_θ2] f = χ_θ3 f on f = x₂x₃.
        let f = Poly::<f64>::var(1).mul(&Poly::var(2));
        let t1 = differential_generator::<f64>(Flavor::DualGalilei, 1.0, IDX_TH);
        let t2 = differential_generator::<f64>(Flavor::DualGalilei, 1.0, IDX_TH + 1);
        let t3 = differential_generator::<f64>(Flavor::DualGalilei, 1.0, IDX_TH + 2);
        let comm = t1.apply(&t2.apply(&f)).sub(&t2.apply(&t1.apply(&f)));
        assert_eq!(comm, t3.apply(&f));
    }

    #[test]
    fn brackets_annihilate_constants() {
        let f = Poly::<f64>::constant(3.0);
        for k in 0..10 {
            let op = differential_generator::<f64>(Flavor::Galilei, 1.0, k);
            assert_eq!(op.apply(&f), Poly::zero());
        }
    }

    #[test]
    fn dual_chi_b_generator_is_single_entry() {
        let gens = generators_from_realization::<f64>(Flavor::DualGalilei, 1.0);
        // χ_b: lone entry at (ct-row, augmented column).
        let mut expected = Mat5::zero();
        expected.0[3][4] = 1.0;
        assert!(gens[IDX_B].max_abs_diff(&expected) < 1e-10);
        // Galilei χ_v1 couples the ct-column to the x₁-row.
        let gens = generators_from_realization::<f64>(Flavor::Galilei, 1.0);
        let mut expected = Mat5::zero();
        expected.0[0][3] = 1.0;
        assert!(gens[IDX_V].max_abs_diff(&expected) < 1e-10);
    }
}
