//! Property sweeps for the contraction family: closure at fixed α,
//! parameter recovery, and the limit homomorphisms onto the 1+1 slices of
//! the two groups.

use galdual::contraction::{
    convergence_report, default_alpha_schedule, family_matrix, spatial_limit, temporal_limit,
    ContractedFamilyElement, ContractionMode,
};
use galdual::groups::{compose, to_affine, Flavor, GroupElement};
use galdual::linalg::Vec3;
use galdual::rng::Draws;
use galdual::rotation::Rotation;

fn family(mode: ContractionMode, alpha: f64, beta: f64, a: f64, b: f64) -> ContractedFamilyElement<f64> {
    ContractedFamilyElement { alpha, mode, beta, a, b, c: 1.0 }
}

/// Pull `(β, a, b)` back out of a family matrix.
fn recover(mode: ContractionMode, alpha: f64, m: &galdual::Mat3r) -> (f64, f64, f64) {
    let a2 = alpha * alpha;
    let beta = match mode {
        ContractionMode::Temporal => a2 * m.0[1][0] / m.0[1][1],
        ContractionMode::Spatial => m.0[1][0] / m.0[0][0],
    };
    (beta, m.0[0][2], m.0[1][2])
}

#[test]
fn closure_at_fixed_alpha() {
    let mut draws = Draws::new(37, "closure");
    for mode in [ContractionMode::Temporal, ContractionMode::Spatial] {
        let mut worst = 0.0f64;
        for _ in 0..500 {
            let alpha = 10f64.powf(draws.range(0.0, 4.0));
            let cap = alpha.min(3.0) * 0.3;
            let e2 = family(mode, alpha, draws.range(-cap, cap), draws.range(-2.0, 2.0), draws.range(-2.0, 2.0));
            let e1 = family(mode, alpha, draws.range(-cap, cap), draws.range(-2.0, 2.0), draws.range(-2.0, 2.0));
            let prod = family_matrix(&e2).unwrap() * family_matrix(&e1).unwrap();
            let (beta, a, b) = recover(mode, alpha, &prod);
            let back = family_matrix(&family(mode, alpha, beta, a, b)).unwrap();
            worst = worst.max(prod.max_abs_diff(&back));
        }
        assert!(worst < 1e-10, "{mode:?}: closure defect {worst}");
    }
}

#[test]
fn temporal_limit_composes_like_galilei_slice() {
    // The temporal limit matrices are exactly the (x₁, ct) slice of the
    // Galilei realization with boost and translation along x₁.
    let mut draws = Draws::new(41, "temporal-limit");
    let slice = |g: &GroupElement<f64>| {
        let m = to_affine(g).mat;
        galdual::linalg::Mat([
            [m.0[0][0], m.0[0][3], m.0[0][4]],
            [m.0[3][0], m.0[3][3], m.0[3][4]],
            [0.0, 0.0, 1.0],
        ])
    };
    let axis_element = |beta: f64, a: f64, b: f64| {
        GroupElement::new(
            Flavor::Galilei,
            b,
            Vec3::new(a, 0.0, 0.0),
            Vec3::new(beta, 0.0, 0.0),
            Rotation::identity(),
        )
    };
    for _ in 0..300 {
        let (b2, a2, v2) = (draws.range(-2.0, 2.0), draws.range(-2.0, 2.0), draws.range(-2.0, 2.0));
        let (b1, a1, v1) = (draws.range(-2.0, 2.0), draws.range(-2.0, 2.0), draws.range(-2.0, 2.0));
        let g2 = axis_element(v2, a2, b2);
        let g1 = axis_element(v1, a1, b1);
        let lim_prod = temporal_limit(v2, a2, b2, 1.0) * temporal_limit(v1, a1, b1, 1.0);
        let g12 = compose(&g2, &g1).unwrap();
        assert!(lim_prod.max_abs_diff(&slice(&g12)) < 1e-12);
        assert!(slice(&g2).max_abs_diff(&temporal_limit(v2, a2, b2, 1.0)) < 1e-15);
    }
}

#[test]
fn spatial_limit_composes_like_dual_slice() {
    // The spatial limit embeds in the dual realization along one axis with
    // the boost sign flipped: the C-type realization carries −β where the
    // contraction limit carries +β.
    let mut draws = Draws::new(43, "spatial-limit");
    let slice = |g: &GroupElement<f64>| {
        let m = to_affine(g).mat;
        galdual::linalg::Mat([
            [m.0[0][0], m.0[0][3], m.0[0][4]],
            [m.0[3][0], m.0[3][3], m.0[3][4]],
            [0.0, 0.0, 1.0],
        ])
    };
    let dual_element = |beta: f64, a: f64, b: f64| {
        GroupElement::new(
            Flavor::DualGalilei,
            b,
            Vec3::new(a, 0.0, 0.0),
            Vec3::new(-beta, 0.0, 0.0),
            Rotation::identity(),
        )
    };
    for _ in 0..300 {
        let (b2, a2, v2) = (draws.range(-2.0, 2.0), draws.range(-2.0, 2.0), draws.range(-2.0, 2.0));
        let (b1, a1, v1) = (draws.range(-2.0, 2.0), draws.range(-2.0, 2.0), draws.range(-2.0, 2.0));
        assert!(slice(&dual_element(v2, a2, b2)).max_abs_diff(&spatial_limit(v2, a2, b2, 1.0)) < 1e-15);
        let lim_prod = spatial_limit(v2, a2, b2, 1.0) * spatial_limit(v1, a1, b1, 1.0);
        let g12 = compose(&dual_element(v2, a2, b2), &dual_element(v1, a1, b1)).unwrap();
        assert!(lim_prod.max_abs_diff(&slice(&g12)) < 1e-12);
    }
}

#[test]
fn convergence_rates_across_betas() {
    let alphas = default_alpha_schedule();
    // Superluminal β is legal post-contraction but needs α > |β| along the
    // schedule, so it starts one decade up.
    let from_ten: Vec<f64> = alphas[1..].to_vec();
    for beta in [0.1, 0.5, 0.9, 2.0] {
        let schedule = if beta < 1.0 { &alphas } else { &from_ten };
        for mode in [ContractionMode::Temporal, ContractionMode::Spatial] {
            let rep = convergence_report(mode, beta, 1.0, -0.5, 1.0, schedule).unwrap();
            assert!(
                (rep.rate + 2.0).abs() < 0.1,
                "{mode:?} beta={beta}: rate {}",
                rep.rate
            );
        }
    }
}
