#![allow(dead_code)]

use std::f64::consts::PI;

use hyptet::geometry::{
    edge_quantities, face_angle_quantities, gram_mild, gram_prism, MildTetConfig, PrismTetConfig, VertexSign,
    PRISM_SIGNS,
};
use hyptet::jacobian::{dual_jacobian_mild, dual_jacobian_prism, finite_difference_jacobian};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const FD_STEP: f64 = 1e-5;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn t5(ell: f64) -> PrismTetConfig {
    PrismTetConfig::new([2.0 * PI / 5.0, PI / 2.0, PI / 2.0, PI / 3.0, PI / 3.0], ell).unwrap()
}

/// A mildly truncated configuration with signs read off the principal
/// minors, kept away from the boundary of the valid region.
pub fn random_mild(rng: &mut ChaCha8Rng) -> MildTetConfig {
    loop {
        let mut angles = [0.0; 6];
        for a in angles.iter_mut() {
            *a = rng.gen_range(0.1..PI - 0.1);
        }
        let probe = MildTetConfig::new(angles, [VertexSign::Proper; 4]).unwrap();
        let g = gram_mild(&probe);
        if g.det() > -1e-3 {
            continue;
        }
        let minors = g.minors();
        if minors.iter().any(|m| m.abs() < 1e-4) {
            continue;
        }
        let signs = minors.map(|m| if m > 0.0 { VertexSign::Proper } else { VertexSign::UltraIdeal });
        let cfg = MildTetConfig::new(angles, signs).unwrap();
        let Ok(eq) = edge_quantities(&g, &signs) else { continue };
        let far_from_degenerate = eq.edges.iter().all(|e| {
            let same = e.pair.0 != e.pair.1 && signs[e.pair.0] == signs[e.pair.1];
            e.sigma.abs() > 1e-3 && (!same || e.sigma_prime > 1.0 + 1e-4)
        });
        if !far_from_degenerate || face_angle_quantities(&g, &signs).is_err() {
            continue;
        }
        if dual_jacobian_mild(&cfg).is_err() || finite_difference_jacobian(&cfg, FD_STEP).is_err() {
            continue;
        }
        return cfg;
    }
}

/// A prism truncated configuration away from the validity boundary.
pub fn random_prism(rng: &mut ChaCha8Rng) -> PrismTetConfig {
    loop {
        let mut theta = [0.0; 5];
        for t in theta.iter_mut() {
            *t = rng.gen_range(0.2..PI - 0.2);
        }
        let ell = rng.gen_range(0.05..2.5);
        let cfg = PrismTetConfig::new(theta, ell).unwrap();
        if prism_margin_ok(&cfg) {
            return cfg;
        }
    }
}

pub fn prism_margin_ok(cfg: &PrismTetConfig) -> bool {
    let g = gram_prism(cfg);
    if g.det() > -1e-3 {
        return false;
    }
    if (0..4).any(|i| PRISM_SIGNS[i].as_f64() * g.minor(i) < 1e-4) {
        return false;
    }
    let Ok(eq) = edge_quantities(&g, &PRISM_SIGNS) else { return false };
    if eq.sigma_prime(0, 1).abs() > 0.999 || eq.sigma_prime(2, 3) < 1.0 + 1e-4 {
        return false;
    }
    dual_jacobian_prism(cfg).is_ok() && finite_difference_jacobian(cfg, FD_STEP).is_ok()
}

/// Relative error with the scale floored at `floor`.
pub fn rel(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / b.abs().max(floor)
}
