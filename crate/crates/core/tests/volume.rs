mod common;

use std::f64::consts::PI;

use common::{random_prism, rel, rng, t5, FD_STEP};
use hyptet::geometry::PrismTetConfig;
use hyptet::volume::*;
use proptest::prelude::*;

fn stencil(f: impl Fn(f64) -> f64, h: f64) -> f64 {
    (8.0 * (f(h) - f(-h)) - (f(2.0 * h) - f(-2.0 * h))) / (12.0 * h)
}

fn shifted(cfg: &PrismTetConfig, k: Option<usize>, t: f64) -> PrismTetConfig {
    let mut c = *cfg;
    match k {
        Some(k) => c.theta[k] += t,
        None => c.ell += t,
    }
    c
}

#[test]
fn t5_values() {
    let rep = tet_report(&t5(0.50672)).unwrap();
    assert!((rep.volume - 0.52639).abs() < 1e-4);
    assert!((rep.mu - 1.25664).abs() < 1e-4);
    assert!((rep.mu - rep.mu_gram).abs() < 1e-8);
    assert!(rep.critical.discriminant.re < 0.0);
}

#[test]
fn right_angled_sides_have_zero_volume() {
    for theta1 in [1.0, 2.0 * PI / 5.0, 2.5] {
        for ell in [0.3, 0.1, 0.01, 0.001] {
            let cfg = PrismTetConfig::new([theta1, PI / 2.0, PI / 2.0, PI / 2.0, PI / 2.0], ell).unwrap();
            let rep = tet_report(&cfg).unwrap();
            assert!(rep.volume.abs() < 1e-12, "theta1={theta1} ell={ell}: {}", rep.volume);
            assert!((rep.mu - (PI - theta1)).abs() < 1e-8);
        }
    }
}

#[test]
fn critical_points_of_t5_are_not_conjugate_in_z() {
    let pair = critical_points(&EdgeVariables::new(&t5(0.50672))).unwrap();
    assert!(pair.quadratic_residual < QUADRATIC_TOLERANCE);
    assert!(pair.exponential_residual < EXPONENTIAL_TOLERANCE);
    assert!(pair.discriminant.im.abs() < 1e-10);
    assert!((pair.z_minus - pair.z_plus).norm() > 0.1);
}

#[test]
fn tet_volume_flags_negative_values() {
    // negative principal-branch value with all five lengths positive
    let cfg = PrismTetConfig::new(
        [0.6893108714779947, 1.0612428355643704, 1.7656869603637637, 2.2561906327315233, 0.3438486323811122],
        0.6539759389181103,
    )
    .unwrap();
    let signed = signed_report(&cfg).unwrap();
    assert!(signed.volume < 0.0 && signed.lengths.iter().all(|&l| l > 0.0));
    assert!(matches!(tet_volume(&cfg), Err(hyptet::Error::Branch(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schlafli(seed in any::<u64>()) {
        let cfg = random_prism(&mut rng(seed));
        let rep = signed_report(&cfg).unwrap();
        let vol = |k| move |t| signed_report(&shifted(&cfg, k, t)).unwrap().volume;
        let mu = |k| move |t| signed_report(&shifted(&cfg, k, t)).unwrap().mu;
        for k in 0..5 {
            let lhs = -2.0 * (stencil(vol(Some(k)), FD_STEP) + 0.5 * cfg.ell * stencil(mu(Some(k)), FD_STEP));
            prop_assert!(rel(lhs, rep.lengths[k], 1e-3) < 1e-5, "k={} lhs={} l={}", k, lhs, rep.lengths[k]);
        }
        let dv = stencil(vol(None), FD_STEP);
        let rhs = -0.5 * cfg.ell * stencil(mu(None), FD_STEP);
        prop_assert!(rel(dv, rhs, 1e-3) < 1e-5);
    }

    #[test]
    fn mu_agrees_with_cofactor_route(seed in any::<u64>()) {
        let cfg = random_prism(&mut rng(seed));
        let rep = signed_report(&cfg).unwrap();
        prop_assert!((rep.mu - rep.mu_gram).abs() < 1e-8);
        prop_assert!((mu_angle(&cfg).unwrap() - rep.mu).abs() < 1e-14);
    }

    #[test]
    fn relabelling_truncated_vertices(seed in any::<u64>()) {
        let cfg = random_prism(&mut rng(seed));
        let t = cfg.theta;
        let swapped = PrismTetConfig::new([t[0], t[2], t[1], t[4], t[3]], cfg.ell).unwrap();
        let a = signed_report(&cfg).unwrap();
        let b = signed_report(&swapped).unwrap();
        prop_assert!((a.volume - b.volume).abs() < 1e-10);
        prop_assert!((a.mu - b.mu).abs() < 1e-10);
    }

    #[test]
    fn critical_point_residuals(seed in any::<u64>()) {
        let cfg = random_prism(&mut rng(seed));
        let vars = EdgeVariables::new(&cfg);
        let pair = critical_points(&vars).unwrap();
        prop_assert!(pair.quadratic_residual <= 1e-10);
        prop_assert!(pair.exponential_residual <= 1e-8);
        prop_assert!(pair.discriminant.im.abs() <= 1e-10);
        let q = pair.q;
        for z in [pair.z_minus, pair.z_plus] {
            let scale = q.qn0.norm() + q.qn1.norm() + q.qn2.norm();
            prop_assert!((q.qn2 * z * z + q.qn1 * z + q.qn0).norm() <= 1e-10 * scale);
        }
    }
}
