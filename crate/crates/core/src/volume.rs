//! Volume and the dihedral angle `μ` of a prism truncated tetrahedron from
//! the critical points of a sum of eight dilogarithms.
//!
//! With `a_k = e^{iθ_k}` (`k ≠ 4`) and `a4 = e^ℓ`,
//!
//! ```text
//! U(z) = Li2(z) + Li2(a1a2a4a5 z) + Li2(a1a3a4a6 z) + Li2(a2a3a5a6 z)
//!      - Li2(-a1a2a3 z) - Li2(-a1a5a6 z) - Li2(-a2a4a6 z) - Li2(-a3a4a5 z)
//! ```
//!
//! and `z∓` are the roots of `q2 z^2 + q1 z + q0`. Then
//! `V = (i/4) [U - z U_z log z]` taken between `z-` and `z+`, and
//! `Vol = Re(-V + a4 V_a4 · ℓ)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{edge_quantities, gram_prism, PrismTetConfig, PRISM_SIGNS, THETA_EDGES};
use crate::specfun::{dilog, principal_log, ComplexValue};

/// Exponents of `(a1, ..., a6)` and the sign of each dilogarithm term.
/// A negative sign means the term is `-Li2(-w z)`.
const U_TERMS: [([i32; 6], f64); 8] = [
    ([0, 0, 0, 0, 0, 0], 1.0),
    ([1, 1, 0, 1, 1, 0], 1.0),
    ([1, 0, 1, 1, 0, 1], 1.0),
    ([0, 1, 1, 0, 1, 1], 1.0),
    ([1, 1, 1, 0, 0, 0], -1.0),
    ([1, 0, 0, 0, 1, 1], -1.0),
    ([0, 1, 0, 1, 0, 1], -1.0),
    ([0, 0, 1, 1, 1, 0], -1.0),
];

const Q2_TERMS: [[i32; 6]; 8] = [
    [1, 0, 0, 1, 0, 0],
    [0, 1, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 1],
    [1, 1, 0, 0, 0, 1],
    [1, 0, 1, 0, 1, 0],
    [0, 1, 1, 1, 0, 0],
    [0, 0, 0, 1, 1, 1],
    [1, 1, 1, 1, 1, 1],
];

/// `a_1..a_6` kept as phases and `ℓ`, so that products of several `a_k`
/// are formed by adding angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeVariables {
    phases: [f64; 6],
    ell: f64,
}

impl EdgeVariables {
    pub fn new(cfg: &PrismTetConfig) -> Self {
        let t = cfg.theta;
        EdgeVariables {
            phases: [t[0], t[1], t[2], 0.0, t[3], t[4]],
            ell: cfg.ell,
        }
    }

    /// Raw variables without range checks; `ell = 0` and zero angles allowed.
    pub fn from_raw(theta: [f64; 5], ell: f64) -> Self {
        EdgeVariables {
            phases: [theta[0], theta[1], theta[2], 0.0, theta[3], theta[4]],
            ell,
        }
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    /// `a_k` for `k` in `1..=6`.
    pub fn a(&self, k: usize) -> ComplexValue {
        let mut e = [0; 6];
        e[k - 1] = 1;
        self.monomial(e)
    }

    /// `Π a_k^{e_k}`.
    pub fn monomial(&self, e: [i32; 6]) -> ComplexValue {
        let phase: f64 = e.iter().zip(self.phases.iter()).map(|(&n, &p)| n as f64 * p).sum();
        Complex64::from_polar((e[3] as f64 * self.ell).exp(), phase)
    }

    fn term_coefficient(&self, e: [i32; 6], sign: f64) -> ComplexValue {
        sign * self.monomial(e)
    }
}

fn check_z(z: ComplexValue) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(format!("z = {z}")))
    }
}

pub fn u_function(vars: &EdgeVariables, z: ComplexValue) -> Result<ComplexValue> {
    check_z(z)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for &(e, s) in U_TERMS.iter() {
        sum += s * dilog(vars.term_coefficient(e, s) * z)?;
    }
    Ok(sum)
}

fn log_one_minus(w: ComplexValue) -> Result<ComplexValue> {
    let arg = Complex64::new(1.0, 0.0) - w;
    principal_log(arg).map_err(|_| Error::Domain(format!("singular logarithm: 1 - ({w}) = 0")))
}

/// `z ∂U/∂z = -Σ s_t log(1 - w_t z)`.
pub fn z_du_dz(vars: &EdgeVariables, z: ComplexValue) -> Result<ComplexValue> {
    check_z(z)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for &(e, s) in U_TERMS.iter() {
        sum -= s * log_one_minus(vars.term_coefficient(e, s) * z)?;
    }
    Ok(sum)
}

/// `a4 ∂U/∂a4 = -log(1 - a1a2a4a5 z) - log(1 - a1a3a4a6 z)
/// + log(1 + a2a4a6 z) + log(1 + a3a4a5 z)`.
pub fn a4_du_da4(vars: &EdgeVariables, z: ComplexValue) -> Result<ComplexValue> {
    check_z(z)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for &(e, s) in U_TERMS.iter().filter(|(e, _)| e[3] == 1) {
        sum -= s * log_one_minus(vars.term_coefficient(e, s) * z)?;
    }
    Ok(sum)
}

/// Quadratic coefficients and their normalized versions `q'_i = q_i / Π a_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QCoefficients {
    pub q0: ComplexValue,
    pub q1: ComplexValue,
    pub q2: ComplexValue,
    pub qn0: ComplexValue,
    pub qn1: ComplexValue,
    pub qn2: ComplexValue,
}

impl QCoefficients {
    /// `q'_1^2 - 4 q'_0 q'_2`.
    pub fn discriminant(&self) -> ComplexValue {
        self.qn1 * self.qn1 - 4.0 * self.qn0 * self.qn2
    }
}

pub fn q_coefficients(vars: &EdgeVariables) -> QCoefficients {
    let shift = |e: [i32; 6]| e.map(|v| v - 1);
    let qn0: ComplexValue = U_TERMS.iter().map(|&(e, _)| vars.monomial(shift(e))).sum();
    let p = vars.phases;
    let qn1 = Complex64::new(
        4.0 * (p[1].sin() * p[4].sin() + p[2].sin() * p[5].sin()),
        -4.0 * p[0].sin() * vars.ell.sinh(),
    );
    let qn2: ComplexValue = Q2_TERMS.iter().map(|&e| vars.monomial(e)).sum();
    let prod = vars.monomial([1; 6]);
    QCoefficients {
        q0: qn0 * prod,
        q1: qn1 * prod,
        q2: qn2 * prod,
        qn0,
        qn1,
        qn2,
    }
}

/// Both critical points with their verification residuals.
///
/// `m_minus`, `m_plus` are the integers with `z U_z = 2πi m` at each root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPair {
    pub z_minus: ComplexValue,
    pub z_plus: ComplexValue,
    pub q: QCoefficients,
    pub discriminant: ComplexValue,
    pub quadratic_residual: f64,
    pub exponential_residual: f64,
    pub m_minus: i64,
    pub m_plus: i64,
}

pub const QUADRATIC_TOLERANCE: f64 = 1e-10;
pub const EXPONENTIAL_TOLERANCE: f64 = 1e-8;

fn quadratic_residual(q: &QCoefficients, z: ComplexValue) -> f64 {
    let scale = q.q0.norm() + q.q1.norm() + q.q2.norm();
    (q.q2 * z * z + q.q1 * z + q.q0).norm() / scale
}

fn winding(vars: &EdgeVariables, z: ComplexValue) -> Result<(i64, f64)> {
    let w = z_du_dz(vars, z)?;
    let m = (w.im / (2.0 * PI)).round();
    let residual = (w - Complex64::new(0.0, 2.0 * PI * m)).norm();
    Ok((m as i64, residual))
}

/// Roots of the normalized quadratic.
///
/// The discriminant `q'_1^2 - 4q'_0q'_2` is real and negative for hyperbolic
/// data, so it is projected to the real axis and
/// `z∓ = (-q'_1 ± i sqrt(-D)) / (2 q'_2)`.
pub fn critical_points(vars: &EdgeVariables) -> Result<CriticalPair> {
    let q = q_coefficients(vars);
    if q.qn2.norm() < 1e-14 {
        return Err(Error::Degenerate(format!("q2 = {} vanishes", q.q2)));
    }
    let disc = q.discriminant();
    if !(disc.re < 0.0) {
        return Err(Error::InvalidConfiguration(format!(
            "discriminant {disc} is not negative; the data are not hyperbolic"
        )));
    }
    let root = Complex64::new(0.0, (-disc.re).sqrt());
    let z_minus = (-q.qn1 + root) / (2.0 * q.qn2);
    let z_plus = (-q.qn1 - root) / (2.0 * q.qn2);
    let quadratic_residual = quadratic_residual(&q, z_minus).max(quadratic_residual(&q, z_plus));
    if !(quadratic_residual <= QUADRATIC_TOLERANCE) {
        return Err(Error::RootVerification(format!(
            "quadratic residual {quadratic_residual:e}"
        )));
    }
    let (m_minus, r_minus) = winding(vars, z_minus)?;
    let (m_plus, r_plus) = winding(vars, z_plus)?;
    let exponential_residual = r_minus.max(r_plus);
    if !(exponential_residual <= EXPONENTIAL_TOLERANCE) {
        return Err(Error::RootVerification(format!(
            "z U_z is {exponential_residual:e} away from 2 pi i Z"
        )));
    }
    Ok(CriticalPair {
        z_minus,
        z_plus,
        q,
        discriminant: disc,
        quadratic_residual,
        exponential_residual,
        m_minus,
        m_plus,
    })
}

fn f_at(vars: &EdgeVariables, z: ComplexValue) -> Result<ComplexValue> {
    let log_z = principal_log(z)?;
    Ok(u_function(vars, z)? - z_du_dz(vars, z)? * log_z)
}

/// `V = (i/4) (F(z-) - F(z+))` with `F = U - z U_z log z`.
pub fn v_function(vars: &EdgeVariables) -> Result<ComplexValue> {
    let pair = critical_points(vars)?;
    v_between(vars, pair.z_minus, pair.z_plus)
}

/// `V` evaluated for an explicit root assignment.
pub fn v_between(vars: &EdgeVariables, z_minus: ComplexValue, z_plus: ComplexValue) -> Result<ComplexValue> {
    let i4 = Complex64::new(0.0, 0.25);
    Ok(i4 * (f_at(vars, z_minus)? - f_at(vars, z_plus)?))
}

/// Everything computed along the way to the volume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeReport {
    pub volume: f64,
    pub mu: f64,
    pub v: ComplexValue,
    pub a4_dv_da4: ComplexValue,
    pub critical: CriticalPair,
    /// Real edge lengths `(ℓ1, ℓ2, ℓ3, ℓ5, ℓ6)` from the Gram matrix.
    pub lengths: [f64; 5],
    /// `μ` recovered from the Gram cofactors.
    pub mu_gram: f64,
}

fn reduce_mod_pi(x: f64) -> f64 {
    x.rem_euclid(PI)
}

/// Negative volumes smaller than this (relative to `|V|`) count as zero.
pub const NEGATIVE_VOLUME_TOLERANCE: f64 = 1e-12;

/// Volume, `μ` and diagnostics. Negative volumes are accepted only when
/// some edge length is negative; otherwise they are a branch failure.
pub fn tet_report(cfg: &PrismTetConfig) -> Result<VolumeReport> {
    let report = signed_report(cfg)?;
    let roundoff = NEGATIVE_VOLUME_TOLERANCE * report.v.norm().max(1.0);
    if report.volume < -roundoff && report.lengths.iter().all(|&l| l > 0.0) {
        return Err(Error::Branch(format!(
            "negative volume {:e} with all edge lengths positive",
            report.volume
        )));
    }
    Ok(report)
}

/// Same as [`tet_report`] but returns the principal-branch value whatever
/// its sign.
pub fn signed_report(cfg: &PrismTetConfig) -> Result<VolumeReport> {
    let eq = edge_quantities(&gram_prism(cfg), &PRISM_SIGNS)?;
    if !eq.edge(0, 1).is_continued() {
        return Err(Error::InvalidConfiguration("pair 12 is not continued".into()));
    }
    let lengths = THETA_EDGES.map(|(k, l)| eq.length(k, l));
    let vars = EdgeVariables::new(cfg);
    let critical = critical_points(&vars)?;
    let v = v_between(&vars, critical.z_minus, critical.z_plus)?;
    let da = a4_du_da4(&vars, critical.z_minus)? - a4_du_da4(&vars, critical.z_plus)?;
    let a4_dv_da4 = Complex64::new(0.0, 0.25) * da;
    let volume = (-v + a4_dv_da4 * cfg.ell).re;
    let mu = reduce_mod_pi(-(Complex64::new(0.0, 0.5) * da).re);
    if !volume.is_finite() || !mu.is_finite() {
        return Err(Error::NonFinite("volume or angle".into()));
    }
    Ok(VolumeReport {
        volume,
        mu,
        v,
        a4_dv_da4,
        critical,
        lengths,
        mu_gram: eq.length(0, 1),
    })
}

pub fn tet_volume(cfg: &PrismTetConfig) -> Result<f64> {
    tet_report(cfg).map(|r| r.volume)
}

/// `μ ≡ -Re((i/2) [a4 U_a4(z-) - a4 U_a4(z+)])  mod π`, in `[0, π)`.
pub fn mu_angle(cfg: &PrismTetConfig) -> Result<f64> {
    let vars = EdgeVariables::new(cfg);
    let pair = critical_points(&vars)?;
    let da = a4_du_da4(&vars, pair.z_minus)? - a4_du_da4(&vars, pair.z_plus)?;
    Ok(reduce_mod_pi(-(Complex64::new(0.0, 0.5) * da).re))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t5() -> PrismTetConfig {
        PrismTetConfig::new([2.0 * PI / 5.0, PI / 2.0, PI / 2.0, PI / 3.0, PI / 3.0], 0.50672).unwrap()
    }

    fn c(re: f64, im: f64) -> ComplexValue {
        Complex64::new(re, im)
    }

    #[test]
    fn u_vanishes_at_origin() {
        let vars = EdgeVariables::new(&t5());
        assert_eq!(u_function(&vars, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn unit_variables_collapse() {
        let vars = EdgeVariables::from_raw([0.0; 5], 0.0);
        let t = 0.3;
        let u = u_function(&vars, c(t, 0.0)).unwrap();
        let expect = 4.0 * dilog(c(t, 0.0)).unwrap() - 4.0 * dilog(c(-t, 0.0)).unwrap();
        assert!((u - expect).norm() < 1e-15);
        let q = q_coefficients(&vars);
        assert!((q.q0 - 8.0).norm() < 1e-14);
        assert!(q.q1.norm() < 1e-14);
        assert!((q.q2 - 8.0).norm() < 1e-14);
        let d = a4_du_da4(&vars, c(t, 0.0)).unwrap();
        let expect = -2.0 * (1.0 - t).ln() + 2.0 * (1.0 + t).ln();
        assert!((d - expect).norm() < 1e-15);
        assert_eq!(a4_du_da4(&vars, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn unit_variables_critical_points() {
        let vars = EdgeVariables::from_raw([0.0; 5], 0.0);
        let pair = critical_points(&vars).unwrap();
        assert!((pair.z_minus - c(0.0, 1.0)).norm() < 1e-15);
        assert!((pair.z_plus - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn t5_values() {
        let r = tet_report(&t5()).unwrap();
        assert!((r.volume - 0.52639).abs() < 1e-4, "{}", r.volume);
        assert!((r.mu - 1.25664).abs() < 1e-4, "{}", r.mu);
        assert!((r.mu - r.mu_gram).abs() < 1e-8);
        assert!(r.critical.discriminant.im.abs() < 1e-10);
    }

    #[test]
    fn swapping_roots_negates_v() {
        let vars = EdgeVariables::new(&t5());
        let p = critical_points(&vars).unwrap();
        let a = v_between(&vars, p.z_minus, p.z_plus).unwrap();
        let b = v_between(&vars, p.z_plus, p.z_minus).unwrap();
        assert!((a + b).norm() < 1e-14);
    }

    #[test]
    fn a4_derivative_matches_finite_differences() {
        let cfg = t5();
        let z = c(0.3, -0.4);
        let h = 1e-6;
        let up = EdgeVariables::from_raw(cfg.theta, cfg.ell + h);
        let dn = EdgeVariables::from_raw(cfg.theta, cfg.ell - h);
        let fd = (u_function(&up, z).unwrap() - u_function(&dn, z).unwrap()) / (2.0 * h);
        let exact = a4_du_da4(&EdgeVariables::new(&cfg), z).unwrap();
        assert!((fd - exact).norm() < 1e-8);
    }

    #[test]
    fn discriminant_is_sixteen_det_g() {
        let cfg = t5();
        let q = q_coefficients(&EdgeVariables::new(&cfg));
        let det = gram_prism(&cfg).det();
        assert!((q.discriminant().re - 16.0 * det).abs() < 1e-12);
    }
}
