//! Volume of a hyperbolic n-gonal prism.
//!
//! The prism is cut along the common perpendicular of its top and bottom
//! faces into n prism truncated tetrahedra `T_k`, one per side. The common
//! length `ℓ★` is the zero of `Φ'(ℓ) = π - ½ Σ μ_k(ℓ)`, and the volume is
//! `Σ Vol T_k(ℓ★)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::PrismTetConfig;
use crate::volume::{tet_report, VolumeReport};

/// Side count and the three angle tuples: `alpha` and `beta` are the angles
/// between the side faces and the two bases, `gamma_k` is the angle along the
/// lateral edge between sides `k - 1` and `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrismSpec {
    pub n: usize,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
}

impl PrismSpec {
    pub fn new(n: usize, alpha: Vec<f64>, beta: Vec<f64>, gamma: Vec<f64>) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("a prism needs n >= 3 sides, got {n}")));
        }
        for (name, v) in [("alpha", &alpha), ("beta", &beta), ("gamma", &gamma)] {
            if v.len() != n {
                return Err(Error::Domain(format!("{name} has {} entries, expected {n}", v.len())));
            }
            for (k, &a) in v.iter().enumerate() {
                if !a.is_finite() {
                    return Err(Error::NonFinite(format!("{name}_{}", k + 1)));
                }
                if a <= 0.0 || a >= PI {
                    return Err(Error::Domain(format!("{name}_{} = {a} is not in (0, pi)", k + 1)));
                }
            }
        }
        Ok(PrismSpec { n, alpha, beta, gamma })
    }

    pub fn uniform(n: usize, alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        PrismSpec::new(n, vec![alpha; n], vec![beta; n], vec![gamma; n])
    }

    /// `k ⊕ m` on `1..=n`.
    pub fn cyclic(&self, k: usize, m: usize) -> usize {
        (k - 1 + m) % self.n + 1
    }

    /// The same prism with sides relabelled `k -> k + shift`.
    pub fn rotated(&self, shift: usize) -> PrismSpec {
        let rot = |v: &Vec<f64>| {
            let mut w = v.clone();
            w.rotate_left(shift % self.n);
            w
        };
        PrismSpec {
            n: self.n,
            alpha: rot(&self.alpha),
            beta: rot(&self.beta),
            gamma: rot(&self.gamma),
        }
    }
}

/// Which of the two truncated vertices of `T_k` faces side `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SlotOrientation {
    /// `θ2 = β_{k⊕1}`, `θ3 = β_k`, `θ5 = α_k`, `θ6 = α_{k⊕1}`.
    #[default]
    Standard,
    /// `θ2 = β_k`, `θ3 = β_{k⊕1}`, `θ5 = α_{k⊕1}`, `θ6 = α_k`.
    Mirrored,
}

/// `T_k = T(α_k, α_{k⊕1}, β_k, β_{k⊕1}, γ_{k⊕1}; ℓ)` for `k` in `1..=n`.
pub fn tet_config_for_side(spec: &PrismSpec, k: usize, ell: f64, orientation: SlotOrientation) -> Result<PrismTetConfig> {
    if k == 0 || k > spec.n {
        return Err(Error::Domain(format!("side index {k} is outside 1..={}", spec.n)));
    }
    let next = spec.cyclic(k, 1);
    let (a, a1) = (spec.alpha[k - 1], spec.alpha[next - 1]);
    let (b, b1) = (spec.beta[k - 1], spec.beta[next - 1]);
    let g1 = spec.gamma[next - 1];
    let theta = match orientation {
        SlotOrientation::Standard => [g1, b1, b, a, a1],
        SlotOrientation::Mirrored => [g1, b, b1, a1, a],
    };
    PrismTetConfig::new(theta, ell)
}

fn side_reports(spec: &PrismSpec, ell: f64, orientation: SlotOrientation) -> Result<Vec<VolumeReport>> {
    (1..=spec.n)
        .map(|k| {
            tet_config_for_side(spec, k, ell, orientation)
                .and_then(|cfg| tet_report(&cfg))
                .map_err(|e| e.on_side(k))
        })
        .collect()
}

/// `Φ'(ℓ) = π - ½ Σ μ_k`.
pub fn phi_prime(spec: &PrismSpec, ell: f64) -> Result<f64> {
    phi_prime_with(spec, ell, SlotOrientation::Standard)
}

pub fn phi_prime_with(spec: &PrismSpec, ell: f64, orientation: SlotOrientation) -> Result<f64> {
    let reports = side_reports(spec, ell, orientation)?;
    Ok(PI - 0.5 * reports.iter().map(|r| r.mu).sum::<f64>())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub tol: f64,
    /// Number of doublings of the upper bracket end.
    pub max_expand: u32,
    pub orientation: SlotOrientation,
    pub max_iterations: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-12,
            max_expand: 5,
            orientation: SlotOrientation::Standard,
            max_iterations: 200,
        }
    }
}

pub const INITIAL_BRACKET: (f64, f64) = (0.05, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct PrismSolution {
    pub ell_star: f64,
    pub mu_k: Vec<f64>,
    pub tet_volumes: Vec<f64>,
    pub total_volume: f64,
    pub iterations: u32,
    pub residual: f64,
    pub bracket: (f64, f64),
    pub orientation: SlotOrientation,
}

/// Brent's method on a bracket with `f(lo)` and `f(hi)` of opposite signs.
/// Stops when `|f| <= ftol` or the bracket collapses.
fn brent(f: &mut dyn FnMut(f64) -> Result<f64>, lo: f64, hi: f64, f_lo: f64, f_hi: f64, ftol: f64, max_iter: u32) -> Result<(f64, f64, u32)> {
    let (mut a, mut b, mut fa, mut fb) = (lo, hi, f_lo, f_hi);
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut bisected = true;
    for iter in 1..=max_iter {
        if fb.abs() <= ftol || fb == 0.0 {
            return Ok((b, fb, iter - 1));
        }
        let xtol = 2.0 * f64::EPSILON * b.abs();
        if (b - a).abs() <= xtol {
            return Ok((b, fb, iter - 1));
        }
        let mut s = if fa != fc && fb != fc {
            a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) + c * fa * fb / ((fc - fa) * (fc - fb))
        } else {
            b - fb * (b - a) / (fb - fa)
        };
        let m = (3.0 * a + b) / 4.0;
        let outside = !((s > m.min(b)) && (s < m.max(b)));
        let slow = if bisected {
            (s - b).abs() >= (b - c).abs() / 2.0 || (b - c).abs() < xtol
        } else {
            (s - b).abs() >= (c - d).abs() / 2.0 || (c - d).abs() < xtol
        };
        if outside || slow {
            s = (a + b) / 2.0;
            bisected = true;
        } else {
            bisected = false;
        }
        let fs = f(s)?;
        d = c;
        c = b;
        fc = fb;
        if fa * fs < 0.0 {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if fa.abs() < fb.abs() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut fa, &mut fb);
        }
    }
    Err(Error::NoConvergence(format!(
        "no root to |f| <= {ftol:e} after {max_iter} iterations (last ell = {b}, f = {fb:e})"
    )))
}

/// Finds `ℓ★` with `|Φ'(ℓ★)| <= tol·π`, starting from `[0.05, 1]` and
/// doubling the upper end up to `max_expand` times.
pub fn solve_ell_star(spec: &PrismSpec, options: &SolveOptions) -> Result<(f64, f64, u32, (f64, f64))> {
    if !(1e-14..=1e-4).contains(&options.tol) {
        return Err(Error::Domain(format!("tol {:e} is outside [1e-14, 1e-4]", options.tol)));
    }
    let orientation = options.orientation;
    let mut f = |x: f64| phi_prime_with(spec, x, orientation);
    let (lo, mut hi) = INITIAL_BRACKET;
    let f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    let mut expansions = 0;
    while f_lo * f_hi > 0.0 {
        if expansions >= options.max_expand {
            return Err(Error::Bracketing { lo, hi });
        }
        hi *= 2.0;
        f_hi = f(hi)?;
        expansions += 1;
    }
    let ftol = options.tol * PI;
    let (root, residual, iterations) = brent(&mut f, lo, hi, f_lo, f_hi, ftol, options.max_iterations)?;
    Ok((root, residual.abs(), iterations, (lo, hi)))
}

pub fn prism_volume(spec: &PrismSpec, options: &SolveOptions) -> Result<PrismSolution> {
    let (ell_star, residual, iterations, bracket) = solve_ell_star(spec, options)?;
    let reports = side_reports(spec, ell_star, options.orientation)?;
    for (k, r) in reports.iter().enumerate() {
        if !(r.mu > 0.0 && r.mu < PI) {
            return Err(Error::Branch(format!("mu_{} = {} is outside (0, pi)", k + 1, r.mu)).on_side(k + 1));
        }
    }
    let mu_k: Vec<f64> = reports.iter().map(|r| r.mu).collect();
    let tet_volumes: Vec<f64> = reports.iter().map(|r| r.volume).collect();
    let total_volume = tet_volumes.iter().sum();
    Ok(PrismSolution {
        ell_star,
        mu_k,
        tet_volumes,
        total_volume,
        iterations,
        residual,
        bracket,
        orientation: options.orientation,
    })
}
