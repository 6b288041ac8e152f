//! Dual Jacobian `∂(lengths)/∂(dihedral angles)` of a generalised hyperbolic
//! tetrahedron, for mild truncation and for prism truncation.
//!
//! The closed form is `-η D S D` with `D = diag(σ_kl)`, where the diagonal
//! of `D S D` is `N_kl = ε_l σ'_il σ'_jl σ'_kl + ε_k σ'_ik σ'_jk σ'_kl
//! - σ'_ik σ'_jl - σ'_il σ'_jk` and `{i, j}` is the complement of `{k, l}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{
    check_validity, complement, edge_quantities, gram_mild, gram_prism, EdgeQuantities, GramMatrix,
    MildTetConfig, PrismTetConfig, VertexSign, EDGES, PRISM_SIGNS,
};

/// Smallest accepted `|σ_kl|` for a mildly truncated configuration.
pub const SIGMA_TOLERANCE: f64 = 1e-10;

/// Vertex pairs of the prism rows and columns: `(μ, ℓ1, ℓ2, ℓ3, ℓ5, ℓ6)`
/// against `(ℓ, θ1, θ2, θ3, θ5, θ6)`.
pub const PRISM_ORDER: [(usize, usize); 6] = [(0, 1), (2, 3), (0, 2), (1, 2), (1, 3), (0, 3)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobianKind {
    Mild,
    Prism,
}

impl JacobianKind {
    pub fn row_labels(self) -> [&'static str; 6] {
        match self {
            JacobianKind::Mild => ["l12", "l13", "l14", "l23", "l24", "l34"],
            JacobianKind::Prism => ["mu", "l1", "l2", "l3", "l5", "l6"],
        }
    }

    pub fn column_labels(self) -> [&'static str; 6] {
        match self {
            JacobianKind::Mild => ["a12", "a13", "a14", "a23", "a24", "a34"],
            JacobianKind::Prism => ["ell", "theta1", "theta2", "theta3", "theta5", "theta6"],
        }
    }
}

/// A 6x6 Jacobian; `matrix[r][c]` is the derivative of row quantity `r`
/// with respect to column variable `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualJacobian {
    pub matrix: [[f64; 6]; 6],
    pub kind: JacobianKind,
}

impl DualJacobian {
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.matrix[r][c]
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().flatten().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..6 {
            for c in 0..6 {
                worst = worst.max((self.matrix[r][c] - self.matrix[c][r]).abs());
            }
        }
        worst
    }

    /// `max |A - B| / max |B|`.
    pub fn relative_deviation(&self, reference: &DualJacobian) -> f64 {
        let mut num = 0.0f64;
        for r in 0..6 {
            for c in 0..6 {
                num = num.max((self.matrix[r][c] - reference.matrix[r][c]).abs());
            }
        }
        num / reference.max_abs()
    }
}

fn reject_ideal(signs: &[VertexSign; 4]) -> Result<()> {
    if let Some(i) = signs.iter().position(|&s| s == VertexSign::Ideal) {
        return Err(Error::IdealVertex(format!(
            "vertex {} is ideal; the dual Jacobian requires every eps_i to be nonzero",
            i + 1
        )));
    }
    Ok(())
}

/// `η = sqrt(Π ε_i det G_ii / (-det G)^3)`.
pub fn eta(g: &GramMatrix, signs: &[VertexSign; 4]) -> Result<f64> {
    reject_ideal(signs)?;
    check_validity(g, signs)?;
    let num: f64 = (0..4).map(|i| signs[i].as_f64() * g.minor(i)).product();
    let neg_det = -g.det();
    Ok((num / neg_det.powi(3)).sqrt())
}

/// Off-diagonal structure entry: 1 for opposite edges, `ε_s σ'_js` for edges
/// sharing the vertex `s`, with `j` the vertex on neither edge.
fn structure(e: (usize, usize), f: (usize, usize), signs: &[VertexSign; 4], sp: &dyn Fn(usize, usize) -> f64) -> f64 {
    let shared = [e.0, e.1].into_iter().find(|&v| v == f.0 || v == f.1);
    match shared {
        None => 1.0,
        Some(s) => {
            let j = (0..4).find(|&v| v != e.0 && v != e.1 && v != f.0 && v != f.1).unwrap();
            signs[s].as_f64() * sp(j, s)
        }
    }
}

fn diagonal(k: usize, l: usize, signs: &[VertexSign; 4], sp: &dyn Fn(usize, usize) -> f64) -> f64 {
    let (i, j) = complement(k, l);
    let ek = signs[k].as_f64();
    let el = signs[l].as_f64();
    el * sp(i, l) * sp(j, l) * sp(k, l) + ek * sp(i, k) * sp(j, k) * sp(k, l) - sp(i, k) * sp(j, l) - sp(i, l) * sp(j, k)
}

pub fn dual_jacobian_mild(cfg: &MildTetConfig) -> Result<DualJacobian> {
    reject_ideal(&cfg.signs)?;
    let g = gram_mild(cfg);
    let eq = edge_quantities(&g, &cfg.signs)?;
    if !eq.is_mild() {
        return Err(Error::InvalidConfiguration("configuration is not mildly truncated".into()));
    }
    for e in eq.edges.iter() {
        if e.sigma.abs() < SIGMA_TOLERANCE {
            return Err(Error::Degenerate(format!(
                "sigma_{}{} = {:e} vanishes",
                e.pair.0 + 1,
                e.pair.1 + 1,
                e.sigma
            )));
        }
    }
    let eta = eta(&g, &cfg.signs)?;
    let sp = |a: usize, b: usize| eq.sigma_prime(a, b);
    let mut m = [[0.0; 6]; 6];
    for (r, &e) in EDGES.iter().enumerate() {
        for (c, &f) in EDGES.iter().enumerate() {
            m[r][c] = if r == c {
                -eta * diagonal(e.0, e.1, &cfg.signs, &sp)
            } else {
                -eta * eq.sigma(e.0, e.1) * structure(e, f, &cfg.signs, &sp) * eq.sigma(f.0, f.1)
            };
        }
    }
    Ok(DualJacobian {
        matrix: m,
        kind: JacobianKind::Mild,
    })
}

fn prism_edges(cfg: &PrismTetConfig) -> Result<(GramMatrix, EdgeQuantities)> {
    let g = gram_prism(cfg);
    let eq = edge_quantities(&g, &PRISM_SIGNS)?;
    if !eq.edge(0, 1).is_continued() {
        return Err(Error::InvalidConfiguration("pair 12 is not continued".into()));
    }
    Ok((g, eq))
}

/// Prism truncated case, written out in real form.
///
/// Under `a12 = iℓ`, `ℓ12 = iμ` one has `σ12 = i sin μ` and `σ'12 = cos μ`;
/// the factors of `i` cancel against the `i` in `∂/∂a12` and `ℓ12 / i`.
pub fn dual_jacobian_prism(cfg: &PrismTetConfig) -> Result<DualJacobian> {
    let (g, eq) = prism_edges(cfg)?;
    let eta = eta(&g, &PRISM_SIGNS)?;
    let signs = &PRISM_SIGNS;
    let sp = |a: usize, b: usize| eq.sigma_prime(a, b);
    let sin_mu = eq.sigma(0, 1);
    let mut m = [[0.0; 6]; 6];
    for (r, &e) in PRISM_ORDER.iter().enumerate() {
        for (c, &f) in PRISM_ORDER.iter().enumerate() {
            m[r][c] = if r == c {
                -eta * diagonal(e.0, e.1, signs, &sp)
            } else {
                let s = structure(e, f, signs, &sp);
                match (r, c) {
                    (0, _) => -eta * sin_mu * s * eq.sigma(f.0, f.1),
                    (_, 0) => eta * eq.sigma(e.0, e.1) * s * sin_mu,
                    _ => -eta * eq.sigma(e.0, e.1) * s * eq.sigma(f.0, f.1),
                }
            };
        }
    }
    let jac = DualJacobian {
        matrix: m,
        kind: JacobianKind::Prism,
    };
    #[cfg(debug_assertions)]
    {
        let z = dual_jacobian_prism_continued(cfg)?;
        for r in 0..6 {
            for c in 0..6 {
                debug_assert!(
                    (z[r][c].re - m[r][c]).abs() <= 1e-9 * (1.0 + m[r][c].abs()),
                    "real and continued forms disagree at ({r}, {c})"
                );
            }
        }
    }
    Ok(jac)
}

/// The mild formula evaluated with complex `σ12 = i sin μ`, then mapped to
/// `(μ, ℓ)` by `∂μ = ∂ℓ12 / i` and `∂a12 = i ∂ℓ`. Real up to rounding.
pub fn dual_jacobian_prism_continued(cfg: &PrismTetConfig) -> Result<[[Complex64; 6]; 6]> {
    let (g, eq) = prism_edges(cfg)?;
    let eta = eta(&g, &PRISM_SIGNS)?;
    let signs = &PRISM_SIGNS;
    let i = Complex64::new(0.0, 1.0);
    let sig = |a: usize, b: usize| -> Complex64 {
        let rec = eq.edge(a, b);
        if rec.is_continued() {
            i * rec.sigma
        } else {
            Complex64::new(rec.sigma, 0.0)
        }
    };
    let sp = |a: usize, b: usize| eq.sigma_prime(a, b);
    let mut out = [[Complex64::new(0.0, 0.0); 6]; 6];
    for (r, &e) in PRISM_ORDER.iter().enumerate() {
        for (c, &f) in PRISM_ORDER.iter().enumerate() {
            let entry = if r == c {
                let s2 = sig(e.0, e.1) * sig(e.0, e.1);
                let omega = diagonal(e.0, e.1, signs, &sp) / s2;
                -eta * omega * s2
            } else {
                -eta * sig(e.0, e.1) * structure(e, f, signs, &sp) * sig(f.0, f.1)
            };
            let row_scale = if r == 0 { -i } else { Complex64::new(1.0, 0.0) };
            let col_scale = if c == 0 { i } else { Complex64::new(1.0, 0.0) };
            out[r][c] = row_scale * entry * col_scale;
        }
    }
    Ok(out)
}

/// A configuration whose edge lengths are a function of six real variables.
pub trait LengthMap: Sized + Copy {
    const KIND: JacobianKind;
    fn variables(&self) -> [f64; 6];
    fn with_variables(&self, v: [f64; 6]) -> Result<Self>;
    fn lengths(&self) -> Result<[f64; 6]>;
}

impl LengthMap for MildTetConfig {
    const KIND: JacobianKind = JacobianKind::Mild;

    fn variables(&self) -> [f64; 6] {
        self.angles
    }

    fn with_variables(&self, v: [f64; 6]) -> Result<Self> {
        MildTetConfig::new(v, self.signs)
    }

    fn lengths(&self) -> Result<[f64; 6]> {
        let eq = edge_quantities(&gram_mild(self), &self.signs)?;
        Ok(eq.edges.map(|e| e.value()))
    }
}

impl LengthMap for PrismTetConfig {
    const KIND: JacobianKind = JacobianKind::Prism;

    fn variables(&self) -> [f64; 6] {
        let t = self.theta;
        [self.ell, t[0], t[1], t[2], t[3], t[4]]
    }

    fn with_variables(&self, v: [f64; 6]) -> Result<Self> {
        PrismTetConfig::new([v[1], v[2], v[3], v[4], v[5]], v[0])
    }

    fn lengths(&self) -> Result<[f64; 6]> {
        let (_, eq) = prism_edges(self)?;
        Ok(PRISM_ORDER.map(|(k, l)| eq.length(k, l)))
    }
}

pub const MIN_STEP: f64 = 1e-7;
pub const MAX_STEP: f64 = 1e-3;

/// Central differences of the exact length map.
pub fn finite_difference_jacobian<C: LengthMap>(cfg: &C, step: f64) -> Result<DualJacobian> {
    if !(MIN_STEP..=MAX_STEP).contains(&step) {
        return Err(Error::Domain(format!("step {step:e} is outside [1e-7, 1e-3]")));
    }
    let x = cfg.variables();
    let mut m = [[0.0; 6]; 6];
    let probe = |v: [f64; 6]| -> Result<[f64; 6]> {
        cfg.with_variables(v).and_then(|p| p.lengths()).map_err(|e| {
            Error::InvalidConfiguration(format!("finite-difference probe left the valid region: {e}"))
        })
    };
    let shifted = |c: usize, t: f64| {
        let mut v = x;
        v[c] += t;
        probe(v)
    };
    // five-point central stencil
    for c in 0..6 {
        let p1 = shifted(c, step)?;
        let m1 = shifted(c, -step)?;
        let p2 = shifted(c, 2.0 * step)?;
        let m2 = shifted(c, -2.0 * step)?;
        for r in 0..6 {
            m[r][c] = (8.0 * (p1[r] - m1[r]) - (p2[r] - m2[r])) / (12.0 * step);
        }
    }
    Ok(DualJacobian {
        matrix: m,
        kind: C::KIND,
    })
}
