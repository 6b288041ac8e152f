//! Gram matrices, vertex signs and the metric quantities attached to edges,
//! faces and vertex links of a generalised hyperbolic tetrahedron.
//!
//! Vertices are numbered 0..4 internally (1..4 in the docs). Edge `e_kl`
//! joins vertices `k` and `l` and carries the dihedral angle `a_kl`. Row `i`
//! of the Gram matrix is the face opposite vertex `i`, so the Gram entry
//! `(i, j)` is `-cos a_kl` where `{k, l}` is the complement of `{i, j}`.
//! With this layout the cofactor `c_kl` measures the edge `e_kl`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Vertex pairs in the fixed edge order `12, 13, 14, 23, 24, 34`.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Smallest accepted `-det G`.
pub const DET_TOLERANCE: f64 = 1e-12;

/// The two vertices not in `{k, l}`, in increasing order.
pub fn complement(k: usize, l: usize) -> (usize, usize) {
    let mut rest = (0..4).filter(|&v| v != k && v != l);
    let a = rest.next().unwrap();
    let b = rest.next().unwrap();
    (a, b)
}

/// Position of the edge `{k, l}` in [`EDGES`].
pub fn edge_index(k: usize, l: usize) -> usize {
    let (a, b) = if k < l { (k, l) } else { (l, k) };
    EDGES.iter().position(|&e| e == (a, b)).expect("edge of a tetrahedron")
}

/// Vertex type: proper (+1), ideal (0) or ultra-ideal (-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexSign {
    UltraIdeal,
    Ideal,
    Proper,
}

impl VertexSign {
    pub fn value(self) -> i32 {
        match self {
            VertexSign::UltraIdeal => -1,
            VertexSign::Ideal => 0,
            VertexSign::Proper => 1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }

    pub fn from_value(v: i32) -> Result<VertexSign> {
        match v {
            -1 => Ok(VertexSign::UltraIdeal),
            0 => Ok(VertexSign::Ideal),
            1 => Ok(VertexSign::Proper),
            _ => Err(Error::Domain(format!("vertex sign must be -1, 0 or 1, got {v}"))),
        }
    }
}

/// Signs of a prism truncated tetrahedron: vertices 1 and 2 are cut off by
/// intersecting polar planes.
pub const PRISM_SIGNS: [VertexSign; 4] = [
    VertexSign::UltraIdeal,
    VertexSign::UltraIdeal,
    VertexSign::Proper,
    VertexSign::Proper,
];

fn check_angle(name: &str, a: f64) -> Result<()> {
    if !a.is_finite() {
        return Err(Error::NonFinite(format!("{name} = {a}")));
    }
    if a <= 0.0 || a >= PI {
        return Err(Error::Domain(format!("{name} = {a} is not in (0, pi)")));
    }
    Ok(())
}

/// Six dihedral angles in edge order and four vertex signs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MildTetConfig {
    pub angles: [f64; 6],
    pub signs: [VertexSign; 4],
}

impl MildTetConfig {
    pub fn new(angles: [f64; 6], signs: [VertexSign; 4]) -> Result<Self> {
        for (n, &a) in angles.iter().enumerate() {
            let (k, l) = EDGES[n];
            check_angle(&format!("a{}{}", k + 1, l + 1), a)?;
        }
        Ok(MildTetConfig { angles, signs })
    }

    pub fn angle(&self, k: usize, l: usize) -> f64 {
        self.angles[edge_index(k, l)]
    }
}

/// Prism truncated tetrahedron: `theta = [θ1, θ2, θ3, θ5, θ6]` and the
/// length `ell` of the edge cut out by the two intersecting polar planes.
///
/// Edge correspondence: `θ1 = a34`, `θ2 = a13`, `θ3 = a23`, `θ5 = a24`,
/// `θ6 = a14`, and the continued pair is `a12 = iℓ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrismTetConfig {
    pub theta: [f64; 5],
    pub ell: f64,
}

/// Labels of the `theta` slots.
pub const THETA_LABELS: [&str; 5] = ["theta1", "theta2", "theta3", "theta5", "theta6"];

/// Vertex pair carrying each `theta` slot.
pub const THETA_EDGES: [(usize, usize); 5] = [(2, 3), (0, 2), (1, 2), (1, 3), (0, 3)];

impl PrismTetConfig {
    pub fn new(theta: [f64; 5], ell: f64) -> Result<Self> {
        for (name, &t) in THETA_LABELS.iter().zip(theta.iter()) {
            check_angle(name, t)?;
        }
        if !ell.is_finite() {
            return Err(Error::NonFinite(format!("ell = {ell}")));
        }
        if ell <= 0.0 {
            return Err(Error::Domain(format!("ell = {ell} must be positive")));
        }
        Ok(PrismTetConfig { theta, ell })
    }

    pub fn theta1(&self) -> f64 {
        self.theta[0]
    }
    pub fn theta2(&self) -> f64 {
        self.theta[1]
    }
    pub fn theta3(&self) -> f64 {
        self.theta[2]
    }
    pub fn theta5(&self) -> f64 {
        self.theta[3]
    }
    pub fn theta6(&self) -> f64 {
        self.theta[4]
    }
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn submatrix(m: &[[f64; 4]; 4], row: usize, col: usize) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for (r, i) in (0..4).filter(|&i| i != row).enumerate() {
        for (c, j) in (0..4).filter(|&j| j != col).enumerate() {
            out[r][c] = m[i][j];
        }
    }
    out
}

/// Determinant of a 4x4 matrix by Laplace expansion along the first row.
pub fn det4(m: &[[f64; 4]; 4]) -> f64 {
    (0..4)
        .map(|j| {
            let s = if j % 2 == 0 { 1.0 } else { -1.0 };
            s * m[0][j] * det3(&submatrix(m, 0, j))
        })
        .sum()
}

/// Adjugate: `c_ij = (-1)^(i+j) det(m without row j and column i)`.
pub fn adjugate4(m: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut c = [[0.0; 4]; 4];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let s = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
            *v = s * det3(&submatrix(m, j, i));
        }
    }
    c
}

/// Symmetric 4x4 matrix with unit diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramMatrix {
    entries: [[f64; 4]; 4],
}

impl GramMatrix {
    pub fn from_entries(entries: [[f64; 4]; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                if !entries[i][j].is_finite() {
                    return Err(Error::NonFinite(format!("Gram entry ({}, {})", i + 1, j + 1)));
                }
                if (entries[i][j] - entries[j][i]).abs() > 1e-15 {
                    return Err(Error::Domain("Gram matrix is not symmetric".into()));
                }
            }
            if entries[i][i] != 1.0 {
                return Err(Error::Domain("Gram matrix diagonal must be 1".into()));
            }
        }
        Ok(GramMatrix { entries })
    }

    /// Builds `G` from the cosines of the six dihedral angles in edge order.
    /// A cosine above 1 stands for `cosh` of a continued angle.
    pub fn from_edge_cosines(cosines: [f64; 6]) -> Self {
        let mut g = [[0.0; 4]; 4];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for (n, &(k, l)) in EDGES.iter().enumerate() {
            let (i, j) = complement(k, l);
            g[i][j] = -cosines[n];
            g[j][i] = -cosines[n];
        }
        GramMatrix { entries: g }
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    /// `-G_ij` for the face pair `{i, j}` complementary to the edge `{k, l}`,
    /// i.e. the cosine of `a_kl` (or `cosh` of its continuation).
    pub fn edge_cosine(&self, k: usize, l: usize) -> f64 {
        let (i, j) = complement(k, l);
        -self.entries[i][j]
    }

    pub fn det(&self) -> f64 {
        det4(&self.entries)
    }

    /// Principal minor `det G_ii` (row and column `i` removed).
    pub fn minor(&self, i: usize) -> f64 {
        det3(&submatrix(&self.entries, i, i))
    }

    pub fn minors(&self) -> [f64; 4] {
        [self.minor(0), self.minor(1), self.minor(2), self.minor(3)]
    }

    pub fn cofactors(&self) -> [[f64; 4]; 4] {
        cofactors(self)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| (self.entries[i][j] - self.entries[j][i]).abs() <= 1e-15))
    }
}

pub fn cofactors(g: &GramMatrix) -> [[f64; 4]; 4] {
    adjugate4(&g.entries)
}

pub fn gram_mild(cfg: &MildTetConfig) -> GramMatrix {
    GramMatrix::from_edge_cosines(cfg.angles.map(f64::cos))
}

pub fn gram_prism(cfg: &PrismTetConfig) -> GramMatrix {
    let mut cosines = [0.0; 6];
    cosines[edge_index(0, 1)] = cfg.ell.cosh();
    for (t, &(k, l)) in cfg.theta.iter().zip(THETA_EDGES.iter()) {
        cosines[edge_index(k, l)] = t.cos();
    }
    GramMatrix::from_edge_cosines(cosines)
}

/// Names the first violated condition among `det G < 0` and
/// `ε_i det G_ii > 0`.
pub fn check_validity(g: &GramMatrix, signs: &[VertexSign; 4]) -> Result<()> {
    let det = g.det();
    if !det.is_finite() {
        return Err(Error::NonFinite("det G".into()));
    }
    if det >= 0.0 {
        return Err(Error::InvalidConfiguration(format!("det G = {det:e} is not negative")));
    }
    if -det <= DET_TOLERANCE {
        return Err(Error::Degenerate(format!("det G = {det:e} is too close to zero")));
    }
    for (i, s) in signs.iter().enumerate() {
        let m = s.as_f64() * g.minor(i);
        if *s == VertexSign::Ideal {
            return Err(Error::IdealVertex(format!(
                "vertex {} has sign 0; the minor condition eps_i det G_ii > 0 cannot hold",
                i + 1
            )));
        }
        if m <= 0.0 {
            return Err(Error::InvalidConfiguration(format!(
                "eps_{0} det G_{0}{0} = {m:e} is not positive",
                i + 1
            )));
        }
    }
    Ok(())
}

pub fn gram_validity(g: &GramMatrix, signs: &[VertexSign; 4]) -> bool {
    check_validity(g, signs).is_ok()
}

/// `σ = (e^ℓ - ε_k ε_l e^-ℓ)/2`, `σ' = (e^ℓ + ε_k ε_l e^-ℓ)/2`.
pub fn sigma(ell: f64, eps_k: VertexSign, eps_l: VertexSign) -> (f64, f64) {
    let e = (eps_k.value() * eps_l.value()) as f64;
    let p = ell.exp();
    let m = (-ell).exp();
    ((p - e * m) / 2.0, (p + e * m) / 2.0)
}

/// `μ = ∫_0^b cos(√ε s) ds` and its derivative `μ' = cos(√ε b)`.
pub fn mu_of_b(b: f64, eps_l: VertexSign) -> (f64, f64) {
    match eps_l {
        VertexSign::Proper => (b.sin(), b.cos()),
        VertexSign::Ideal => (b, 1.0),
        VertexSign::UltraIdeal => (b.sinh(), b.cosh()),
    }
}

/// Length of an edge. A continued edge is `ℓ = iμ`; only `μ` is stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeLength {
    Real(f64),
    Continued { mu: f64 },
}

/// `sigma` of a continued edge is the coefficient `s` in `σ = i s`
/// (`s = sin μ`), and `sigma_prime = cos μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeRecord {
    pub pair: (usize, usize),
    pub length: EdgeLength,
    pub sigma: f64,
    pub sigma_prime: f64,
}

impl EdgeRecord {
    pub fn is_continued(&self) -> bool {
        matches!(self.length, EdgeLength::Continued { .. })
    }

    /// Real length, or `μ` for a continued edge.
    pub fn value(&self) -> f64 {
        match self.length {
            EdgeLength::Real(l) => l,
            EdgeLength::Continued { mu } => mu,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeQuantities {
    pub edges: [EdgeRecord; 6],
    pub signs: [VertexSign; 4],
}

impl EdgeQuantities {
    pub fn edge(&self, k: usize, l: usize) -> &EdgeRecord {
        &self.edges[edge_index(k, l)]
    }
    pub fn sigma(&self, k: usize, l: usize) -> f64 {
        self.edge(k, l).sigma
    }
    pub fn sigma_prime(&self, k: usize, l: usize) -> f64 {
        self.edge(k, l).sigma_prime
    }
    pub fn length(&self, k: usize, l: usize) -> f64 {
        self.edge(k, l).value()
    }
    pub fn is_mild(&self) -> bool {
        !self.edges.iter().any(EdgeRecord::is_continued)
    }
}

/// Edge lengths from normalized cofactors,
/// `σ'_kl = c_kl / sqrt(ε_k c_kk ε_l c_ll)`.
///
/// An edge whose dihedral angle is continued (Gram entry below -1) yields
/// `cos μ = σ'_kl` instead of a length.
pub fn edge_quantities(g: &GramMatrix, signs: &[VertexSign; 4]) -> Result<EdgeQuantities> {
    check_validity(g, signs)?;
    let c = g.cofactors();
    let mut edges = [EdgeRecord {
        pair: (0, 0),
        length: EdgeLength::Real(0.0),
        sigma: 0.0,
        sigma_prime: 0.0,
    }; 6];
    for (n, &(k, l)) in EDGES.iter().enumerate() {
        let ek = signs[k];
        let el = signs[l];
        let sp = c[k][l] / (ek.as_f64() * c[k][k] * el.as_f64() * c[l][l]).sqrt();
        let name = format!("edge {}{}", k + 1, l + 1);
        if !sp.is_finite() {
            return Err(Error::Degenerate(format!("{name}: non-finite cofactor ratio")));
        }
        let continued = g.edge_cosine(k, l) > 1.0;
        edges[n] = if continued {
            if sp.abs() >= 1.0 {
                return Err(Error::InvalidConfiguration(format!(
                    "{name}: continued pair needs |sigma'| < 1, got {sp}"
                )));
            }
            let mu = sp.acos();
            EdgeRecord {
                pair: (k, l),
                length: EdgeLength::Continued { mu },
                sigma: mu.sin(),
                sigma_prime: sp,
            }
        } else {
            let ell = if ek.value() * el.value() == 1 {
                if sp < 1.0 - 1e-12 {
                    return Err(Error::InvalidConfiguration(format!(
                        "{name}: sigma' = {sp} < 1 is not realizable"
                    )));
                }
                sp.max(1.0).acosh()
            } else {
                sp.asinh()
            };
            let (s, sp2) = sigma(ell, ek, el);
            EdgeRecord {
                pair: (k, l),
                length: EdgeLength::Real(ell),
                sigma: s,
                sigma_prime: sp2,
            }
        };
    }
    Ok(EdgeQuantities {
        edges,
        signs: *signs,
    })
}

/// Rebuilds the Gram matrix from edge data alone by inverting the matrix
/// `H` with `H_kk = ε_k`, `H_kl = σ'_kl`.
pub fn gram_from_edges(edges: &EdgeQuantities) -> Result<GramMatrix> {
    let mut h = [[0.0; 4]; 4];
    for (k, row) in h.iter_mut().enumerate() {
        row[k] = edges.signs[k].as_f64();
    }
    for e in edges.edges.iter() {
        let (k, l) = e.pair;
        h[k][l] = e.sigma_prime;
        h[l][k] = e.sigma_prime;
    }
    let adj = adjugate4(&h);
    let mut g = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let d = adj[i][i] * adj[j][j];
            if d <= 0.0 {
                return Err(Error::Degenerate("edge matrix has a non-definite diagonal".into()));
            }
            g[i][j] = if i == j { 1.0 } else { adj[i][j] / d.sqrt() };
        }
    }
    // adj H = (det H / det G) D^-1 G D^-1, so the overall sign is that of adj_11.
    if adj[0][0] < 0.0 {
        for (i, row) in g.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                if i != j {
                    *v = -*v;
                }
            }
        }
    }
    Ok(GramMatrix { entries: g })
}

/// Plane angle data `b^i_jk`, `μ^i_jk`, `μ'^i_jk` of the face opposite
/// vertex `i`, at its vertex `l` (opposite the edge `e_jk`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceAngle {
    pub face: usize,
    pub vertex: usize,
    pub b: f64,
    pub mu: f64,
    pub mu_prime: f64,
    pub sign: VertexSign,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FaceAngleQuantities {
    entries: [[Option<FaceAngle>; 4]; 4],
}

impl FaceAngleQuantities {
    /// The quantity with superscript `i` and subscript `jk`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &FaceAngle {
        let l = (0..4).find(|&v| v != i && v != j && v != k).expect("distinct vertices");
        self.at(i, l)
    }

    /// Face opposite `face`, angle at `vertex`.
    pub fn at(&self, face: usize, vertex: usize) -> &FaceAngle {
        self.entries[face][vertex].as_ref().expect("face and vertex differ")
    }

    pub fn mu(&self, i: usize, j: usize, k: usize) -> f64 {
        self.get(i, j, k).mu
    }

    pub fn mu_prime(&self, i: usize, j: usize, k: usize) -> f64 {
        self.get(i, j, k).mu_prime
    }

    pub fn iter(&self) -> impl Iterator<Item = &FaceAngle> {
        self.entries.iter().flatten().flatten()
    }
}

/// Two-route disagreement above which a configuration is reported inconsistent.
pub const FACE_ROUTE_TOLERANCE: f64 = 1e-9;

fn b_of_mu_prime(mu_prime: f64, eps: VertexSign) -> Result<f64> {
    match eps {
        VertexSign::Proper => {
            if mu_prime.abs() > 1.0 + 1e-9 {
                return Err(Error::Inconsistent(format!(
                    "spherical link with cos b = {mu_prime}"
                )));
            }
            Ok(mu_prime.clamp(-1.0, 1.0).acos())
        }
        VertexSign::Ideal => Ok(0.0),
        VertexSign::UltraIdeal => {
            if mu_prime < 1.0 - 1e-9 {
                return Err(Error::Inconsistent(format!(
                    "hyperbolic link with cosh b = {mu_prime}"
                )));
            }
            Ok(mu_prime.max(1.0).acosh())
        }
    }
}

/// Face angles from the second Cosine Law for faces, cross-checked against
/// the Cosine Law for links. Only mildly truncated configurations.
pub fn face_angle_quantities(g: &GramMatrix, signs: &[VertexSign; 4]) -> Result<FaceAngleQuantities> {
    let eq = edge_quantities(g, signs)?;
    if !eq.is_mild() {
        return Err(Error::Domain(
            "face angle quantities are defined for mildly truncated configurations only".into(),
        ));
    }
    let cos_a = |p: usize, q: usize| g.edge_cosine(p, q);
    let sin_a = |p: usize, q: usize| (1.0 - cos_a(p, q).powi(2)).max(0.0).sqrt();
    let mut entries = [[None; 4]; 4];
    for i in 0..4 {
        for l in 0..4 {
            if l == i {
                continue;
            }
            let (j, k) = complement(i, l);
            let eps_l = signs[l];
            let route_face = (-eps_l.as_f64() * eq.sigma_prime(j, k)
                + eq.sigma_prime(j, l) * eq.sigma_prime(k, l))
                / (eq.sigma(j, l) * eq.sigma(k, l));
            // Link of vertex l: the side opposite the angle a_li.
            let route_link = (cos_a(l, i) + cos_a(l, j) * cos_a(l, k)) / (sin_a(l, j) * sin_a(l, k));
            let scale = 1.0f64.max(route_face.abs());
            if !route_face.is_finite() || (route_face - route_link).abs() > FACE_ROUTE_TOLERANCE * scale {
                return Err(Error::Inconsistent(format!(
                    "face {} at vertex {}: cosine laws give {route_face} and {route_link}",
                    i + 1,
                    l + 1
                )));
            }
            let b = b_of_mu_prime(route_face, eps_l)?;
            let (mu, _) = mu_of_b(b, eps_l);
            entries[i][l] = Some(FaceAngle {
                face: i,
                vertex: l,
                b,
                mu,
                mu_prime: route_face,
                sign: eps_l,
            });
        }
    }
    Ok(FaceAngleQuantities { entries })
}

/// Vertex momenta `M^i` and face momenta `M_jkl` (face opposite `i`), each
/// evaluated for all three admissible index choices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Momenta {
    pub vertex_choices: [[f64; 3]; 4],
    pub face_choices: [[f64; 3]; 4],
}

impl Momenta {
    pub fn vertex(&self, i: usize) -> f64 {
        self.vertex_choices[i][0]
    }

    /// `M_jkl` for the face opposite vertex `i`.
    pub fn face(&self, i: usize) -> f64 {
        self.face_choices[i][0]
    }

    fn spread(choices: &[f64; 3]) -> f64 {
        let max = choices.iter().cloned().fold(f64::MIN, f64::max);
        let min = choices.iter().cloned().fold(f64::MAX, f64::min);
        (max - min) / max.abs().max(min.abs())
    }

    /// Largest relative spread across the admissible choices.
    pub fn max_relative_spread(&self) -> f64 {
        self.vertex_choices
            .iter()
            .chain(self.face_choices.iter())
            .map(Momenta::spread)
            .fold(0.0, f64::max)
    }
}

pub fn momenta(cfg: &MildTetConfig, edges: &EdgeQuantities, faces: &FaceAngleQuantities) -> Momenta {
    let mut vertex_choices = [[0.0; 3]; 4];
    let mut face_choices = [[0.0; 3]; 4];
    for i in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&v| v != i).collect();
        for (c, &p) in others.iter().enumerate() {
            let rest: Vec<usize> = others.iter().copied().filter(|&v| v != p).collect();
            let (q, r) = (rest[0], rest[1]);
            // M^i = μ^i_pq μ^i_pr σ_qr
            vertex_choices[i][c] = faces.mu(i, p, q) * faces.mu(i, p, r) * edges.sigma(q, r);
            // M_{pqr} = μ^p_qr sin a_iq sin a_ir
            face_choices[i][c] = faces.mu(p, q, r) * cfg.angle(i, q).sin() * cfg.angle(i, r).sin();
        }
    }
    Momenta {
        vertex_choices,
        face_choices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use VertexSign::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(0.0, Proper, Proper), (0.0, 1.0));
        let (s, sp) = sigma(2f64.ln(), UltraIdeal, UltraIdeal);
        assert!(close(s, 0.75, 1e-15) && close(sp, 1.25, 1e-15));
        assert_eq!(sigma(0.0, Proper, UltraIdeal), (1.0, 0.0));
    }

    #[test]
    fn mu_of_b_examples() {
        assert_eq!(mu_of_b(0.0, Proper), (0.0, 1.0));
        let (m, mp) = mu_of_b(PI / 2.0, Proper);
        assert!(close(m, 1.0, 1e-15) && mp.abs() < 1e-15);
        let (m, mp) = mu_of_b(2f64.ln(), UltraIdeal);
        assert!(close(m, 0.75, 1e-15) && close(mp, 1.25, 1e-15));
        assert_eq!(mu_of_b(0.3, Ideal), (0.3, 1.0));
    }

    #[test]
    fn right_angled_gram_is_identity() {
        let cfg = MildTetConfig::new([PI / 2.0; 6], [Proper; 4]).unwrap();
        let g = gram_mild(&cfg);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g.get(i, j) - expect).abs() < 1e-16);
            }
        }
        assert!(!gram_validity(&g, &[Proper; 4]));
        let c = g.cofactors();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((c[i][j] - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn single_pair_gram_entry_sits_on_complementary_faces() {
        let mut angles = [PI / 2.0; 6];
        angles[0] = PI / 3.0;
        let g = gram_mild(&MildTetConfig::new(angles, [Proper; 4]).unwrap());
        assert!((g.get(2, 3) + 0.5).abs() < 1e-15);
        assert!((g.get(3, 2) + 0.5).abs() < 1e-15);
        assert!(g.get(0, 1).abs() < 1e-15);
        // c_34 = -det of [[1,0,0],[0,1,0],[0,0,-1/2]] block with sign (-1)^(3+4)
        let c = g.cofactors();
        assert!((c[2][3] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn regular_ideal_tetrahedron_has_vanishing_minors() {
        let g = gram_mild(&MildTetConfig::new([PI / 3.0; 6], [Proper; 4]).unwrap());
        assert!((g.det() + 27.0 / 16.0).abs() < 1e-14);
        for m in g.minors() {
            assert!(m.abs() < 1e-14);
        }
        assert!(!gram_validity(&g, &[Proper; 4]));
    }

    #[test]
    fn regular_compact_tetrahedron() {
        let a = 1.2f64;
        let c = a.cos();
        let g = gram_mild(&MildTetConfig::new([a; 6], [Proper; 4]).unwrap());
        assert!(close(g.det(), (1.0 + c).powi(3) * (1.0 - 3.0 * c), 1e-14));
        for m in g.minors() {
            assert!(close(m, (1.0 + c).powi(2) * (1.0 - 2.0 * c), 1e-14));
        }
        let eq = edge_quantities(&g, &[Proper; 4]).unwrap();
        // Face angle from the link cosine law, then the length from the face law.
        let cb = (c + c * c) / (1.0 - c * c);
        let sb2 = 1.0 - cb * cb;
        let expect = ((cb + cb * cb) / sb2).acosh();
        for e in eq.edges.iter() {
            assert!(close(e.value(), expect, 1e-12));
        }
    }

    #[test]
    fn prism_gram_layout() {
        let cfg = PrismTetConfig::new([0.1, 0.2, 0.3, 0.5, 0.6], 0.50672).unwrap();
        let g = gram_prism(&cfg);
        assert_eq!(g.get(0, 1), -0.1f64.cos());
        assert_eq!(g.get(1, 3), -0.2f64.cos());
        assert_eq!(g.get(0, 3), -0.3f64.cos());
        assert_eq!(g.get(0, 2), -0.5f64.cos());
        assert_eq!(g.get(1, 2), -0.6f64.cos());
        assert!((g.get(2, 3) + 1.131_153_213_003_016).abs() < 1e-14);
        assert!(g.is_symmetric());
    }

    #[test]
    fn t5_is_valid_with_prism_signs() {
        let cfg = PrismTetConfig::new([2.0 * PI / 5.0, PI / 2.0, PI / 2.0, PI / 3.0, PI / 3.0], 0.50672).unwrap();
        let g = gram_prism(&cfg);
        assert!(gram_validity(&g, &PRISM_SIGNS));
        let eq = edge_quantities(&g, &PRISM_SIGNS).unwrap();
        assert!(eq.edge(0, 1).is_continued());
        assert!((eq.length(0, 1) - 1.25664).abs() < 1e-4);
    }

    #[test]
    fn ideal_sign_is_rejected_by_validity() {
        let g = gram_mild(&MildTetConfig::new([1.2; 6], [Proper; 4]).unwrap());
        assert!(matches!(
            check_validity(&g, &[Proper, Proper, Ideal, Proper]),
            Err(Error::IdealVertex(_))
        ));
    }

    #[test]
    fn edge_index_roundtrip() {
        for (n, &(k, l)) in EDGES.iter().enumerate() {
            assert_eq!(edge_index(k, l), n);
            assert_eq!(edge_index(l, k), n);
        }
    }
}
