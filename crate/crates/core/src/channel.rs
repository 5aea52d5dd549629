//! Quantum channels `T(x) = (1/d) * sum_j u_j x u_j^*`, their superoperator
//! matrices, reduced spectral radius, Schatten-induced operator norms, and
//! the conjugated vector map that transports Schatten norms to lp norms.

use crate::error::{Error, Result};
use crate::generators::Seed;
use crate::linalg::{
    self, c, diag_extract, hs_norm, identity, kron, svd, unvec_rm, vec_rm, PNorm,
};
use crate::{CMat, CVec, Complex64};

/// Unitarity tolerance for channel members: `||u u^* - I||_2 <= 1e-10 sqrt(N)`.
pub const UNITARY_TOL: f64 = 1e-10;
/// Absolute tolerance under which a superoperator singular value of `S - I`
/// counts as a fixed direction, and an eigenvalue counts as 1.
pub const UNIT_EIGEN_TOL: f64 = 1e-8;
/// Below this reduced spectral radius a channel is treated as a perfect mixer.
pub const DEGENERATE_RHO: f64 = 1e-10;

// ---------------------------------------------------------------------------
// Channel
// ---------------------------------------------------------------------------

/// A d-tuple of N x N unitaries acting by averaged conjugation.
#[derive(Debug, Clone)]
pub struct Channel {
    dim: usize,
    unitaries: Vec<CMat>,
}

impl Channel {
    /// Validates sizes, finiteness, and unitarity of every member.
    /// On failure reports the index of the offending unitary.
    pub fn new(dim: usize, unitaries: Vec<CMat>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("channel: dimension must be positive"));
        }
        if unitaries.is_empty() {
            return Err(Error::domain("channel: degree must be positive"));
        }
        for (j, u) in unitaries.iter().enumerate() {
            if u.shape() != (dim, dim) {
                return Err(Error::validation(format!(
                    "channel: unitary {j} has shape {}x{}, expected {dim}x{dim}",
                    u.nrows(),
                    u.ncols()
                )));
            }
            if !linalg::all_finite(u) {
                return Err(Error::validation(format!(
                    "channel: unitary {j} has non-finite entries"
                )));
            }
            let defect = hs_norm(&(u * u.adjoint() - identity(dim)));
            if defect > UNITARY_TOL * (dim as f64).sqrt() {
                return Err(Error::validation(format!(
                    "channel: member {j} is not unitary, ||uu* - I||_2 = {defect:.3e}"
                )));
            }
        }
        Ok(Channel { dim, unitaries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.unitaries.len()
    }

    pub fn unitaries(&self) -> &[CMat] {
        &self.unitaries
    }

    /// `T(η) = (1/d) Σ u_j η u_j^*`.
    pub fn apply(&self, eta: &CMat) -> Result<CMat> {
        self.check_dim(eta)?;
        let mut out = CMat::zeros(self.dim, self.dim);
        for u in &self.unitaries {
            out += u * eta * u.adjoint();
        }
        Ok(out.scale(1.0 / self.degree() as f64))
    }

    /// Hilbert-Schmidt adjoint `T^*(η) = (1/d) Σ u_j^* η u_j`.
    pub fn adjoint_apply(&self, eta: &CMat) -> Result<CMat> {
        self.check_dim(eta)?;
        let mut out = CMat::zeros(self.dim, self.dim);
        for u in &self.unitaries {
            out += u.adjoint() * eta * u;
        }
        Ok(out.scale(1.0 / self.degree() as f64))
    }

    /// The channel whose members are the adjoint unitaries; equals the
    /// Hilbert-Schmidt adjoint of `self` as a map.
    pub fn adjoint_channel(&self) -> Channel {
        Channel {
            dim: self.dim,
            unitaries: self.unitaries.iter().map(|u| u.adjoint()).collect(),
        }
    }

    fn check_dim(&self, eta: &CMat) -> Result<()> {
        if eta.shape() != (self.dim, self.dim) {
            return Err(Error::dimension(format!(
                "channel of dim {} applied to {}x{}",
                self.dim,
                eta.nrows(),
                eta.ncols()
            )));
        }
        Ok(())
    }
}

/// `E(η) = (tr(η)/N) I`, the orthogonal projection (as a map on matrices)
/// onto the span of the identity.
pub fn e_map(eta: &CMat) -> Result<CMat> {
    if eta.nrows() != eta.ncols() {
        return Err(Error::dimension(format!(
            "e_map: expected square, got {}x{}",
            eta.nrows(),
            eta.ncols()
        )));
    }
    let n = eta.nrows();
    Ok(identity(n).map(|z| z * eta.trace() / c(n as f64, 0.0)))
}

/// `Δ(η) = T(η) - E(η)`; annihilates the identity and agrees with `T` on
/// traceless inputs.
pub fn delta_apply(t: &Channel, eta: &CMat) -> Result<CMat> {
    Ok(t.apply(eta)? - e_map(eta)?)
}

// ---------------------------------------------------------------------------
// Superoperator
// ---------------------------------------------------------------------------

/// The N^2 x N^2 matrix `(1/d) Σ u_j ⊗ conj(u_j)` acting on row-major
/// vectorizations: `S vec(η) = vec(T(η))`.
#[derive(Debug, Clone)]
pub struct Superoperator {
    pub dim: usize,
    pub matrix: CMat,
}

impl Superoperator {
    pub fn side(&self) -> usize {
        self.dim * self.dim
    }

    /// Apply through the matrix: `unvec(S vec(η))`.
    pub fn apply(&self, eta: &CMat) -> Result<CMat> {
        if eta.shape() != (self.dim, self.dim) {
            return Err(Error::dimension(format!(
                "superoperator of dim {} applied to {}x{}",
                self.dim,
                eta.nrows(),
                eta.ncols()
            )));
        }
        unvec_rm(&(&self.matrix * vec_rm(eta)), self.dim)
    }
}

/// Unit vector `vec(I)/sqrt(N)`, the fixed direction of every unital channel.
pub fn identity_direction(n: usize) -> CVec {
    vec_rm(&identity(n)).scale(1.0 / (n as f64).sqrt())
}

/// Materialize the superoperator of a channel.
pub fn superoperator(t: &Channel) -> Result<Superoperator> {
    let n = t.dim();
    let side = n * n;
    if side > 8192 {
        return Err(Error::Resource(format!(
            "superoperator: N = {n} gives a {side}x{side} matrix; refusing above 8192"
        )));
    }
    let mut m = CMat::zeros(side, side);
    for u in t.unitaries() {
        m += kron(u, &u.map(|z| z.conj()));
    }
    let matrix = m.scale(1.0 / t.degree() as f64);
    let sup = Superoperator { dim: n, matrix };
    // Unitality check: S vec(I)/sqrt(N) = vec(I)/sqrt(N).
    let v = identity_direction(n);
    let drift = (&sup.matrix * &v - &v).norm();
    if drift > 1e-9 {
        return Err(Error::validation(format!(
            "superoperator: unitality drift {drift:.3e} exceeds 1e-9"
        )));
    }
    Ok(sup)
}

// ---------------------------------------------------------------------------
// LinearMap
// ---------------------------------------------------------------------------

/// An abstract linear map on M(N): a channel, its deflation `Δ = T - E`,
/// the Hilbert-Schmidt adjoint of another map, or an explicit superoperator
/// matrix.
#[derive(Debug, Clone)]
pub enum LinearMap {
    Channel(Channel),
    Deflated(Channel),
    Adjoint(Box<LinearMap>),
    Explicit(Superoperator),
}

impl LinearMap {
    pub fn dim(&self) -> usize {
        match self {
            LinearMap::Channel(t) | LinearMap::Deflated(t) => t.dim(),
            LinearMap::Adjoint(m) => m.dim(),
            LinearMap::Explicit(s) => s.dim,
        }
    }

    pub fn apply(&self, eta: &CMat) -> Result<CMat> {
        match self {
            LinearMap::Channel(t) => t.apply(eta),
            LinearMap::Deflated(t) => delta_apply(t, eta),
            LinearMap::Adjoint(m) => m.adjoint_apply(eta),
            LinearMap::Explicit(s) => s.apply(eta),
        }
    }

    pub fn adjoint_apply(&self, eta: &CMat) -> Result<CMat> {
        match self {
            LinearMap::Channel(t) => t.adjoint_apply(eta),
            // E is self-adjoint, so Δ^* = T^* - E.
            LinearMap::Deflated(t) => Ok(t.adjoint_apply(eta)? - e_map(eta)?),
            LinearMap::Adjoint(m) => m.apply(eta),
            LinearMap::Explicit(s) => {
                if eta.shape() != (s.dim, s.dim) {
                    return Err(Error::dimension(format!(
                        "superoperator of dim {} applied to {}x{}",
                        s.dim,
                        eta.nrows(),
                        eta.ncols()
                    )));
                }
                unvec_rm(&(s.matrix.adjoint() * vec_rm(eta)), s.dim)
            }
        }
    }

    /// The Hilbert-Schmidt adjoint as a map value.
    pub fn adjoint(&self) -> LinearMap {
        match self {
            LinearMap::Adjoint(m) => (**m).clone(),
            other => LinearMap::Adjoint(Box::new(other.clone())),
        }
    }

    /// Materialized superoperator matrix of this map.
    pub fn superoperator_matrix(&self) -> Result<CMat> {
        match self {
            LinearMap::Channel(t) => Ok(superoperator(t)?.matrix),
            LinearMap::Deflated(t) => {
                let s = superoperator(t)?.matrix;
                let v = identity_direction(t.dim());
                Ok(s - &v * v.adjoint())
            }
            LinearMap::Adjoint(m) => Ok(m.superoperator_matrix()?.adjoint()),
            LinearMap::Explicit(s) => Ok(s.matrix.clone()),
        }
    }

    /// Exact `||map||_{2->2}`: top singular value of the superoperator.
    pub fn norm_2_to_2(&self) -> Result<f64> {
        Ok(svd(&self.superoperator_matrix()?)?.top())
    }
}

// ---------------------------------------------------------------------------
// Spectral quantities
// ---------------------------------------------------------------------------

/// Reduced spectral radius: the operator norm of the channel compressed to
/// the orthogonal complement of its fixed subspace `ker(S - I)`.
///
/// The fixed subspace always contains `vec(I)/sqrt(N)`; when the eigenvalue 1
/// is simple (every expander candidate) this is exactly the norm of the
/// restriction to the traceless complement of the identity. Channels with a
/// degenerate fixed space (abelian Cayley lifts, single-unitary channels)
/// are quotiented by the whole fixed space, which reproduces the classical
/// spectrum for circulant lifts. A channel that fixes everything is an
/// isometry on traceless matrices and reports 1.
pub fn reduced_spectral_radius(t: &Channel) -> Result<f64> {
    let s = superoperator(t)?.matrix;
    let side = s.nrows();
    let fixed = fixed_space_basis(&s)?;
    if fixed.ncols() == side {
        return Ok(1.0);
    }
    let q = identity(side) - &fixed * fixed.adjoint();
    let compressed = &q * &s * &q;
    Ok(svd(&compressed)?.top())
}

/// Orthonormal basis of the numerical kernel of `S - I`, always containing
/// the identity direction. Columns are orthonormal.
fn fixed_space_basis(s: &CMat) -> Result<CMat> {
    let side = s.nrows();
    let n = (side as f64).sqrt().round() as usize;
    let gap = s - identity(side);
    let dec = svd(&gap)?;
    let cols: Vec<_> = dec
        .singulars
        .iter()
        .enumerate()
        .filter(|(_, &sig)| sig <= UNIT_EIGEN_TOL)
        .map(|(i, _)| dec.right.column(i).clone_owned())
        .collect();
    if cols.is_empty() {
        // The identity direction is fixed analytically; fall back to it.
        let v = identity_direction(n);
        return Ok(CMat::from_columns(&[v]));
    }
    Ok(CMat::from_columns(&cols))
}

/// Count of superoperator eigenvalues within [`UNIT_EIGEN_TOL`] of 1.
///
/// Eigenvalues of the complex superoperator are obtained from the real
/// embedding `[[Re S, -Im S], [Im S, Re S]]`, whose spectrum is that of `S`
/// together with its conjugate; the count halves exactly.
pub fn unit_eigen_multiplicity(t: &Channel) -> Result<usize> {
    let s = superoperator(t)?.matrix;
    let side = s.nrows();
    let mut real = nalgebra::DMatrix::<f64>::zeros(2 * side, 2 * side);
    for i in 0..side {
        for j in 0..side {
            let z = s[(i, j)];
            real[(i, j)] = z.re;
            real[(i, j + side)] = -z.im;
            real[(i + side, j)] = z.im;
            real[(i + side, j + side)] = z.re;
        }
    }
    let eigs = real.complex_eigenvalues();
    let near_one = eigs
        .iter()
        .filter(|l| (*l - Complex64::new(1.0, 0.0)).norm() <= UNIT_EIGEN_TOL)
        .count();
    Ok((near_one + 1) / 2)
}

/// `K = 1/rho`, the certified upper bound on the height of the channel
/// restricted to traceless matrices. Degenerate (perfect-mixer) channels
/// have no witness and signal instead.
pub fn operator_height_bound(t: &Channel) -> Result<f64> {
    let rho = reduced_spectral_radius(t)?;
    if rho <= 1e-12 {
        return Err(Error::degenerate(format!(
            "operator_height_bound: rho = {rho:.3e} (perfect mixer; no witness exists)"
        )));
    }
    // rho <= 1 mathematically; the clamp absorbs rounding above 1.
    Ok((1.0 / rho).max(1.0))
}

// ---------------------------------------------------------------------------
// Induced norms
// ---------------------------------------------------------------------------

const NORM1_ITERS: usize = 40;

/// Schatten-p induced operator norm of a map on M(N).
///
/// p=2 is exact (top singular value of the superoperator, restricted when
/// the map is a restriction). p=1 is a certified lower bound: the maximum of
/// `||map(u v^*)||_1` over rank-one extreme points of the trace-norm ball,
/// refined by alternating maximization over `budget` deterministic restarts;
/// monotone in `budget`. p=inf is computed as the p=1 norm of the adjoint.
pub fn induced_norm(map: &LinearMap, p: PNorm, budget: usize) -> Result<f64> {
    if budget == 0 {
        return Err(Error::domain("induced_norm: budget must be >= 1"));
    }
    match p {
        PNorm::Two => map.norm_2_to_2(),
        PNorm::One => norm_1_lower_bound(map, budget),
        PNorm::Inf => norm_1_lower_bound(&map.adjoint(), budget),
    }
}

fn norm_1_lower_bound(map: &LinearMap, budget: usize) -> Result<f64> {
    let n = map.dim();
    let mut best = 0.0_f64;
    for restart in 0..budget {
        let (mut u, mut v) = if restart == 0 {
            let mut e = CVec::zeros(n);
            e[0] = c(1.0, 0.0);
            (e.clone(), e)
        } else {
            let seed = Seed(0x6e31_7201).child(restart as u64);
            (random_unit(n, seed.child(0)), random_unit(n, seed.child(1)))
        };
        let mut value = 0.0_f64;
        for _ in 0..NORM1_ITERS {
            let x = &u * v.adjoint();
            let y = map.apply(&x)?;
            let dec = svd(&y)?;
            let new_value: f64 = dec.singulars.iter().sum();
            if new_value <= value * (1.0 + 1e-12) + 1e-15 {
                value = value.max(new_value);
                break;
            }
            value = new_value;
            // Dual witness W = U V^* attains <W, y> = ||y||_1; pull it back
            // and re-optimize the rank-one input against it.
            let w = &dec.left * dec.right.adjoint();
            let z = map.adjoint_apply(&w)?;
            let zdec = svd(&z)?;
            u = zdec.left.column(0).clone_owned();
            v = zdec.right.column(0).clone_owned();
        }
        best = best.max(value);
    }
    Ok(best)
}

fn random_unit(n: usize, seed: Seed) -> CVec {
    let g = crate::generators::complex_gaussian_vector(n, seed);
    let norm = g.norm();
    if norm == 0.0 {
        let mut e = CVec::zeros(n);
        e[0] = c(1.0, 0.0);
        return e;
    }
    g.scale(1.0 / norm)
}

// ---------------------------------------------------------------------------
// Conjugated vector map
// ---------------------------------------------------------------------------

/// Matrix of the vector map `λ -> diag(U2 * map(U1 D_λ V1) * V2)` acting on
/// C^N. Its lp->lp norms never exceed the map's Schatten-p induced norms,
/// with equality at p=2 for SVD-chosen unitaries.
pub fn conjugated_vector_map(
    map: &LinearMap,
    u1: &CMat,
    u2: &CMat,
    v1: &CMat,
    v2: &CMat,
) -> Result<CMat> {
    let n = map.dim();
    for (name, u) in [("U1", u1), ("U2", u2), ("V1", v1), ("V2", v2)] {
        if u.shape() != (n, n) {
            return Err(Error::dimension(format!(
                "conjugated_vector_map: {name} has shape {}x{}, expected {n}x{n}",
                u.nrows(),
                u.ncols()
            )));
        }
        if !linalg::is_unitary(u, UNITARY_TOL) {
            return Err(Error::precondition(format!(
                "conjugated_vector_map: {name} is not unitary within {UNITARY_TOL:.0e} * sqrt(N)"
            )));
        }
    }
    let mut m = CMat::zeros(n, n);
    for k in 0..n {
        // U1 E_k V1 is the outer product of U1's k-th column with V1's k-th row.
        let x = u1.column(k) * v1.row(k);
        let col = diag_extract(&(u2 * map.apply(&x)? * v2));
        m.set_column(k, &col);
    }
    Ok(m)
}
