//! Dense complex matrix kernels: spectral factorizations, Schatten norms,
//! heights, logarithmic diameters, and the Toeplitz split.
//!
//! Everything operates on [`CMat`] (`nalgebra::DMatrix<Complex<f64>>`).
//! Factorizations are backed by nalgebra and validated against explicit
//! residual tolerances; callers may rely on the invariants stated on
//! [`HermitianEigen`] and [`Svd`] rather than on the backend.

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::{CMat, CVec, Complex64};

/// Relative tolerance for accepting an input as self-adjoint.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Relative cutoff below which a singular value counts as zero.
pub const RANK_TOL: f64 = 1e-10;
/// Relative reconstruction residual allowed for factorizations.
pub const FACTOR_TOL: f64 = 1e-9;

// ---------------------------------------------------------------------------
// Construction helpers
// ---------------------------------------------------------------------------

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// N x N identity.
pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Diagonal matrix from complex entries.
pub fn diag(entries: &[Complex64]) -> CMat {
    CMat::from_diagonal(&DVector::from_row_slice(entries))
}

/// Diagonal matrix from real entries.
pub fn diag_re(entries: &[f64]) -> CMat {
    let v: Vec<Complex64> = entries.iter().map(|&x| c(x, 0.0)).collect();
    diag(&v)
}

/// Main diagonal of a square matrix as a vector.
pub fn diag_extract(a: &CMat) -> CVec {
    CVec::from_iterator(a.nrows().min(a.ncols()), a.diagonal().iter().cloned())
}

/// True when every entry is finite (no NaN or infinity).
pub fn all_finite(a: &CMat) -> bool {
    a.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn require_square(a: &CMat, what: &str) -> Result<()> {
    if a.nrows() != a.ncols() {
        return Err(Error::dimension(format!(
            "{what}: expected square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(())
}

/// Frobenius norm, used internally before singular values are available.
fn fro(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Deviation of `u` from having orthonormal columns, `||u^* u - I||_F`.
pub fn orthonormality_defect(u: &CMat) -> f64 {
    let k = u.ncols();
    fro(&(u.adjoint() * u - identity(k)))
}

/// True when `u` is unitary within `tol * sqrt(n)`.
pub fn is_unitary(u: &CMat, tol: f64) -> bool {
    u.nrows() == u.ncols() && orthonormality_defect(u) <= tol * (u.nrows() as f64).sqrt()
}

/// Deviation of a square matrix from self-adjointness, relative to its size.
pub fn hermiticity_defect(a: &CMat) -> f64 {
    fro(&(a - a.adjoint())) / f64::max(1.0, fro(a))
}

// ---------------------------------------------------------------------------
// Hilbert-Schmidt inner product and cosine
// ---------------------------------------------------------------------------

/// Hilbert-Schmidt inner product `tr(A^* B)`, conjugate-linear in `A`.
pub fn hs_inner(a: &CMat, b: &CMat) -> Result<Complex64> {
    if a.shape() != b.shape() {
        return Err(Error::dimension(format!(
            "hs_inner: {}x{} vs {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    require_square(a, "hs_inner")?;
    Ok((a.adjoint() * b).trace())
}

/// Hilbert-Schmidt norm `sqrt(tr(A^* A))`; equals the Schatten-2 norm.
pub fn hs_norm(a: &CMat) -> f64 {
    fro(a)
}

/// `cos(u, v) = <u, v> / (||u|| ||v||)` with the Hermitian inner product.
pub fn cosine(u: &CVec, v: &CVec) -> Result<Complex64> {
    if u.len() != v.len() {
        return Err(Error::dimension(format!(
            "cosine: length {} vs {}",
            u.len(),
            v.len()
        )));
    }
    let nu = u.norm();
    let nv = v.norm();
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::domain("cosine: zero vector"));
    }
    Ok(u.dotc(v) / c(nu * nv, 0.0))
}

// ---------------------------------------------------------------------------
// Factorizations
// ---------------------------------------------------------------------------

/// Eigendecomposition of a self-adjoint matrix: `A = Q diag(λ) Q^*` with
/// eigenvalues ascending and eigenvectors in the columns of the unitary `Q`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose k-th column is the eigenvector for
    /// `eigenvalues[k]`.
    pub eigenvectors: CMat,
}

impl HermitianEigen {
    /// Rebuild `Q diag(λ) Q^*`.
    pub fn reconstruct(&self) -> CMat {
        let q = &self.eigenvectors;
        q * diag_re(&self.eigenvalues) * q.adjoint()
    }
}

/// Eigendecomposition of a self-adjoint matrix.
///
/// Rejects inputs whose hermiticity defect exceeds [`HERMITIAN_TOL`]
/// (relative). The result satisfies
/// `||Q diag(λ) Q^* - A||_2 <= 1e-9 * max(1, ||A||_2)` and
/// `||Q^* Q - I||_2 <= 1e-10 * sqrt(N)`.
pub fn hermitian_eig(a: &CMat) -> Result<HermitianEigen> {
    require_square(a, "hermitian_eig")?;
    let defect = hermiticity_defect(a);
    if defect > HERMITIAN_TOL {
        return Err(Error::precondition(format!(
            "hermitian_eig: input not self-adjoint, relative defect {defect:.3e} exceeds {HERMITIAN_TOL:.0e}"
        )));
    }
    // Work on the exactly-Hermitian average so the backend sees a clean input.
    let sym = (a + a.adjoint()).scale(0.5);
    let eig = nalgebra::SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = CMat::from_columns(
        &order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).clone_owned())
            .collect::<Vec<_>>(),
    );
    let out = HermitianEigen {
        eigenvalues,
        eigenvectors,
    };
    let residual = fro(&(out.reconstruct() - a));
    let scale = f64::max(1.0, hs_norm(a));
    if residual > FACTOR_TOL * scale {
        return Err(Error::validation(format!(
            "hermitian_eig: reconstruction residual {residual:.3e} exceeds {FACTOR_TOL:.0e} * {scale:.3e}"
        )));
    }
    Ok(out)
}

/// Singular value decomposition `A = U diag(σ) V^*` with `σ` descending.
#[derive(Debug, Clone)]
pub struct Svd {
    /// Columns are left singular vectors (orthonormal).
    pub left: CMat,
    /// Singular values, non-negative, descending.
    pub singulars: Vec<f64>,
    /// Columns are right singular vectors (orthonormal).
    pub right: CMat,
}

impl Svd {
    pub fn reconstruct(&self) -> CMat {
        let k = self.singulars.len();
        let mut s = CMat::zeros(k, k);
        for i in 0..k {
            s[(i, i)] = c(self.singulars[i], 0.0);
        }
        &self.left * s * self.right.adjoint()
    }

    /// Largest singular value (zero for an empty spectrum).
    pub fn top(&self) -> f64 {
        self.singulars.first().copied().unwrap_or(0.0)
    }

    /// Singular values strictly above `RANK_TOL * σ_max`.
    pub fn nonzero_singulars(&self) -> Vec<f64> {
        let cutoff = RANK_TOL * self.top();
        self.singulars
            .iter()
            .copied()
            .filter(|&s| s > cutoff)
            .collect()
    }
}

/// Full SVD with validated reconstruction and orthonormal factors.
pub fn svd(a: &CMat) -> Result<Svd> {
    if !all_finite(a) {
        return Err(Error::validation("svd: non-finite entries"));
    }
    let decomp = nalgebra::SVD::new(a.clone(), true, true);
    let u = decomp.u.expect("svd: left factor requested");
    let v_t = decomp.v_t.expect("svd: right factor requested");
    let mut order: Vec<usize> = (0..decomp.singular_values.len()).collect();
    order.sort_by(|&i, &j| {
        decomp.singular_values[j]
            .partial_cmp(&decomp.singular_values[i])
            .unwrap()
    });
    let singulars: Vec<f64> = order.iter().map(|&i| decomp.singular_values[i]).collect();
    let left = CMat::from_columns(
        &order
            .iter()
            .map(|&i| u.column(i).clone_owned())
            .collect::<Vec<_>>(),
    );
    let right_full = v_t.adjoint();
    let right = CMat::from_columns(
        &order
            .iter()
            .map(|&i| right_full.column(i).clone_owned())
            .collect::<Vec<_>>(),
    );
    let out = Svd {
        left,
        singulars,
        right,
    };
    let residual = fro(&(out.reconstruct() - a));
    let scale = f64::max(1.0, hs_norm(a));
    if residual > FACTOR_TOL * scale {
        return Err(Error::validation(format!(
            "svd: reconstruction residual {residual:.3e} exceeds {FACTOR_TOL:.0e} * {scale:.3e}"
        )));
    }
    Ok(out)
}

/// Singular values of `a`, descending.
pub fn singular_values(a: &CMat) -> Result<Vec<f64>> {
    Ok(svd(a)?.singulars)
}

// ---------------------------------------------------------------------------
// Schatten norms and heights
// ---------------------------------------------------------------------------

/// Which Schatten (or vector lp) norm index to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PNorm {
    One,
    Two,
    Inf,
}

impl std::fmt::Display for PNorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PNorm::One => write!(f, "1"),
            PNorm::Two => write!(f, "2"),
            PNorm::Inf => write!(f, "inf"),
        }
    }
}

/// Schatten-p norm: the lp norm of the singular value vector.
/// p=1 trace norm, p=2 Hilbert-Schmidt, p=inf spectral norm.
pub fn schatten_norm(a: &CMat, p: PNorm) -> Result<f64> {
    require_square(a, "schatten_norm")?;
    if !all_finite(a) {
        return Err(Error::validation("schatten_norm: non-finite entries"));
    }
    match p {
        // The 2-norm never needs the SVD.
        PNorm::Two => Ok(hs_norm(a)),
        PNorm::One => Ok(singular_values(a)?.iter().sum()),
        PNorm::Inf => Ok(singular_values(a)?.first().copied().unwrap_or(0.0)),
    }
}

/// lp norm of a complex vector.
pub fn vector_norm(z: &CVec, p: PNorm) -> f64 {
    match p {
        PNorm::One => z.iter().map(|x| x.norm()).sum(),
        PNorm::Two => z.norm(),
        PNorm::Inf => z.iter().map(|x| x.norm()).fold(0.0, f64::max),
    }
}

/// Schatten height `sqrt(||A||_1 ||A||_inf) / ||A||_2`, always >= 1 for
/// nonzero `A`, equal to 1 exactly on scaled partial isometries
/// (in particular on every orthogonal projection).
pub fn schatten_height(a: &CMat) -> Result<f64> {
    require_square(a, "schatten_height")?;
    let sv = singular_values(a)?;
    let n1: f64 = sv.iter().sum();
    let ninf = sv.first().copied().unwrap_or(0.0);
    let n2 = hs_norm(a);
    if n2 == 0.0 {
        return Err(Error::domain("schatten_height: zero matrix"));
    }
    Ok((n1 * ninf).sqrt() / n2)
}

/// Height of a nonzero vector, `sqrt(||z||_1 ||z||_inf) / ||z||_2`.
/// A column vector's lp->lp induced norms are its lp norms, so this is the
/// matrix height specialized to N x 1.
pub fn vector_height(z: &CVec) -> Result<f64> {
    let n2 = z.norm();
    if n2 == 0.0 {
        return Err(Error::domain("vector_height: zero vector"));
    }
    let n1 = vector_norm(z, PNorm::One);
    let ninf = vector_norm(z, PNorm::Inf);
    Ok((n1 * ninf).sqrt() / n2)
}

/// Logarithmic diameter of a nonzero vector: largest over smallest nonzero
/// modulus. Zero entries are ignored.
pub fn log_diameter_vector(z: &CVec) -> Result<f64> {
    let max = z.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::domain("log_diameter_vector: zero vector"));
    }
    let cutoff = RANK_TOL * max;
    let min = z
        .iter()
        .map(|x| x.norm())
        .filter(|&m| m > cutoff)
        .fold(f64::INFINITY, f64::min);
    Ok(max / min)
}

/// Logarithmic diameter of a nonzero matrix: the ratio of its largest to
/// smallest nonzero singular value, i.e. `sqrt(λ_max / λ_min)` over the
/// nonzero eigenvalues of `A^* A`.
pub fn log_diameter_matrix(a: &CMat) -> Result<f64> {
    let sv = svd(a)?;
    let nz = sv.nonzero_singulars();
    match (nz.first(), nz.last()) {
        (Some(&hi), Some(&lo)) => Ok(hi / lo),
        _ => Err(Error::domain("log_diameter_matrix: zero matrix")),
    }
}

/// lp -> lp induced operator norm of a matrix acting on column vectors.
/// p=1 is the maximum absolute column sum, p=inf the maximum absolute row
/// sum, p=2 the largest singular value.
pub fn lp_operator_norm(a: &CMat, p: PNorm) -> Result<f64> {
    match p {
        PNorm::One => Ok((0..a.ncols())
            .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)),
        PNorm::Inf => Ok((0..a.nrows())
            .map(|i| a.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)),
        PNorm::Two => Ok(singular_values(a)?.first().copied().unwrap_or(0.0)),
    }
}

/// Height of a nonzero matrix in the lp-induced sense:
/// `sqrt(||A||_{l1->l1} ||A||_{linf->linf}) / ||A||_{l2->l2}`.
pub fn lp_height(a: &CMat) -> Result<f64> {
    let n2 = lp_operator_norm(a, PNorm::Two)?;
    if n2 == 0.0 {
        return Err(Error::domain("lp_height: zero matrix"));
    }
    let n1 = lp_operator_norm(a, PNorm::One)?;
    let ninf = lp_operator_norm(a, PNorm::Inf)?;
    Ok((n1 * ninf).sqrt() / n2)
}

// ---------------------------------------------------------------------------
// Toeplitz split
// ---------------------------------------------------------------------------

/// Unique decomposition `X = A + iB` with `A`, `B` self-adjoint:
/// `A = (X + X^*)/2`, `B = (X - X^*)/(2i)`. Satisfies the Pythagoras
/// identity `||X||_2^2 = ||A||_2^2 + ||B||_2^2`.
pub fn toeplitz_split(x: &CMat) -> Result<(CMat, CMat)> {
    require_square(x, "toeplitz_split")?;
    let xs = x.adjoint();
    let a = (x + &xs).scale(0.5);
    let b = (x - &xs).map(|z| z * c(0.0, -0.5));
    Ok((a, b))
}

// ---------------------------------------------------------------------------
// Vectorization (row-major) and Kronecker products
// ---------------------------------------------------------------------------

/// Row-major vectorization: entry (i, j) lands at index i*cols + j.
/// Under this convention `vec(A X B) = (A ⊗ B^T) vec(X)`, so the
/// superoperator of `x -> u x u^*` is literally `u ⊗ conj(u)`.
pub fn vec_rm(a: &CMat) -> CVec {
    let (r, cl) = a.shape();
    CVec::from_fn(r * cl, |k, _| a[(k / cl, k % cl)])
}

/// Inverse of [`vec_rm`] for square matrices of side `n`.
pub fn unvec_rm(v: &CVec, n: usize) -> Result<CMat> {
    if v.len() != n * n {
        return Err(Error::dimension(format!(
            "unvec_rm: length {} is not {n}^2",
            v.len()
        )));
    }
    Ok(CMat::from_fn(n, n, |i, j| v[i * n + j]))
}

/// Kronecker product.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn m2(a: [[(f64, f64); 2]; 2]) -> CMat {
        CMat::from_fn(2, 2, |i, j| c(a[i][j].0, a[i][j].1))
    }

    #[test]
    fn schatten_norms_of_diag_3_4() {
        let a = diag_re(&[3.0, 4.0]);
        assert_relative_eq!(schatten_norm(&a, PNorm::One).unwrap(), 7.0, epsilon = 1e-12);
        assert_relative_eq!(schatten_norm(&a, PNorm::Two).unwrap(), 5.0, epsilon = 1e-12);
        assert_relative_eq!(schatten_norm(&a, PNorm::Inf).unwrap(), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn schatten_norm_rejects_non_square() {
        let a = CMat::zeros(2, 3);
        assert!(matches!(
            schatten_norm(&a, PNorm::One),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn hs_inner_basics() {
        let id = identity(2);
        assert_relative_eq!(hs_inner(&id, &id).unwrap().re, 2.0, epsilon = 1e-12);
        let p1 = diag_re(&[1.0, 0.0]);
        let p2 = diag_re(&[0.0, 1.0]);
        assert_relative_eq!(hs_inner(&p1, &p2).unwrap().norm(), 0.0, epsilon = 1e-12);
        let e01 = m2([[(0.0, 0.0), (1.0, 0.0)], [(0.0, 0.0), (0.0, 0.0)]]);
        assert_relative_eq!(hs_inner(&e01, &e01).unwrap().re, 1.0, epsilon = 1e-12);
        // <A, A> = ||A||_2^2 and conjugate symmetry.
        let a = m2([[(1.0, 2.0), (0.5, -1.0)], [(0.0, 3.0), (-2.0, 0.25)]]);
        let b = m2([[(0.2, -0.7), (1.5, 0.0)], [(2.0, 1.0), (0.0, -1.0)]]);
        let aa = hs_inner(&a, &a).unwrap();
        assert_relative_eq!(aa.im, 0.0, epsilon = 1e-12);
        assert_relative_eq!(aa.re, hs_norm(&a).powi(2), epsilon = 1e-12);
        let ab = hs_inner(&a, &b).unwrap();
        let ba = hs_inner(&b, &a).unwrap();
        assert_relative_eq!(ab.re, ba.re, epsilon = 1e-12);
        assert_relative_eq!(ab.im, -ba.im, epsilon = 1e-12);
    }

    #[test]
    fn hermitian_eig_diag_and_pauli_x() {
        let e = hermitian_eig(&diag_re(&[2.0, -1.0])).unwrap();
        assert_relative_eq!(e.eigenvalues[0], -1.0, epsilon = 1e-12);
        assert_relative_eq!(e.eigenvalues[1], 2.0, epsilon = 1e-12);
        let x = m2([[(0.0, 0.0), (1.0, 0.0)], [(1.0, 0.0), (0.0, 0.0)]]);
        let e = hermitian_eig(&x).unwrap();
        assert_relative_eq!(e.eigenvalues[0], -1.0, epsilon = 1e-10);
        assert_relative_eq!(e.eigenvalues[1], 1.0, epsilon = 1e-10);
    }

    #[test]
    fn hermitian_eig_rejects_non_hermitian() {
        let a = m2([[(0.0, 0.0), (1.0, 0.0)], [(0.0, 0.0), (0.0, 0.0)]]);
        let err = hermitian_eig(&a).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("1e-10"), "message names the tolerance: {msg}");
    }

    #[test]
    fn hermitian_eig_random_residual() {
        // Seeded random 6x6 Hermitian; the residual check inside the
        // constructor is the oracle.
        let g = crate::generators::haar_unitary(6, crate::generators::Seed(7)).unwrap();
        let d = diag_re(&[0.3, -1.2, 2.5, 0.0, 4.1, -0.7]);
        let a = &g * d * g.adjoint();
        let e = hermitian_eig(&a).unwrap();
        let residual = hs_norm(&(e.reconstruct() - &a));
        assert!(residual <= 1e-9 * f64::max(1.0, hs_norm(&a)));
        assert!(orthonormality_defect(&e.eigenvectors) <= 1e-10 * 6.0_f64.sqrt());
    }

    #[test]
    fn svd_diag_and_unitary() {
        let s = svd(&diag_re(&[0.0, 5.0])).unwrap();
        assert_relative_eq!(s.singulars[0], 5.0, epsilon = 1e-12);
        assert_relative_eq!(s.singulars[1], 0.0, epsilon = 1e-12);
        let u = crate::generators::haar_unitary(4, crate::generators::Seed(1)).unwrap();
        for sv in singular_values(&u).unwrap() {
            assert_relative_eq!(sv, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn svd_adjoint_same_singulars() {
        let u = crate::generators::haar_unitary(5, crate::generators::Seed(3)).unwrap();
        let v = crate::generators::haar_unitary(5, crate::generators::Seed(103)).unwrap();
        let a = &u * diag_re(&[2.0, 0.5, 1.25, 0.0, 3.0]) * v.adjoint();
        let s1 = singular_values(&a).unwrap();
        let s2 = singular_values(&a.adjoint()).unwrap();
        for (x, y) in s1.iter().zip(s2.iter()) {
            assert_relative_eq!(x, y, epsilon = 1e-10);
        }
    }

    #[test]
    fn heights_and_diameters() {
        // identity and projections have height exactly 1
        assert_relative_eq!(schatten_height(&identity(5)).unwrap(), 1.0, epsilon = 1e-12);
        let p = diag_re(&[1.0, 1.0, 0.0]);
        assert_relative_eq!(schatten_height(&p).unwrap(), 1.0, epsilon = 1e-12);
        // diag(5, 4, -1): sqrt(10 * 5) / sqrt(42)
        let a = diag_re(&[5.0, 4.0, -1.0]);
        let expect = (10.0_f64 * 5.0).sqrt() / 42.0_f64.sqrt();
        assert_relative_eq!(schatten_height(&a).unwrap(), expect, epsilon = 1e-12);
        let z = CVec::from_vec(vec![c(5.0, 0.0), c(4.0, 0.0), c(-1.0, 0.0)]);
        assert_relative_eq!(vector_height(&z).unwrap(), expect, epsilon = 1e-12);
        // all-ones and basis vectors have height 1
        let ones = CVec::from_element(7, c(1.0, 0.0));
        assert_relative_eq!(vector_height(&ones).unwrap(), 1.0, epsilon = 1e-12);
        let mut e1 = CVec::zeros(4);
        e1[0] = c(1.0, 0.0);
        assert_relative_eq!(vector_height(&e1).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn vector_height_phase_and_scale_invariant() {
        let z = CVec::from_vec(vec![c(5.0, 0.0), c(4.0, 0.0), c(-1.0, 0.0)]);
        let w = CVec::from_fn(3, |i, _| z[i] * c(0.0, 1.0) * c(2.5, 0.0));
        assert_relative_eq!(
            vector_height(&z).unwrap(),
            vector_height(&w).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn log_diameters() {
        let ones = CVec::from_element(3, c(1.0, 0.0));
        assert_relative_eq!(log_diameter_vector(&ones).unwrap(), 1.0, epsilon = 1e-12);
        let z = CVec::from_vec(vec![c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_relative_eq!(log_diameter_vector(&z).unwrap(), 2.0, epsilon = 1e-12);
        let z = CVec::from_vec(vec![c(-6.0, 0.0), c(0.0, 3.0), c(2.0, 0.0)]);
        assert_relative_eq!(log_diameter_vector(&z).unwrap(), 3.0, epsilon = 1e-12);
        let u = crate::generators::haar_unitary(3, crate::generators::Seed(2)).unwrap();
        assert_relative_eq!(log_diameter_matrix(&u).unwrap(), 1.0, epsilon = 1e-9);
        let d = diag_re(&[2.0, 0.0, 1.0]);
        assert_relative_eq!(log_diameter_matrix(&d).unwrap(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn log_diameter_unitary_invariance() {
        let u = crate::generators::haar_unitary(3, crate::generators::Seed(11)).unwrap();
        let v = crate::generators::haar_unitary(3, crate::generators::Seed(111)).unwrap();
        let a = &u * diag_re(&[3.0, 1.0, 2.0]) * &v;
        assert_relative_eq!(log_diameter_matrix(&a).unwrap(), 3.0, epsilon = 1e-9);
    }

    #[test]
    fn toeplitz_split_cases() {
        // self-adjoint input -> (X, 0)
        let h = m2([[(1.0, 0.0), (0.0, -2.0)], [(0.0, 2.0), (3.0, 0.0)]]);
        let (a, b) = toeplitz_split(&h).unwrap();
        assert!(hs_norm(&(a.clone() - &h)) < 1e-12);
        assert!(hs_norm(&b) < 1e-12);
        // X = iH -> (0, H)
        let ih = h.map(|z| z * c(0.0, 1.0));
        let (a, b) = toeplitz_split(&ih).unwrap();
        assert!(hs_norm(&a) < 1e-12);
        assert!(hs_norm(&(b.clone() - &h)) < 1e-12);
        // reconstruction is the oracle for a generic matrix
        let x = m2([[(1.0, 0.0), (2.0, 0.0)], [(0.0, 0.0), (1.0, 0.0)]]);
        let (a, b) = toeplitz_split(&x).unwrap();
        assert!(hermiticity_defect(&a) <= 1e-12);
        assert!(hermiticity_defect(&b) <= 1e-12);
        let rebuilt = &a + b.map(|z| z * c(0.0, 1.0));
        assert!(hs_norm(&(rebuilt - &x)) < 1e-12);
    }

    #[test]
    fn cosine_cases() {
        let u = CVec::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
        assert_relative_eq!(cosine(&u, &u).unwrap().re, 1.0, epsilon = 1e-12);
        let v = CVec::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_relative_eq!(cosine(&u, &v).unwrap().norm(), 0.0, epsilon = 1e-12);
        let a = CVec::from_vec(vec![c(5.0, 0.0), c(4.0, 0.0), c(-1.0, 0.0)]);
        let b = CVec::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let expect = 9.0 / (42.0_f64.sqrt() * 2.0_f64.sqrt());
        assert_relative_eq!(cosine(&a, &b).unwrap().re, expect, epsilon = 1e-12);
        assert!(matches!(
            cosine(&CVec::zeros(2), &u),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            cosine(&u, &CVec::zeros(3)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn vec_rm_roundtrip_and_composition() {
        let x = m2([[(1.0, 2.0), (3.0, -1.0)], [(0.0, 0.5), (-2.0, 0.0)]]);
        let v = vec_rm(&x);
        assert_relative_eq!(v[1].re, 3.0, epsilon = 1e-15); // entry (0,1)
        let back = unvec_rm(&v, 2).unwrap();
        assert!(hs_norm(&(back - &x)) < 1e-15);
        // vec(A X B) = (A kron B^T) vec(X)
        let a = m2([[(0.3, 0.1), (1.0, 0.0)], [(0.0, -1.0), (0.7, 0.2)]]);
        let b = m2([[(2.0, 0.0), (0.0, 1.0)], [(1.0, 1.0), (0.5, 0.0)]]);
        let lhs = vec_rm(&(&a * &x * &b));
        let rhs = kron(&a, &b.transpose()) * vec_rm(&x);
        assert!((lhs - rhs).norm() < 1e-12);
    }
}
