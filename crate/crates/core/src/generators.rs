//! Seeded constructors for test objects: Haar-random unitaries and channels,
//! Weyl (discrete displacement) channels, cyclic Cayley lifts, and classical
//! d-regular graphs with their Markov spectra.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::linalg::c;
use crate::{CMat, CVec, Complex64};

// ---------------------------------------------------------------------------
// Seeds
// ---------------------------------------------------------------------------

/// 64-bit seed with a deterministic derivation tree. A fixed seed produces
/// bit-identical objects on every platform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

impl Seed {
    /// Derive the child seed for branch `index` (splitmix64 step).
    pub fn child(self, index: u64) -> Seed {
        let mut z = self
            .0
            .wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index.wrapping_add(1)));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        Seed(z ^ (z >> 31))
    }

    fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

/// Vector of iid standard complex Gaussians (real and imaginary parts
/// N(0, 1/2) so the modulus-squared has unit mean).
pub fn complex_gaussian_vector(n: usize, seed: Seed) -> CVec {
    let mut rng = seed.rng();
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    CVec::from_fn(n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re * inv, im * inv)
    })
}

/// Square matrix of iid standard complex Gaussians, row-major fill order.
pub fn complex_gaussian_matrix(n: usize, seed: Seed) -> CMat {
    let mut rng = seed.rng();
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            m[(i, j)] = c(re * inv, im * inv);
        }
    }
    m
}

// ---------------------------------------------------------------------------
// Channel ensembles
// ---------------------------------------------------------------------------

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the R
/// diagonal's phases absorbed into Q.
pub fn haar_unitary(n: usize, seed: Seed) -> Result<CMat> {
    if n == 0 {
        return Err(Error::domain("haar_unitary: dimension must be positive"));
    }
    let g = complex_gaussian_matrix(n, seed);
    let qr = nalgebra::QR::new(g);
    let q = qr.q();
    let r = qr.r();
    let mut phases = CVec::zeros(n);
    for i in 0..n {
        let rii = r[(i, i)];
        phases[i] = if rii.norm() == 0.0 {
            c(1.0, 0.0)
        } else {
            rii / c(rii.norm(), 0.0)
        };
    }
    let mut u = q;
    for j in 0..n {
        let p = phases[j];
        for i in 0..n {
            u[(i, j)] *= p;
        }
    }
    Ok(u)
}

/// Channel of `d` independent Haar unitaries with per-member seeds derived
/// from `(seed, j)`.
pub fn random_channel(n: usize, d: usize, seed: Seed) -> Result<Channel> {
    if n == 0 || d == 0 {
        return Err(Error::domain("random_channel: sizes must be positive"));
    }
    let unitaries = (0..d)
        .map(|j| haar_unitary(n, seed.child(j as u64)))
        .collect::<Result<Vec<_>>>()?;
    Channel::new(n, unitaries)
}

/// Cyclic shift `X e_k = e_{k+1 mod N}`.
fn shift_matrix(n: usize) -> CMat {
    CMat::from_fn(n, n, |i, j| {
        if i == (j + 1) % n {
            c(1.0, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// Clock matrix `Z = diag(ω^k)`, `ω = exp(2πi/N)`.
fn clock_matrix(n: usize) -> CMat {
    CMat::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * i as f64 / n as f64)
        } else {
            c(0.0, 0.0)
        }
    })
}

/// The complete displacement channel on N dimensions: all `N^2` unitaries
/// `X^a Z^b`. Its action is the perfect mixer `η -> tr(η) I / N`, so its
/// reduced spectral radius is 0.
pub fn weyl_channel(n: usize) -> Result<Channel> {
    if n < 2 {
        return Err(Error::domain("weyl_channel: dimension must be >= 2"));
    }
    let x = shift_matrix(n);
    let z = clock_matrix(n);
    let mut unitaries = Vec::with_capacity(n * n);
    let mut xa = crate::linalg::identity(n);
    for _ in 0..n {
        let mut w = xa.clone();
        for _ in 0..n {
            unitaries.push(w.clone());
            w *= &z;
        }
        xa = &x * xa;
    }
    Channel::new(n, unitaries)
}

/// Cayley lift of a circulant graph on Z_N: one cyclic-shift power per
/// generator. The generators must be symmetric (closed under negation
/// mod N) and must not contain 0. The channel's action on diagonal
/// matrices reproduces the classical Markov operator of the circulant.
pub fn cyclic_cayley_channel(n: usize, gens: &[usize]) -> Result<Channel> {
    if n < 2 {
        return Err(Error::domain(
            "cyclic_cayley_channel: dimension must be >= 2",
        ));
    }
    if gens.is_empty() {
        return Err(Error::precondition("cyclic_cayley_channel: empty generator set"));
    }
    let mut residues: Vec<usize> = gens.iter().map(|&g| g % n).collect();
    residues.sort_unstable();
    residues.dedup();
    if residues.len() != gens.len() {
        return Err(Error::precondition(
            "cyclic_cayley_channel: repeated generators",
        ));
    }
    if residues.contains(&0) {
        return Err(Error::precondition(
            "cyclic_cayley_channel: generator 0 creates loops",
        ));
    }
    for &g in &residues {
        if !residues.contains(&((n - g) % n)) {
            return Err(Error::precondition(format!(
                "cyclic_cayley_channel: generator set not symmetric, missing -{g} mod {n}"
            )));
        }
    }
    let p = shift_matrix(n);
    let mut unitaries = Vec::with_capacity(residues.len());
    for &g in &residues {
        let mut m = crate::linalg::identity(n);
        for _ in 0..g {
            m = &p * m;
        }
        unitaries.push(m);
    }
    Channel::new(n, unitaries)
}

// ---------------------------------------------------------------------------
// Regular graphs
// ---------------------------------------------------------------------------

/// Simple d-regular graph with dense adjacency.
#[derive(Debug, Clone)]
pub struct RegularGraph {
    n: usize,
    d: usize,
    adjacency: Vec<Vec<bool>>,
}

impl RegularGraph {
    fn from_adjacency(adjacency: Vec<Vec<bool>>) -> Result<Self> {
        let n = adjacency.len();
        if n < 3 {
            return Err(Error::domain("graph: need at least 3 vertices"));
        }
        let mut degree = None;
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != n {
                return Err(Error::validation(format!("graph: row {i} has wrong length")));
            }
            if row[i] {
                return Err(Error::validation(format!("graph: loop at vertex {i}")));
            }
            for j in 0..n {
                if adjacency[i][j] != adjacency[j][i] {
                    return Err(Error::validation(format!(
                        "graph: asymmetry between vertices {i} and {j}"
                    )));
                }
            }
            let deg = row.iter().filter(|&&b| b).count();
            match degree {
                None => degree = Some(deg),
                Some(d) if d != deg => {
                    return Err(Error::validation(format!(
                        "graph: vertex {i} has degree {deg}, expected {d}"
                    )))
                }
                _ => {}
            }
        }
        let d = degree.unwrap_or(0);
        if d == 0 {
            return Err(Error::validation("graph: degree 0"));
        }
        Ok(RegularGraph { n, d, adjacency })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.adjacency[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Markov operator `A/d` as a dense real matrix.
    pub fn markov(&self) -> nalgebra::DMatrix<f64> {
        let inv = 1.0 / self.d as f64;
        nalgebra::DMatrix::from_fn(self.n, self.n, |i, j| {
            if self.adjacency[i][j] {
                inv
            } else {
                0.0
            }
        })
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in 0..self.n {
                if self.adjacency[v][w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![-1i8; self.n];
        for start in 0..self.n {
            if color[start] >= 0 {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in 0..self.n {
                    if !self.adjacency[v][w] {
                        continue;
                    }
                    if color[w] < 0 {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Complete graph K_n (degree n-1).
pub fn complete_graph(n: usize) -> Result<RegularGraph> {
    if n < 3 {
        return Err(Error::domain("complete_graph: need n >= 3"));
    }
    let adjacency = (0..n).map(|i| (0..n).map(|j| i != j).collect()).collect();
    RegularGraph::from_adjacency(adjacency)
}

/// Cycle graph C_n (degree 2, circulant with offsets ±1).
pub fn cycle_graph(n: usize) -> Result<RegularGraph> {
    if n < 3 {
        return Err(Error::domain("cycle_graph: need n >= 3"));
    }
    let adjacency = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| j == (i + 1) % n || (j + 1) % n == i)
                .collect()
        })
        .collect();
    RegularGraph::from_adjacency(adjacency)
}

/// Build and validate a d-regular simple graph from an undirected edge list.
pub fn graph_from_edges(n: usize, edges: &[(usize, usize)]) -> Result<RegularGraph> {
    if n < 3 {
        return Err(Error::domain("graph_from_edges: need n >= 3"));
    }
    let mut adjacency = vec![vec![false; n]; n];
    for &(i, j) in edges {
        if i >= n || j >= n {
            return Err(Error::validation(format!(
                "graph_from_edges: edge ({i}, {j}) out of range for n = {n}"
            )));
        }
        if i == j {
            return Err(Error::validation(format!(
                "graph_from_edges: loop at vertex {i}"
            )));
        }
        if adjacency[i][j] {
            return Err(Error::validation(format!(
                "graph_from_edges: duplicate edge ({i}, {j})"
            )));
        }
        adjacency[i][j] = true;
        adjacency[j][i] = true;
    }
    RegularGraph::from_adjacency(adjacency)
}

/// Pairing-model d-regular graph: pair up n*d stubs uniformly, rejecting
/// samples with loops or multi-edges. No uniformity guarantee is claimed.
pub fn random_regular_graph(n: usize, d: usize, seed: Seed) -> Result<RegularGraph> {
    if n < 3 || d == 0 || d >= n {
        return Err(Error::domain(
            "random_regular_graph: need 3 <= n and 0 < d < n",
        ));
    }
    if n * d % 2 != 0 {
        return Err(Error::domain("random_regular_graph: n*d must be even"));
    }
    for attempt in 0..10_000u64 {
        let mut rng = seed.child(attempt).rng();
        let mut stubs: Vec<usize> = (0..n * d).map(|s| s / d).collect();
        // Fisher-Yates
        for i in (1..stubs.len()).rev() {
            let j = rng.random_range(0..=i);
            stubs.swap(i, j);
        }
        let mut adjacency = vec![vec![false; n]; n];
        let mut ok = true;
        for pair in stubs.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            if a == b || adjacency[a][b] {
                ok = false;
                break;
            }
            adjacency[a][b] = true;
            adjacency[b][a] = true;
        }
        if ok {
            return RegularGraph::from_adjacency(adjacency);
        }
    }
    Err(Error::Resource(
        "random_regular_graph: rejection sampling failed".into(),
    ))
}

/// Reduced spectral radius of a connected regular graph: the largest
/// absolute eigenvalue of `A/d` after removing one copy of the eigenvalue 1,
/// i.e. `max(|λ_2|, |λ_n|)`.
pub fn graph_rho(g: &RegularGraph) -> Result<f64> {
    if !g.is_connected() {
        return Err(Error::precondition("graph_rho: graph must be connected"));
    }
    let eig = nalgebra::SymmetricEigen::new(g.markov());
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    // vals[0] is the Perron eigenvalue 1 (simple, by connectedness).
    Ok(vals[1..]
        .iter()
        .map(|l| l.abs())
        .fold(0.0, f64::max))
}

/// Ordered-pair edge count `e(S1, S2) = |{(x, y) in S1 x S2 : xy in E}|`.
/// Edges inside the intersection are counted twice.
pub fn edge_count(g: &RegularGraph, s1: &[usize], s2: &[usize]) -> Result<usize> {
    for &v in s1.iter().chain(s2.iter()) {
        if v >= g.n() {
            return Err(Error::domain(format!(
                "edge_count: vertex {v} out of range for n = {}",
                g.n()
            )));
        }
    }
    let mut count = 0;
    for &x in s1 {
        for &y in s2 {
            if g.has_edge(x, y) {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::reduced_spectral_radius;
    use crate::linalg::{diag_re, hs_norm, identity};
    use approx::assert_relative_eq;

    #[test]
    fn haar_unitary_contracts() {
        let u = haar_unitary(1, Seed(1)).unwrap();
        assert_relative_eq!(u[(0, 0)].norm(), 1.0, epsilon = 1e-12);
        let u = haar_unitary(4, Seed(1)).unwrap();
        let defect = hs_norm(&(&u * u.adjoint() - identity(4)));
        assert!(defect <= 1e-10 * 2.0);
    }

    #[test]
    fn haar_unitary_deterministic_distinct_seeds() {
        let a = haar_unitary(8, Seed(1)).unwrap();
        let b = haar_unitary(8, Seed(2)).unwrap();
        let a2 = haar_unitary(8, Seed(1)).unwrap();
        assert!(hs_norm(&(a.clone() - b)) > 1e-3);
        assert_eq!(a, a2);
    }

    #[test]
    fn random_channel_deterministic() {
        let t1 = random_channel(3, 2, Seed(5)).unwrap();
        let t2 = random_channel(3, 2, Seed(5)).unwrap();
        for (u, v) in t1.unitaries().iter().zip(t2.unitaries()) {
            assert_eq!(u, v);
        }
    }

    #[test]
    fn weyl_channel_is_perfect_mixer() {
        for n in 2..=4 {
            let t = weyl_channel(n).unwrap();
            assert_eq!(t.degree(), n * n);
            // twirl identity on matrix units
            for a in 0..n {
                for b in 0..n {
                    let mut unit = CMat::zeros(n, n);
                    unit[(a, b)] = c(1.0, 0.0);
                    let out = t.apply(&unit).unwrap();
                    let expect = crate::channel::e_map(&unit).unwrap();
                    assert!(hs_norm(&(out - expect)) < 1e-10);
                }
            }
            assert!(reduced_spectral_radius(&t).unwrap() < 1e-10);
        }
    }

    #[test]
    fn weyl_rejects_small_dim() {
        assert!(matches!(weyl_channel(1), Err(Error::Domain(_))));
    }

    #[test]
    fn cayley_channel_diagonal_restriction_is_walk() {
        let t = cyclic_cayley_channel(5, &[1, 4]).unwrap();
        assert_eq!(t.degree(), 2);
        let g = cycle_graph(5).unwrap();
        let markov = g.markov();
        // action on diag(f) equals diag(markov f)
        let f = [0.7, -0.2, 1.5, 0.0, 0.3];
        let out = t.apply(&diag_re(&f)).unwrap();
        let expect_vec = markov * nalgebra::DVector::from_row_slice(&f);
        let expect = diag_re(expect_vec.as_slice());
        assert!(hs_norm(&(out - expect)) < 1e-12);
        // unitality
        let out = t.apply(&identity(5)).unwrap();
        assert!(hs_norm(&(out - identity(5))) < 1e-12);
    }

    #[test]
    fn cayley_preconditions() {
        assert!(matches!(
            cyclic_cayley_channel(5, &[1, 2]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            cyclic_cayley_channel(5, &[0, 1, 4]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn graph_constructors() {
        let k4 = complete_graph(4).unwrap();
        assert_eq!(k4.degree(), 3);
        let c5 = cycle_graph(5).unwrap();
        assert_eq!(c5.degree(), 2);
        assert!(c5.has_edge(0, 1) && c5.has_edge(0, 4) && !c5.has_edge(0, 2));
        // irregular edge list rejected with the offending vertex named
        let err = graph_from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn graph_rho_fixtures() {
        assert_relative_eq!(
            graph_rho(&complete_graph(4).unwrap()).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-10
        );
        assert_relative_eq!(
            graph_rho(&cycle_graph(5).unwrap()).unwrap(),
            (std::f64::consts::PI / 5.0).cos(),
            epsilon = 1e-10
        );
        // bipartite C4 has -1 in the spectrum
        assert_relative_eq!(
            graph_rho(&cycle_graph(4).unwrap()).unwrap(),
            1.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn graph_rho_requires_connected() {
        // two disjoint triangles: 2-regular, disconnected
        let edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
        let g = graph_from_edges(6, &edges).unwrap();
        assert!(!g.is_connected());
        assert!(matches!(graph_rho(&g), Err(Error::Precondition(_))));
    }

    #[test]
    fn edge_count_cases() {
        let c5 = cycle_graph(5).unwrap();
        assert_eq!(edge_count(&c5, &[0], &[1, 4]).unwrap(), 2);
        let k4 = complete_graph(4).unwrap();
        assert_eq!(edge_count(&k4, &[0, 1], &[0, 1]).unwrap(), 2);
        let all = [0, 1, 2, 3];
        assert_eq!(edge_count(&k4, &all, &all).unwrap(), 4 * 3);
        assert!(matches!(
            edge_count(&k4, &[9], &[0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn pairing_model_generates_regular() {
        let g = random_regular_graph(8, 3, Seed(3)).unwrap();
        assert_eq!(g.degree(), 3);
        assert_eq!(g.n(), 8);
        let g2 = random_regular_graph(8, 3, Seed(3)).unwrap();
        assert_eq!(g.edges(), g2.edges());
    }

    #[test]
    fn bipartite_detection() {
        assert!(cycle_graph(4).unwrap().is_bipartite());
        assert!(!cycle_graph(5).unwrap().is_bipartite());
        assert!(!complete_graph(4).unwrap().is_bipartite());
    }

    #[test]
    fn cayley_z5_spectral_identity() {
        let t = cyclic_cayley_channel(5, &[1, 4]).unwrap();
        let g = cycle_graph(5).unwrap();
        let rho_q = reduced_spectral_radius(&t).unwrap();
        let rho_c = graph_rho(&g).unwrap();
        assert_relative_eq!(rho_q, rho_c, epsilon = 1e-8);
        assert_relative_eq!(rho_q, 0.8090169943749475, epsilon = 1e-6);
        assert_eq!(
            crate::channel::unit_eigen_multiplicity(&t).unwrap(),
            5
        );
    }
}
