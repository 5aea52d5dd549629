//! Spectral-expansion analysis of quantum channels.
//!
//! A quantum channel here is always an average of unitary conjugations,
//! `T(x) = (1/d) * sum_j u_j x u_j^*`. The crate computes its reduced
//! spectral radius, Schatten-induced operator norms and heights, verifies
//! the mixing bound `|<P1, T(P2)> - tr(P1)tr(P2)/N| <= rho * sqrt(tr tr)`
//! for projection pairs, and constructively extracts projection pairs that
//! realize the converse bound `rho / g(1/rho)` with fully explicit
//! constants. A parallel pipeline does the same for classical d-regular
//! graphs and vertex subsets.
//!
//! Modules:
//! - [`linalg`]: dense complex matrices, factorizations, Schatten norms,
//!   heights, logarithmic diameters.
//! - [`channel`]: the channel type, its superoperator, reduced spectral
//!   radius, induced norms, conjugated vector maps.
//! - [`generators`]: seeded Haar/Weyl/Cayley channel constructors and
//!   regular-graph constructors.
//! - [`witness`]: the constructive converse pipeline and its bound
//!   functions.
//! - [`verify`]: discrepancy checkers and the randomized inequality suite.
//! - [`io`]: JSON file formats for channels, graphs, and reports.

pub mod channel;
pub mod error;
pub mod generators;
pub mod io;
pub mod linalg;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type Complex64 = num_complex::Complex<f64>;

/// Dense complex matrix, the universal carrier for states, unitaries, and
/// projections.
pub type CMat = nalgebra::DMatrix<Complex64>;

/// Dense complex column vector.
pub type CVec = nalgebra::DVector<Complex64>;
