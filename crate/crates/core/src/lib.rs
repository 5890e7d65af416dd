//! Numerical laboratory for KPZ-class one-point limit laws.
//!
//! The crate computes the Tracy-Widom GUE/GOE laws, the stationary
//! (Baik-Rains) law, and the barrier-crossover families along four
//! independent routes that cross-validate each other:
//!
//! * [`painleve`]: Hastings-McLeod solution of Painleve II and the
//!   closed-form CDFs built from it.
//! * [`airydist`]: Fredholm determinants of the Airy kernel and its
//!   reflected/tilted compositions.
//! * [`scattering`]: Brownian scattering operators for general barriers
//!   (square-root and parabolic crossover families, split barriers).
//! * [`lpp`]: geometric last-passage percolation Monte Carlo, whose
//!   rescaled samples converge to the same laws.
//!
//! Supporting layers: [`specfun`] (Airy, Gamma, erfc, 1F1, Upsilon),
//! [`quad`] (Gauss-Legendre rules and determinant engine), [`barrier`]
//! (first-passage densities and the Monte Carlo oracle), [`rng`]
//! (counter-based reproducible substreams).

pub mod airydist;
pub mod barrier;
pub mod interp;
pub mod lpp;
pub mod painleve;
pub mod quad;
pub mod report;
pub mod rng;
pub mod scattering;
pub mod specfun;
