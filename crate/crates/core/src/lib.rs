//! Exact symbolic kernel for commutants of Cartan subalgebras in the
//! symmetric and enveloping algebras of `sl(n)`/`gl(n)`.
//!
//! * [`liealg`]: structure constants for `gl(n)`, `sl(n)` and file-defined algebras.
//! * [`symalg`]: commutative polynomials, Berezin and canonical brackets,
//!   sphere constraint ideal.
//! * [`envalg`]: PBW normal forms in `U(g)`, commutators, symmetrization.
//! * [`commutant`]: weight-zero slices, kernels, generators and relations.
//! * [`racah`]: `R(n)` relations and the sphere-model realization.
//! * [`a3`]: the classical and quantum polynomial algebra `A3`.

pub mod a3;
pub mod commutant;
pub mod envalg;
pub mod error;
pub mod groebner;
pub mod liealg;
pub mod linalg;
pub mod racah;
pub mod rational;
pub mod report;
pub mod symalg;
mod text;

pub use error::{Error, Result};
pub use rational::Rational;
