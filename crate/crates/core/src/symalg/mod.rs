//! Symmetric algebra `S(g)` with the Berezin bracket, and the canonical
//! phase-space ring with its Poisson bracket and sphere constraint ideal.

mod bracket;
mod ideal;
mod poly;

pub use bracket::{berezin_bracket, canonical_bracket, poisson_bracket, PoissonRing};
pub use ideal::{sphere_ideal, ConstraintIdeal};
pub use poly::{display_cmp, CommPoly, Exponents, VarRole, VarTable, Variable};
