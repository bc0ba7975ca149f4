//! Exact jet-space calculus for Noether conservation laws of the critical
//! Kohn-Laplace equation `Δ_H u + u^3 = 0` on the Heisenberg group.
//!
//! - [`jet`]: canonical rational polynomials over jet variables.
//! - [`parser`]: text grammar, canonical printing, symmetry files.
//! - [`variational`]: total derivatives, prolongation, Euler operator, brackets.
//! - [`verifier`]: the builtin catalog and the conservation-law checks.
//! - [`cli`]: the `noether` command-line front end.

pub mod cli;
pub mod error;
pub mod jet;
pub mod parser;
pub mod sampling;
pub mod variational;
pub mod verifier;

pub use error::{Error, Result};
pub use jet::{Coord, Expr, JetSpace, JetVar, Monomial, MultiIndex, Rational};
pub use parser::{parse_expr, parse_symmetry_file, print_expr};
pub use variational::{characteristic, lie_bracket, Characteristic, ProlongedField, VectorField};
pub use verifier::{FluxVector, SymmetryRecord, VerificationReport, Verifier};
