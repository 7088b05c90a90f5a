//! Exact symbolic kernel and verification suite for the defect algebra of the
//! N=1 supersymmetric sinh-Gordon model.
//!
//! The crate is organised in layers:
//!
//! * [`scalar`], [`generator`], [`monomial`], [`term`], [`expr`] — the graded
//!   function ring: cyclotomic scalars over the eighth root of unity, sparse
//!   exponential/polynomial monomials with exact rational exponents, Grassmann
//!   monomials, and the quadratic ring extension `r² = 1 + h²` with an
//!   invertible denominator `D = 1 + h²`.
//! * [`derivation`], [`rewrite`] — graded derivations (light-cone `∂₊`, `∂₋`
//!   and their `∂_t`, `∂_x` combinations) and terminating substitution systems.
//! * [`matrix`] — matrices over the ring with sl(2,1) grading bookkeeping.
//! * [`model`] — the sinh-Gordon data itself: Lax connections, defect
//!   matrices, defect conditions, Lagrangian densities and the auxiliary-field
//!   reparametrization.
//! * [`variational`] — graded Euler–Lagrange calculus for bulk and defect
//!   Lagrangians.
//! * [`verify`] — the top-level identity checks, each reducing a residual to
//!   canonical zero and reporting what survives.
//! * [`io`] — expression text format (parser and printer), golden-file
//!   handling, the suite runner and report emission.
//!
//! Everything is exact: no floating point is used anywhere. A check passes
//! exactly when its residual normalizes to the empty sum.

pub mod scalar;
pub mod generator;
pub mod monomial;
pub mod term;
pub mod expr;
pub mod extension;
pub mod derivation;
pub mod rewrite;
pub mod matrix;
pub mod model;
pub mod variational;
pub mod verify;
pub mod io;

pub use expr::{Expression, Parity as ExprParity};
pub use generator::{GenId, GenKind, Parity, Registry};
pub use matrix::SuperMatrix;
pub use scalar::CycloScalar;

/// Exact rational number used for scalars and exponents.
pub type Rat = num::BigRational;

/// Convenience constructor for a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    use num::BigInt;
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for an integer rational.
pub fn rat_int(n: i64) -> Rat {
    rat(n, 1)
}
