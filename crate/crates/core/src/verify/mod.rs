//! Top-level identity checks, each reducing a residual to canonical zero.

pub mod linsolve;

pub use linsolve::{LinearSystem, SolveOutcome, SolveStep};
