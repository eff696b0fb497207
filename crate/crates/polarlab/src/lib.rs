//! A numerical laboratory for the non-symmetric polarization of homogeneous
//! polynomials.
//!
//! An m-homogeneous polynomial `P(x) = sum_{j1 <= .. <= jm} c_j x_{j_1} .. x_{j_m}`
//! on C^n lifts to the non-symmetric m-linear form
//! `L_P(x1, .., xm) = sum_j c_j x1_{j_1} .. xm_{j_m}`. This crate implements,
//! at desk scale:
//!
//! - the lift, its diagonal restriction, and evaluation of both ([`tensor`]);
//! - three independent symmetrization routes — the sign-averaged polarization
//!   formula, the full group average, and Fisher-Yates shuffle
//!   symmetrization `S_k = T_k .. T_1` — together with the coefficient
//!   recursion between consecutive shuffles ([`shuffle`], [`perm`]);
//! - the Schur mask algebra (equal-slot masks D, ordered-slot masks T, the
//!   recursion weight R_k and its factorization) ([`mask`]);
//! - certified-lower-bound sup estimators over l_p unit balls, mu-norm
//!   search for masks, and seeded Monte Carlo integration over the torus
//!   ([`estimate`], [`torus`]);
//! - two-sided experiments for the constants comparing `sup |L_P|` with
//!   `sup |P|`: closed-form upper certificates, the product-polynomial lower
//!   bound `m^{m/p}`, and the block construction driving the logarithmic
//!   lower bound ([`bounds`]).
//!
//! Every estimator is seeded and deterministic in single-threaded mode, and
//! every certified report carries a witness that re-evaluates to the reported
//! value. The runnable `examples/` directory walks through each capability;
//! the `polarlab` binary wraps the same entry points for batch runs.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod estimate;
pub mod index;
pub mod lp;
pub mod mask;
pub mod matrix;
pub mod perm;
pub mod report;
pub mod shuffle;
pub mod tensor;
pub mod torus;

pub use error::{Error, Result};

/// Tolerance for identities that are exact rational-arithmetic statements
/// (shuffle and mask identities).
pub const TAU_EXACT: f64 = 1e-12;

/// Tolerance for evaluation round trips through floating sums.
pub const TAU_EVAL: f64 = 1e-9;

/// Default seed used by the command-line tools, so batch runs are
/// reproducible out of the box.
pub const DEFAULT_SEED: u64 = 3_141_592_653_589_793;
