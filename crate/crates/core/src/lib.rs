//! Finite-difference solvers for a multi-term time-fractional viscoelastic
//! flow model, with the verification machinery used to check them.
//!
//! The governing equation combines Caputo derivatives of orders in (1,2) and
//! (0,1) with a fractional derivative acting on the spatial Laplacian:
//!
//! ```text
//! Σ_j b_j D_t^{γ_j} u + a1 u_t + Σ_l c_l D_t^{α_l} u + a2 u
//!     = a3 u_xx + a4 D_t^β u_xx + f(x,t)
//! ```
//!
//! Module map:
//!
//! * [`fracops`] — fractional weight sequences, discrete history brackets,
//!   and a slow quadrature reference for the continuous derivative;
//! * [`model`] — coefficient sets, problem data, physical-model mapping and
//!   the two built-in benchmark problems;
//! * [`solver`] — per-level tridiagonal assembly, the Thomas solve, the time
//!   marcher, and a dense space-time oracle for validation;
//! * [`analysis`] — norms, convergence tables, stability audits, Toeplitz
//!   positivity study and operator rate checks.

pub mod analysis;
pub mod error;
pub mod fracops;
pub mod model;
pub mod rng;
pub mod solver;
pub mod special;

pub use error::{Error, Result};
pub use model::{ModelCoefficients, OldroydBParams, ProblemSpec};
pub use solver::{GridSpec, Scheme, SolutionHistory};
