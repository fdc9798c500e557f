//! Ritz method with Lagrange multipliers.
//!
//! Quadratic variational functionals are minimized over trial bases that do
//! not satisfy the essential boundary conditions. The conditions are instead
//! imposed as constraints `L a = 0` built from boundary weight functionals,
//! and the multipliers are kept as unknowns of the saddle-point system
//!
//! ```text
//! [ K  Lᵀ ] [ a ]   [ -f ]
//! [ L  0  ] [ λ ] = [  0 ]
//! ```
//!
//! The crate is organised bottom-up:
//!
//! * [`quadrature`] – Gauss rules on intervals, the unit square, the unit disk
//!   and partitioned boundaries.
//! * [`basis`] – trial families, boundary weight families and trace operators.
//! * [`assembly`] – stiffness, load, constraint and mass blocks.
//! * [`solvers`] – saddle-point solves, the constrained eigenproblem and the
//!   consistency classification used by the tau/boundary-term comparators.
//! * [`problems`] – the six model problems, reference solutions and metrics.

pub mod assembly;
pub mod basis;
mod error;
pub mod problems;
pub mod quadrature;
pub mod solvers;

pub use error::{Error, Result};
