//! Exact-arithmetic residue densities for the spectral Einstein functional of
//! a Dirac operator with inner fluctuation `D_t = D + t·c(Y)`.
//!
//! Layers, bottom up: [`scalar`] and [`clifford`] supply exact Gaussian
//! rationals, polynomials in the formal parameter `t` and gamma matrices;
//! [`geometry`] holds the pointwise data at the base point; [`symbol`] is the
//! truncated symbol calculus; [`operators`] builds the symbols of the operators
//! involved; [`residue`] integrates over the cosphere; [`closed_forms`]
//! evaluates the printed formulas; [`verify`] drives comparisons.

pub mod clifford;
pub mod closed_forms;
pub mod conventions;
pub mod error;
pub mod geometry;
pub mod operators;
pub mod residue;
pub mod scalar;
pub mod symbol;
pub mod verify;

pub use clifford::{generate_gammas, wick_trace_oracle, CliffordElement, GammaFamily};
pub use error::{EngineError, Result};
pub use geometry::{connection_data, pointwise_ops, ConnectionData, PointGeometry, PointwiseOps, RiemannTensor, VectorJet, Violation};
pub use residue::{DensityReport, DensityValue};
pub use scalar::{GaussianRational, Rational, TPoly};
pub use symbol::{compose, Monomial, SymbolFamily, SymbolJet, SymbolTerm};
