//! Spectral linear algebra on labeled bases.
//!
//! Every coefficient space carries a `LabeledBasis`: an ordered list of mode
//! labels together with the Gram matrix of pairwise inner products. All
//! adjoints, kernels and ranks computed here are taken with respect to those
//! Gram inner products, not the raw Euclidean ones, so that operator matrices
//! assembled by the geometric backends satisfy their adjoint identities
//! exactly in the discretized Hilbert space.

pub mod basis;
pub mod error;
pub mod newton;
pub mod operator;
pub mod realify;

pub use basis::{Coefficients, Gram, Label, LabeledBasis};
pub use error::{BasisError, NewtonError};
pub use newton::{newton_solve, NewtonReport};
pub use operator::OperatorMatrix;

/// Default relative kernel threshold. All backends are exact spectral
/// truncations, so true kernel singular values sit at machine epsilon while
/// spectral gaps are O(1); 1e-8 separates the two with a wide margin.
pub const KERNEL_REL_TOL: f64 = 1e-8;

/// Scalar types the labeled-basis machinery works over (`f64` and
/// `Complex<f64>`); the Gram matrices themselves stay real.
pub trait Scalar: nalgebra::ComplexField<RealField = f64> + Copy {}
impl<T: nalgebra::ComplexField<RealField = f64> + Copy> Scalar for T {}
