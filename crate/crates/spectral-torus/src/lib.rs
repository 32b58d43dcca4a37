//! Exact Fourier backend on flat tori.
//!
//! Coordinates have period 1, frequencies are 2πk, and the volume is
//! normalized to 1, so the Gram of every Fourier basis is the identity and
//! differential operators act exactly per mode (no quadrature anywhere in
//! the operator pipeline). Complex tori ℂⁿ/ℤ²ⁿ carry the Dolbeault operators
//! of the deformation complex; real tori carry the metric slice operator.

pub mod complex_ops;
pub mod flow;
pub mod fourier;
pub mod grid;
pub mod metric;
pub mod retraction;

pub use complex_ops::{dbar_on_fields, dbar_on_forms, kuranishi_torus, mc_residual, BeltramiForm, McResidual, TorusKuranishi};
pub use fourier::FourierBasis;
pub use metric::{metric_slice_dim, metric_slice_operator};
