//! Exact spectral backend on S³ ≅ SU(2).
//!
//! Functions are expanded in the Peter–Weyl basis of representation matrix
//! coefficients D^j_{m m′} over all half-integer j up to a cutoff. The
//! left-invariant frame e₁, e₂, e₃ has structure constants [e_a, e_b] =
//! 2ε_{abc} e_c, which makes the Reeb flow of the standard Sasakian
//! structure 2π-periodic along the Hopf fibre and the induced metric the
//! unit round one. Frame derivatives act per (j, m)-block on the right
//! index; pointwise products go through Clebsch–Gordan expansion; quadrature
//! grids appear only inside oracle cross-checks, never in operator assembly.

pub mod clebsch;
pub mod curvature;
pub mod flow;
pub mod frame;
pub mod group;
pub mod sampling;
pub mod sasaki;
pub mod wigner;

pub use curvature::{einstein_residual, ricci_frame, LeftInvariantMetric};
pub use frame::InvariantFrame;
pub use group::Su2;
pub use sasaki::{standard_sasaki, StandardSasaki};
pub use wigner::{basic_subspace, frame_derivative, WignerBasis};
