//! Deformation operators for Sasakian structures on S³ ≅ SU(2).
//!
//! Structures are encoded by the pair (E, η): the transversely holomorphic
//! subbundle E of the complexified tangent bundle and the contact form η. A
//! nearby structure has chart coordinates (ω, α) with E_ω = (Id − ω)E and
//! η_α = η + α. Everything is expanded in the invariant frame with
//! Peter–Weyl coefficients; pointwise checks run on a fixed low-discrepancy
//! sample of group points so reports reproduce bit-for-bit.
//!
//! Complexified frame conventions (σ = −1 fixed by contact positivity):
//! e = e₁ + ie₂ spans D^{1,0}, ē = e₁ − ie₂ spans D^{0,1} = E ∩ D_ℂ, and
//! [e, ē] = −4i e₃, [e, e₃] = 2i e, [ē, e₃] = −2i ē, dη = −2 e¹∧e².

pub mod build;
pub mod contact;
pub mod echar;
pub mod fields;
pub mod general;
pub mod mc;
pub mod pullback;
pub mod slices;

pub use build::{build_structure, reeb_solve, SasakiData};
pub use contact::{contact_p, contact_p_star, keta_prime_tangent, keta_tangent, KetaReport};
pub use echar::{echar_verify, ESpan, EcharReport};
pub use fields::{DeformationPair, Spaces};
pub use general::{general_p, general_p_star, symbol_check, SymbolReport};
pub use mc::{integrability_q, mc_sasaki_residual, ResidualSplit};
pub use slices::{kuranishi_general, se_filter, KuranishiGeneral};
