//! Local slices to smooth group actions, in chart coordinates.
//!
//! An [`ActionSystem`] packages a chart of the structure space centered at
//! the base structure, a chart of the acting group at the identity, the
//! action evaluator, and the derivative operator P of the action at the
//! origin. From these the engine builds a local section transverse to the
//! orbit (the kernel of the Gram adjoint P*), inverts the product chart with
//! a damped Newton iteration, and probes minimality of the section by
//! sampling group elements near the identity.

pub mod engine;
pub mod model;
pub mod system;
pub mod toys;

pub use engine::{build_slice, mc2_probe, retraction_idempotence, rigidity_check, slice_chart, slice_invert, Mc2Report};
pub use model::SliceModel;
pub use system::{ActionSystem, SliceError, SystemValidation};
