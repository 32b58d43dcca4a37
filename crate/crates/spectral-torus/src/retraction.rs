//! The diffeomorphism action on torus deformation coordinates packaged as an
//! action system, so the generic slice engine (chart inversion, retraction)
//! runs on the complex torus. Coordinates are realified at this boundary;
//! the operators themselves stay complex.

use nalgebra::DVector;
use numerics::realify::{merge_vec, realified_basis, realify_operator, split_vec};
use slice_core::ActionSystem;

use crate::complex_ops::{dbar_on_fields, field_basis, form_basis, BeltramiForm};
use crate::flow::{pullback_structure, TorusField};

/// Action system for the complex 1-torus at a given cutoff: group chart =
/// (1,0) vector fields, structure chart = deformation forms, action =
/// pullback by the time-1 flow, P = ∂̄.
pub fn torus_action_system(cutoff: i32, grid_n: usize, steps: usize) -> ActionSystem {
    let n = 1usize;
    let fields = field_basis(n, cutoff);
    let forms = form_basis(n, cutoff);
    let group = realified_basis("torus1c-fields-real", &fields.basis, 1.0);
    let structure = realified_basis("torus1c-forms-real", &forms.basis, 1.0);
    let p = realify_operator(&dbar_on_fields(n, cutoff), group.clone(), structure.clone());
    let act = move |xi: &DVector<f64>, j: &DVector<f64>| -> DVector<f64> {
        let chi = TorusField::new(n, cutoff, merge_vec(xi));
        let omega = BeltramiForm::from_values(n, cutoff, merge_vec(j));
        let pulled = pullback_structure(&chi, &omega, 1.0, steps, grid_n, cutoff);
        split_vec(&pulled.coeffs.values)
    };
    ActionSystem::new(structure, group, act, p, None)
}
