//! The general Kuranishi-type slice and the Einstein filter.

use nalgebra::{DVector, Matrix3};
use num_complex::Complex64;
use numerics::{Coefficients, OperatorMatrix, KERNEL_REL_TOL};
use su2_geometry::curvature::einstein_residual_general;
use su2_geometry::frame::InvariantFrame;
use thiserror::Error;

use crate::build::build_structure;
use crate::echar::{ESpan, OneForm};
use crate::fields::{DeformationPair, Spaces};
use crate::general::{general_operator, GeneralOperator};
use crate::mc::linear::{mc_linearization, q_linearization};

type C64 = Complex64;

#[derive(Debug, Error)]
pub enum FilterError {
    #[error("restricted scope: candidate {index} has non-invariant coefficients")]
    NotLeftInvariant { index: usize },
    #[error("structure error: {0}")]
    Structure(#[from] crate::echar::StructureError),
}

pub struct KuranishiGeneral {
    pub band: i32,
    /// real dimension of the slice tangent
    pub dim: usize,
    pub basis: Vec<Coefficients<f64>>,
    pub operator: GeneralOperator,
}

/// Slice tangent of the general deformation problem: the joint kernel of the
/// adjoint P* and the linearized integrability residuals.
pub fn kuranishi_general(spaces: &Spaces) -> KuranishiGeneral {
    let op = general_operator(spaces);
    // P* acts on pairs; MC acts on the ω block only: extend to pairs
    let mc = mc_linearization(spaces);
    let no = spaces.omega_basis.dim();
    let mc_on_pairs = {
        let mut entries = nalgebra::DMatrix::<f64>::zeros(mc.codomain.dim(), spaces.pair_basis.dim());
        entries.view_mut((0, 0), (mc.codomain.dim(), no)).copy_from(&mc.entries);
        OperatorMatrix::new(spaces.pair_basis.clone(), mc.codomain.clone(), entries).unwrap()
    };
    let q = q_linearization(spaces);
    let stacked = OperatorMatrix::stack_outputs("kuranishi-general", &[&op.p_star, &mc_on_pairs, &q]);
    let basis = stacked.kernel_basis(KERNEL_REL_TOL);
    KuranishiGeneral { band: spaces.band, dim: basis.len(), basis, operator: op }
}

/// Keep the left-invariant candidates whose induced metric is Einstein
/// (residual against Ric = 2g at most `tol`).
pub fn se_filter(
    spaces: &Spaces,
    candidates: &[DeformationPair],
    tol: f64,
) -> Result<Vec<DeformationPair>, FilterError> {
    let mut kept = Vec::new();
    for (index, cand) in candidates.iter().enumerate() {
        let (omega, alpha) = cand.split(spaces);
        let (o1, o2) = spaces.omega_components(&omega);
        let acomp = spaces.alpha_components(&alpha);
        let invariant = |c: &DVector<C64>| c.iter().skip(1).all(|z| z.norm() == 0.0);
        if !(invariant(&o1) && invariant(&o2) && acomp.iter().all(|c| invariant(c))) {
            return Err(FilterError::NotLeftInvariant { index });
        }
        let metric = invariant_metric(spaces, &o1, &o2, &alpha)?;
        let frame = InvariantFrame::standard();
        if einstein_residual_general(&frame, &metric) <= tol {
            kept.push(cand.clone());
        }
    }
    Ok(kept)
}

/// The frame metric induced by invariant chart data.
pub fn invariant_metric(
    spaces: &Spaces,
    o1: &DVector<C64>,
    o2: &DVector<C64>,
    alpha: &DVector<f64>,
) -> Result<Matrix3<f64>, crate::echar::StructureError> {
    let e = ESpan::from_omega(spaces, o1, o2);
    let eta = OneForm::from_alpha(spaces, alpha);
    let data = build_structure(spaces, &e, &eta, 8)?;
    Ok(data.constant.map(|(_, g)| g).unwrap_or(data.g_samples[0]))
}
