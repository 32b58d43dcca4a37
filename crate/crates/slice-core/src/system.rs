//! Action systems: the data of a group acting on a chart of structures.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use numerics::newton::fd_jacobian;
use numerics::{LabeledBasis, OperatorMatrix};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SliceError {
    #[error("input outside the local chart (radius {radius}, norm {norm:e})")]
    OutsideChart { radius: f64, norm: f64 },
    #[error("input not in the required span (off-span component {off:e})")]
    NotInSpan { off: f64 },
    #[error("outside local chart: {0}")]
    Newton(#[from] numerics::NewtonError),
    #[error("basis error: {0}")]
    Basis(#[from] numerics::BasisError),
}

type ActFn = dyn Fn(&DVector<f64>, &DVector<f64>) -> DVector<f64> + Send + Sync;
type ResidualFn = dyn Fn(&DVector<f64>) -> DVector<f64> + Send + Sync;

/// A group action in charts: structure chart centered at the base structure
/// (coordinate 0), group chart centered at the identity, the action evaluator
/// (ξ, J) ↦ J·φ(ξ), its derivative P at the origin restricted to group
/// directions, and an optional integrability residual whose zero set cuts the
/// integrable locus out of the chart.
pub struct ActionSystem {
    pub structure_space: Arc<LabeledBasis>,
    pub group_chart: Arc<LabeledBasis>,
    act: Box<ActFn>,
    pub p: OperatorMatrix<f64>,
    integrability: Option<Box<ResidualFn>>,
}

#[derive(Debug, Clone)]
pub struct SystemValidation {
    /// max over samples of ‖act(0, J) − J‖
    pub identity_defect: f64,
    /// relative defect of the finite-difference differential against ω + Pξ
    pub differential_defect: f64,
}

impl ActionSystem {
    pub fn new(
        structure_space: Arc<LabeledBasis>,
        group_chart: Arc<LabeledBasis>,
        act: impl Fn(&DVector<f64>, &DVector<f64>) -> DVector<f64> + Send + Sync + 'static,
        p: OperatorMatrix<f64>,
        integrability: Option<Box<ResidualFn>>,
    ) -> Self {
        assert_eq!(p.domain.dim(), group_chart.dim());
        assert_eq!(p.codomain.dim(), structure_space.dim());
        ActionSystem { structure_space, group_chart, act: Box::new(act), p, integrability }
    }

    pub fn act(&self, xi: &DVector<f64>, j: &DVector<f64>) -> DVector<f64> {
        (self.act)(xi, j)
    }

    /// Integrability residual Q̂(J); identically zero when the whole chart is
    /// integrable.
    pub fn integrability(&self, j: &DVector<f64>) -> DVector<f64> {
        match &self.integrability {
            Some(q) => q(j),
            None => DVector::zeros(0),
        }
    }

    pub fn has_integrability(&self) -> bool {
        self.integrability.is_some()
    }

    /// Linearization of Q̂ at 0 by central finite differences (step 1e-5).
    pub fn integrability_linearization(&self) -> Option<DMatrix<f64>> {
        let q = self.integrability.as_ref()?;
        let x0 = DVector::zeros(self.structure_space.dim());
        Some(fd_jacobian(|x| q(x), &x0, 1e-5))
    }

    /// Check the chart axioms on a deterministic sample: act(0, J) = J, and
    /// the differential of act at (0,0) equals (ξ, ω) ↦ ω + Pξ within 1e-6
    /// relative (finite differences).
    pub fn validate(&self) -> SystemValidation {
        let n = self.structure_space.dim();
        let e = self.group_chart.dim();
        let zero_xi = DVector::zeros(e);
        let mut identity_defect = 0.0f64;
        for s in 0..5 {
            let j = DVector::from_fn(n, |i, _| 0.05 * ((i + 2 * s + 1) as f64).sin());
            let d = (self.act(&zero_xi, &j) - &j).norm();
            identity_defect = identity_defect.max(d);
        }
        // differential in the structure slot is the identity; in the group
        // slot it is P. Assemble both by central differences.
        let h = 1e-6;
        let zero_j = DVector::zeros(n);
        let mut max_rel = 0.0f64;
        let scale = self.p.entries.amax().max(1.0);
        for k in 0..e {
            let mut xp = DVector::zeros(e);
            xp[k] = h;
            let mut xm = DVector::zeros(e);
            xm[k] = -h;
            let col = (self.act(&xp, &zero_j) - self.act(&xm, &zero_j)) / (2.0 * h);
            for i in 0..n {
                max_rel = max_rel.max((col[i] - self.p.entries[(i, k)]).abs() / scale);
            }
        }
        for k in 0..n {
            let mut jp = DVector::zeros(n);
            jp[k] = h;
            let mut jm = DVector::zeros(n);
            jm[k] = -h;
            let col = (self.act(&zero_xi, &jp) - self.act(&zero_xi, &jm)) / (2.0 * h);
            for i in 0..n {
                let want = if i == k { 1.0 } else { 0.0 };
                max_rel = max_rel.max((col[i] - want).abs() / scale);
            }
        }
        SystemValidation { identity_defect, differential_defect: max_rel }
    }
}
