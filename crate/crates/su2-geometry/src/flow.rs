//! Flows of vector fields on SU(2) with Jacobian transport in the invariant
//! frame, used by orbit-tangency and pullback oracles.
//!
//! A field χ = Σ χ^a(g) e_a moves a point by ġ = g·A(g) with
//! A(g) = Σ χ^a(g) X_a. A tangent vector v = g·V (V in frame coordinates)
//! transports by V̇ = [V, A] + (∇χ)(V), where (∇χ)^a(V) = Σ_c V^c (e_cχ^a).

use nalgebra::{DVector, Matrix3, Vector3};
use num_complex::Complex64;

use crate::group::Su2;
use crate::wigner::{frame_derivative, WignerBasis, WignerEval};

type C64 = Complex64;

/// A real vector field with Wigner-coefficient frame components, together
/// with the nine derivative fields e_c χ^a needed for Jacobian transport.
pub struct FrameField {
    pub wb: WignerBasis,
    /// frame components (conjugation-symmetric coefficients)
    pub comp: [DVector<C64>; 3],
    /// deriv[c][a] = coefficients of e_c χ^a
    deriv: Vec<[DVector<C64>; 3]>,
}

impl FrameField {
    pub fn new(wb: WignerBasis, comp: [DVector<C64>; 3]) -> Self {
        let ops: Vec<_> = (1..=3).map(|a| frame_derivative(&wb, a)).collect();
        let mut deriv = Vec::with_capacity(3);
        for op in &ops {
            deriv.push([
                op.apply_vec(&comp[0]),
                op.apply_vec(&comp[1]),
                op.apply_vec(&comp[2]),
            ]);
        }
        FrameField { wb, comp, deriv }
    }

    /// frame components of the field at a point
    pub fn at(&self, ev: &WignerEval) -> [f64; 3] {
        let mut out = [0.0; 3];
        for a in 0..3 {
            out[a] = ev.eval(&self.wb, &self.comp[a]).re;
        }
        out
    }

    /// (∇χ)(g): matrix with entry (a, c) = (e_c χ^a)(g)
    fn gradient(&self, ev: &WignerEval) -> Matrix3<f64> {
        let mut m = Matrix3::<f64>::zeros();
        for c in 0..3 {
            for a in 0..3 {
                m[(a, c)] = ev.eval(&self.wb, &self.deriv[c][a]).re;
            }
        }
        m
    }
}

/// State transported along the flow: point and frame-coordinate Jacobian
/// (columns = images of e₁, e₂, e₃ at the start point).
#[derive(Debug, Clone)]
pub struct FlowState {
    pub g: Su2,
    pub jac: Matrix3<f64>,
}

fn derivative(field: &FrameField, s: &FlowState) -> (Su2, Matrix3<f64>) {
    let ev = WignerEval::at(field.wb.two_jmax, &s.g);
    let chi = field.at(&ev);
    // ġ = g·A
    let a_quat = Su2::new([0.0, chi[0], chi[1], chi[2]]);
    let gdot = s.g.mul(&a_quat);
    // V̇ = [V, A] + ∇χ·V = 2 V×A + ∇χ·V per column
    let grad = field.gradient(&ev);
    let a_vec = Vector3::new(chi[0], chi[1], chi[2]);
    let mut jdot = Matrix3::<f64>::zeros();
    for col in 0..3 {
        let v = Vector3::new(s.jac[(0, col)], s.jac[(1, col)], s.jac[(2, col)]);
        let vd = 2.0 * v.cross(&a_vec) + grad * v;
        for row in 0..3 {
            jdot[(row, col)] = vd[row];
        }
    }
    (gdot, jdot)
}

/// RK4 integration of the time-t flow from g0, carrying the Jacobian.
pub fn flow_with_jacobian(field: &FrameField, g0: &Su2, t: f64, steps: usize) -> FlowState {
    let mut state = FlowState { g: *g0, jac: Matrix3::identity() };
    let h = t / steps as f64;
    for _ in 0..steps {
        let k1 = derivative(field, &state);
        let s2 = FlowState {
            g: add_scaled(&state.g, &k1.0, 0.5 * h),
            jac: state.jac + k1.1 * (0.5 * h),
        };
        let k2 = derivative(field, &s2);
        let s3 = FlowState {
            g: add_scaled(&state.g, &k2.0, 0.5 * h),
            jac: state.jac + k2.1 * (0.5 * h),
        };
        let k3 = derivative(field, &s3);
        let s4 = FlowState { g: add_scaled(&state.g, &k3.0, h), jac: state.jac + k3.1 * h };
        let k4 = derivative(field, &s4);
        let mut g = state.g;
        for i in 0..4 {
            g.q[i] += h / 6.0 * (k1.0.q[i] + 2.0 * k2.0.q[i] + 2.0 * k3.0.q[i] + k4.0.q[i]);
        }
        g.normalize();
        let jac = state.jac + (k1.1 + k2.1 * 2.0 + k3.1 * 2.0 + k4.1) * (h / 6.0);
        state = FlowState { g, jac };
    }
    state
}

fn add_scaled(g: &Su2, dir: &Su2, s: f64) -> Su2 {
    let mut out = *g;
    for i in 0..4 {
        out.q[i] += s * dir.q[i];
    }
    out.normalize();
    out
}
