//! Finite-dimensional toy actions where every slice claim is checkable by
//! hand: SO(2) rotating the plane, SO(3) conjugating symmetric matrices, a
//! translation group acting on itself, and the trivial action.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use numerics::{LabeledBasis, OperatorMatrix};

use crate::system::ActionSystem;

/// SO(2) acting on ℝ², base point J₀ = (1, 0). Chart coordinates are
/// centered at J₀, so act(θ, v) = R(θ)(J₀ + v) − J₀.
pub fn so2_on_plane(integrability_cuts_radial: bool) -> ActionSystem {
    let structure = LabeledBasis::euclidean("r2-at-(1,0)", 2);
    let group = LabeledBasis::euclidean("so2-angle", 1);
    let p = OperatorMatrix::new(
        group.clone(),
        structure.clone(),
        // derivative of θ ↦ R(θ)J₀ at 0: 90°-rotation generator applied to (1,0)
        DMatrix::from_column_slice(2, 1, &[0.0, 1.0]),
    )
    .unwrap();
    let act = |xi: &DVector<f64>, v: &DVector<f64>| -> DVector<f64> {
        let (c, s) = (xi[0].cos(), xi[0].sin());
        let x = 1.0 + v[0];
        let y = v[1];
        DVector::from_vec(vec![c * x - s * y - 1.0, s * x + c * y])
    };
    let q: Option<Box<dyn Fn(&DVector<f64>) -> DVector<f64> + Send + Sync>> =
        if integrability_cuts_radial {
            Some(Box::new(|v: &DVector<f64>| v.clone()))
        } else {
            None
        };
    ActionSystem::new(structure, group, act, p, q)
}

fn hat(w: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -w[2], w[1], w[2], 0.0, -w[0], -w[1], w[0], 0.0)
}

fn rodrigues(w: &Vector3<f64>) -> Matrix3<f64> {
    let theta = w.norm();
    let k = hat(w);
    if theta < 1e-12 {
        Matrix3::identity() + k + k * k * 0.5
    } else {
        Matrix3::identity() + k * (theta.sin() / theta) + k * k * ((1.0 - theta.cos()) / (theta * theta))
    }
}

/// Coordinates for Sym(3) giving an identity Gram under the Frobenius inner
/// product: diagonal entries, then off-diagonal pairs scaled by √2.
fn sym_to_coords(m: &Matrix3<f64>) -> DVector<f64> {
    let s = std::f64::consts::SQRT_2;
    DVector::from_vec(vec![m[(0, 0)], m[(1, 1)], m[(2, 2)], s * m[(0, 1)], s * m[(0, 2)], s * m[(1, 2)]])
}

fn coords_to_sym(v: &DVector<f64>) -> Matrix3<f64> {
    let s = 1.0 / std::f64::consts::SQRT_2;
    Matrix3::new(
        v[0],
        s * v[3],
        s * v[4],
        s * v[3],
        v[1],
        s * v[5],
        s * v[4],
        s * v[5],
        v[2],
    )
}

/// SO(3) acting on symmetric 3×3 matrices by conjugation, J₀ = diag(1,2,3).
/// act(ξ, v) = Rᵀ(J₀ + M(v))R − J₀ with R = exp(ξ̂); the derivative at the
/// origin is ξ ↦ [J₀, ξ̂].
pub fn so3_on_sym3() -> ActionSystem {
    let structure = LabeledBasis::euclidean("sym3-at-diag123", 6);
    let group = LabeledBasis::euclidean("so3-axis", 3);
    let j0 = Matrix3::from_diagonal(&Vector3::new(1.0, 2.0, 3.0));
    let mut p_cols = DMatrix::zeros(6, 3);
    for a in 0..3 {
        let mut w = Vector3::zeros();
        w[a] = 1.0;
        let k = hat(&w);
        // d/dt exp(-tξ̂) J₀ exp(tξ̂) = J₀ ξ̂ − ξ̂ J₀
        let dj = j0 * k - k * j0;
        p_cols.set_column(a, &sym_to_coords(&dj));
    }
    let p = OperatorMatrix::new(group.clone(), structure.clone(), p_cols).unwrap();
    let act = move |xi: &DVector<f64>, v: &DVector<f64>| -> DVector<f64> {
        let r = rodrigues(&Vector3::new(xi[0], xi[1], xi[2]));
        let j = j0 + coords_to_sym(v);
        sym_to_coords(&(r.transpose() * j * r - j0))
    };
    ActionSystem::new(structure, group, act, p, None)
}

/// Translation group ℝⁿ acting on itself: act(ξ, J) = J + ξ, P = Id.
pub fn translation_on_self(n: usize) -> ActionSystem {
    let structure = LabeledBasis::euclidean("rn", n);
    let group = LabeledBasis::euclidean("rn-group", n);
    let p = OperatorMatrix::identity(structure.clone());
    let p = OperatorMatrix::new(group.clone(), structure.clone(), p.entries).unwrap();
    let act = |xi: &DVector<f64>, j: &DVector<f64>| j + xi;
    ActionSystem::new(structure, group, act, p, None)
}

/// Trivial action act(ξ, J) = J with P = 0.
pub fn trivial_action(n: usize, group_dim: usize) -> ActionSystem {
    let structure = LabeledBasis::euclidean("rn-trivial", n);
    let group = LabeledBasis::euclidean("group-trivial", group_dim);
    let p = OperatorMatrix::zero(group.clone(), structure.clone());
    let act = |_: &DVector<f64>, j: &DVector<f64>| j.clone();
    ActionSystem::new(structure, group, act, p, None)
}
