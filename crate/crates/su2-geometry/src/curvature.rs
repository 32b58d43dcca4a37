//! Left-invariant curvature on SU(2) from the structure constants.

use nalgebra::{Matrix3, Vector3};

use crate::frame::InvariantFrame;

/// Diagonal left-invariant metric g = diag(λ₁, λ₂, λ₃) in the frame.
#[derive(Debug, Clone, Copy)]
pub struct LeftInvariantMetric {
    pub lambda: [f64; 3],
}

impl LeftInvariantMetric {
    pub fn new(lambda: [f64; 3]) -> Self {
        assert!(lambda.iter().all(|&l| l > 0.0), "metric coefficients must be positive");
        LeftInvariantMetric { lambda }
    }

    pub fn round() -> Self {
        LeftInvariantMetric { lambda: [1.0, 1.0, 1.0] }
    }

    pub fn matrix(&self) -> Matrix3<f64> {
        Matrix3::from_diagonal(&Vector3::new(self.lambda[0], self.lambda[1], self.lambda[2]))
    }
}

/// Ricci tensor in frame components for an arbitrary left-invariant metric,
/// via the Koszul formula: 2g(∇_a e_b, e_k) = g([e_a,e_b],e_k) −
/// g([e_b,e_k],e_a) + g([e_k,e_a],e_b).
pub fn ricci_frame(frame: &InvariantFrame, g: &Matrix3<f64>) -> Matrix3<f64> {
    let ginv = g.try_inverse().expect("metric invertible");
    // nabla[a] = matrix N_a with (N_a)_{k b} = Γ^k_{ab}
    let mut nabla = [Matrix3::<f64>::zeros(); 3];
    for a in 0..3 {
        for b in 0..3 {
            let mut w = Vector3::<f64>::zeros();
            for k in 0..3 {
                let mut acc = 0.0;
                for l in 0..3 {
                    acc += frame.c(a, b, l) * g[(l, k)];
                    acc -= frame.c(b, k, l) * g[(l, a)];
                    acc += frame.c(k, a, l) * g[(l, b)];
                }
                w[k] = 0.5 * acc;
            }
            let gamma = &ginv * w;
            for k in 0..3 {
                nabla[a][(k, b)] = gamma[k];
            }
        }
    }
    // R(e_a, e_b) = N_a N_b − N_b N_a − c_{ab}^l N_l
    let mut ric = Matrix3::<f64>::zeros();
    for j in 0..3 {
        for k in 0..3 {
            let mut acc = 0.0;
            for i in 0..3 {
                let r_ij = nabla[i] * nabla[j] - nabla[j] * nabla[i]
                    - (0..3).map(|l| nabla[l] * frame.c(i, j, l)).sum::<Matrix3<f64>>();
                acc += r_ij[(i, k)];
            }
            ric[(j, k)] = acc;
        }
    }
    ric
}

/// ‖Ric_g − 2g‖∞ over frame pairs (the Einstein constant on S³ is
/// dim S − 1 = 2).
pub fn einstein_residual(frame: &InvariantFrame, metric: &LeftInvariantMetric) -> f64 {
    einstein_residual_general(frame, &metric.matrix())
}

pub fn einstein_residual_general(frame: &InvariantFrame, g: &Matrix3<f64>) -> f64 {
    let ric = ricci_frame(frame, g);
    let mut worst = 0.0f64;
    for a in 0..3 {
        for b in 0..3 {
            worst = worst.max((ric[(a, b)] - 2.0 * g[(a, b)]).abs());
        }
    }
    worst
}

/// Principal Ricci values of a diagonal metric via the orthonormal-frame
/// reduction (r_i = 2μ_jμ_k with μ_i = (a₁+a₂+a₃)/2 − a_i), used as an
/// independent formula in tests.
pub fn ricci_diagonal_reduction(metric: &LeftInvariantMetric) -> [f64; 3] {
    let [l1, l2, l3] = metric.lambda;
    let a = [
        2.0 * l1.sqrt() / (l2 * l3).sqrt(),
        2.0 * l2.sqrt() / (l3 * l1).sqrt(),
        2.0 * l3.sqrt() / (l1 * l2).sqrt(),
    ];
    let half_sum = 0.5 * (a[0] + a[1] + a[2]);
    let mu = [half_sum - a[0], half_sum - a[1], half_sum - a[2]];
    [2.0 * mu[1] * mu[2], 2.0 * mu[2] * mu[0], 2.0 * mu[0] * mu[1]]
}
