//! Left-invariant curvature against two independent oracles, and the
//! standard Sasakian structure identities.

use nalgebra::Matrix3;
use su2_geometry::curvature::{einstein_residual, ricci_diagonal_reduction, ricci_frame, LeftInvariantMetric};
use su2_geometry::frame::InvariantFrame;
use su2_geometry::group::Su2;
use su2_geometry::sasaki::standard_sasaki;

/// Finite-difference curvature oracle: express the left-invariant metric in
/// exponential coordinates, differentiate Christoffels numerically, contract
/// to Ricci, and push back to the frame at the chart point.
fn ricci_fd_oracle(g_frame: &Matrix3<f64>, x0: [f64; 3]) -> Matrix3<f64> {
    // θ^a_i(x): frame coordinates of q(x)⁻¹ ∂_i q(x)
    let theta = |x: [f64; 3]| -> Matrix3<f64> {
        let h = 1e-6;
        let q = Su2::exp(x);
        let mut th = Matrix3::zeros();
        for i in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[i] += h;
            xm[i] -= h;
            let (qp, qm) = (Su2::exp(xp), Su2::exp(xm));
            // central difference of the group element, then left-translate
            let mut dq = [0.0f64; 4];
            for c in 0..4 {
                dq[c] = (qp.q[c] - qm.q[c]) / (2.0 * h);
            }
            let v = q.inverse().mul(&Su2::new(dq));
            for a in 0..3 {
                th[(a, i)] = v.q[a + 1];
            }
        }
        th
    };
    let metric = |x: [f64; 3]| -> Matrix3<f64> {
        let th = theta(x);
        th.transpose() * g_frame * th
    };
    let h = 1e-4;
    let dmetric = |x: [f64; 3], k: usize| -> Matrix3<f64> {
        let mut xp = x;
        let mut xm = x;
        xp[k] += h;
        xm[k] -= h;
        (metric(xp) - metric(xm)) / (2.0 * h)
    };
    let christoffel = |x: [f64; 3]| -> [Matrix3<f64>; 3] {
        let ginv = metric(x).try_inverse().unwrap();
        let dg = [dmetric(x, 0), dmetric(x, 1), dmetric(x, 2)];
        let mut gamma = [Matrix3::zeros(); 3];
        for l in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    let mut acc = 0.0;
                    for m in 0..3 {
                        acc += ginv[(l, m)] * (dg[i][(m, j)] + dg[j][(m, i)] - dg[m][(i, j)]);
                    }
                    gamma[l][(i, j)] = 0.5 * acc;
                }
            }
        }
        gamma
    };
    let h2 = 1e-3;
    let dgamma = |x: [f64; 3], k: usize| -> [Matrix3<f64>; 3] {
        let mut xp = x;
        let mut xm = x;
        xp[k] += h2;
        xm[k] -= h2;
        let (gp, gm) = (christoffel(xp), christoffel(xm));
        [
            (gp[0] - gm[0]) / (2.0 * h2),
            (gp[1] - gm[1]) / (2.0 * h2),
            (gp[2] - gm[2]) / (2.0 * h2),
        ]
    };
    // Ricci_{jk} = ∂_i Γ^i_{jk} − ∂_j Γ^i_{ik} + Γ^i_{ip} Γ^p_{jk} − Γ^i_{jp} Γ^p_{ik}
    let gam = christoffel(x0);
    let dgam: Vec<[Matrix3<f64>; 3]> = (0..3).map(|k| dgamma(x0, k)).collect();
    let mut ric_coord = Matrix3::zeros();
    for j in 0..3 {
        for k in 0..3 {
            let mut acc = 0.0;
            for i in 0..3 {
                acc += dgam[i][i][(j, k)] - dgam[j][i][(i, k)];
                for p in 0..3 {
                    acc += gam[i][(i, p)] * gam[p][(j, k)] - gam[i][(j, p)] * gam[p][(i, k)];
                }
            }
            ric_coord[(j, k)] = acc;
        }
    }
    // push back to the frame: Ric_frame = θ⁻ᵀ Ric_coord θ⁻¹
    let th = theta(x0);
    let thinv = th.try_inverse().unwrap();
    thinv.transpose() * ric_coord * thinv
}

#[test]
fn ricci_formula_matches_diagonal_reduction() {
    let frame = InvariantFrame::standard();
    for lam in [[1.0, 1.0, 1.0], [1.0, 1.0, 2.0], [0.7, 1.3, 2.1]] {
        let m = LeftInvariantMetric::new(lam);
        let ric = ricci_frame(&frame, &m.matrix());
        let want = ricci_diagonal_reduction(&m);
        for i in 0..3 {
            assert!((ric[(i, i)] - want[i] * lam[i]).abs() <= 1e-12, "lam={lam:?} i={i}");
            for j in 0..3 {
                if i != j {
                    assert!(ric[(i, j)].abs() <= 1e-12);
                }
            }
        }
    }
}

#[test]
fn ricci_formula_matches_finite_difference_chart_oracle() {
    let frame = InvariantFrame::standard();
    let x0 = [0.31, 0.17, -0.23];
    for lam in [[1.0, 1.0, 1.0], [1.0, 1.0, 2.0]] {
        let g = LeftInvariantMetric::new(lam).matrix();
        let ric = ricci_frame(&frame, &g);
        let ric_fd = ricci_fd_oracle(&g, x0);
        let diff = (ric - ric_fd).norm() / ric.norm().max(1.0);
        assert!(diff <= 1e-3, "finite-difference oracle disagrees: {diff:e}\n{ric}\n{ric_fd}");
    }
}

#[test]
fn einstein_residuals() {
    let frame = InvariantFrame::standard();
    // round metric matched to the structure-constant scale: exact Einstein
    let round = LeftInvariantMetric::round();
    assert!(einstein_residual(&frame, &round) <= 1e-12);
    // squashed λ₃ = 2λ₁ = 2λ₂: residual far from zero
    let squashed = LeftInvariantMetric::new([1.0, 1.0, 2.0]);
    assert!(einstein_residual(&frame, &squashed) > 0.1);
    // scaling: Ricci is scale-invariant, so residual(c·g) = 2|1 − c|
    for c in [0.5, 1.5, 2.0] {
        let scaled = LeftInvariantMetric::new([c, c, c]);
        let want = 2.0 * (1.0f64 - c).abs();
        assert!((einstein_residual(&frame, &scaled) - want).abs() <= 1e-12);
    }
}

#[test]
fn frame_axioms() {
    let frame = InvariantFrame::standard();
    assert_eq!(frame.antisymmetry_defect(), 0.0);
    assert_eq!(frame.jacobi_defect(), 0.0);
    assert_eq!(frame.c(0, 1, 2), 2.0);
}

#[test]
fn standard_structure_identities() {
    let s = standard_sasaki().unwrap();
    // i_ξ η = 1 exactly
    let pairing: f64 = (0..3).map(|a| s.eta[a] * s.xi[a]).sum();
    assert_eq!(pairing, 1.0);
    // i_ξ dη = 0 exactly (Cartan formula with structure constants)
    let d = s.frame.d_invariant_one_form(&s.eta);
    for b in 0..3 {
        let c: f64 = (0..3).map(|a| s.xi[a] * d[a][b]).sum();
        assert_eq!(c, 0.0);
    }
    // g(ξ, ξ) = ½dη(ξ, Φξ) + η(ξ)² = 1
    assert_eq!(s.g[(2, 2)], 1.0);
    // positivity: dη(e₁, Φe₁) = |c₁₂³| > 0
    let phi_e1 = s.phi.column(0);
    let val: f64 = (0..3).map(|k| d[0][k] * phi_e1[k]).sum();
    assert_eq!(val, s.frame.c(0, 1, 2).abs());
    // the metric is the round one
    assert_eq!(s.g, Matrix3::identity());
    // Φ annihilates ξ and squares to −Id on the distribution
    assert_eq!(s.phi.column(2).norm(), 0.0);
    let phi2 = s.phi * s.phi;
    assert_eq!(phi2[(0, 0)], -1.0);
    assert_eq!(phi2[(1, 1)], -1.0);
}
