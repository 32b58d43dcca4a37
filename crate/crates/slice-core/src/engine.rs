//! Slice construction, chart inversion, retraction and minimality probes.

use nalgebra::DVector;
use numerics::newton::fd_jacobian;
use numerics::operator::orthogonal_complement;
use numerics::{newton_solve, Coefficients, LabeledBasis, OperatorMatrix};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{SliceModel, SliceTolerances};
use crate::system::{ActionSystem, SliceError};

/// Build the local slice data: F⊥ = Ker P*, a complement of Ker P in the
/// group chart, Im P, and the slice tangent (joint kernel of P* and the
/// linearized integrability residual).
pub fn build_slice(sys: &ActionSystem) -> SliceModel<f64> {
    build_slice_with(sys, SliceTolerances::default())
}

pub fn build_slice_with(sys: &ActionSystem, tol: SliceTolerances) -> SliceModel<f64> {
    let rel = tol.kernel_rel_tol;
    let p_star = sys.p.gram_adjoint();
    let f_perp = p_star.kernel_basis(rel);
    let ker_p = sys.p.kernel_basis(rel);
    let e_perp = orthogonal_complement(&sys.group_chart, &ker_p, rel);
    let f = sys.p.image_basis(rel);
    let k_tangent = match sys.integrability_linearization() {
        None => f_perp.clone(),
        Some(qlin) => {
            let q_out = LabeledBasis::euclidean("q-lin-out", qlin.nrows());
            let q_op = OperatorMatrix::new(sys.structure_space.clone(), q_out, qlin)
                .expect("Q-linearization dimensions");
            let stacked = OperatorMatrix::stack_outputs("pstar-and-qlin", &[&p_star, &q_op]);
            stacked.kernel_basis(rel)
        }
    };
    SliceModel { ker_p, e_perp, f, f_perp, k_tangent, tolerances: tol }
}

fn project_onto(span: &[Coefficients<f64>], x: &DVector<f64>) -> DVector<f64> {
    let mut out = DVector::zeros(x.len());
    for b in span {
        let c = b.basis.inner(&b.values, x);
        out += &b.values * c;
    }
    out
}

fn check_in_span_and_radius(
    basis: &LabeledBasis,
    span: &[Coefficients<f64>],
    x: &DVector<f64>,
    radius: f64,
) -> Result<(), SliceError> {
    let norm = basis.norm(x);
    if norm > radius {
        return Err(SliceError::OutsideChart { radius, norm });
    }
    let off = basis.norm(&(x - project_onto(span, x)));
    if off > 1e-9 * (1.0 + norm) {
        return Err(SliceError::NotInSpan { off });
    }
    Ok(())
}

/// The product chart Φ(ξ, κ) = act(ξ, κ) for ξ in the orbit-transverse group
/// directions and κ on the slice.
pub fn slice_chart(
    sys: &ActionSystem,
    model: &SliceModel<f64>,
    xi: &DVector<f64>,
    kappa: &DVector<f64>,
) -> Result<DVector<f64>, SliceError> {
    let radius = model.tolerances.chart_radius;
    check_in_span_and_radius(&sys.group_chart, &model.e_perp, xi, radius)?;
    check_in_span_and_radius(&sys.structure_space, &model.f_perp, kappa, radius)?;
    Ok(sys.act(xi, kappa))
}

/// Invert the product chart at J: find (ξ, κ) with act(ξ, κ) = J. The second
/// component is the retraction Ξ(J) onto the slice. Newton non-convergence
/// means J lies outside the invertibility neighborhood.
pub fn slice_invert(
    sys: &ActionSystem,
    model: &SliceModel<f64>,
    j: &DVector<f64>,
) -> Result<(DVector<f64>, DVector<f64>), SliceError> {
    let e = model.e_perp.len();
    let fp = model.f_perp.len();
    let to_pair = |x: &DVector<f64>| -> (DVector<f64>, DVector<f64>) {
        let mut xi = DVector::zeros(sys.group_chart.dim());
        for (k, b) in model.e_perp.iter().enumerate() {
            xi += &b.values * x[k];
        }
        let mut kappa = DVector::zeros(sys.structure_space.dim());
        for (k, b) in model.f_perp.iter().enumerate() {
            kappa += &b.values * x[e + k];
        }
        (xi, kappa)
    };
    let residual = |x: &DVector<f64>| -> DVector<f64> {
        let (xi, kappa) = to_pair(x);
        sys.act(&xi, &kappa) - j
    };
    let x0 = DVector::zeros(e + fp);
    let (x, _report) = newton_solve(
        &residual,
        |x| fd_jacobian(&residual, x, 1e-6),
        &x0,
        model.tolerances.newton_tol,
        model.tolerances.newton_max_iter,
    )?;
    Ok(to_pair(&x))
}

/// Retraction component of [`slice_invert`].
pub fn retraction(
    sys: &ActionSystem,
    model: &SliceModel<f64>,
    j: &DVector<f64>,
) -> Result<DVector<f64>, SliceError> {
    Ok(slice_invert(sys, model, j)?.1)
}

/// Max over sampled J of ‖Ξ(Ξ(J)) − Ξ(J)‖; the retraction contract bounds
/// this by ten times the Newton tolerance.
pub fn retraction_idempotence(
    sys: &ActionSystem,
    model: &SliceModel<f64>,
    samples: usize,
    seed: u64,
) -> Result<f64, SliceError> {
    assert!(samples >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sys.structure_space.dim();
    let radius = model.tolerances.chart_radius;
    let mut max_dev = 0.0f64;
    for _ in 0..samples {
        let dir = DVector::from_fn(n, |_, _| rng.gen_range(-1.0f64..1.0));
        let norm = sys.structure_space.norm(&dir).max(1e-300);
        let j = &dir * (radius * 0.5 * rng.gen_range(0.0f64..1.0) / norm);
        let k1 = retraction(sys, model, &j)?;
        let k2 = retraction(sys, model, &k1)?;
        max_dev = max_dev.max(sys.structure_space.norm(&(&k2 - &k1)));
    }
    Ok(max_dev)
}

#[derive(Debug, Clone)]
pub struct Mc2Report {
    pub samples: usize,
    /// sampled orbit points that landed on the slice within tolerance
    pub candidates: usize,
    /// candidates that were not the base structure
    pub violations: usize,
    pub max_violation_norm: f64,
    /// tolerance for "lands on the slice"
    pub on_slice_tol: f64,
    /// tolerance for "equals the base structure"
    pub equality_tol: f64,
}

/// Sample group elements g = φ(ξ) with ‖ξ‖ ≤ radius and test the minimality
/// condition: J₀·g on the slice forces J₀·g = J₀. Sampling can only refute
/// minimality, never certify it; violations are counterexamples.
pub fn mc2_probe(
    sys: &ActionSystem,
    model: &SliceModel<f64>,
    samples: usize,
    radius: f64,
    seed: u64,
) -> Mc2Report {
    assert!(samples >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e = sys.group_chart.dim();
    let n = sys.structure_space.dim();
    let j0 = DVector::zeros(n);
    let on_slice_tol = 1e-9;
    let equality_tol = 1e-8;
    let mut candidates = 0usize;
    let mut violations = 0usize;
    let mut max_violation_norm = 0.0f64;
    for _ in 0..samples {
        let dir = DVector::from_fn(e, |_, _| rng.gen_range(-1.0f64..1.0));
        let norm = sys.group_chart.norm(&dir).max(1e-300);
        let xi = &dir * (radius * rng.gen_range(0.0f64..1.0) / norm);
        let jg = sys.act(&xi, &j0);
        let off_slice = sys.structure_space.norm(&(&jg - project_onto(&model.f_perp, &jg)));
        let q_norm = sys.integrability(&jg).norm();
        if off_slice <= on_slice_tol && q_norm <= on_slice_tol {
            candidates += 1;
            let dev = sys.structure_space.norm(&jg);
            if dev > equality_tol {
                violations += 1;
                max_violation_norm = max_violation_norm.max(dev);
            }
        }
    }
    Mc2Report { samples, candidates, violations, max_violation_norm, on_slice_tol, equality_tol }
}

/// A slice reduced to a point makes the base structure rigid.
pub fn rigidity_check(model: &SliceModel<f64>) -> bool {
    model.dim_k_tangent() == 0
}
