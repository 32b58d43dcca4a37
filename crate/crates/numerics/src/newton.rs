//! Damped Newton with least-squares steps.

use nalgebra::{DMatrix, DVector};

use crate::error::NewtonError;

#[derive(Debug, Clone)]
pub struct NewtonReport {
    pub iterations: usize,
    pub residual: f64,
}

/// Solve F(x) = 0 from `x0`. Steps are least-squares solutions of
/// J(x) δ = -F(x) (pseudo-inverse with relative cutoff 1e-12) with step
/// halving until the residual decreases. Rectangular Jacobians are accepted;
/// a vanishing step with residual above `tol` reports a singular Jacobian.
pub fn newton_solve<F, J>(
    f: F,
    jac: J,
    x0: &DVector<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<(DVector<f64>, NewtonReport), NewtonError>
where
    F: Fn(&DVector<f64>) -> DVector<f64>,
    J: Fn(&DVector<f64>) -> DMatrix<f64>,
{
    let mut x = x0.clone();
    let mut r = f(&x);
    let mut rnorm = r.norm();
    // precondition: the Jacobian has full rank at the starting point
    {
        let j0 = jac(&x);
        let sv = nalgebra::SVD::new(j0.clone(), false, false).singular_values;
        let smax = sv.iter().fold(0.0f64, |m, &s| m.max(s));
        let smin = sv.iter().fold(f64::INFINITY, |m, &s| m.min(s));
        let full = j0.nrows().min(j0.ncols());
        if smax == 0.0 || sv.len() < full || smin <= 1e-12 * smax {
            return Err(NewtonError::SingularJacobian { residual: rnorm });
        }
    }
    for it in 0..max_iter {
        if rnorm <= tol {
            return Ok((x, NewtonReport { iterations: it, residual: rnorm }));
        }
        let j = jac(&x);
        let step = lstsq(&j, &(-&r));
        if step.norm() <= 1e-15 * (1.0 + x.norm()) {
            return Err(NewtonError::SingularJacobian { residual: rnorm });
        }
        // backtracking: halve until the residual decreases
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..25 {
            let cand = &x + &step * lambda;
            let rc = f(&cand);
            let rcn = rc.norm();
            if rcn < rnorm {
                x = cand;
                r = rc;
                rnorm = rcn;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(NewtonError::NoConvergence { iterations: it + 1, residual: rnorm });
        }
    }
    if rnorm <= tol {
        Ok((x, NewtonReport { iterations: max_iter, residual: rnorm }))
    } else {
        Err(NewtonError::NoConvergence { iterations: max_iter, residual: rnorm })
    }
}

/// Minimum-norm least-squares solve via SVD with relative cutoff.
fn lstsq(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let svd = nalgebra::SVD::new(a.clone(), true, true);
    let smax = svd.singular_values.iter().fold(0.0f64, |m, &s| m.max(s));
    if smax == 0.0 {
        return DVector::zeros(a.ncols());
    }
    svd.solve(b, 1e-12 * smax).expect("svd solve with cutoff")
}

/// Central finite-difference Jacobian of `f` at `x` with step `h`.
pub fn fd_jacobian<F>(f: F, x: &DVector<f64>, h: f64) -> DMatrix<f64>
where
    F: Fn(&DVector<f64>) -> DVector<f64>,
{
    let n = x.len();
    let fx = f(x);
    let m = fx.len();
    let mut j = DMatrix::zeros(m, n);
    for k in 0..n {
        let mut xp = x.clone();
        let mut xm = x.clone();
        xp[k] += h;
        xm[k] -= h;
        let fp = f(&xp);
        let fm = f(&xm);
        for i in 0..m {
            j[(i, k)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    j
}
