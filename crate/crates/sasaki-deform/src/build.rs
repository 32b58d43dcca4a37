//! Reeb field solve and structure construction from (E, η) data.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use num_complex::Complex64;
use numerics::LabeledBasis;
use su2_geometry::clebsch::product;
use su2_geometry::sampling::su2_points;
use su2_geometry::wigner::WignerEval;

use crate::echar::{d_one_form, echar_verify, pointwise_reeb, ESpan, EcharReport, OneForm, StructureError};
use crate::fields::{real_operator, Spaces};

type C64 = Complex64;

/// Solve the Reeb system in coefficient space: η(ξ) = 1 and i_ξdη = 0 as a
/// least-squares problem over the doubled band, then verify both identities
/// pointwise at the deterministic sample (tolerance 1e-9).
pub fn reeb_solve(spaces: &Spaces, eta: &OneForm, n_check: usize) -> Result<[DVector<C64>; 3], StructureError> {
    let d_eta = d_one_form(spaces, eta);
    let nr = spaces.real_fn.dim();
    let xi_basis = LabeledBasis::stack(
        "reeb-xi",
        &[spaces.real_fn.basis.as_ref(), spaces.real_fn.basis.as_ref(), spaces.real_fn.basis.as_ref()],
    );
    let next = spaces.wb_ext.dim();
    // rows: realified coefficients of η(ξ) and the three (i_ξ dη)_b
    let sys = real_operator(
        xi_basis.clone(),
        LabeledBasis::euclidean("reeb-rows", 8 * next),
        |x| {
            let comp: [DVector<C64>; 3] = std::array::from_fn(|a| {
                spaces.real_fn.embed(&DVector::from_fn(nr, |i, _| x[a * nr + i]))
            });
            let mut pairing = DVector::<C64>::zeros(next);
            for a in 0..3 {
                pairing += product(&spaces.wb, &eta.comps[a], &spaces.wb, &comp[a], &spaces.wb_ext);
            }
            let mut out = DVector::zeros(8 * next);
            for i in 0..next {
                out[i] = pairing[i].re;
                out[next + i] = pairing[i].im;
            }
            for b in 0..3 {
                let mut c = DVector::<C64>::zeros(next);
                for a in 0..3 {
                    c += product(&spaces.wb, &d_eta[a][b], &spaces.wb, &comp[a], &spaces.wb_ext);
                }
                for i in 0..next {
                    out[2 * next * (b + 1) + i] = c[i].re;
                    out[2 * next * (b + 1) + next + i] = c[i].im;
                }
            }
            out
        },
    );
    // right-hand side: η(ξ) = 1 (the constant function)
    let mut rhs = DVector::<f64>::zeros(8 * next);
    let const_pos = spaces.wb_ext.position(0, 0, 0).unwrap();
    rhs[const_pos] = 1.0;
    let svd = nalgebra::SVD::new(sys.entries.clone(), true, true);
    let smax = svd.singular_values.iter().fold(0.0f64, |a, &s| a.max(s));
    let sol = svd
        .solve(&rhs, 1e-10 * smax.max(1e-300))
        .map_err(|_| StructureError::NotContact { residual: f64::INFINITY })?;
    let xi: [DVector<C64>; 3] =
        std::array::from_fn(|a| spaces.real_fn.embed(&DVector::from_fn(nr, |i, _| sol[a * nr + i])));
    // pointwise verification
    let mut worst = 0.0f64;
    for g in su2_points(n_check) {
        let ev = WignerEval::at(spaces.band, &g);
        let eta_at = eta.eval(spaces, &ev);
        let mut d_eta_at = Matrix3::<f64>::zeros();
        for a in 0..3 {
            for b in 0..3 {
                d_eta_at[(a, b)] = ev.eval(&spaces.wb, &d_eta[a][b]).re;
            }
        }
        let xi_at = Vector3::new(
            ev.eval(&spaces.wb, &xi[0]).re,
            ev.eval(&spaces.wb, &xi[1]).re,
            ev.eval(&spaces.wb, &xi[2]).re,
        );
        let pair: f64 = (0..3).map(|a| eta_at[a] * xi_at[a]).sum();
        worst = worst.max((pair - 1.0).abs());
        for b in 0..3 {
            let c: f64 = (0..3).map(|a| xi_at[a] * d_eta_at[(a, b)]).sum();
            worst = worst.max(c.abs());
        }
        // contact sanity at the point
        pointwise_reeb(&eta_at, &d_eta_at)?;
    }
    if worst > 1e-9 {
        return Err(StructureError::NotContact { residual: worst });
    }
    Ok(xi)
}

/// A constructed structure: chart data plus the derived tensors, evaluated
/// at the deterministic sample (and exactly, when the data is invariant).
#[derive(Debug)]
pub struct SasakiData {
    pub band: i32,
    pub e_span: ESpan,
    pub eta: OneForm,
    /// Reeb coefficients
    pub xi: [DVector<C64>; 3],
    pub report: EcharReport,
    /// per sample point: Φ and the metric in frame components
    pub phi_samples: Vec<Matrix3<f64>>,
    pub g_samples: Vec<Matrix3<f64>>,
    /// exact frame tensors when every input is invariant (j = 0 data)
    pub constant: Option<(Matrix3<f64>, Matrix3<f64>)>,
}

/// Construct ξ, Φ and the metric from (E, η). Conditions (1), (2), (5) must
/// hold (positivity failure is an error); (3), (4) may fail off the
/// integrable locus, where the symmetrized metric formula applies.
pub fn build_structure(spaces: &Spaces, e: &ESpan, eta: &OneForm, n_points: usize) -> Result<SasakiData, StructureError> {
    let report = echar_verify(spaces, e, eta, n_points);
    if report.positivity_min <= 0.0 {
        return Err(StructureError::NotPositive { min: report.positivity_min });
    }
    let xi = reeb_solve(spaces, eta, n_points)?;
    let d_eta = d_one_form(spaces, eta);
    let pts = su2_points(n_points);
    let mut phi_samples = Vec::with_capacity(pts.len());
    let mut g_samples = Vec::with_capacity(pts.len());
    for g in &pts {
        let ev = WignerEval::at(spaces.band, g);
        let (v, w) = e.eval(spaces, &ev);
        let eta_at = eta.eval(spaces, &ev);
        let mut d_eta_at = Matrix3::<f64>::zeros();
        for a in 0..3 {
            for b in 0..3 {
                d_eta_at[(a, b)] = ev.eval(&spaces.wb, &d_eta[a][b]).re;
            }
        }
        let xi_at = pointwise_reeb(&eta_at, &d_eta_at)?;
        let (phi, metric) = pointwise_structure(&v, &w, &eta_at, &d_eta_at, &xi_at)?;
        phi_samples.push(phi);
        g_samples.push(metric);
    }
    // invariant data: evaluate once at the identity-like exact matrices
    let constant = if is_constant(spaces, e, eta) {
        Some((phi_samples[0], g_samples[0]))
    } else {
        None
    };
    Ok(SasakiData { band: spaces.band, e_span: e.clone(), eta: eta.clone(), xi, report, phi_samples, g_samples, constant })
}

fn is_constant(spaces: &Spaces, e: &ESpan, eta: &OneForm) -> bool {
    let check = |c: &DVector<C64>| c.iter().skip(1).all(|z| z.norm() == 0.0);
    e.v.iter().all(check) && e.w.iter().all(check) && eta.comps.iter().all(check)
        && spaces.band >= 0
}

/// Φ and g at a point: D^{0,1} = E ∩ Ker η_ℂ fixes Φ (multiplication by ∓i
/// on D^{0,1}/D^{1,0}, Φξ = 0), and the metric is the symmetrization of the
/// contact bilinear form: g(V, W) = ¼(dη(V, ΦW) + dη(W, ΦV)) + η(V)η(W),
/// which reduces to ½dη(V, ΦW) + η(V)η(W) when dη is transversely (1,1).
pub fn pointwise_structure(
    v: &Vector3<C64>,
    w: &Vector3<C64>,
    eta_at: &Vector3<f64>,
    d_eta_at: &Matrix3<f64>,
    xi_at: &Vector3<f64>,
) -> Result<(Matrix3<f64>, Matrix3<f64>), StructureError> {
    // direction of E ∩ Ker η: U = η(W)·V − η(V)·W
    let pv: C64 = (0..3).map(|a| v[a] * eta_at[a]).sum();
    let pw: C64 = (0..3).map(|a| w[a] * eta_at[a]).sum();
    let mut u = Vector3::<C64>::zeros();
    for a in 0..3 {
        u[a] = v[a] * pw - w[a] * pv;
    }
    if u.norm() < 1e-10 {
        return Err(StructureError::NotContact { residual: u.norm() });
    }
    // Φ: −i on span{U}, +i on span{Ū}, 0 on ξ: solve in the basis (U, Ū, ξ)
    let mut basis = DMatrix::<C64>::zeros(3, 3);
    let mut image = DMatrix::<C64>::zeros(3, 3);
    for a in 0..3 {
        basis[(a, 0)] = u[a];
        basis[(a, 1)] = u[a].conj();
        basis[(a, 2)] = C64::new(xi_at[a], 0.0);
        image[(a, 0)] = -C64::i() * u[a];
        image[(a, 1)] = C64::i() * u[a].conj();
        image[(a, 2)] = C64::new(0.0, 0.0);
    }
    let lu = basis.lu();
    let mut phi = Matrix3::<f64>::zeros();
    for col in 0..3 {
        let mut e_col = DVector::<C64>::zeros(3);
        e_col[col] = C64::new(1.0, 0.0);
        let coords = lu.solve(&e_col).ok_or(StructureError::NotContact { residual: f64::INFINITY })?;
        let img = &image * coords;
        for row in 0..3 {
            // Φ is a real endomorphism
            phi[(row, col)] = img[row].re;
        }
    }
    let mut metric = Matrix3::<f64>::zeros();
    for a in 0..3 {
        for b in 0..3 {
            let mut acc = 0.0;
            for k in 0..3 {
                acc += 0.25 * (d_eta_at[(a, k)] * phi[(k, b)] + d_eta_at[(b, k)] * phi[(k, a)]);
            }
            metric[(a, b)] = acc + eta_at[a] * eta_at[b];
        }
    }
    Ok((phi, metric))
}

/// Unsymmetrized metric g(V, W) = ½dη(V, ΦW) + η(V)η(W) at a point (used by
/// the symmetrization-consistency check on integrable structures).
pub fn pointwise_metric_unsymmetrized(
    eta_at: &Vector3<f64>,
    d_eta_at: &Matrix3<f64>,
    phi: &Matrix3<f64>,
) -> Matrix3<f64> {
    let mut metric = Matrix3::<f64>::zeros();
    for a in 0..3 {
        for b in 0..3 {
            let mut acc = 0.0;
            for k in 0..3 {
                acc += 0.5 * d_eta_at[(a, k)] * phi[(k, b)];
            }
            metric[(a, b)] = acc + eta_at[a] * eta_at[b];
        }
    }
    metric
}
