//! Deformation coordinates of flow-pulled-back structures.
//!
//! For a real vector field χ and small time t, the pullback of the standard
//! structure by the flow has chart coordinates (ω(t), α(t)) read off
//! pointwise from the transported frame Jacobian, then projected onto
//! Peter–Weyl coefficients by least squares over the deterministic sample.
//! These coordinates drive the orbit-tangency check (they match t·P(χ) to
//! second order) and the bracket-normalization oracle (their integrability
//! residual vanishes to third order).

use nalgebra::{DMatrix, DVector, Matrix3};
use num_complex::Complex64;
use su2_geometry::flow::{flow_with_jacobian, FrameField};
use su2_geometry::group::Su2;
use su2_geometry::sampling::su2_points;
use su2_geometry::wigner::{WignerBasis, WignerEval};

use crate::fields::Spaces;

type C64 = Complex64;

/// Least-squares projector onto a Wigner band from pointwise samples.
pub struct BandProjector {
    pub wb: WignerBasis,
    pub points: Vec<Su2>,
    /// pseudo-inverse of the evaluation matrix (basis functions at points)
    pinv: DMatrix<C64>,
}

impl BandProjector {
    pub fn new(band: i32, n_points: usize) -> Self {
        let wb = WignerBasis::new(band);
        assert!(n_points >= 2 * wb.dim(), "oversample the band for a stable projection");
        let points = su2_points(n_points);
        let mut vander = DMatrix::<C64>::zeros(n_points, wb.dim());
        for (r, g) in points.iter().enumerate() {
            let ev = WignerEval::at(band, g);
            for (c, &(tj, tm, tn)) in wb.labels.iter().enumerate() {
                vander[(r, c)] = ev.basis_fn(tj, tm, tn);
            }
        }
        let svd = nalgebra::SVD::new(vander, true, true);
        let u = svd.u.as_ref().unwrap();
        let vt = svd.v_t.as_ref().unwrap();
        let mut pinv = DMatrix::<C64>::zeros(wb.dim(), n_points);
        for k in 0..svd.singular_values.len() {
            let s = svd.singular_values[k];
            if s > 1e-10 * svd.singular_values[0] {
                for i in 0..wb.dim() {
                    for j in 0..n_points {
                        pinv[(i, j)] += vt[(k, i)].conj() * u[(j, k)].conj() / C64::new(s, 0.0);
                    }
                }
            }
        }
        BandProjector { wb, points, pinv }
    }

    pub fn project(&self, values: &DVector<C64>) -> DVector<C64> {
        &self.pinv * values
    }
}

/// Pointwise chart coordinates of the pulled-back standard structure at the
/// projector's sample points, as (ω₁, ω₂, α₁, α₂, α₃) value vectors.
pub fn pullback_values(
    field: &FrameField,
    t: f64,
    steps: usize,
    proj: &BandProjector,
) -> [DVector<C64>; 5] {
    let npts = proj.points.len();
    let mut vals: [DVector<C64>; 5] = std::array::from_fn(|_| DVector::zeros(npts));
    for (pi, p) in proj.points.iter().enumerate() {
        let state = flow_with_jacobian(field, p, t, steps);
        let m = state.jac;
        // pulled-back contact form: (φ*η)(e_a) = M₃ₐ
        for a in 0..3 {
            vals[2 + a][pi] = C64::new(m[(2, a)] - if a == 2 { 1.0 } else { 0.0 }, 0.0);
        }
        // pulled-back antiholomorphic bundle: dφ⁻¹(ē), dφ⁻¹(e₃)
        let minv = m.try_inverse().expect("flow Jacobian invertible");
        let cols = [
            [C64::new(1.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 0.0)],
            [C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        ];
        let mut pre = [[C64::new(0.0, 0.0); 3]; 2];
        for (k, col) in cols.iter().enumerate() {
            for r in 0..3 {
                for c in 0..3 {
                    pre[k][r] += C64::new(minv[(r, c)], 0.0) * col[c];
                }
            }
        }
        // convert to (e, ē, ξ) coordinates: a_e = (v¹ − iv²)/2, a_ē = (v¹ + iv²)/2
        let mut b = nalgebra::Matrix2::<C64>::zeros();
        let mut r_e = [C64::new(0.0, 0.0); 2];
        for k in 0..2 {
            let v = pre[k];
            let a_e = (v[0] - C64::i() * v[1]) * 0.5;
            let a_ebar = (v[0] + C64::i() * v[1]) * 0.5;
            let a_xi = v[2];
            r_e[k] = a_e;
            b[(0, k)] = a_ebar;
            b[(1, k)] = a_xi;
        }
        let binv = b.try_inverse().expect("antiholomorphic block invertible");
        // (ω₁, ω₂) = −r·B⁻¹
        let o1 = -(r_e[0] * binv[(0, 0)] + r_e[1] * binv[(1, 0)]);
        let o2 = -(r_e[0] * binv[(0, 1)] + r_e[1] * binv[(1, 1)]);
        vals[0][pi] = o1;
        vals[1][pi] = o2;
    }
    vals
}

/// Chart coordinates (ω, α) of the pulled-back standard structure as
/// coefficient vectors on the projector band.
pub fn pullback_coordinates(
    field: &FrameField,
    t: f64,
    steps: usize,
    proj: &BandProjector,
) -> ([DVector<C64>; 2], [DVector<C64>; 3]) {
    let vals = pullback_values(field, t, steps, proj);
    let omega = [proj.project(&vals[0]), proj.project(&vals[1])];
    let mut alpha: [DVector<C64>; 3] = std::array::from_fn(|a| proj.project(&vals[2 + a]));
    // α is real: symmetrize the projected coefficients
    for a in 0..3 {
        alpha[a] = proj.wb.symmetrize_real(&alpha[a]);
    }
    (omega, alpha)
}

/// Random conjugation-symmetric vector field at a band, normalized to unit
/// pointwise scale.
pub fn random_field(spaces_band: i32, field_band: i32, seed: u64) -> FrameField {
    use rand::Rng;
    use rand::SeedableRng;
    let wb_field = WignerBasis::new(field_band);
    let wb = WignerBasis::new(spaces_band);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut comp: [DVector<C64>; 3] = std::array::from_fn(|_| DVector::zeros(wb.dim()));
    for c in comp.iter_mut() {
        let mut raw = DVector::<C64>::zeros(wb_field.dim());
        for i in 0..wb_field.dim() {
            raw[i] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let sym = wb_field.symmetrize_real(&raw);
        let l1: f64 = sym.iter().map(|z| z.norm()).sum();
        for (i, &(tj, tm, tn)) in wb_field.labels.iter().enumerate() {
            let pos = wb.position(tj, tm, tn).expect("field band inside space band");
            c[pos] = sym[i] / C64::new(l1.max(1e-300), 0.0);
        }
    }
    FrameField::new(wb, comp)
}

/// Embed the (ω, α) coefficients of a band into Spaces parameters (bands must
/// agree).
pub fn coordinates_to_params(
    spaces: &Spaces,
    omega: &[DVector<C64>; 2],
    alpha: &[DVector<C64>; 3],
) -> (DVector<f64>, DVector<f64>) {
    let o = spaces.omega_from_components(&omega[0], &omega[1]);
    let comps = [alpha[0].clone(), alpha[1].clone(), alpha[2].clone()];
    let a = spaces.alpha_from_components(&comps);
    (o, a)
}

/// Frame Jacobian sanity helper (test use): transported frame at a point.
pub fn frame_jacobian_at(field: &FrameField, p: &Su2, t: f64, steps: usize) -> Matrix3<f64> {
    flow_with_jacobian(field, p, t, steps).jac
}
