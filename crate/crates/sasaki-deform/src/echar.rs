//! Verification of the five structural conditions characterizing a Sasakian
//! pair (E, η): spanning, intersection along the Reeb line, involutivity,
//! vanishing of dη on E, and contact positivity. Pointwise checks run on
//! the fixed low-discrepancy sample so reports are reproducible.

use nalgebra::{DMatrix, DVector, Matrix3};
use num_complex::Complex64;
use su2_geometry::clebsch::product;
use su2_geometry::frame::InvariantFrame;
use su2_geometry::sampling::su2_points;
use su2_geometry::wigner::WignerEval;
use thiserror::Error;

use crate::fields::Spaces;

type C64 = Complex64;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("not contact: the pointwise Reeb system is singular (residual {residual:e})")]
    NotContact { residual: f64 },
    #[error("not positive contact: positivity minimum {min:e} ≤ 0")]
    NotPositive { min: f64 },
}

/// A 2-plane field E ⊂ T_ℂS given by two spanning vector fields with
/// Peter–Weyl frame components.
#[derive(Debug, Clone)]
pub struct ESpan {
    pub v: [DVector<C64>; 3],
    pub w: [DVector<C64>; 3],
}

impl ESpan {
    /// The standard span {ē, e₃} at a band.
    pub fn standard(spaces: &Spaces) -> Self {
        let n = spaces.n();
        let mut v: [DVector<C64>; 3] = std::array::from_fn(|_| DVector::zeros(n));
        let mut w: [DVector<C64>; 3] = std::array::from_fn(|_| DVector::zeros(n));
        v[0][0] = C64::new(1.0, 0.0);
        v[1][0] = C64::new(0.0, -1.0);
        w[2][0] = C64::new(1.0, 0.0);
        ESpan { v, w }
    }

    /// The deformed span {ē − ω₁e, e₃ − ω₂e} from chart coordinates.
    pub fn from_omega(spaces: &Spaces, o1: &DVector<C64>, o2: &DVector<C64>) -> Self {
        let mut out = Self::standard(spaces);
        // e = e₁ + ie₂: subtract ω·e from each spanning vector
        out.v[0] -= o1;
        out.v[1] -= o1 * C64::i();
        out.w[0] -= o2;
        out.w[1] -= o2 * C64::i();
        out
    }

    /// Constant span from two fixed complex frame vectors.
    pub fn constant(spaces: &Spaces, v: [C64; 3], w: [C64; 3]) -> Self {
        let n = spaces.n();
        let mut sv: [DVector<C64>; 3] = std::array::from_fn(|_| DVector::zeros(n));
        let mut sw: [DVector<C64>; 3] = std::array::from_fn(|_| DVector::zeros(n));
        for a in 0..3 {
            sv[a][0] = v[a];
            sw[a][0] = w[a];
        }
        ESpan { v: sv, w: sw }
    }

    pub fn eval(&self, spaces: &Spaces, ev: &WignerEval) -> (nalgebra::Vector3<C64>, nalgebra::Vector3<C64>) {
        let mut v = nalgebra::Vector3::<C64>::zeros();
        let mut w = nalgebra::Vector3::<C64>::zeros();
        for a in 0..3 {
            v[a] = ev.eval(&spaces.wb, &self.v[a]);
            w[a] = ev.eval(&spaces.wb, &self.w[a]);
        }
        (v, w)
    }
}

/// A real 1-form with Peter–Weyl frame components.
#[derive(Debug, Clone)]
pub struct OneForm {
    pub comps: [DVector<C64>; 3],
}

impl OneForm {
    pub fn standard(spaces: &Spaces) -> Self {
        let n = spaces.n();
        let mut comps: [DVector<C64>; 3] = std::array::from_fn(|_| DVector::zeros(n));
        comps[2][0] = C64::new(1.0, 0.0);
        OneForm { comps }
    }

    pub fn from_alpha(spaces: &Spaces, alpha: &DVector<f64>) -> Self {
        let a = spaces.alpha_components(alpha);
        let mut s = Self::standard(spaces);
        for i in 0..3 {
            s.comps[i] += &a[i];
        }
        s
    }

    pub fn eval(&self, spaces: &Spaces, ev: &WignerEval) -> nalgebra::Vector3<f64> {
        nalgebra::Vector3::new(
            ev.eval(&spaces.wb, &self.comps[0]).re,
            ev.eval(&spaces.wb, &self.comps[1]).re,
            ev.eval(&spaces.wb, &self.comps[2]).re,
        )
    }
}

/// dη frame components (complex coefficient functions per antisymmetric pair).
pub fn d_one_form(spaces: &Spaces, eta: &OneForm) -> [[DVector<C64>; 3]; 3] {
    spaces.d_alpha(&eta.comps)
}

/// Pointwise solve of the Reeb system for a (possibly non-flat) contact form:
/// η(ξ) = 1 and i_ξ dη = 0 at the point. Returns frame components.
pub fn pointwise_reeb(eta_at: &nalgebra::Vector3<f64>, d_eta_at: &Matrix3<f64>) -> Result<nalgebra::Vector3<f64>, StructureError> {
    // stack: [η_a; dη_{·a}] ξ = (1, 0, 0, 0)
    let mut m = nalgebra::Matrix4x3::<f64>::zeros();
    for a in 0..3 {
        m[(0, a)] = eta_at[a];
        for b in 0..3 {
            m[(1 + b, a)] = d_eta_at[(a, b)];
        }
    }
    let rhs = nalgebra::Vector4::new(1.0, 0.0, 0.0, 0.0);
    let svd = nalgebra::SVD::new(m, true, true);
    let sol = svd.solve(&rhs, 1e-12).map_err(|_| StructureError::NotContact { residual: 1.0 })?;
    let res = (m * sol - rhs).norm();
    if res > 1e-6 {
        return Err(StructureError::NotContact { residual: res });
    }
    Ok(sol)
}

/// Bracket of two complex vector fields with coefficient components,
/// computed in the doubled band: [V, W] = V^aW^b c_{ab}^k e_k +
/// V^a(e_aW^k)e_k − W^b(e_bV^k)e_k.
pub fn bracket_fields(
    spaces: &Spaces,
    v: &[DVector<C64>; 3],
    w: &[DVector<C64>; 3],
) -> [DVector<C64>; 3] {
    let frame = InvariantFrame::standard();
    let next = spaces.wb_ext.dim();
    let mut out: [DVector<C64>; 3] = std::array::from_fn(|_| DVector::zeros(next));
    for a in 0..3 {
        for b in 0..3 {
            for k in 0..3 {
                let c = frame.c(a, b, k);
                if c != 0.0 {
                    out[k] += product(&spaces.wb, &v[a], &spaces.wb, &w[b], &spaces.wb_ext) * C64::new(c, 0.0);
                }
            }
        }
    }
    for k in 0..3 {
        for a in 0..3 {
            let dwk = spaces.d_ops[a].apply_vec(&w[k]);
            out[k] += product(&spaces.wb, &v[a], &spaces.wb, &dwk, &spaces.wb_ext);
            let dvk = spaces.d_ops[a].apply_vec(&v[k]);
            out[k] -= product(&spaces.wb, &w[a], &spaces.wb, &dvk, &spaces.wb_ext);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct EcharReport {
    /// (1) spanning defect of E + Ē
    pub spanning: f64,
    /// (2) deviation of E ∩ Ē from the Reeb line
    pub intersection: f64,
    /// (3) involutivity defect ‖[E,E] mod E‖ (normalized)
    pub involutivity: f64,
    /// (4) max |dη(V, W)| over E-frame pairs
    pub d_eta_restriction: f64,
    /// (5) positivity minimum over the sample
    pub positivity_min: f64,
    pub sample_points: usize,
}

impl EcharReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.spanning <= tol
            && self.intersection <= tol
            && self.involutivity <= tol
            && self.d_eta_restriction <= tol
            && self.positivity_min > 0.0
    }

    pub fn condition_passes(&self, idx: usize, tol: f64) -> bool {
        match idx {
            1 => self.spanning <= tol,
            2 => self.intersection <= tol,
            3 => self.involutivity <= tol,
            4 => self.d_eta_restriction <= tol,
            5 => self.positivity_min > 0.0,
            _ => panic!("condition index 1..=5"),
        }
    }
}

/// Evaluate the five residuals on `n_points` deterministic sample points.
pub fn echar_verify(spaces: &Spaces, e: &ESpan, eta: &OneForm, n_points: usize) -> EcharReport {
    let pts = su2_points(n_points);
    let d_eta = d_one_form(spaces, eta);
    let bracket = bracket_fields(spaces, &e.v, &e.w);
    let mut spanning = 0.0f64;
    let mut intersection = 0.0f64;
    let mut involutivity = 0.0f64;
    let mut d_eta_restriction = 0.0f64;
    let mut positivity_min = f64::INFINITY;
    for g in &pts {
        let ev = WignerEval::at(spaces.band, g);
        let ev_ext = WignerEval::at(2 * spaces.band, g);
        let (v, w) = e.eval(spaces, &ev);
        let eta_at = eta.eval(spaces, &ev);
        let mut d_eta_at = Matrix3::<f64>::zeros();
        for a in 0..3 {
            for b in 0..3 {
                d_eta_at[(a, b)] = ev.eval(&spaces.wb, &d_eta[a][b]).re;
            }
        }
        // (1) span of [V W V̄ W̄]
        let m = DMatrix::<C64>::from_fn(3, 4, |r, c| match c {
            0 => v[r],
            1 => w[r],
            2 => v[r].conj(),
            _ => w[r].conj(),
        });
        let proj = projector_onto_columns(&m);
        let id3 = DMatrix::<C64>::identity(3, 3);
        spanning = spanning.max((&id3 - &proj).norm());
        // (2) intersection E ∩ Ē against the Reeb line
        match pointwise_reeb(&eta_at, &d_eta_at) {
            Ok(xi) => {
                let defect = intersection_defect(&v, &w, &xi);
                intersection = intersection.max(defect);
            }
            Err(_) => {
                intersection = f64::INFINITY;
            }
        }
        // (3) [V, W] mod span{V, W} at the point
        let mut br = nalgebra::Vector3::<C64>::zeros();
        for k in 0..3 {
            br[k] = ev_ext.eval(&spaces.wb_ext, &bracket[k]);
        }
        let span_m = DMatrix::<C64>::from_fn(3, 2, |r, c| if c == 0 { v[r] } else { w[r] });
        let p2 = projector_onto_columns(&span_m);
        let br_d = DVector::<C64>::from_iterator(3, br.iter().copied());
        let off = (&br_d - &p2 * &br_d).norm();
        let scale = (v.norm() * w.norm()).max(1e-12);
        involutivity = involutivity.max(off / scale);
        // (4) dη(V, W)
        let mut pairing = C64::new(0.0, 0.0);
        for a in 0..3 {
            for b in 0..3 {
                pairing += v[a] * w[b] * d_eta_at[(a, b)];
            }
        }
        d_eta_restriction = d_eta_restriction.max(pairing.norm() / scale);
        // (5) positivity on E ∩ D_ℂ: the direction in span{V,W} with η = 0
        let pv = eta_pair(&v, &eta_at);
        let pw = eta_pair(&w, &eta_at);
        // U = pw·V − pv·W has η(U) = 0
        let mut u = nalgebra::Vector3::<C64>::zeros();
        for a in 0..3 {
            u[a] = v[a] * pw - w[a] * pv;
        }
        let un = u.norm();
        if un > 1e-10 {
            let mut val = C64::new(0.0, 0.0);
            for a in 0..3 {
                for b in 0..3 {
                    // dη(U, iŪ) + dη(Ū, −iU) = 2 Re(dη(U, iŪ))
                    val += u[a] * (u[b].conj() * C64::i()) * d_eta_at[(a, b)];
                }
            }
            let pos = 2.0 * val.re / (un * un);
            positivity_min = positivity_min.min(pos);
        }
    }
    EcharReport {
        spanning,
        intersection,
        involutivity,
        d_eta_restriction,
        positivity_min,
        sample_points: pts.len(),
    }
}

fn eta_pair(v: &nalgebra::Vector3<C64>, eta_at: &nalgebra::Vector3<f64>) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for a in 0..3 {
        acc += v[a] * eta_at[a];
    }
    acc
}

fn projector_onto_columns(m: &DMatrix<C64>) -> DMatrix<C64> {
    let svd = nalgebra::SVD::new(m.clone(), true, false);
    let u = svd.u.unwrap();
    let smax = svd.singular_values.iter().fold(0.0f64, |a, &s| a.max(s));
    let mut proj = DMatrix::<C64>::zeros(m.nrows(), m.nrows());
    for k in 0..svd.singular_values.len() {
        if smax > 0.0 && svd.singular_values[k] > 1e-8 * smax {
            let col = u.column(k);
            for i in 0..m.nrows() {
                for j in 0..m.nrows() {
                    proj[(i, j)] += col[i] * col[j].conj();
                }
            }
        }
    }
    proj
}

/// Deviation of E ∩ Ē from the complex line through ξ: compares the
/// orthogonal projectors. Returns ≥ 1 when the intersection dimension is
/// not one.
fn intersection_defect(v: &nalgebra::Vector3<C64>, w: &nalgebra::Vector3<C64>, xi: &nalgebra::Vector3<f64>) -> f64 {
    // solve a V + b W = c V̄ + d W̄: kernel of [V W −V̄ −W̄]
    let m = DMatrix::<C64>::from_fn(3, 4, |r, c| match c {
        0 => v[r],
        1 => w[r],
        2 => -v[r].conj(),
        _ => -w[r].conj(),
    });
    let svd = nalgebra::SVD::new(m.pad_rows(), false, true);
    let vt = svd.v_t.unwrap();
    let smax = svd.singular_values.iter().fold(0.0f64, |a, &s| a.max(s));
    let mut members: Vec<nalgebra::Vector3<C64>> = Vec::new();
    for r in 0..vt.nrows() {
        let keep = if smax == 0.0 { true } else { svd.singular_values[r] <= 1e-8 * smax };
        if keep {
            let a = vt[(r, 0)].conj();
            let b = vt[(r, 1)].conj();
            let mut vec = nalgebra::Vector3::<C64>::zeros();
            for i in 0..3 {
                vec[i] = v[i] * a + w[i] * b;
            }
            if vec.norm() > 1e-9 {
                members.push(vec);
            }
        }
    }
    if members.len() != 1 {
        return 1.0 + members.len() as f64;
    }
    let dir = &members[0];
    let dn = dir.norm();
    let xin = xi.norm().max(1e-300);
    // ‖Π_dir − Π_ξ‖_F
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let p1 = dir[i] * dir[j].conj() / C64::new(dn * dn, 0.0);
            let p2 = C64::new(xi[i] * xi[j] / (xin * xin), 0.0);
            worst += (p1 - p2).norm_sqr();
        }
    }
    worst.sqrt()
}

trait PadRows {
    fn pad_rows(&self) -> DMatrix<C64>;
}

impl PadRows for DMatrix<C64> {
    /// pad to square so the thin SVD carries a complete right-singular family
    fn pad_rows(&self) -> DMatrix<C64> {
        if self.nrows() >= self.ncols() {
            return self.clone();
        }
        let mut p = DMatrix::<C64>::zeros(self.ncols(), self.ncols());
        p.view_mut((0, 0), (self.nrows(), self.ncols())).copy_from(self);
        p
    }
}
