//! Coefficient spaces and parametrizations for the deformation operators.
//!
//! Real geometric objects (functions, 1-forms, vector fields) are stored by
//! free real parameters of their conjugation-symmetric Peter–Weyl
//! coefficients; genuinely complex objects (u-fields, deformation tensors ω)
//! are stored as (Re, Im) pairs of unconstrained coefficients. All Grams are
//! the geometric L² ones: the u-field weight 4 comes from ‖ue + ūē‖² = 4‖u‖²
//! and the ω₂ weight 2 from ‖ξ*⊗e‖² = 2.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use numerics::{Gram, Label, LabeledBasis, OperatorMatrix};
use su2_geometry::wigner::{frame_derivative, WignerBasis};

type C64 = Complex64;

/// Free real parameters of conjugation-symmetric coefficient vectors.
#[derive(Debug, Clone)]
pub struct RealParam {
    pub wb: WignerBasis,
    pub basis: Arc<LabeledBasis>,
    /// per parameter: (label position, conjugate position, sign, kind)
    /// kind 0: self-conjugate (real coefficient), 1: real part, 2: imag part
    cols: Vec<(usize, usize, f64, u8)>,
}

impl RealParam {
    pub fn new(wb: &WignerBasis, id: &str) -> Self {
        let mut cols = Vec::new();
        let mut labels: Vec<Label> = Vec::new();
        let mut gram = Vec::new();
        for (pos, &(tj, tm, tn)) in wb.labels.iter().enumerate() {
            let cpos = wb.position(tj, -tm, -tn).unwrap();
            let sign = if ((tm - tn) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let w = 1.0 / (tj as f64 + 1.0);
            if (tm, tn) == (0, 0) {
                cols.push((pos, cpos, sign, 0));
                labels.push(vec![tj, tm, tn, 0]);
                gram.push(w);
            } else if (tm, tn) > (-tm, -tn) {
                cols.push((pos, cpos, sign, 1));
                labels.push(vec![tj, tm, tn, 1]);
                gram.push(2.0 * w);
                cols.push((pos, cpos, sign, 2));
                labels.push(vec![tj, tm, tn, 2]);
                gram.push(2.0 * w);
            }
        }
        let basis = LabeledBasis::new(id, labels, Gram::Diagonal(DVector::from_vec(gram)))
            .expect("real parameter basis");
        RealParam { wb: wb.clone(), basis, cols }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    /// real parameters → conjugation-symmetric complex coefficients
    pub fn embed(&self, x: &DVector<f64>) -> DVector<C64> {
        let mut c = DVector::<C64>::zeros(self.wb.dim());
        for (k, &(pos, cpos, sign, kind)) in self.cols.iter().enumerate() {
            match kind {
                0 => c[pos] += C64::new(x[k], 0.0),
                1 => {
                    c[pos] += C64::new(x[k], 0.0);
                    c[cpos] += C64::new(sign * x[k], 0.0);
                }
                _ => {
                    c[pos] += C64::new(0.0, x[k]);
                    c[cpos] += C64::new(0.0, -sign * x[k]);
                }
            }
        }
        c
    }

    /// conjugation-symmetric coefficients → real parameters (left inverse;
    /// non-symmetric input is implicitly symmetrized)
    pub fn project(&self, c: &DVector<C64>) -> DVector<f64> {
        let mut x = DVector::<f64>::zeros(self.cols.len());
        for (k, &(pos, cpos, sign, kind)) in self.cols.iter().enumerate() {
            let sym = (c[pos] + c[cpos].conj() * sign) * 0.5;
            x[k] = match kind {
                0 => sym.re,
                1 => sym.re,
                _ => sym.im,
            };
        }
        x
    }
}

/// Coefficients of the conjugate function: conj(f) has coefficients
/// (−1)^{m−m′} conj(c_{j,−m,−m′}).
pub fn conj_coeffs(wb: &WignerBasis, c: &DVector<C64>) -> DVector<C64> {
    let mut out = DVector::<C64>::zeros(c.len());
    for (pos, &(tj, tm, tn)) in wb.labels.iter().enumerate() {
        let cpos = wb.position(tj, -tm, -tn).unwrap();
        let sign = if ((tm - tn) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        out[pos] = c[cpos].conj() * sign;
    }
    out
}

/// Unconstrained complex coefficients split as (Re block, Im block).
pub fn split_c(c: &DVector<C64>) -> DVector<f64> {
    let n = c.len();
    DVector::from_fn(2 * n, |i, _| if i < n { c[i].re } else { c[i - n].im })
}

pub fn merge_c(x: &DVector<f64>) -> DVector<C64> {
    let n = x.len() / 2;
    DVector::from_fn(n, |i, _| C64::new(x[i], x[i + n]))
}

fn complex_block_basis(id: &str, wb: &WignerBasis, weight: f64) -> Arc<LabeledBasis> {
    let mut labels: Vec<Label> = Vec::new();
    let mut gram = Vec::new();
    for part in 0..2i32 {
        for &(tj, tm, tn) in &wb.labels {
            labels.push(vec![part, tj, tm, tn]);
            gram.push(weight / (tj as f64 + 1.0));
        }
    }
    LabeledBasis::new(id, labels, Gram::Diagonal(DVector::from_vec(gram))).expect("complex block basis")
}

/// All coefficient spaces at a band (doubled j cutoff `band`).
pub struct Spaces {
    pub band: i32,
    pub wb: WignerBasis,
    pub wb_ext: WignerBasis,
    /// frame derivatives e₁, e₂, e₃ on the band
    pub d_ops: [OperatorMatrix<C64>; 3],
    /// lowering ē = e₁ − ie₂ and raising e = e₁ + ie₂ combinations
    pub x_ebar: DMatrix<C64>,
    pub x_e: DMatrix<C64>,
    pub x_e3: DMatrix<C64>,
    /// real functions h
    pub real_fn: RealParam,
    /// u-fields (χ_N = ue + ūē), realified, weight 4
    pub u_basis: Arc<LabeledBasis>,
    /// deformation tensors ω = (ω₁, ω₂), realified, weights (1, 2)
    pub omega_basis: Arc<LabeledBasis>,
    /// real 1-forms α (three real-function components)
    pub alpha_basis: Arc<LabeledBasis>,
    /// vector-field domain (h, u)
    pub chi_basis: Arc<LabeledBasis>,
    /// deformation pairs (ω, α)
    pub pair_basis: Arc<LabeledBasis>,
}

impl Spaces {
    pub fn new(band: i32) -> Self {
        let wb = WignerBasis::new(band);
        let wb_ext = WignerBasis::new(2 * band);
        let d1 = frame_derivative(&wb, 1);
        let d2 = frame_derivative(&wb, 2);
        let d3 = frame_derivative(&wb, 3);
        let x_ebar = &d1.entries - &d2.entries * C64::i();
        let x_e = &d1.entries + &d2.entries * C64::i();
        let x_e3 = d3.entries.clone();
        let real_fn = RealParam::new(&wb, &format!("su2-realfn-2j{band}"));
        let u_basis = complex_block_basis(&format!("su2-ufield-2j{band}"), &wb, 4.0);
        // ω params ordered (Re ω₁, Im ω₁, Re ω₂, Im ω₂)
        let omega_basis = {
            let b1 = complex_block_basis("tmp-o1", &wb, 1.0);
            let b2 = complex_block_basis("tmp-o2", &wb, 2.0);
            LabeledBasis::stack(&format!("su2-omega-2j{band}"), &[&b1, &b2])
        };
        let alpha_basis = {
            let parts: Vec<Arc<LabeledBasis>> = (0..3)
                .map(|a| {
                    let rp = RealParam::new(&wb, &format!("tmp-alpha{a}"));
                    rp.basis
                })
                .collect();
            let refs: Vec<&LabeledBasis> = parts.iter().map(|p| p.as_ref()).collect();
            LabeledBasis::stack(&format!("su2-alpha-2j{band}"), &refs)
        };
        let chi_basis = LabeledBasis::stack(
            &format!("su2-chi-2j{band}"),
            &[real_fn.basis.as_ref(), u_basis.as_ref()],
        );
        let pair_basis = LabeledBasis::stack(
            &format!("su2-pair-2j{band}"),
            &[omega_basis.as_ref(), alpha_basis.as_ref()],
        );
        Spaces {
            band,
            wb,
            wb_ext,
            d_ops: [d1, d2, d3],
            x_ebar,
            x_e,
            x_e3,
            real_fn,
            u_basis,
            omega_basis,
            alpha_basis,
            chi_basis,
            pair_basis,
        }
    }

    pub fn n(&self) -> usize {
        self.wb.dim()
    }

    /// α parameters → complex coefficient vectors of the three components
    pub fn alpha_components(&self, x: &DVector<f64>) -> [DVector<C64>; 3] {
        let nr = self.real_fn.dim();
        let mut out = [
            DVector::zeros(self.n()),
            DVector::zeros(self.n()),
            DVector::zeros(self.n()),
        ];
        for (a, slot) in out.iter_mut().enumerate() {
            let part = DVector::from_fn(nr, |i, _| x[a * nr + i]);
            *slot = self.real_fn.embed(&part);
        }
        out
    }

    pub fn alpha_from_components(&self, comps: &[DVector<C64>; 3]) -> DVector<f64> {
        let nr = self.real_fn.dim();
        let mut x = DVector::zeros(3 * nr);
        for a in 0..3 {
            let part = self.real_fn.project(&comps[a]);
            for i in 0..nr {
                x[a * nr + i] = part[i];
            }
        }
        x
    }

    /// ω parameters → (ω₁, ω₂) coefficient vectors
    pub fn omega_components(&self, x: &DVector<f64>) -> (DVector<C64>, DVector<C64>) {
        let n = self.n();
        let o1 = DVector::from_fn(n, |i, _| C64::new(x[i], x[i + n]));
        let o2 = DVector::from_fn(n, |i, _| C64::new(x[2 * n + i], x[3 * n + i]));
        (o1, o2)
    }

    pub fn omega_from_components(&self, o1: &DVector<C64>, o2: &DVector<C64>) -> DVector<f64> {
        let n = self.n();
        let mut x = DVector::zeros(4 * n);
        for i in 0..n {
            x[i] = o1[i].re;
            x[i + n] = o1[i].im;
            x[2 * n + i] = o2[i].re;
            x[3 * n + i] = o2[i].im;
        }
        x
    }

    /// χ parameters → (h coefficients, u coefficients)
    pub fn chi_components(&self, x: &DVector<f64>) -> (DVector<C64>, DVector<C64>) {
        let nr = self.real_fn.dim();
        let h = self.real_fn.embed(&DVector::from_fn(nr, |i, _| x[i]));
        let n = self.n();
        let u = DVector::from_fn(n, |i, _| C64::new(x[nr + i], x[nr + n + i]));
        (h, u)
    }

    pub fn chi_from_components(&self, h: &DVector<C64>, u: &DVector<C64>) -> DVector<f64> {
        let nr = self.real_fn.dim();
        let n = self.n();
        let hp = self.real_fn.project(h);
        let mut x = DVector::zeros(nr + 2 * n);
        for i in 0..nr {
            x[i] = hp[i];
        }
        for i in 0..n {
            x[nr + i] = u[i].re;
            x[nr + n + i] = u[i].im;
        }
        x
    }

    /// dα frame components as complex coefficient functions:
    /// dα(e_b, e_c) = e_b α_c − e_c α_b − α_k c_{bc}^k.
    pub fn d_alpha(&self, comps: &[DVector<C64>; 3]) -> [[DVector<C64>; 3]; 3] {
        let frame = su2_geometry::frame::InvariantFrame::standard();
        let mut out: [[DVector<C64>; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| DVector::zeros(self.n())));
        for b in 0..3 {
            for c in 0..3 {
                let mut v = self.d_ops[b].apply_vec(&comps[c]) - self.d_ops[c].apply_vec(&comps[b]);
                for k in 0..3 {
                    let s = frame.c(b, c, k);
                    if s != 0.0 {
                        v -= &comps[k] * C64::new(s, 0.0);
                    }
                }
                out[b][c] = v;
            }
        }
        out
    }

    /// dα(ē, e₃) = dα(e₁, e₃) − i dα(e₂, e₃) (the restriction of dα to E).
    pub fn d_alpha_restricted(&self, comps: &[DVector<C64>; 3]) -> DVector<C64> {
        let d = self.d_alpha(comps);
        &d[0][2] - &d[1][2] * C64::i()
    }
}

/// A deformation pair (ω, α) in parameter form.
#[derive(Debug, Clone)]
pub struct DeformationPair {
    pub band: i32,
    /// parameters on `Spaces::pair_basis`: (ω 4N, α 3·dim(real_fn))
    pub params: DVector<f64>,
}

impl DeformationPair {
    pub fn zero(spaces: &Spaces) -> Self {
        DeformationPair { band: spaces.band, params: DVector::zeros(spaces.pair_basis.dim()) }
    }

    pub fn split(&self, spaces: &Spaces) -> (DVector<f64>, DVector<f64>) {
        let no = spaces.omega_basis.dim();
        let na = spaces.alpha_basis.dim();
        let omega = DVector::from_fn(no, |i, _| self.params[i]);
        let alpha = DVector::from_fn(na, |i, _| self.params[no + i]);
        (omega, alpha)
    }

    pub fn join(spaces: &Spaces, omega: &DVector<f64>, alpha: &DVector<f64>) -> Self {
        let mut params = DVector::zeros(spaces.pair_basis.dim());
        for i in 0..omega.len() {
            params[i] = omega[i];
        }
        for i in 0..alpha.len() {
            params[omega.len() + i] = alpha[i];
        }
        DeformationPair { band: spaces.band, params }
    }
}

/// Assemble a real operator matrix column-by-column from a map.
pub fn real_operator(
    dom: Arc<LabeledBasis>,
    cod: Arc<LabeledBasis>,
    f: impl Fn(&DVector<f64>) -> DVector<f64>,
) -> OperatorMatrix<f64> {
    let (m, n) = (cod.dim(), dom.dim());
    let mut entries = DMatrix::zeros(m, n);
    let mut e = DVector::zeros(n);
    for j in 0..n {
        e[j] = 1.0;
        let col = f(&e);
        assert_eq!(col.len(), m);
        entries.set_column(j, &col);
        e[j] = 0.0;
    }
    OperatorMatrix::new(dom, cod, entries).unwrap()
}
