//! Dolbeault operators and the Maurer–Cartan residual on complex tori
//! ℂⁿ/ℤ²ⁿ with the standard lattice, n ∈ {1, 2}.
//!
//! A deformation is a (0,1)-form with (1,0)-vector values ω = ω^i_ȷ̄ dz̄^j ⊗ ∂_i,
//! encoding the deformed antiholomorphic bundle {v̄ − ω(v̄)}. The integrable
//! locus is the vanishing set of the residual ∂̄ω + ½[ω,ω]; the bracket
//! normalization is pinned by the flow-pullback oracle in `flow`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use numerics::{Coefficients, OperatorMatrix, KERNEL_REL_TOL};
use slice_core::model::{SliceModel, SliceTolerances};

use crate::fourier::{mu, nu, FourierBasis};

type C64 = Complex64;

/// Fourier coefficients of a deformation form on the complex n-torus.
#[derive(Debug, Clone)]
pub struct BeltramiForm {
    pub n: usize,
    pub cutoff: i32,
    /// coefficient of mode k, components (i, ȷ̄) flattened as i·n + j
    pub coeffs: Coefficients<C64>,
}

impl BeltramiForm {
    pub fn zero(n: usize, cutoff: i32) -> Self {
        let fb = form_basis(n, cutoff);
        BeltramiForm { n, cutoff, coeffs: Coefficients::zero(fb.basis) }
    }

    pub fn from_values(n: usize, cutoff: i32, values: DVector<C64>) -> Self {
        let fb = form_basis(n, cutoff);
        assert_eq!(values.len(), fb.dim());
        BeltramiForm { n, cutoff, coeffs: Coefficients::new(fb.basis, values).unwrap() }
    }

    pub fn set(&mut self, k: &[i32], i: usize, jbar: usize, v: C64) {
        let fb = form_basis(self.n, self.cutoff);
        let pos = fb.mode_position(k).expect("mode inside cutoff");
        let idx = fb.index(pos, i * self.n + jbar);
        self.coeffs.values[idx] = v;
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }
}

/// Vector fields of type (1,0): n components per mode.
pub fn field_basis(n: usize, cutoff: i32) -> FourierBasis {
    FourierBasis::new(&format!("torus{n}c-fields-c{cutoff}"), 2 * n, cutoff, n)
}

/// (0,1)-forms with (1,0)-vector values: n² components per mode.
pub fn form_basis(n: usize, cutoff: i32) -> FourierBasis {
    FourierBasis::new(&format!("torus{n}c-forms-c{cutoff}"), 2 * n, cutoff, n * n)
}

/// (0,2)-forms with (1,0)-vector values: n·(n choose 2) components per mode
/// (zero-dimensional for n = 1).
pub fn form2_basis(n: usize, cutoff: i32) -> FourierBasis {
    let pairs = n * (n - 1) / 2;
    FourierBasis::new(&format!("torus{n}c-forms2-c{cutoff}"), 2 * n, cutoff, n * pairs)
}

/// ∂̄ from (1,0)-vector fields to vector-valued (0,1)-forms; acts per mode by
/// multiplication with the antiholomorphic frequencies.
pub fn dbar_on_fields(n: usize, cutoff: i32) -> OperatorMatrix<C64> {
    let dom = field_basis(n, cutoff);
    let cod = form_basis(n, cutoff);
    let mut entries = DMatrix::zeros(cod.dim(), dom.dim());
    for (pos, k) in dom.modes.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                let row = cod.index(pos, i * n + j);
                let col = dom.index(pos, i);
                entries[(row, col)] = nu(n, k, j);
            }
        }
    }
    OperatorMatrix::new(dom.basis, cod.basis, entries).unwrap()
}

/// ∂̄ from vector-valued (0,1)-forms to vector-valued (0,2)-forms
/// (the linearization of the Maurer–Cartan residual at ω = 0).
pub fn dbar_on_forms(n: usize, cutoff: i32) -> OperatorMatrix<C64> {
    let dom = form_basis(n, cutoff);
    let cod = form2_basis(n, cutoff);
    let mut entries = DMatrix::zeros(cod.dim(), dom.dim());
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
    for (pos, k) in dom.modes.iter().enumerate() {
        for i in 0..n {
            for (pi, &(a, b)) in pairs.iter().enumerate() {
                let row = cod.index(pos, i * pairs.len() + pi);
                // (∂̄ω)^i_{āb̄} = ν_a ω^i_b̄ − ν_b ω^i_ā
                entries[(row, dom.index(pos, i * n + b))] += nu(n, k, a);
                entries[(row, dom.index(pos, i * n + a))] -= nu(n, k, b);
            }
        }
    }
    OperatorMatrix::new(dom.basis, cod.basis, entries).unwrap()
}

/// Maurer–Cartan residual of ω, computed exactly in the doubled band.
#[derive(Debug, Clone)]
pub struct McResidual {
    /// full residual coefficients on the doubled-cutoff (0,2)-form basis
    pub coeffs: Coefficients<C64>,
    /// norm of the part inside the original cutoff
    pub in_band_norm: f64,
    /// norm of the convolution tail outside the original cutoff
    pub tail_norm: f64,
}

impl McResidual {
    pub fn total_norm(&self) -> f64 {
        self.coeffs.norm()
    }
}

/// ∂̄ω + ½[ω,ω] with the bracket evaluated by exact mode convolution into the
/// doubled band: ½[ω,ω]^i_{āb̄} = −(ω^m_ā ∂_m ω^i_b̄ − ω^m_b̄ ∂_m ω^i_ā), the
/// sign fixed by the flow-pullback oracle.
pub fn mc_residual(omega: &BeltramiForm) -> McResidual {
    let n = omega.n;
    let cutoff = omega.cutoff;
    let ext = 2 * cutoff;
    let dom = form_basis(n, cutoff);
    let cod = form2_basis(n, ext);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
    let mut values: DVector<C64> = DVector::zeros(cod.dim());

    // linear term ∂̄ω stays inside the original band
    for (pos, k) in dom.modes.iter().enumerate() {
        let cpos = cod.mode_position(k).expect("band inside doubled band");
        for i in 0..n {
            for (pi, &(a, b)) in pairs.iter().enumerate() {
                let row = cod.index(cpos, i * pairs.len() + pi);
                let wb = omega.coeffs.values[dom.index(pos, i * n + b)];
                let wa = omega.coeffs.values[dom.index(pos, i * n + a)];
                values[row] += nu(n, k, a) * wb - nu(n, k, b) * wa;
            }
        }
    }

    // bracket by convolution: modes add, always inside the doubled band
    for (pos1, k1) in dom.modes.iter().enumerate() {
        for (pos2, k2) in dom.modes.iter().enumerate() {
            let ksum: Vec<i32> = k1.iter().zip(k2).map(|(&a, &b)| a + b).collect();
            let cpos = cod.mode_position(&ksum).expect("sum inside doubled band");
            for i in 0..n {
                for (pi, &(a, b)) in pairs.iter().enumerate() {
                    let row = cod.index(cpos, i * pairs.len() + pi);
                    let mut acc = C64::new(0.0, 0.0);
                    for m in 0..n {
                        // ω^m_ā(k1) · (∂_m ω^i_b̄)(k2) − ω^m_b̄(k1) · (∂_m ω^i_ā)(k2)
                        let wma = omega.coeffs.values[dom.index(pos1, m * n + a)];
                        let wmb = omega.coeffs.values[dom.index(pos1, m * n + b)];
                        let dwb = mu(n, k2, m) * omega.coeffs.values[dom.index(pos2, i * n + b)];
                        let dwa = mu(n, k2, m) * omega.coeffs.values[dom.index(pos2, i * n + a)];
                        acc += wma * dwb - wmb * dwa;
                    }
                    values[row] -= acc;
                }
            }
        }
    }

    let coeffs = Coefficients::new(cod.basis.clone(), values).unwrap();
    let mut in_band = 0.0f64;
    let mut tail = 0.0f64;
    for (pos, k) in cod.modes.iter().enumerate() {
        let inside = k.iter().all(|&ki| ki.abs() <= cutoff);
        for c in 0..cod.components {
            let v = coeffs.values[cod.index(pos, c)].norm_sqr();
            if inside {
                in_band += v;
            } else {
                tail += v;
            }
        }
    }
    McResidual { coeffs, in_band_norm: in_band.sqrt(), tail_norm: tail.sqrt() }
}

/// Kuranishi data of the complex torus: harmonic deformation forms.
#[derive(Debug)]
pub struct TorusKuranishi {
    pub n: usize,
    pub cutoff: i32,
    pub dim_f: usize,
    pub dim_f_perp: usize,
    /// slice data; the large bases (f, f_perp, e_perp) are materialized only
    /// when the truncation is small enough for dense assembly
    pub model: SliceModel<C64>,
}

/// Per-mode harmonic computation: the slice tangent is the joint kernel of
/// ∂̄* (on forms) and ∂̄ (to (0,2)-forms), assembled mode by mode since the
/// truncation is exactly block-diagonal.
pub fn kuranishi_torus(n: usize, cutoff: i32) -> TorusKuranishi {
    assert!(n == 1 || n == 2, "complex tori of dimension 1 or 2");
    let fields = field_basis(n, cutoff);
    let forms = form_basis(n, cutoff);
    let pairs = n * (n - 1) / 2;
    let mut dim_f = 0usize;
    let mut k_tangent: Vec<Coefficients<C64>> = Vec::new();
    for (pos, k) in forms.modes.iter().enumerate() {
        // block of ∂̄ on fields: (i,ȷ̄) × i' entries δ_{ii'} ν_j
        let mut b1 = DMatrix::<C64>::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                b1[(i * n + j, i)] = nu(n, k, j);
            }
        }
        let rank = if k.iter().all(|&x| x == 0) { 0 } else { n };
        dim_f += rank;
        // joint kernel of ∂̄*(= B1ᴴ, identity Gram) and the (0,2)-differential
        let mut b2 = DMatrix::<C64>::zeros(n * pairs, n * n);
        let pair_list: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
        for i in 0..n {
            for (pi, &(a, b)) in pair_list.iter().enumerate() {
                b2[(i * pairs + pi, i * n + b)] += nu(n, k, a);
                b2[(i * pairs + pi, i * n + a)] -= nu(n, k, b);
            }
        }
        let mut stacked = DMatrix::<C64>::zeros(n + n * pairs, n * n);
        stacked.view_mut((0, 0), (n, n * n)).copy_from(&b1.adjoint());
        stacked.view_mut((n, 0), (n * pairs, n * n)).copy_from(&b2);
        let svd = nalgebra::SVD::new(stacked.clone(), false, true);
        let vt = svd.v_t.unwrap();
        let smax = svd.singular_values.iter().fold(0.0f64, |m, &s| m.max(s));
        for r in 0..vt.nrows() {
            let keep = if smax == 0.0 { true } else { svd.singular_values[r] <= KERNEL_REL_TOL * smax };
            if keep {
                let mut v = DVector::zeros(forms.dim());
                for c in 0..n * n {
                    v[forms.index(pos, c)] = vt[(r, c)].conj();
                }
                k_tangent.push(Coefficients::new(forms.basis.clone(), v).unwrap());
            }
        }
        // wide stacks can hide kernel directions beyond the thin SVD; the
        // stacked matrix here has at least n·n rows only when n ≥ ... guard:
        debug_assert!(stacked.nrows() >= n * n || smax == 0.0 || n == 1);
    }
    let dim_f_perp = forms.dim() - dim_f;

    // dense assembly for small truncations (cross-checkable path)
    let total = fields.dim() + forms.dim();
    let (e_perp, f, f_perp) = if total <= 1600 {
        let p = dbar_on_fields(n, cutoff);
        let p_star = p.gram_adjoint();
        let f_perp = p_star.kernel_basis(KERNEL_REL_TOL);
        let f = p.image_basis(KERNEL_REL_TOL);
        let ker_p = p.kernel_basis(KERNEL_REL_TOL);
        let e_perp = numerics::operator::orthogonal_complement(&p.domain, &ker_p, KERNEL_REL_TOL);
        (e_perp, f, f_perp)
    } else {
        (Vec::new(), Vec::new(), Vec::new())
    };

    TorusKuranishi {
        n,
        cutoff,
        dim_f,
        dim_f_perp,
        model: SliceModel {
            ker_p: Vec::new(),
            e_perp,
            f,
            f_perp,
            k_tangent,
            tolerances: SliceTolerances::default(),
        },
    }
}
