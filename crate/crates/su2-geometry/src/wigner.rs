//! Peter–Weyl basis on SU(2) and the frame derivative operators.
//!
//! Basis functions are the matrix coefficients D^j_{m m′}(g) of the unitary
//! irreducible representations, labeled by doubled quantum numbers
//! (2j, 2m, 2m′) so half-integers stay integral. With Haar measure of total
//! mass 1 the Gram is diagonal with entries 1/(2j+1).
//!
//! Left-invariant vector fields act through the right regular representation:
//! e_a D^j_{m m′} = Σ_{m″} D^j_{m m″} (x_a^{(j)})_{m″ m′} with x_a = dπ(X_a),
//! X_a = −iσ_a; the operators touch only the m′ index, block-diagonal in
//! (j, m).

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use numerics::{Coefficients, Gram, Label, LabeledBasis, OperatorMatrix, KERNEL_REL_TOL};

use crate::group::Su2;

type C64 = Complex64;

/// Truncated Peter–Weyl basis with all j ≤ j_max (half-integers included).
#[derive(Debug, Clone)]
pub struct WignerBasis {
    /// doubled cutoff 2·j_max
    pub two_jmax: i32,
    /// labels (2j, 2m, 2m′) in enumeration order
    pub labels: Vec<(i32, i32, i32)>,
    pub basis: Arc<LabeledBasis>,
}

impl WignerBasis {
    pub fn new(two_jmax: i32) -> Self {
        assert!(two_jmax >= 0);
        let mut labels = Vec::new();
        let mut gram = Vec::new();
        let mut lab: Vec<Label> = Vec::new();
        for twoj in 0..=two_jmax {
            let weight = 1.0 / (twoj as f64 + 1.0);
            let mut twom = -twoj;
            while twom <= twoj {
                let mut twon = -twoj;
                while twon <= twoj {
                    labels.push((twoj, twom, twon));
                    lab.push(vec![twoj, twom, twon]);
                    gram.push(weight);
                    twon += 2;
                }
                twom += 2;
            }
        }
        let basis = LabeledBasis::new(
            format!("su2-wigner-2j{two_jmax}"),
            lab,
            Gram::Diagonal(DVector::from_vec(gram)),
        )
        .expect("wigner basis");
        WignerBasis { two_jmax, labels, basis }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Position of (2j, 2m, 2m′), computed from the block layout.
    pub fn position(&self, twoj: i32, twom: i32, twon: i32) -> Option<usize> {
        if twoj < 0 || twoj > self.two_jmax || twom.abs() > twoj || twon.abs() > twoj {
            return None;
        }
        if (twom - twoj) % 2 != 0 || (twon - twoj) % 2 != 0 {
            return None;
        }
        let mut offset = 0usize;
        for tj in 0..twoj {
            offset += ((tj + 1) * (tj + 1)) as usize;
        }
        let side = (twoj + 1) as usize;
        let mi = ((twom + twoj) / 2) as usize;
        let ni = ((twon + twoj) / 2) as usize;
        Some(offset + mi * side + ni)
    }

    /// Conjugation-symmetry test: a real function satisfies
    /// c_{j,m,m′} = (−1)^{m−m′} conj(c_{j,−m,−m′}).
    pub fn reality_defect(&self, coeffs: &DVector<C64>) -> f64 {
        let mut worst = 0.0f64;
        for (i, &(tj, tm, tn)) in self.labels.iter().enumerate() {
            let i2 = self.position(tj, -tm, -tn).unwrap();
            let sign = if ((tm - tn) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let want = coeffs[i2].conj() * sign;
            worst = worst.max((coeffs[i] - want).norm());
        }
        worst
    }

    /// Project onto the conjugation-symmetric (real-function) subspace.
    pub fn symmetrize_real(&self, coeffs: &DVector<C64>) -> DVector<C64> {
        let mut out = coeffs.clone();
        for (i, &(tj, tm, tn)) in self.labels.iter().enumerate() {
            let i2 = self.position(tj, -tm, -tn).unwrap();
            let sign = if ((tm - tn) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            out[i] = (coeffs[i] + coeffs[i2].conj() * sign) * 0.5;
        }
        out
    }
}

fn ladder_lower(twoj: i32, twon: i32) -> f64 {
    // √((j+m′)(j−m′+1)) with doubled arguments
    let jp = (twoj + twon) as f64 / 2.0;
    let jm = (twoj - twon) as f64 / 2.0;
    (jp * (jm + 1.0)).sqrt()
}

fn ladder_raise(twoj: i32, twon: i32) -> f64 {
    // √((j−m′)(j+m′+1))
    let jm = (twoj - twon) as f64 / 2.0;
    let jp = (twoj + twon) as f64 / 2.0;
    (jm * (jp + 1.0)).sqrt()
}

/// Matrix of the left-invariant field e_a on Wigner coefficients.
pub fn frame_derivative(wb: &WignerBasis, axis: usize) -> OperatorMatrix<C64> {
    assert!((1..=3).contains(&axis));
    let n = wb.dim();
    let mut entries = DMatrix::<C64>::zeros(n, n);
    for (col, &(tj, tm, tn)) in wb.labels.iter().enumerate() {
        match axis {
            3 => {
                // x₃ = diag(−2i m′)
                entries[(col, col)] = C64::new(0.0, -(tn as f64));
            }
            1 => {
                // x₁ = −i(J₊ + J₋) on the right index
                if let Some(row) = wb.position(tj, tm, tn - 2) {
                    entries[(row, col)] += C64::new(0.0, -ladder_lower(tj, tn));
                }
                if let Some(row) = wb.position(tj, tm, tn + 2) {
                    entries[(row, col)] += C64::new(0.0, -ladder_raise(tj, tn));
                }
            }
            2 => {
                // x₂ = J₋ − J₊
                if let Some(row) = wb.position(tj, tm, tn - 2) {
                    entries[(row, col)] += C64::new(ladder_lower(tj, tn), 0.0);
                }
                if let Some(row) = wb.position(tj, tm, tn + 2) {
                    entries[(row, col)] += C64::new(-ladder_raise(tj, tn), 0.0);
                }
            }
            _ => unreachable!(),
        }
    }
    OperatorMatrix::new(wb.basis.clone(), wb.basis.clone(), entries).unwrap()
}

/// Derivative along a complex frame direction u¹e₁ + u²e₂ + u³e₃.
pub fn frame_derivative_complex(wb: &WignerBasis, u: [C64; 3]) -> OperatorMatrix<C64> {
    let mut acc = DMatrix::<C64>::zeros(wb.dim(), wb.dim());
    for a in 0..3 {
        if u[a].norm() != 0.0 {
            acc += frame_derivative(wb, a + 1).entries * u[a];
        }
    }
    OperatorMatrix::new(wb.basis.clone(), wb.basis.clone(), acc).unwrap()
}

/// Orthonormal basis of Ker e₃ in the truncation: the functions invariant
/// along the Reeb flow (m′ = 0 labels, integer j only).
pub fn basic_subspace(wb: &WignerBasis) -> Vec<Coefficients<C64>> {
    let e3 = frame_derivative(wb, 3);
    e3.kernel_basis(KERNEL_REL_TOL)
}

/// Count of basic modes: Σ over integer j ≤ j_max of (2j+1).
pub fn basic_count(two_jmax: i32) -> usize {
    let mut n = 0usize;
    for twoj in (0..=two_jmax).step_by(2) {
        n += (twoj + 1) as usize;
    }
    n
}

/// All representation matrices D^j(g) for 2j ≤ two_jmax; entry (m′-index,
/// m-index) row-major with indices running from −j to j.
pub struct WignerEval {
    pub two_jmax: i32,
    pub d: Vec<DMatrix<C64>>,
}

impl WignerEval {
    pub fn at(two_jmax: i32, g: &Su2) -> Self {
        let (a, b) = g.cayley_klein();
        let (alpha, beta) = (a, b);
        let (gamma, delta) = (-b.conj(), a.conj());
        let fact = factorials(2 * two_jmax as usize + 2);
        let mut d = Vec::with_capacity(two_jmax as usize + 1);
        for twoj in 0..=two_jmax {
            let side = (twoj + 1) as usize;
            let mut m = DMatrix::<C64>::zeros(side, side);
            for ni in 0..side {
                // row index: m′ = −j + ni
                let twonp = -twoj + 2 * ni as i32;
                for mi in 0..side {
                    let twom = -twoj + 2 * mi as i32;
                    m[(ni, mi)] = wigner_entry(twoj, twonp, twom, alpha, beta, gamma, delta, &fact);
                }
            }
            d.push(m);
        }
        WignerEval { two_jmax, d }
    }

    /// Evaluate a coefficient vector as a function at the point.
    pub fn eval(&self, wb: &WignerBasis, coeffs: &DVector<C64>) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for (i, &(tj, tm, tn)) in wb.labels.iter().enumerate() {
            if coeffs[i].norm() != 0.0 {
                acc += coeffs[i] * self.basis_fn(tj, tm, tn);
            }
        }
        acc
    }

    /// The basis function D^j_{m m′}(g): π(g) p_{m′} = Σ_m D_{m m′} p_m, so
    /// this is the (m-row, m′-col) entry of the stored matrix.
    pub fn basis_fn(&self, twoj: i32, twom: i32, twon: i32) -> C64 {
        let mi = ((twom + twoj) / 2) as usize;
        let ni = ((twon + twoj) / 2) as usize;
        self.d[twoj as usize][(mi, ni)]
    }
}

fn factorials(n: usize) -> Vec<f64> {
    let mut f = vec![1.0f64; n + 1];
    for i in 1..=n {
        f[i] = f[i - 1] * i as f64;
    }
    f
}

fn pow_c(z: C64, k: i32) -> C64 {
    if k == 0 {
        return C64::new(1.0, 0.0);
    }
    // exact zero base: 0^k = 0 for k > 0
    if z.norm() == 0.0 {
        return C64::new(0.0, 0.0);
    }
    z.powi(k)
}

/// D^j_{m′ m} entry via the symmetric-power expansion of p_m((u,v)·g).
#[allow(clippy::too_many_arguments)]
fn wigner_entry(twoj: i32, twonp: i32, twom: i32, alpha: C64, beta: C64, gamma: C64, delta: C64, fact: &[f64], ) -> C64 {
    // D_{m′ m} = √((j+m′)!(j−m′)!/((j+m)!(j−m)!)) Σ_r C(j+m, r) C(j−m, j+m′−r)
    //            α^r γ^{j+m−r} β^{j+m′−r} δ^{r−m−m′+j−... } (exponent r−(m+m′))
    let jpm = ((twoj + twom) / 2) as i32;
    let jmm = ((twoj - twom) / 2) as i32;
    let jpn = ((twoj + twonp) / 2) as i32;
    let jmn = ((twoj - twonp) / 2) as i32;
    let norm = (fact[jpn as usize] * fact[jmn as usize] / (fact[jpm as usize] * fact[jmm as usize])).sqrt();
    let r_lo = 0.max(jpm + jpn - twoj); // r ≥ m + m′ in doubled bookkeeping
    let r_hi = jpm.min(jpn);
    let mut acc = C64::new(0.0, 0.0);
    for r in r_lo..=r_hi {
        let c1 = fact[jpm as usize] / (fact[r as usize] * fact[(jpm - r) as usize]);
        let c2 = fact[jmm as usize] / (fact[(jpn - r) as usize] * fact[(jmm - jpn + r) as usize]);
        let term = pow_c(alpha, r) * pow_c(gamma, jpm - r) * pow_c(beta, jpn - r) * pow_c(delta, jmm - jpn + r);
        acc += term * (c1 * c2);
    }
    acc * norm
}
