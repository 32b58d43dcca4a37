//! Realification of complex coefficient spaces.
//!
//! A complex basis with real Gram G becomes a real basis of twice the
//! dimension with Gram diag(w·G, w·G), matching the real inner product
//! w·Re⟨u, v⟩. The weight `w` carries the geometric normalization of the
//! underlying tensor bundle (e.g. a frame vector of squared length 2).

use std::sync::Arc;

use nalgebra::{Complex, DMatrix, DVector};

use crate::basis::{Gram, LabeledBasis};
use crate::operator::OperatorMatrix;

pub type C64 = Complex<f64>;

/// Real basis representing (Re, Im) parts of a complex one, with the real
/// inner product w·Re⟨u, v⟩.
pub fn realified_basis(id: &str, basis: &LabeledBasis, weight: f64) -> Arc<LabeledBasis> {
    let mut labels = Vec::with_capacity(2 * basis.dim());
    for part in 0..2i32 {
        for l in basis.labels() {
            let mut nl = vec![part];
            nl.extend_from_slice(l);
            labels.push(nl);
        }
    }
    let gram = match basis.gram() {
        Gram::Identity if weight == 1.0 => Gram::Identity,
        Gram::Identity => Gram::Diagonal(DVector::from_element(2 * basis.dim(), weight)),
        Gram::Diagonal(d) => {
            let mut v = Vec::with_capacity(2 * d.len());
            v.extend(d.iter().map(|&x| weight * x));
            v.extend(d.iter().map(|&x| weight * x));
            Gram::Diagonal(DVector::from_vec(v))
        }
        Gram::Dense { matrix, .. } => {
            let n = basis.dim();
            let mut g = DMatrix::zeros(2 * n, 2 * n);
            g.view_mut((0, 0), (n, n)).copy_from(&(matrix * weight));
            g.view_mut((n, n), (n, n)).copy_from(&(matrix * weight));
            Gram::Dense { matrix: g.clone(), chol_l: nalgebra::Cholesky::new(g).expect("SPD").l() }
        }
    };
    LabeledBasis::new(id, labels, gram).expect("realified basis is valid")
}

pub fn split_vec(z: &DVector<C64>) -> DVector<f64> {
    let n = z.len();
    DVector::from_fn(2 * n, |i, _| if i < n { z[i].re } else { z[i - n].im })
}

pub fn merge_vec(x: &DVector<f64>) -> DVector<C64> {
    let n = x.len() / 2;
    DVector::from_fn(n, |i, _| C64::new(x[i], x[i + n]))
}

/// Realify a complex-linear operator: with z = x + iy and A = P + iQ,
/// A z ↦ [[P, -Q], [Q, P]] acting on (x, y).
pub fn realify_operator(
    op: &OperatorMatrix<C64>,
    domain: Arc<LabeledBasis>,
    codomain: Arc<LabeledBasis>,
) -> OperatorMatrix<f64> {
    let (m, n) = (op.entries.nrows(), op.entries.ncols());
    assert_eq!(domain.dim(), 2 * n);
    assert_eq!(codomain.dim(), 2 * m);
    let mut e = DMatrix::zeros(2 * m, 2 * n);
    for i in 0..m {
        for j in 0..n {
            let z = op.entries[(i, j)];
            e[(i, j)] = z.re;
            e[(i, j + n)] = -z.im;
            e[(i + m, j)] = z.im;
            e[(i + m, j + n)] = z.re;
        }
    }
    OperatorMatrix { domain, codomain, entries: e }
}

/// Realify a conjugate-linear-plus-linear map given as z ↦ A z + B conj(z):
/// on (x, y) this is [[Pa+Pb, -Qa+Qb], [Qa+Qb, Pa-Pb]].
pub fn realify_mixed_operator(
    a: &DMatrix<C64>,
    b: &DMatrix<C64>,
    domain: Arc<LabeledBasis>,
    codomain: Arc<LabeledBasis>,
) -> OperatorMatrix<f64> {
    let (m, n) = (a.nrows(), a.ncols());
    assert_eq!(b.nrows(), m);
    assert_eq!(b.ncols(), n);
    let mut e = DMatrix::zeros(2 * m, 2 * n);
    for i in 0..m {
        for j in 0..n {
            let (za, zb) = (a[(i, j)], b[(i, j)]);
            e[(i, j)] = za.re + zb.re;
            e[(i, j + n)] = -za.im + zb.im;
            e[(i + m, j)] = za.im + zb.im;
            e[(i + m, j + n)] = za.re - zb.re;
        }
    }
    OperatorMatrix { domain, codomain, entries: e }
}
