//! Linear maps between labeled bases.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::basis::{Coefficients, LabeledBasis};
use crate::error::BasisError;
use crate::Scalar;

/// Matrix of a linear map between two labeled bases. Entries are stored in
/// the raw (unwhitened) coordinates; every metric-sensitive operation routes
/// through the Gram matrices of the two bases.
#[derive(Debug, Clone)]
pub struct OperatorMatrix<T: Scalar> {
    pub domain: Arc<LabeledBasis>,
    pub codomain: Arc<LabeledBasis>,
    pub entries: DMatrix<T>,
}

impl<T: Scalar> OperatorMatrix<T> {
    pub fn new(
        domain: Arc<LabeledBasis>,
        codomain: Arc<LabeledBasis>,
        entries: DMatrix<T>,
    ) -> Result<Self, BasisError> {
        if entries.ncols() != domain.dim() {
            return Err(BasisError::DimensionMismatch {
                gram_dim: entries.ncols(),
                label_count: domain.dim(),
            });
        }
        if entries.nrows() != codomain.dim() {
            return Err(BasisError::DimensionMismatch {
                gram_dim: entries.nrows(),
                label_count: codomain.dim(),
            });
        }
        Ok(OperatorMatrix { domain, codomain, entries })
    }

    pub fn zero(domain: Arc<LabeledBasis>, codomain: Arc<LabeledBasis>) -> Self {
        let entries = DMatrix::zeros(codomain.dim(), domain.dim());
        OperatorMatrix { domain, codomain, entries }
    }

    pub fn identity(basis: Arc<LabeledBasis>) -> Self {
        let n = basis.dim();
        OperatorMatrix { domain: basis.clone(), codomain: basis, entries: DMatrix::identity(n, n) }
    }

    pub fn apply(&self, x: &Coefficients<T>) -> Result<Coefficients<T>, BasisError> {
        if !Arc::ptr_eq(&x.basis, &self.domain) && x.basis.id() != self.domain.id() {
            return Err(BasisError::BasisMismatch {
                want: self.domain.id().to_string(),
                got: x.basis.id().to_string(),
            });
        }
        Ok(Coefficients { basis: self.codomain.clone(), values: &self.entries * &x.values })
    }

    pub fn apply_vec(&self, x: &DVector<T>) -> DVector<T> {
        &self.entries * x
    }

    /// Gram adjoint A* = G_dom⁻¹ Aᴴ G_cod, satisfying
    /// ⟨A u, w⟩_cod = ⟨u, A* w⟩_dom for all u, w.
    pub fn gram_adjoint(&self) -> OperatorMatrix<T> {
        let ah = self.entries.adjoint();
        let ahg = match self.codomain.gram() {
            crate::basis::Gram::Identity => ah,
            _ => {
                let g = self.codomain.gram_dense::<T>();
                ah * g
            }
        };
        let mut out = DMatrix::zeros(ahg.nrows(), ahg.ncols());
        for j in 0..ahg.ncols() {
            let col = self.domain.gram_solve(&DVector::from_column_slice(ahg.column(j).as_slice()));
            out.set_column(j, &col);
        }
        OperatorMatrix { domain: self.codomain.clone(), codomain: self.domain.clone(), entries: out }
    }

    /// Entries in whitened coordinates: B = L_codᵀ A L_dom⁻ᵀ. Singular values
    /// of B are the singular values of the map between the Gram Hilbert spaces.
    pub fn whitened(&self) -> DMatrix<T> {
        use crate::basis::Gram;
        let mut b = self.entries.clone();
        match self.domain.gram() {
            Gram::Identity => {}
            Gram::Diagonal(d) => {
                for j in 0..b.ncols() {
                    let s = T::from_real(1.0 / d[j].sqrt());
                    b.column_mut(j).iter_mut().for_each(|v| *v *= s);
                }
            }
            Gram::Dense { chol_l, .. } => {
                // B = A L⁻ᵀ ⟺ L Bᵀ = Aᵀ: forward-solve each row of A.
                let n = b.ncols();
                for i in 0..b.nrows() {
                    let row = DVector::from_iterator(n, b.row(i).iter().copied());
                    let solved = crate::basis::lift_solve_lower_pub(chol_l, &row);
                    for j in 0..n {
                        b[(i, j)] = solved[j];
                    }
                }
            }
        }
        match self.codomain.gram() {
            Gram::Identity => {}
            Gram::Diagonal(d) => {
                for i in 0..b.nrows() {
                    let s = T::from_real(d[i].sqrt());
                    b.row_mut(i).iter_mut().for_each(|v| *v *= s);
                }
            }
            Gram::Dense { chol_l, .. } => {
                b = chol_l.transpose().map(T::from_real) * b;
            }
        }
        b
    }

    /// Largest singular value with respect to the Gram norms.
    pub fn op_norm(&self) -> f64 {
        let b = self.whitened();
        if b.is_empty() {
            return 0.0;
        }
        nalgebra::SVD::new(b, false, false)
            .singular_values
            .iter()
            .fold(0.0f64, |a, &s| a.max(s))
    }

    /// SVD-based numerical rank with threshold `rel_tol`·σ_max.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let b = self.whitened();
        if b.is_empty() {
            return 0;
        }
        let sv = nalgebra::SVD::new(b, false, false).singular_values;
        let smax = sv.iter().fold(0.0f64, |a, &s| a.max(s));
        if smax == 0.0 {
            return 0;
        }
        sv.iter().filter(|&&s| s > rel_tol * smax).count()
    }

    /// Gram-orthonormal basis of the numerical kernel: the span of right
    /// singular vectors whose singular values are ≤ `rel_tol`·σ_max. For the
    /// zero operator this is a full orthonormal basis of the domain.
    pub fn kernel_basis(&self, rel_tol: f64) -> Vec<Coefficients<T>> {
        let b = self.whitened();
        let m = b.nrows();
        let n = b.ncols();
        if n == 0 {
            return Vec::new();
        }
        // Pad with zero rows so the thin SVD carries a complete right-singular
        // family even for wide matrices.
        let bp = if m < n {
            let mut p = DMatrix::zeros(n, n);
            p.view_mut((0, 0), (m, n)).copy_from(&b);
            p
        } else {
            b
        };
        let svd = nalgebra::SVD::new(bp, false, true);
        let vt = svd.v_t.expect("requested V^T");
        let sv = &svd.singular_values;
        let smax = sv.iter().fold(0.0f64, |a, &s| a.max(s));
        let mut out = Vec::new();
        for i in 0..vt.nrows() {
            let keep = if smax == 0.0 { true } else { sv[i] <= rel_tol * smax };
            if keep {
                let row: DVector<T> = DVector::from_iterator(n, vt.row(i).iter().map(|v| v.conjugate()));
                let x = self.domain.unwhiten(&row);
                out.push(Coefficients { basis: self.domain.clone(), values: x });
            }
        }
        out
    }

    /// Gram-orthonormal basis of the numerical image (left singular vectors
    /// with singular value > `rel_tol`·σ_max).
    pub fn image_basis(&self, rel_tol: f64) -> Vec<Coefficients<T>> {
        let b = self.whitened();
        if b.is_empty() {
            return Vec::new();
        }
        let svd = nalgebra::SVD::new(b, true, false);
        let u = svd.u.expect("requested U");
        let sv = &svd.singular_values;
        let smax = sv.iter().fold(0.0f64, |a, &s| a.max(s));
        let mut out = Vec::new();
        if smax == 0.0 {
            return out;
        }
        for i in 0..sv.len() {
            if sv[i] > rel_tol * smax {
                let col = DVector::from_column_slice(u.column(i).as_slice());
                let x = self.codomain.unwhiten(&col);
                out.push(Coefficients { basis: self.codomain.clone(), values: x });
            }
        }
        out
    }

    /// Stack operators with a common domain into one operator onto the
    /// concatenated codomain (joint constraint assembly).
    pub fn stack_outputs(id: &str, ops: &[&OperatorMatrix<T>]) -> OperatorMatrix<T> {
        assert!(!ops.is_empty());
        let domain = ops[0].domain.clone();
        for op in ops {
            assert_eq!(op.domain.dim(), domain.dim(), "stacked operators need a common domain");
        }
        let parts: Vec<&LabeledBasis> = ops.iter().map(|o| o.codomain.as_ref()).collect();
        let codomain = LabeledBasis::stack(id, &parts);
        let rows: usize = ops.iter().map(|o| o.codomain.dim()).sum();
        let mut entries = DMatrix::zeros(rows, domain.dim());
        let mut off = 0;
        for op in ops {
            entries
                .view_mut((off, 0), (op.codomain.dim(), domain.dim()))
                .copy_from(&op.entries);
            off += op.codomain.dim();
        }
        OperatorMatrix { domain, codomain, entries }
    }

    pub fn compose(&self, inner: &OperatorMatrix<T>) -> OperatorMatrix<T> {
        assert_eq!(self.domain.dim(), inner.codomain.dim());
        OperatorMatrix {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            entries: &self.entries * &inner.entries,
        }
    }
}

/// Gram-orthonormal basis of the orthogonal complement of `span` inside its
/// basis. `span` vectors need not be orthonormal.
pub fn orthogonal_complement<T: Scalar>(
    basis: &Arc<LabeledBasis>,
    span: &[Coefficients<T>],
    rel_tol: f64,
) -> Vec<Coefficients<T>> {
    let n = basis.dim();
    if span.is_empty() {
        // complement of {0}: any Gram-orthonormal basis
        let id = OperatorMatrix::<T>::zero(basis.clone(), LabeledBasis::euclidean("aux-zero", 0));
        return id.kernel_basis(rel_tol);
    }
    // rows of C are ⟨s_i, ·⟩ = s_iᴴ G; kernel of C is the complement
    let g = basis.gram_dense::<T>();
    let mut c = DMatrix::zeros(span.len(), n);
    for (i, s) in span.iter().enumerate() {
        let gs = &g * &s.values;
        for j in 0..n {
            c[(i, j)] = gs[j].conjugate();
        }
    }
    let op = OperatorMatrix {
        domain: basis.clone(),
        codomain: LabeledBasis::euclidean("aux-rows", span.len()),
        entries: c,
    };
    op.kernel_basis(rel_tol)
}
