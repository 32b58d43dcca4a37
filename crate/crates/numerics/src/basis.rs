//! Labeled bases and coefficient vectors.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::BasisError;
use crate::Scalar;

/// A mode label: one integer, or a tuple of integers flattened into a vector.
/// Half-integer quantum numbers are stored doubled so they stay integral.
pub type Label = Vec<i32>;

/// Gram matrix of a basis. Most spectral bases are orthogonal, so the
/// diagonal cases avoid factorizations entirely.
#[derive(Debug, Clone)]
pub enum Gram {
    Identity,
    Diagonal(DVector<f64>),
    /// Dense symmetric positive-definite Gram together with its Cholesky
    /// factor L (G = L Lᵀ), computed once at construction.
    Dense {
        matrix: DMatrix<f64>,
        chol_l: DMatrix<f64>,
    },
}

impl Gram {
    /// Dense Gram from a symmetric positive-definite matrix; the Cholesky
    /// factor is computed (and the matrix validated) by `LabeledBasis::new`.
    pub fn dense(matrix: DMatrix<f64>) -> Self {
        Gram::Dense { matrix, chol_l: DMatrix::zeros(0, 0) }
    }

    fn validate_dense(matrix: DMatrix<f64>) -> Result<Self, BasisError> {
        let n = matrix.nrows();
        let scale = matrix.amax().max(1e-300);
        let mut asym = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                asym = asym.max((matrix[(i, j)] - matrix[(j, i)]).abs());
            }
        }
        if asym > 1e-14 * scale {
            return Err(BasisError::GramNotSymmetric { asymmetry: asym / scale });
        }
        let chol = nalgebra::Cholesky::new(matrix.clone()).ok_or(BasisError::GramNotPositive)?;
        Ok(Gram::Dense { matrix, chol_l: chol.l() })
    }
}

/// A finite orthogonal-spectral truncation of a function or section space:
/// ordered mode labels plus the Gram matrix ⟨b_i, b_j⟩ of the truncated basis.
#[derive(Debug, Clone)]
pub struct LabeledBasis {
    id: String,
    labels: Vec<Label>,
    gram: Gram,
}

impl LabeledBasis {
    pub fn new(id: impl Into<String>, labels: Vec<Label>, gram: Gram) -> Result<Arc<Self>, BasisError> {
        let id = id.into();
        let n = labels.len();
        // labels must be unique
        let mut sorted: Vec<(&Label, usize)> = labels.iter().zip(0..).collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(BasisError::DuplicateLabel { index: w[1].1 });
            }
        }
        let gram = match gram {
            Gram::Identity => Gram::Identity,
            Gram::Diagonal(d) => {
                if d.len() != n {
                    return Err(BasisError::DimensionMismatch { gram_dim: d.len(), label_count: n });
                }
                if d.iter().any(|&x| x <= 0.0) {
                    return Err(BasisError::GramNotPositive);
                }
                Gram::Diagonal(d)
            }
            Gram::Dense { matrix, .. } => {
                if matrix.nrows() != n || matrix.ncols() != n {
                    return Err(BasisError::DimensionMismatch { gram_dim: matrix.nrows(), label_count: n });
                }
                Gram::validate_dense(matrix)?
            }
        };
        Ok(Arc::new(LabeledBasis { id, labels, gram }))
    }

    /// Basis with identity Gram and labels 0..dim.
    pub fn euclidean(id: impl Into<String>, dim: usize) -> Arc<Self> {
        let labels = (0..dim as i32).map(|i| vec![i]).collect();
        LabeledBasis::new(id, labels, Gram::Identity).expect("euclidean basis is always valid")
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn gram(&self) -> &Gram {
        &self.gram
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Gram inner product ⟨u, w⟩ = uᴴ G w (conjugate-linear in `u`).
    pub fn inner<T: Scalar>(&self, u: &DVector<T>, w: &DVector<T>) -> T {
        assert_eq!(u.len(), self.dim());
        assert_eq!(w.len(), self.dim());
        match &self.gram {
            Gram::Identity => u.dotc(w),
            Gram::Diagonal(d) => {
                let mut acc = T::zero();
                for i in 0..u.len() {
                    acc += u[i].conjugate() * w[i] * T::from_real(d[i]);
                }
                acc
            }
            Gram::Dense { matrix, .. } => {
                let gw = lift_mul(matrix, w);
                u.dotc(&gw)
            }
        }
    }

    pub fn norm<T: Scalar>(&self, u: &DVector<T>) -> f64 {
        self.inner(u, u).real().max(0.0).sqrt()
    }

    /// y = Lᵀ x where G = L Lᵀ (coordinates in which the Gram is the identity).
    pub fn whiten<T: Scalar>(&self, x: &DVector<T>) -> DVector<T> {
        match &self.gram {
            Gram::Identity => x.clone(),
            Gram::Diagonal(d) => {
                DVector::from_iterator(x.len(), x.iter().zip(d.iter()).map(|(&xi, &di)| xi * T::from_real(di.sqrt())))
            }
            Gram::Dense { chol_l, .. } => lift_mul(&chol_l.transpose(), x),
        }
    }

    /// x = L⁻ᵀ y, inverse of [`Self::whiten`].
    pub fn unwhiten<T: Scalar>(&self, y: &DVector<T>) -> DVector<T> {
        match &self.gram {
            Gram::Identity => y.clone(),
            Gram::Diagonal(d) => {
                DVector::from_iterator(y.len(), y.iter().zip(d.iter()).map(|(&yi, &di)| yi / T::from_real(di.sqrt())))
            }
            Gram::Dense { chol_l, .. } => lift_solve_upper(&chol_l.transpose(), y),
        }
    }

    /// Solve G x = b.
    pub fn gram_solve<T: Scalar>(&self, b: &DVector<T>) -> DVector<T> {
        match &self.gram {
            Gram::Identity => b.clone(),
            Gram::Diagonal(d) => {
                DVector::from_iterator(b.len(), b.iter().zip(d.iter()).map(|(&bi, &di)| bi / T::from_real(di)))
            }
            Gram::Dense { chol_l, .. } => {
                let y = lift_solve_lower(chol_l, b);
                lift_solve_upper(&chol_l.transpose(), &y)
            }
        }
    }

    /// G as a dense matrix lifted to the scalar type (test and audit helper).
    pub fn gram_dense<T: Scalar>(&self) -> DMatrix<T> {
        let n = self.dim();
        match &self.gram {
            Gram::Identity => DMatrix::identity(n, n),
            Gram::Diagonal(d) => DMatrix::from_fn(n, n, |i, j| if i == j { T::from_real(d[i]) } else { T::zero() }),
            Gram::Dense { matrix, .. } => matrix.map(T::from_real),
        }
    }

    /// Concatenate bases into one block basis (block-diagonal Gram). Labels
    /// are prefixed with the block index to stay unique.
    pub fn stack(id: impl Into<String>, parts: &[&LabeledBasis]) -> Arc<Self> {
        let mut labels = Vec::new();
        for (bi, part) in parts.iter().enumerate() {
            for l in part.labels() {
                let mut nl = Vec::with_capacity(l.len() + 1);
                nl.push(bi as i32);
                nl.extend_from_slice(l);
                labels.push(nl);
            }
        }
        let dense = parts.iter().any(|p| matches!(p.gram(), Gram::Dense { .. }));
        let gram = if dense {
            let n = labels.len();
            let mut g = DMatrix::zeros(n, n);
            let mut off = 0;
            for part in parts {
                let d = part.dim();
                g.view_mut((off, off), (d, d)).copy_from(&part.gram_dense::<f64>());
                off += d;
            }
            let chol = nalgebra::Cholesky::new(g.clone()).expect("block-diagonal SPD");
            Gram::Dense { matrix: g, chol_l: chol.l() }
        } else if parts.iter().all(|p| matches!(p.gram(), Gram::Identity)) {
            Gram::Identity
        } else {
            let mut d = Vec::new();
            for part in parts {
                match part.gram() {
                    Gram::Identity => d.extend(std::iter::repeat(1.0).take(part.dim())),
                    Gram::Diagonal(v) => d.extend(v.iter().copied()),
                    Gram::Dense { .. } => unreachable!(),
                }
            }
            Gram::Diagonal(DVector::from_vec(d))
        };
        LabeledBasis::new(id, labels, gram).expect("stacked basis is valid")
    }
}

/// Coefficient vector of an element expanded in a labeled basis.
#[derive(Debug, Clone)]
pub struct Coefficients<T: Scalar> {
    pub basis: Arc<LabeledBasis>,
    pub values: DVector<T>,
}

impl<T: Scalar> Coefficients<T> {
    pub fn new(basis: Arc<LabeledBasis>, values: DVector<T>) -> Result<Self, BasisError> {
        if values.len() != basis.dim() {
            return Err(BasisError::CoefficientLength {
                basis: basis.id().to_string(),
                got: values.len(),
                want: basis.dim(),
            });
        }
        Ok(Coefficients { basis, values })
    }

    pub fn zero(basis: Arc<LabeledBasis>) -> Self {
        let n = basis.dim();
        Coefficients { basis, values: DVector::zeros(n) }
    }

    pub fn norm(&self) -> f64 {
        self.basis.norm(&self.values)
    }

    pub fn inner(&self, other: &Self) -> T {
        self.basis.inner(&self.values, &other.values)
    }
}

fn lift_mul<T: Scalar>(m: &DMatrix<f64>, x: &DVector<T>) -> DVector<T> {
    let mut out = DVector::zeros(m.nrows());
    for i in 0..m.nrows() {
        let mut acc = T::zero();
        for j in 0..m.ncols() {
            acc += T::from_real(m[(i, j)]) * x[j];
        }
        out[i] = acc;
    }
    out
}

/// Forward substitution with a real lower-triangular factor (crate helper).
pub(crate) fn lift_solve_lower_pub<T: Scalar>(l: &DMatrix<f64>, b: &DVector<T>) -> DVector<T> {
    lift_solve_lower(l, b)
}

fn lift_solve_lower<T: Scalar>(l: &DMatrix<f64>, b: &DVector<T>) -> DVector<T> {
    let n = l.nrows();
    let mut x = DVector::zeros(n);
    for i in 0..n {
        let mut acc = b[i];
        for j in 0..i {
            acc -= T::from_real(l[(i, j)]) * x[j];
        }
        x[i] = acc / T::from_real(l[(i, i)]);
    }
    x
}

fn lift_solve_upper<T: Scalar>(u: &DMatrix<f64>, b: &DVector<T>) -> DVector<T> {
    let n = u.nrows();
    let mut x = DVector::zeros(n);
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in (i + 1)..n {
            acc -= T::from_real(u[(i, j)]) * x[j];
        }
        x[i] = acc / T::from_real(u[(i, i)]);
    }
    x
}
