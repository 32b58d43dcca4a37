use thiserror::Error;

#[derive(Debug, Error)]
pub enum BasisError {
    #[error("gram matrix is not symmetric: max asymmetry {asymmetry:e} exceeds 1e-14 relative")]
    GramNotSymmetric { asymmetry: f64 },
    #[error("gram matrix is not positive definite")]
    GramNotPositive,
    #[error("duplicate label at index {index}")]
    DuplicateLabel { index: usize },
    #[error("gram dimension {gram_dim} does not match label count {label_count}")]
    DimensionMismatch { gram_dim: usize, label_count: usize },
    #[error("coefficient vector has length {got}, basis {basis} has dimension {want}")]
    CoefficientLength { basis: String, got: usize, want: usize },
    #[error("operator expects domain basis {want}, got coefficients on {got}")]
    BasisMismatch { want: String, got: String },
}

#[derive(Debug, Error)]
pub enum NewtonError {
    #[error("slice chart not invertible here (singular Jacobian, residual {residual:e})")]
    SingularJacobian { residual: f64 },
    #[error("no convergence after {iterations} iterations, final residual {residual:e}")]
    NoConvergence { iterations: usize, residual: f64 },
}
