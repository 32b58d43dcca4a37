//! Computed slice data.

use numerics::{Coefficients, Scalar};

/// Tolerances a slice was built and is probed with.
#[derive(Debug, Clone)]
pub struct SliceTolerances {
    pub kernel_rel_tol: f64,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    pub chart_radius: f64,
}

impl Default for SliceTolerances {
    fn default() -> Self {
        SliceTolerances {
            kernel_rel_tol: numerics::KERNEL_REL_TOL,
            newton_tol: 1e-10,
            newton_max_iter: 50,
            chart_radius: 0.1,
        }
    }
}

/// Bases describing the local slice at the origin: a complement of the
/// isotropy directions in the group chart, the orbit tangent F = Im P, its
/// orthogonal complement F⊥ = Ker P*, and the slice tangent cut out of F⊥ by
/// the linearized integrability residual.
#[derive(Debug, Clone)]
pub struct SliceModel<T: Scalar> {
    /// Gram-orthonormal basis of Ker P (isotropy directions in the group chart).
    pub ker_p: Vec<Coefficients<T>>,
    /// Gram-orthonormal complement of Ker P in the group chart.
    pub e_perp: Vec<Coefficients<T>>,
    /// Gram-orthonormal basis of Im P in the structure tangent.
    pub f: Vec<Coefficients<T>>,
    /// Gram-orthonormal basis of Ker P* (transverse slice directions).
    pub f_perp: Vec<Coefficients<T>>,
    /// Joint kernel of P* and the linearized integrability residual.
    pub k_tangent: Vec<Coefficients<T>>,
    pub tolerances: SliceTolerances,
}

impl<T: Scalar> SliceModel<T> {
    pub fn dim_f(&self) -> usize {
        self.f.len()
    }

    pub fn dim_f_perp(&self) -> usize {
        self.f_perp.len()
    }

    pub fn dim_k_tangent(&self) -> usize {
        self.k_tangent.len()
    }
}
