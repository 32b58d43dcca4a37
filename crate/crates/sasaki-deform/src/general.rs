//! General deformation operator: all diffeomorphisms act, so the group chart
//! is the full vector-field space χ = ue + ūē + h e₃ and
//! P(χ) = ((∂̄+∂_t)χ^{1,0}, L_χη) = ((ēu, (e₃−2i)u), dh + i_{χ_N}dη).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use numerics::{Coefficients, LabeledBasis, OperatorMatrix, KERNEL_REL_TOL};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::contact::{contraction_alpha, dh_alpha, omega_part_operator, xn_space};
use crate::fields::{merge_c, real_operator, split_c, Spaces};

type C64 = Complex64;

pub struct GeneralOperator {
    pub p: OperatorMatrix<f64>,
    /// adjoint of P restricted to the complement Γ₀ (the u-component of the
    /// raw Gram adjoint composed with the orthogonal projection onto Γ₀)
    pub p_star: OperatorMatrix<f64>,
    /// the small subspace removed from the u-domain (inside 𝒳_N, contraction
    /// image inside Im(d)); Γ₀ is its orthogonal complement
    pub gamma0_removed: Vec<Coefficients<f64>>,
}

pub fn general_operator(spaces: &Spaces) -> GeneralOperator {
    let p = general_p_matrix(spaces);
    // the removed directions: u ∈ 𝒳_N with i_{χ_N}dη ∈ Im(d)
    let xn = xn_space(spaces);
    let d_op = real_operator(spaces.real_fn.basis.clone(), spaces.alpha_basis.clone(), |x| {
        dh_alpha(spaces, &spaces.real_fn.embed(x))
    });
    let d_image = d_op.image_basis(KERNEL_REL_TOL);
    let xn_coords = LabeledBasis::euclidean("xn-coords-general", xn.len());
    let residual = real_operator(xn_coords.clone(), spaces.alpha_basis.clone(), |c| {
        let mut u = DVector::<C64>::zeros(spaces.n());
        for (k, b) in xn.iter().enumerate() {
            u += merge_c(&b.values) * C64::new(c[k], 0.0);
        }
        let img = contraction_alpha(spaces, &u);
        let mut proj = DVector::zeros(img.len());
        for b in &d_image {
            let coeff = spaces.alpha_basis.inner(&b.values, &img);
            proj += &b.values * coeff;
        }
        img - proj
    });
    let overlap_coords = residual.kernel_basis(KERNEL_REL_TOL);
    let mut removed: Vec<Coefficients<f64>> = overlap_coords
        .iter()
        .map(|c| {
            let mut u = DVector::zeros(spaces.u_basis.dim());
            for (k, b) in xn.iter().enumerate() {
                u += &b.values * c.values[k];
            }
            Coefficients::new(spaces.u_basis.clone(), u).unwrap()
        })
        .collect();
    // orthonormalize within the u-space Gram
    removed = orthonormalize(spaces, removed);
    let p_star_raw = p.gram_adjoint();
    let nr = spaces.real_fn.dim();
    let removed_cl = removed.clone();
    let p_star = {
        let entries = {
            let mut m = p_star_raw.entries.clone();
            // project the u-block rows: subtract removed-direction components
            for col in 0..m.ncols() {
                let u_rows = m.nrows() - 2 * spaces.n();
                let mut uvec = DVector::zeros(2 * spaces.n());
                for i in 0..2 * spaces.n() {
                    uvec[i] = m[(u_rows + i, col)];
                }
                let coeff = Coefficients::new(spaces.u_basis.clone(), uvec.clone()).unwrap();
                let mut proj = DVector::zeros(2 * spaces.n());
                for b in &removed_cl {
                    let c = b.inner(&coeff);
                    proj += &b.values * c;
                }
                for i in 0..2 * spaces.n() {
                    m[(u_rows + i, col)] = uvec[i] - proj[i];
                }
            }
            m
        };
        OperatorMatrix::new(p_star_raw.domain.clone(), p_star_raw.codomain.clone(), entries).unwrap()
    };
    let _ = nr;
    GeneralOperator { p, p_star, gamma0_removed: removed }
}

fn orthonormalize(spaces: &Spaces, vecs: Vec<Coefficients<f64>>) -> Vec<Coefficients<f64>> {
    let mut out: Vec<Coefficients<f64>> = Vec::new();
    for mut v in vecs {
        for b in &out {
            let c = b.inner(&v);
            v.values -= &b.values * c;
        }
        let n = v.norm();
        if n > 1e-10 {
            v.values /= n;
            out.push(v);
        }
    }
    let _ = spaces;
    out
}

/// Matrix of P on (h, u)-parameters.
pub fn general_p_matrix(spaces: &Spaces) -> OperatorMatrix<f64> {
    let omega_op = omega_part_operator(spaces);
    real_operator(spaces.chi_basis.clone(), spaces.pair_basis.clone(), move |x| {
        let (h, u) = spaces.chi_components(x);
        let omega = omega_op.apply_vec(&split_c(&u));
        let alpha = dh_alpha(spaces, &h) + contraction_alpha(spaces, &u);
        let mut out = DVector::zeros(spaces.pair_basis.dim());
        for i in 0..omega.len() {
            out[i] = omega[i];
        }
        for i in 0..alpha.len() {
            out[omega.len() + i] = alpha[i];
        }
        out
    })
}

/// P applied to a vector field given by components (h, u).
pub fn general_p(spaces: &Spaces, h: &DVector<C64>, u: &DVector<C64>) -> (DVector<C64>, DVector<C64>, DVector<f64>) {
    let o1 = &spaces.x_ebar * u;
    let o2 = &spaces.x_e3 * u - u * C64::new(0.0, 2.0);
    let alpha = dh_alpha(spaces, h) + contraction_alpha(spaces, u);
    (o1, o2, alpha)
}

/// The adjoint by its closed formula: P*(ω, α) = (d*α, (∂̄+∂_t)*ω −
/// proj_{Γ₀}(i_{α♯}dη)♯). Matches the matrix route of `general_operator`.
pub fn general_p_star(
    spaces: &Spaces,
    op: &GeneralOperator,
    omega: &DVector<f64>,
    alpha: &DVector<f64>,
) -> DVector<f64> {
    let d_op = real_operator(spaces.real_fn.basis.clone(), spaces.alpha_basis.clone(), |x| {
        dh_alpha(spaces, &spaces.real_fn.embed(x))
    });
    let dstar = d_op.gram_adjoint().apply_vec(alpha);
    let omega_op = omega_part_operator(spaces);
    let dbar_star = omega_op.gram_adjoint().apply_vec(omega);
    // −(i_{α♯}dη)♯ in u-coordinates: u = −α₂ − iα₁
    let comps = spaces.alpha_components(alpha);
    let u_alpha = -(&comps[1]) - &comps[0] * C64::i();
    let mut u_total = Coefficients::new(spaces.u_basis.clone(), dbar_star + split_c(&u_alpha)).unwrap();
    // Γ₀ projection
    for b in &op.gamma0_removed {
        let c = b.inner(&u_total);
        u_total.values -= &b.values * c;
    }
    let nr = spaces.real_fn.dim();
    let mut out = DVector::zeros(nr + 2 * spaces.n());
    for i in 0..nr {
        out[i] = dstar[i];
    }
    for i in 0..2 * spaces.n() {
        out[nr + i] = u_total.values[i];
    }
    out
}

#[derive(Debug, Clone)]
pub struct SymbolReport {
    pub samples: usize,
    pub min_singular_value: f64,
    /// sample attaining the minimum (covector in frame components)
    pub argmin_covector: [f64; 3],
}

/// Pointwise principal symbol of P at random unit covectors: the Gram-scaled
/// matrix χ ↦ (v(ē)·χ^{1,0}, v(ξ)·χ^{1,0}, (i_χη)·v) must be injective.
pub fn symbol_check(samples: usize, seed: u64) -> SymbolReport {
    assert!(samples >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_sv = f64::INFINITY;
    let mut argmin = [0.0; 3];
    for _ in 0..samples {
        // random unit covector in frame components
        let mut v = [0.0f64; 3];
        loop {
            for x in &mut v {
                *x = rng.gen_range(-1.0..1.0);
            }
            let n2: f64 = v.iter().map(|x| x * x).sum();
            if n2 > 1e-4 && n2 <= 1.0 {
                let n = n2.sqrt();
                for x in &mut v {
                    *x /= n;
                }
                break;
            }
        }
        let sv = symbol_min_singular(v);
        if sv < min_sv {
            min_sv = sv;
            argmin = v;
        }
    }
    SymbolReport { samples, min_singular_value: min_sv, argmin_covector: argmin }
}

/// σ_min of the realified symbol matrix at a covector, with the geometric
/// Gram weights on both sides.
pub fn symbol_min_singular(v: [f64; 3]) -> f64 {
    // unknowns (Re u, Im u, h); domain norms: ‖χ‖² = 4|u|² + h²
    // rows: ω₁ = i·v(ē)·u (weight 1), ω₂ = i·v(ξ)·u (weight √2), α_a = v_a·h
    let v_ebar = C64::new(v[0], -v[1]); // v(ē) = v₁ − i v₂
    let v3 = v[2];
    let mut m = DMatrix::<f64>::zeros(7, 3);
    let iv = C64::i() * v_ebar;
    // i v_ē (x + iy) = (Re - Im parts)
    m[(0, 0)] = iv.re;
    m[(0, 1)] = -iv.im;
    m[(1, 0)] = iv.im;
    m[(1, 1)] = iv.re;
    let s2 = std::f64::consts::SQRT_2;
    // i v₃ (x + iy) scaled by √2
    m[(2, 1)] = -v3 * s2;
    m[(3, 0)] = v3 * s2;
    for a in 0..3 {
        m[(4 + a, 2)] = v[a];
    }
    // domain whitening: u-columns carry weight 2
    for r in 0..7 {
        m[(r, 0)] /= 2.0;
        m[(r, 1)] /= 2.0;
    }
    let sv = nalgebra::SVD::new(m, false, false).singular_values;
    sv.iter().fold(f64::INFINITY, |a, &s| a.min(s))
}
