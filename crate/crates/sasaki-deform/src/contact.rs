//! Contact-form deformation operators: the group is generated by functions
//! times the Reeb field plus the finite-dimensional space of holomorphic
//! basic transverse fields; P(h, χ_N) = dh + i_{χ_N} dη.

use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;
use numerics::operator::orthogonal_complement;
use numerics::{Coefficients, LabeledBasis, OperatorMatrix, KERNEL_REL_TOL};

use crate::fields::{conj_coeffs, merge_c, real_operator, split_c, Spaces};

type C64 = Complex64;

/// The transverse holomorphic field space 𝒳_N: u with ēu = 0 and e₃u = 2iu
/// (the kernel of the linearized transverse structure operator), as
/// Gram-orthonormal u-parameter vectors.
pub fn xn_space(spaces: &Spaces) -> Vec<Coefficients<f64>> {
    let op = omega_part_operator(spaces);
    op.kernel_basis(KERNEL_REL_TOL)
}

/// u ↦ ((∂̄+∂_t)u as (ω₁, ω₂)) with ω₁ = ēu, ω₂ = (e₃ − 2i)u.
pub fn omega_part_operator(spaces: &Spaces) -> OperatorMatrix<f64> {
    let n = spaces.n();
    real_operator(spaces.u_basis.clone(), spaces.omega_basis.clone(), |x| {
        let u = merge_c(x);
        let o1 = &spaces.x_ebar * &u;
        let o2 = &spaces.x_e3 * &u - &u * C64::new(0.0, 2.0);
        let mut out = DVector::zeros(4 * n);
        for i in 0..n {
            out[i] = o1[i].re;
            out[i + n] = o1[i].im;
            out[2 * n + i] = o2[i].re;
            out[3 * n + i] = o2[i].im;
        }
        out
    })
}

/// α-parameters of i_{χ_N} dη = −4 Im(u) e¹ − 4 Re(u) e² for χ_N = ue + ūē.
pub fn contraction_alpha(spaces: &Spaces, u: &DVector<C64>) -> DVector<f64> {
    let uc = conj_coeffs(&spaces.wb, u);
    let re_u = (u + &uc) * C64::new(0.5, 0.0);
    let im_u = (u - &uc) * C64::new(0.0, -0.5);
    let zero = DVector::<C64>::zeros(spaces.n());
    let comps = [&im_u * C64::new(-4.0, 0.0), &re_u * C64::new(-4.0, 0.0), zero];
    spaces.alpha_from_components(&comps)
}

/// α-parameters of dh for real h-coefficients.
pub fn dh_alpha(spaces: &Spaces, h: &DVector<C64>) -> DVector<f64> {
    let comps = [
        spaces.d_ops[0].apply_vec(h),
        spaces.d_ops[1].apply_vec(h),
        spaces.d_ops[2].apply_vec(h),
    ];
    spaces.alpha_from_components(&comps)
}

/// The contact-deformation operator data: the restricted transverse space
/// 𝒳′_N, the assembled P and its Gram adjoint.
pub struct ContactOperator {
    /// Gram-orthonormal basis of 𝒳_N in u-parameters
    pub xn: Vec<Coefficients<f64>>,
    /// coordinates (in the xn basis) spanning the subspace whose contraction
    /// image lies in Im(d); 𝒳′_N is its orthogonal complement
    pub xn_overlap: Vec<DVector<f64>>,
    /// Gram-orthonormal 𝒳′_N basis in u-parameters
    pub xn_prime: Vec<Coefficients<f64>>,
    /// domain = (h-parameters, 𝒳′_N coordinates)
    pub domain: Arc<LabeledBasis>,
    pub p: OperatorMatrix<f64>,
    pub p_star: OperatorMatrix<f64>,
}

pub fn contact_operator(spaces: &Spaces) -> ContactOperator {
    contact_operator_with_domain(spaces, None)
}

/// Variant with the ξ-coordinate restricted to a subspace of functions
/// (given as parameter vectors); used for the basic-coordinate slice.
pub fn contact_operator_with_domain(
    spaces: &Spaces,
    h_subspace: Option<&[Coefficients<f64>]>,
) -> ContactOperator {
    let xn = xn_space(spaces);
    let nxn = xn.len();
    // image of d on functions, for the overlap computation
    let d_op = real_operator(spaces.real_fn.basis.clone(), spaces.alpha_basis.clone(), |x| {
        dh_alpha(spaces, &spaces.real_fn.embed(x))
    });
    let d_image = d_op.image_basis(KERNEL_REL_TOL);
    // residual of the contraction images against Im(d)
    let xn_coords = LabeledBasis::euclidean("xn-coords", nxn);
    let contraction = real_operator(xn_coords.clone(), spaces.alpha_basis.clone(), |c| {
        let mut u = DVector::<C64>::zeros(spaces.n());
        for (k, b) in xn.iter().enumerate() {
            u += merge_c(&b.values) * C64::new(c[k], 0.0);
        }
        contraction_alpha(spaces, &u)
    });
    let residual = real_operator(xn_coords.clone(), spaces.alpha_basis.clone(), |c| {
        let img = contraction.apply_vec(c);
        let mut proj = DVector::zeros(img.len());
        for b in &d_image {
            let coeff = spaces.alpha_basis.inner(&b.values, &img);
            proj += &b.values * coeff;
        }
        img - proj
    });
    let overlap = residual.kernel_basis(KERNEL_REL_TOL);
    let xn_prime_coords = orthogonal_complement(&xn_coords, &overlap, KERNEL_REL_TOL);
    let xn_prime: Vec<Coefficients<f64>> = xn_prime_coords
        .iter()
        .map(|c| {
            let mut u = DVector::zeros(spaces.u_basis.dim());
            for (k, b) in xn.iter().enumerate() {
                u += &b.values * c.values[k];
            }
            Coefficients::new(spaces.u_basis.clone(), u).unwrap()
        })
        .collect();

    // domain: h-parameters (possibly restricted) ⊕ 𝒳′_N coordinates
    let (h_basis, h_embed): (Arc<LabeledBasis>, Box<dyn Fn(&DVector<f64>) -> DVector<f64>>) =
        match h_subspace {
            None => {
                let b = spaces.real_fn.basis.clone();
                (b, Box::new(|x: &DVector<f64>| x.clone()))
            }
            Some(span) => {
                let span = span.to_vec();
                let b = LabeledBasis::euclidean("h-sub-coords", span.len());
                let nr = spaces.real_fn.dim();
                (
                    b,
                    Box::new(move |c: &DVector<f64>| {
                        let mut h = DVector::zeros(nr);
                        for (k, v) in span.iter().enumerate() {
                            h += &v.values * c[k];
                        }
                        h
                    }),
                )
            }
        };
    let sprime = xn_prime.len();
    let prime_basis = LabeledBasis::euclidean("xn-prime-coords", sprime);
    let domain = LabeledBasis::stack("contact-domain", &[h_basis.as_ref(), prime_basis.as_ref()]);
    let nh = h_basis.dim();
    let xn_prime_cl = xn_prime.clone();
    let p = real_operator(domain.clone(), spaces.alpha_basis.clone(), move |x| {
        let hx = DVector::from_fn(nh, |i, _| x[i]);
        let h = spaces.real_fn.embed(&h_embed(&hx));
        let mut u = DVector::<C64>::zeros(spaces.n());
        for (k, b) in xn_prime_cl.iter().enumerate() {
            u += merge_c(&b.values) * C64::new(x[nh + k], 0.0);
        }
        dh_alpha(spaces, &h) + contraction_alpha(spaces, &u)
    });
    let p_star = p.gram_adjoint();
    ContactOperator { xn, xn_overlap: overlap.iter().map(|c| c.values.clone()).collect(), xn_prime, domain, p, p_star }
}

/// P(h, χ_N) = dh + i_{χ_N}dη with χ_N given by 𝒳_N coordinates.
pub fn contact_p(spaces: &Spaces, op: &ContactOperator, h: &DVector<C64>, xn_coords: &DVector<f64>) -> DVector<f64> {
    let mut u = DVector::<C64>::zeros(spaces.n());
    for (k, b) in op.xn.iter().enumerate() {
        u += merge_c(&b.values) * C64::new(xn_coords[k], 0.0);
    }
    dh_alpha(spaces, h) + contraction_alpha(spaces, &u)
}

/// The adjoint by its closed formula: P*α = (d*α, −proj(i_{α♯}dη)♯), the
/// second component projected onto 𝒳′_N. Matches `ContactOperator::p_star`.
pub fn contact_p_star(spaces: &Spaces, op: &ContactOperator, alpha: &DVector<f64>) -> DVector<f64> {
    // d* through the Gram adjoint of d on functions
    let d_op = real_operator(spaces.real_fn.basis.clone(), spaces.alpha_basis.clone(), |x| {
        dh_alpha(spaces, &spaces.real_fn.embed(x))
    });
    let dstar = d_op.gram_adjoint().apply_vec(alpha);
    // −(i_{α♯}dη)♯ in u-coordinates: u = −α₂ − iα₁
    let comps = spaces.alpha_components(alpha);
    let u = -(&comps[1]) - &comps[0] * C64::i();
    let u_params = split_c(&u);
    let u_coeff = Coefficients::new(spaces.u_basis.clone(), u_params).unwrap();
    let sprime = op.xn_prime.len();
    let mut out = DVector::zeros(op.domain.dim());
    let nh = op.domain.dim() - sprime;
    assert_eq!(nh, dstar.len(), "formula route assumes the unrestricted function domain");
    for i in 0..nh {
        out[i] = dstar[i];
    }
    for (k, b) in op.xn_prime.iter().enumerate() {
        out[nh + k] = b.inner(&u_coeff);
    }
    out
}

/// Report for the contact slice at a band.
#[derive(Debug)]
pub struct KetaReport {
    pub band: i32,
    /// real dimension of the slice tangent
    pub dim: usize,
    /// real dimension of 𝒳_N (nonzero flags the regime where the slice need
    /// not be a local moduli space)
    pub dim_xn: usize,
    pub dim_xn_prime: usize,
    /// max ‖P*α‖/‖α‖ over the basic 1-forms (their differentials are
    /// automatically transversely (1,1) here); measures the containment of
    /// basic directions in the slice tangent
    pub basic_containment_residual: f64,
    /// slice tangent basis on the α-parameter space
    pub basis: Vec<Coefficients<f64>>,
}

/// Slice tangent of the contact deformation: {α : P*α = 0, dα|_E = 0}.
pub fn keta_tangent(spaces: &Spaces) -> KetaReport {
    let op = contact_operator(spaces);
    keta_from_operator(spaces, &op, false)
}

/// Variant with ξ-coefficient restricted to basic functions and the extra
/// constraint i_ξα = 0.
pub fn keta_prime_tangent(spaces: &Spaces) -> KetaReport {
    let basic = basic_h_subspace(spaces);
    let op = contact_operator_with_domain(spaces, Some(&basic));
    keta_from_operator(spaces, &op, true)
}

/// Real-parameter basis of basic functions (e₃h = 0).
pub fn basic_h_subspace(spaces: &Spaces) -> Vec<Coefficients<f64>> {
    let op = real_operator(spaces.real_fn.basis.clone(), spaces.real_fn.basis.clone(), |x| {
        let h = spaces.real_fn.embed(x);
        spaces.real_fn.project(&spaces.d_ops[2].apply_vec(&h))
    });
    op.kernel_basis(KERNEL_REL_TOL)
}

fn keta_from_operator(spaces: &Spaces, op: &ContactOperator, with_xi_constraint: bool) -> KetaReport {
    // constraint rows: P*α = 0 and dα|_E = 0 (realified complex function)
    let n = spaces.n();
    let d_restrict = real_operator(
        spaces.alpha_basis.clone(),
        LabeledBasis::euclidean("dalpha-E", 2 * n),
        |x| {
            let comps = spaces.alpha_components(x);
            let v = spaces.d_alpha_restricted(&comps);
            split_c(&v)
        },
    );
    let mut ops: Vec<&OperatorMatrix<f64>> = vec![&op.p_star, &d_restrict];
    let xi_rows;
    if with_xi_constraint {
        // i_ξ α = α₃ = 0: select the third component parameters
        let nr = spaces.real_fn.dim();
        xi_rows = real_operator(
            spaces.alpha_basis.clone(),
            LabeledBasis::euclidean("xi-contraction", nr),
            move |x| DVector::from_fn(nr, |i, _| x[2 * nr + i]),
        );
        ops.push(&xi_rows);
    }
    let stacked = OperatorMatrix::stack_outputs("keta-constraints", &ops);
    let basis = stacked.kernel_basis(KERNEL_REL_TOL);

    // containment of basic 1-forms: α₃ = 0, L_ξα = 0
    let basic_forms = basic_one_forms(spaces);
    let mut worst = 0.0f64;
    for b in &basic_forms {
        let r = op.p_star.apply_vec(&b.values);
        let rn = op.domain.norm(&r) / spaces.alpha_basis.norm(&b.values);
        worst = worst.max(rn);
    }
    KetaReport {
        band: spaces.band,
        dim: basis.len(),
        dim_xn: op.xn.len(),
        dim_xn_prime: op.xn_prime.len(),
        basic_containment_residual: worst,
        basis,
    }
}

/// Basic 1-forms: α₃ = 0, i_ξdα = 0; with transverse complex dimension one
/// their differential is automatically (1,1) on the transverse bundle.
pub fn basic_one_forms(spaces: &Spaces) -> Vec<Coefficients<f64>> {
    let n = spaces.n();
    let nr = spaces.real_fn.dim();
    let lie = real_operator(
        spaces.alpha_basis.clone(),
        LabeledBasis::euclidean("lie-xi-alpha", 2 * n * 2 + nr),
        move |x| {
            let comps = spaces.alpha_components(x);
            let d = spaces.d_alpha(&comps);
            // i_ξ dα components on e₁, e₂ (e₃ slot is antisymmetric-zero)
            let a = &d[2][0];
            let b = &d[2][1];
            let mut out = DVector::zeros(4 * n + nr);
            for i in 0..n {
                out[i] = a[i].re;
                out[n + i] = a[i].im;
                out[2 * n + i] = b[i].re;
                out[3 * n + i] = b[i].im;
            }
            // α₃ parameters
            for i in 0..nr {
                out[4 * n + i] = x[2 * nr + i];
            }
            out
        },
    );
    lie.kernel_basis(KERNEL_REL_TOL)
}

/// Dense-oracle dimension of the contact slice: replaces the adjoint-kernel
/// route with an image-orthogonality route (α ⊥ Im P plus the same linear
/// constraints), for independent cross-checking.
pub fn keta_dim_image_route(spaces: &Spaces) -> usize {
    let op = contact_operator(spaces);
    let image = op.p.image_basis(KERNEL_REL_TOL);
    let n = spaces.n();
    let rows_img = real_operator(
        spaces.alpha_basis.clone(),
        LabeledBasis::euclidean("img-orth", image.len()),
        |x| {
            DVector::from_fn(image.len(), |k, _| spaces.alpha_basis.inner(&image[k].values, x))
        },
    );
    let d_restrict = real_operator(
        spaces.alpha_basis.clone(),
        LabeledBasis::euclidean("dalpha-E2", 2 * n),
        |x| {
            let comps = spaces.alpha_components(x);
            split_c(&spaces.d_alpha_restricted(&comps))
        },
    );
    let stacked = OperatorMatrix::stack_outputs("keta-oracle", &[&rows_img, &d_restrict]);
    stacked.kernel_basis(KERNEL_REL_TOL).len()
}
