//! Nonlinear integrability residuals of deformation pairs.
//!
//! The deformed bundle E_ω = span{ē − ω₁e, e₃ − ω₂e} is involutive iff the
//! residual R(ω) = (∂̄+∂_t)ω + ½[ω,ω] vanishes, where in frame components
//!   (∂̄+∂_t)ω = e₃ω₁ − ēω₂ − 4iω₁,
//!   ½[ω,ω]   = ω₁(eω₂) − ω₂(eω₁) − 4iω₂²,
//! both derived from the bracket reduction modulo E_ω; the normalization is
//! validated against the flow-pullback oracle. The contact condition on
//! (ω, α) is Q(ω, α) = dα(ē−ω₁e, e₃−ω₂e) − dη(ω·, ·) − dη(·, ω·) restricted
//! to E, which expands to dα(ē,e₃) − ω₁dα(e,e₃) − ω₂dα(ē,e) + 4iω₂.

use nalgebra::DVector;
use num_complex::Complex64;
use su2_geometry::clebsch::{band_split, product};

use crate::fields::Spaces;

type C64 = Complex64;

/// A residual split into the original band and the convolution tail.
#[derive(Debug, Clone)]
pub struct ResidualSplit {
    /// coefficients on the doubled band
    pub values: DVector<C64>,
    pub in_band_norm: f64,
    pub tail_norm: f64,
}

impl ResidualSplit {
    pub fn total_norm(&self) -> f64 {
        (self.in_band_norm.powi(2) + self.tail_norm.powi(2)).sqrt()
    }
}

fn embed_ext(spaces: &Spaces, v: &DVector<C64>) -> DVector<C64> {
    let mut out = DVector::<C64>::zeros(spaces.wb_ext.dim());
    for (pos, &(tj, tm, tn)) in spaces.wb.labels.iter().enumerate() {
        let p = spaces.wb_ext.position(tj, tm, tn).unwrap();
        out[p] = v[pos];
    }
    out
}

fn split(spaces: &Spaces, values: DVector<C64>) -> ResidualSplit {
    let (in_band, tail) = band_split(&spaces.wb_ext, &values, spaces.band);
    ResidualSplit { values, in_band_norm: in_band, tail_norm: tail }
}

/// Maurer–Cartan residual of ω = (ω₁, ω₂), exact in the doubled band.
pub fn mc_sasaki_residual(spaces: &Spaces, o1: &DVector<C64>, o2: &DVector<C64>) -> ResidualSplit {
    // linear part stays in band
    let linear = &spaces.x_e3 * o1 - &spaces.x_ebar * o2 - o1 * C64::new(0.0, 4.0);
    let mut values = embed_ext(spaces, &linear);
    // quadratic part by Clebsch–Gordan convolution
    let e_o1 = &spaces.x_e * o1;
    let e_o2 = &spaces.x_e * o2;
    values += product(&spaces.wb, o1, &spaces.wb, &e_o2, &spaces.wb_ext);
    values -= product(&spaces.wb, o2, &spaces.wb, &e_o1, &spaces.wb_ext);
    values -= product(&spaces.wb, o2, &spaces.wb, o2, &spaces.wb_ext) * C64::new(0.0, 4.0);
    split(spaces, values)
}

/// Contact integrability residual Q(ω, α), exact in the doubled band.
pub fn integrability_q(
    spaces: &Spaces,
    o1: &DVector<C64>,
    o2: &DVector<C64>,
    alpha: &DVector<f64>,
) -> ResidualSplit {
    let comps = spaces.alpha_components(alpha);
    let d = spaces.d_alpha(&comps);
    // dα(ē, e₃), dα(e, e₃), dα(ē, e)
    let da_ebar_e3 = &d[0][2] - &d[1][2] * C64::i();
    let da_e_e3 = &d[0][2] + &d[1][2] * C64::i();
    let da_ebar_e = &d[0][1] * C64::new(0.0, 2.0); // dα(ē,e) = 2i·dα(e₁,e₂)
    let mut values = embed_ext(spaces, &da_ebar_e3);
    values += embed_ext(spaces, &(o2 * C64::new(0.0, 4.0)));
    values -= product(&spaces.wb, o1, &spaces.wb, &da_e_e3, &spaces.wb_ext);
    values -= product(&spaces.wb, o2, &spaces.wb, &da_ebar_e, &spaces.wb_ext);
    split(spaces, values)
}

/// Linearizations at the origin (band-exact matrices on parameter spaces).
pub mod linear {
    use numerics::{LabeledBasis, OperatorMatrix};

    use crate::fields::{real_operator, split_c, Spaces};
    use nalgebra::DVector;
    use num_complex::Complex64;

    type C64 = Complex64;

    /// ω-params → realified coefficients of e₃ω₁ − ēω₂ − 4iω₁.
    pub fn mc_linearization(spaces: &Spaces) -> OperatorMatrix<f64> {
        let n = spaces.n();
        real_operator(
            spaces.omega_basis.clone(),
            LabeledBasis::euclidean("mc-lin-out", 2 * n),
            |x| {
                let (o1, o2) = spaces.omega_components(x);
                let v = &spaces.x_e3 * &o1 - &spaces.x_ebar * &o2 - &o1 * C64::new(0.0, 4.0);
                split_c(&v)
            },
        )
    }

    /// (ω, α)-params → realified coefficients of dα(ē,e₃) + 4iω₂.
    pub fn q_linearization(spaces: &Spaces) -> OperatorMatrix<f64> {
        let n = spaces.n();
        let no = spaces.omega_basis.dim();
        real_operator(
            spaces.pair_basis.clone(),
            LabeledBasis::euclidean("q-lin-out", 2 * n),
            move |x| {
                let omega = DVector::from_fn(no, |i, _| x[i]);
                let alpha = DVector::from_fn(spaces.alpha_basis.dim(), |i, _| x[no + i]);
                let (_o1, o2) = spaces.omega_components(&omega);
                let comps = spaces.alpha_components(&alpha);
                let v = spaces.d_alpha_restricted(&comps) + &o2 * C64::new(0.0, 4.0);
                split_c(&v)
            },
        )
    }
}
