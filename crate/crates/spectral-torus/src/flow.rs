//! Diffeomorphism action on torus deformation coordinates via flows.
//!
//! The time-t flow of a real vector field is integrated pointwise with a
//! fixed-step RK4; the pulled-back antiholomorphic bundle is read off from
//! the Jacobian blocks A = ∂φ/∂z, B = ∂φ/∂z̄ computed spectrally, and
//! projected back onto Fourier coefficients on a grid fine enough for the
//! bands involved.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::complex_ops::{field_basis, form_basis, BeltramiForm};
use crate::fourier::{modes, mu, nu, FourierBasis, TWO_PI};
use crate::grid::{grid_points, grid_to_modes, modes_to_grid};

type C64 = Complex64;

/// A (1,0) vector field χ = χ^i ∂_{z_i} with Fourier coefficients inside a
/// band; the generated real field is χ + χ̄.
#[derive(Debug, Clone)]
pub struct TorusField {
    pub n: usize,
    pub band: i32,
    /// coefficients indexed like [`field_basis`]
    pub coeffs: DVector<C64>,
    fb: FourierBasis,
}

impl TorusField {
    pub fn new(n: usize, band: i32, coeffs: DVector<C64>) -> Self {
        let fb = field_basis(n, band);
        assert_eq!(coeffs.len(), fb.dim());
        TorusField { n, band, coeffs, fb }
    }

    /// Complex coordinate velocities ż_j = χ^j at a real point x ∈ ℝ^{2n}
    /// (coordinates (x_1..x_n, y_1..y_n)).
    pub fn velocity(&self, x: &[f64]) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); self.n];
        for (pos, k) in self.fb.modes.iter().enumerate() {
            let e = FourierBasis::eval_mode(k, x);
            for i in 0..self.n {
                v[i] += self.coeffs[self.fb.index(pos, i)] * e;
            }
        }
        v
    }
}

fn rk4_step(field: &TorusField, x: &mut [f64], h: f64) {
    let n = field.n;
    let eval = |p: &[f64]| -> Vec<f64> {
        let v = field.velocity(p);
        let mut out = vec![0.0; 2 * n];
        for j in 0..n {
            out[j] = v[j].re;
            out[n + j] = v[j].im;
        }
        out
    };
    let d = 2 * n;
    let k1 = eval(x);
    let mut x2 = x.to_vec();
    for a in 0..d {
        x2[a] = x[a] + 0.5 * h * k1[a];
    }
    let k2 = eval(&x2);
    let mut x3 = x.to_vec();
    for a in 0..d {
        x3[a] = x[a] + 0.5 * h * k2[a];
    }
    let k3 = eval(&x3);
    let mut x4 = x.to_vec();
    for a in 0..d {
        x4[a] = x[a] + h * k3[a];
    }
    let k4 = eval(&x4);
    for a in 0..d {
        x[a] += h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    }
}

/// Time-t flow of the real field of χ evaluated at a point.
pub fn flow_point(field: &TorusField, x0: &[f64], t: f64, steps: usize) -> Vec<f64> {
    let mut x = x0.to_vec();
    let h = t / steps as f64;
    for _ in 0..steps {
        rk4_step(field, &mut x, h);
    }
    x
}

/// Jacobian blocks of the flow map on the grid: complex displacement modes
/// û^j (band `band_u`), then A(x) = I + ∂û/∂z, B(x) = ∂û/∂z̄ per point.
struct FlowJacobian {
    grid_n: usize,
    /// φ(x) per grid point
    phi: Vec<Vec<f64>>,
    /// A and B per grid point, row-major n×n
    a: Vec<DMatrix<C64>>,
    b: Vec<DMatrix<C64>>,
}

fn flow_jacobian(field: &TorusField, t: f64, steps: usize, grid_n: usize) -> FlowJacobian {
    let n = field.n;
    let d = 2 * n;
    let pts = grid_points(d, grid_n);
    let mut phi = Vec::with_capacity(pts.len());
    let mut disp: Vec<Vec<C64>> = vec![vec![C64::new(0.0, 0.0); pts.len()]; n];
    for (pi, p) in pts.iter().enumerate() {
        let fx = flow_point(field, p, t, steps);
        for j in 0..n {
            disp[j][pi] = C64::new(fx[j] - p[j], fx[n + j] - p[n + j]);
        }
        phi.push(fx);
    }
    let band_u = (grid_n as i32 - 1) / 2;
    let mode_list = modes(d, band_u);
    let mut a = vec![DMatrix::<C64>::identity(n, n); pts.len()];
    let mut b = vec![DMatrix::<C64>::zeros(n, n); pts.len()];
    for j in 0..n {
        let u_modes = grid_to_modes(&disp[j], d, grid_n, band_u);
        for l in 0..n {
            let dz: Vec<C64> = u_modes
                .iter()
                .zip(&mode_list)
                .map(|(&c, k)| c * mu(n, k, l))
                .collect();
            let dzb: Vec<C64> = u_modes
                .iter()
                .zip(&mode_list)
                .map(|(&c, k)| c * nu(n, k, l))
                .collect();
            let dz_grid = modes_to_grid(&dz, d, grid_n, band_u);
            let dzb_grid = modes_to_grid(&dzb, d, grid_n, band_u);
            for pi in 0..pts.len() {
                a[pi][(j, l)] += dz_grid[pi];
                b[pi][(j, l)] = dzb_grid[pi];
            }
        }
    }
    FlowJacobian { grid_n, phi, a, b }
}

/// Deformation coordinates of the integrable base structure pulled back by
/// the time-t flow of χ: pointwise ω = A⁻¹B, projected onto the band.
pub fn pullback_standard(field: &TorusField, t: f64, steps: usize, grid_n: usize, band_out: i32) -> BeltramiForm {
    let n = field.n;
    let jac = flow_jacobian(field, t, steps, grid_n);
    let d = 2 * n;
    let npts = jac.phi.len();
    let mut comp_grids: Vec<Vec<C64>> = vec![vec![C64::new(0.0, 0.0); npts]; n * n];
    for pi in 0..npts {
        let w = jac.a[pi].clone().try_inverse().expect("flow Jacobian invertible") * &jac.b[pi];
        for i in 0..n {
            for jb in 0..n {
                comp_grids[i * n + jb][pi] = w[(i, jb)];
            }
        }
    }
    beltrami_from_grids(n, band_out, d, jac.grid_n, &comp_grids)
}

/// Pull back a general deformation structure by the time-t flow of χ.
/// The antiholomorphic bundle of ω_J at φ(p) is spanned by
/// (−ω_J(φ(p)) e_j ; e_j); its preimage under dφ, renormalized, gives the new ω.
pub fn pullback_structure(
    field: &TorusField,
    omega: &BeltramiForm,
    t: f64,
    steps: usize,
    grid_n: usize,
    band_out: i32,
) -> BeltramiForm {
    let n = field.n;
    let d = 2 * n;
    let jac = flow_jacobian(field, t, steps, grid_n);
    let fb = form_basis(n, omega.cutoff);
    let npts = jac.phi.len();
    let mut comp_grids: Vec<Vec<C64>> = vec![vec![C64::new(0.0, 0.0); npts]; n * n];
    for pi in 0..npts {
        // ω_J at the mapped point (direct band-limited summation)
        let mut w_at = DMatrix::<C64>::zeros(n, n);
        for (pos, k) in fb.modes.iter().enumerate() {
            let e = FourierBasis::eval_mode(k, &jac.phi[pi]);
            for i in 0..n {
                for jb in 0..n {
                    w_at[(i, jb)] += omega.coeffs.values[fb.index(pos, i * n + jb)] * e;
                }
            }
        }
        // complexified dφ = [[A, B], [conj B, conj A]]
        let mut dphi = DMatrix::<C64>::zeros(d, d);
        for r in 0..n {
            for c in 0..n {
                dphi[(r, c)] = jac.a[pi][(r, c)];
                dphi[(r, c + n)] = jac.b[pi][(r, c)];
                dphi[(r + n, c)] = jac.b[pi][(r, c)].conj();
                dphi[(r + n, c + n)] = jac.a[pi][(r, c)].conj();
            }
        }
        let lu = dphi.lu();
        let mut w10 = DMatrix::<C64>::zeros(n, n);
        let mut w01 = DMatrix::<C64>::zeros(n, n);
        for j in 0..n {
            let mut rhs = DVector::<C64>::zeros(d);
            for i in 0..n {
                rhs[i] = -w_at[(i, j)];
            }
            rhs[n + j] = C64::new(1.0, 0.0);
            let sol = lu.solve(&rhs).expect("dφ invertible");
            for i in 0..n {
                w10[(i, j)] = sol[i];
                w01[(i, j)] = sol[n + i];
            }
        }
        let w = -w10 * w01.try_inverse().expect("antiholomorphic block invertible");
        for i in 0..n {
            for jb in 0..n {
                comp_grids[i * n + jb][pi] = w[(i, jb)];
            }
        }
    }
    beltrami_from_grids(n, band_out, d, grid_n, &comp_grids)
}

fn beltrami_from_grids(n: usize, band_out: i32, d: usize, grid_n: usize, comp_grids: &[Vec<C64>]) -> BeltramiForm {
    let out_fb = form_basis(n, band_out);
    let mut values = DVector::<C64>::zeros(out_fb.dim());
    for (c, grid) in comp_grids.iter().enumerate() {
        let coeffs = grid_to_modes(grid, d, grid_n, band_out);
        for (pos, _k) in out_fb.modes.iter().enumerate() {
            values[out_fb.index(pos, c)] = coeffs[pos];
        }
    }
    BeltramiForm::from_values(n, band_out, values)
}

/// Evaluate a Beltrami form pointwise (test helper).
pub fn eval_beltrami(omega: &BeltramiForm, x: &[f64]) -> DMatrix<C64> {
    let n = omega.n;
    let fb = form_basis(n, omega.cutoff);
    let mut w = DMatrix::<C64>::zeros(n, n);
    for (pos, k) in fb.modes.iter().enumerate() {
        let e = FourierBasis::eval_mode(k, x);
        for i in 0..n {
            for jb in 0..n {
                w[(i, jb)] += omega.coeffs.values[fb.index(pos, i * n + jb)] * e;
            }
        }
    }
    w
}

/// Phase helper for tests.
pub fn phase(k: &[i32], x: &[f64]) -> f64 {
    TWO_PI * k.iter().zip(x).map(|(&ki, &xi)| ki as f64 * xi).sum::<f64>()
}
