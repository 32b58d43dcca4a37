//! The standard Sasakian structure on S³ in the invariant frame.

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::frame::{FrameError, InvariantFrame};

type C64 = Complex64;

/// Constant-frame data of the standard structure: η = e³, ξ = e₃,
/// Φ restricted to the contact distribution, the metric, and the
/// antiholomorphic span E = ⟨e₁ + iσe₂, ξ⟩.
#[derive(Debug, Clone)]
pub struct StandardSasaki {
    pub frame: InvariantFrame,
    /// coframe coefficients of η
    pub eta: [f64; 3],
    /// frame coefficients of ξ
    pub xi: [f64; 3],
    /// sign σ with Φ(e₁) = σ e₂ fixed by dη(V, ΦV) > 0 on the distribution
    pub sigma: f64,
    /// endomorphism Φ in frame components
    pub phi: Matrix3<f64>,
    /// metric in frame components (round)
    pub g: Matrix3<f64>,
    /// E-spanning vectors in complexified frame coordinates
    pub e_span: [[C64; 3]; 2],
}

impl StandardSasaki {
    /// dη(u, v) for constant frame vectors.
    pub fn d_eta(&self, u: &[C64; 3], v: &[C64; 3]) -> C64 {
        let d = self.frame.d_invariant_one_form(&self.eta);
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..3 {
            for b in 0..3 {
                acc += u[a] * v[b] * d[a][b];
            }
        }
        acc
    }

    /// The antiholomorphic direction ē = e₁ + iσ e₂ spanning E ∩ D_ℂ.
    pub fn ebar(&self) -> [C64; 3] {
        [C64::new(1.0, 0.0), C64::new(0.0, self.sigma), C64::new(0.0, 0.0)]
    }

    /// The holomorphic direction e = e₁ − iσ e₂.
    pub fn e_hol(&self) -> [C64; 3] {
        [C64::new(1.0, 0.0), C64::new(0.0, -self.sigma), C64::new(0.0, 0.0)]
    }
}

/// Build the standard structure: η = e³, ξ = e₃, D = span(e₁, e₂),
/// Φ(e₁) = σe₂, Φ(e₂) = −σe₁, the sign chosen so dη(V, ΦV) > 0 on D, and g
/// from the contact form and Φ. Fails if no sign satisfies positivity.
pub fn standard_sasaki() -> Result<StandardSasaki, FrameError> {
    let frame = InvariantFrame::standard();
    let eta = [0.0, 0.0, 1.0];
    let xi = [0.0, 0.0, 1.0];
    let d = frame.d_invariant_one_form(&eta);
    // positivity: dη(e₁, Φe₁) = σ·dη(e₁, e₂) > 0
    let sigma = if d[0][1] > 0.0 {
        1.0
    } else if d[0][1] < 0.0 {
        -1.0
    } else {
        return Err(FrameError::NoPositiveSign);
    };
    let mut phi = Matrix3::<f64>::zeros();
    phi[(1, 0)] = sigma; // Φ(e₁) = σ e₂
    phi[(0, 1)] = -sigma; // Φ(e₂) = −σ e₁
    // g(V, W) = ½ dη(V, ΦW) + η(V)η(W)
    let mut g = Matrix3::<f64>::zeros();
    for a in 0..3 {
        for b in 0..3 {
            let mut acc = 0.0;
            for k in 0..3 {
                acc += 0.5 * d[a][k] * phi[(k, b)];
            }
            g[(a, b)] = acc + eta[a] * eta[b];
        }
    }
    let ebar = [C64::new(1.0, 0.0), C64::new(0.0, sigma), C64::new(0.0, 0.0)];
    let xi_c = [C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
    Ok(StandardSasaki { frame, eta, xi, sigma, phi, g, e_span: [ebar, xi_c] })
}
