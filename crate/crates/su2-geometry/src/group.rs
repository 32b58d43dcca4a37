//! SU(2) as unit quaternions q = q₀ + q₁X₁ + q₂X₂ + q₃X₃, where the
//! imaginary units are X_a = −iσ_a. The matrix form is
//! [[q₀ − iq₃, −q₂ − iq₁], [q₂ − iq₁, q₀ + iq₃]].

use num_complex::Complex64;

type C64 = Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2 {
    pub q: [f64; 4],
}

impl Su2 {
    pub const IDENTITY: Su2 = Su2 { q: [1.0, 0.0, 0.0, 0.0] };

    pub fn new(q: [f64; 4]) -> Self {
        Su2 { q }
    }

    /// exp(Σ x_a X_a) for a pure imaginary direction x.
    pub fn exp(x: [f64; 3]) -> Self {
        let theta = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        if theta < 1e-300 {
            return Su2::IDENTITY;
        }
        let s = theta.sin() / theta;
        Su2 { q: [theta.cos(), s * x[0], s * x[1], s * x[2]] }
    }

    pub fn mul(&self, o: &Su2) -> Su2 {
        let [a0, a1, a2, a3] = self.q;
        let [b0, b1, b2, b3] = o.q;
        Su2 {
            q: [
                a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
                a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
            ],
        }
    }

    pub fn inverse(&self) -> Su2 {
        let [a, b, c, d] = self.q;
        Su2 { q: [a, -b, -c, -d] }
    }

    pub fn normalize(&mut self) {
        let n = self.q.iter().map(|x| x * x).sum::<f64>().sqrt();
        for v in &mut self.q {
            *v /= n;
        }
    }

    /// Cayley–Klein parameters (a, b) of the matrix form [[a, b], [−b̄, ā]].
    pub fn cayley_klein(&self) -> (C64, C64) {
        let [q0, q1, q2, q3] = self.q;
        (C64::new(q0, -q3), C64::new(-q2, -q1))
    }

    /// Pure-imaginary coordinates of q⁻¹·p (tangent coordinates at q of a
    /// nearby point p, up to higher order).
    pub fn log_coords(&self, p: &Su2) -> [f64; 3] {
        let d = self.inverse().mul(p);
        let [w, x, y, z] = d.q;
        let v = (x * x + y * y + z * z).sqrt();
        if v < 1e-300 {
            return [0.0, 0.0, 0.0];
        }
        let theta = v.atan2(w);
        let s = theta / v;
        [s * x, s * y, s * z]
    }
}
