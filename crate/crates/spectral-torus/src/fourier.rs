//! Fourier mode lattices and labeled bases on tori.

use std::sync::Arc;

use num_complex::Complex64;
use numerics::{Gram, Label, LabeledBasis};

pub const TWO_PI: f64 = std::f64::consts::TAU;

/// Enumerate integer mode vectors k ∈ ℤ^d with |k|∞ ≤ cutoff, lexicographic.
pub fn modes(dim: usize, cutoff: i32) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    let mut cur = vec![-cutoff; dim];
    loop {
        out.push(cur.clone());
        let mut i = dim;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < cutoff {
                cur[i] += 1;
                for v in cur.iter_mut().skip(i + 1) {
                    *v = -cutoff;
                }
                break;
            }
        }
    }
}

/// A truncated Fourier basis on a torus: all modes |k|∞ ≤ cutoff of a
/// `real_dim`-torus, with `components` tensor components per mode.
#[derive(Debug, Clone)]
pub struct FourierBasis {
    pub real_dim: usize,
    pub cutoff: i32,
    pub components: usize,
    pub modes: Vec<Vec<i32>>,
    pub basis: Arc<LabeledBasis>,
}

impl FourierBasis {
    pub fn new(id: &str, real_dim: usize, cutoff: i32, components: usize) -> Self {
        let modes = modes(real_dim, cutoff);
        let mut labels: Vec<Label> = Vec::with_capacity(modes.len() * components);
        for k in &modes {
            for c in 0..components as i32 {
                let mut l = k.clone();
                l.push(c);
                labels.push(l);
            }
        }
        let basis = LabeledBasis::new(id, labels, Gram::Identity).expect("fourier basis");
        FourierBasis { real_dim, cutoff, components, modes, basis }
    }

    pub fn dim(&self) -> usize {
        self.modes.len() * self.components
    }

    /// Flat index of (mode position, component).
    pub fn index(&self, mode_pos: usize, comp: usize) -> usize {
        mode_pos * self.components + comp
    }

    /// Position of a mode in the lexicographic box enumeration, in O(d).
    pub fn mode_position(&self, k: &[i32]) -> Option<usize> {
        let c = self.cutoff;
        let w = (2 * c + 1) as usize;
        let mut idx = 0usize;
        for &ki in k {
            if ki.abs() > c {
                return None;
            }
            idx = idx * w + (ki + c) as usize;
        }
        debug_assert_eq!(self.modes[idx].as_slice(), k);
        Some(idx)
    }

    /// Evaluate the scalar mode exp(2πi k·x) at a point of the torus.
    pub fn eval_mode(k: &[i32], x: &[f64]) -> Complex64 {
        let phase: f64 = k.iter().zip(x).map(|(&ki, &xi)| ki as f64 * xi).sum();
        Complex64::from_polar(1.0, TWO_PI * phase)
    }
}

/// Antiholomorphic frequency ν_j(k) with ∂_{z̄_j} e_k = ν_j(k) e_k, for a
/// complex torus whose real mode vector is k = (p, q).
pub fn nu(n: usize, k: &[i32], j: usize) -> Complex64 {
    let p = k[j] as f64;
    let q = k[n + j] as f64;
    std::f64::consts::PI * Complex64::new(-q, p)
}

/// Holomorphic frequency μ_j(k) with ∂_{z_j} e_k = μ_j(k) e_k.
pub fn mu(n: usize, k: &[i32], j: usize) -> Complex64 {
    let p = k[j] as f64;
    let q = k[n + j] as f64;
    std::f64::consts::PI * Complex64::new(q, p)
}
