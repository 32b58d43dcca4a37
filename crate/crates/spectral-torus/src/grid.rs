//! Uniform grids on tori and exact projection of band-limited data.

use num_complex::Complex64;

use crate::fourier::{modes, TWO_PI};

type C64 = Complex64;

/// Row-major enumeration of the uniform grid {0, 1/n, …, (n−1)/n}^d.
pub fn grid_points(d: usize, n_axis: usize) -> Vec<Vec<f64>> {
    let total = n_axis.pow(d as u32);
    let mut out = Vec::with_capacity(total);
    for flat in 0..total {
        let mut x = vec![0.0; d];
        let mut rem = flat;
        for a in (0..d).rev() {
            x[a] = (rem % n_axis) as f64 / n_axis as f64;
            rem /= n_axis;
        }
        out.push(x);
    }
    out
}

/// Separable DFT of grid values onto modes |k|∞ ≤ band (lexicographic order
/// of [`modes`]); exact for band-limited data when n_axis > 2·band.
pub fn grid_to_modes(values: &[C64], d: usize, n_axis: usize, band: i32) -> Vec<C64> {
    assert_eq!(values.len(), n_axis.pow(d as u32));
    assert!(n_axis as i32 > 2 * band, "grid too coarse for requested band");
    let m = (2 * band + 1) as usize;
    // twiddle factors e^{-2πi k i / n} for k = -band..band, i = 0..n
    let mut tw = vec![C64::new(0.0, 0.0); m * n_axis];
    for (kk, k) in (-band..=band).enumerate() {
        for i in 0..n_axis {
            let phase = -TWO_PI * (k as f64) * (i as f64) / n_axis as f64;
            tw[kk * n_axis + i] = C64::from_polar(1.0, phase);
        }
    }
    let mut cur = values.to_vec();
    let mut dims = vec![n_axis; d];
    for axis in 0..d {
        let pre: usize = dims[..axis].iter().product();
        let this = dims[axis];
        let post: usize = dims[axis + 1..].iter().product();
        let mut next = vec![C64::new(0.0, 0.0); pre * m * post];
        for p in 0..pre {
            for q in 0..post {
                for kk in 0..m {
                    let mut acc = C64::new(0.0, 0.0);
                    for i in 0..this {
                        acc += cur[(p * this + i) * post + q] * tw[kk * n_axis + i];
                    }
                    next[(p * m + kk) * post + q] = acc / this as f64;
                }
            }
        }
        cur = next;
        dims[axis] = m;
    }
    // reorder from (k+band)-row-major to the lexicographic mode order, which
    // is the same ordering, so map directly.
    let mode_list = modes(d, band);
    assert_eq!(mode_list.len(), cur.len());
    cur
}

/// Evaluate mode coefficients (lexicographic order, |k|∞ ≤ band) on the grid.
pub fn modes_to_grid(coeffs: &[C64], d: usize, n_axis: usize, band: i32) -> Vec<C64> {
    let m = (2 * band + 1) as usize;
    assert_eq!(coeffs.len(), m.pow(d as u32));
    let mut tw = vec![C64::new(0.0, 0.0); m * n_axis];
    for (kk, k) in (-band..=band).enumerate() {
        for i in 0..n_axis {
            let phase = TWO_PI * (k as f64) * (i as f64) / n_axis as f64;
            tw[kk * n_axis + i] = C64::from_polar(1.0, phase);
        }
    }
    let mut cur = coeffs.to_vec();
    let mut dims = vec![m; d];
    for axis in 0..d {
        let pre: usize = dims[..axis].iter().product();
        let this = dims[axis];
        let post: usize = dims[axis + 1..].iter().product();
        let mut next = vec![C64::new(0.0, 0.0); pre * n_axis * post];
        for p in 0..pre {
            for q in 0..post {
                for i in 0..n_axis {
                    let mut acc = C64::new(0.0, 0.0);
                    for kk in 0..this {
                        acc += cur[(p * this + kk) * post + q] * tw[kk * n_axis + i];
                    }
                    next[(p * n_axis + i) * post + q] = acc;
                }
            }
        }
        cur = next;
        dims[axis] = n_axis;
    }
    cur
}
