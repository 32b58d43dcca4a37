//! Deterministic low-discrepancy sampling of SU(2), used by pointwise
//! verification reports so they reproduce bit-for-bit.

use crate::group::Su2;

fn halton(index: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let mut i = index + 1;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Uniformly distributed unit quaternions from the Halton sequence
/// (bases 2, 3, 5) through the subgroup-algorithm map.
pub fn su2_points(count: usize) -> Vec<Su2> {
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let u1 = halton(i, 2);
        let u2 = halton(i, 3);
        let u3 = halton(i, 5);
        let a = (1.0 - u1).sqrt();
        let b = u1.sqrt();
        let t2 = std::f64::consts::TAU * u2;
        let t3 = std::f64::consts::TAU * u3;
        out.push(Su2::new([a * t2.sin(), a * t2.cos(), b * t3.sin(), b * t3.cos()]));
    }
    out
}
