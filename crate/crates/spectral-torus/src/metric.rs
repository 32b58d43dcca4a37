//! Metric slice operator on flat real tori: χ ↦ L_χ g₀.
//!
//! Real fields are stored in cosine/sine components so all Grams stay real.
//! The mode functions are 1, √2·cos(2πk·x), √2·sin(2πk·x) for k running over
//! a half-lattice, an orthonormal family for unit volume.

use std::sync::Arc;

use nalgebra::DMatrix;
use numerics::{Gram, Label, LabeledBasis, OperatorMatrix, KERNEL_REL_TOL};

use crate::fourier::modes;

const TRIG_COS: i32 = 0;
const TRIG_SIN: i32 = 1;

/// Real modes: k = 0 (constant) and (k, cos/sin) for lexicographically
/// positive k. Returns (mode vector, trig flag).
pub fn real_modes(dim: usize, cutoff: i32) -> Vec<(Vec<i32>, i32)> {
    let mut out = Vec::new();
    out.push((vec![0; dim], TRIG_COS));
    for k in modes(dim, cutoff) {
        if k.iter().copied().find(|&x| x != 0).map(|x| x > 0).unwrap_or(false) {
            out.push((k.clone(), TRIG_COS));
            out.push((k, TRIG_SIN));
        }
    }
    out
}

/// Labeled basis with `components` tensor components per real mode.
pub fn real_basis(id: &str, dim: usize, cutoff: i32, components: usize) -> (Arc<LabeledBasis>, Vec<(Vec<i32>, i32)>) {
    let rm = real_modes(dim, cutoff);
    let mut labels: Vec<Label> = Vec::with_capacity(rm.len() * components);
    for (k, trig) in &rm {
        for c in 0..components as i32 {
            let mut l = k.clone();
            l.push(*trig);
            l.push(c);
            labels.push(l);
        }
    }
    let basis = LabeledBasis::new(id, labels, Gram::Identity).expect("real torus basis");
    (basis, rm)
}

/// Symmetric-tensor component count with orthonormal components
/// (E_aa and (E_ab + E_ba)/√2 for a < b).
pub fn sym_components(n: usize) -> usize {
    n * (n + 1) / 2
}

fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..n).map(|a| (a, a)).collect();
    for a in 0..n {
        for b in (a + 1)..n {
            out.push((a, b));
        }
    }
    out
}

/// Matrix of χ ↦ L_χ g₀ = (∂_a χ_b + ∂_b χ_a) from vector fields to symmetric
/// 2-tensors on the flat n-torus. Exactly block-diagonal per ±k mode pair.
pub fn metric_slice_operator(n: usize, cutoff: i32) -> OperatorMatrix<f64> {
    let (dom, dom_modes) = real_basis(&format!("torus{n}r-fields-c{cutoff}"), n, cutoff, n);
    let s = sym_components(n);
    let (cod, _) = real_basis(&format!("torus{n}r-sym2-c{cutoff}"), n, cutoff, s);
    let pairs = sym_pairs(n);
    let two_pi = std::f64::consts::TAU;
    let mut entries = DMatrix::<f64>::zeros(cod.dim(), dom.dim());
    // mode index bookkeeping: modes are enumerated identically in dom and cod
    let mode_count = dom_modes.len();
    let mode_pos = |mi: usize, comp: usize, comps: usize| mi * comps + comp;
    // ∂_a maps: cos_k ↦ −2πk_a sin_k, sin_k ↦ 2πk_a cos_k, constant ↦ 0.
    // partner[mi] = index of the same k with the other trig flag.
    let mut partner = vec![usize::MAX; mode_count];
    for (mi, (k, trig)) in dom_modes.iter().enumerate() {
        if k.iter().all(|&x| x == 0) {
            continue;
        }
        for (mj, (k2, trig2)) in dom_modes.iter().enumerate() {
            if k2 == k && trig2 != trig {
                partner[mi] = mj;
                break;
            }
        }
    }
    for (mi, (k, trig)) in dom_modes.iter().enumerate() {
        if k.iter().all(|&x| x == 0) {
            continue; // translations are isometries
        }
        let mj = partner[mi];
        for (pi, &(a, b)) in pairs.iter().enumerate() {
            // tensor entry (L_χ g)_ab = ∂_a χ_b + ∂_b χ_a; orthonormal
            // coefficient is the entry for a = b and √2·entry for a < b.
            let weight = if a == b { 1.0 } else { std::f64::consts::SQRT_2 };
            let mut add = |comp_field: usize, axis: usize| {
                let ka = two_pi * k[axis] as f64;
                // derivative swaps trig flag: cos → −k·sin, sin → +k·cos
                let sign = if *trig == TRIG_COS { -ka } else { ka };
                let row = mode_pos(mj, pi, s);
                let col = mode_pos(mi, comp_field, n);
                entries[(row, col)] += weight * sign;
            };
            // ∂_a χ_b + ∂_b χ_a (for a = b this doubles the single term)
            add(b, a);
            add(a, b);
        }
    }
    OperatorMatrix::new(dom, cod, entries).unwrap()
}

/// Dimension of Ker P* at the cutoff (the metric slice tangent), with the
/// mode-count cross-check dim = s·M − rank(P).
pub fn metric_slice_dim(n: usize, cutoff: i32) -> usize {
    let p = metric_slice_operator(n, cutoff);
    let p_star = p.gram_adjoint();
    p_star.kernel_basis(KERNEL_REL_TOL).len()
}

/// rank(P) and the ambient dimensions, for the cross-check table.
pub fn metric_slice_counts(n: usize, cutoff: i32) -> (usize, usize, usize) {
    let p = metric_slice_operator(n, cutoff);
    let m = real_modes(n, cutoff).len();
    (p.rank(KERNEL_REL_TOL), m, sym_components(n) * m)
}
