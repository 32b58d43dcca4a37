//! Clebsch–Gordan coefficients and pointwise products of Peter–Weyl
//! expansions.
//!
//! The product of two matrix coefficients decomposes as
//! D^{j₁}_{m₁n₁} D^{j₂}_{m₂n₂} = Σ_J ⟨j₁m₁ j₂m₂|J M⟩⟨j₁n₁ j₂n₂|J N⟩ D^J_{MN},
//! which is the whole product machinery of the backend. Products of two
//! band-limited functions land in the doubled band; callers split the result
//! into the original band and a reported tail.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::wigner::WignerBasis;

type C64 = Complex64;

fn factorials() -> &'static [f64] {
    use std::sync::OnceLock;
    static FACT: OnceLock<Vec<f64>> = OnceLock::new();
    FACT.get_or_init(|| {
        let mut f = vec![1.0f64; 80];
        for i in 1..80 {
            f[i] = f[i - 1] * i as f64;
        }
        f
    })
}

/// ⟨j₁ m₁ j₂ m₂ | J M⟩ with doubled arguments (Condon–Shortley phase).
pub fn clebsch_gordan(twoj1: i32, twom1: i32, twoj2: i32, twom2: i32, twobigj: i32) -> f64 {
    let twobigm = twom1 + twom2;
    if twobigm.abs() > twobigj
        || twobigj > twoj1 + twoj2
        || twobigj < (twoj1 - twoj2).abs()
        || (twoj1 + twoj2 + twobigj) % 2 != 0
    {
        return 0.0;
    }
    let f = factorials();
    let i = |x: i32| -> usize {
        debug_assert!(x >= 0 && x % 2 == 0, "doubled integer expected, got {x}");
        (x / 2) as usize
    };
    let delta = f[i(twoj1 + twoj2 - twobigj)] * f[i(twoj1 - twoj2 + twobigj)]
        * f[i(-twoj1 + twoj2 + twobigj)]
        / f[i(twoj1 + twoj2 + twobigj) + 1];
    let pref = ((twobigj as f64 + 1.0)
        * delta
        * f[i(twobigj + twobigm)]
        * f[i(twobigj - twobigm)]
        * f[i(twoj1 - twom1)]
        * f[i(twoj1 + twom1)]
        * f[i(twoj2 - twom2)]
        * f[i(twoj2 + twom2)])
        .sqrt();
    // summation over k (doubled): bounds from the factorial arguments
    let k_lo = 0
        .max(twoj2 - twobigj - twom1)
        .max(twoj1 - twobigj + twom2);
    let k_hi = (twoj1 + twoj2 - twobigj).min(twoj1 - twom1).min(twoj2 + twom2);
    let mut acc = 0.0f64;
    let mut twok = k_lo;
    while twok <= k_hi {
        let sign = if (twok / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let denom = f[i(twok)]
            * f[i(twoj1 + twoj2 - twobigj - twok)]
            * f[i(twoj1 - twom1 - twok)]
            * f[i(twoj2 + twom2 - twok)]
            * f[i(twobigj - twoj2 + twom1 + twok)]
            * f[i(twobigj - twoj1 - twom2 + twok)];
        acc += sign / denom;
        twok += 2;
    }
    pref * acc
}

/// Pointwise product of two coefficient vectors, expanded into the target
/// basis (which must contain the doubled band for exactness).
pub fn product(
    wb1: &WignerBasis,
    c1: &DVector<C64>,
    wb2: &WignerBasis,
    c2: &DVector<C64>,
    out: &WignerBasis,
) -> DVector<C64> {
    let mut res = DVector::<C64>::zeros(out.dim());
    for (i1, &(tj1, tm1, tn1)) in wb1.labels.iter().enumerate() {
        let a = c1[i1];
        if a.norm() == 0.0 {
            continue;
        }
        for (i2, &(tj2, tm2, tn2)) in wb2.labels.iter().enumerate() {
            let b = c2[i2];
            if b.norm() == 0.0 {
                continue;
            }
            let ab = a * b;
            let tm = tm1 + tm2;
            let tn = tn1 + tn2;
            let mut tj = (tj1 - tj2).abs().max(tm.abs()).max(tn.abs());
            // parity of the coupled j is fixed
            if (tj + tj1 + tj2) % 2 != 0 {
                tj += 1;
            }
            while tj <= (tj1 + tj2).min(out.two_jmax) {
                let cg_m = clebsch_gordan(tj1, tm1, tj2, tm2, tj);
                let cg_n = clebsch_gordan(tj1, tn1, tj2, tn2, tj);
                let w = cg_m * cg_n;
                if w != 0.0 {
                    let pos = out.position(tj, tm, tn).expect("target basis too small");
                    res[pos] += ab * w;
                }
                tj += 2;
            }
        }
    }
    res
}

/// Split a doubled-band vector into (inside original band, tail norm).
pub fn band_split(out: &WignerBasis, values: &DVector<C64>, two_jband: i32) -> (f64, f64) {
    let mut inside = 0.0f64;
    let mut tail = 0.0f64;
    for (i, &(tj, _, _)) in out.labels.iter().enumerate() {
        // Peter–Weyl Gram weight
        let w = values[i].norm_sqr() / (tj as f64 + 1.0);
        if tj <= two_jband {
            inside += w;
        } else {
            tail += w;
        }
    }
    (inside.sqrt(), tail.sqrt())
}
