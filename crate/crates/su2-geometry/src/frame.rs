//! The left-invariant frame and its structure constants.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FrameError {
    #[error("no sign choice satisfies the contact positivity condition")]
    NoPositiveSign,
}

/// Structure constants c_{ab}^c with [e_a, e_b] = c_{ab}^c e_c, plus the dual
/// coframe bookkeeping. The scale is fixed so that the Reeb flow along e₃ is
/// 2π-periodic: c_{ab}^c = 2ε_{abc}.
#[derive(Debug, Clone)]
pub struct InvariantFrame {
    c: [[[f64; 3]; 3]; 3],
}

impl Default for InvariantFrame {
    fn default() -> Self {
        Self::standard()
    }
}

impl InvariantFrame {
    pub fn standard() -> Self {
        let mut c = [[[0.0; 3]; 3]; 3];
        for (a, b, k, s) in [
            (0usize, 1usize, 2usize, 2.0f64),
            (1, 2, 0, 2.0),
            (2, 0, 1, 2.0),
        ] {
            c[a][b][k] = s;
            c[b][a][k] = -s;
        }
        InvariantFrame { c }
    }

    /// c_{ab}^k
    pub fn c(&self, a: usize, b: usize, k: usize) -> f64 {
        self.c[a][b][k]
    }

    /// Bracket of frame vectors with constant coefficients:
    /// [u^a e_a, v^b e_b]^k = c_{ab}^k u^a v^b.
    pub fn bracket(&self, u: &[f64; 3], v: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for a in 0..3 {
            for b in 0..3 {
                for k in 0..3 {
                    out[k] += self.c[a][b][k] * u[a] * v[b];
                }
            }
        }
        out
    }

    /// max |Jacobi identity defect| over frame triples (exactly zero for the
    /// standard constants).
    pub fn jacobi_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..3 {
            for b in 0..3 {
                for d in 0..3 {
                    for k in 0..3 {
                        let mut acc = 0.0;
                        for l in 0..3 {
                            acc += self.c[a][b][l] * self.c[l][d][k]
                                + self.c[b][d][l] * self.c[l][a][k]
                                + self.c[d][a][l] * self.c[l][b][k];
                        }
                        worst = worst.max(acc.abs());
                    }
                }
            }
        }
        worst
    }

    /// max |c_{ab}^k + c_{ba}^k| (exactly zero: antisymmetry).
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for a in 0..3 {
            for b in 0..3 {
                for k in 0..3 {
                    worst = worst.max((self.c[a][b][k] + self.c[b][a][k]).abs());
                }
            }
        }
        worst
    }

    /// dη for an invariant 1-form η = η_c e^c: dη(e_a, e_b) = −η([e_a, e_b]).
    pub fn d_invariant_one_form(&self, eta: &[f64; 3]) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                for k in 0..3 {
                    out[a][b] -= eta[k] * self.c[a][b][k];
                }
            }
        }
        out
    }
}
