//! Newton retraction on the complex-torus slice: chart round trips through
//! the genuine diffeomorphism action.

use nalgebra::DVector;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slice_core::{build_slice, slice_chart, slice_invert};
use spectral_torus::retraction::torus_action_system;

#[test]
fn torus_action_satisfies_chart_axioms() {
    let sys = torus_action_system(1, 8, 8);
    let v = sys.validate();
    assert!(v.identity_defect <= 1e-12, "{v:?}");
    assert!(v.differential_defect <= 1e-6, "{v:?}");
}

#[test]
fn torus_round_trip() {
    let sys = torus_action_system(1, 8, 8);
    let model = build_slice(&sys);
    // Ker ∂̄* at cutoff 1 on the 1-torus: the constant form (complex dim 1)
    assert_eq!(model.f_perp.len(), 2);
    // holomorphic fields in the truncation: the constants (complex dim 1)
    assert_eq!(model.ker_p.len(), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let mut xi = DVector::zeros(sys.group_chart.dim());
        for b in &model.e_perp {
            xi += &b.values * rng.gen_range(-0.02f64..0.02);
        }
        let mut kappa = DVector::zeros(sys.structure_space.dim());
        for b in &model.f_perp {
            kappa += &b.values * rng.gen_range(-0.02f64..0.02);
        }
        let j = slice_chart(&sys, &model, &xi, &kappa).unwrap();
        let (xi2, kappa2) = slice_invert(&sys, &model, &j).unwrap();
        assert!((&xi2 - &xi).norm() <= 1e-8, "xi mismatch {:e}", (&xi2 - &xi).norm());
        assert!((&kappa2 - &kappa).norm() <= 1e-8, "kappa mismatch {:e}", (&kappa2 - &kappa).norm());
    }
}
