//! Structure verification: the standard pair passes with machine-precision
//! residuals, targeted mutations fail their conditions, the Reeb solver
//! matches the pointwise oracle, and the induced metric is the round one.

use nalgebra::{DVector, Matrix3, Vector3};
use num_complex::Complex64;
use sasaki_deform::build::{build_structure, pointwise_metric_unsymmetrized, reeb_solve};
use sasaki_deform::echar::{d_one_form, echar_verify, pointwise_reeb, ESpan, OneForm};
use sasaki_deform::fields::Spaces;
use su2_geometry::sampling::su2_points;
use su2_geometry::wigner::WignerEval;

type C64 = Complex64;

const TOL: f64 = 1e-9;

#[test]
fn standard_structure_passes_all_conditions() {
    let spaces = Spaces::new(2);
    let e = ESpan::standard(&spaces);
    let eta = OneForm::standard(&spaces);
    let rep = echar_verify(&spaces, &e, &eta, 40);
    assert!(rep.spanning <= 1e-12, "{rep:?}");
    assert!(rep.intersection <= 1e-12, "{rep:?}");
    assert!(rep.involutivity <= 1e-12, "{rep:?}");
    assert!(rep.d_eta_restriction <= 1e-12, "{rep:?}");
    // positivity value: 2·dη(ē, i e)/‖ē‖² = |c₁₂³|·2 = 4 with this frame scale
    assert!((rep.positivity_min - 4.0).abs() <= 1e-12, "{rep:?}");
    assert!(rep.passes(1e-12));
}

#[test]
fn tilt_mutation_fails_exactly_involutivity() {
    // ē tilted toward e₃: E = span{e₁ − i(cos δ e₂ + sin δ e₃), e₃}
    let spaces = Spaces::new(2);
    let delta = 0.3f64;
    let e = ESpan::constant(
        &spaces,
        [
            C64::new(1.0, 0.0),
            C64::new(0.0, -delta.cos()),
            C64::new(0.0, -delta.sin()),
        ],
        [C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
    );
    let eta = OneForm::standard(&spaces);
    let rep = echar_verify(&spaces, &e, &eta, 40);
    assert!(rep.condition_passes(1, TOL), "{rep:?}");
    assert!(rep.condition_passes(2, TOL), "{rep:?}");
    assert!(!rep.condition_passes(3, TOL), "(3) must fail: {rep:?}");
    assert!(rep.condition_passes(4, TOL), "{rep:?}");
    assert!(rep.condition_passes(5, TOL), "{rep:?}");
}

#[test]
fn orientation_flip_fails_exactly_positivity() {
    // E spanned by the holomorphic direction instead: positivity reverses
    let spaces = Spaces::new(2);
    let e = ESpan::constant(
        &spaces,
        [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
    );
    let eta = OneForm::standard(&spaces);
    let rep = echar_verify(&spaces, &e, &eta, 40);
    assert!(rep.condition_passes(1, TOL), "{rep:?}");
    assert!(rep.condition_passes(2, TOL), "{rep:?}");
    assert!(rep.condition_passes(3, TOL), "{rep:?}");
    assert!(rep.condition_passes(4, TOL), "{rep:?}");
    assert!(!rep.condition_passes(5, TOL), "(5) must fail: {rep:?}");
    assert!((rep.positivity_min + 4.0).abs() <= 1e-12, "flip gives −4: {rep:?}");
}

#[test]
fn nonconstant_scaling_fails_deta_restriction() {
    // η′ = (1 + εf)η with f a non-invariant function: dη′ no longer vanishes
    // on E. With one transverse complex direction this is equivalent to the
    // Reeb line leaving the intersection, so (2) degrades with (4); the
    // independent conditions (1), (3), (5) stay clean.
    let spaces = Spaces::new(2);
    let e = ESpan::standard(&spaces);
    let mut eta = OneForm::standard(&spaces);
    // f real: the (j,0,±1) pair carries conjugation sign (−1)^{m−m′} = −1
    let eps = 0.05;
    let p = spaces.wb.position(2, 0, 2).unwrap();
    let q = spaces.wb.position(2, 0, -2).unwrap();
    eta.comps[2][p] += C64::new(eps, 0.0);
    eta.comps[2][q] -= C64::new(eps, 0.0);
    assert!(spaces.wb.reality_defect(&eta.comps[2]) <= 1e-14);
    let rep = echar_verify(&spaces, &e, &eta, 40);
    assert!(rep.condition_passes(1, TOL), "{rep:?}");
    assert!(rep.condition_passes(3, TOL), "{rep:?}");
    assert!(!rep.condition_passes(4, TOL), "(4) must fail: {rep:?}");
    assert!(rep.condition_passes(5, TOL), "{rep:?}");
    // entangled alias of (4) in transverse complex dimension one:
    assert!(!rep.condition_passes(2, TOL), "{rep:?}");
}

#[test]
fn reeb_solve_standard_and_scaled() {
    let spaces = Spaces::new(2);
    let eta = OneForm::standard(&spaces);
    let xi = reeb_solve(&spaces, &eta, 20).unwrap();
    // ξ = e₃ within 1e-12
    assert!(xi[0].norm() <= 1e-12 && xi[1].norm() <= 1e-12);
    assert!((xi[2][0] - C64::new(1.0, 0.0)).norm() <= 1e-12);
    assert!(xi[2].iter().skip(1).map(|z| z.norm()).fold(0.0f64, f64::max) <= 1e-12);
    // η′ = 2η scales the Reeb field by 1/2
    let mut eta2 = OneForm::standard(&spaces);
    for c in eta2.comps.iter_mut() {
        *c *= C64::new(2.0, 0.0);
    }
    let xi2 = reeb_solve(&spaces, &eta2, 20).unwrap();
    assert!((xi2[2][0] - C64::new(0.5, 0.0)).norm() <= 1e-12);
}

#[test]
fn reeb_solve_perturbed_matches_pointwise_oracle() {
    // basic perturbation with transversely (1,1) differential leaves the
    // pointwise system solvable; the coefficient solve must agree with it
    let spaces = Spaces::new(2);
    let mut eta = OneForm::standard(&spaces);
    // basic perturbation: β = α₁ + iα₂ supported on m′ = +1 keeps the Reeb
    // field fixed (i_ξα = 0 and L_ξα = 0)
    let eps = 0.03;
    let p = spaces.wb.position(2, 0, 2).unwrap();
    let q = spaces.wb.position(2, 0, -2).unwrap();
    eta.comps[0][p] += C64::new(eps, 0.0);
    eta.comps[0][q] -= C64::new(eps, 0.0);
    eta.comps[1][p] -= C64::new(0.0, eps);
    eta.comps[1][q] -= C64::new(0.0, eps);
    assert!(spaces.wb.reality_defect(&eta.comps[0]) <= 1e-14);
    assert!(spaces.wb.reality_defect(&eta.comps[1]) <= 1e-14);
    let xi = reeb_solve(&spaces, &eta, 20).expect("perturbed form stays contact");
    let d_eta = d_one_form(&spaces, &eta);
    for g in su2_points(15) {
        let ev = WignerEval::at(spaces.band, &g);
        let eta_at = eta.eval(&spaces, &ev);
        let mut d_at = Matrix3::<f64>::zeros();
        for a in 0..3 {
            for b in 0..3 {
                d_at[(a, b)] = ev.eval(&spaces.wb, &d_eta[a][b]).re;
            }
        }
        let oracle = pointwise_reeb(&eta_at, &d_at).unwrap();
        let solved = Vector3::new(
            ev.eval(&spaces.wb, &xi[0]).re,
            ev.eval(&spaces.wb, &xi[1]).re,
            ev.eval(&spaces.wb, &xi[2]).re,
        );
        assert!((oracle - solved).norm() <= 1e-8, "pointwise {oracle:?} vs spectral {solved:?}");
    }
}

#[test]
fn build_structure_standard_gives_round_metric() {
    let spaces = Spaces::new(2);
    let e = ESpan::standard(&spaces);
    let eta = OneForm::standard(&spaces);
    let data = build_structure(&spaces, &e, &eta, 30).unwrap();
    let (phi, g) = data.constant.expect("standard data is invariant");
    assert!((g - Matrix3::identity()).norm() <= 1e-12);
    let std = su2_geometry::standard_sasaki().unwrap();
    assert!((phi - std.phi).norm() <= 1e-12);
    // g(ξ, V) = η(V) for all sampled V: here ξ = e₃ and η = e³, so the last
    // metric row equals (0, 0, 1)
    for sample in &data.g_samples {
        assert!((sample.row(2) - Matrix3::identity().row(2)).norm() <= 1e-12);
    }
}

#[test]
fn symmetrized_metric_reduces_on_integrable_inputs() {
    let spaces = Spaces::new(2);
    let e = ESpan::standard(&spaces);
    let eta = OneForm::standard(&spaces);
    let data = build_structure(&spaces, &e, &eta, 20).unwrap();
    let d_eta = d_one_form(&spaces, &eta);
    for (k, g) in su2_points(20).iter().enumerate() {
        let ev = WignerEval::at(spaces.band, g);
        let eta_at = eta.eval(&spaces, &ev);
        let mut d_at = Matrix3::<f64>::zeros();
        for a in 0..3 {
            for b in 0..3 {
                d_at[(a, b)] = ev.eval(&spaces.wb, &d_eta[a][b]).re;
            }
        }
        let unsym = pointwise_metric_unsymmetrized(&eta_at, &d_at, &data.phi_samples[k]);
        assert!((unsym - data.g_samples[k]).norm() <= 1e-10);
    }
}

#[test]
fn build_structure_rejects_flipped_orientation() {
    let spaces = Spaces::new(2);
    let e = ESpan::constant(
        &spaces,
        [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
        [C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
    );
    let eta = OneForm::standard(&spaces);
    let err = build_structure(&spaces, &e, &eta, 10).unwrap_err();
    let msg = format!("{err}");
    assert!(msg.contains("not positive contact"), "{msg}");
}

#[test]
fn reality_of_alpha_roundtrip() {
    // parameter embedding produces conjugation-symmetric coefficients and
    // projects back to the same parameters
    let spaces = Spaces::new(2);
    let n = spaces.alpha_basis.dim();
    let x = DVector::from_fn(n, |i, _| ((i * 7 + 3) % 11) as f64 / 11.0 - 0.4);
    let comps = spaces.alpha_components(&x);
    for c in &comps {
        assert!(spaces.wb.reality_defect(c) <= 1e-12);
    }
    let back = spaces.alpha_from_components(&comps);
    assert!((back - x).norm() <= 1e-12);
}
