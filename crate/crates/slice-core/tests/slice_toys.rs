//! Slice engine exercised on the toy actions, with hand-checkable oracles.

use nalgebra::{DVector, Matrix3, Vector3};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slice_core::{build_slice, mc2_probe, retraction_idempotence, rigidity_check, slice_chart, slice_invert, toys};

#[test]
fn toy_systems_satisfy_chart_axioms() {
    for sys in [toys::so2_on_plane(false), toys::so3_on_sym3(), toys::translation_on_self(3), toys::trivial_action(2, 2)] {
        let v = sys.validate();
        assert!(v.identity_defect <= 1e-12, "act(0, J) != J: {:?}", v);
        assert!(v.differential_defect <= 1e-6, "L != omega + P xi: {:?}", v);
    }
}

#[test]
fn build_slice_trivial_action() {
    let sys = toys::trivial_action(4, 2);
    let model = build_slice(&sys);
    assert_eq!(model.dim_f(), 0);
    assert_eq!(model.dim_f_perp(), 4);
    assert_eq!(model.dim_k_tangent(), 4);
    assert_eq!(model.ker_p.len(), 2);
    assert!(model.e_perp.is_empty());
    assert!(!rigidity_check(&model));
}

#[test]
fn build_slice_so2() {
    let sys = toys::so2_on_plane(false);
    let model = build_slice(&sys);
    // F = span{(0,1)}, F⊥ = span{(1,0)} by 2×2 arithmetic
    assert_eq!(model.dim_f(), 1);
    assert_eq!(model.dim_f_perp(), 1);
    assert!(model.f[0].values[0].abs() <= 1e-12 && (model.f[0].values[1].abs() - 1.0).abs() <= 1e-12);
    assert!((model.f_perp[0].values[0].abs() - 1.0).abs() <= 1e-12 && model.f_perp[0].values[1].abs() <= 1e-12);
    // with the radial cut the slice tangent dies and the point is rigid
    let cut = toys::so2_on_plane(true);
    let model_cut = build_slice(&cut);
    assert_eq!(model_cut.dim_k_tangent(), 0);
    assert!(rigidity_check(&model_cut));
}

#[test]
fn build_slice_so3_sym3_dimensions() {
    // brute-force oracle: the span of [J₀, ξ̂] over the three generators has
    // rank 3, and its orthogonal complement is the diagonal matrices.
    let j0 = Matrix3::from_diagonal(&Vector3::new(1.0, 2.0, 3.0));
    let mut cols: Vec<Vector3<f64>> = Vec::new();
    for a in 0..3 {
        let mut w = Vector3::zeros();
        w[a] = 1.0;
        let k = Matrix3::new(0.0, -w[2], w[1], w[2], 0.0, -w[0], -w[1], w[0], 0.0);
        let c = j0 * k - k * j0;
        // off-diagonal components only
        cols.push(Vector3::new(c[(0, 1)], c[(0, 2)], c[(1, 2)]));
    }
    let m = Matrix3::from_columns(&cols);
    assert!(m.determinant().abs() > 1e-9, "commutators must span the off-diagonal directions");

    let sys = toys::so3_on_sym3();
    let model = build_slice(&sys);
    assert_eq!(model.dim_f(), 3);
    assert_eq!(model.dim_f_perp(), 3);
    assert_eq!(model.dim_k_tangent(), 3);
    assert!(!rigidity_check(&model));
    // F⊥ consists of diagonal matrices: last three coordinates vanish
    for b in &model.f_perp {
        for i in 3..6 {
            assert!(b.values[i].abs() <= 1e-10);
        }
    }
    // bookkeeping: dim F + dim F⊥ = ambient, Ker P + E⊥ = group dim
    assert_eq!(model.dim_f() + model.dim_f_perp(), 6);
    assert_eq!(model.ker_p.len() + model.e_perp.len(), 3);
}

#[test]
fn slice_chart_examples() {
    let sys = toys::so2_on_plane(false);
    let model = build_slice(&sys);
    let zero1 = DVector::zeros(1);
    let zero2 = DVector::zeros(2);
    // (0,0) ↦ J₀ (origin of the chart)
    let j = slice_chart(&sys, &model, &zero1, &zero2).unwrap();
    assert!(j.norm() <= 1e-15);
    // ξ = θ, κ = 0 ↦ rotation of (1,0) by θ
    let theta = 0.07f64;
    let j = slice_chart(&sys, &model, &DVector::from_vec(vec![theta]), &zero2).unwrap();
    assert!((j[0] - (theta.cos() - 1.0)).abs() <= 1e-14);
    assert!((j[1] - theta.sin()).abs() <= 1e-14);
    // (0, κ) ↦ κ
    let kappa = DVector::from_vec(vec![0.05, 0.0]);
    let j = slice_chart(&sys, &model, &zero1, &kappa).unwrap();
    assert!((j - kappa).norm() <= 1e-15);
}

#[test]
fn slice_invert_so2_polar() {
    let sys = toys::so2_on_plane(false);
    let model = build_slice(&sys);
    // J₀ ↦ (0, 0)
    let (xi, kappa) = slice_invert(&sys, &model, &DVector::zeros(2)).unwrap();
    assert!(xi.norm() <= 1e-9 && kappa.norm() <= 1e-9);
    // radius-perturbed point: 1.1(cos θ, sin θ) ↦ ξ = θ, κ = 0.1·(1,0)
    let theta = 0.05f64;
    let j = DVector::from_vec(vec![1.1 * theta.cos() - 1.0, 1.1 * theta.sin()]);
    let (xi, kappa) = slice_invert(&sys, &model, &j).unwrap();
    assert!((xi[0] - theta).abs() <= 1e-9, "xi = {xi}");
    assert!((kappa[0] - 0.1).abs() <= 1e-9 && kappa[1].abs() <= 1e-12, "kappa = {kappa}");
}

#[test]
fn round_trip_and_fibers() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for sys in [toys::so2_on_plane(false), toys::so3_on_sym3()] {
        let model = build_slice(&sys);
        let e = model.e_perp.len();
        let f = model.f_perp.len();
        for _ in 0..20 {
            // random small (ξ, κ) inside the spans
            let mut xi = DVector::zeros(sys.group_chart.dim());
            for b in model.e_perp.iter().take(e) {
                xi += &b.values * rng.gen_range(-0.03f64..0.03);
            }
            let mut kappa = DVector::zeros(sys.structure_space.dim());
            for b in model.f_perp.iter().take(f) {
                kappa += &b.values * rng.gen_range(-0.03f64..0.03);
            }
            let j = slice_chart(&sys, &model, &xi, &kappa).unwrap();
            let (xi2, kappa2) = slice_invert(&sys, &model, &j).unwrap();
            assert!((xi2 - &xi).norm() <= 1e-8, "round trip xi failed");
            assert!((kappa2 - &kappa).norm() <= 1e-8, "round trip kappa failed");

            // fibers of the retraction lie in orbits
            let mut g = DVector::zeros(sys.group_chart.dim());
            for k in 0..g.len() {
                g[k] = rng.gen_range(-0.02f64..0.02);
            }
            let j_moved = sys.act(&g, &j);
            let k_a = slice_invert(&sys, &model, &j).unwrap().1;
            let k_b = slice_invert(&sys, &model, &j_moved).unwrap().1;
            assert!((k_a - k_b).norm() <= 1e-7, "retraction not constant on orbits");
        }
    }
}

#[test]
fn retraction_idempotent() {
    let sys = toys::so2_on_plane(false);
    let model = build_slice(&sys);
    assert!(retraction_idempotence(&sys, &model, 25, 1).unwrap() <= 1e-9);
    let sys3 = toys::so3_on_sym3();
    let model3 = build_slice(&sys3);
    assert!(retraction_idempotence(&sys3, &model3, 25, 2).unwrap() <= 1e-9);
}

#[test]
fn mc2_probe_reports_no_violations() {
    // discrete isotropy: SO(3) conjugation at diag(1,2,3)
    let sys = toys::so3_on_sym3();
    let model = build_slice(&sys);
    let rep = mc2_probe(&sys, &model, 10_000, 0.1, 7);
    assert_eq!(rep.violations, 0, "{rep:?}");

    // trivial action: every sampled g lands exactly at J₀
    let triv = toys::trivial_action(3, 2);
    let model_t = build_slice(&triv);
    let rep_t = mc2_probe(&triv, &model_t, 1_000, 0.1, 8);
    assert_eq!(rep_t.candidates, 1_000);
    assert_eq!(rep_t.violations, 0);

    // SO(2): the circle orbit meets the radial slice only at J₀ locally
    let so2 = toys::so2_on_plane(false);
    let model_2 = build_slice(&so2);
    let rep_2 = mc2_probe(&so2, &model_2, 10_000, 0.1, 9);
    assert_eq!(rep_2.violations, 0, "{rep_2:?}");
}

#[test]
fn orbit_points_retract_to_the_origin() {
    // sampled orbit points of the base structure retract to the base
    // structure itself (the slice meets the local orbit only there)
    let sys = toys::so3_on_sym3();
    let model = build_slice(&sys);
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..50 {
        let dir = DVector::from_fn(3, |_, _| rng.gen_range(-1.0f64..1.0));
        let xi = &dir * (0.1 * rng.gen_range(0.0f64..1.0) / dir.norm());
        let j = sys.act(&xi, &DVector::zeros(6));
        let kappa = slice_invert(&sys, &model, &j).unwrap().1;
        assert!(kappa.norm() <= 1e-8, "orbit point retracted to {kappa}");
    }
}
