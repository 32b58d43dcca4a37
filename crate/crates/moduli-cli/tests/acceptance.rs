//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with the measured quantity at its pinned tolerance.

use std::time::Instant;

use moduli_cli::{run, verify, ExperimentConfig, ExperimentKind};
use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type C64 = Complex64;

const SEED: u64 = 7;

fn criterion(n: usize, name: &str, passed: bool, detail: &str) {
    println!("criterion {n:02} [{}] {name}: {detail}", if passed { "PASS" } else { "FAIL" });
    assert!(passed, "criterion {n} failed: {name}: {detail}");
}

#[test]
fn criterion_01_adjoint_audit() {
    let start = Instant::now();
    let config = ExperimentConfig::defaults(ExperimentKind::AdjointAudit, SEED, 1.0);
    let (report, _) = run(&config).unwrap();
    let worst = report
        .flags
        .iter()
        .filter(|f| f.name.starts_with("adjoint-identity/"))
        .map(|f| f.value)
        .fold(0.0f64, f64::max);
    let all = report.flags.iter().all(|f| f.passed);
    let elapsed = start.elapsed().as_secs_f64();
    criterion(
        1,
        "adjoint audit across all backends",
        all && worst <= 1e-10 && elapsed < 60.0,
        &format!("max relative pairing defect {worst:.2e} over {} operators in {elapsed:.1}s", report.tables[0].rows.len()),
    );
}

#[test]
fn criterion_02_torus_kuranishi_dimensions() {
    let start = Instant::now();
    let mut results = Vec::new();
    for (n, want) in [(1usize, 1usize), (2, 4)] {
        for cutoff in [2, 4] {
            let k = spectral_torus::kuranishi_torus(n, cutoff);
            results.push((n, cutoff, k.model.dim_k_tangent(), want));
        }
    }
    let ok = results.iter().all(|&(_, _, got, want)| got == want);
    let elapsed = start.elapsed().as_secs_f64();
    criterion(
        2,
        "complex-torus slice dimensions 1 (n=1) and 4 (n=2), cutoff-independent",
        ok && elapsed < 60.0,
        &format!("{results:?} in {elapsed:.1}s"),
    );
}

#[test]
fn criterion_03_constant_deformations_have_zero_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let mut w = spectral_torus::BeltramiForm::zero(2, 2);
        for i in 0..2 {
            for jb in 0..2 {
                w.set(&[0, 0, 0, 0], i, jb, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
        worst = worst.max(spectral_torus::mc_residual(&w).total_norm());
    }
    criterion(
        3,
        "nonlinear residual of constant deformations is exactly zero",
        worst == 0.0,
        &format!("max residual {worst:e} over 20 random constant forms"),
    );
}

#[test]
fn criterion_04_pullback_bracket_oracle() {
    let start = Instant::now();
    // torus side (n = 2)
    let mut torus_slopes = Vec::new();
    {
        use spectral_torus::complex_ops::field_basis;
        use spectral_torus::flow::{pullback_standard, TorusField};
        let fb = field_basis(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut coeffs = DVector::from_fn(fb.dim(), |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let l1: f64 = coeffs.iter().map(|c| c.norm()).sum();
        coeffs /= C64::new(l1, 0.0);
        let chi = TorusField::new(2, 1, coeffs);
        let mut residuals = Vec::new();
        for &t in &[1e-2, 5e-3, 2.5e-3] {
            let w = pullback_standard(&chi, t, 4, 12, 3);
            residuals.push(spectral_torus::mc_residual(&w).total_norm());
        }
        torus_slopes.push((residuals[0] / residuals[1]).log2());
        torus_slopes.push((residuals[1] / residuals[2]).log2());
    }
    // 3-sphere side
    let mut s3_slopes = Vec::new();
    {
        use sasaki_deform::fields::Spaces;
        use sasaki_deform::mc::{integrability_q, mc_sasaki_residual};
        use sasaki_deform::pullback::{coordinates_to_params, pullback_coordinates, random_field, BandProjector};
        let spaces = Spaces::new(6);
        let proj = BandProjector::new(6, 2 * spaces.wb.dim() + 120);
        let field = random_field(6, 2, SEED);
        let mut totals = Vec::new();
        for &t in &[1e-2, 5e-3, 2.5e-3] {
            let (om, al) = pullback_coordinates(&field, t, 8, &proj);
            let (op_, ap_) = coordinates_to_params(&spaces, &om, &al);
            let (o1, o2) = spaces.omega_components(&op_);
            let mc = mc_sasaki_residual(&spaces, &o1, &o2);
            let q = integrability_q(&spaces, &o1, &o2, &ap_);
            totals.push((mc.total_norm().powi(2) + q.total_norm().powi(2)).sqrt());
        }
        s3_slopes.push((totals[0] / totals[1]).log2());
        s3_slopes.push((totals[1] / totals[2]).log2());
    }
    let min_slope = torus_slopes.iter().chain(s3_slopes.iter()).fold(f64::INFINITY, |a, &b| a.min(b));
    let elapsed = start.elapsed().as_secs_f64();
    criterion(
        4,
        "flow pullbacks of integrable structures: residual decays at third order",
        min_slope >= 2.7 && elapsed < 120.0,
        &format!("torus slopes {torus_slopes:?}, 3-sphere slopes {s3_slopes:?} in {elapsed:.1}s"),
    );
}

#[test]
fn criterion_05_ellipticity() {
    let rep = sasaki_deform::symbol_check(1000, SEED);
    criterion(
        5,
        "symbol injectivity over 1000 unit covectors",
        rep.min_singular_value > 1e-6,
        &format!("min singular value {:.3e} at covector {:?}", rep.min_singular_value, rep.argmin_covector),
    );
}

#[test]
fn criterion_06_contact_slice_dimension_growth() {
    let start = Instant::now();
    let mut dims = Vec::new();
    let mut dual_ok = true;
    for jmax in [1i32, 2, 3] {
        let spaces = sasaki_deform::fields::Spaces::new(2 * jmax);
        let keta = sasaki_deform::keta_tangent(&spaces);
        let oracle = sasaki_deform::contact::keta_dim_image_route(&spaces);
        dual_ok &= keta.dim == oracle;
        dims.push(keta.dim);
    }
    let grows = dims.windows(2).all(|w| w[0] < w[1]);
    let elapsed = start.elapsed().as_secs_f64();
    criterion(
        6,
        "contact slice dimension strictly increases and matches the dense recomputation",
        grows && dual_ok && elapsed < 180.0,
        &format!("dims {dims:?}, dual-route agreement {dual_ok} in {elapsed:.1}s"),
    );
}

#[test]
fn criterion_07_structure_verification_and_mutations() {
    let config = ExperimentConfig::defaults(ExperimentKind::S3Verify, SEED, 1.0);
    let (report, _) = run(&config).unwrap();
    let get = |name: &str| report.flags.iter().find(|f| f.name == name).unwrap();
    let standard_ok = ["spanning", "intersection", "involutivity", "d-eta-restriction"]
        .iter()
        .all(|c| get(&format!("echar-standard/{c}")).passed)
        && get("echar-standard/positivity").passed;
    let mut3 = get("echar-mutation/involutivity-only").passed;
    let mut5 = get("echar-mutation/positivity-only").passed;
    let mut4 = get("echar-mutation/d-eta-restriction").passed;
    criterion(
        7,
        "standard pair passes at 1e-12; targeted mutations fail their conditions",
        standard_ok && mut3 && mut5 && mut4,
        &format!(
            "standard {standard_ok}, involutivity-only {mut3}, positivity-only {mut5}, d-eta (with its dimension-one alias) {mut4}"
        ),
    );
}

#[test]
fn criterion_08_einstein_residuals() {
    let frame = su2_geometry::InvariantFrame::standard();
    let round = su2_geometry::einstein_residual(&frame, &su2_geometry::LeftInvariantMetric::round());
    let squashed = su2_geometry::einstein_residual(&frame, &su2_geometry::LeftInvariantMetric::new([1.0, 1.0, 2.0]));
    criterion(
        8,
        "round metric Einstein at 1e-12, squashed metric residual above 0.1",
        round <= 1e-12 && squashed > 0.1,
        &format!("round {round:e}, squashed {squashed:.3}"),
    );
}

#[test]
fn criterion_09_slice_engine_on_toys() {
    let start = Instant::now();
    let config = ExperimentConfig::defaults(ExperimentKind::SliceToy, SEED, 1.0);
    let (report, _) = run(&config).unwrap();
    let rt = report
        .flags
        .iter()
        .filter(|f| f.name.starts_with("toy-round-trip/"))
        .map(|f| f.value)
        .fold(0.0f64, f64::max);
    let idem = report
        .flags
        .iter()
        .filter(|f| f.name.starts_with("toy-retraction-idempotence/"))
        .map(|f| f.value)
        .fold(0.0f64, f64::max);
    let mc2 = report.flags.iter().find(|f| f.name == "toy-mc2-violations/so3-sym3").unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    criterion(
        9,
        "toy slices: round trip 1e-8, idempotence 1e-9, no minimality violations",
        rt <= 1e-8 && idem <= 1e-9 && mc2.passed && elapsed < 60.0,
        &format!("round trip {rt:.2e}, idempotence {idem:.2e}, violations {} in {elapsed:.1}s", mc2.value),
    );
}

#[test]
fn criterion_10_orbit_tangency() {
    let start = Instant::now();
    use sasaki_deform::fields::Spaces;
    use sasaki_deform::general::general_p;
    use sasaki_deform::pullback::{coordinates_to_params, pullback_coordinates, random_field, BandProjector};
    let spaces = Spaces::new(4);
    let proj = BandProjector::new(4, 2 * spaces.wb.dim() + 80);
    let mut slopes = Vec::new();
    for seed in 0..10u64 {
        let field = random_field(4, 2, SEED.wrapping_add(seed));
        let mut u = DVector::<C64>::zeros(spaces.n());
        let mut h = DVector::<C64>::zeros(spaces.n());
        for (i, &(tj, tm, tn)) in spaces.wb.labels.iter().enumerate() {
            let pos = field.wb.position(tj, tm, tn).unwrap();
            u[i] = (field.comp[0][pos] - C64::i() * field.comp[1][pos]) * 0.5;
            h[i] = field.comp[2][pos];
        }
        let (o1, o2, alpha) = general_p(&spaces, &h, &u);
        let mut errs = Vec::new();
        for &t in &[2e-2, 1e-2] {
            let (om, al) = pullback_coordinates(&field, t, 8, &proj);
            let (op_, ap_) = coordinates_to_params(&spaces, &om, &al);
            let want_o = spaces.omega_from_components(&(&o1 * C64::new(t, 0.0)), &(&o2 * C64::new(t, 0.0)));
            let eo = spaces.omega_basis.norm(&(op_ - want_o));
            let ea = spaces.alpha_basis.norm(&(ap_ - &alpha * t));
            errs.push((eo * eo + ea * ea).sqrt());
        }
        slopes.push((errs[0] / errs[1]).log2());
    }
    let min_slope = slopes.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let elapsed = start.elapsed().as_secs_f64();
    criterion(
        10,
        "pullback coordinates are tangent to the orbit direction at second order",
        min_slope >= 1.9 && elapsed < 120.0,
        &format!("min slope {min_slope:.3} over 10 fields in {elapsed:.1}s"),
    );
}

#[test]
fn criterion_11_deterministic_reports() {
    let a = serde_json::to_string_pretty(&verify(SEED, 1.0)).unwrap();
    let b = serde_json::to_string_pretty(&verify(SEED, 1.0)).unwrap();
    criterion(
        11,
        "two verify runs with the same seed produce byte-identical reports",
        a == b,
        &format!("{} bytes each", a.len()),
    );
}
