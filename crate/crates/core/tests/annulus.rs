use jostlab::annulus_check::{
    laurent_profile, radius_estimate, radius_from_coefficients, theorem13_check, theorem15_check, theorem15_profiles,
    Grid, Side,
};
use jostlab::jacobi_gc::b_eval;
use jostlab::model::rank_one_b;
use jostlab::opuc::sz2_forward;
use jostlab::{JacobiParameters, VerblunskyCoefficients};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type C = Complex<f64>;

fn radius(v: &Value) -> Option<f64> {
    v["radius"].as_str().and_then(|s| s.parse().ok())
}

fn example() -> (VerblunskyCoefficients<f64>, JacobiParameters<f64>) {
    let a = VerblunskyCoefficients::odd_geometric(2.0).unwrap();
    let j = sz2_forward(&a).unwrap();
    (a, j)
}

#[test]
fn rank_one_combination_is_a_polynomial() {
    // (1-z²)(1-βz) + z²(1-β/z)(1-βz) = (1-βz)²
    let beta = 0.7;
    let p = rank_one_b(beta);
    let one = C::new(1.0, 0.0);
    let f = |z: C| Ok((one - z * z) * (one - z * beta) + z * z * (one - beta / z) * b_eval(&p, z));
    let prof = laurent_profile(f, 1.1, 4.0, 4, 256, 1e-15).unwrap();
    for c in &prof.circles {
        assert!((c.coeff(0) - 1.0).norm() < 1e-13);
        assert!((c.coeff(1) + 2.0 * beta).norm() < 1e-13);
        assert!((c.coeff(2) - beta * beta).norm() < 1e-12);
        for k in 3..40 {
            assert!(c.term(k) < 1e-13, "k = {k}");
        }
    }
    assert!(prof.max_inconsistency() < 1e-13);
    assert_eq!(radius_estimate(&prof, Side::Outer).radius, None);
}

#[test]
fn noisy_geometric_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let c: Vec<C> = (0..80).map(|k| C::new(0.25f64.powi(k) + 1e-14 * rng.gen_range(-1.0..1.0), 0.0)).collect();
    let e = radius_from_coefficients(&c, 1e-14);
    assert!((e.radius.unwrap() / 4.0 - 1.0).abs() < 0.02, "{e:?}");
    // 4^{-k} reaches 1e-12 near k = 20: the window ends there
    assert!(e.window.1 <= 21 && e.usable >= 16, "{e:?}");
}

#[test]
fn doubling_points_changes_nothing_above_aliasing() {
    let (_, j) = example();
    let f = |z: C| Ok(b_eval(&j, z));
    let a = laurent_profile(f, 1.0, 1.8, 2, 1024, 1e-15).unwrap();
    let b = laurent_profile(f, 1.0, 1.8, 2, 2048, 1e-15).unwrap();
    for (ca, cb) in a.circles.iter().zip(&b.circles) {
        let floor = ca.floor(1e-15);
        for k in 0..256 {
            if ca.term(k) > floor {
                assert!((ca.coeff(k) - cb.coeff(k)).norm() * ca.r.powi(k as i32) < 1e-12 * ca.scale, "k = {k}");
            }
        }
    }
}

#[test]
fn example_b_and_combination_radii() {
    let (_, j) = example();
    let r = theorem15_check(&j, 1e-12, &Grid::default()).unwrap();
    let b = radius(&r["radii"]["B"]).unwrap();
    let combo = radius(&r["radii"]["combo"]).unwrap();
    assert!((b / 2.0 - 1.0).abs() < 0.05, "{b}");
    assert!((combo / 4.0 - 1.0).abs() < 0.05, "{combo}");
    assert_eq!(r["pass"], true);
    assert_eq!(r["sharp"], true);
}

#[test]
fn example_profiles_agree_across_radii() {
    let (_, j) = example();
    let (b, combo, model) =
        theorem15_profiles(&j, 1e-12, &Grid { n_radii: 4, n_points: 1024, max_radius: 4.0 }).unwrap();
    assert!(model.is_some());
    assert!(b.max_inconsistency() < 1e-10, "{}", b.max_inconsistency());
    assert!(combo.max_inconsistency() < 1e-8, "{}", combo.max_inconsistency());
    assert!(combo.to_csv().lines().count() > 100);
}

#[test]
fn trivial_fixtures_pass_with_grid_bounds() {
    for p in [JacobiParameters::<f64>::free(), rank_one_b(2.5)] {
        let r = theorem15_check(&p, 1e-12, &Grid::default()).unwrap();
        assert_eq!(r["pass"], true);
        assert_eq!(r["radii"]["B"]["radius"], "≥ grid bound");
        assert_eq!(r["radii"]["combo"]["radius"], "≥ grid bound");
    }
}

#[test]
fn example_s_r_and_q() {
    let (a, _) = example();
    let r = theorem13_check(&a, 1e-12, &Grid::default()).unwrap();
    assert_eq!(r["pass"], true);
    let s = radius(&r["radii"]["S"]).unwrap();
    let rs = radius(&r["radii"]["r_minus_S"]).unwrap();
    let q = radius(&r["radii"]["Q"]).unwrap();
    assert!((s / 2.0 - 1.0).abs() < 0.05);
    assert!(rs >= 8.0 * 0.95, "{rs}");
    assert!((q / 4.0 - 1.0).abs() < 0.05);
    let poles: Vec<f64> =
        r["Q_pole_locations"].as_array().unwrap().iter().map(|p| p[0].as_str().unwrap().parse().unwrap()).collect();
    assert_eq!(poles.len(), 2);
    for (p, want) in poles.iter().zip([4.0, -4.0]) {
        assert!((p / want - 1.0).abs() < 1e-6, "{p}");
    }
}

#[test]
fn finite_alphas_are_unbounded() {
    for a in [VerblunskyCoefficients::<f64>::zero(), VerblunskyCoefficients::from_head(vec![0.3]).unwrap()] {
        let r = theorem13_check(&a, 1e-12, &Grid::default()).unwrap();
        assert_eq!(r["pass"], true);
        for k in ["S", "r_minus_S", "Q"] {
            assert_eq!(r["radii"][k]["radius"], "≥ grid bound", "{k}");
        }
    }
}
