use jostlab::jacobi_gc::{b_series, circle, jost_u};
use jostlab::opuc::{
    b_from_decomposition, d_inverse, jost_from_d, r_eval, s_series, sz2_forward, sz2_inverse, szego_iterate,
};
use jostlab::VerblunskyCoefficients;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex<f64>;

fn random_alphas(rng: &mut ChaCha8Rng) -> VerblunskyCoefficients<f64> {
    let len = rng.gen_range(1..=8);
    VerblunskyCoefficients::from_head((0..len).map(|_| rng.gen_range(-0.5..0.5)).collect()).unwrap()
}

#[test]
fn two_hand_steps() {
    let a = VerblunskyCoefficients::from_head(vec![0.0, 0.5]).unwrap();
    let s = szego_iterate(&a, 2).unwrap();
    let re: Vec<f64> = s[2].phi.iter().map(|c| c.re).collect();
    assert_eq!(re, vec![-0.5, 0.0, 1.0]);
    let re: Vec<f64> = s[2].phi_star.iter().map(|c| c.re).collect();
    assert_eq!(re, vec![1.0, 0.0, -0.5]);
    for z in circle::<f64>(0.7, 6, 0.0) {
        let want = (C::new(1.0, 0.0) - z * z / 2.0) / 0.75f64.sqrt();
        assert!((d_inverse(&a, z, 1e-15).unwrap() - want).norm() < 1e-15);
        let u = (C::new(1.0, 0.0) - z * z / 2.0) / 1.5f64.sqrt();
        assert!((jost_from_d(&a, z, 1e-15).unwrap() - u).norm() < 1e-15);
    }
}

#[test]
fn example_s_closed_form() {
    let a = VerblunskyCoefficients::odd_geometric(2.0).unwrap();
    let s = s_series(&a, 200).unwrap();
    for z in circle::<f64>(1.5, 8, 0.25) {
        let want = C::new(1.0, 0.0) - (z * z / 2.0) / (1.0 - z * z / 4.0);
        assert!((s.eval(z) - want).norm() < 1e-9);
    }
}

#[test]
fn r_is_symmetric_on_the_real_line() {
    let a = VerblunskyCoefficients::from_head(vec![0.3]).unwrap();
    for x in [0.2, 0.5, -0.7] {
        let z = C::new(x, 0.0);
        let p = r_eval(&a, z, 1e-15).unwrap() * r_eval(&a, C::new(1.0, 0.0) / z, 1e-15).unwrap();
        assert!((p - 1.0).norm() < 1e-14);
    }
}

#[test]
fn example_image_and_inverse() {
    let a = VerblunskyCoefficients::<f64>::odd_geometric(2.0).unwrap();
    let j = sz2_forward(&a).unwrap();
    assert!((j.a2m1(1) - 5.0 / 16.0).abs() < 1e-15);
    assert!((1..30).all(|n| j.b(n) == 0.0));
    let back = sz2_inverse(&j, 1e-13).unwrap();
    for n in 0..40 {
        assert!((back.alpha(n) - a.alpha(n)).abs() < 1e-12, "n = {n}");
    }
}

#[test]
fn bridge_on_random_finite_alphas() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let a = random_alphas(&mut rng);
        let j = sz2_forward(&a).unwrap();
        for r in [0.0, 0.45, 0.9] {
            for z in circle::<f64>(r, 12, 0.5) {
                let d = (jost_from_d(&a, z, 1e-15).unwrap() - jost_u(&j, z, 1e-15).unwrap()).norm();
                assert!(d < 1e-12, "{a:?} z = {z}: {d:e}");
            }
        }
    }
}

#[test]
fn bridge_on_the_example_reaches_the_origin() {
    let a = VerblunskyCoefficients::odd_geometric(2.0).unwrap();
    let j = sz2_forward(&a).unwrap();
    for r in [0.0, 0.3, 0.9] {
        for z in circle::<f64>(r, 8, 0.5) {
            assert!((jost_from_d(&a, z, 1e-15).unwrap() - jost_u(&j, z, 1e-15).unwrap()).norm() < 1e-12);
        }
    }
}

#[test]
fn decomposition_reproduces_b() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let a = random_alphas(&mut rng);
        let (coeffs, negative) = b_from_decomposition(&a, 30).unwrap();
        let b = b_series(&sz2_forward(&a).unwrap(), 30).unwrap();
        assert!(negative < 1e-15);
        for (k, c) in coeffs.iter().enumerate() {
            assert!((c - b.coeffs[k].re).abs() < 1e-14, "k = {k}");
        }
    }
}
