use jostlab::jacobi_gc::{circle, jost_u};
use jostlab::model::rank_one_b;
use jostlab::spectral_m::*;
use jostlab::{opuc, JacobiParameters, VerblunskyCoefficients};
use num_complex::Complex;

type C = Complex<f64>;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// ⟨δ₁, (E - J_N)⁻¹ δ₁⟩ for the N×N truncation, E = z + 1/z (Thomas algorithm).
fn resolvent_oracle(p: &JacobiParameters<f64>, z: C, n: usize) -> C {
    let e = z + 1.0 / z;
    // solve (E - J_N) x = δ₁ from the bottom: continued fraction of the finite matrix
    let mut g = C::new(0.0, 0.0);
    for k in (1..=n).rev() {
        let a2 = if k < n { p.a(k) * p.a(k) } else { 0.0 };
        g = 1.0 / (e - p.b(k) - a2 * g);
    }
    g
}

fn example_image() -> JacobiParameters<f64> {
    let al = VerblunskyCoefficients::<f64>::odd_geometric(2.0).unwrap();
    opuc::sz2_forward(&al).unwrap()
}

#[test]
fn free_m_is_z_and_matches_resolvent() {
    let p = JacobiParameters::<f64>::free();
    for z in circle::<f64>(0.9, 16, 0.3) {
        let m = m_eval(&p, z, 1e-14).unwrap();
        assert!((m - z).norm() < 1e-14);
        assert!((m - resolvent_oracle(&p, z, 4000)).norm() < 1e-10);
    }
}

#[test]
fn example_m_matches_truncated_resolvent() {
    let p = example_image();
    for z in circle::<f64>(0.9, 12, 0.1).into_iter().chain(circle::<f64>(0.4, 8, 0.2)) {
        let m = m_eval(&p, z, 1e-14).unwrap();
        let o = resolvent_oracle(&p, z, 3000);
        assert!((m - o).norm() < 1e-10, "z = {z}: {m} vs {o}");
    }
}

#[test]
fn rank_one_m_closed_form() {
    for beta in [0.3, -0.7, 2.5] {
        let p = rank_one_b(beta);
        for z in circle::<f64>(0.35, 10, 0.25) {
            let m = m_eval(&p, z, 1e-14).unwrap();
            assert!((m - z / (1.0 - beta * z)).norm() < 1e-13);
        }
    }
}

#[test]
fn continuation_value_at_five_halves() {
    let p = rank_one_b(2.5);
    let u = JostFunction::new(&p, 8.0, 1e-14).unwrap();
    let m = m_continue(&p, &u, c(2.5, 0.0), 1e-14).unwrap();
    assert!((m - c(-10.0 / 21.0, 0.0)).norm() < 1e-11, "{m}");
    let z = c(1.7, -0.6);
    assert!((m_continue(&p, &u, z, 1e-14).unwrap() - z / (1.0 - 2.5 * z)).norm() < 1e-13);
    let free = JacobiParameters::<f64>::free();
    let uf = JostFunction::new(&free, 8.0, 1e-14).unwrap();
    let z = c(1.3, 0.4);
    assert!((m_continue(&free, &uf, z, 1e-14).unwrap() - z).norm() < 1e-13);
}

#[test]
fn continuation_identity_on_example_image() {
    let p = example_image();
    let u = JostFunction::new(&p, 8.0, 1e-14).unwrap();
    for z in circle::<f64>(1.3, 20, 0.5) {
        let r = continuation_residual(&p, &u, z, 1e-14).unwrap();
        assert!(r < 1e-9, "z = {z}: residual {r:e}");
    }
}

#[test]
fn stripping_rank_one_gives_free() {
    let f = strip(&rank_one_b(0.6), 1, 12, 1e-14).unwrap();
    assert!(f.params.support() == Some(0));
    assert!((f.u.coeffs[0] - c(1.0, 0.0)).norm() < 1e-15);
    assert!(f.u.coeffs[1..].iter().all(|v| v.norm() < 1e-15));
    // M^{(1)} = z
    assert!((f.m.coeffs[1] - c(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn stripping_identity_on_half_circle() {
    let p = example_image();
    let tol = 1e-14;
    let s0 = strip(&p, 0, 80, tol).unwrap();
    let s1 = strip(&p, 1, 80, tol).unwrap();
    for z in circle::<f64>(0.5, 24, 0.1) {
        let lhs = s1.u.eval(z);
        let rhs = p.a(1) / z * s0.u.eval(z) * s0.m.eval(z);
        assert!((lhs - rhs).norm() < 1e-12, "{lhs} vs {rhs}");
        assert!((s0.m.eval(z) - m_eval(&p, z, tol).unwrap()).norm() < 1e-12);
        assert!((s1.u.eval(z) - jost_u(&p.shifted(1), z, tol).unwrap()).norm() < 1e-12);
    }
}

#[test]
fn bound_state_of_rank_one() {
    let d = eigen_data(&rank_one_b(2.5f64), 1e-14).unwrap();
    assert_eq!(d.eigen.len(), 1);
    let e = &d.eigen[0];
    assert!((e.z0 - 0.4).abs() < 1e-12);
    assert!((e.e0 - 2.9).abs() < 1e-12);
    assert!((e.w0 - 0.84).abs() < 1e-12);
    assert!((e.class.residue_m - c(-0.16, 0.0)).norm() < 1e-12);
    assert!(e.class.canonical);
    assert!(!d.resonance_at_plus1 && !d.resonance_at_minus1);
    for beta in [0.0f64, 0.5, -0.9] {
        assert!(eigen_data(&rank_one_b(beta), 1e-14).unwrap().eigen.is_empty());
    }
}

#[test]
fn rank_one_pole_sets_are_empty() {
    let s = pole_sets(&rank_one_b(2.5), 8.0, 1e-14).unwrap();
    assert!(s.p1.is_empty() && s.p2.is_empty() && s.p.is_empty());
    let f = pole_sets(&JacobiParameters::<f64>::free(), 8.0, 1e-14).unwrap();
    assert!(f.p.is_empty());
}

#[test]
fn perturbed_weight_is_noncanonical() {
    let (u, zeros) = constructed_rank_one(2.5, 1.0, 8.0);
    assert!(zeros[0].canonical);
    let (u2, zeros2) = constructed_rank_one(2.5, 1.1, 8.0);
    assert!(!zeros2[0].canonical);
    let s = pole_sets_from(&u2, &zeros2, 8.0).unwrap();
    assert!(s.p1.is_empty());
    assert_eq!(s.p2.len(), 1);
    assert!((s.p2.points()[0].z - c(2.5, 0.0)).norm() < 1e-12);
    assert!(pole_sets_from(&u, &zeros, 8.0).unwrap().p.is_empty());
}

#[test]
fn pole_at_reciprocal_is_noncanonical() {
    let (u, zeros) = constructed_pole_at_reciprocal(2.5, 8.0);
    assert!((u.eval(c(0.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-13);
    assert!(u.eval(c(0.4, 0.0)).unwrap().norm() < 1e-13);
    assert!(zeros[0].pole_at_reciprocal && !zeros[0].canonical);
    let s = pole_sets_from(&u, &zeros, 8.0).unwrap();
    assert_eq!(s.p.len(), 1);
}

#[test]
fn regular_level_strips_past_bound_states() {
    assert_eq!(regular_level(&JacobiParameters::<f64>::free(), 1e-14, 8).unwrap(), 0);
    assert_eq!(regular_level(&rank_one_b(0.3), 1e-14, 8).unwrap(), 0);
    assert_eq!(regular_level(&rank_one_b(2.5), 1e-14, 8).unwrap(), 1);
    let two = JacobiParameters::new(vec![(1.0, 3.0), (1.0, 3.0)], jostlab::model::Tail::Free).unwrap();
    assert_eq!(eigen_data(&two, 1e-14).unwrap().eigen.len(), 2);
    assert_eq!(regular_level(&two, 1e-14, 8).unwrap(), 2);
    assert!(regular_level(&two, 1e-14, 1).is_err());
}
