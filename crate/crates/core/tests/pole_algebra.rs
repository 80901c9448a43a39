use jostlab::asymptotics::b_model;
use jostlab::model::{Pole, PoleSet};
use jostlab::opuc::sz2_forward;
use jostlab::pole_algebra::{check_containment, g_m, g_odd, g_tilde, mutual_containment, Semigroup};
use jostlab::spectral_m::pole_sets;
use jostlab::{Dd, Scalar, VerblunskyCoefficients};
use num_complex::Complex;

type C = Complex<f64>;

fn set(zs: &[C], cutoff: f64) -> PoleSet<f64> {
    PoleSet::from_points(zs, cutoff).unwrap()
}

/// Generators not closed under conjugation; the generated sets close them.
fn open_set(zs: &[C], cutoff: f64) -> PoleSet<f64> {
    PoleSet::unchecked(zs.iter().map(|&z| Pole { z, order: 1 }).collect(), cutoff)
}

fn real(xs: &[f64]) -> Vec<C> {
    xs.iter().map(|&x| C::new(x, 0.0)).collect()
}

fn sorted_re(zs: &[C]) -> Vec<f64> {
    let mut v: Vec<f64> = zs.iter().map(|z| z.re).collect();
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn m_fold_examples() {
    let g = g_m(&set(&real(&[2.0, -2.0]), 8.0), 2, 8.0).unwrap();
    assert_eq!(sorted_re(&g.locations()), vec![-4.0, 4.0]);
    let g = g_m(&set(&real(&[3.0, -3.0]), 30.0), 3, 30.0).unwrap();
    assert_eq!(sorted_re(&g.locations()), vec![-27.0, 27.0]);
    let g = g_m(&set(&real(&[2.0, 3.0, -2.0, -3.0]), 10.0), 2, 10.0).unwrap();
    assert_eq!(sorted_re(&g.locations()), vec![-9.0, -6.0, -4.0, 4.0, 6.0, 9.0]);
    // every element records a witnessing product
    for e in &g.elements {
        assert_eq!(e.depth, 2);
        assert_eq!(e.factors[0] * e.factors[1], e.z);
    }
}

#[test]
fn tilde_of_a_single_generator() {
    let omega = PoleSet::unchecked(vec![Pole { z: C::new(3.0, 0.0), order: 1 }], 27.0);
    let g = g_tilde(&omega, 27.0).unwrap();
    assert_eq!(sorted_re(&g.locations()), vec![-27.0, -9.0, -3.0, 3.0, 9.0, 27.0]);
    let r = check_containment(&set(&real(&[5.0]), 27.0), &omega, 27.0, 1e-6, Semigroup::Tilde).unwrap();
    assert!(!r.contained);
    assert_eq!(r.violations, vec![C::new(5.0, 0.0)]);
}

#[test]
fn larger_cutoff_gives_a_superset() {
    let omega = open_set(&[C::new(1.5, 0.5), C::new(-2.2, 0.0)], 40.0);
    for kind in [Semigroup::Tilde, Semigroup::Odd] {
        let small = jostlab::pole_algebra::generate(&omega, 10.0, kind).unwrap();
        let large = jostlab::pole_algebra::generate(&omega, 40.0, kind).unwrap();
        assert!(small.len() < large.len());
        for z in small.locations() {
            assert!(!large.witnesses(z, 1e-12).is_empty(), "{z} lost at the larger cutoff");
        }
        assert!(large.locations().iter().all(|z| z.norm() <= 40.0 * (1.0 + 1e-9)));
    }
}

#[test]
fn generated_sets_are_closed_under_conjugation() {
    let omega = open_set(&[C::new(1.2, 0.9), C::new(0.0, 2.0)], 30.0);
    for g in [g_tilde(&omega, 30.0).unwrap(), g_odd(&omega, 30.0).unwrap()] {
        for z in g.locations() {
            assert!(!g.witnesses(z.conj(), 1e-12).is_empty(), "conjugate of {z} missing");
        }
    }
}

#[test]
fn generators_inside_the_disk_are_rejected() {
    assert!(g_tilde(&PoleSet::unchecked(vec![Pole { z: C::new(0.5, 0.0), order: 1 }], 8.0), 8.0).is_err());
    assert!(g_m(&set(&real(&[2.0]), 8.0), 0, 8.0).is_err());
}

#[test]
fn example_pole_sets_generate_each_other() {
    let a = VerblunskyCoefficients::<Dd>::odd_geometric(Dd::of(2.0)).unwrap();
    let j = sz2_forward(&a).unwrap();
    let cutoff = Dd::of(8.0);
    let p = pole_sets(&j, cutoff, Dd::of(1e-14)).unwrap().p;
    let t = b_model(&j, cutoff).unwrap().poles();
    let re = |s: &PoleSet<Dd>| {
        sorted_re(&s.locations().iter().map(|z| C::new(z.re.approx(), z.im.approx())).collect::<Vec<_>>())
    };
    let close = |got: Vec<f64>, want: &[f64]| {
        got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() < 1e-8)
    };
    assert!(close(re(&p), &[-8.0, -2.0, 2.0, 8.0]), "{:?}", re(&p));
    assert!(close(re(&t), &[-4.0, -2.0, 2.0, 4.0]), "{:?}", re(&t));
    let (pt, tp) = mutual_containment(&p, &t, cutoff, Dd::of(1e-6), Semigroup::Tilde).unwrap();
    assert!(pt.contained && tp.contained);
    // 8 = 2·4 and 4 = 2·2
    let eight = pt.matches.iter().find(|m| (m.point.re.approx() - 8.0).abs() < 1e-6).unwrap();
    assert!(eight.witnesses.iter().any(|w| w.depth >= 2));
}
