use jostlab::asymptotics::{
    certify_residual, certify_residual_noise, extract_series, extract_with, poles_from_taylor, s_model, ExtractOptions,
};
use jostlab::jacobi_gc::b_series;
use jostlab::opuc::{q_series, sz2_forward};
use jostlab::scalar::{c, cabs};
use jostlab::{AsymptoticSeries, Dd, PowerSeriesModel, Scalar, SeriesTerm, VerblunskyCoefficients};
use num_complex::Complex;

type C = Complex<f64>;

fn two_rate<T: Scalar>() -> AsymptoticSeries<T> {
    AsymptoticSeries::exact(vec![
        SeriesTerm::new(c(2.0, 0.0), vec![c(3.0, 0.0)]),
        SeriesTerm::new(c(3.0, 0.0), vec![c(0.0, 0.0), c(1.0, 0.0)]),
    ])
}

fn rates(s: &AsymptoticSeries<f64>) -> Vec<(f64, f64, usize)> {
    s.terms.iter().map(|t| (t.mu.re, t.mu.im, t.order())).collect()
}

#[test]
fn two_rates_with_a_linear_amplitude() {
    let x = two_rate::<f64>().realize(0, 60);
    let s = extract_series(&x, 10.0, 1e-8).unwrap();
    let r = rates(&s);
    assert_eq!(r.len(), 2);
    assert!((r[0].0 - 2.0).abs() < 1e-10 && r[0].2 == 1);
    assert!((r[1].0 - 3.0).abs() < 1e-8 && r[1].2 == 2);
    assert!((s.terms[1].poly[1].re - 1.0).abs() < 1e-7);
}

#[test]
fn extraction_is_idempotent() {
    let x = two_rate::<Dd>().realize(0, 120);
    let first = extract_with(&x, &ExtractOptions::new::<Dd>(10.0)).unwrap().series;
    let again = extract_with(&first.realize(0, 120), &ExtractOptions::new::<Dd>(10.0)).unwrap().series;
    assert_eq!(first.terms.len(), again.terms.len());
    for (a, b) in first.terms.iter().zip(&again.terms) {
        assert_eq!(a.order(), b.order());
        assert!(cabs(a.mu - b.mu) < Dd::of(1e-20) * cabs(a.mu));
    }
}

#[test]
fn interleaved_example_has_rates_at_r_and_r_squared() {
    let a = VerblunskyCoefficients::<Dd>::odd_geometric(Dd::of(2.0)).unwrap();
    let j = sz2_forward(&a).unwrap();
    let b = b_series(&j, 160).unwrap();
    let ex = extract_with(&b.coeffs, &ExtractOptions::new::<Dd>(6.0)).unwrap();
    let mut got: Vec<f64> = ex.series.terms.iter().map(|t| t.mu.re.approx()).collect();
    got.sort_by(f64::total_cmp);
    assert_eq!(got.len(), 4, "{got:?}");
    for (g, w) in got.iter().zip([-4.0, -2.0, 2.0, 4.0]) {
        assert!((g - w).abs() < 1e-20f64.max(1e-12 * w.abs()), "{got:?}");
    }
    assert!(ex.series.terms.iter().all(|t| t.order() == 1));
    // Taylor poles of B agree with the rates (order = degree + 1)
    let m = poles_from_taylor(&b, Dd::of(6.0), Dd::of(1e-9)).unwrap();
    let poles = m.poles();
    assert_eq!(poles.len(), 4);
    for t in &ex.series.terms {
        let p = poles.points().iter().find(|p| cabs(p.z - t.mu) < Dd::of(1e-9)).expect("matching pole");
        assert_eq!(p.order, t.order());
    }
    // nothing is left above the noise after removing the principal parts
    let cert = certify_residual(&b.coeffs, &ex.series);
    assert!(cert.rate < 1.0 / 6.0, "{cert:?}");
}

#[test]
fn taylor_poles_of_simple_functions() {
    let geo: Vec<C> = (0..60).map(|k| C::new(0.5f64.powi(k), 0.0)).collect();
    let m = poles_from_taylor(&PowerSeriesModel::new(geo, 2.0).unwrap(), 6.0, 1e-9).unwrap();
    let p = m.poles();
    assert_eq!(p.len(), 1);
    assert!((p.points()[0].z - 2.0).norm() < 1e-10 && p.points()[0].order == 1);

    let a = VerblunskyCoefficients::<f64>::odd_geometric(2.0).unwrap();
    let s = s_model(&a, 6.0).unwrap().poles();
    let mut got: Vec<f64> = s.locations().iter().map(|z| z.re).collect();
    got.sort_by(f64::total_cmp);
    assert_eq!(got.len(), 2);
    assert!((got[0] + 2.0).abs() < 1e-10 && (got[1] - 2.0).abs() < 1e-10);

    let ad = a.cast::<Dd>();
    let q = q_series(&ad, 200).unwrap();
    let qp = poles_from_taylor(&q, Dd::of(6.0), Dd::of(1e-9)).unwrap().poles();
    let mut got: Vec<f64> = qp.locations().iter().map(|z| z.re.approx()).collect();
    got.sort_by(f64::total_cmp);
    assert_eq!(got.len(), 2);
    assert!((got[0] + 4.0).abs() < 4e-6 && (got[1] - 4.0).abs() < 4e-6);
}

#[test]
fn deleting_a_term_shows_its_rate() {
    let x = two_rate::<f64>().realize(0, 60);
    let only_first = AsymptoticSeries::exact(vec![two_rate::<f64>().terms[0].clone()]);
    let cert = certify_residual(&x, &only_first);
    assert!((cert.rate - 1.0 / 3.0).abs() < 0.05, "{cert:?}");
    assert!(certify_residual(&x, &two_rate()).rate < 1e-3);
}

#[test]
fn noise_is_reported_not_failed() {
    let mut x = AsymptoticSeries::exact(vec![SeriesTerm::new(c(2.0, 0.0), vec![c(1.0, 0.0)])]).realize(0, 80);
    for (n, v) in x.iter_mut().enumerate() {
        *v += C::new(if n % 2 == 0 { 1e-12 } else { -1e-12 }, 0.0);
    }
    let ex = extract_with(&x, &ExtractOptions { noise: 1e-12, ..ExtractOptions::new::<f64>(10.0) }).unwrap();
    assert!((ex.series.terms[0].mu - 2.0).norm() < 1e-6);
    let cert = certify_residual_noise(&x, &ex.series, 1e-16);
    assert!(cert.noise_limited, "{cert:?}");
}

#[test]
fn real_data_gives_conjugate_rates() {
    // x_n = 2 Re (μ^{-n}) with μ = 1.5 e^{0.7i}
    let mu = C::from_polar(1.5, 0.7);
    let x: Vec<C> = (0..80).map(|n| C::new(2.0 * (C::new(1.0, 0.0) / mu).powu(n).re, 0.0)).collect();
    let s = extract_series(&x, 4.0, 1e-8).unwrap();
    assert_eq!(s.terms.len(), 2);
    let (a, b) = (s.terms[0].mu, s.terms[1].mu);
    assert!((a - b.conj()).norm() < 1e-10);
    assert!((a - mu).norm().min((a - mu.conj()).norm()) < 1e-10);
}
