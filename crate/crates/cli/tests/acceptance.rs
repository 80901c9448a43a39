//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime.
//!
//! Runs without the libtest harness so the lines appear in plain test output.
//! The process fails on any FAIL except a known-unattainable one whose
//! documented cause is confirmed by the run itself.

use std::time::{Duration, Instant};

use jostlab::annulus_check::{theorem13_report, theorem15_report, Grid};
use jostlab::asymptotics::{b_model, certify_residual, extract_series};
use jostlab::jacobi_gc::{born_residual, circle, jost_u};
use jostlab::model::{rank_one_a, rank_one_b, AsymptoticSeries, PoleSet, SeriesTerm, Tail};
use jostlab::opuc::{jost_from_d, sz2_forward, sz2_inverse};
use jostlab::pole_algebra::{check_containment, Semigroup};
use jostlab::scalar::cabs;
use jostlab::spectral_m::{continuation_residual_with, eigen_data, m_eval, pole_sets, JostFunction};
use jostlab::{Dd, JacobiParameters, Scalar, VerblunskyCoefficients};
use jostlab_cli::tasks::annulus_grid;
use jostlab_cli::{fixtures, run_scenario, Config, Scenario, Task};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type C = Complex<f64>;

struct Verdict {
    pass: bool,
    detail: String,
    /// Set when a failure is known to be unattainable and the run confirms why.
    known: Option<String>,
}

impl Verdict {
    fn new(pass: bool, detail: String) -> Self {
        Verdict { pass, detail, known: None }
    }
}

fn example() -> (VerblunskyCoefficients<f64>, JacobiParameters<f64>) {
    let a = VerblunskyCoefficients::odd_geometric(2.0).unwrap();
    let j = sz2_forward(&a).unwrap();
    (a, j)
}

fn example_dd() -> JacobiParameters<Dd> {
    sz2_forward(&VerblunskyCoefficients::<Dd>::odd_geometric(Dd::of(2.0)).unwrap()).unwrap()
}

fn radius(v: &Value) -> Option<f64> {
    v["radius"].as_str().and_then(|s| s.parse().ok())
}

fn real_parts(p: &PoleSet<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = p.locations().iter().map(|z| z.re).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn matches(got: &[f64], want: &[f64], rel: f64) -> bool {
    got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() <= rel * w.abs())
}

fn c1_sharpness() -> Verdict {
    let (a, j) = example();
    let (r13, _) = theorem13_report(&a, 1e-12, &Grid::default()).unwrap();
    let q: Vec<f64> = r13["Q_pole_locations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| z[0].as_str().unwrap().parse::<f64>().unwrap())
        .collect();
    let mut q = q;
    q.sort_by(f64::total_cmp);
    let q_ok = matches(&q, &[-4.0, 4.0], 1e-6);
    let (r15, _) = theorem15_report(&j, 1e-12, &Grid::default()).unwrap();
    let (combo, b) = (radius(&r15["radii"]["combo"]), radius(&r15["radii"]["B"]));
    let near = |r: Option<f64>, x: f64| r.is_some_and(|r| (r / x - 1.0).abs() <= 0.05);
    Verdict::new(
        q_ok && near(combo, 4.0) && near(b, 2.0),
        format!("Q poles {q:?}; combination radius {combo:?} (want 4); B radius {b:?} (want 2)"),
    )
}

fn c2_rank_one() -> Verdict {
    let tol = 1e-14;
    let grid: Vec<C> = (1..=5).flat_map(|i| circle::<f64>(0.18 * i as f64, 10, 0.3)).collect();
    let mut worst: f64 = 0.0;
    for beta in [0.3, -0.7, 2.5] {
        let p = rank_one_b(beta);
        for &z in &grid {
            let u = jost_u(&p, z, tol).unwrap();
            let m = m_eval(&p, z, tol).unwrap();
            let one = C::new(1.0, 0.0);
            worst =
                worst.max((u - (one - z * beta)).norm()).max(((m - z / (one - z * beta)) / (one + m.norm())).norm());
        }
    }
    let d = eigen_data(&rank_one_b(2.5), tol).unwrap();
    let e = &d.eigen;
    let ok_e = e.len() == 1
        && (e[0].z0 - 0.4).abs() < 1e-10
        && (e[0].e0 - 2.9).abs() < 1e-10
        && (e[0].w0 - 0.84).abs() < 1e-10
        && e[0].class.canonical;
    Verdict::new(
        worst < 1e-12 && ok_e,
        format!(
            "max error of u, M over {} points {:.2e}; z0 {:?} E0 {:?} w0 {:?} canonical {:?}",
            grid.len(),
            worst,
            e.first().map(|e| e.z0),
            e.first().map(|e| e.e0),
            e.first().map(|e| e.w0),
            e.first().map(|e| e.class.canonical)
        ),
    )
}

fn c3_continuation() -> Verdict {
    let tol = 1e-14;
    let grid = annulus_grid::<f64>(1.5);
    let reach = 1.5 * 1.05;
    let mut parts = Vec::new();
    let mut ok = true;
    let cases: Vec<(&str, JacobiParameters<f64>)> = vec![
        ("free", JacobiParameters::free()),
        ("rank-one-small", rank_one_b(0.3)),
        ("rank-one-bound-state", rank_one_b(2.5)),
        ("example image", example().1),
    ];
    for (name, p) in cases {
        let u = JostFunction::new(&p, reach, tol).unwrap();
        let u1 = JostFunction::new(&p.shifted(1), reach, tol).unwrap();
        let worst = grid.iter().map(|&z| continuation_residual_with(&p, &u, &u1, z, tol).unwrap()).fold(0.0, f64::max);
        ok &= worst < 1e-9;
        parts.push(format!("{name} {worst:.2e}"));
    }
    Verdict::new(ok, format!("{} points; max residual: {}", grid.len(), parts.join(", ")))
}

fn random_alphas(seed: u64) -> Vec<VerblunskyCoefficients<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..10)
        .map(|_| {
            let len = rng.gen_range(1..=8);
            let head: Vec<f64> = (0..len).map(|_| rng.gen_range(-0.5..0.5)).collect();
            VerblunskyCoefficients::new(head, Tail::Free).unwrap()
        })
        .collect()
}

fn c4_bridge() -> Verdict {
    let grid: Vec<C> = std::iter::once(C::new(0.0, 0.0))
        .chain((1..=6).flat_map(|i| circle::<f64>(0.15 * i as f64, 16, 0.25)))
        .collect();
    let mut worst: f64 = 0.0;
    for a in random_alphas(4) {
        let j = sz2_forward(&a).unwrap();
        for &z in &grid {
            worst = worst.max((jost_from_d(&a, z, 1e-15).unwrap() - jost_u(&j, z, 1e-15).unwrap()).norm());
        }
    }
    Verdict::new(worst < 1e-10, format!("10 vectors, {} points in |z| ≤ 0.9: max difference {worst:.2e}", grid.len()))
}

fn c5_round_trip() -> Verdict {
    let mut worst: f64 = 0.0;
    for a in random_alphas(4) {
        let back = sz2_inverse(&sz2_forward(&a).unwrap(), 1e-15).unwrap();
        let (x, y) = (a.realize(16).unwrap(), back.realize(16).unwrap());
        worst = x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(worst, f64::max);
    }
    Verdict::new(worst < 1e-9, format!("10 vectors: sup-norm error {worst:.2e}"))
}

/// Up to four terms, real rates or conjugate pairs, separated moduli.
fn synthetic(rng: &mut ChaCha8Rng) -> AsymptoticSeries<Dd> {
    let mut terms: Vec<SeriesTerm<Dd>> = Vec::new();
    let want = rng.gen_range(1..=4);
    while terms.len() < want {
        let modulus = rng.gen_range(1.2..5.0);
        let pair = terms.len() + 2 <= want && rng.gen_bool(0.5);
        let arg: f64 = if pair {
            rng.gen_range(0.3..2.8)
        } else if rng.gen_bool(0.5) {
            0.0
        } else {
            std::f64::consts::PI
        };
        let mu = Complex::from_polar(modulus, arg);
        if terms.iter().any(|t| {
            let m = Complex::new(t.mu.re.approx(), t.mu.im.approx());
            (m - mu).norm() < 0.3 || (m - mu.conj()).norm() < 0.3 || (m.norm() / modulus - 1.0).abs() < 0.05
        }) {
            continue;
        }
        let deg = rng.gen_range(0..=2);
        let poly: Vec<C> = (0..=deg)
            .map(|_| {
                C::new(
                    rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
                    if pair { rng.gen_range(-1.0..1.0) } else { 0.0 },
                )
            })
            .collect();
        let to_dd = |z: C| Complex::new(Dd::of(z.re), Dd::of(z.im));
        terms.push(SeriesTerm::new(to_dd(mu), poly.iter().map(|&c| to_dd(c)).collect()));
        if pair {
            terms.push(SeriesTerm::new(to_dd(mu.conj()), poly.iter().map(|&c| to_dd(c.conj())).collect()));
        }
    }
    AsymptoticSeries::exact(terms)
}

fn c6_extraction() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let r_target = 6.0;
    let mut ok = true;
    let (mut worst_mu, mut worst_rate): (f64, f64) = (0.0, 0.0);
    let mut notes = Vec::new();
    for case in 0..10 {
        let s = synthetic(&mut rng);
        let x = s.realize(0, 200);
        let got = match extract_series(&x, Dd::of(r_target), Dd::of(1e-20)) {
            Ok(g) => g,
            Err(e) => {
                ok = false;
                notes.push(format!("case {case}: {e}"));
                continue;
            }
        };
        if got.terms.len() != s.terms.len() {
            ok = false;
            notes.push(format!("case {case}: {} terms, want {}", got.terms.len(), s.terms.len()));
            continue;
        }
        for t in &s.terms {
            let hit =
                got.terms.iter().min_by(|a, b| cabs(a.mu - t.mu).partial_cmp(&cabs(b.mu - t.mu)).unwrap()).unwrap();
            let rel = (cabs(hit.mu - t.mu) / cabs(t.mu)).approx();
            worst_mu = worst_mu.max(rel);
            if rel > 1e-8 || hit.order() != t.order() {
                ok = false;
                notes.push(format!(
                    "case {case}: μ {} error {rel:.1e}, degree {} want {}",
                    t.mu.re.approx(),
                    hit.order() - 1,
                    t.order() - 1
                ));
            }
        }
        let cert = certify_residual(&x, &got);
        worst_rate = worst_rate.max(cert.rate);
        if !(cert.rate < 1.0 / r_target) {
            ok = false;
            notes.push(format!("case {case}: residual rate {:.3e}", cert.rate));
        }
    }
    Verdict::new(
        ok,
        format!("10 sequences, 200 terms, 106-bit: max μ error {worst_mu:.2e}, max residual rate {worst_rate:.3e} (< {:.3e}; 0 means rounding level over the whole tail window){}", 1.0 / r_target, if notes.is_empty() { String::new() } else { format!("; {}", notes.join("; ")) }),
    )
}

fn c7_containment() -> Verdict {
    let j = example_dd();
    let cutoff = Dd::of(8.0);
    let t = b_model(&j, cutoff).unwrap().poles();
    let p = pole_sets(&j, cutoff, Dd::of(1e-14)).unwrap().p;
    let r = check_containment(&t, &p, cutoff, Dd::of(1e-6), Semigroup::Tilde).unwrap();
    let t_re: Vec<f64> = {
        let mut v: Vec<f64> = t.locations().iter().map(|z| z.re.approx()).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let p_re: Vec<f64> = {
        let mut v: Vec<f64> = p.locations().iter().map(|z| z.re.approx()).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    Verdict::new(
        r.contained && matches(&t_re, &[-4.0, -2.0, 2.0, 4.0], 1e-6),
        format!("T = {t_re:?}, P = {p_re:?}, T ⊂ G̃(P): {}", r.contained),
    )
}

fn c8_invariance() -> Verdict {
    let cutoff = 8.0;
    let mut ok = true;
    let mut parts = Vec::new();
    let rank_one = rank_one_b(2.5);
    let (a, b) =
        (pole_sets(&rank_one, cutoff, 1e-14).unwrap().p, pole_sets(&rank_one.shifted(1), cutoff, 1e-14).unwrap().p);
    let same = a.same_as(&b, 1e-6, true);
    ok &= same && a.is_empty();
    parts.push(format!("rank-one bound state: P(J) = {:?}, P(J1) = {:?}", real_parts(&a), real_parts(&b)));
    let j = example_dd();
    let c = Dd::of(cutoff);
    let (a, b) = (pole_sets(&j, c, Dd::of(1e-14)).unwrap().p, pole_sets(&j.shifted(1), c, Dd::of(1e-14)).unwrap().p);
    let same = a.same_as(&b, Dd::of(1e-6), true);
    ok &= same;
    let re = |s: &PoleSet<Dd>| {
        let mut v: Vec<f64> = s.locations().iter().map(|z| z.re.approx()).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    parts.push(format!("example image: P(J) = {:?}, P(J1) = {:?}", re(&a), re(&b)));
    Verdict::new(ok, parts.join("; "))
}

fn c9_born() -> Verdict {
    let grid: Vec<C> = circle(0.7, 24, 0.1);
    let ratios = |p: &JacobiParameters<f64>| -> Vec<(f64, f64, f64)> {
        [1e-2, 1e-3]
            .iter()
            .map(|&eps| {
                let (r1, r2) = (born_residual(p, &grid, eps).unwrap(), born_residual(p, &grid, eps / 2.0).unwrap());
                (eps, r1, r1 / r2)
            })
            .collect()
    };
    let in_band = |v: &[(f64, f64, f64)]| v.iter().all(|&(_, _, q)| (3.5..=4.5).contains(&q));
    let (off, diag) = (ratios(&rank_one_a(1.0)), ratios(&rank_one_b(1.0)));
    let fmt = |v: &[(f64, f64, f64)]| {
        v.iter().map(|(e, r, q)| format!("ε={e:e}: residual {r:.2e}, ratio {q:.3}")).collect::<Vec<_>>().join(", ")
    };
    let detail = format!("a_1² = 1+ε: {}; b_1 = ε: {}", fmt(&off), fmt(&diag));
    let mut v = Verdict::new(in_band(&off) && in_band(&diag), detail);
    // b_1 = ε: δJ is diagonal of rank one, the first-order formula is exact
    // and the residual is rounding noise, so no ratio can be expected.
    if !v.pass && in_band(&off) && diag.iter().all(|&(_, r, _)| r < 1e-14) {
        v.known = Some(
            "b_1 = ε residual is at rounding level (first-order formula exact for a diagonal rank-one perturbation)"
                .into(),
        );
    }
    v
}

fn c10_determinism() -> Verdict {
    let runs: Vec<(Task, &str, u32)> = vec![
        (Task::Jost, "example-3-4-R2-image", 53),
        (Task::BSeries, "example-3-4-R2-image", 53),
        (Task::Sz2, "example-3-4-R2", 53),
        (Task::Sz2Inverse, "example-3-4-R2-image", 53),
        (Task::MFunction, "rank-one-bound-state", 53),
        (Task::Strip, "example-3-4-R2-image", 53),
        (Task::Eigen, "example-3-4-R2-bound-state", 53),
        (Task::Extract, "two-rate-sequence", 128),
        (Task::Poles, "example-3-4-R2-image", 128),
        (Task::GTilde, "omega-pm2", 53),
        (Task::VerifyThm15, "example-3-4-R2-image", 53),
        (Task::VerifyThm13, "example-3-4-R2", 53),
        (Task::VerifyThm16, "example-3-4-R2-image", 53),
        (Task::VerifyThm17, "example-3-4-R2-image", 53),
        (Task::VerifyThm41, "rank-one-bound-state", 53),
    ];
    let mut diffs = Vec::new();
    for (task, input, bits) in &runs {
        let cfg = Config {
            task: Some(*task),
            input: Some(Value::String(input.to_string())),
            precision_bits: *bits,
            ..Config::default()
        };
        let s = Scenario::from_config(cfg).unwrap();
        let (a, b) = (run_scenario(&s), run_scenario(&s));
        let text = |o: &jostlab_cli::Outcome| jostlab::io::to_pretty(&o.report);
        if text(&a) != text(&b) || a.files != b.files || a.status != b.status {
            diffs.push(s.name.clone());
        }
    }
    assert!(fixtures::names().len() >= 8);
    Verdict::new(diffs.is_empty(), format!("{} scenarios run twice; differing: {diffs:?}", runs.len()))
}

fn main() {
    let criteria: Vec<(u32, &str, Duration, fn() -> Verdict)> = vec![
        (1, "sharpness on the R = 2 example", Duration::from_secs(60), c1_sharpness),
        (2, "rank-one oracles", Duration::from_secs(5), c2_rank_one),
        (3, "continuation identity", Duration::from_secs(30), c3_continuation),
        (4, "Sz2 bridge", Duration::from_secs(30), c4_bridge),
        (5, "Sz2 round trip", Duration::from_secs(30), c5_round_trip),
        (6, "series extraction", Duration::from_secs(60), c6_extraction),
        (7, "pole containment T in G~(P)", Duration::from_secs(120), c7_containment),
        (8, "invariance P(J) = P(J1)", Duration::from_secs(120), c8_invariance),
        (9, "Born residual", Duration::from_secs(10), c9_born),
        (10, "determinism", Duration::from_secs(600), c10_determinism),
    ];
    let mut unexpected = 0;
    for (id, name, limit, f) in criteria {
        let t0 = Instant::now();
        let mut v = f();
        let dt = t0.elapsed();
        if dt > limit {
            v.pass = false;
            v.known = None;
            v.detail.push_str(&format!("; runtime over the {}s limit", limit.as_secs()));
        }
        println!(
            "criterion {id:>2} {:4} {name} [{:.2}s / {}s]: {}",
            if v.pass { "PASS" } else { "FAIL" },
            dt.as_secs_f64(),
            limit.as_secs(),
            v.detail
        );
        match (&v.pass, &v.known) {
            (true, _) => {}
            (false, Some(why)) => println!("             known unattainable: {why}"),
            (false, None) => unexpected += 1,
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected acceptance failure(s)");
        std::process::exit(1);
    }
}
