//! Task bodies: each computes a result, a list of checks and optional CSV files.

use jostlab::annulus_check::{theorem13_report, theorem15_report, Grid};
use jostlab::asymptotics::{
    b_model, d_inverse_model, extract_with, extraction_to_json, jost_model, poles_from_taylor, s_model, ExtractOptions,
};
use jostlab::io::{cnum, cnums, input_to_json, num, pole_set_to_json, power_series_to_json, realized_csv};
use jostlab::jacobi_gc::{b_series, circle, jost_taylor, jost_u};
use jostlab::model::{Input, PoleSet};
use jostlab::opuc::{jost_from_d, sz2_forward, sz2_inverse};
use jostlab::pole_algebra::{g_odd, g_tilde, mutual_containment, mutual_to_json, Semigroup};
use jostlab::scalar::{cabs, cre};
use jostlab::spectral_m::{
    continuation_residual_with, eigen_data, m_eval, m_taylor, pole_sets, regular_level, strip, JostFunction,
};
use jostlab::{JostError, PowerSeriesModel, Result, Scalar};
use num_complex::Complex;
use serde_json::{json, Value};

use crate::config::{Config, Task};
use crate::document::Document;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub detail: Value,
}

impl Check {
    fn new(id: &str, pass: bool, detail: Value) -> Self {
        Check { id: id.to_string(), pass, detail }
    }

    pub fn to_json(&self) -> Value {
        json!({"id": self.id, "pass": self.pass, "detail": self.detail})
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TaskOutput {
    pub result: Value,
    pub checks: Vec<Check>,
    /// CSV files (name, contents), written with --format csv.
    pub files: Vec<(String, String)>,
    /// Coefficient map applied to the input, if any.
    pub mapped: Option<&'static str>,
}

fn sci(x: f64) -> Value {
    json!(format!("{x:.3e}"))
}

fn max_over<T: Scalar>(pts: &[Complex<T>], mut f: impl FnMut(Complex<T>) -> Result<T>) -> Result<(T, Complex<T>)> {
    let mut worst = (T::zero(), Complex::new(T::zero(), T::zero()));
    for &z in pts {
        let v = f(z)?;
        if !(v <= worst.0) {
            worst = (v, z);
        }
    }
    Ok(worst)
}

/// Points in |z| ≤ r: the origin plus 16 angles on each of `rings` circles.
fn disk_grid<T: Scalar>(r: f64, rings: usize) -> Vec<Complex<T>> {
    let mut pts = vec![Complex::new(T::zero(), T::zero())];
    for i in 1..=rings {
        pts.extend(circle::<T>(r * i as f64 / rings as f64, 16, 0.25));
    }
    pts
}

/// 10 radii in [1.05, r_hi] times 10 angles, off the real axis.
pub fn annulus_grid<T: Scalar>(r_hi: f64) -> Vec<Complex<T>> {
    let r_hi = r_hi.max(1.05);
    (0..10).flat_map(|i| circle::<T>(1.05 + (r_hi - 1.05) * i as f64 / 9.0, 10, 0.5)).collect()
}

fn residual_csv<T: Scalar>(x: &[Complex<T>], s: &jostlab::AsymptoticSeries<T>) -> String {
    let mut out = String::from("n,abs_residual\n");
    for (n, xn) in x.iter().enumerate() {
        out.push_str(&format!("{n},{:e}\n", cabs(*xn - s.value(n)).approx()));
    }
    out
}

fn model_poles<T: Scalar>(m: &jostlab::asymptotics::MeromorphicModel<T>) -> PoleSet<T> {
    m.poles()
}

pub fn run<T: Scalar>(task: Task, doc: &Document<T>, cfg: &Config) -> Result<TaskOutput> {
    let tol = T::of(cfg.tol);
    let cutoff = T::of(cfg.cutoff);
    let mtol = T::of(cfg.match_tol);
    match task {
        Task::Jost => jost(doc, cfg),
        Task::BSeries => {
            let (p, mapped) = doc.jacobi()?;
            let b = b_series(&p, cfg.n)?;
            Ok(TaskOutput {
                result: json!({"B": power_series_to_json(&b)}),
                checks: Vec::new(),
                files: vec![("b_series.csv".into(), b.to_csv())],
                mapped,
            })
        }
        Task::Sz2 => sz2(doc, cfg),
        Task::Sz2Inverse => {
            let (p, mapped) = doc.jacobi()?;
            let a = sz2_inverse(&p, tol)?;
            let back = sz2_forward(&a)?;
            let len = p.head().len().max(back.head().len()) + 16;
            let (x, y) = (p.realize(len)?, back.realize(len)?);
            let err = x
                .iter()
                .zip(&y)
                .fold(0.0f64, |m, (u, v)| m.max((u.0 - v.0).abs().approx()).max((u.1 - v.1).abs().approx()));
            let input = Input::Verblunsky(a);
            Ok(TaskOutput {
                result: json!({"verblunsky": input_to_json(&input)}),
                checks: vec![Check::new(
                    "round-trip",
                    err < cfg.identity_tol,
                    json!({"sup_error": sci(err), "terms": len}),
                )],
                files: vec![("verblunsky.csv".into(), realized_csv(&input, cfg.n)?)],
                mapped,
            })
        }
        Task::MFunction => m_function(doc, cfg),
        Task::Strip => {
            let (p, mapped) = doc.jacobi()?;
            let k = cfg.level;
            let lo = strip(&p, k, cfg.n, tol)?;
            let hi = strip(&p, k + 1, cfg.n, tol)?;
            let a = cre(p.a(k + 1));
            let pts = circle::<T>(0.5, 32, 0.5);
            let (err, at) = max_over(&pts, |z| {
                let lhs = jost_u(&hi.params, z, tol)?;
                let rhs = a / z * jost_u(&lo.params, z, tol)? * m_eval(&lo.params, z, tol)?;
                Ok(cabs(lhs - rhs))
            })?;
            let err = err.approx();
            // first level free of bound states and resonances, if one is reached
            let regular = regular_level(&p, tol, 64).ok();
            Ok(TaskOutput {
                result: json!({"family": lo.to_json(), "regular_level": regular}),
                checks: vec![Check::new(
                    "stripping-identity",
                    err < cfg.identity_tol,
                    json!({"levels": [k, k + 1], "radius": 0.5, "points": pts.len(), "max_residual": sci(err), "at": cnum(at)}),
                )],
                files: vec![("u.csv".into(), lo.u.to_csv()), ("m.csv".into(), lo.m.to_csv())],
                mapped,
            })
        }
        Task::Eigen => {
            let (p, mapped) = doc.jacobi()?;
            let d = eigen_data(&p, tol)?;
            let total = d.eigen.iter().fold(T::zero(), |s, e| s + e.w0);
            let each = d.eigen.iter().all(|e| e.w0 > T::zero() && e.w0 < T::one() && e.e0.abs() > T::of(2.0));
            Ok(TaskOutput {
                result: d.to_json(),
                checks: vec![Check::new(
                    "weights",
                    each && total <= T::one(),
                    json!({"count": d.eigen.len(), "sum": num(total)}),
                )],
                files: Vec::new(),
                mapped,
            })
        }
        Task::Extract => extract(doc, cfg),
        Task::Poles => poles(doc, cfg),
        Task::GTilde => {
            let omega = match doc {
                Document::Poles(p) => p.clone(),
                _ => pole_sets(&doc.jacobi()?.0, cutoff, tol)?.p,
            };
            if omega.is_empty() {
                return Ok(TaskOutput {
                    result: json!({"omega": pole_set_to_json(&omega), "cutoff": num(cutoff), "G_tilde": [], "G": []}),
                    ..Default::default()
                });
            }
            let gt = g_tilde(&omega, cutoff)?;
            let g = g_odd(&omega, cutoff)?;
            // G̃(G̃(Ω)) = G̃(Ω) within the cutoff
            let once = PoleSet::from_points(&gt.locations(), cutoff)?;
            let twice = PoleSet::from_points(&g_tilde(&once, cutoff)?.locations(), cutoff)?;
            let same = once.same_as(&twice, mtol, false);
            Ok(TaskOutput {
                result: json!({"omega": pole_set_to_json(&omega), "cutoff": num(cutoff), "G_tilde": gt.to_json(), "G": g.to_json()}),
                checks: vec![Check::new(
                    "idempotence",
                    same,
                    json!({"size": once.len(), "size_of_closure": twice.len()}),
                )],
                ..Default::default()
            })
        }
        Task::VerifyThm15 => {
            let (p, mapped) = doc.jacobi()?;
            let (r, files) = theorem15_report(&p.cast::<f64>(), cfg.tol, &grid(cfg))?;
            Ok(TaskOutput {
                checks: vec![Check::new(
                    "thm1.5",
                    r["pass"] == true,
                    json!({"radii": r["radii"], "expected": r["expected"]}),
                )],
                files,
                result: r,
                mapped,
            })
        }
        Task::VerifyThm13 => thm13(doc, cfg),
        Task::VerifyThm16 => {
            let (p, mapped) = doc.jacobi()?;
            let d = eigen_data(&p, tol)?;
            let applicable = d.eigen.is_empty() && !d.resonance_at_plus1 && !d.resonance_at_minus1;
            if !applicable {
                return Ok(TaskOutput {
                    result: json!({"applicable": false, "spectrum": d.to_json()}),
                    checks: vec![Check::new(
                        "thm1.6",
                        false,
                        json!({"reason": "J has bound states or a resonance; use verify-thm17"}),
                    )],
                    files: Vec::new(),
                    mapped,
                });
            }
            let u = jost_model(&p, cutoff)?;
            let b = b_model(&p, cutoff)?;
            let (pp, tt) = (model_poles(&u), model_poles(&b));
            let rep = mutual_containment(&pp, &tt, cutoff, mtol, Semigroup::Tilde)?;
            let ok = rep.0.contained && rep.1.contained;
            let mut result = mutual_to_json(&pp, &tt, &rep);
            result["applicable"] = json!(true);
            Ok(TaskOutput {
                result,
                checks: vec![Check::new(
                    "thm1.6",
                    ok,
                    json!({"P_in_G(T)": rep.0.contained, "T_in_G(P)": rep.1.contained, "cutoff": num(cutoff)}),
                )],
                files: Vec::new(),
                mapped,
            })
        }
        Task::VerifyThm17 => {
            let (p, mapped) = doc.jacobi()?;
            let sets = pole_sets(&p, cutoff, tol)?;
            let tt = model_poles(&b_model(&p, cutoff)?);
            let rep = mutual_containment(&sets.p, &tt, cutoff, mtol, Semigroup::Tilde)?;
            let ok = rep.0.contained && rep.1.contained;
            let mut result = mutual_to_json(&sets.p, &tt, &rep);
            result["pole_sets"] = sets.to_json();
            Ok(TaskOutput {
                result,
                checks: vec![Check::new(
                    "thm1.7",
                    ok,
                    json!({"P_in_G(T)": rep.0.contained, "T_in_G(P)": rep.1.contained, "cutoff": num(cutoff)}),
                )],
                files: Vec::new(),
                mapped,
            })
        }
        Task::VerifyThm41 => {
            let (p, mapped) = doc.jacobi()?;
            let a = pole_sets(&p, cutoff, tol)?;
            let b = pole_sets(&p.shifted(1), cutoff, tol)?;
            let same = a.p.same_as(&b.p, mtol, true);
            Ok(TaskOutput {
                result: json!({"J": a.to_json(), "J1": b.to_json(), "equal": same}),
                checks: vec![Check::new(
                    "thm4.1",
                    same,
                    json!({"P(J)": cnums(&a.p.locations()), "P(J1)": cnums(&b.p.locations()), "match_tol": num(mtol)}),
                )],
                files: Vec::new(),
                mapped,
            })
        }
    }
}

fn grid(cfg: &Config) -> Grid {
    Grid { n_radii: cfg.n_radii, n_points: cfg.n_points, ..Grid::default() }
}

fn jost<T: Scalar>(doc: &Document<T>, cfg: &Config) -> Result<TaskOutput> {
    let (p, mapped) = doc.jacobi()?;
    let tol = T::of(cfg.tol);
    let taylor = jost_taylor(&p, cfg.n, tol)?;
    let pts = circle::<T>(0.5, 16, 0.5);
    let (err, at) = max_over(&pts, |z| Ok(cabs(jost_u(&p, z, tol)? - taylor.eval(z))))?;
    let err = err.approx();
    let samples: Vec<Value> =
        pts.iter().map(|&z| Ok(json!({"z": cnum(z), "u": cnum(jost_u(&p, z, tol)?)}))).collect::<Result<_>>()?;
    let mut result = json!({"taylor": power_series_to_json(&taylor), "samples": samples});
    if p.support().is_none() && p.decay_radius().is_finite() {
        result["model"] = jost_model(&p, T::of(cfg.cutoff))?.to_json();
    }
    Ok(TaskOutput {
        result,
        checks: vec![Check::new(
            "taylor-vs-recursion",
            err < cfg.identity_tol,
            json!({"radius": 0.5, "points": pts.len(), "max_difference": sci(err), "at": cnum(at)}),
        )],
        files: vec![("u_taylor.csv".into(), taylor.to_csv())],
        mapped,
    })
}

fn sz2<T: Scalar>(doc: &Document<T>, cfg: &Config) -> Result<TaskOutput> {
    let tol = T::of(cfg.tol);
    let (a, mapped) = doc.verblunsky(tol)?;
    let j = sz2_forward(&a)?;
    let pts = disk_grid::<T>(0.9, 3);
    let (bridge, at) = max_over(&pts, |z| Ok(cabs(jost_from_d(&a, z, tol)? - jost_u(&j, z, tol)?)))?;
    let back = sz2_inverse(&j, tol)?;
    let len = a.head().len().max(back.head().len()) + 16;
    let (x, y) = (a.realize(len)?, back.realize(len)?);
    let rt = x.iter().zip(&y).fold(0.0f64, |m, (u, v)| m.max((*u - *v).abs().approx()));
    let input = Input::Jacobi(j);
    Ok(TaskOutput {
        result: json!({"jacobi": input_to_json(&input)}),
        checks: vec![
            Check::new(
                "bridge",
                bridge.approx() < cfg.bridge_tol,
                json!({"points": pts.len(), "max_radius": 0.9, "max_difference": sci(bridge.approx()), "at": cnum(at)}),
            ),
            Check::new("round-trip", rt < cfg.identity_tol, json!({"sup_error": sci(rt), "terms": len})),
        ],
        files: vec![("jacobi.csv".into(), realized_csv(&input, cfg.n)?)],
        mapped,
    })
}

fn m_function<T: Scalar>(doc: &Document<T>, cfg: &Config) -> Result<TaskOutput> {
    let (p, mapped) = doc.jacobi()?;
    let tol = T::of(cfg.tol);
    let m = m_taylor(&p, cfg.n, tol)?;
    let r_hi = 1.5f64.min(0.9 * p.decay_radius().approx());
    let reach = T::of(r_hi.max(1.05) * 1.05);
    let u = JostFunction::new(&p, reach, tol)?;
    let u1 = JostFunction::new(&p.shifted(1), reach, tol)?;
    let pts = annulus_grid::<T>(r_hi);
    let (err, at) = max_over(&pts, |z| continuation_residual_with(&p, &u, &u1, z, tol))?;
    let err = err.approx();
    Ok(TaskOutput {
        result: json!({"M": power_series_to_json(&m)}),
        checks: vec![Check::new(
            "continuation-identity",
            err < cfg.identity_tol,
            json!({"points": pts.len(), "radii": [1.05, r_hi.max(1.05)], "max_residual": sci(err), "at": cnum(at)}),
        )],
        files: vec![("m_taylor.csv".into(), m.to_csv())],
        mapped,
    })
}

fn sequence<T: Scalar>(doc: &Document<T>, n: usize) -> Result<(Vec<Complex<T>>, Option<&'static str>)> {
    match doc {
        Document::Sequence(x) => Ok((x.clone(), None)),
        Document::Input(_) => {
            let (p, mapped) = doc.jacobi()?;
            let x = p.interleaved(n).into_iter().map(cre).collect();
            Ok((x, Some(mapped.map_or("interleaved", |_| "sz2_forward+interleaved"))))
        }
        Document::Poles(_) => Err(JostError::Invalid("this task needs a sequence or coefficient document".into())),
    }
}

fn extract<T: Scalar>(doc: &Document<T>, cfg: &Config) -> Result<TaskOutput> {
    let (x, mapped) = sequence(doc, cfg.n)?;
    let r_target = cfg.r_target.unwrap_or(cfg.cutoff);
    let ex = extract_with(&x, &ExtractOptions::new::<T>(r_target))?;
    let bound = 1.0 / r_target;
    let ok = ex.certificate.rate <= bound;
    Ok(TaskOutput {
        result: extraction_to_json(&ex),
        checks: vec![Check::new(
            "residual-certified",
            ok,
            json!({"rate": sci(ex.certificate.rate), "bound": sci(bound), "noise_limited": ex.certificate.noise_limited}),
        )],
        files: vec![("residual.csv".into(), residual_csv(&x, &ex.series))],
        mapped,
    })
}

fn poles<T: Scalar>(doc: &Document<T>, cfg: &Config) -> Result<TaskOutput> {
    let tol = T::of(cfg.tol);
    let cutoff = T::of(cfg.cutoff);
    match doc {
        Document::Input(Input::Jacobi(p)) => {
            let sets = pole_sets(p, cutoff, tol)?;
            let u = jost_model(p, cutoff)?;
            let b = b_model(p, cutoff)?;
            Ok(TaskOutput {
                result: json!({"pole_sets": sets.to_json(), "T": pole_set_to_json(&b.poles()), "u_model": u.to_json(), "B_model": b.to_json()}),
                ..Default::default()
            })
        }
        Document::Input(Input::Verblunsky(a)) => {
            let s = s_model(a, cutoff)?;
            let d = d_inverse_model(a, cutoff)?;
            Ok(TaskOutput {
                result: json!({"S_poles": pole_set_to_json(&s.poles()), "D_inverse_poles": pole_set_to_json(&d.poles()), "S_model": s.to_json(), "D_inverse_model": d.to_json()}),
                ..Default::default()
            })
        }
        Document::Sequence(x) => {
            let series = PowerSeriesModel::new(x.clone(), T::one())?;
            let m = poles_from_taylor(&series, cutoff, T::of(cfg.match_tol))?;
            Ok(TaskOutput {
                result: json!({"poles": pole_set_to_json(&m.poles()), "model": m.to_json()}),
                ..Default::default()
            })
        }
        Document::Poles(p) => Ok(TaskOutput { result: json!({"poles": pole_set_to_json(p)}), ..Default::default() }),
    }
}

fn thm13<T: Scalar>(doc: &Document<T>, cfg: &Config) -> Result<TaskOutput> {
    let tol = T::of(cfg.tol);
    let cutoff = T::of(cfg.cutoff);
    let mtol = T::of(cfg.match_tol);
    let (a, mapped) = doc.verblunsky(tol)?;
    let (r, files) = theorem13_report(&a.cast::<f64>(), cfg.tol, &grid(cfg))?;
    let mut checks =
        vec![Check::new("thm1.3", r["pass"] == true, json!({"radii": r["radii"], "expected": r["expected"]}))];
    let s = s_model(&a, cutoff)?.poles();
    let d = d_inverse_model(&a, cutoff)?.poles();
    let odd = mutual_containment(&s, &d, cutoff, mtol, Semigroup::Odd)?;
    checks.push(Check::new(
        "thm1.4",
        odd.0.contained && odd.1.contained,
        json!({"S_in_G(Dinv)": odd.0.contained, "Dinv_in_G(S)": odd.1.contained}),
    ));
    let t = b_model(&sz2_forward(&a)?, cutoff)?.poles();
    let tilde = mutual_containment(&t, &s, cutoff, mtol, Semigroup::Tilde)?;
    checks.push(Check::new(
        "lemma3.5",
        tilde.0.contained && tilde.1.contained,
        json!({"T_in_Gtilde(S)": tilde.0.contained, "S_in_Gtilde(T)": tilde.1.contained}),
    ));
    let result = json!({
        "annulus": r,
        "S_vs_Dinv": mutual_to_json(&s, &d, &odd),
        "T_vs_S": mutual_to_json(&t, &s, &tilde),
    });
    Ok(TaskOutput { result, checks, files, mapped })
}
