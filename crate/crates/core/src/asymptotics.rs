//! Recovery of complete asymptotic series x_n ≈ Σ p_j(n) μ_j^{-n} from
//! coefficient data, and meromorphic models of generating functions.
//!
//! Extraction runs in [`Dd`] whatever the input type: the rates come from
//! the null vector of a Hankel matrix of the data (its numerical rank fixes
//! the number of exponentials counted with multiplicity), the amplitudes
//! from a confluent Vandermonde least-squares fit, and the rates are then
//! polished by Gauss-Newton on the full nonlinear model.

use num_complex::Complex;
use num_traits::{Float, One, Zero};
use serde_json::{json, Value};

use crate::error::{JostError, Result};
use crate::io::{cnum, cnums, f64num, num};
use crate::jacobi_gc::{b_series, jost_taylor};
use crate::linalg::{lstsq, poly_roots, svd_right, Mat};
use crate::model::{
    AsymptoticSeries, JacobiParameters, Pole, PoleSet, PowerSeriesModel, SeriesTerm, VerblunskyCoefficients,
};
use crate::opuc::{d_inverse_taylor, s_series};
use crate::poly::{self, Poly};
use crate::scalar::{cabs, cconvert, convert, Dd, Scalar};

type Cd = Complex<Dd>;

#[derive(Clone, Debug, PartialEq)]
pub struct ExtractOptions {
    /// Rates with |μ| above this are fitted but not reported.
    pub keep_radius: f64,
    /// Relative noise level of the input data.
    pub noise: f64,
    /// Largest Hankel width tried.
    pub max_cols: usize,
    /// Relative distance below which roots are merged into one higher-order term.
    pub cluster: f64,
    pub refine_iters: usize,
}

impl ExtractOptions {
    pub fn new<T: Scalar>(keep_radius: f64) -> Self {
        ExtractOptions {
            keep_radius,
            noise: T::unit_roundoff().approx(),
            max_cols: 48,
            cluster: 1e-6,
            refine_iters: 40,
        }
    }
}

/// Residual measurement on the tail window.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    /// max |x_n - Σ p_j(n) μ_j^{-n}|^{1/n} over the window (0 if all at the noise floor).
    pub rate: f64,
    /// Residual stays flat at a noise level instead of decaying.
    pub noise_limited: bool,
    pub window: (usize, usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extraction<T> {
    /// Terms with |μ| ≤ keep radius.
    pub series: AsymptoticSeries<T>,
    /// Every fitted term, including those beyond the keep radius.
    pub all_terms: Vec<SeriesTerm<T>>,
    /// Leading indices absorbed as non-series impulses.
    pub impulses: usize,
    pub rank: usize,
    pub singular_values: Vec<f64>,
    /// σ_rank / σ_{rank+1}.
    pub gap: f64,
    pub certificate: Certificate,
    pub warnings: Vec<String>,
}

struct Cluster {
    lambda: Cd,
    mult: usize,
}

fn dd(x: f64) -> Dd {
    Dd::from(x)
}

/// n^d without the 0^0 = NaN of the double-double `powi`.
fn ipow(n: usize, d: usize) -> Dd {
    (0..d).fold(Dd::one(), |acc, _| acc * dd(n as f64))
}

fn hankel(y: &[Cd], cols: usize) -> Mat<Dd> {
    Mat::from_fn(y.len() + 1 - cols, cols, |i, j| y[i + j])
}

/// Columns n^d λ^n (d < mult) per cluster, then unit impulses.
fn basis(n: usize, clusters: &[Cluster], impulses: usize) -> (Mat<Dd>, Vec<Dd>) {
    let mut cols: Vec<Vec<Cd>> = Vec::new();
    for cl in clusters {
        let mut pw = vec![Cd::one(); n];
        for k in 1..n {
            pw[k] = pw[k - 1] * cl.lambda;
        }
        for d in 0..cl.mult {
            cols.push((0..n).map(|k| pw[k] * ipow(k, d)).collect());
        }
    }
    for k in 0..impulses {
        let mut v = vec![Cd::zero(); n];
        v[k] = Cd::one();
        cols.push(v);
    }
    let norms: Vec<Dd> = cols
        .iter()
        .map(|c| {
            let s = c.iter().fold(Dd::zero(), |a, z| a + z.norm_sqr()).sqrt();
            if s.is_zero() {
                Dd::one()
            } else {
                s
            }
        })
        .collect();
    let m = Mat::from_fn(n, cols.len(), |i, j| cols[j][i] / norms[j]);
    (m, norms)
}

fn fit_amplitudes(y: &[Cd], clusters: &[Cluster], impulses: usize) -> Result<(Vec<Cd>, Dd)> {
    let (m, norms) = basis(y.len(), clusters, impulses);
    if m.cols == 0 {
        return Ok((Vec::new(), y.iter().fold(Dd::zero(), |a, z| a + z.norm_sqr()).sqrt()));
    }
    let c = lstsq(&m, y)?;
    let fitted = m.mul_vec(&c);
    let res = y.iter().zip(&fitted).fold(Dd::zero(), |a, (p, q)| a + (*p - *q).norm_sqr()).sqrt();
    Ok((c.iter().zip(&norms).map(|(c, n)| *c / *n).collect(), res))
}

fn symmetrize(clusters: &mut [Cluster]) {
    let n = clusters.len();
    let mut done = vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        let li = clusters[i].lambda;
        let tiny = cabs(li) * dd(1e-9);
        if li.im.abs() <= tiny.max(dd(1e-20)) {
            clusters[i].lambda = Complex::new(li.re, Dd::zero());
            done[i] = true;
            continue;
        }
        let partner =
            (0..n).filter(|&j| j != i && !done[j] && clusters[j].mult == clusters[i].mult).min_by(|&a, &b| {
                let da = cabs(clusters[a].lambda - li.conj()).approx();
                let db = cabs(clusters[b].lambda - li.conj()).approx();
                da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
            });
        if let Some(j) = partner {
            let avg = (li + clusters[j].lambda.conj()) * dd(0.5);
            clusters[i].lambda = avg;
            clusters[j].lambda = avg.conj();
            done[j] = true;
        }
        done[i] = true;
    }
}

fn cluster_roots(mut roots: Vec<Cd>, rel: f64) -> Vec<Cluster> {
    roots.sort_by(|a, b| cabs(*b).approx().partial_cmp(&cabs(*a).approx()).unwrap_or(std::cmp::Ordering::Equal));
    let mut out: Vec<(Cd, usize, Cd)> = Vec::new();
    for r in roots {
        match out.iter_mut().find(|(c, _, _)| cabs(*c - r) <= dd(rel) * cabs(*c)) {
            Some((c, m, sum)) => {
                *m += 1;
                *sum = *sum + r;
                *c = *sum / dd(*m as f64);
            }
            None => out.push((r, 1, r)),
        }
    }
    out.into_iter().map(|(lambda, mult, _)| Cluster { lambda, mult }).collect()
}

/// Gauss-Newton on the cluster centres; amplitudes re-fitted each step.
fn refine(y: &[Cd], clusters: &mut [Cluster], impulses: usize, real: bool, iters: usize) -> Result<()> {
    let n = y.len();
    let (mut amps, mut res) = fit_amplitudes(y, clusters, impulses)?;
    for _ in 0..iters {
        let (v, norms) = basis(n, clusters, impulses);
        let fitted = v.mul_vec(&amps.iter().zip(&norms).map(|(a, s)| *a * *s).collect::<Vec<_>>());
        let r: Vec<Cd> = y.iter().zip(&fitted).map(|(a, b)| *a - *b).collect();
        let k = clusters.len();
        let mut jac: Vec<Vec<Cd>> = Vec::with_capacity(k);
        let mut off = 0;
        for cl in clusters.iter() {
            let mut col = vec![Cd::zero(); n];
            let mut pw = Cd::one(); // λ^{i-1}
            for (i, c) in col.iter_mut().enumerate().skip(1) {
                let mut s = Cd::zero();
                for d in 0..cl.mult {
                    s = s + amps[off + d] * ipow(i, d + 1);
                }
                *c = s * pw;
                pw = pw * cl.lambda;
            }
            off += cl.mult;
            jac.push(col);
        }
        let jn: Vec<Dd> = jac
            .iter()
            .map(|c| {
                let s = c.iter().fold(Dd::zero(), |a, z| a + z.norm_sqr()).sqrt();
                if s.is_zero() {
                    Dd::one()
                } else {
                    s
                }
            })
            .collect();
        let full = Mat::from_fn(n, k + v.cols, |i, j| if j < k { jac[j][i] / jn[j] } else { v.get(i, j - k) });
        let delta = match lstsq(&full, &r) {
            Ok(d) => d,
            Err(_) => break,
        };
        let old: Vec<Cd> = clusters.iter().map(|c| c.lambda).collect();
        let mut step = Dd::zero();
        for (j, cl) in clusters.iter_mut().enumerate() {
            let dl = delta[j] / jn[j];
            step = step.max(cabs(dl) / cabs(cl.lambda));
            cl.lambda = cl.lambda + dl;
        }
        if real {
            symmetrize(clusters);
        }
        match fit_amplitudes(y, clusters, impulses) {
            Ok((a2, r2)) if r2 < res => {
                amps = a2;
                res = r2;
            }
            _ => {
                for (cl, l) in clusters.iter_mut().zip(old) {
                    cl.lambda = l;
                }
                break;
            }
        }
        if step < dd(1e-29) {
            break;
        }
    }
    Ok(())
}

/// Fit exponentials to `x` and return every term.
pub fn extract_with<T: Scalar>(x: &[Complex<T>], opts: &ExtractOptions) -> Result<Extraction<T>> {
    let n = x.len();
    if n < 8 {
        return Err(JostError::Invalid(format!("extract: need at least 8 data points, got {n}")));
    }
    if x.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(JostError::Invalid("extract: non-finite data".into()));
    }
    let real = x.iter().all(|v| v.im.is_zero());
    let scale = x.iter().fold(T::zero(), |m, v| m.max(cabs(*v)));
    let mut warnings = Vec::new();
    let zero_cert = Certificate { rate: 0.0, noise_limited: false, window: tail_window(n) };
    if scale.is_zero() {
        return Ok(Extraction {
            series: AsymptoticSeries::zero(),
            all_terms: Vec::new(),
            impulses: 0,
            rank: 0,
            singular_values: Vec::new(),
            gap: f64::INFINITY,
            certificate: zero_cert,
            warnings,
        });
    }
    let sd: Dd = convert(scale);
    let y: Vec<Cd> = x.iter().map(|v| cconvert::<T, Dd>(*v) / sd).collect();

    let cmax = (n / 2).min(opts.max_cols).max(2);
    let (sv, _) = svd_right(&hankel(&y, cmax));
    let floor = (1e5 * Dd::unit_roundoff().approx()).max(1e3 * opts.noise);
    let s1 = sv[0];
    let rank = sv.iter().filter(|s| **s > s1 * dd(floor)).count();
    let svf: Vec<f64> = sv.iter().map(|s| (*s / s1).approx()).collect();
    if rank >= cmax {
        return Err(JostError::AmbiguousRank {
            op: "extract_series",
            detail: format!(
                "no rank drop within {cmax} Hankel columns (smallest σ/σ₁ = {:.3e}); data is not a short exponential sum at this noise level",
                svf[cmax - 1]
            ),
        });
    }
    let gap = if rank == 0 { f64::INFINITY } else { svf[rank - 1] / svf[rank].max(f64::MIN_POSITIVE) };
    if rank > 0 && gap < 1e3 {
        warnings.push(format!("weak singular-value gap {gap:.2e} at rank {rank}"));
    }

    let (_, v) = svd_right(&hankel(&y, rank + 1));
    let q: Vec<Cd> = (0..=rank).map(|i| v.get(i, rank)).collect();
    let roots = poly_roots(&q)?;
    let tiny = (1e-4f64).min(1e-2 / opts.keep_radius.max(1.0));
    let impulses = roots.iter().filter(|r| cabs(**r).approx() < tiny).count();
    let mut clusters = cluster_roots(roots.into_iter().filter(|r| cabs(*r).approx() >= tiny).collect(), opts.cluster);
    for cl in &clusters {
        if cl.mult > 1 {
            warnings.push(format!(
                "merged {} roots near mu = {:.6e} into one term of order {}",
                cl.mult,
                (Cd::one() / cl.lambda).re.approx(),
                cl.mult
            ));
        }
    }
    if real {
        symmetrize(&mut clusters);
    }
    refine(&y, &mut clusters, impulses, real, opts.refine_iters)?;
    let (amps, _) = fit_amplitudes(&y, &clusters, impulses)?;

    let mut all_terms = Vec::new();
    let mut off = 0;
    for cl in &clusters {
        let mu: Cd = Cd::one() / cl.lambda;
        let p: Poly<T> = amps[off..off + cl.mult].iter().map(|a| cconvert::<Dd, T>(*a * sd)).collect();
        off += cl.mult;
        all_terms.push(SeriesTerm::new(cconvert::<Dd, T>(mu), p));
    }
    if real {
        for t in all_terms.iter_mut() {
            if t.mu.im.is_zero() {
                for c in t.poly.iter_mut() {
                    c.im = T::zero();
                }
            }
        }
    }
    all_terms.sort_by(|a, b| {
        let (ma, mb) = (cabs(a.mu).approx(), cabs(b.mu).approx());
        ma.partial_cmp(&mb)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.mu.im.approx().partial_cmp(&b.mu.im.approx()).unwrap_or(std::cmp::Ordering::Equal))
    });
    let keep = opts.keep_radius;
    let kept: Vec<SeriesTerm<T>> = all_terms
        .iter()
        .filter(|t| {
            let m = cabs(t.mu).approx();
            m > 1.0 && m <= keep
        })
        .cloned()
        .collect();
    for t in &all_terms {
        if cabs(t.mu).approx() <= 1.0 {
            warnings.push(format!("non-decaying rate |mu| = {:.4} dropped", cabs(t.mu).approx()));
        }
    }
    let provisional = AsymptoticSeries::exact(kept.clone());
    let certificate = certify_residual_noise(x, &provisional, opts.noise);
    let max_kept = kept.iter().map(|t| cabs(t.mu).approx()).fold(1.0f64, f64::max);
    let discarded = all_terms.iter().map(|t| cabs(t.mu).approx()).filter(|m| *m > keep).fold(f64::INFINITY, f64::min);
    let remainder = if discarded.is_finite() {
        Some(discarded)
    } else if certificate.rate > 0.0 {
        Some(1.0 / certificate.rate)
    } else {
        None
    };
    let remainder = remainder.map(|r| T::of(r.max(max_kept * (1.0 + 1e-9))));
    Ok(Extraction {
        series: AsymptoticSeries::exact(kept).with_remainder(remainder),
        all_terms,
        impulses,
        rank,
        singular_values: svf,
        gap,
        certificate,
        warnings,
    })
}

/// Recover the asymptotic series of `x` to remainder radius `r_target`.
///
/// Fails if the residual rate on the tail window exceeds 1/r_target + tol.
pub fn extract_series<T: Scalar>(x: &[Complex<T>], r_target: T, tol: T) -> Result<AsymptoticSeries<T>> {
    let ex = extract_with(x, &ExtractOptions::new::<T>(r_target.approx() * (1.0 + tol.approx())))?;
    let bound = 1.0 / r_target.approx() + tol.approx();
    if ex.certificate.rate > bound && !ex.certificate.noise_limited {
        return Err(JostError::ResidualTooLarge { op: "extract_series", rate: ex.certificate.rate, bound });
    }
    Ok(ex.series)
}

fn tail_window(n: usize) -> (usize, usize) {
    ((2 * n) / 3, n)
}

/// Residual rate of `series` against `x` on the tail third, with the data
/// taken to carry relative rounding at the precision of `T`.
pub fn certify_residual<T: Scalar>(x: &[Complex<T>], series: &AsymptoticSeries<T>) -> Certificate {
    certify_residual_noise(x, series, T::unit_roundoff().approx())
}

pub fn certify_residual_noise<T: Scalar>(x: &[Complex<T>], series: &AsymptoticSeries<T>, noise: f64) -> Certificate {
    let n = x.len();
    let window = tail_window(n);
    let mut rate = 0.0f64;
    let mut logs = Vec::new();
    for (k, xk) in x.iter().enumerate().take(window.1).skip(window.0.max(1)) {
        let r = cabs(*xk - series.value(k)).approx();
        let size = series.terms.iter().fold(cabs(*xk).approx(), |acc, t| acc + cabs(t.value(k)).approx());
        let floor = 1e3 * noise * (k as f64) * size;
        if r > floor && r > 0.0 {
            rate = rate.max(r.powf(1.0 / k as f64));
            logs.push((k as f64, r.ln()));
        }
    }
    // Flat residual: log |r_n| has essentially no downward slope.
    let noise_limited = logs.len() >= 4 && {
        let m = logs.len() as f64;
        let (sx, sy) = logs.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        let (mx, my) = (sx / m, sy / m);
        let (sxy, sxx) = logs.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx).powi(2)));
        let slope = sxy / sxx;
        slope > -0.01
    };
    Certificate { rate, noise_limited, window }
}

/// Shortest coefficient count that resolves a pole at modulus `rho` behind a
/// leading singularity at modulus `r` to tolerance `tol`.
pub fn resolvable_length(r: f64, rho: f64, tol: f64) -> usize {
    if !(rho > r * (1.0 + 1e-12)) {
        return 16;
    }
    (2.0 * tol.ln() / (r / rho).ln()).ceil() as usize + 16
}

/// Poles with principal parts plus a Taylor-coefficient entire remainder.
#[derive(Clone, Debug, PartialEq)]
pub struct MeromorphicModel<T> {
    /// (pole, coefficients of (z-μ)^{-1}, (z-μ)^{-2}, ...), canonical order.
    pub parts: Vec<(Complex<T>, Poly<T>)>,
    pub entire: Poly<T>,
    /// Radius inside which the model represents the function.
    pub radius: T,
    pub cutoff: T,
}

impl<T: Scalar> MeromorphicModel<T> {
    /// Exact model of the generating function Σ x_n z^n of an exact series.
    pub fn from_series(series: &AsymptoticSeries<T>, entire: Poly<T>, cutoff: T) -> Self {
        let mut parts = series.principal_parts();
        sort_parts(&mut parts);
        let radius = series.remainder_radius.unwrap_or_else(T::infinity);
        MeromorphicModel { parts, entire, radius, cutoff }
    }

    /// Poles with 1 < |z| ≤ cutoff.
    pub fn poles(&self) -> PoleSet<T> {
        let pts = self
            .parts
            .iter()
            .filter(|(z, _)| cabs(*z) > T::one() && cabs(*z) <= self.cutoff * T::of(1.0 + 1e-9))
            .map(|(z, pp)| Pole { z: *z, order: pp.len().max(1) })
            .collect();
        PoleSet::unchecked(pts, self.cutoff)
    }

    pub fn cast<S: Scalar>(&self) -> MeromorphicModel<S> {
        let cp = |p: &Poly<T>| p.iter().map(|c| cconvert::<T, S>(*c)).collect::<Poly<S>>();
        MeromorphicModel {
            parts: self.parts.iter().map(|(z, pp)| (cconvert(*z), cp(pp))).collect(),
            entire: cp(&self.entire),
            radius: convert(self.radius),
            cutoff: convert(self.cutoff),
        }
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.eval_d(z).0
    }

    /// Value and derivative.
    pub fn eval_d(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let (mut f, mut df) = poly::eval_d(&self.entire, z);
        for (mu, pp) in &self.parts {
            let w = Complex::<T>::one() / (z - *mu);
            let mut pw = w;
            for (i, c) in pp.iter().enumerate() {
                f = f + *c * pw;
                df = df - *c * pw * w * T::of_usize(i + 1);
                pw = pw * w;
            }
        }
        (f, df)
    }

    pub fn to_json(&self) -> Value {
        let poles: Vec<Value> = self
            .parts
            .iter()
            .map(|(z, pp)| json!({"z": cnum(*z), "order": pp.len(), "principal": cnums(pp)}))
            .collect();
        let radius = if self.radius.is_finite() { num(self.radius) } else { json!("inf") };
        json!({"poles": poles, "entire": cnums(&self.entire), "radius": radius, "cutoff": f64num(self.cutoff.approx())})
    }
}

fn sort_parts<T: Scalar>(parts: &mut [(Complex<T>, Poly<T>)]) {
    parts.sort_by(|a, b| {
        let (ma, mb) = (cabs(a.0).approx(), cabs(b.0).approx());
        let (ta, tb) = (a.0.im.approx().atan2(a.0.re.approx()), b.0.im.approx().atan2(b.0.re.approx()));
        ma.partial_cmp(&mb)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(ta.partial_cmp(&tb).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// Meromorphic model of the function with Taylor coefficients `series`,
/// resolving poles with |z| ≤ cutoff.
pub fn poles_from_taylor<T: Scalar>(series: &PowerSeriesModel<T>, cutoff: T, tol: T) -> Result<MeromorphicModel<T>> {
    poles_from_taylor_noise(series, cutoff, tol, T::unit_roundoff().approx())
}

pub fn poles_from_taylor_noise<T: Scalar>(
    series: &PowerSeriesModel<T>,
    cutoff: T,
    tol: T,
    noise: f64,
) -> Result<MeromorphicModel<T>> {
    let x = &series.coeffs;
    let keep = cutoff.approx() * (1.0 + tol.approx());
    let mut opts = ExtractOptions::new::<T>(keep);
    opts.noise = noise;
    let ex = extract_with(x, &opts)?;
    if let Some(first) = ex.series.terms.first() {
        let r = cabs(first.mu).approx();
        let need = resolvable_length(r, cutoff.approx(), tol.approx());
        if x.len() < need {
            return Err(JostError::Unresolvable {
                op: "poles_from_taylor",
                detail: format!(
                    "{} coefficients cannot resolve poles out to {} behind a singularity at {:.4}; need at least {need}",
                    x.len(),
                    cutoff.approx(),
                    r
                ),
            });
        }
    }
    let mut entire: Poly<T> = x.iter().enumerate().map(|(k, c)| *c - ex.series.value(k)).collect();
    // Drop the entire part beyond the point where it sinks into the data noise.
    let scale = x.iter().fold(T::zero(), |m, c| m.max(cabs(*c)));
    let floor = T::of(64.0 * noise) * scale;
    let mut last = 0;
    for (k, e) in entire.iter().enumerate() {
        let size = ex.series.terms.iter().fold(cabs(x[k]), |acc, t| acc + cabs(t.value(k)));
        if cabs(*e) > floor.max(T::of(64.0 * noise) * size) {
            last = k + 1;
        }
    }
    entire.truncate(last);
    // Geometric decay of what is left sets the validity radius.
    let radius = {
        let pts: Vec<(f64, f64)> = entire
            .iter()
            .enumerate()
            .skip(entire.len() / 3)
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as f64, cabs(*c).approx().ln()))
            .collect();
        if pts.len() < 4 {
            f64::INFINITY
        } else {
            let m = pts.len() as f64;
            let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
            let (mx, my) = (sx / m, sy / m);
            let (sxy, sxx) =
                pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + (x - mx) * (y - my), b + (x - mx).powi(2)));
            let slope = sxy / sxx;
            if slope < 0.0 {
                (-slope).exp()
            } else {
                1.0
            }
        }
    };
    let radius = match ex.series.remainder_radius {
        Some(r) => radius.min(r.approx()).max(keep.min(r.approx())),
        None => radius.max(keep),
    };
    let mut parts = ex.series.principal_parts();
    sort_parts(&mut parts);
    Ok(MeromorphicModel { parts, entire, radius: T::of(radius), cutoff })
}

/// Model of the function with the given Taylor data, resolving poles out to
/// 1.25·cutoff so that those at the cutoff are not skewed by the next ones.
fn model_from<T: Scalar>(
    taylor: impl Fn(usize) -> Result<PowerSeriesModel<Dd>>,
    finite: Option<usize>,
    r: f64,
    cutoff: T,
) -> Result<MeromorphicModel<T>> {
    if let Some(deg) = finite {
        let entire: Poly<T> = taylor(deg)?.coeffs.iter().map(|c| cconvert::<Dd, T>(*c)).collect();
        return Ok(MeromorphicModel { parts: Vec::new(), entire, radius: T::infinity(), cutoff });
    }
    let reach = cutoff.approx() * 1.25;
    let degree = resolvable_length(r, reach, 1e-24).clamp(160, 480);
    let mut m: MeromorphicModel<T> = poles_from_taylor(&taylor(degree)?, Dd::of(reach), Dd::of(1e-9))?.cast();
    m.cutoff = cutoff;
    Ok(m)
}

/// Meromorphic model of the Jost function u out to `cutoff`.
pub fn jost_model<T: Scalar>(params: &JacobiParameters<T>, cutoff: T) -> Result<MeromorphicModel<T>> {
    let pd: JacobiParameters<Dd> = params.cast();
    let finite = params.support().map(|m| 2 * m + 2);
    model_from(|n| jost_taylor(&pd, n, Dd::of(1e-28)), finite, params.decay_radius().approx(), cutoff)
}

/// Meromorphic model of B out to `cutoff`; its poles are the rates T of the
/// interleaved sequence.
pub fn b_model<T: Scalar>(params: &JacobiParameters<T>, cutoff: T) -> Result<MeromorphicModel<T>> {
    let pd: JacobiParameters<Dd> = params.cast();
    let finite = params.support().map(|m| 2 * m + 1);
    model_from(|n| b_series(&pd, n), finite, params.decay_radius().approx(), cutoff)
}

/// Meromorphic model of S out to `cutoff`.
pub fn s_model<T: Scalar>(alphas: &VerblunskyCoefficients<T>, cutoff: T) -> Result<MeromorphicModel<T>> {
    let ad: VerblunskyCoefficients<Dd> = alphas.cast();
    let finite = alphas.support().map(|m| m + 1);
    model_from(|n| s_series(&ad, n), finite, alphas.decay_radius().approx(), cutoff)
}

/// Meromorphic model of D⁻¹ out to `cutoff`.
pub fn d_inverse_model<T: Scalar>(alphas: &VerblunskyCoefficients<T>, cutoff: T) -> Result<MeromorphicModel<T>> {
    let ad: VerblunskyCoefficients<Dd> = alphas.cast();
    let finite = alphas.support().map(|m| m + 1);
    model_from(|n| d_inverse_taylor(&ad, n, Dd::of(1e-28)), finite, alphas.decay_radius().approx(), cutoff)
}

/// Extraction summary as JSON.
pub fn extraction_to_json<T: Scalar>(ex: &Extraction<T>) -> Value {
    json!({
        "series": crate::io::series_to_json(&ex.series),
        "rank": ex.rank,
        "impulses": ex.impulses,
        "gap": if ex.gap.is_finite() { f64num(ex.gap) } else { json!("inf") },
        "singular_values": ex.singular_values.iter().map(|s| f64num(*s)).collect::<Vec<_>>(),
        "certificate": {
            "rate": f64num(ex.certificate.rate),
            "noise_limited": ex.certificate.noise_limited,
            "window": [ex.certificate.window.0, ex.certificate.window.1],
        },
        "warnings": ex.warnings,
    })
}
