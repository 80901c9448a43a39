//! Laurent coefficients on circles by FFT, empirical analyticity radii, and
//! the cancellation checks for (1-z²)u(z) + z²u(1/z)B(z) and for r - S.
//!
//! Sampling is in f64. Functions that have to be evaluated beyond the
//! radius of their defining series go through a meromorphic model built
//! from double-double Taylor data.

use std::f64::consts::PI;

use num_complex::Complex;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde_json::{json, Value};

use crate::asymptotics::{d_inverse_model, poles_from_taylor, resolvable_length, MeromorphicModel};
use crate::error::{JostError, Result};
use crate::io::{cnums, f64num, pole_set_to_json};
use crate::jacobi_gc::b_eval;
use crate::model::{JacobiParameters, PoleSet, VerblunskyCoefficients};
use crate::opuc::{d_inverse, q_series, s_eval};
use crate::scalar::{Dd, Scalar};
use crate::spectral_m::JostFunction;

type C = Complex<f64>;

/// Relative band for "radius ≈ X".
pub const RADIUS_BAND: f64 = 0.05;

/// Fewest coefficients a slope fit will use.
pub const MIN_USABLE: usize = 16;

/// Coefficients must clear the noise level of the samples by this factor.
const NOISE_MARGIN: f64 = 100.0;

/// Laurent data of f on one circle. `coeffs[i]` is a_k with k = i for
/// i < n/2 and k = i - n otherwise, already divided by r^k.
#[derive(Clone, Debug, PartialEq)]
pub struct CircleData {
    pub r: f64,
    pub coeffs: Vec<C>,
    /// max |f| on the circle.
    pub scale: f64,
    /// max |a_k| r^|k| over the band 3n/8 ≤ |k| < n/2.
    pub alias_bound: f64,
    /// true when the circle had to be moved off a singular point.
    pub perturbed: bool,
}

impl CircleData {
    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: i64) -> C {
        let n = self.n() as i64;
        self.coeffs[k.rem_euclid(n) as usize]
    }

    /// |a_k| r^k, the size of the k-th term on this circle.
    pub fn term(&self, k: i64) -> f64 {
        self.coeff(k).norm() * self.r.powi(k as i32)
    }

    /// Terms below this are indistinguishable from sampling noise or aliasing.
    pub fn floor(&self, noise: f64) -> f64 {
        (NOISE_MARGIN * noise * self.scale).max(NOISE_MARGIN * self.alias_bound).max(f64::MIN_POSITIVE)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentProfile {
    pub radii: Vec<f64>,
    pub n_points: usize,
    pub circles: Vec<CircleData>,
    /// Relative accuracy of the sampled values.
    pub noise: f64,
    /// (k, spread) for |k| ≤ n/4: max over pairs of radii of
    /// |a_k(r₁) - a_k(r₂)| in units of the resolution max(max|f|/r^k) of
    /// the two circles. Near roundoff where f is analytic between them.
    pub consistency: Vec<(i64, Option<f64>)>,
}

impl LaurentProfile {
    /// Largest spread over all resolved k.
    pub fn max_inconsistency(&self) -> f64 {
        self.consistency.iter().filter_map(|(_, s)| *s).fold(0.0, f64::max)
    }

    /// Aliasing bound of the worst circle.
    pub fn alias_bound(&self) -> f64 {
        self.circles.iter().map(|c| c.alias_bound / c.scale.max(f64::MIN_POSITIVE)).fold(0.0, f64::max)
    }

    /// Plot data: radius, k, log|a_k| for every resolved coefficient with |k| ≤ n/4.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("radius,k,log_abs_c\n");
        let h = (self.n_points / 4) as i64;
        for c in &self.circles {
            let floor = c.floor(self.noise);
            for k in -h..=h {
                if c.term(k) > floor {
                    s.push_str(&format!("{:e},{},{:e}\n", c.r, k, c.coeff(k).norm().ln()));
                }
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "radii": self.radii,
            "n_points": self.n_points,
            "noise": self.noise,
            "alias_bound": f64num(self.alias_bound()),
            "max_inconsistency": f64num(self.max_inconsistency()),
            "perturbed": self.circles.iter().map(|c| c.perturbed).collect::<Vec<_>>(),
        })
    }
}

fn sample_circle<F>(f: &F, r: f64, n: usize) -> Result<Vec<C>>
where
    F: Fn(C) -> Result<C> + Sync,
{
    (0..n)
        .into_par_iter()
        .map(|j| {
            let z = C::from_polar(r, 2.0 * PI * j as f64 / n as f64);
            let v = f(z)?;
            if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(JostError::ZeroDenominator { op: "laurent_profile", z: format!("{z}") })
            }
        })
        .collect()
}

fn circle_data<F>(f: &F, r: f64, n: usize) -> Result<CircleData>
where
    F: Fn(C) -> Result<C> + Sync,
{
    let (mut vals, r, perturbed) = match sample_circle(f, r, n) {
        Ok(v) => (v, r, false),
        Err(_) => {
            let r2 = r * 1.001;
            (sample_circle(f, r2, n)?, r2, true)
        }
    };
    let scale = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut vals);
    let inv_n = 1.0 / n as f64;
    let half = n / 2;
    let mut alias_bound: f64 = 0.0;
    let coeffs: Vec<C> = vals
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let k = if i < half { i as i32 } else { i as i32 - n as i32 };
            let t = *v * inv_n;
            if k.unsigned_abs() as usize >= 3 * n / 8 {
                alias_bound = alias_bound.max(t.norm());
            }
            t / r.powi(k)
        })
        .collect();
    Ok(CircleData { r, coeffs, scale, alias_bound, perturbed })
}

/// Laurent coefficients of f on `n_radii` geometrically spaced circles.
///
/// `noise` is the relative accuracy of the values f returns. A circle on
/// which f fails is moved out by 0.1% and sampled once more.
pub fn laurent_profile<F>(
    f: F,
    r_min: f64,
    r_max: f64,
    n_radii: usize,
    n_points: usize,
    noise: f64,
) -> Result<LaurentProfile>
where
    F: Fn(C) -> Result<C> + Sync,
{
    if !(r_min > 0.0 && r_max >= r_min && r_max.is_finite()) {
        return Err(JostError::Invalid(format!("laurent_profile: bad radii [{r_min}, {r_max}]")));
    }
    if n_radii == 0 {
        return Err(JostError::Invalid("laurent_profile: need at least one radius".into()));
    }
    if n_points < 256 || !n_points.is_power_of_two() {
        return Err(JostError::Invalid(format!("laurent_profile: n_points = {n_points} must be a power of two ≥ 256")));
    }
    let radii: Vec<f64> = (0..n_radii)
        .map(|j| if n_radii == 1 { r_min } else { r_min * (r_max / r_min).powf(j as f64 / (n_radii - 1) as f64) })
        .collect();
    let circles: Vec<CircleData> = radii.par_iter().map(|&r| circle_data(&f, r, n_points)).collect::<Result<_>>()?;
    let radii = circles.iter().map(|c| c.r).collect();
    let h = (n_points / 4) as i64;
    let consistency = (-h..=h)
        .map(|k| {
            if circles.len() < 2 {
                return (k, None);
            }
            let mut spread: f64 = 0.0;
            for (i, a) in circles.iter().enumerate() {
                for b in &circles[i + 1..] {
                    let unit = (a.scale / a.r.powi(k as i32)).max(b.scale / b.r.powi(k as i32));
                    spread = spread.max((a.coeff(k) - b.coeff(k)).norm() / unit);
                }
            }
            (k, Some(spread))
        })
        .collect();
    Ok(LaurentProfile { radii, n_points, circles, noise, consistency })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Inner,
    Outer,
}

/// Radius from the log-slope of the coefficient tail.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiusEstimate {
    pub side: Side,
    /// None when the coefficients reach the noise floor too early to fit:
    /// the radius is then only known to be beyond `bound` (outer) or
    /// inside it (inner).
    pub radius: Option<f64>,
    pub stderr: f64,
    pub bound: f64,
    pub usable: usize,
    pub window: (i64, i64),
}

impl RadiusEstimate {
    /// Outer radius is at least x (within the band), or is only bounded below by the grid.
    pub fn at_least(&self, x: f64) -> bool {
        match self.radius {
            Some(r) => r >= x * (1.0 - RADIUS_BAND),
            None => true,
        }
    }

    pub fn near(&self, x: f64) -> bool {
        match self.radius {
            Some(r) => (r / x - 1.0).abs() <= RADIUS_BAND,
            None => !x.is_finite() || x >= self.bound,
        }
    }

    /// Relative margin to x (positive: beyond x).
    pub fn margin(&self, x: f64) -> Option<f64> {
        if !x.is_finite() {
            return None;
        }
        Some(self.radius.unwrap_or(self.bound) / x - 1.0)
    }

    pub fn to_json(&self) -> Value {
        let op = if self.side == Side::Outer { "≥" } else { "≤" };
        json!({
            "side": if self.side == Side::Outer { "outer" } else { "inner" },
            "radius": match self.radius { Some(r) => f64num(r), None => json!(format!("{op} grid bound")) },
            "stderr": f64num(self.stderr),
            "grid_bound": f64num(self.bound),
            "usable": self.usable,
            "window": [self.window.0, self.window.1],
        })
    }
}

/// Least-squares slope and its standard error.
fn fit(pts: &[(f64, f64)]) -> (f64, f64) {
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let res: f64 = pts.iter().map(|(x, y)| (y - my - slope * (x - mx)).powi(2)).sum();
    let se = if pts.len() > 2 { (res / (m - 2.0) / sxx).sqrt() } else { f64::INFINITY };
    (slope, se)
}

/// Fit ln|a_k| ~ c - k ln ρ on the tail of the resolved coefficients.
/// `terms[k]` = (|a_k|, |a_k| r^k, floor) for k = 0, 1, ...
fn tail_fit(terms: &[(f64, f64, f64)], side: Side, bound: f64) -> RadiusEstimate {
    let usable: Vec<(usize, f64)> =
        terms.iter().enumerate().filter(|(_, (_, t, fl))| t > fl && *t > 0.0).map(|(k, (a, _, _))| (k, *a)).collect();
    let none = |n| RadiusEstimate { side, radius: None, stderr: 0.0, bound, usable: n, window: (0, 0) };
    if usable.len() < MIN_USABLE {
        return none(usable.len());
    }
    let k_last = usable.last().map(|u| u.0).unwrap_or(0);
    let mut window: Vec<&(usize, f64)> = usable.iter().filter(|(k, _)| *k >= k_last / 2).collect();
    if window.len() < MIN_USABLE / 2 {
        window = usable.iter().rev().take(MIN_USABLE).collect();
        window.reverse();
    }
    let pts: Vec<(f64, f64)> = window.iter().map(|(k, a)| (*k as f64, a.ln())).collect();
    let (slope, se) = fit(&pts);
    let rho = (-slope).exp();
    let (radius, stderr) = match side {
        Side::Outer => (rho, rho * se),
        Side::Inner => (1.0 / rho, se / rho),
    };
    let sign = if side == Side::Outer { 1 } else { -1 };
    RadiusEstimate {
        side,
        radius: Some(radius),
        stderr,
        bound,
        usable: usable.len(),
        window: (sign * window[0].0 as i64, sign * window[window.len() - 1].0 as i64),
    }
}

/// Outer radius from the largest circle's k ≥ 0 coefficients, or inner
/// radius from the smallest circle's k < 0 coefficients.
pub fn radius_estimate(profile: &LaurentProfile, side: Side) -> RadiusEstimate {
    let c = match side {
        Side::Outer => profile.circles.iter().max_by(|a, b| a.r.total_cmp(&b.r)),
        Side::Inner => profile.circles.iter().min_by(|a, b| a.r.total_cmp(&b.r)),
    }
    .expect("profile has at least one circle");
    let floor = c.floor(profile.noise);
    let kmax = 3 * profile.n_points as i64 / 8;
    let terms: Vec<(f64, f64, f64)> = match side {
        Side::Outer => (0..kmax).map(|k| (c.coeff(k).norm(), c.term(k), floor)).collect(),
        // a_{-k} ~ ρ_in^k: the same fit on the reversed sequence in 1/z.
        Side::Inner => (0..kmax).map(|k| (c.coeff(-k).norm(), c.term(-k), floor)).collect(),
    };
    tail_fit(&terms, side, c.r)
}

/// Outer radius from Taylor coefficients given directly.
pub fn radius_from_coefficients(coeffs: &[C], noise: f64) -> RadiusEstimate {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let floor = (NOISE_MARGIN * noise * scale).max(f64::MIN_POSITIVE);
    let terms: Vec<(f64, f64, f64)> = coeffs.iter().map(|c| (c.norm(), c.norm(), floor)).collect();
    // no sampling circle, so nothing bounds the radius from below
    tail_fit(&terms, Side::Outer, f64::INFINITY)
}

/// Sampling grid for the checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub n_radii: usize,
    pub n_points: usize,
    /// Largest radius sampled when the expected radius is infinite.
    pub max_radius: f64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { n_radii: 8, n_points: 4096, max_radius: 4.0 }
    }
}

/// Relative accuracy assumed for values taken from a meromorphic model.
const MODEL_NOISE: f64 = 1e-11;

fn sq(x: f64) -> f64 {
    x * x
}

/// Profiles of B (inside its disk) and of (1-z²)u(z) + z²u(1/z)B(z) on
/// 1 < |z| < 0.9R², plus the continuation model of u if one was needed.
pub fn theorem15_profiles(
    params: &JacobiParameters<f64>,
    tol: f64,
    grid: &Grid,
) -> Result<(LaurentProfile, LaurentProfile, Option<MeromorphicModel<f64>>)> {
    let r = params.decay_radius();
    let b_max = if r.is_finite() { 0.95 * r } else { 0.95 * grid.max_radius };
    let b_profile = laurent_profile(|z| Ok(b_eval(params, z)), 0.3 * b_max, b_max, grid.n_radii, grid.n_points, 1e-14)?;
    let c_max = if r.is_finite() { 0.9 * sq(r) } else { grid.max_radius };
    let c_min = (1.0 + 0.03 * (c_max - 1.0)).min(1.05);
    let u = JostFunction::new(params, c_max * 1.01, tol)?;
    let noise = if u.model().is_some() { MODEL_NOISE } else { 1e-14 };
    let combo = |z: C| -> Result<C> {
        let one = C::new(1.0, 0.0);
        Ok((one - z * z) * u.eval(z)? + z * z * u.eval(one / z)? * b_eval(params, z))
    };
    let c_profile = laurent_profile(combo, c_min, c_max, grid.n_radii, grid.n_points, noise)?;
    Ok((b_profile, c_profile, u.model().cloned()))
}

/// Plot-data files (name, CSV text) of the sampled profiles.
pub type PlotFiles = Vec<(String, String)>;

/// Outer radius checks of B and of (1-z²)u(z) + z²u(1/z)B(z).
pub fn theorem15_check(params: &JacobiParameters<f64>, tol: f64, grid: &Grid) -> Result<Value> {
    Ok(theorem15_report(params, tol, grid)?.0)
}

/// [`theorem15_check`] plus the profile CSVs.
pub fn theorem15_report(params: &JacobiParameters<f64>, tol: f64, grid: &Grid) -> Result<(Value, PlotFiles)> {
    let r = params.decay_radius();
    let (b_profile, c_profile, u_model) = theorem15_profiles(params, tol, grid)?;
    let b_radius = radius_estimate(&b_profile, Side::Outer);
    let c_radius = radius_estimate(&c_profile, Side::Outer);
    let c_inner = radius_estimate(&c_profile, Side::Inner);
    let (expect_b, expect_c) = (r, sq(r));
    let b_ok = b_radius.near(expect_b);
    let c_ok = c_radius.at_least(expect_c);
    let sharp = r.is_finite() && c_radius.near(expect_c);
    let files =
        vec![("profile_B.csv".to_string(), b_profile.to_csv()), ("profile_combo.csv".to_string(), c_profile.to_csv())];
    let report = json!({
        "target": "thm15",
        "check": "thm1.5",
        "radii": {"B": b_radius.to_json(), "combo": c_radius.to_json(), "combo_inner": c_inner.to_json()},
        "expected": {"B": f64num(expect_b), "combo": format!("≥ {expect_c}"), "combo_inner": format!("≤ {}", 1.0 / r)},
        "pass": b_ok && c_ok,
        "sharp": sharp,
        "margins": {
            "B": b_radius.margin(expect_b).map(f64num),
            "combo": c_radius.margin(expect_c).map(f64num),
        },
        "band": RADIUS_BAND,
        "profiles": {"B": b_profile.to_json(), "combo": c_profile.to_json()},
        "u_model": u_model.map(|m| m.to_json()),
    });
    Ok((report, files))
}

/// D⁻¹ on and beyond the disk: the recursion inside, a meromorphic model outside.
pub struct DInverse {
    alphas: VerblunskyCoefficients<f64>,
    model: Option<MeromorphicModel<f64>>,
    tol: f64,
}

impl DInverse {
    pub fn new(alphas: &VerblunskyCoefficients<f64>, cutoff: f64, tol: f64) -> Result<Self> {
        let model = if alphas.support().is_some() { None } else { Some(d_inverse_model(alphas, cutoff)?) };
        Ok(DInverse { alphas: alphas.clone(), model, tol })
    }

    pub fn eval(&self, z: C) -> Result<C> {
        match &self.model {
            Some(m) if z.norm() >= 0.9 => Ok(m.eval(z)),
            _ => d_inverse(&self.alphas, z, self.tol),
        }
    }

    pub fn model(&self) -> Option<&MeromorphicModel<f64>> {
        self.model.as_ref()
    }
}

/// Outer radii of S, of r - S and of Q, and the poles of Q.
pub fn theorem13_check(alphas: &VerblunskyCoefficients<f64>, tol: f64, grid: &Grid) -> Result<Value> {
    Ok(theorem13_report(alphas, tol, grid)?.0)
}

/// [`theorem13_check`] plus the profile CSVs.
pub fn theorem13_report(alphas: &VerblunskyCoefficients<f64>, tol: f64, grid: &Grid) -> Result<(Value, PlotFiles)> {
    let r = alphas.decay_radius();
    let finite_r = r.is_finite();
    let s_max = if finite_r { 0.9 * r } else { grid.max_radius };
    let s_profile = laurent_profile(|z| Ok(s_eval(alphas, z)), 0.5 * s_max, s_max, grid.n_radii, grid.n_points, 1e-14)?;
    let s_radius = radius_estimate(&s_profile, Side::Outer);

    let rs_max = if finite_r { 0.9 * r.powi(3) } else { grid.max_radius };
    let rs_min = (1.0 + 0.03 * (rs_max - 1.0)).min(1.05);
    let dinv = DInverse::new(alphas, rs_max * 1.01, tol)?;
    let noise = if dinv.model().is_some() { MODEL_NOISE } else { 1e-14 };
    let r_minus_s = |z: C| -> Result<C> {
        let den = dinv.eval(C::new(1.0, 0.0) / z)?;
        Ok(dinv.eval(z)? / den - s_eval(alphas, z))
    };
    let rs_profile = laurent_profile(r_minus_s, rs_min, rs_max, grid.n_radii, grid.n_points, noise)?;
    let rs_radius = radius_estimate(&rs_profile, Side::Outer);

    // Q from its coefficient formula, in double-double.
    let ad: VerblunskyCoefficients<Dd> = alphas.cast();
    let (q_radius, q_poles) = if finite_r {
        let cutoff = 1.5 * sq(r);
        let n = resolvable_length(sq(r), cutoff, 1e-24).clamp(160, 480);
        let q = q_series(&ad, n)?;
        let qc: Vec<C> = q.coeffs.iter().map(|c| C::new(c.re.approx(), c.im.approx())).collect();
        let model: MeromorphicModel<f64> = poles_from_taylor(&q, Dd::of(cutoff), Dd::of(1e-9))?.cast();
        (radius_from_coefficients(&qc, 1e-30), model.poles())
    } else {
        let q = q_series(&ad, 64)?;
        let qc: Vec<C> = q.coeffs.iter().map(|c| C::new(c.re.approx(), c.im.approx())).collect();
        (radius_from_coefficients(&qc, 1e-30), PoleSet::empty(f64::INFINITY))
    };

    let expect_s = r;
    let expect_rs =
        if finite_r { r.powi(3).min(rs_profile.circles.last().map(|c| c.r).unwrap_or(rs_max) / 0.9) } else { r };
    let expect_q = sq(r);
    let s_ok = s_radius.near(expect_s);
    let rs_ok = rs_radius.at_least(expect_rs);
    let q_ok = q_radius.at_least(expect_q);
    let files = vec![
        ("profile_S.csv".to_string(), s_profile.to_csv()),
        ("profile_r_minus_S.csv".to_string(), rs_profile.to_csv()),
    ];
    let report = json!({
        "target": "thm13",
        "check": "thm1.3",
        "radii": {"S": s_radius.to_json(), "r_minus_S": rs_radius.to_json(), "Q": q_radius.to_json()},
        "expected": {"S": f64num(expect_s), "r_minus_S": format!("≥ {}", expect_rs), "Q": format!("≥ {}", expect_q)},
        "pass": s_ok && rs_ok && q_ok,
        "margins": {
            "S": s_radius.margin(expect_s).map(f64num),
            "r_minus_S": rs_radius.margin(expect_rs).map(f64num),
            "Q": q_radius.margin(expect_q).map(f64num),
        },
        "band": RADIUS_BAND,
        "Q_poles": pole_set_to_json(&q_poles),
        "Q_pole_locations": cnums(&q_poles.locations()),
        "profiles": {"S": s_profile.to_json(), "r_minus_S": rs_profile.to_json()},
        "d_inverse_model": dinv.model().map(|m| m.to_json()),
    });
    Ok((report, files))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_coefficients_are_radius_independent() {
        let f = |z: C| Ok(C::new(1.0, 0.0) / (C::new(1.0, 0.0) - z / 2.0));
        let p = laurent_profile(f, 0.5, 1.5, 4, 256, 1e-15).unwrap();
        for c in &p.circles {
            for k in 0..20 {
                // roundoff on the circle is amplified by r^{-k}
                let err = (c.coeff(k) - C::new(0.5f64.powi(k as i32), 0.0)).norm();
                assert!(err < 1e-14 * c.scale / c.r.powi(k as i32), "r = {} k = {k}: {err}", c.r);
            }
        }
        assert!(p.max_inconsistency() < 1e-13, "{}", p.max_inconsistency());
    }

    #[test]
    fn laurent_polynomial() {
        let f = |z: C| Ok(z + C::new(1.0, 0.0) / z);
        let p = laurent_profile(f, 0.5, 2.0, 3, 256, 1e-15).unwrap();
        for c in &p.circles {
            assert!((c.coeff(1) - 1.0).norm() < 1e-13 && (c.coeff(-1) - 1.0).norm() < 1e-13);
            assert!(c.coeff(0).norm() < 1e-13 && c.coeff(2).norm() < 1e-13);
        }
        assert_eq!(radius_estimate(&p, Side::Outer).radius, None);
    }

    #[test]
    fn outer_radius_of_geometric() {
        let f = |z: C| Ok(C::new(1.0, 0.0) / (C::new(1.0, 0.0) - z / 2.0));
        let p = laurent_profile(f, 0.5, 1.8, 4, 1024, 1e-15).unwrap();
        let e = radius_estimate(&p, Side::Outer);
        assert!((e.radius.unwrap() - 2.0).abs() < 0.04, "{e:?}");
    }

    #[test]
    fn rejects_bad_grid() {
        let f = |z: C| Ok(z);
        assert!(laurent_profile(f, 0.5, 1.0, 2, 300, 1e-15).is_err());
        assert!(laurent_profile(f, 1.0, 0.5, 2, 256, 1e-15).is_err());
    }

    #[test]
    fn pole_on_circle_is_stepped_over() {
        let f = |z: C| {
            if (z - 1.0).norm() < 1e-12 {
                Err(JostError::ZeroDenominator { op: "test", z: "1".into() })
            } else {
                Ok(C::new(1.0, 0.0) / (z - 3.0))
            }
        };
        let p = laurent_profile(f, 1.0, 1.0, 1, 256, 1e-15).unwrap();
        assert!(p.circles[0].perturbed && (p.circles[0].r - 1.001).abs() < 1e-15);
    }
}
