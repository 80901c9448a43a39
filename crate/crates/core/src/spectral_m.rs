//! The m-function M(z) = ⟨δ₁, (z + z⁻¹ - J)⁻¹ δ₁⟩, coefficient stripping,
//! bound states and their classification, and the pole sets P₁, P₂, P.
//!
//! Inside the disk M comes from the downward continued fraction
//! M^{(k)}(z)⁻¹ = z + z⁻¹ - b_{k+1} - a_{k+1}² M^{(k+1)}(z), seeded with the
//! free value z deep in the tail. Outside it is continued through
//! [M(z) - M(1/z)] u(z) u(1/z) = z - z⁻¹.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::asymptotics::{jost_model, MeromorphicModel};
use crate::error::{JostError, Result};
use crate::io::{cnum, num, power_series_to_json};
use crate::jacobi_gc::{jost_taylor, jost_u_d};
use crate::model::{JacobiParameters, Pole, PoleSet, PowerSeriesModel};
use crate::poly::Poly;
use crate::scalar::{cabs, capprox, cre, Scalar};

/// Relative agreement demanded of the two residues in [`classify_with`].
pub const CANONICAL_RTOL: f64 = 1e-6;

/// Points closer than this (relative) are the same pole.
pub const POLE_MATCH_RTOL: f64 = 1e-6;

/// The Jost function on and beyond the disk.
///
/// Evaluation uses the recursion where it converges quickly
/// (|z| ≤ 3R/4 for decay radius R) and a meromorphic model built from the
/// Taylor coefficients elsewhere. A function given only by a model (for
/// constructed examples) uses the model everywhere.
#[derive(Clone, Debug)]
pub struct JostFunction<T> {
    params: Option<JacobiParameters<T>>,
    tol: T,
    direct_radius: T,
    model: Option<MeromorphicModel<T>>,
    cutoff: T,
}

impl<T: Scalar> JostFunction<T> {
    /// Jost function of `params`, continued out to `cutoff`.
    pub fn new(params: &JacobiParameters<T>, cutoff: T, tol: T) -> Result<Self> {
        let r = params.decay_radius();
        if params.support().is_some() {
            return Ok(JostFunction { params: Some(params.clone()), tol, direct_radius: r, model: None, cutoff });
        }
        let direct_radius = r * T::of(0.75);
        let model = if cutoff >= direct_radius { Some(jost_model(params, cutoff)?) } else { None };
        Ok(JostFunction { params: Some(params.clone()), tol, direct_radius, model, cutoff })
    }

    /// A Jost function known only through a meromorphic model.
    pub fn from_model(model: MeromorphicModel<T>) -> Self {
        let cutoff = model.cutoff;
        JostFunction { params: None, tol: T::unit_roundoff(), direct_radius: T::zero(), model: Some(model), cutoff }
    }

    pub fn params(&self) -> Option<&JacobiParameters<T>> {
        self.params.as_ref()
    }

    pub fn model(&self) -> Option<&MeromorphicModel<T>> {
        self.model.as_ref()
    }

    pub fn cutoff(&self) -> T {
        self.cutoff
    }

    /// u(z) and u'(z).
    pub fn eval_d(&self, z: Complex<T>) -> Result<(Complex<T>, Complex<T>)> {
        if let Some(p) = &self.params {
            if cabs(z) <= self.direct_radius || self.model.is_none() {
                let v = jost_u_d(p, z, self.tol)?;
                return Ok((v.value, v.derivative));
            }
        }
        match &self.model {
            Some(m) if cabs(z) < m.radius => Ok(m.eval_d(z)),
            Some(m) => Err(JostError::OutsideRegion {
                op: "jost_function",
                z: format!("{}", capprox(z)),
                radius: m.radius.approx(),
            }),
            None => Err(JostError::OutsideRegion {
                op: "jost_function",
                z: format!("{}", capprox(z)),
                radius: self.direct_radius.approx(),
            }),
        }
    }

    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        Ok(self.eval_d(z)?.0)
    }

    /// Poles of u with 1 < |z| ≤ cutoff (empty for polynomial u).
    pub fn poles(&self) -> PoleSet<T> {
        match &self.model {
            Some(m) => m.poles().truncated(self.cutoff, T::of(POLE_MATCH_RTOL)),
            None => PoleSet::empty(self.cutoff),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "direct_radius": if self.direct_radius.is_finite() { num(self.direct_radius) } else { json!("inf") },
            "cutoff": num(self.cutoff),
            "model": self.model.as_ref().map(|m| m.to_json()),
        })
    }
}

/// Meromorphic model of u out to `cutoff`, computed in double-double.
/// Depth at which the free seed M^{(K)} = z is accurate to tol/100.
fn seed_depth<T: Scalar>(params: &JacobiParameters<T>, tol: T) -> usize {
    params.negligible_from(tol * T::of(1e-2))
}

/// M(z)⁻¹ and its derivative, by the downward continued fraction.
pub fn m_inverse_d<T: Scalar>(params: &JacobiParameters<T>, z: Complex<T>, tol: T) -> Result<(Complex<T>, Complex<T>)> {
    if z.is_zero() {
        return Err(JostError::Invalid("m_eval: z = 0".into()));
    }
    let k_seed = seed_depth(params, tol);
    let one = Complex::<T>::one();
    let zi = one / z;
    let (mut m, mut dm) = (z, one);
    let tiny = T::unit_roundoff() * T::of(64.0);
    for k in (0..k_seed).rev() {
        let a2 = T::one() + params.a2m1(k + 1);
        let inv = z + zi - params.b(k + 1) - m * a2;
        let dinv = one - zi * zi - dm * a2;
        if k == 0 {
            return Ok((inv, dinv));
        }
        if cabs(inv) <= tiny * (cabs(z) + cabs(zi)) {
            return Err(JostError::PoleProximity { op: "m_eval", level: k, z: format!("{}", capprox(z)) });
        }
        m = one / inv;
        dm = -dinv * m * m;
    }
    Ok((zi, -zi * zi))
}

/// M(z) and M'(z).
///
/// For |z| ≥ 1 the continued fraction is used only when the parameters
/// are finitely supported (then it is an exact rational identity);
/// otherwise use [`m_continue`] or [`m_outside`].
pub fn m_eval_d<T: Scalar>(params: &JacobiParameters<T>, z: Complex<T>, tol: T) -> Result<(Complex<T>, Complex<T>)> {
    if cabs(z) >= T::one() && params.support().is_none() {
        return Err(JostError::OutsideRegion { op: "m_eval", z: format!("{}", capprox(z)), radius: 1.0 });
    }
    let (inv, dinv) = m_inverse_d(params, z, tol)?;
    if cabs(inv) <= T::unit_roundoff() * T::of(64.0) * (cabs(z) + T::one() / cabs(z)) {
        return Err(JostError::PoleProximity { op: "m_eval", level: 0, z: format!("{}", capprox(z)) });
    }
    let m = Complex::<T>::one() / inv;
    Ok((m, -dinv * m * m))
}

pub fn m_eval<T: Scalar>(params: &JacobiParameters<T>, z: Complex<T>, tol: T) -> Result<Complex<T>> {
    Ok(m_eval_d(params, z, tol)?.0)
}

/// M(z) = M(1/z) + (z - z⁻¹)/(u(z) u(1/z)) for |z| > 1.
///
/// Where 1/z is a bound state both terms blow up while their sum stays
/// analytic; there the value is the mean of the formula over a small
/// circle around z.
pub fn m_continue<T: Scalar>(
    params: &JacobiParameters<T>,
    u: &JostFunction<T>,
    z: Complex<T>,
    tol: T,
) -> Result<Complex<T>> {
    if !(cabs(z) > T::one()) {
        return Err(JostError::Invalid("m_continue: need |z| > 1".into()));
    }
    match continue_formula(params, u, z, tol) {
        Ok(v) => Ok(v),
        Err(JostError::PoleProximity { .. }) | Err(JostError::ZeroDenominator { .. }) => {
            let n = 16;
            let delta = cabs(z) * T::of(1e-3);
            let mut s = Complex::zero();
            for w in crate::jacobi_gc::circle::<T>(1.0, n, 0.5) {
                s = s + continue_formula(params, u, z + w * delta, tol)?;
            }
            Ok(s / T::of_usize(n))
        }
        Err(e) => Err(e),
    }
}

fn continue_formula<T: Scalar>(
    params: &JacobiParameters<T>,
    u: &JostFunction<T>,
    z: Complex<T>,
    tol: T,
) -> Result<Complex<T>> {
    let zi = Complex::<T>::one() / z;
    let inner = m_eval(params, zi, tol)?;
    let den = u.eval(z)? * u.eval(zi)?;
    if cabs(den) <= T::unit_roundoff() * T::of(64.0) {
        return Err(JostError::ZeroDenominator { op: "m_continue", z: format!("{}", capprox(z)) });
    }
    Ok(inner + (z - zi) / den)
}

/// M(z) for |z| > 1 without using u itself: M^{(1)} is continued through
/// u^{(1)}, and one step of the continued fraction returns to level 0.
/// Finitely supported parameters use the exact continued fraction.
pub fn m_outside<T: Scalar>(params: &JacobiParameters<T>, z: Complex<T>, cutoff: T, tol: T) -> Result<Complex<T>> {
    if params.support().is_some() {
        return m_eval(params, z, tol);
    }
    let p1 = params.shifted(1);
    let u1 = JostFunction::new(&p1, cutoff.max(cabs(z) * T::of(1.5)), tol)?;
    m_outside_with(params, &u1, z, tol)
}

/// [`m_outside`] with u^{(1)} supplied, for evaluating at many points.
pub fn m_outside_with<T: Scalar>(
    params: &JacobiParameters<T>,
    u1: &JostFunction<T>,
    z: Complex<T>,
    tol: T,
) -> Result<Complex<T>> {
    if params.support().is_some() {
        return m_eval(params, z, tol);
    }
    let p1 = params.shifted(1);
    let m1 = m_continue(&p1, u1, z, tol)?;
    let a2 = T::one() + params.a2m1(1);
    let inv = z + Complex::<T>::one() / z - params.b(1) - m1 * a2;
    if inv.is_zero() {
        return Err(JostError::PoleProximity { op: "m_outside", level: 0, z: format!("{}", capprox(z)) });
    }
    Ok(Complex::<T>::one() / inv)
}

/// |[M(z) - M(1/z)] u(z) u(1/z) - (z - z⁻¹)| with M outside the disk from
/// [`m_outside`] and u from `u`.
pub fn continuation_residual<T: Scalar>(
    params: &JacobiParameters<T>,
    u: &JostFunction<T>,
    z: Complex<T>,
    tol: T,
) -> Result<T> {
    let u1 = JostFunction::new(&params.shifted(1), u.cutoff().max(cabs(z) * T::of(1.5)), tol)?;
    continuation_residual_with(params, u, &u1, z, tol)
}

/// [`continuation_residual`] with u^{(1)} supplied.
pub fn continuation_residual_with<T: Scalar>(
    params: &JacobiParameters<T>,
    u: &JostFunction<T>,
    u1: &JostFunction<T>,
    z: Complex<T>,
    tol: T,
) -> Result<T> {
    let zi = Complex::<T>::one() / z;
    let outer = m_outside_with(params, u1, z, tol)?;
    let inner = m_eval(params, zi, tol)?;
    Ok(cabs((outer - inner) * u.eval(z)? * u.eval(zi)? - (z - zi)))
}

/// Taylor coefficients M_0..M_K of M at 0.
///
/// Each level is M^{(k)} = z / (1 - b_{k+1} z + z² - a_{k+1}² z M^{(k+1)}),
/// a power-series division, run down from the free seed.
pub fn m_taylor<T: Scalar>(params: &JacobiParameters<T>, degree: usize, tol: T) -> Result<PowerSeriesModel<T>> {
    let k_seed = seed_depth(params, tol);
    let d = degree;
    let mut m: Poly<T> = vec![Complex::zero(); d + 1];
    if d >= 1 {
        m[1] = Complex::one();
    }
    for k in (0..k_seed).rev() {
        let a2 = cre(T::one() + params.a2m1(k + 1));
        let mut den: Poly<T> = vec![Complex::zero(); d + 1];
        den[0] = Complex::one();
        if d >= 1 {
            den[1] = cre(-params.b(k + 1));
        }
        if d >= 2 {
            den[2] = Complex::one();
        }
        for j in 0..d {
            den[j + 1] = den[j + 1] - a2 * m[j];
        }
        // q = 1/den, then M = z q
        let mut q: Poly<T> = vec![Complex::zero(); d + 1];
        q[0] = Complex::one();
        for n in 1..=d {
            let mut s = Complex::zero();
            for j in 1..=n {
                s = s + den[j] * q[n - j];
            }
            q[n] = -s;
        }
        let mut next = vec![Complex::zero(); d + 1];
        next[1..(d + 1)].copy_from_slice(&q[..d]);
        if next.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(JostError::Overflow { op: "m_taylor", index: k });
        }
        m = next;
    }
    PowerSeriesModel::new(m, T::one())
}

/// J^{(k)} with the Taylor data of u^{(k)} and M^{(k)}.
#[derive(Clone, Debug)]
pub struct StrippedFamily<T> {
    pub level: usize,
    pub params: JacobiParameters<T>,
    pub u: PowerSeriesModel<T>,
    pub m: PowerSeriesModel<T>,
}

impl<T: Scalar> StrippedFamily<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level,
            "params": crate::io::input_to_json(&crate::model::Input::Jacobi(self.params.clone())),
            "u": power_series_to_json(&self.u),
            "m": power_series_to_json(&self.m),
        })
    }
}

pub fn strip<T: Scalar>(params: &JacobiParameters<T>, k: usize, degree: usize, tol: T) -> Result<StrippedFamily<T>> {
    let p = params.shifted(k);
    let u = jost_taylor(&p, degree, tol)?;
    let m = m_taylor(&p, degree, tol)?;
    Ok(StrippedFamily { level: k, params: p, u, m })
}

/// Classification of a zero z₀ ∈ (-1, 1) of u.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroClass<T> {
    pub z0: T,
    /// lim (z - z₀) M(z).
    pub residue_m: Complex<T>,
    /// (z₀ - z₀⁻¹) / (u'(z₀) u(1/z₀)), absent when 1/z₀ is a pole of u.
    pub residue_u: Option<Complex<T>>,
    pub pole_at_reciprocal: bool,
    pub canonical: bool,
}

impl<T: Scalar> ZeroClass<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "z0": num(self.z0),
            "residue_m": cnum(self.residue_m),
            "residue_u": self.residue_u.map(cnum),
            "residue_printed_sign": self.residue_u.map(|r| cnum(-r)),
            "pole_at_reciprocal": self.pole_at_reciprocal,
            "canonical": self.canonical,
        })
    }
}

/// Canonical iff u is regular at 1/z₀ and the residue of M at z₀ equals
/// (z₀ - z₀⁻¹)/(u'(z₀) u(1/z₀)). The sign is the one forced by the
/// continuation identity; the opposite sign is reported alongside.
pub fn classify_with<T: Scalar>(u: &JostFunction<T>, z0: T, residue_m: Complex<T>) -> Result<ZeroClass<T>> {
    let zc = cre(z0);
    let recip = Complex::<T>::one() / zc;
    let pole_at_reciprocal = u.poles().contains(recip, T::of(POLE_MATCH_RTOL));
    if pole_at_reciprocal {
        return Ok(ZeroClass { z0, residue_m, residue_u: None, pole_at_reciprocal, canonical: false });
    }
    let (_, du) = u.eval_d(zc)?;
    let ur = u.eval(recip)?;
    let den = du * ur;
    if den.is_zero() {
        return Err(JostError::ZeroDenominator { op: "classify_zero", z: format!("{}", z0.approx()) });
    }
    let residue_u = (zc - recip) / den;
    let canonical = cabs(residue_u - residue_m) <= T::of(CANONICAL_RTOL) * cabs(residue_m);
    Ok(ZeroClass { z0, residue_m, residue_u: Some(residue_u), pole_at_reciprocal, canonical })
}

/// Residue of M at a zero z₀ of u, from the continued fraction.
pub fn m_residue<T: Scalar>(params: &JacobiParameters<T>, z0: T, tol: T) -> Result<Complex<T>> {
    let (_, dinv) = m_inverse_d(params, cre(z0), tol)?;
    if dinv.is_zero() {
        return Err(JostError::ZeroDenominator { op: "m_residue", z: format!("{}", z0.approx()) });
    }
    Ok(Complex::<T>::one() / dinv)
}

pub fn classify_zero<T: Scalar>(params: &JacobiParameters<T>, z0: T, tol: T) -> Result<ZeroClass<T>> {
    let cutoff = (T::one() / z0.abs()) * T::of(1.5);
    let u = JostFunction::new(params, cutoff, tol)?;
    classify_with(&u, z0, m_residue(params, z0, tol)?)
}

/// One bound state E₀ = z₀ + 1/z₀ with its weight.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair<T> {
    pub z0: T,
    pub e0: T,
    pub w0: T,
    pub class: ZeroClass<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData<T> {
    pub eigen: Vec<EigenPair<T>>,
    pub resonance_at_plus1: bool,
    pub resonance_at_minus1: bool,
}

impl<T: Scalar> SpectralData<T> {
    pub fn to_json(&self) -> Value {
        let eigen: Vec<Value> = self
            .eigen
            .iter()
            .map(|e| {
                json!({
                    "z0": num(e.z0),
                    "E0": num(e.e0),
                    "w0": num(e.w0),
                    "canonical": e.class.canonical,
                    "classification": e.class.to_json(),
                })
            })
            .collect();
        json!({
            "eigen": eigen,
            "essential_spectrum": [-2, 2],
            "resonance_at_plus1": self.resonance_at_plus1,
            "resonance_at_minus1": self.resonance_at_minus1,
        })
    }

    pub fn zeros(&self) -> Vec<ZeroClass<T>> {
        self.eigen.iter().map(|e| e.class.clone()).collect()
    }
}

/// Real zeros of u in (-1, 1) by a sign scan on a 10⁻³ grid, bisection and
/// a Newton polish.
pub fn real_zeros<T: Scalar>(u: &JostFunction<T>, tol: T) -> Result<(Vec<T>, bool, bool)> {
    let steps = 2000;
    let h = T::of(2.0 / steps as f64);
    let f = |x: T| -> Result<T> { Ok(u.eval(cre(x))?.re) };
    let xs: Vec<T> = (0..=steps).map(|i| -T::one() + h * T::of_usize(i)).collect();
    let vals: Vec<T> = xs.iter().map(|&x| f(x)).collect::<Result<_>>()?;
    let scale = vals.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let small = scale * T::of(1e3) * T::unit_roundoff().max(tol);
    let res_minus = vals[0].abs() <= small;
    let res_plus = vals[steps].abs() <= small;
    let mut zeros = Vec::new();
    for i in 0..steps {
        let (mut lo, mut hi) = (xs[i], xs[i + 1]);
        let (mut flo, fhi) = (vals[i], vals[i + 1]);
        if i == 0 && res_minus || i + 1 == steps && res_plus {
            continue;
        }
        if flo.is_zero() && i > 0 {
            zeros.push(lo);
            continue;
        }
        if flo.signum() == fhi.signum() || fhi.is_zero() {
            continue;
        }
        let target = tol.max(T::unit_roundoff() * T::of(4.0));
        while hi - lo > target {
            let mid = (lo + hi) * T::of(0.5);
            let fm = f(mid)?;
            if fm.is_zero() {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        let mut x = (lo + hi) * T::of(0.5);
        for _ in 0..3 {
            let (v, dv) = u.eval_d(cre(x))?;
            if dv.re.is_zero() {
                break;
            }
            let nx = x - v.re / dv.re;
            if nx >= lo - target && nx <= hi + target {
                x = nx;
            }
        }
        zeros.push(x);
    }
    if zeros.iter().any(|z| z.is_zero()) {
        return Err(JostError::Invalid("eigen_data: u vanishes at z = 0".into()));
    }
    Ok((zeros, res_plus, res_minus))
}

/// Check that u has no zeros off the real axis in the disk: the argument
/// principle on |z| = 0.999 must count exactly the real zeros found.
fn count_zeros_in_disk<T: Scalar>(u: &JostFunction<T>) -> Result<usize> {
    let n = 2048;
    let r = 0.995;
    let mut total = 0.0;
    let mut prev = capprox(u.eval(crate::scalar::c(r, 0.0))?);
    for k in 1..=n {
        let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let cur = capprox(u.eval(crate::scalar::c(r * t.cos(), r * t.sin()))?);
        total += (cur / prev).arg();
        prev = cur;
    }
    Ok((total / (2.0 * std::f64::consts::PI)).round().max(0.0) as usize)
}

/// Bound states from the zeros of u in the disk, weights from the residues
/// of M: lim (z - z₀) M(z) = w₀ z₀² / (z₀² - 1).
pub fn eigen_data<T: Scalar>(params: &JacobiParameters<T>, tol: T) -> Result<SpectralData<T>> {
    let u = JostFunction::new(params, T::one(), tol)?;
    let (zs, res_plus, res_minus) = real_zeros(&u, tol)?;
    if !res_plus && !res_minus {
        let count = count_zeros_in_disk(&u)?;
        let inside = zs.iter().filter(|z| z.abs().approx() < 0.995).count();
        if count != inside {
            return Err(JostError::Invalid(format!(
                "eigen_data: u has {count} zeros in the disk but only {inside} on the real axis"
            )));
        }
    }
    let mut eigen = Vec::new();
    for z0 in zs {
        let res = m_residue(params, z0, tol)?;
        let w0 = (res * (z0 * z0 - T::one()) / (z0 * z0)).re;
        let class = classify_zero(params, z0, tol)?;
        eigen.push(EigenPair { z0, e0: z0 + T::one() / z0, w0, class });
    }
    Ok(SpectralData { eigen, resonance_at_plus1: res_plus, resonance_at_minus1: res_minus })
}

/// P₁, P₂ and P = P₁ ∪ P₂ within a cutoff.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleSets<T> {
    pub p1: PoleSet<T>,
    pub p2: PoleSet<T>,
    pub p: PoleSet<T>,
}

impl<T: Scalar> PoleSets<T> {
    pub fn to_json(&self) -> Value {
        use crate::io::pole_set_to_json;
        json!({"P1": pole_set_to_json(&self.p1), "P2": pole_set_to_json(&self.p2), "P": pole_set_to_json(&self.p)})
    }
}

/// Pole sets from a Jost function and its classified zeros.
pub fn pole_sets_from<T: Scalar>(u: &JostFunction<T>, zeros: &[ZeroClass<T>], cutoff: T) -> Result<PoleSets<T>> {
    let rtol = T::of(POLE_MATCH_RTOL);
    let p1 = u.poles().truncated(cutoff, rtol);
    let p2_points: Vec<Pole<T>> = zeros
        .iter()
        .filter(|z| !z.canonical)
        .map(|z| Pole { z: cre(T::one() / z.z0), order: 1 })
        .filter(|p| cabs(p.z) <= cutoff * (T::one() + rtol))
        .collect();
    for q in &p2_points {
        for p in p1.points() {
            let d = cabs(p.z - q.z) / cabs(q.z);
            if d > rtol && d < T::of(1e3) * rtol {
                return Err(JostError::Collision {
                    op: "pole_sets",
                    detail: format!(
                        "pole {} of u and reciprocal zero {} agree only to {:.2e}",
                        capprox(p.z),
                        capprox(q.z),
                        d.approx()
                    ),
                });
            }
        }
    }
    let p2 = PoleSet::unchecked(p2_points, cutoff);
    let mut merged: Vec<Pole<T>> = p1.points().to_vec();
    for q in p2.points() {
        if !p1.contains(q.z, rtol) {
            merged.push(*q);
        }
    }
    let p = PoleSet::unchecked(merged, cutoff);
    Ok(PoleSets { p1, p2, p })
}

/// P₁, P₂, P of J within `cutoff`.
pub fn pole_sets<T: Scalar>(params: &JacobiParameters<T>, cutoff: T, tol: T) -> Result<PoleSets<T>> {
    let data = eigen_data(params, tol)?;
    let reach = data.eigen.iter().fold(cutoff, |m, e| m.max(T::one() / e.z0.abs() * T::of(1.5)));
    let u = JostFunction::new(params, reach.max(cutoff), tol)?;
    let zeros = data.zeros();
    let u = JostFunction { cutoff, ..u };
    pole_sets_from(&u, &zeros, cutoff)
}

/// Smallest k ≤ cap with no bound states and no resonances for J^{(k)}.
pub fn regular_level<T: Scalar>(params: &JacobiParameters<T>, tol: T, cap: usize) -> Result<usize> {
    for k in 0..=cap {
        let d = eigen_data(&params.shifted(k), tol)?;
        if d.eigen.is_empty() && !d.resonance_at_plus1 && !d.resonance_at_minus1 {
            return Ok(k);
        }
    }
    Err(JostError::NoConvergence {
        op: "regular_level",
        iterations: cap,
        detail: "bound states persist after stripping".into(),
    })
}

/// u = 1 - βz with a bound state at z₀ = 1/β whose M-residue is scaled by
/// `factor`; factor ≠ 1 makes the zero noncanonical.
pub fn constructed_rank_one<T: Scalar>(beta: T, factor: T, cutoff: T) -> (JostFunction<T>, Vec<ZeroClass<T>>) {
    let model =
        MeromorphicModel { parts: Vec::new(), entire: vec![Complex::one(), cre(-beta)], radius: T::infinity(), cutoff };
    let u = JostFunction::from_model(model);
    let z0 = T::one() / beta;
    // residue of z/(1 - βz) at 1/β
    let res = cre(-z0 / beta * factor);
    let class = classify_with(&u, z0, res).expect("polynomial model evaluates everywhere");
    (u, vec![class])
}

/// u = (1 - βz)/(1 - z/β): the reciprocal of the zero 1/β is a pole of u.
pub fn constructed_pole_at_reciprocal<T: Scalar>(beta: T, cutoff: T) -> (JostFunction<T>, Vec<ZeroClass<T>>) {
    // (1 - βz)/(1 - z/β) = β² + β(β² - 1)/(z - β)
    let a = beta * beta;
    let c_coef = beta * (a - T::one());
    let model = MeromorphicModel {
        parts: vec![(cre(beta), vec![cre(c_coef)])],
        entire: vec![cre(a)],
        radius: T::infinity(),
        cutoff,
    };
    let u = JostFunction::from_model(model);
    let z0 = T::one() / beta;
    let class = classify_with(&u, z0, cre(-z0 / beta)).expect("model evaluates at z0");
    (u, vec![class])
}
