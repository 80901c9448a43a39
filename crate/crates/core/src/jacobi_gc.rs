//! Geronimo-Case recursion: the Jost function u and the generating function B.
//!
//! C_n = (z² - b_n z) C_{n-1} + G_{n-1},
//! G_n = G_{n-1} + ((1 - a_n²) z² - b_n z) C_{n-1},   C_0 = G_0 = 1,
//! and u = (Π a_j)^{-1} lim G_n on |z| < R, R the decay radius of the
//! parameters.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{JostError, Result};
use crate::model::{JacobiParameters, PowerSeriesModel, Tail};
use crate::poly::{self, Poly};
use crate::scalar::{cabs, capprox, cre, Scalar};

/// Default cap on recursion steps.
pub const MAX_STEPS: usize = 200_000;

#[derive(Clone, Debug, PartialEq)]
pub struct GcState<T> {
    pub n: usize,
    pub c: Poly<T>,
    pub g: Poly<T>,
    /// Π_{j≤n} a_j.
    pub prod_a: T,
}

/// States 0..=N of the recursion as exact polynomials.
pub fn gc_iterate<T: Scalar>(params: &JacobiParameters<T>, n_max: usize) -> Result<Vec<GcState<T>>> {
    let one = Complex::<T>::one();
    let mut states = vec![GcState { n: 0, c: vec![one], g: vec![one], prod_a: T::one() }];
    for n in 1..=n_max {
        let prev = &states[n - 1];
        let b = cre(params.b(n));
        let x2 = cre(-params.a2m1(n));
        let shift: Poly<T> = vec![Complex::zero(), -b, one];
        let pert: Poly<T> = vec![Complex::zero(), -b, x2];
        let c = poly::add(&poly::mul(&shift, &prev.c), &prev.g);
        let g = poly::add(&prev.g, &poly::mul(&pert, &prev.c));
        if c.iter().chain(&g).any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(JostError::Overflow { op: "gc_iterate", index: n });
        }
        let prod_a = prev.prod_a * params.a(n);
        states.push(GcState { n, c, g, prod_a });
    }
    Ok(states)
}

/// u(z) with u'(z) and bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JostValue<T> {
    pub value: Complex<T>,
    pub derivative: Complex<T>,
    pub steps: usize,
    /// Estimated size of the neglected tail of the G-series.
    pub tail_estimate: T,
}

/// Stopping rule shared by pointwise and coefficientwise iteration.
///
/// Increments decay like q^n with q = R^{-2} (|z| ≤ 1) or (|z|/R)² (|z| > 1).
/// The prefactor is estimated from the last three increments.
struct TailRule {
    log_q: f64,
    hist: [f64; 3],
    filled: usize,
}

impl TailRule {
    fn new(q: f64) -> Self {
        TailRule { log_q: q.ln(), hist: [f64::NEG_INFINITY; 3], filled: 0 }
    }

    /// Record |d_n| and return the estimated tail Σ_{m>n} |d_m|.
    fn push(&mut self, n: usize, d: f64) -> f64 {
        self.hist = [self.hist[1], self.hist[2], d.ln() - n as f64 * self.log_q];
        self.filled += 1;
        if self.filled < 3 {
            return f64::INFINITY;
        }
        let log_p = self.hist.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if log_p == f64::NEG_INFINITY {
            return 0.0;
        }
        let q = self.log_q.exp();
        (log_p + (n + 1) as f64 * self.log_q).exp() / (1.0 - q)
    }
}

fn growth<T: Scalar>(params: &JacobiParameters<T>, zabs: f64) -> f64 {
    let r = params.decay_radius().approx();
    if zabs <= 1.0 {
        r.powi(-2)
    } else {
        (zabs / r).powi(2)
    }
}

pub fn jost_u<T: Scalar>(params: &JacobiParameters<T>, z: Complex<T>, tol: T) -> Result<Complex<T>> {
    Ok(jost_u_d(params, z, tol)?.value)
}

/// u(z) and u'(z) by the recursion (the G-limit on |z| < 1, the series
/// continuation on 1 ≤ |z| < R).
pub fn jost_u_d<T: Scalar>(params: &JacobiParameters<T>, z: Complex<T>, tol: T) -> Result<JostValue<T>> {
    jost_u_d_capped(params, z, tol, MAX_STEPS)
}

pub fn jost_u_d_capped<T: Scalar>(
    params: &JacobiParameters<T>,
    z: Complex<T>,
    tol: T,
    max_steps: usize,
) -> Result<JostValue<T>> {
    let r = params.decay_radius();
    let zabs = cabs(z);
    if !(zabs < r) {
        return Err(JostError::OutsideRegion { op: "jost_u", z: format!("{}", capprox(z)), radius: r.approx() });
    }
    let support = params.support();
    let head = params.head().len();
    let mut rule = TailRule::new(growth(params, zabs.approx()));
    let one = Complex::<T>::one();
    let two = T::of(2.0);
    let (mut c, mut g) = (one, one);
    let (mut dc, mut dg) = (Complex::<T>::zero(), Complex::<T>::zero());
    let mut prod = T::one();
    let z2 = z * z;
    let mut tail = T::zero();
    let mut n = 0;
    loop {
        if let Some(m) = support {
            if n >= m {
                break;
            }
        }
        if n >= max_steps {
            return Err(JostError::NoConvergence {
                op: "jost_u",
                iterations: n,
                detail: format!("tail estimate {:e} above tolerance {:e}", tail.approx(), tol.approx()),
            });
        }
        n += 1;
        let b = params.b(n);
        let a2m1 = params.a2m1(n);
        let pert = z2 * (-a2m1) - z * b;
        let dpert = z * (-two * a2m1) - cre(b);
        let shift = z2 - z * b;
        let dshift = z * two - cre(b);
        let inc = pert * c;
        let dinc = dpert * c + pert * dc;
        let c_new = shift * c + g;
        let dc_new = dshift * c + shift * dc + dg;
        g = g + inc;
        dg = dg + dinc;
        c = c_new;
        dc = dc_new;
        prod = prod * params.a(n);
        if !c.re.is_finite() || !c.im.is_finite() || !dc.re.is_finite() {
            return Err(JostError::Overflow { op: "jost_u", index: n });
        }
        if support.is_none() && n > head {
            // the coefficients themselves bound the error of Π a_n (all increments vanish at z = 0)
            let d = cabs(inc).approx().max(a2m1.abs().approx() + b.abs().approx());
            let est = rule.push(n, d);
            let scale = cabs(g).approx().max(1.0);
            tail = T::of(est);
            if est < tol.approx() / 10.0 * scale && d < tol.approx() / 10.0 * scale {
                break;
            }
        }
    }
    Ok(JostValue { value: g / prod, derivative: dg / prod, steps: n, tail_estimate: tail })
}

/// Successive |G_{n} - G_{n-1}| at z for n = 1..=N (convergence diagnostics).
pub fn gc_increments<T: Scalar>(params: &JacobiParameters<T>, z: Complex<T>, n_max: usize) -> Vec<T> {
    let one = Complex::<T>::one();
    let (mut c, mut g) = (one, one);
    let z2 = z * z;
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let b = params.b(n);
        let inc = (z2 * (-params.a2m1(n)) - z * b) * c;
        let c_new = (z2 - z * b) * c + g;
        g = g + inc;
        c = c_new;
        out.push(cabs(inc));
    }
    out
}

/// Taylor coefficients u_0..u_K of the Jost function.
///
/// The recursion is run on polynomials truncated at degree K, which is exact
/// for those coefficients; it stops once the neglected increments fall below
/// `tol` in sup norm. Each coefficient is then good to about `tol` in absolute
/// terms, so the sum is accurate on |z| ≤ 1; beyond the disk use
/// [`crate::asymptotics::jost_model`].
pub fn jost_taylor<T: Scalar>(params: &JacobiParameters<T>, degree: usize, tol: T) -> Result<PowerSeriesModel<T>> {
    let one = Complex::<T>::one();
    let mut c: Poly<T> = vec![one];
    let mut g: Poly<T> = vec![one];
    let mut prod = T::one();
    let support = params.support();
    let head = params.head().len();
    let mut rule = TailRule::new(growth(params, 0.0));
    let mut n = 0;
    loop {
        if let Some(m) = support {
            if n >= m {
                break;
            }
        }
        if n >= MAX_STEPS {
            return Err(JostError::NoConvergence {
                op: "jost_taylor",
                iterations: n,
                detail: "coefficients did not settle".into(),
            });
        }
        n += 1;
        let b = cre(params.b(n));
        let x2 = cre(-params.a2m1(n));
        let pert: Poly<T> = vec![Complex::zero(), -b, x2];
        let shift: Poly<T> = vec![Complex::zero(), -b, one];
        let inc = poly::mul_trunc(&pert, &c, degree);
        let c_new = poly::add(&poly::mul_trunc(&shift, &c, degree), &g);
        g = poly::add(&g, &inc);
        c = c_new;
        prod = prod * params.a(n);
        let size = poly::max_abs(&inc).approx();
        if !size.is_finite() {
            return Err(JostError::Overflow { op: "jost_taylor", index: n });
        }
        if support.is_none() && n > head {
            let est = rule.push(n, size);
            let scale = poly::max_abs(&g).approx().max(1.0);
            if est < tol.approx() / 10.0 * scale && size < tol.approx() / 10.0 * scale {
                break;
            }
        }
    }
    let mut coeffs: Poly<T> = g.into_iter().map(|v| v / prod).collect();
    coeffs.resize(degree + 1, Complex::zero());
    PowerSeriesModel::new(coeffs, params.decay_radius())
}

/// First N+1 Taylor coefficients of B(z) = 1 - Σ[b_{n+1} z^{2n+1} + (a_{n+1}²-1) z^{2n+2}].
pub fn b_series<T: Scalar>(params: &JacobiParameters<T>, n: usize) -> Result<PowerSeriesModel<T>> {
    let len = n.max(1) + 1;
    PowerSeriesModel::from_real(&params.interleaved(len), params.decay_radius())
}

/// B(z) in closed form: exact polynomial for finite support, head polynomial
/// plus the summed series tail otherwise.
pub fn b_eval<T: Scalar>(params: &JacobiParameters<T>, z: Complex<T>) -> Complex<T> {
    let h = params.head().len();
    let mut head_poly: Poly<T> = params.interleaved(2 * h + 1).into_iter().map(cre).collect();
    match params.tail() {
        Tail::Free => poly::eval(&head_poly, z),
        Tail::Series(s) => {
            let series_head: Poly<T> = s.realize(0, 2 * h + 1);
            head_poly = poly::sub(&head_poly, &series_head);
            poly::eval(&head_poly, z) + s.generating_function(z)
        }
    }
}

/// Born residual max_z |-(z^{-1}-z)(Π a_j) u(z) - c - zB(z) + z^{-1} - 2Σ(a_n-1) z|
/// for the ε-scaled parameters, c fitted as the grid mean.
///
/// The two extra terms are first order in the perturbation and are part of
/// the trace expansion; without them the residual would not be O(ε²).
pub fn born_residual<T: Scalar>(params: &JacobiParameters<T>, grid: &[Complex<T>], eps: T) -> Result<T> {
    if grid.is_empty() {
        return Err(JostError::Invalid("born_residual: empty grid".into()));
    }
    if !(eps > T::zero() && eps <= T::one()) {
        return Err(JostError::Invalid("born_residual: ε must lie in (0, 1]".into()));
    }
    let one = Complex::<T>::one();
    for (i, &z) in grid.iter().enumerate() {
        let near = cabs(z - one).min(cabs(z + one));
        if near < T::of(1e-12) || cabs(z) < T::of(1e-12) {
            return Err(JostError::entry("grid", i, "grid point at z = ±1 or 0"));
        }
    }
    let n = params.negligible_from(T::unit_roundoff());
    let scaled = params.scaled(eps, n)?;
    let prod = (1..=n).fold(T::one(), |p, j| p * scaled.a(j));
    let trace_a = (1..=n).fold(T::zero(), |s, j| s + (scaled.a(j) - T::one()));
    let tol = T::unit_roundoff() * T::of(16.0);
    let raw: Vec<Complex<T>> = grid
        .iter()
        .map(|&z| {
            let u = jost_u(&scaled, z, tol)?;
            let zi = one / z;
            Ok(-(zi - z) * prod * u - z * b_eval(&scaled, z) + zi - z * (T::of(2.0) * trace_a))
        })
        .collect::<Result<_>>()?;
    let mean = raw.iter().fold(Complex::zero(), |s, &v| s + v) / T::of_usize(raw.len());
    Ok(raw.iter().fold(T::zero(), |m, &v| m.max(cabs(v - mean))))
}

/// Equispaced points on the circle |z| = r.
pub fn circle<T: Scalar>(r: f64, n: usize, phase: f64) -> Vec<Complex<T>> {
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + phase) / n as f64;
            Complex::new(T::of(r * t.cos()), T::of(r * t.sin()))
        })
        .collect()
}
