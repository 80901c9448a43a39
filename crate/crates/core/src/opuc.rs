//! Szegő recursion, S, D^{-1}, r and the second Szegő map.
//!
//! Φ_{n+1} = zΦ_n - α_n Φ*_n, Φ*_{n+1} = Φ*_n - α_n z Φ_n (real α), and
//! D^{-1} = lim Φ*_n Π_{j<n} (1-α_j²)^{-1/2} on the disk.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{JostError, Result};
use crate::model::{
    AsymptoticSeries, JacobiParameters, Parity, PowerSeriesModel, SeriesTerm, Tail, VerblunskyCoefficients,
};
use crate::poly::{self, Poly};
use crate::scalar::{cabs, capprox, cre, Scalar};

const MAX_STEPS: usize = 200_000;

#[derive(Clone, Debug, PartialEq)]
pub struct SzegoState<T> {
    pub n: usize,
    pub phi: Poly<T>,
    pub phi_star: Poly<T>,
    /// Π_{j<n} (1-α_j²)^{-1/2}.
    pub kappa: T,
}

pub fn szego_iterate<T: Scalar>(alphas: &VerblunskyCoefficients<T>, n_max: usize) -> Result<Vec<SzegoState<T>>> {
    let one = Complex::<T>::one();
    let mut out = vec![SzegoState { n: 0, phi: vec![one], phi_star: vec![one], kappa: T::one() }];
    for n in 0..n_max {
        let a = alphas.alpha(n);
        let prev = &out[n];
        let zphi: Poly<T> = std::iter::once(Complex::zero()).chain(prev.phi.iter().copied()).collect();
        let phi = poly::sub(&zphi, &poly::scale(&prev.phi_star, cre(a)));
        let phi_star = poly::sub(&prev.phi_star, &poly::scale(&zphi, cre(a)));
        if phi.iter().chain(&phi_star).any(|v| !v.re.is_finite()) {
            return Err(JostError::Overflow { op: "szego_iterate", index: n + 1 });
        }
        let kappa = prev.kappa / (T::one() - a * a).sqrt();
        out.push(SzegoState { n: n + 1, phi, phi_star, kappa });
    }
    Ok(out)
}

/// Coefficients 1, -α_0, -α_1, ... of S(z) = 1 - Σ α_{j-1} z^j.
pub fn s_series<T: Scalar>(alphas: &VerblunskyCoefficients<T>, n: usize) -> Result<PowerSeriesModel<T>> {
    let mut c = vec![T::one()];
    c.extend((0..n.max(1)).map(|j| -alphas.alpha(j)));
    PowerSeriesModel::from_real(&c, alphas.decay_radius())
}

/// Σ_{j≥0} α_j z^j in closed form (head polynomial plus summed series).
fn alpha_gf<T: Scalar>(alphas: &VerblunskyCoefficients<T>, z: Complex<T>) -> Complex<T> {
    let h = alphas.head().len();
    let head: Poly<T> = (0..h).map(|j| cre(alphas.alpha(j))).collect();
    match alphas.tail() {
        Tail::Free => poly::eval(&head, z),
        Tail::Series(s) => {
            let corr = poly::sub(&head, &s.realize(0, h));
            poly::eval(&corr, z) + s.generating_function(z)
        }
    }
}

/// S(z) in closed form.
pub fn s_eval<T: Scalar>(alphas: &VerblunskyCoefficients<T>, z: Complex<T>) -> Complex<T> {
    Complex::<T>::one() - z * alpha_gf(alphas, z)
}

fn outside(op: &'static str, z: Complex<impl Scalar>, r: f64) -> JostError {
    JostError::OutsideRegion { op, z: format!("{}", capprox(z)), radius: r }
}

/// D^{-1}(z) by the limit of Φ*_n κ_n.
///
/// Pointwise use is for |z| < 1; for finitely supported α the limit is
/// reached at a finite step and the polynomial is valid everywhere.
pub fn d_inverse<T: Scalar>(alphas: &VerblunskyCoefficients<T>, z: Complex<T>, tol: T) -> Result<Complex<T>> {
    let support = alphas.support();
    if support.is_none() && !(cabs(z) < T::one()) {
        return Err(outside("d_inverse", z, 1.0));
    }
    let q = (T::one() / alphas.decay_radius()).approx();
    let (mut phi, mut star) = (Complex::<T>::one(), Complex::<T>::one());
    let mut kappa = T::one();
    let mut hist = [f64::NEG_INFINITY; 3];
    let mut n = 0;
    loop {
        if let Some(m) = support {
            if n >= m {
                break;
            }
        }
        if n >= MAX_STEPS {
            return Err(JostError::NoConvergence {
                op: "d_inverse",
                iterations: n,
                detail: "tail above tolerance".into(),
            });
        }
        let a = alphas.alpha(n);
        let inc = z * phi * (-a);
        let new_phi = z * phi - star * a;
        star = star + inc;
        phi = new_phi;
        kappa = kappa / (T::one() - a * a).sqrt();
        n += 1;
        if support.is_none() && n > alphas.head().len() {
            let d = cabs(inc).approx().max((a * a).approx());
            hist = [hist[1], hist[2], d.ln() - n as f64 * q.ln()];
            if n > alphas.head().len() + 3 {
                let lp = hist.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let est = (lp + (n + 1) as f64 * q.ln()).exp() / (1.0 - q);
                let scale = cabs(star).approx().max(1.0);
                if est < tol.approx() / 10.0 * scale && d < tol.approx() / 10.0 * scale {
                    break;
                }
            }
        }
    }
    Ok(star * kappa)
}

/// Taylor coefficients of D^{-1} up to `degree`.
pub fn d_inverse_taylor<T: Scalar>(
    alphas: &VerblunskyCoefficients<T>,
    degree: usize,
    tol: T,
) -> Result<PowerSeriesModel<T>> {
    let support = alphas.support();
    let one = Complex::<T>::one();
    let (mut phi, mut star): (Poly<T>, Poly<T>) = (vec![one], vec![one]);
    let mut kappa = T::one();
    let q = (T::one() / alphas.decay_radius()).approx();
    let mut quiet = 0;
    let mut n = 0;
    loop {
        if let Some(m) = support {
            if n >= m {
                break;
            }
        }
        if n >= MAX_STEPS {
            return Err(JostError::NoConvergence {
                op: "d_inverse_taylor",
                iterations: n,
                detail: "coefficients did not settle".into(),
            });
        }
        let a = alphas.alpha(n);
        let mut zphi: Poly<T> = std::iter::once(Complex::zero()).chain(phi.iter().copied()).collect();
        zphi.truncate(degree + 1);
        let inc = poly::scale(&zphi, cre(-a));
        let new_phi = poly::sub(&zphi, &poly::scale(&star, cre(a)));
        star = poly::add(&star, &inc);
        phi = new_phi;
        kappa = kappa / (T::one() - a * a).sqrt();
        n += 1;
        if support.is_none() && n > alphas.head().len() {
            let size = poly::max_abs(&inc).approx() * poly::max_abs(&phi).approx().max(1.0);
            let est = a.abs().approx() * q / (1.0 - q) * poly::max_abs(&phi).approx().max(1.0);
            if size.max(est) < tol.approx() / 10.0 {
                quiet += 1;
                if quiet >= 3 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
    }
    let mut coeffs: Poly<T> = star.into_iter().map(|c| c * kappa).collect();
    coeffs.resize(degree + 1, Complex::zero());
    PowerSeriesModel::new(coeffs, alphas.decay_radius())
}

/// r(z) = D^{-1}(z) / D^{-1}(1/z) from a supplied evaluator of D^{-1}.
pub fn r_eval_with<T: Scalar>(dinv: impl Fn(Complex<T>) -> Result<Complex<T>>, z: Complex<T>) -> Result<Complex<T>> {
    let den = dinv(Complex::<T>::one() / z)?;
    if cabs(den) <= T::unit_roundoff() {
        return Err(JostError::ZeroDenominator { op: "r_eval", z: format!("{}", capprox(z)) });
    }
    Ok(dinv(z)? / den)
}

/// r(z) for finitely supported α, where D^{-1} is a polynomial.
pub fn r_eval<T: Scalar>(alphas: &VerblunskyCoefficients<T>, z: Complex<T>, tol: T) -> Result<Complex<T>> {
    if alphas.support().is_none() && !(cabs(z) == T::one()) {
        return Err(JostError::Invalid(
            "r_eval needs a continuation of D^{-1} off the disk for infinite α; use r_eval_with".into(),
        ));
    }
    r_eval_with(|w| d_inverse(alphas, w, tol), z)
}

/// (b_{n+1}, a_{n+1}² - 1) from α_{2n}, …, α_{2n+3}.
fn sz2_pair<T: Scalar>(a: [T; 4]) -> (T, T) {
    let one = T::one();
    let b = a[0] - a[2] - a[1] * (a[0] + a[2]);
    let a2m1 = a[1] - a[3] - a[2] * a[2] * (one - a[3]) * (one + a[1]) - a[3] * a[1];
    (b, a2m1)
}

fn constant<T: Scalar>(c: T) -> AsymptoticSeries<T> {
    AsymptoticSeries::exact(vec![SeriesTerm::new(Complex::one(), vec![cre(c)])])
}

/// Jacobi parameters of Sz₂(μ).
///
/// Series tails are mapped exactly through the series algebra, so the image
/// of an asymptotic series is again one (rates in the products of ±√ rates).
pub fn sz2_forward<T: Scalar>(alphas: &VerblunskyCoefficients<T>) -> Result<JacobiParameters<T>> {
    let h = alphas.head().len();
    let n_head = match alphas.tail() {
        Tail::Free => alphas.support().unwrap_or(h).div_ceil(2) + 1,
        Tail::Series(_) => h.div_ceil(2),
    };
    let mut head = Vec::with_capacity(n_head);
    for n in 0..n_head {
        let w = [alphas.alpha(2 * n), alphas.alpha(2 * n + 1), alphas.alpha(2 * n + 2), alphas.alpha(2 * n + 3)];
        let (b, a2m1) = sz2_pair(w);
        let a2 = T::one() + a2m1;
        if !(a2 > T::zero()) {
            return Err(JostError::entry("a", n + 1, "Sz₂ image has a² ≤ 0"));
        }
        head.push((a2.sqrt(), b));
    }
    let tail = match alphas.tail() {
        Tail::Free => Tail::Free,
        Tail::Series(s) => {
            let s = AsymptoticSeries { parity: None, ..s.clone() };
            let e0 = s.subsample(0);
            let e1 = s.subsample(1);
            let s2 = s.shift(2);
            let e2 = s2.subsample(0);
            let e3 = s2.subsample(1);
            let one = constant(T::one());
            let b = e0.sub(&e2).sub(&e1.mul(&e0.add(&e2)));
            let a2m1 = e1.sub(&e3).sub(&e2.mul(&e2).mul(&one.sub(&e3)).mul(&one.add(&e1))).sub(&e3.mul(&e1));
            let x = b.scale(cre(-T::one())).spread(1).add(&a2m1.scale(cre(-T::one())).spread(2));
            Tail::Series(x.with_remainder(s.remainder_radius).with_parity(Some(Parity::Interleaved)))
        }
    };
    JacobiParameters::new(head, tail)
}

/// Inverse of Sz₂ by the telescoped fixed point
/// α_{2n} = Σ_{k≥n} [b_{k+1} + α_{2k+1}(α_{2k}+α_{2k+2})],
/// α_{2n+1} = Σ_{k≥n} [(a_{k+1}²-1) + α_{2k+2}²(1-α_{2k+3})(1+α_{2k+1}) + α_{2k+3}α_{2k+1}].
pub fn sz2_inverse<T: Scalar>(params: &JacobiParameters<T>, tol: T) -> Result<VerblunskyCoefficients<T>> {
    let nj = match params.support() {
        Some(m) => m + 1,
        None => params.negligible_from(tol * T::of(1e-3)) + 2,
    };
    let len = 2 * nj + 4;
    let b: Vec<T> = (1..=nj).map(|n| params.b(n)).collect();
    let c: Vec<T> = (1..=nj).map(|n| params.a2m1(n)).collect();
    let mut al = vec![T::zero(); len];
    let get = |v: &[T], i: usize| v.get(i).copied().unwrap_or_else(T::zero);
    let one = T::one();
    for it in 0..200 {
        let mut next = vec![T::zero(); len];
        let (mut se, mut so) = (T::zero(), T::zero());
        for k in (0..nj).rev() {
            let a0 = get(&al, 2 * k);
            let a1 = get(&al, 2 * k + 1);
            let a2 = get(&al, 2 * k + 2);
            let a3 = get(&al, 2 * k + 3);
            se = se + b[k] + a1 * (a0 + a2);
            so = so + c[k] + a2 * a2 * (one - a3) * (one + a1) + a3 * a1;
            next[2 * k] = se;
            next[2 * k + 1] = so;
        }
        let diff = next.iter().zip(&al).fold(T::zero(), |m, (x, y)| m.max((*x - *y).abs()));
        if let Some(i) = next.iter().position(|x| !(x.abs() < one)) {
            return Err(JostError::entry(
                "alpha",
                i,
                "Sz₂ inverse produced |alpha| ≥ 1 (parameters outside the range of Sz₂?)",
            ));
        }
        al = next;
        if diff < tol / T::of(10.0) {
            while al.last().is_some_and(|x| x.is_zero()) {
                al.pop();
            }
            return VerblunskyCoefficients::from_head(al);
        }
        if !diff.is_finite() {
            return Err(JostError::NoConvergence {
                op: "sz2_inverse",
                iterations: it + 1,
                detail: "iteration diverged".into(),
            });
        }
    }
    Err(JostError::NoConvergence {
        op: "sz2_inverse",
        iterations: 200,
        detail: "fixed point did not settle (bound states present?)".into(),
    })
}

/// u(z) of Sz₂(μ) as [(1-α_0²)(1-α_1)]^{1/2} D^{-1}(z).
pub fn jost_from_d<T: Scalar>(alphas: &VerblunskyCoefficients<T>, z: Complex<T>, tol: T) -> Result<Complex<T>> {
    Ok(d_inverse(alphas, z, tol)? * bridge_constant(alphas))
}

pub fn bridge_constant<T: Scalar>(alphas: &VerblunskyCoefficients<T>) -> T {
    let (a0, a1) = (alphas.alpha(0), alphas.alpha(1));
    ((T::one() - a0 * a0) * (T::one() - a1)).sqrt()
}

/// Taylor coefficients of Q (the quadratic remainder in the B/S decomposition):
/// q_{2n+1} = α_{2n+1}(α_{2n}+α_{2n+2}),
/// q_{2n+2} = α_{2n+2}²(1-α_{2n+3})(1+α_{2n+1}) + α_{2n+3}α_{2n+1}.
pub fn q_series<T: Scalar>(alphas: &VerblunskyCoefficients<T>, n: usize) -> Result<PowerSeriesModel<T>> {
    let one = T::one();
    let a = |k: usize| alphas.alpha(k);
    let mut c = vec![T::zero(); n.max(2) + 1];
    for (k, ck) in c.iter_mut().enumerate().skip(1) {
        let m = (k - 1) / 2;
        *ck = if k % 2 == 1 {
            a(2 * m + 1) * (a(2 * m) + a(2 * m + 2))
        } else {
            a(2 * m + 2) * a(2 * m + 2) * (one - a(2 * m + 3)) * (one + a(2 * m + 1)) + a(2 * m + 3) * a(2 * m + 1)
        };
    }
    let r = alphas.decay_radius();
    PowerSeriesModel::from_real(&c, r * r)
}

/// Taylor coefficients of 1 - α_0 z^{-1} - α_1 + (S-1)(1-z^{-2}) + Q, plus the
/// largest negative-power coefficient (which must vanish).
pub fn b_from_decomposition<T: Scalar>(alphas: &VerblunskyCoefficients<T>, n: usize) -> Result<(Vec<T>, T)> {
    let s = s_series(alphas, n + 2)?.coeffs;
    let q = q_series(alphas, n)?.coeffs;
    let sm1 = |k: i64| if k >= 1 { s[k as usize].re } else { T::zero() };
    let coef = |k: i64| -> T {
        let mut v = sm1(k) - sm1(k + 2);
        if k == 0 {
            v = v + T::one() - alphas.alpha(1);
        }
        if k == -1 {
            v = v - alphas.alpha(0);
        }
        if k >= 0 {
            v = v + q[k as usize].re;
        }
        v
    };
    let neg = coef(-1).abs().max(coef(-2).abs());
    Ok(((0..=n as i64).map(coef).collect(), neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi_gc::{b_series, jost_u};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn re(p: &Poly<f64>) -> Vec<f64> {
        poly::trim(p.clone(), 0.0).iter().map(|v| v.re).collect()
    }

    #[test]
    fn szego_by_hand() {
        let v = VerblunskyCoefficients::from_head(vec![0.0, 0.5]).unwrap();
        let s = szego_iterate(&v, 2).unwrap();
        assert_eq!(re(&s[2].phi), vec![-0.5, 0.0, 1.0]);
        assert_eq!(re(&s[2].phi_star), vec![1.0, 0.0, -0.5]);
        let v = VerblunskyCoefficients::from_head(vec![0.3]).unwrap();
        let s = szego_iterate(&v, 3).unwrap();
        assert_eq!(re(&s[1].phi), vec![-0.3, 1.0]);
        assert_eq!(re(&s[3].phi_star), vec![1.0, -0.3]);
    }

    #[test]
    fn rank_one_d_inverse_and_r() {
        let cc = 0.4;
        let v = VerblunskyCoefficients::from_head(vec![cc]).unwrap();
        let z = c(0.2, 0.5);
        let d = d_inverse(&v, z, 1e-15).unwrap();
        assert!((d - (c(1.0, 0.0) - z * cc) / (1.0 - cc * cc).sqrt()).norm() < 1e-15);
        let r = r_eval(&v, z, 1e-15).unwrap();
        assert!((r - (c(1.0, 0.0) - z * cc) / (c(1.0, 0.0) - z.inv() * cc)).norm() < 1e-14);
        let x = c(0.7, 0.0);
        let prod = r_eval(&v, x, 1e-15).unwrap() * r_eval(&v, x.inv(), 1e-15).unwrap();
        assert!((prod - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn forward_by_hand() {
        let v = VerblunskyCoefficients::from_head(vec![0.3f64]).unwrap();
        let j = sz2_forward(&v).unwrap();
        assert!((j.b(1) - 0.3).abs() < 1e-16 && j.b(2) == 0.0 && j.a2m1(1) == 0.0);
        let g = VerblunskyCoefficients::<f64>::odd_geometric(2.0).unwrap();
        let j = sz2_forward(&g).unwrap();
        assert!((j.a2m1(1) - 5.0 / 16.0).abs() < 1e-15);
        for n in 1..20 {
            assert!(j.b(n).abs() < 1e-15);
            let direct = sz2_pair([g.alpha(2 * n - 2), g.alpha(2 * n - 1), g.alpha(2 * n), g.alpha(2 * n + 1)]);
            assert!((j.a2m1(n) - direct.1).abs() < 1e-15 * (1.0 + direct.1.abs()));
        }
    }

    #[test]
    fn bridge_rank_one() {
        let v = VerblunskyCoefficients::from_head(vec![0.0f64, 0.5]).unwrap();
        let j = sz2_forward(&v).unwrap();
        assert!((j.a2m1(1) - 0.5).abs() < 1e-15);
        for z in [c(0.1, 0.2), c(-0.5, 0.3)] {
            let a = jost_from_d(&v, z, 1e-15).unwrap();
            let b = jost_u(&j, z, 1e-15).unwrap();
            assert!((a - b).norm() < 1e-14);
            assert!((a - (c(1.0, 0.0) - z * z * 0.5) / 1.5f64.sqrt()).norm() < 1e-14);
        }
    }

    #[test]
    fn inverse_recovers() {
        let v = VerblunskyCoefficients::from_head(vec![0.2f64, -0.1, 0.05, 0.3]).unwrap();
        let j = sz2_forward(&v).unwrap();
        let w = sz2_inverse(&j, 1e-13).unwrap();
        for n in 0..8 {
            assert!((v.alpha(n) - w.alpha(n)).abs() < 1e-12, "{n}");
        }
        assert_eq!(sz2_inverse(&JacobiParameters::<f64>::free(), 1e-12).unwrap().support(), Some(0));
    }

    #[test]
    fn decomposition_matches_b() {
        let v = VerblunskyCoefficients::from_head(vec![0.2f64, -0.1, 0.05, 0.3, -0.2]).unwrap();
        let j = sz2_forward(&v).unwrap();
        let b = b_series(&j, 14).unwrap();
        let (d, neg) = b_from_decomposition(&v, 14).unwrap();
        assert!(neg < 1e-16);
        for k in 0..=14 {
            assert!((b.coeffs[k].re - d[k]).abs() < 1e-15, "{k}");
        }
    }

    #[test]
    fn example_q_closed_form() {
        let v = VerblunskyCoefficients::<f64>::odd_geometric(2.0).unwrap();
        let q = q_series(&v, 12).unwrap();
        for k in 0..=12 {
            let expect = if k >= 2 && k % 2 == 0 { 16f64.powi(-(k as i32) / 2) } else { 0.0 };
            assert!((q.coeffs[k].re - expect).abs() < 1e-16);
        }
    }
}
