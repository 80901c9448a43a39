//! Dense polynomials with complex coefficients, lowest degree first.
//!
//! Used both for amplitude polynomials p(n) of asymptotic series and for
//! polynomials in z (GC and Szegő recursions, truncated power series).

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::{cabs, Scalar};

pub type Poly<T> = Vec<Complex<T>>;

pub fn eval<T: Scalar>(p: &[Complex<T>], x: Complex<T>) -> Complex<T> {
    p.iter().rev().fold(Complex::zero(), |acc, &c| acc * x + c)
}

pub fn eval_real<T: Scalar>(p: &[Complex<T>], x: T) -> Complex<T> {
    p.iter().rev().fold(Complex::zero(), |acc, &c| acc * x + c)
}

/// Value and first derivative by Horner.
pub fn eval_d<T: Scalar>(p: &[Complex<T>], x: Complex<T>) -> (Complex<T>, Complex<T>) {
    let mut v = Complex::zero();
    let mut d = Complex::zero();
    for &c in p.iter().rev() {
        d = d * x + v;
        v = v * x + c;
    }
    (v, d)
}

pub fn add<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Poly<T> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or_else(Complex::zero) + b.get(i).copied().unwrap_or_else(Complex::zero))
        .collect()
}

pub fn sub<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Poly<T> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or_else(Complex::zero) - b.get(i).copied().unwrap_or_else(Complex::zero))
        .collect()
}

pub fn scale<T: Scalar>(a: &[Complex<T>], s: Complex<T>) -> Poly<T> {
    a.iter().map(|&c| c * s).collect()
}

pub fn mul<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Poly<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex::zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = out[i + j] + x * y;
        }
    }
    out
}

/// Product truncated to degree `deg`.
pub fn mul_trunc<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>], deg: usize) -> Poly<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let len = (a.len() + b.len() - 1).min(deg + 1);
    let mut out = vec![Complex::zero(); len];
    for (i, &x) in a.iter().enumerate().take(len) {
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j] + x * y;
        }
    }
    out
}

/// Drop trailing coefficients with modulus ≤ `tol`.
pub fn trim<T: Scalar>(mut p: Poly<T>, tol: T) -> Poly<T> {
    while let Some(&c) = p.last() {
        if cabs(c) <= tol {
            p.pop();
        } else {
            break;
        }
    }
    p
}

pub fn degree<T: Scalar>(p: &[Complex<T>]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn max_abs<T: Scalar>(p: &[Complex<T>]) -> T {
    p.iter().fold(T::zero(), |m, &c| m.max(cabs(c)))
}

/// q(x) = p(a x + b).
pub fn affine<T: Scalar>(p: &[Complex<T>], a: Complex<T>, b: Complex<T>) -> Poly<T> {
    let lin = vec![b, a];
    let mut out: Poly<T> = Vec::new();
    for &c in p.iter().rev() {
        out = add(&mul(&out, &lin), &[c]);
    }
    out
}

/// Coefficients of C(n + k, k) as a polynomial in n.
pub fn binom_poly<T: Scalar>(k: usize) -> Poly<T> {
    let mut p: Poly<T> = vec![Complex::one()];
    for t in 1..=k {
        let tt = T::of_usize(t);
        p = mul(&p, &[Complex::new(tt, T::zero()), Complex::one()]);
        p = scale(&p, Complex::new(T::one() / tt, T::zero()));
    }
    p
}

/// Express p(n) = Σ_{i=1}^{m} β_i C(n+i-1, i-1), returning β_1..β_m.
///
/// This is the basis in which Σ_n p(n) w^n = Σ_i β_i (1-w)^{-i}.
pub fn to_binomial_basis<T: Scalar>(p: &[Complex<T>]) -> Poly<T> {
    let m = p.len();
    let mut rest: Poly<T> = p.to_vec();
    let mut beta = vec![Complex::zero(); m];
    for i in (1..=m).rev() {
        let basis = binom_poly::<T>(i - 1);
        let lead = basis[i - 1];
        let b = rest.get(i - 1).copied().unwrap_or_else(Complex::zero) / lead;
        beta[i - 1] = b;
        rest = sub(&rest, &scale(&basis, b));
    }
    beta
}

pub fn from_binomial_basis<T: Scalar>(beta: &[Complex<T>]) -> Poly<T> {
    let mut p: Poly<T> = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        p = add(&p, &scale(&binom_poly::<T>(i), b));
    }
    p
}

/// Reverse the first `n+1` coefficients (z^n p(1/z)).
pub fn reversed<T: Scalar>(p: &[Complex<T>], n: usize) -> Poly<T> {
    (0..=n).map(|i| p.get(n - i).copied().unwrap_or_else(Complex::zero)).collect()
}
