//! Asymptotic series x_n ≈ Σ_j p_j(n) μ_j^{-n} and their exact algebra.
//!
//! Sums, products, index shifts, even/odd subsampling and interleaving of
//! such sequences are again sequences of the same form, so tails can be
//! pushed through the recursion-coefficient maps without truncation.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{JostError, Result};
use crate::poly::{self, Poly};
use crate::scalar::{cabs, cconvert, convert, cre, Scalar};

/// One term p(n) μ^{-n}.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTerm<T> {
    pub mu: Complex<T>,
    /// Monomial coefficients of p(n), lowest degree first.
    pub poly: Poly<T>,
}

/// Which sequence the series describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// The interleaved Jacobi sequence (1, -b_1, 1-a_1², -b_2, ...).
    Interleaved,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticSeries<T> {
    pub terms: Vec<SeriesTerm<T>>,
    /// Remainder radius R; `None` means the series is exact (R = ∞).
    pub remainder_radius: Option<T>,
    pub parity: Option<Parity>,
}

impl<T: Scalar> SeriesTerm<T> {
    pub fn new(mu: Complex<T>, poly: Poly<T>) -> Self {
        SeriesTerm { mu, poly }
    }

    pub fn order(&self) -> usize {
        self.poly.len()
    }

    pub fn cast<S: Scalar>(&self) -> SeriesTerm<S> {
        SeriesTerm { mu: cconvert(self.mu), poly: self.poly.iter().map(|c| cconvert(*c)).collect() }
    }

    pub fn value(&self, n: usize) -> Complex<T> {
        let inv = Complex::<T>::one() / self.mu;
        poly::eval_real(&self.poly, T::of_usize(n)) * inv.powu(n as u32)
    }
}

fn same_rate<T: Scalar>(a: Complex<T>, b: Complex<T>) -> bool {
    cabs(a - b) <= T::of(64.0) * T::unit_roundoff() * cabs(a)
}

impl<T: Scalar> AsymptoticSeries<T> {
    pub fn exact(terms: Vec<SeriesTerm<T>>) -> Self {
        AsymptoticSeries { terms, remainder_radius: None, parity: None }
    }

    pub fn zero() -> Self {
        Self::exact(Vec::new())
    }

    pub fn cast<S: Scalar>(&self) -> AsymptoticSeries<S> {
        AsymptoticSeries {
            terms: self.terms.iter().map(|t| t.cast()).collect(),
            remainder_radius: self.remainder_radius.map(convert),
            parity: self.parity,
        }
    }

    pub fn with_parity(mut self, parity: Option<Parity>) -> Self {
        self.parity = parity;
        self
    }

    pub fn with_remainder(mut self, r: Option<T>) -> Self {
        self.remainder_radius = r;
        self
    }

    /// Check |μ| > 1, |μ| < R, distinct rates and conjugation closure.
    pub fn validate(&self, field: &str) -> Result<()> {
        let one = T::one();
        for (i, t) in self.terms.iter().enumerate() {
            let m = cabs(t.mu);
            if !(m > one) || !m.is_finite() {
                return Err(JostError::entry(field, i, format!("|mu| = {} must exceed 1", m.approx())));
            }
            if let Some(r) = self.remainder_radius {
                if !(m < r) {
                    return Err(JostError::entry(
                        field,
                        i,
                        format!("|mu| = {} must be below R = {}", m.approx(), r.approx()),
                    ));
                }
            }
            if t.poly.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(JostError::entry(field, i, "non-finite polynomial coefficient"));
            }
            for (j, u) in self.terms.iter().enumerate().skip(i + 1) {
                if same_rate(t.mu, u.mu) {
                    return Err(JostError::entry(field, j, "duplicate rate mu"));
                }
            }
        }
        if let Some(r) = self.remainder_radius {
            if !(r > one) {
                return Err(JostError::Invalid(format!("{field}: remainder radius must exceed 1")));
            }
        }
        let tol = T::of(1e3) * T::unit_roundoff();
        for (i, t) in self.terms.iter().enumerate() {
            let partner = self.terms.iter().find(|u| cabs(u.mu - t.mu.conj()) <= tol * cabs(t.mu));
            let ok = match partner {
                Some(u) => {
                    let scale = poly::max_abs(&t.poly).max(T::one());
                    t.poly.len() == u.poly.len()
                        && t.poly.iter().zip(&u.poly).all(|(a, b)| cabs(a.conj() - b) <= tol * scale)
                }
                None => false,
            };
            if !ok {
                return Err(JostError::entry(field, i, "terms are not closed under complex conjugation"));
            }
        }
        Ok(())
    }

    /// Smallest |μ|, or the remainder radius, or ∞ for an empty exact series.
    pub fn decay_radius(&self) -> T {
        let mut r = self.remainder_radius.unwrap_or_else(T::infinity);
        for t in &self.terms {
            if !t.poly.iter().all(|c| c.is_zero()) {
                r = r.min(cabs(t.mu));
            }
        }
        r
    }

    pub fn value(&self, n: usize) -> Complex<T> {
        self.terms.iter().fold(Complex::zero(), |acc, t| acc + t.value(n))
    }

    pub fn realize(&self, start: usize, len: usize) -> Vec<Complex<T>> {
        (start..start + len).map(|n| self.value(n)).collect()
    }

    /// Merge equal rates and drop vanishing terms.
    pub fn normalized(mut self) -> Self {
        let mut out: Vec<SeriesTerm<T>> = Vec::new();
        for t in self.terms.drain(..) {
            match out.iter_mut().find(|u| same_rate(u.mu, t.mu)) {
                Some(u) => u.poly = poly::add(&u.poly, &t.poly),
                None => out.push(t),
            }
        }
        let scale = out.iter().fold(T::zero(), |m, t| m.max(poly::max_abs(&t.poly)));
        let tol = T::of(16.0) * T::unit_roundoff() * scale;
        let terms = out
            .into_iter()
            .map(|t| SeriesTerm { mu: t.mu, poly: poly::trim(t.poly, tol) })
            .filter(|t| !t.poly.is_empty())
            .collect();
        AsymptoticSeries { terms, remainder_radius: self.remainder_radius, parity: self.parity }
    }

    fn combine_radius(a: Option<T>, b: Option<T>) -> Option<T> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (Some(x), None) | (None, Some(x)) => Some(x),
            (None, None) => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        AsymptoticSeries {
            terms,
            remainder_radius: Self::combine_radius(self.remainder_radius, other.remainder_radius),
            parity: None,
        }
        .normalized()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        AsymptoticSeries {
            terms: self.terms.iter().map(|t| SeriesTerm::new(t.mu, poly::scale(&t.poly, s))).collect(),
            remainder_radius: self.remainder_radius,
            parity: None,
        }
        .normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(cre(-T::one())))
    }

    /// Termwise product: rates multiply, amplitudes multiply.
    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                terms.push(SeriesTerm::new(a.mu * b.mu, poly::mul(&a.poly, &b.poly)));
            }
        }
        // a remainder R_a paired with the slowest rate of the other factor
        let r = |x: &Self, y: &Self| x.remainder_radius.map(|r| r * y.decay_radius().min(T::max_value()));
        let rr = Self::combine_radius(r(self, other), r(other, self));
        AsymptoticSeries { terms, remainder_radius: rr, parity: None }.normalized()
    }

    /// y_n = x_{n+k}.
    pub fn shift(&self, k: usize) -> Self {
        let kk = cre(T::of_usize(k));
        AsymptoticSeries {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let p = poly::affine(&t.poly, Complex::one(), kk);
                    let f = (Complex::<T>::one() / t.mu).powu(k as u32);
                    SeriesTerm::new(t.mu, poly::scale(&p, f))
                })
                .collect(),
            remainder_radius: self.remainder_radius,
            parity: None,
        }
        .normalized()
    }

    /// y_n = x_{2n+s}.
    pub fn subsample(&self, s: usize) -> Self {
        let two = cre(T::of(2.0));
        let ss = cre(T::of_usize(s));
        AsymptoticSeries {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let p = poly::affine(&t.poly, two, ss);
                    let f = (Complex::<T>::one() / t.mu).powu(s as u32);
                    SeriesTerm::new(t.mu * t.mu, poly::scale(&p, f))
                })
                .collect(),
            remainder_radius: self.remainder_radius.map(|r| r * r),
            parity: None,
        }
        .normalized()
    }

    /// The sequence x_k = y_{(k-s)/2} for k ≡ s (mod 2), k ≥ s, and 0 otherwise.
    ///
    /// Rates become ±√μ; the parity indicator (1 ± (-1)^k)/2 splits each term.
    pub fn spread(&self, s: usize) -> Self {
        let half = T::of(0.5);
        let mut terms = Vec::new();
        for t in &self.terms {
            let nu = t.mu.sqrt();
            let p = poly::affine(&t.poly, cre(half), cre(-half * T::of_usize(s)));
            let nus = nu.powu(s as u32);
            let sign = if s.is_multiple_of(2) { T::one() } else { -T::one() };
            terms.push(SeriesTerm::new(nu, poly::scale(&p, nus * half)));
            terms.push(SeriesTerm::new(-nu, poly::scale(&p, nus * half * sign)));
        }
        AsymptoticSeries { terms, remainder_radius: self.remainder_radius.map(|r| r.sqrt()), parity: None }.normalized()
    }

    /// Closed form of Σ_{n≥0} x_n z^n (valid inside the remainder radius).
    pub fn generating_function(&self, z: Complex<T>) -> Complex<T> {
        let mut s = Complex::zero();
        for t in &self.terms {
            let w = Complex::<T>::one() - z / t.mu;
            let beta = poly::to_binomial_basis(&t.poly);
            let winv = Complex::<T>::one() / w;
            let mut pw = winv;
            for b in beta {
                s = s + b * pw;
                pw = pw * winv;
            }
        }
        s
    }

    /// Principal part of the generating function at each rate, as
    /// coefficients of (z-μ)^{-1}, (z-μ)^{-2}, ...
    pub fn principal_parts(&self) -> Vec<(Complex<T>, Poly<T>)> {
        self.terms
            .iter()
            .map(|t| {
                let beta = poly::to_binomial_basis(&t.poly);
                let mut f = -t.mu;
                let pp = beta
                    .iter()
                    .map(|&b| {
                        let v = b * f;
                        f = f * -t.mu;
                        v
                    })
                    .collect();
                (t.mu, pp)
            })
            .collect()
    }
}
