use num_complex::Complex;

use super::jacobi::{Tail, MAX_REALIZE};
use super::series::{AsymptoticSeries, SeriesTerm};
use crate::error::{JostError, Result};
use crate::scalar::{convert, Scalar};

/// Real Verblunsky coefficients {α_n}_{n≥0} ⊂ (-1, 1).
#[derive(Clone, Debug, PartialEq)]
pub struct VerblunskyCoefficients<T> {
    head: Vec<T>,
    tail: Tail<T>,
}

impl<T: Scalar> VerblunskyCoefficients<T> {
    pub fn new(head: Vec<T>, tail: Tail<T>) -> Result<Self> {
        for (i, &a) in head.iter().enumerate() {
            if !(a.abs() < T::one()) {
                return Err(JostError::entry("alpha", i, format!("|alpha| = {} must be below 1", a.approx())));
            }
        }
        if let Tail::Series(s) = &tail {
            if s.parity.is_some() {
                return Err(JostError::Invalid("Verblunsky series tails carry no parity marker".into()));
            }
            s.validate("tail.terms")?;
        }
        let v = VerblunskyCoefficients { head, tail };
        let h = v.head.len();
        for n in h..h + 512 {
            if !(v.alpha(n).abs() < T::one()) {
                return Err(JostError::entry("alpha", n, "tail gives |alpha| ≥ 1"));
            }
        }
        Ok(v)
    }

    pub fn zero() -> Self {
        VerblunskyCoefficients { head: Vec::new(), tail: Tail::Free }
    }

    pub fn from_head(head: Vec<T>) -> Result<Self> {
        Self::new(head, Tail::Free)
    }

    /// α_{2n} = 0, α_{2n+1} = R^{-(2n+1)}.
    pub fn odd_geometric(r: T) -> Result<Self> {
        if !(r > T::one()) {
            return Err(JostError::Invalid("R must exceed 1".into()));
        }
        let half = T::of(0.5);
        let z = T::zero();
        let s = AsymptoticSeries::exact(vec![
            SeriesTerm::new(Complex::new(r, z), vec![Complex::new(half, z)]),
            SeriesTerm::new(Complex::new(-r, z), vec![Complex::new(-half, z)]),
        ]);
        Self::new(Vec::new(), Tail::Series(s))
    }

    pub fn cast<S: Scalar>(&self) -> VerblunskyCoefficients<S> {
        VerblunskyCoefficients { head: self.head.iter().map(|&a| convert(a)).collect(), tail: self.tail.cast() }
    }

    pub fn head(&self) -> &[T] {
        &self.head
    }

    pub fn tail(&self) -> &Tail<T> {
        &self.tail
    }

    pub fn alpha(&self, n: usize) -> T {
        if n < self.head.len() {
            return self.head[n];
        }
        match &self.tail {
            Tail::Free => T::zero(),
            Tail::Series(s) => s.value(n).re,
        }
    }

    pub fn support(&self) -> Option<usize> {
        match &self.tail {
            Tail::Free => {
                let mut m = self.head.len();
                while m > 0 && self.head[m - 1] == T::zero() {
                    m -= 1;
                }
                Some(m)
            }
            Tail::Series(s) if s.terms.is_empty() && s.remainder_radius.is_none() => Some(self.head.len()),
            _ => None,
        }
    }

    /// R with limsup |α_n|^{1/n} = R^{-1}.
    pub fn decay_radius(&self) -> T {
        if self.support().is_some() {
            return T::infinity();
        }
        self.tail.decay_radius()
    }

    pub fn realize(&self, n: usize) -> Result<Vec<T>> {
        if n > MAX_REALIZE {
            return Err(JostError::Invalid(format!("realize length {n} exceeds maximum {MAX_REALIZE}")));
        }
        Ok((0..n).map(|j| self.alpha(j)).collect())
    }

    /// Index beyond which |α_n| stays below `tol`.
    pub fn negligible_from(&self, tol: T) -> usize {
        if let Some(m) = self.support() {
            return m;
        }
        let q = T::one() / self.decay_radius();
        let mut run = 0;
        let mut n = self.head.len();
        while n < MAX_REALIZE / 4 {
            let v = self.alpha(n).abs();
            if v < tol {
                run += 1;
                if run >= 4 && v / (T::one() - q) < tol {
                    return n;
                }
            } else {
                run = 0;
            }
            n += 1;
        }
        n
    }
}
