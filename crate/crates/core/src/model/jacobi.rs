use super::series::{AsymptoticSeries, Parity};
use crate::error::{JostError, Result};
use crate::scalar::{convert, Scalar};

/// Upper bound on realized lengths, guarding against runaway allocation.
pub const MAX_REALIZE: usize = 10_000_000;

/// How a coefficient sequence continues beyond its explicit head.
#[derive(Clone, Debug, PartialEq)]
pub enum Tail<T> {
    /// a_n = 1, b_n = 0 (or α_n = 0) beyond the head.
    Free,
    Series(AsymptoticSeries<T>),
}

impl<T: Scalar> Tail<T> {
    pub fn cast<S: Scalar>(&self) -> Tail<S> {
        match self {
            Tail::Free => Tail::Free,
            Tail::Series(s) => Tail::Series(s.cast()),
        }
    }

    pub fn decay_radius(&self) -> T {
        match self {
            Tail::Free => T::infinity(),
            Tail::Series(s) => s.decay_radius(),
        }
    }
}

/// Jacobi parameters {a_n, b_n}_{n≥1}.
///
/// A series tail describes the interleaved sequence x_0 = 1,
/// x_{2n-1} = -b_n, x_{2n} = 1 - a_n² (so B(z) = Σ x_k z^k). Head entries
/// override the tail on overlapping indices.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiParameters<T> {
    head: Vec<(T, T)>,
    tail: Tail<T>,
}

impl<T: Scalar> JacobiParameters<T> {
    pub fn new(head: Vec<(T, T)>, tail: Tail<T>) -> Result<Self> {
        for (i, &(a, b)) in head.iter().enumerate() {
            if !(a > T::zero()) || !a.is_finite() {
                return Err(JostError::entry("a", i + 1, format!("a must be positive, got {}", a.approx())));
            }
            if !b.is_finite() {
                return Err(JostError::entry("b", i + 1, "b must be finite"));
            }
        }
        if let Tail::Series(s) = &tail {
            if s.parity != Some(Parity::Interleaved) {
                return Err(JostError::Invalid(
                    "a Jacobi series tail must describe the interleaved sequence (parity \"interleaved\")".into(),
                ));
            }
            s.validate("tail.terms")?;
        }
        let p = JacobiParameters { head, tail };
        // the series is checked well past the head; beyond that it decays
        let h = p.head.len();
        for n in h + 1..=h + 256 {
            let a2 = T::one() - p.x(2 * n);
            if !(a2 > T::zero()) {
                return Err(JostError::entry("a", n, format!("tail gives a² = {} ≤ 0", a2.approx())));
            }
        }
        Ok(p)
    }

    pub fn free() -> Self {
        JacobiParameters { head: Vec::new(), tail: Tail::Free }
    }

    /// Finitely supported perturbation of the free matrix.
    pub fn from_head(head: Vec<(T, T)>) -> Result<Self> {
        Self::new(head, Tail::Free)
    }

    /// The same parameters in another working precision.
    pub fn cast<S: Scalar>(&self) -> JacobiParameters<S> {
        JacobiParameters {
            head: self.head.iter().map(|&(a, b)| (convert(a), convert(b))).collect(),
            tail: self.tail.cast(),
        }
    }

    pub fn head(&self) -> &[(T, T)] {
        &self.head
    }

    pub fn tail(&self) -> &Tail<T> {
        &self.tail
    }

    /// Interleaved entry x_k (x_0 = 1).
    pub fn x(&self, k: usize) -> T {
        if k == 0 {
            return T::one();
        }
        let n = k.div_ceil(2);
        if n <= self.head.len() {
            let (a, b) = self.head[n - 1];
            return if k % 2 == 1 { -b } else { T::one() - a * a };
        }
        match &self.tail {
            Tail::Free => T::zero(),
            Tail::Series(s) => s.value(k).re,
        }
    }

    /// b_n, 1-indexed.
    pub fn b(&self, n: usize) -> T {
        -self.x(2 * n - 1)
    }

    /// a_n² - 1 without cancellation for tail entries.
    pub fn a2m1(&self, n: usize) -> T {
        -self.x(2 * n)
    }

    pub fn a(&self, n: usize) -> T {
        if n <= self.head.len() {
            self.head[n - 1].0
        } else {
            (T::one() + self.a2m1(n)).sqrt()
        }
    }

    /// Index after which all entries vanish, if any.
    pub fn support(&self) -> Option<usize> {
        match self.tail {
            Tail::Free => {
                let mut m = self.head.len();
                while m > 0 && self.head[m - 1] == (T::one(), T::zero()) {
                    m -= 1;
                }
                Some(m)
            }
            Tail::Series(ref s) if s.terms.is_empty() && s.remainder_radius.is_none() => Some(self.head.len()),
            _ => None,
        }
    }

    /// Decay radius R: (|a_n²-1| + |b_n|)^{1/2n} → R^{-1}.
    pub fn decay_radius(&self) -> T {
        if self.support().is_some() {
            return T::infinity();
        }
        self.tail.decay_radius()
    }

    /// (a_n, b_n) for n = 1..=N.
    pub fn realize(&self, n_max: usize) -> Result<Vec<(T, T)>> {
        if n_max > MAX_REALIZE {
            return Err(JostError::Invalid(format!("realize length {n_max} exceeds maximum {MAX_REALIZE}")));
        }
        (1..=n_max)
            .map(|n| {
                let a2 = T::one() + self.a2m1(n);
                if !(a2 > T::zero()) {
                    return Err(JostError::entry("a", n, "a² ≤ 0"));
                }
                Ok((self.a(n), self.b(n)))
            })
            .collect()
    }

    /// First `len` Taylor coefficients of B, i.e. x_0..x_{len-1}.
    pub fn interleaved(&self, len: usize) -> Vec<T> {
        (0..len).map(|k| self.x(k)).collect()
    }

    /// Parameters of J^{(k)}: {a_{n+k}, b_{n+k}}.
    pub fn shifted(&self, k: usize) -> Self {
        let head = self.head.iter().skip(k).copied().collect();
        let tail = match &self.tail {
            Tail::Free => Tail::Free,
            Tail::Series(s) => Tail::Series(s.shift(2 * k).with_parity(Some(Parity::Interleaved))),
        };
        JacobiParameters { head, tail }
    }

    /// ε-scaled parameters: b → εb, a → 1 + ε(a-1), on the first `n` entries.
    pub fn scaled(&self, eps: T, n: usize) -> Result<Self> {
        let head = (1..=n)
            .map(|j| {
                let a = self.a(j);
                (T::one() + eps * (a - T::one()), eps * self.b(j))
            })
            .collect();
        Self::from_head(head)
    }

    /// Index beyond which |a_n²-1| + |b_n| stays below `tol` (from the model).
    pub fn negligible_from(&self, tol: T) -> usize {
        if let Some(m) = self.support() {
            return m;
        }
        let h = self.head.len();
        let r = self.decay_radius();
        let mut n = h + 1;
        let mut run = 0;
        while n < MAX_REALIZE / 4 {
            let v = self.a2m1(n).abs() + self.b(n).abs();
            if v < tol {
                run += 1;
                // the envelope must also certify the rest
                let q = T::one() / (r * r);
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

impl<T: Scalar> Default for JacobiParameters<T> {
    fn default() -> Self {
        Self::free()
    }
}

/// Jacobi fixture with a single nonzero entry b_1 = β.
pub fn rank_one_b<T: Scalar>(beta: T) -> JacobiParameters<T> {
    JacobiParameters { head: vec![(T::one(), beta)], tail: Tail::Free }
}

/// Jacobi fixture with a_1² = 1 + γ.
pub fn rank_one_a<T: Scalar>(gamma: T) -> JacobiParameters<T> {
    JacobiParameters { head: vec![((T::one() + gamma).sqrt(), T::zero())], tail: Tail::Free }
}
