use std::cmp::Ordering;

use num_complex::Complex;

use crate::error::{JostError, Result};
use crate::scalar::{cabs, Scalar};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pole<T> {
    pub z: Complex<T>,
    pub order: usize,
}

/// Finite multiset of points outside the closed unit disk, below a cutoff.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleSet<T> {
    points: Vec<Pole<T>>,
    pub cutoff: T,
}

/// Canonical order: modulus, then argument.
fn canonical<T: Scalar>(a: &Complex<T>, b: &Complex<T>) -> Ordering {
    let (ma, mb) = (cabs(*a).approx(), cabs(*b).approx());
    let (ta, tb) = (a.im.approx().atan2(a.re.approx()), b.im.approx().atan2(b.re.approx()));
    ma.partial_cmp(&mb).unwrap_or(Ordering::Equal).then(ta.partial_cmp(&tb).unwrap_or(Ordering::Equal))
}

impl<T: Scalar> PoleSet<T> {
    pub fn empty(cutoff: T) -> Self {
        PoleSet { points: Vec::new(), cutoff }
    }

    /// Validated construction: |z| > 1, |z| ≤ cutoff, conjugation closed.
    pub fn new(points: Vec<Pole<T>>, cutoff: T) -> Result<Self> {
        let tol = T::of(1e-9);
        for (i, p) in points.iter().enumerate() {
            let m = cabs(p.z);
            if !(m > T::one()) {
                return Err(JostError::entry("poles", i, "|z| must exceed 1"));
            }
            if m > cutoff * (T::one() + tol) {
                return Err(JostError::entry("poles", i, "|z| exceeds the cutoff"));
            }
            if p.order == 0 {
                return Err(JostError::entry("poles", i, "order must be positive"));
            }
            let closed = points.iter().any(|q| cabs(q.z - p.z.conj()) <= tol * m && q.order == p.order);
            if !closed {
                return Err(JostError::entry("poles", i, "set is not closed under conjugation"));
            }
        }
        Ok(Self::unchecked(points, cutoff))
    }

    /// Build without validation (internal results that are correct by construction).
    pub fn unchecked(mut points: Vec<Pole<T>>, cutoff: T) -> Self {
        points.sort_by(|a, b| canonical(&a.z, &b.z));
        PoleSet { points, cutoff }
    }

    pub fn from_points(zs: &[Complex<T>], cutoff: T) -> Result<Self> {
        Self::new(zs.iter().map(|&z| Pole { z, order: 1 }).collect(), cutoff)
    }

    pub fn points(&self) -> &[Pole<T>] {
        &self.points
    }

    pub fn locations(&self) -> Vec<Complex<T>> {
        self.points.iter().map(|p| p.z).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Restrict to |z| ≤ cutoff (inclusive, with relative slack `tol`).
    pub fn truncated(&self, cutoff: T, tol: T) -> Self {
        let pts = self.points.iter().filter(|p| cabs(p.z) <= cutoff * (T::one() + tol)).copied().collect();
        Self::unchecked(pts, cutoff)
    }

    /// Multiset union; coinciding points (relative `tol`) add their orders.
    pub fn union(&self, other: &Self, tol: T) -> Self {
        let mut pts = self.points.clone();
        for q in &other.points {
            match pts.iter_mut().find(|p| cabs(p.z - q.z) <= tol * cabs(q.z)) {
                Some(p) => p.order += q.order,
                None => pts.push(*q),
            }
        }
        Self::unchecked(pts, self.cutoff.max(other.cutoff))
    }

    pub fn contains(&self, z: Complex<T>, tol: T) -> bool {
        self.points.iter().any(|p| cabs(p.z - z) <= tol * cabs(z))
    }

    /// Equal as multisets of locations (orders compared when `with_orders`).
    pub fn same_as(&self, other: &Self, tol: T, with_orders: bool) -> bool {
        if self.points.len() != other.points.len() {
            return false;
        }
        let mut used = vec![false; other.points.len()];
        for p in &self.points {
            let hit = other.points.iter().enumerate().position(|(j, q)| {
                !used[j] && cabs(p.z - q.z) <= tol * cabs(p.z) && (!with_orders || p.order == q.order)
            });
            match hit {
                Some(j) => used[j] = true,
                None => return false,
            }
        }
        true
    }
}
