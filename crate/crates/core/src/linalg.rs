//! Small dense complex kernels: Householder QR, one-sided Jacobi SVD,
//! least squares and simultaneous polynomial root finding.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{JostError, Result};
use crate::poly;
use crate::scalar::{cabs, cre, Scalar};

/// Column-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m.data[j * rows + i] = f(i, j);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[j * self.rows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[j * self.rows + i] = v;
    }

    pub fn col(&self, j: usize) -> &[Complex<T>] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    fn col_mut(&mut self, j: usize) -> &mut [Complex<T>] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn mul_vec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut y = vec![Complex::zero(); self.rows];
        for (j, &xj) in x.iter().enumerate() {
            for (yi, a) in y.iter_mut().zip(self.col(j)) {
                *yi = *yi + *a * xj;
            }
        }
        y
    }
}

fn norm2<T: Scalar>(v: &[Complex<T>]) -> T {
    let scale = v.iter().fold(T::zero(), |m, z| m.max(z.re.abs()).max(z.im.abs()));
    if scale.is_zero() {
        return T::zero();
    }
    let s = v.iter().fold(T::zero(), |acc, z| acc + (*z / scale).norm_sqr());
    scale * s.sqrt()
}

fn dot<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).fold(Complex::zero(), |acc, (x, y)| acc + x.conj() * *y)
}

/// Householder QR of `a` (rows ≥ cols), applied in place to the extra
/// right-hand sides. Returns the upper triangle R (cols × cols).
pub fn qr_apply<T: Scalar>(a: &Mat<T>, rhs: &mut [Vec<Complex<T>>]) -> Mat<T> {
    let (m, n) = (a.rows, a.cols);
    let mut w = a.clone();
    let negligible = norm2(&a.data) * T::unit_roundoff() * T::unit_roundoff();
    for k in 0..n.min(m) {
        let x: Vec<Complex<T>> = w.col(k)[k..].to_vec();
        let nx = norm2(&x);
        if nx <= negligible {
            for e in w.col_mut(k)[k..].iter_mut() {
                *e = Complex::zero();
            }
            continue;
        }
        let phase = if cabs(x[0]).is_zero() { Complex::one() } else { x[0].unscale(cabs(x[0])) };
        let alpha = -phase * nx;
        let mut v = x;
        v[0] = v[0] - alpha;
        let nv = norm2(&v);
        if nv.is_zero() {
            continue;
        }
        for e in v.iter_mut() {
            *e = *e / nv;
        }
        let two = cre(T::of(2.0));
        for j in k..n {
            let col = &mut w.col_mut(j)[k..];
            let d = dot(&v, col) * two;
            for (c, vi) in col.iter_mut().zip(&v) {
                *c = *c - *vi * d;
            }
        }
        for r in rhs.iter_mut() {
            let col = &mut r[k..];
            let d = dot(&v, col) * two;
            for (c, vi) in col.iter_mut().zip(&v) {
                *c = *c - *vi * d;
            }
        }
    }
    Mat::from_fn(n, n, |i, j| if i <= j && i < m { w.get(i, j) } else { Complex::zero() })
}

/// Least-squares solution of min ‖Ax - b‖ (A of full column rank).
pub fn lstsq<T: Scalar>(a: &Mat<T>, b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let mut rhs = vec![b.to_vec()];
    let r = qr_apply(a, &mut rhs);
    let n = a.cols;
    let rmax = (0..n).fold(T::zero(), |m, i| m.max(cabs(r.get(i, i))));
    let mut x = vec![Complex::zero(); n];
    for i in (0..n).rev() {
        let d = r.get(i, i);
        if !(cabs(d) > rmax * T::unit_roundoff() * T::of_usize(n.max(1))) {
            return Err(JostError::AmbiguousRank { op: "lstsq", detail: format!("rank deficient at column {i}") });
        }
        let mut s = rhs[0][i];
        for (j, xj) in x.iter().enumerate().skip(i + 1) {
            s = s - r.get(i, j) * *xj;
        }
        x[i] = s / d;
    }
    Ok(x)
}

/// Singular values (descending) and right singular vectors (as columns of V)
/// by one-sided Jacobi on A.
pub fn svd_right<T: Scalar>(a: &Mat<T>) -> (Vec<T>, Mat<T>) {
    let n = a.cols;
    let mut u = if a.rows > n { qr_apply(a, &mut []) } else { a.clone() };
    let negligible = norm2(&u.data) * T::unit_roundoff() * T::unit_roundoff();
    for e in u.data.iter_mut() {
        if cabs(*e) <= negligible {
            *e = Complex::zero();
        }
    }
    let mut v = Mat::from_fn(n, n, |i, j| if i == j { Complex::one() } else { Complex::zero() });
    let eps = T::unit_roundoff();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = dot(u.col(p), u.col(p)).re;
                let beta = dot(u.col(q), u.col(q)).re;
                let g = dot(u.col(p), u.col(q));
                let ga = cabs(g);
                if ga <= negligible * negligible || ga <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let ph = g.unscale(ga);
                let zeta = (beta - alpha) / (T::of(2.0) * ga);
                let t = if !zeta.is_finite() {
                    T::zero()
                } else if zeta.abs() > T::of(1e100) {
                    T::one() / (T::of(2.0) * zeta)
                } else {
                    zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for m in [&mut u, &mut v] {
                    for i in 0..m.rows {
                        let xp = m.get(i, p);
                        let xq = m.get(i, q) * ph.conj();
                        m.set(i, p, xp * c - xq * s);
                        m.set(i, q, (xp * s + xq * c) * ph);
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<(T, usize)> = (0..n).map(|j| (norm2(u.col(j)), j)).collect();
    order.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal).then(x.1.cmp(&y.1)));
    let sv = order.iter().map(|o| o.0).collect();
    let vs = Mat::from_fn(n, n, |i, j| v.get(i, order[j].1));
    (sv, vs)
}

/// All roots of Σ p_k x^k by the Aberth-Ehrlich iteration.
pub fn poly_roots<T: Scalar>(p: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let p = poly::trim(p.to_vec(), T::zero());
    let d = p.len().saturating_sub(1);
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = p[d];
    let p: Vec<Complex<T>> = p.iter().map(|c| *c / lead).collect();
    let bound = p[..d].iter().fold(T::zero(), |m, c| m.max(cabs(*c)));
    let rad = (T::one() + bound).min(
        // geometric mean of root moduli is |p_0|^{1/d}
        cabs(p[0]).powf(T::one() / T::of_usize(d)).max(T::of(1e-3)) * T::of(1.5),
    );
    let mut z: Vec<Complex<T>> = (0..d)
        .map(|k| {
            let th = T::of(2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4);
            Complex::new(th.cos(), th.sin()) * rad
        })
        .collect();
    let tiny = T::of(4.0) * T::unit_roundoff();
    for _ in 0..800 {
        let mut worst = T::zero();
        for i in 0..d {
            let (f, df) = poly::eval_d(&p, z[i]);
            if f.is_zero() {
                continue;
            }
            let ratio = f / df;
            let mut s = Complex::zero();
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    s = s + Complex::<T>::one() / (z[i] - *zj);
                }
            }
            let w = ratio / (Complex::<T>::one() - ratio * s);
            if !(w.re.is_finite() && w.im.is_finite()) {
                continue;
            }
            z[i] = z[i] - w;
            worst = worst.max(cabs(w) / cabs(z[i]).max(T::min_positive_value()));
        }
        if worst <= tiny {
            return Ok(z);
        }
    }
    // Multiple roots converge only linearly; accept a moderately settled state.
    let settled = z.iter().all(|zi| {
        let (f, _) = poly::eval_d(&p, *zi);
        cabs(f) <= T::of(1e-6) * p.iter().fold(T::zero(), |m, c| m + cabs(*c)) * cabs(*zi).max(T::one()).powi(d as i32)
    });
    if settled {
        Ok(z)
    } else {
        Err(JostError::NoConvergence { op: "poly_roots", iterations: 800, detail: format!("degree {d}") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn lstsq_exact() {
        let a = Mat::from_fn(4, 2, |i, j| c((i + 1) as f64, (i * j) as f64));
        let x = [c(1.0, -1.0), c(0.5, 2.0)];
        let b = a.mul_vec(&x);
        let y = lstsq(&a, &b).unwrap();
        for (p, q) in x.iter().zip(&y) {
            assert!((p - q).norm() < 1e-13);
        }
    }

    #[test]
    fn svd_rank_two() {
        let a = Mat::from_fn(6, 3, |i, j| c(2f64.powi(-((i + j) as i32)) + 3f64.powi(-((i + j) as i32)), 0.0));
        let (s, v) = svd_right(&a);
        assert!(s[0] > 1.0 && s[1] > 1e-3 && s[2] < 1e-14 * s[0]);
        let null: Vec<Complex<f64>> = (0..3).map(|i| v.get(i, 2)).collect();
        let r = a.mul_vec(&null);
        assert!(r.iter().all(|x| x.norm() < 1e-14));
    }

    #[test]
    fn roots_simple_and_double() {
        // (x-2)(x+3)(x-0.5i)
        let p = poly::mul(
            &poly::mul(&[c(-2.0, 0.0), c(1.0, 0.0)], &[c(3.0, 0.0), c(1.0, 0.0)]),
            &[c(0.0, -0.5), c(1.0, 0.0)],
        );
        let mut r = poly_roots(&p).unwrap();
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - c(-3.0, 0.0)).norm() < 1e-13);
        assert!((r[1] - c(0.0, 0.5)).norm() < 1e-13);
        assert!((r[2] - c(2.0, 0.0)).norm() < 1e-13);
        let q = poly::mul(&[c(-2.0, 0.0), c(1.0, 0.0)], &[c(-2.0, 0.0), c(1.0, 0.0)]);
        let r = poly_roots(&q).unwrap();
        assert!(r.iter().all(|z| (z - c(2.0, 0.0)).norm() < 1e-6));
    }
}
