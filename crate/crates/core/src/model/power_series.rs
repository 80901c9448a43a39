use num_complex::Complex;

use crate::error::{JostError, Result};
use crate::poly;
use crate::scalar::Scalar;

/// Truncated Taylor (or Laurent, via `inner_radius`) data of a function.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeriesModel<T> {
    pub coeffs: Vec<Complex<T>>,
    pub inner_radius: T,
    pub outer_radius: T,
    pub precision_bits: u32,
}

impl<T: Scalar> PowerSeriesModel<T> {
    pub fn new(coeffs: Vec<Complex<T>>, outer_radius: T) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(JostError::Invalid("a power series model needs at least c_0 and c_1".into()));
        }
        if let Some(k) = coeffs.iter().position(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(JostError::entry("coeffs", k, "non-finite coefficient"));
        }
        Ok(PowerSeriesModel { coeffs, inner_radius: T::zero(), outer_radius, precision_bits: T::SIGNIFICAND_BITS })
    }

    pub fn from_real(coeffs: &[T], outer_radius: T) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex::new(x, T::zero())).collect(), outer_radius)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Truncated sum; meaningful for |z| well inside the outer radius.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        poly::eval(&self.coeffs, z)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,re,im\n");
        for (k, c) in self.coeffs.iter().enumerate() {
            s.push_str(&format!("{},{},{}\n", k, c.re.to_decimal(), c.im.to_decimal()));
        }
        s
    }
}
