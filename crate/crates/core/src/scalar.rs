//! Working-precision scalars.
//!
//! Every numerical routine is generic over [`Scalar`], implemented for `f32`,
//! `f64` and the double-double [`Dd`] (106-bit significand). `num_traits`
//! supplies the arithmetic; this trait adds what the library needs on top:
//! a usable unit roundoff and lossless decimal text conversion.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{Float, FloatConst, FromPrimitive, Signed, ToPrimitive, Zero};

use crate::error::JostError;

pub use crate::dd::Dd;

pub trait Scalar: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Send + Sync + 'static {
    /// Significand bits of the representation.
    const SIGNIFICAND_BITS: u32;
    const NAME: &'static str;

    /// Relative spacing of representable numbers near 1.
    ///
    fn unit_roundoff() -> Self;

    fn of(x: f64) -> Self;

    fn approx(self) -> f64;

    fn parse_decimal(s: &str) -> Result<Self, JostError>;

    /// Shortest decimal string that parses back to the identical value.
    fn to_decimal(self) -> String;

    fn of_usize(n: usize) -> Self {
        Self::of(n as f64)
    }
}

impl Scalar for f32 {
    const SIGNIFICAND_BITS: u32 = 24;
    const NAME: &'static str = "f32";

    fn unit_roundoff() -> Self {
        f32::EPSILON
    }
    fn of(x: f64) -> Self {
        x as f32
    }
    fn approx(self) -> f64 {
        self as f64
    }
    fn parse_decimal(s: &str) -> Result<Self, JostError> {
        f32::from_str(s.trim()).map_err(|_| JostError::parse(format!("not a number: {s:?}")))
    }
    fn to_decimal(self) -> String {
        fmt_binary(self as f64, format!("{self}"), format!("{self:e}"))
    }
}

impl Scalar for f64 {
    const SIGNIFICAND_BITS: u32 = 53;
    const NAME: &'static str = "f64";

    fn unit_roundoff() -> Self {
        f64::EPSILON
    }
    fn of(x: f64) -> Self {
        x
    }
    fn approx(self) -> f64 {
        self
    }
    fn parse_decimal(s: &str) -> Result<Self, JostError> {
        f64::from_str(s.trim()).map_err(|_| JostError::parse(format!("not a number: {s:?}")))
    }
    fn to_decimal(self) -> String {
        fmt_binary(self, format!("{self}"), format!("{self:e}"))
    }
}

fn fmt_binary(x: f64, plain: String, sci: String) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if a == 0.0 {
        "0".into()
    } else if (1e-5..1e16).contains(&a) {
        plain
    } else {
        sci
    }
}

impl Scalar for Dd {
    const SIGNIFICAND_BITS: u32 = 106;
    const NAME: &'static str = "dd";

    fn unit_roundoff() -> Self {
        Dd::from(2f64.powi(-104))
    }
    fn of(x: f64) -> Self {
        Dd::from(x)
    }
    fn approx(self) -> f64 {
        self.hi() + self.lo()
    }
    fn parse_decimal(s: &str) -> Result<Self, JostError> {
        parse_dd(s)
    }
    fn to_decimal(self) -> String {
        format_dd(self)
    }
}

pub fn c<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::of(re), T::of(im))
}

pub fn cre<T: Scalar>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

pub fn cabs<T: Scalar>(z: Complex<T>) -> T {
    z.re.hypot(z.im)
}

pub fn capprox<T: Scalar>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.approx(), z.im.approx())
}

pub fn cof<T: Scalar>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::of(z.re), T::of(z.im))
}

/// Convert between working precisions through the decimal-free exact path:
/// the value is split into f64 limbs, which every scalar represents.
pub fn convert<S: Scalar, T: Scalar>(x: S) -> T {
    let hi = x.approx();
    if !hi.is_finite() {
        return T::of(hi);
    }
    let lo = (x - S::of(hi)).approx();
    T::of(hi) + T::of(lo)
}

pub fn cconvert<S: Scalar, T: Scalar>(z: Complex<S>) -> Complex<T> {
    Complex::new(convert(z.re), convert(z.im))
}

/// Exact value of a finite f64 as `mantissa * 2^exp`.
fn f64_parts(x: f64) -> (BigInt, i64) {
    let (m, e, s) = num_traits::Float::integer_decode(x);
    let m = BigInt::from(m) * BigInt::from(s);
    (m, e as i64)
}

/// Exact rational `num / den` (den > 0).
struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    fn from_dyadic(m: BigInt, e: i64) -> Self {
        if e >= 0 {
            Rational { num: m << (e as usize), den: BigInt::from(1) }
        } else {
            Rational { num: m, den: BigInt::from(1) << ((-e) as usize) }
        }
    }

    fn from_decimal(m: BigInt, e10: i64) -> Self {
        if e10 >= 0 {
            Rational { num: m * pow10(e10 as u32), den: BigInt::from(1) }
        } else {
            Rational { num: m, den: pow10((-e10) as u32) }
        }
    }

    fn sub(&self, o: &Rational) -> Rational {
        Rational { num: &self.num * &o.den - &o.num * &self.den, den: &self.den * &o.den }
    }

    fn add(&self, o: &Rational) -> Rational {
        Rational { num: &self.num * &o.den + &o.num * &self.den, den: &self.den * &o.den }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// floor(log10 |self|), exact.
    fn log10_floor(&self) -> i64 {
        let a = self.num.abs();
        let bits = a.bits() as i64 - self.den.bits() as i64;
        let mut e = ((bits as f64) * std::f64::consts::LOG10_2).floor() as i64 - 1;
        // adjust upward until 10^(e+1) > |self|
        loop {
            let (l, r) = scaled_cmp(&a, &self.den, e + 1);
            if l < r {
                break;
            }
            e += 1;
        }
        loop {
            let (l, r) = scaled_cmp(&a, &self.den, e);
            if l >= r {
                break;
            }
            e -= 1;
        }
        e
    }

    /// Correctly rounded f64 via a 20-digit decimal string.
    fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.log10_floor();
        let digits = round_to_digits(&self.num.abs(), &self.den, e, 25);
        let s = format!("{}{}e{}", if self.num.sign() == Sign::Minus { "-" } else { "" }, digits, e - 24);
        s.parse().unwrap_or(0.0)
    }
}

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// Compare `a/den` with `10^e` as (lhs, rhs) integers.
fn scaled_cmp(a: &BigInt, den: &BigInt, e: i64) -> (BigInt, BigInt) {
    if e >= 0 {
        (a.clone(), den * pow10(e as u32))
    } else {
        (a * pow10((-e) as u32), den.clone())
    }
}

/// round(a/den * 10^(d-1-e)) half to even; returns the integer digits.
fn round_to_digits(a: &BigInt, den: &BigInt, e: i64, d: i64) -> BigInt {
    let shift = d - 1 - e;
    let (n, m) =
        if shift >= 0 { (a * pow10(shift as u32), den.clone()) } else { (a.clone(), den * pow10((-shift) as u32)) };
    let (q, r) = n.div_rem(&m);
    let twice = &r * 2;
    if twice > m || (twice == m && q.is_odd()) {
        q + 1
    } else {
        q
    }
}

fn special(s: &str) -> Option<f64> {
    match s.to_ascii_lowercase().as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => Some(f64::INFINITY),
        "-inf" | "-infinity" => Some(f64::NEG_INFINITY),
        "nan" => Some(f64::NAN),
        _ => None,
    }
}

fn parse_decimal_exact(s: &str) -> Option<(BigInt, i64)> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let mut m: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    if neg {
        m = -m;
    }
    Some((m, exp - frac.len() as i64))
}

fn parse_dd(s: &str) -> Result<Dd, JostError> {
    let t = s.trim();
    if let Some(v) = special(t) {
        return Ok(Dd::from(v));
    }
    let (m, e10) = parse_decimal_exact(t).ok_or_else(|| JostError::parse(format!("not a number: {s:?}")))?;
    let hi: f64 = t.parse().map_err(|_| JostError::parse(format!("not a number: {s:?}")))?;
    if hi == 0.0 || !hi.is_finite() {
        return Ok(Dd::from(hi));
    }
    let exact = Rational::from_decimal(m, e10);
    let (hm, he) = f64_parts(hi);
    let rest = exact.sub(&Rational::from_dyadic(hm, he));
    let lo = rest.to_f64();
    Ok(Dd::new_add(hi, lo))
}

fn dd_exact(x: Dd) -> Rational {
    let (hm, he) = f64_parts(x.hi());
    let (lm, le) = f64_parts(x.lo());
    Rational::from_dyadic(hm, he).add(&Rational::from_dyadic(lm, le))
}

fn format_dd(x: Dd) -> String {
    let v = x.hi() + x.lo();
    if !v.is_finite() {
        return fmt_binary(v, String::new(), String::new());
    }
    if v == 0.0 {
        return "0".into();
    }
    let exact = dd_exact(x);
    let neg = exact.num.sign() == Sign::Minus;
    let a = exact.num.abs();
    let e = exact.log10_floor();
    for d in 17..=40 {
        let mut q = round_to_digits(&a, &exact.den, e, d);
        let mut ee = e;
        if q.to_string().len() as i64 > d {
            q /= 10;
            ee += 1;
        }
        let s = layout(neg, &q.to_string(), ee);
        if let Ok(back) = parse_dd(&s) {
            if back.hi() == x.hi() && back.lo() == x.lo() {
                return s;
            }
        }
    }
    let q = round_to_digits(&a, &exact.den, e, 40);
    layout(neg, &q.to_string(), e)
}

/// Render digit string `ds` (value = 0.ds * 10^(e+1)) in plain or scientific form.
fn layout(neg: bool, ds: &str, e: i64) -> String {
    let ds = ds.trim_end_matches('0');
    let ds = if ds.is_empty() { "0" } else { ds };
    let sign = if neg { "-" } else { "" };
    let n = ds.len() as i64;
    if (-5..21).contains(&e) {
        if e < 0 {
            format!("{sign}0.{}{}", "0".repeat((-e - 1) as usize), ds)
        } else if n <= e + 1 {
            format!("{sign}{}{}", ds, "0".repeat((e + 1 - n) as usize))
        } else {
            let (a, b) = ds.split_at((e + 1) as usize);
            format!("{sign}{a}.{b}")
        }
    } else if n == 1 {
        format!("{sign}{ds}e{e}")
    } else {
        format!("{sign}{}.{}e{e}", &ds[..1], &ds[1..])
    }
}
