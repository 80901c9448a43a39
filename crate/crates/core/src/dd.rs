//! Double-double scalar.
//!
//! A thin wrapper over `twofloat::TwoFloat`, whose addition, multiplication
//! and square root are accurate to the full 106 bits. Division, reciprocal,
//! `hypot`, `exp`, `ln` and integer powers are replaced here: the upstream
//! versions lose accuracy to roughly double precision (or to NaN for 0^0).
//! Trigonometric and hyperbolic functions are delegated as they are.

use std::cmp::Ordering;
use std::num::FpCategory;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};
use twofloat::TwoFloat;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd(TwoFloat);

const LN2: Dd = Dd(twofloat::consts::LN_2);
const LN10: Dd = Dd(twofloat::consts::LN_10);

impl Dd {
    /// Exact conversion (shadows `NumCast::from` for plain calls).
    #[allow(clippy::should_implement_trait)]
    pub fn from(x: f64) -> Self {
        <Dd as From<f64>>::from(x)
    }

    /// hi + lo, renormalized.
    pub fn new_add(hi: f64, lo: f64) -> Self {
        Dd(TwoFloat::new_add(hi, lo))
    }

    pub fn hi(&self) -> f64 {
        self.0.hi()
    }

    pub fn lo(&self) -> f64 {
        self.0.lo()
    }

    fn scale2(self, e: i32) -> Self {
        // multiplication by a power of two is exact; split to stay in range
        let half = e / 2;
        Dd(self.0 * 2f64.powi(half) * 2f64.powi(e - half))
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd(<TwoFloat as From<f64>>::from(x))
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

/// Overflow leaves hi = ±inf with a NaN low word; keep the infinity.
fn finite_or_hi(x: TwoFloat) -> Dd {
    if x.hi().is_finite() {
        Dd(x)
    } else {
        Dd(<TwoFloat as From<f64>>::from(x.hi()))
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $atr:ident, $af:ident) => {
        impl $tr for Dd {
            type Output = Dd;
            fn $f(self, rhs: Dd) -> Dd {
                finite_or_hi(self.0.$f(rhs.0))
            }
        }
        impl $atr for Dd {
            fn $af(&mut self, rhs: Dd) {
                *self = self.$f(rhs);
            }
        }
    };
}

binop!(Add, add, AddAssign, add_assign);
binop!(Sub, sub, SubAssign, sub_assign);
binop!(Mul, mul, MulAssign, mul_assign);

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let (a, b) = (self.0, rhs.0);
        let q1 = a.hi() / b.hi();
        if !q1.is_finite() || q1 == 0.0 {
            return Dd::from(q1);
        }
        let r = a - b * q1;
        let q2 = r.hi() / b.hi();
        let r = r - b * q2;
        let q3 = r.hi() / b.hi();
        finite_or_hi(TwoFloat::new_add(q1, q2) + q3)
    }
}

impl DivAssign for Dd {
    fn div_assign(&mut self, rhs: Dd) {
        *self = *self / rhs;
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, rhs: Dd) -> Dd {
        self - (self / rhs).trunc() * rhs
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd(-self.0)
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Dd::from(0.0)
    }
    fn is_zero(&self) -> bool {
        self.0.hi() == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd::from(1.0)
    }
}

impl Num for Dd {
    type FromStrRadixErr = <TwoFloat as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        TwoFloat::from_str_radix(s, radix).map(Dd)
    }
}

impl ToPrimitive for Dd {
    fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.0.hi() + self.0.lo())
    }
}

impl FromPrimitive for Dd {
    fn from_i64(n: i64) -> Option<Self> {
        TwoFloat::from_i64(n).map(Dd)
    }
    fn from_u64(n: u64) -> Option<Self> {
        TwoFloat::from_u64(n).map(Dd)
    }
    fn from_f64(n: f64) -> Option<Self> {
        Some(Dd::from(n))
    }
}

impl NumCast for Dd {
    fn from<N: ToPrimitive>(n: N) -> Option<Self> {
        n.to_f64().map(<Dd as From<f64>>::from)
    }
}

macro_rules! consts {
    ($($name:ident),*) => {
        impl FloatConst for Dd {
            $(fn $name() -> Self { Dd(<TwoFloat as FloatConst>::$name()) })*
        }
    };
}

consts!(
    E,
    FRAC_1_PI,
    FRAC_1_SQRT_2,
    FRAC_2_PI,
    FRAC_2_SQRT_PI,
    FRAC_PI_2,
    FRAC_PI_3,
    FRAC_PI_4,
    FRAC_PI_6,
    FRAC_PI_8,
    LN_10,
    LN_2,
    LOG10_E,
    LOG2_E,
    PI,
    SQRT_2
);

macro_rules! unary {
    ($($f:ident),*) => {
        $(fn $f(self) -> Self { Dd(Float::$f(self.0)) })*
    };
}

fn exp_dd(x: Dd) -> Dd {
    let h = x.hi();
    if h.is_nan() {
        return x;
    }
    if h > 709.8 {
        return Dd::infinity();
    }
    if h < -745.2 {
        return Dd::zero();
    }
    let k = (h / LN2.hi()).round();
    let r = (x - LN2 * Dd::from(k)).scale2(-10);
    // e^r - 1 by Taylor, then (1+e)^2 - 1 = e(2+e) ten times
    let mut term = r;
    let mut e = r;
    for i in 2..=12 {
        term = term * r / Dd::from(i as f64);
        e += term;
    }
    let two = Dd::from(2.0);
    for _ in 0..10 {
        e = e * (two + e);
    }
    (Dd::one() + e).scale2(k as i32)
}

fn ln_dd(x: Dd) -> Dd {
    if !(x.hi() > 0.0) {
        return if x.hi() == 0.0 { Dd::neg_infinity() } else { Dd::nan() };
    }
    if x.hi().is_infinite() {
        return x;
    }
    let mut y = Dd::from(x.hi().ln());
    for _ in 0..2 {
        y = y + x * exp_dd(-y) - Dd::one();
    }
    y
}

impl Float for Dd {
    fn nan() -> Self {
        Dd::from(f64::NAN)
    }
    fn infinity() -> Self {
        Dd::from(f64::INFINITY)
    }
    fn neg_infinity() -> Self {
        Dd::from(f64::NEG_INFINITY)
    }
    fn neg_zero() -> Self {
        Dd::from(-0.0)
    }
    fn min_value() -> Self {
        Dd(Float::min_value())
    }
    fn min_positive_value() -> Self {
        Dd::from(f64::MIN_POSITIVE)
    }
    fn epsilon() -> Self {
        Dd::from(2f64.powi(-104))
    }
    fn max_value() -> Self {
        Dd(Float::max_value())
    }
    fn is_nan(self) -> bool {
        self.0.hi().is_nan() || self.0.lo().is_nan()
    }
    fn is_infinite(self) -> bool {
        self.0.hi().is_infinite()
    }
    fn is_finite(self) -> bool {
        self.0.hi().is_finite() && self.0.lo().is_finite()
    }
    fn is_normal(self) -> bool {
        self.0.hi().is_normal()
    }
    fn classify(self) -> FpCategory {
        self.0.hi().classify()
    }
    unary!(
        floor, ceil, round, trunc, fract, abs, signum, cbrt, sin, cos, tan, asin, acos, atan, sinh, cosh, tanh, asinh,
        acosh, atanh, exp_m1, ln_1p
    );
    fn is_sign_positive(self) -> bool {
        self.0.is_sign_positive()
    }
    fn is_sign_negative(self) -> bool {
        self.0.is_sign_negative()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }
    fn recip(self) -> Self {
        Dd::one() / self
    }
    fn powi(self, n: i32) -> Self {
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Dd::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            Dd::one() / acc
        } else {
            acc
        }
    }
    fn powf(self, n: Self) -> Self {
        if n.fract().is_zero() && n.abs().hi() < 1024.0 {
            return self.powi(n.hi() as i32);
        }
        exp_dd(n * ln_dd(self))
    }
    fn sqrt(self) -> Self {
        if self.0.hi() == 0.0 {
            return Dd::zero();
        }
        Dd(Float::sqrt(self.0))
    }
    fn exp(self) -> Self {
        exp_dd(self)
    }
    fn exp2(self) -> Self {
        exp_dd(self * LN2)
    }
    fn ln(self) -> Self {
        ln_dd(self)
    }
    fn log(self, base: Self) -> Self {
        ln_dd(self) / ln_dd(base)
    }
    fn log2(self) -> Self {
        ln_dd(self) / LN2
    }
    fn log10(self) -> Self {
        ln_dd(self) / LN10
    }
    fn max(self, other: Self) -> Self {
        if self.is_nan() || other > self {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if self.is_nan() || other < self {
            other
        } else {
            self
        }
    }
    #[allow(deprecated)]
    fn abs_sub(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            Dd::zero()
        }
    }
    fn hypot(self, other: Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let m = a.hi().max(b.hi());
        if m == 0.0 || !m.is_finite() {
            return Dd::from(m);
        }
        let e = m.log2().floor() as i32;
        let (a, b) = (a.scale2(-e), b.scale2(-e));
        (a * a + b * b).sqrt().scale2(e)
    }
    fn atan2(self, other: Self) -> Self {
        Dd(self.0.atan2(other.0))
    }
    fn sin_cos(self) -> (Self, Self) {
        let (s, c) = self.0.sin_cos();
        (Dd(s), Dd(c))
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        self.0.integer_decode()
    }
}
