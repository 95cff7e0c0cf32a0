//! Floating-point abstraction shared by the closed-form evaluators.
//!
//! The Green's-function formulas are written once, generic over [`Real`],
//! and instantiated with `f64` for production use and with [`DoubleDouble`]
//! where an extended-precision evaluation is needed (finite-difference
//! residuals, and the reduced-form evaluator whose exact coefficients can
//! cancel heavily).
//!
//! `DoubleDouble` is the classic unevaluated sum of two `f64`s, giving about
//! 106 bits of significand. The arithmetic follows the well-known error-free
//! transformations (Knuth two-sum, FMA two-product); the transcendental
//! functions use argument reduction plus Taylor series, with a Newton step
//! from the `f64` result where that is cheaper.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::ToPrimitive;

pub trait Real:
    Copy
    + PartialOrd
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Unit roundoff of the representation, as an `f64`.
    const EPSILON: f64;

    fn from_f64(x: f64) -> Self;
    fn from_ratio(q: &BigRational) -> Self;
    fn to_f64(self) -> f64;
    fn pi() -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn ln(self) -> Self;
    fn ln_1p(self) -> Self;
    fn sqrt(self) -> Self;
    fn atan(self) -> Self;
    fn abs(self) -> Self;

    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { Self::from_f64(1.0) / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::from_f64(1.0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn from_i64(n: i64) -> Self {
        Self::from_f64(n as f64)
    }
}

impl Real for f64 {
    const EPSILON: f64 = f64::EPSILON;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_ratio(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn ln_1p(self) -> Self {
        f64::ln_1p(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn atan(self) -> Self {
        f64::atan(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
}

/// Double-double number `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Default, PartialEq, PartialOrd)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

const DD_PI: DoubleDouble = DoubleDouble { hi: 3.141_592_653_589_793, lo: 1.224_646_799_147_353_2e-16 };
const DD_HALF_PI: DoubleDouble = DoubleDouble { hi: 1.570_796_326_794_896_6, lo: 6.123_233_995_736_766e-17 };
const DD_LN2: DoubleDouble = DoubleDouble { hi: 0.693_147_180_559_945_3, lo: 2.319_046_813_846_299_6e-17 };

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Multiplication by an exact power of two.
    fn ldexp(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        Self { hi: self.hi * s, lo: self.lo * s }
    }

    fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * b);
        Self { hi, lo }
    }

    /// `exp(x) - 1` for `|x| <= ln 2 / 2`, accurate in the relative sense.
    fn expm1_reduced(self) -> Self {
        // Scale down so the Taylor series converges in a handful of terms,
        // then undo with (1+s)^2 - 1 = 2s + s^2.
        const SQUARINGS: i32 = 9;
        let r = self.ldexp(-SQUARINGS);
        let mut term = r;
        let mut s = r;
        for i in 2..40 {
            term = term * r / Self::from_f64(i as f64);
            s = s + term;
            if term.hi.abs() <= 1e-36 * s.hi.abs() {
                break;
            }
        }
        for _ in 0..SQUARINGS {
            s = s.ldexp(1) + s * s;
        }
        s
    }

    pub fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::ZERO;
        }
        let k = (self.hi / DD_LN2.hi).round();
        let r = self - DD_LN2.mul_f64(k);
        (r.expm1_reduced() + Self::ONE).ldexp(k as i32)
    }

    pub fn expm1(self) -> Self {
        if self.hi.abs() <= 0.5 * DD_LN2.hi {
            self.expm1_reduced()
        } else {
            self.exp() - Self::ONE
        }
    }

    fn sin_cos_taylor(r: Self) -> (Self, Self) {
        let r2 = r * r;
        let mut s = r;
        let mut term = r;
        let mut i = 1.0;
        loop {
            term = -(term * r2) / Self::from_f64((i + 1.0) * (i + 2.0));
            s = s + term;
            i += 2.0;
            if term.hi.abs() <= 1e-36 || i > 60.0 {
                break;
            }
        }
        let mut c = Self::ONE;
        let mut term = Self::ONE;
        let mut i = 0.0;
        loop {
            term = -(term * r2) / Self::from_f64((i + 1.0) * (i + 2.0));
            c = c + term;
            i += 2.0;
            if term.hi.abs() <= 1e-36 || i > 60.0 {
                break;
            }
        }
        (s, c)
    }

    pub fn sin_cos(self) -> (Self, Self) {
        let k = (self.hi / DD_HALF_PI.hi).round();
        let r = self - DD_HALF_PI.mul_f64(k);
        let (s, c) = Self::sin_cos_taylor(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.hi)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, b.hi);
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Self { hi: q1, lo: q2 } + Self::from(q3)
    }
}

impl Real for DoubleDouble {
    const EPSILON: f64 = 4.93e-32;

    fn from_f64(x: f64) -> Self {
        Self::from(x)
    }

    fn from_ratio(q: &BigRational) -> Self {
        let hi = q.to_f64().unwrap_or(f64::NAN);
        if !hi.is_finite() {
            return Self::from(hi);
        }
        let rem = q - BigRational::from_float(hi).expect("finite f64 is rational");
        Self::new(hi, rem.to_f64().unwrap_or(0.0))
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn pi() -> Self {
        DD_PI
    }

    fn sin(self) -> Self {
        self.sin_cos().0
    }

    fn cos(self) -> Self {
        self.sin_cos().1
    }

    fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from(if self.hi == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        // Newton on exp(y) = x, one step doubles the 53 correct bits.
        let y = Self::from(self.hi.ln());
        y + self * (-y).exp() - Self::ONE
    }

    fn ln_1p(self) -> Self {
        if self.hi.abs() > 0.25 {
            return (Self::ONE + self).ln();
        }
        let y = Self::from(self.hi.ln_1p());
        let e = y.expm1();
        y - (e - self) / (Self::ONE + e)
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from(if self.hi == 0.0 { 0.0 } else { f64::NAN });
        }
        let y = Self::from(self.hi.sqrt());
        y + (self - y * y) / y.ldexp(1)
    }

    fn atan(self) -> Self {
        let t = Self::from(self.hi.atan());
        let (s, c) = t.sin_cos();
        t - (s - self * c) / (c + self * s)
    }

    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}
