//! Transcendental basis functions of the reduced forms.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::real::{DoubleDouble, Real};

type D = DoubleDouble;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisFunction {
    One,
    /// `√(1−z)`
    SqrtOneMinusZ,
    /// `arcsin(√z) / √(z(1−z))`
    ArcsinOverSqrtZW,
    /// `arcsin(√z) / √z`
    ArcsinOverSqrt,
    /// `arctanh(√z) / √z`
    ArctanhOverSqrt,
    /// `(2/π) K(z)`, parameter convention `K(m) = ∫ (1 − m sin²t)^{−1/2} dt`
    EllipticK,
    /// `(2/π) E(z)`
    EllipticE,
    /// `log(1−z)`
    LogOneMinusZ,
}

impl BasisFunction {
    pub const ALL: [BasisFunction; 8] = [
        Self::One,
        Self::SqrtOneMinusZ,
        Self::ArcsinOverSqrtZW,
        Self::ArcsinOverSqrt,
        Self::ArctanhOverSqrt,
        Self::EllipticK,
        Self::EllipticE,
        Self::LogOneMinusZ,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::One => "ONE",
            Self::SqrtOneMinusZ => "SQRT1MZ",
            Self::ArcsinOverSqrtZW => "ASIN_OVER_SQRT_Z1MZ",
            Self::ArcsinOverSqrt => "ASIN_OVER_SQRT_Z",
            Self::ArctanhOverSqrt => "ATANH_OVER_SQRT_Z",
            Self::EllipticK => "KHAT",
            Self::EllipticE => "EHAT",
            Self::LogOneMinusZ => "LOG1MZ",
        }
    }

    /// Value at `z ∈ [0, 1)`, using limits at `z = 0`.
    pub fn eval(self, z: f64) -> Result<f64> {
        self.eval_dd(D::from(z)).map(|v| v.to_f64())
    }

    pub fn eval_dd(self, z: D) -> Result<D> {
        let zf = z.to_f64();
        if !(0.0..1.0).contains(&zf) {
            return Err(domain(format!("basis functions need z in [0, 1), got {zf}")));
        }
        let one = D::ONE;
        let w = one - z;
        Ok(match self {
            Self::One => one,
            Self::SqrtOneMinusZ => w.sqrt(),
            Self::ArcsinOverSqrtZW => asin_sqrt_over_sqrt(z) / w.sqrt(),
            Self::ArcsinOverSqrt => asin_sqrt_over_sqrt(z),
            Self::ArctanhOverSqrt => atanh_sqrt_over_sqrt(z),
            Self::EllipticK => elliptic_ke(z).0,
            Self::EllipticE => elliptic_ke(z).1,
            Self::LogOneMinusZ => (-z).ln_1p(),
        })
    }
}

impl fmt::Display for BasisFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for BasisFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown basis tag {s:?}")))
    }
}

/// Below this `z` the small-argument series are used.
const SMALL_Z: f64 = 1e-3;

/// `Σ c_k z^k` with `c_0 = 1` and `c_{k+1}/c_k = num(k)/den(k)`, both exact in f64.
fn series(z: D, ratio: impl Fn(f64) -> (f64, f64)) -> D {
    let mut term = D::ONE;
    let mut sum = D::ONE;
    for k in 0..200 {
        let (num, den) = ratio(k as f64);
        term = term * z * D::from(num) / D::from(den);
        sum = sum + term;
        if term.to_f64().abs() <= 1e-33 {
            break;
        }
    }
    sum
}

/// `arcsin(√z)/√z = Σ (1/2)_k/(k! (2k+1)) z^k`.
fn asin_sqrt_over_sqrt(z: D) -> D {
    if z.to_f64() < SMALL_Z {
        return series(z, |k| ((k + 0.5) * (k + 0.5), (k + 1.0) * (k + 1.5)));
    }
    let s = z.sqrt();
    (s / (D::ONE - z).sqrt()).atan() / s
}

/// `arctanh(√z)/√z = Σ z^k/(2k+1)`.
fn atanh_sqrt_over_sqrt(z: D) -> D {
    if z.to_f64() < SMALL_Z {
        return series(z, |k| (2.0 * k + 1.0, 2.0 * k + 3.0));
    }
    let s = z.sqrt();
    (s.ln_1p() - (-s).ln_1p()) * D::from(0.5) / s
}

/// `((2/π)K(m), (2/π)E(m))` by the arithmetic-geometric mean.
fn elliptic_ke(m: D) -> (D, D) {
    let mut a = D::ONE;
    let mut b = (D::ONE - m).sqrt();
    let mut c2_sum = m * D::from(0.5); // Σ 2^{n−1} c_n², c_0² = m
    let mut pow = 0.5;
    for _ in 0..64 {
        let c = (a - b) * D::from(0.5);
        pow *= 2.0;
        c2_sum = c2_sum + c * c * D::from(pow);
        let next_a = (a + b) * D::from(0.5);
        b = (a * b).sqrt();
        a = next_a;
        if c.to_f64().abs() <= 1e-33 * a.to_f64() {
            break;
        }
    }
    let k_hat = D::ONE / a;
    (k_hat, k_hat * (D::ONE - c2_sum))
}
