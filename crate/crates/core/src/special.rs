//! Exact and floating-point primitives: half-integers, gamma at half-integer
//! arguments, hypersphere volumes, generalised binomials, Pochhammer symbols
//! and direct series for 2F1 / terminating 3F2.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::real::{DoubleDouble, Real};

/// An element of ℤ ∪ (ℤ + ½), stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        Self { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// True for the proper half-integers ℤ + ½.
    pub const fn is_proper_half(self) -> bool {
        self.twice % 2 != 0
    }

    /// True for 0, −1, −2, …
    pub const fn is_nonpositive_integer(self) -> bool {
        self.is_integer() && self.twice <= 0
    }

    /// The integer value, if this is an integer.
    pub const fn as_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn to_ratio(self) -> BigRational {
        BigRational::new(BigInt::from(self.twice), BigInt::from(2))
    }
}

impl Add for HalfInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_twice(self.twice - rhs.twice)
    }
}

impl Add<i64> for HalfInt {
    type Output = Self;
    fn add(self, rhs: i64) -> Self {
        Self::from_twice(self.twice + 2 * rhs)
    }
}

impl Sub<i64> for HalfInt {
    type Output = Self;
    fn sub(self, rhs: i64) -> Self {
        Self::from_twice(self.twice - 2 * rhs)
    }
}

impl Neg for HalfInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"3"`, `"-2"`, `"3/2"`, `"-7/2"`, `"1.5"`, `"-0.5"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("{s:?} is not an integer or half-integer"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            return match den {
                1 => Ok(Self::from_int(num)),
                2 => Ok(Self::from_twice(num)),
                -1 => Ok(Self::from_int(-num)),
                -2 => Ok(Self::from_twice(-num)),
                _ if den != 0 && (2 * num) % den == 0 => Ok(Self::from_twice(2 * num / den)),
                _ => Err(bad()),
            };
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(Self::from_int(n));
        }
        let x: f64 = s.parse().map_err(|_| bad())?;
        let twice = 2.0 * x;
        if twice.fract() == 0.0 && twice.abs() < 1e15 {
            Ok(Self::from_twice(twice as i64))
        } else {
            Err(bad())
        }
    }
}

/// Hypersphere S^n_R of dimension `n ≥ 2` and radius `R > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereGeometry {
    n: u32,
    radius: f64,
}

impl SphereGeometry {
    pub fn new(n: u32, radius: f64) -> Result<Self> {
        if n < 2 {
            return Err(domain(format!("dimension n must be at least 2, got {n}")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(domain(format!("radius R must be positive and finite, got {radius}")));
        }
        Ok(Self { n, radius })
    }

    pub fn unit(n: u32) -> Result<Self> {
        Self::new(n, 1.0)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `S_n R^n`.
    pub fn volume(&self) -> f64 {
        sphere_volume(self.n) * self.radius.powi(self.n as i32)
    }

    /// The constant `a = 1/(S_n R^n)` on the right-hand side of `−ΔG = δ − a`.
    pub fn normalization(&self) -> f64 {
        1.0 / self.volume()
    }

    /// `R^{2−n}/S_n`, the factor relating `G_n` to the dimensionless `J_n`.
    pub fn green_prefactor(&self) -> f64 {
        self.radius.powi(2 - self.n as i32) / sphere_volume(self.n)
    }

    pub(crate) fn green_prefactor_in<R: Real>(&self) -> R {
        R::from_f64(self.radius).powi(2 - self.n as i32) / sphere_volume_in::<R>(self.n)
    }
}

/// Γ(x) for integer or half-integer `x`, by exact recursion from Γ(1) or Γ(½).
pub fn gamma_half(x: HalfInt) -> Result<f64> {
    if x.is_nonpositive_integer() {
        return Err(Error::Pole(format!("gamma({x})")));
    }
    let (mut value, mut arg) = if x.is_integer() {
        (1.0, HalfInt::from_int(1))
    } else {
        (std::f64::consts::PI.sqrt(), HalfInt::from_twice(1))
    };
    while arg < x {
        value *= arg.to_f64();
        arg = arg + 1;
    }
    while arg > x {
        arg = arg - 1;
        value /= arg.to_f64();
    }
    Ok(value)
}

/// `S_n = c π^k` with exact rational `c`: volume of the unit n-sphere.
pub fn sphere_volume_parts(n: u32) -> (BigRational, u32) {
    let two = BigRational::from_integer(BigInt::from(2));
    if n % 2 == 1 {
        // (n+1)/2 = m+1 is an integer: S_n = 2π^{m+1}/m!
        let m = (n - 1) / 2;
        let fact: BigInt = (1..=m).map(BigInt::from).product();
        (two / BigRational::from_integer(fact), m + 1)
    } else {
        // (n+1)/2 = m + ½: Γ(m+½) = (2m)! √π / (4^m m!), so S_n = 2π^m 4^m m!/(2m)!
        let m = n / 2;
        let fact_m: BigInt = (1..=m).map(BigInt::from).product();
        let fact_2m: BigInt = (1..=2 * m).map(BigInt::from).product();
        let four_m = BigInt::from(4).pow(m);
        (two * BigRational::new(four_m * fact_m, fact_2m), m)
    }
}

/// Volume of the unit n-sphere, `2π^{(n+1)/2}/Γ((n+1)/2)`.
pub fn sphere_volume(n: u32) -> f64 {
    sphere_volume_in::<f64>(n)
}

pub(crate) fn sphere_volume_in<R: Real>(n: u32) -> R {
    let (coef, power) = sphere_volume_parts(n);
    R::from_ratio(&coef) * R::pi().powi(power as i32)
}

/// Rising factorial `(a)_k` over the rationals.
pub fn pochhammer_ratio(a: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut t = a.clone();
    for _ in 0..k {
        acc *= &t;
        t += BigRational::one();
    }
    acc
}

/// Rising factorial `(a)_k` in floating point.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

/// Generalised binomial `x(x−1)⋯(x−j+1)/j!` as an exact rational.
pub fn gen_binomial(x: HalfInt, j: u32) -> BigRational {
    let x = x.to_ratio();
    let mut acc = BigRational::one();
    for i in 0..j {
        acc *= &x - BigRational::from_integer(BigInt::from(i));
        acc /= BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

fn as_nonpositive_integer(x: f64) -> Option<u64> {
    (x <= 0.0 && x.fract() == 0.0 && x > -1e15).then(|| (-x) as u64)
}

/// Degree at which a series with the given upper parameters terminates.
fn termination_degree(upper: &[f64]) -> Option<u64> {
    upper.iter().filter_map(|&a| as_nonpositive_integer(a)).min()
}

/// Any lower parameter whose Pochhammer symbol vanishes before term `degree`.
fn lower_pole(lower: &[f64], degree: Option<u64>) -> Option<f64> {
    lower.iter().copied().find(|&b| match (as_nonpositive_integer(b), degree) {
        (Some(q), Some(p)) => q < p,
        (Some(_), None) => true,
        (None, _) => false,
    })
}

pub const SERIES_TERM_CAP: usize = 10_000;

/// Direct power series for ₂F₁(a, b; c; z).
///
/// Terminating series are summed to the last term. Otherwise summation stops
/// once the terms are decreasing and `|term| ≤ tol·|partial sum|`. Terms are
/// accumulated in double-double so that alternating series with large
/// intermediate terms keep full f64 accuracy.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, z: f64, tol: f64) -> Result<f64> {
    let degree = termination_degree(&[a, b]);
    if let Some(pole) = lower_pole(&[c], degree) {
        return Err(Error::Pole(format!("c = {pole} in 2F1")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if degree.is_none() && z.abs() >= 1.0 {
        return Err(Error::Divergent(z.abs()));
    }
    let [a, b, c, z] = [a, b, c, z].map(DoubleDouble::from);
    let mut term = DoubleDouble::ONE;
    let mut sum = DoubleDouble::ONE;
    if let Some(p) = degree {
        for k in 0..p {
            let k = DoubleDouble::from(k as f64);
            term = term * (a + k) * (b + k) / ((c + k) * (k + 1.0.into())) * z;
            sum = sum + term;
        }
        return Ok(sum.to_f64());
    }
    let mut prev = f64::INFINITY;
    for k in 0..SERIES_TERM_CAP {
        let k = DoubleDouble::from(k as f64);
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1.0.into())) * z;
        sum = sum + term;
        let t = term.hi().abs();
        if t < prev && t <= tol * sum.hi().abs() {
            return Ok(sum.to_f64());
        }
        prev = t;
    }
    Err(Error::ConvergenceFailure(SERIES_TERM_CAP))
}

/// Terminating ₃F₂(a1, a2, a3; b1, b2; z), summed exactly term by term.
pub fn hyp3f2_terminating(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64, z: f64) -> Result<f64> {
    let degree = termination_degree(&[a1, a2, a3]).ok_or(Error::NotTerminating)?;
    if let Some(pole) = lower_pole(&[b1, b2], Some(degree)) {
        return Err(Error::Pole(format!("lower parameter {pole} in 3F2")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..degree {
        let k = k as f64;
        term *= (a1 + k) * (a2 + k) * (a3 + k) / ((b1 + k) * (b2 + k) * (k + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

/// Exact coefficients `c_k` of a terminating ₃F₂ viewed as a polynomial in z.
pub fn hyp3f2_coefficients(upper: [&BigRational; 3], lower: [&BigRational; 2], degree: u32) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(degree as usize + 1);
    let mut c = BigRational::one();
    out.push(c.clone());
    for k in 0..degree {
        let kq = BigRational::from_integer(BigInt::from(k));
        let num = (upper[0] + &kq) * (upper[1] + &kq) * (upper[2] + &kq);
        let den = (lower[0] + &kq) * (lower[1] + &kq) * (&kq + BigRational::one());
        if den.is_zero() {
            break;
        }
        c = c * num / den;
        out.push(c.clone());
    }
    out
}
