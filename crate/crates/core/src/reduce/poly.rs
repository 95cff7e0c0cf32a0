//! Exact univariate polynomials and rational functions in `z` over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

/// Dense polynomial, coefficient `i` multiplies `z^i`. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// `z`.
    pub fn z() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// `1 − z`.
    pub fn one_minus_z() -> Self {
        Self::new(vec![BigRational::one(), -BigRational::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn eval_exact(&self, z: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * z + c)
    }

    pub fn eval<R: Real>(&self, z: R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::from_f64(0.0), |acc, c| acc * z + R::from_ratio(c))
    }

    /// Value at `z = 1`.
    pub fn sum(&self) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let f = &rem[i + dd] / &lead;
            if !f.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &f * dc;
                }
            }
            quot[i] = f;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.primitive_part();
        }
        match a.leading().cloned() {
            Some(l) => a.scale(&l.recip()),
            None => a,
        }
    }

    /// Rescaled to integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.content().recip())
    }

    /// The rational `c` with `self / c` primitive integer and positive leading coefficient.
    pub fn content(&self) -> BigRational {
        let lcm_den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * BigRational::from_integer(lcm_den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if self.leading().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
        BigRational::new(g * sign, lcm_den)
    }

    /// Integer coefficients, valid when the polynomial is primitive.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.to_integer()).collect()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

impl fmt::Display for Poly {
    /// Descending powers: `3*z^2 - z + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
        }
        Ok(())
    }
}

/// `num / (z^zi (1−z)^wj)`: the only denominators the contiguous relations create.
/// Common factors of `z` and `1 − z` are cancelled after every operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Frac {
    pub num: Poly,
    pub zi: u32,
    pub wj: u32,
}

impl Frac {
    pub fn poly(num: Poly) -> Self {
        Self { num, zi: 0, wj: 0 }.reduced()
    }

    pub fn new(num: Poly, zi: u32, wj: u32) -> Self {
        Self { num, zi, wj }.reduced()
    }

    pub fn zero() -> Self {
        Self::poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::poly(Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.zi = 0;
            self.wj = 0;
            return self;
        }
        while self.zi > 0 && self.num.coeffs[0].is_zero() {
            self.num.coeffs.remove(0);
            self.zi -= 1;
        }
        while self.wj > 0 && self.num.sum().is_zero() {
            // num = (1 − z)·q  ⇔  q = −num / (z − 1)
            let (q, _) = self.num.div_rem(&Poly::from_ints(&[-1, 1]));
            self.num = -&q;
            self.wj -= 1;
        }
        self
    }

    /// Numerator rescaled to denominator `z^zi (1−z)^wj`.
    fn lifted(&self, zi: u32, wj: u32) -> Poly {
        let mut p = self.num.shift((zi - self.zi) as usize);
        for _ in self.wj..wj {
            p = &p * &Poly::one_minus_z();
        }
        p
    }

    pub fn add(&self, rhs: &Frac) -> Frac {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (zi, wj) = (self.zi.max(rhs.zi), self.wj.max(rhs.wj));
        Frac::new(&self.lifted(zi, wj) + &rhs.lifted(zi, wj), zi, wj)
    }

    pub fn mul(&self, rhs: &Frac) -> Frac {
        Frac::new(&self.num * &rhs.num, self.zi + rhs.zi, self.wj + rhs.wj)
    }

    pub fn scale(&self, k: &BigRational) -> Frac {
        Frac::new(self.num.scale(k), self.zi, self.wj)
    }

    /// `d/dz [N / (z^i w^j)] = (N' z w − i N w + j N z) / (z^{i+1} w^{j+1})`, `w = 1 − z`.
    pub fn derivative(&self) -> Frac {
        let zw = Poly::from_ints(&[0, 1, -1]);
        let i = BigRational::from_integer(self.zi.into());
        let j = BigRational::from_integer(self.wj.into());
        let num = &(&(&self.num.derivative() * &zw) - &(&self.num * &Poly::one_minus_z()).scale(&i))
            + &(&self.num * &Poly::z()).scale(&j);
        Frac::new(num, self.zi + 1, self.wj + 1)
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        let mut den = Poly::one();
        for _ in 0..self.zi {
            den = &den * &Poly::z();
        }
        for _ in 0..self.wj {
            den = &den * &Poly::one_minus_z();
        }
        RationalFunction::new(self.num.clone(), den).expect("nonzero denominator")
    }
}

/// `num / den` in lowest terms, both with integer coefficients, `den` primitive
/// with positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self { num, den: Poly::one() });
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        // Clear fractions jointly, remove the joint integer content, fix the sign.
        let all = || num.coeffs.iter().chain(&den.coeffs);
        let lcm = all().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let lcm_q = BigRational::from_integer(lcm);
        let g = all().fold(BigInt::zero(), |acc, c| acc.gcd(&(c * &lcm_q).to_integer()));
        let mut k = lcm_q / BigRational::from_integer(g);
        if den.leading().is_some_and(|l| l.is_negative()) {
            k = -k;
        }
        Ok(Self { num: num.scale(&k), den: den.scale(&k) })
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(Poly::constant(c), Poly::one()).expect("nonzero")
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn eval<R: Real>(&self, z: R) -> Result<R> {
        let d = self.den.eval(z);
        if d.to_f64() == 0.0 {
            return Err(Error::Pole(format!("coefficient denominator {} vanishes at z = {}", self.den, z.to_f64())));
        }
        Ok(self.num.eval(z) / d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_and_display() {
        let p = Poly::from_ints(&[1, -1, 3]);
        assert_eq!(p.to_string(), "3*z^2 - z + 1");
        assert_eq!((&p * &Poly::one_minus_z()).to_string(), "-3*z^3 + 4*z^2 - 2*z + 1");
        assert_eq!((&p - &p), Poly::zero());
        assert_eq!(p.derivative(), Poly::from_ints(&[-1, 6]));
        assert_eq!(Poly::new(vec![q(-1, 2), q(0, 1), q(1, 3)]).to_string(), "1/3*z^2 - 1/2");
    }

    #[test]
    fn division_and_gcd() {
        let a = &Poly::from_ints(&[1, 1]) * &Poly::from_ints(&[-2, 0, 1]);
        let b = &Poly::from_ints(&[1, 1]) * &Poly::from_ints(&[5, 1]);
        assert_eq!(Poly::gcd(&a, &b), Poly::from_ints(&[1, 1]));
        let (qt, r) = a.div_rem(&Poly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(qt, Poly::from_ints(&[-2, 0, 1]));
    }

    #[test]
    fn content_gives_primitive_integer_polys() {
        let p = Poly::new(vec![q(-1, 2), q(3, 4)]);
        assert_eq!(p.primitive_part(), Poly::from_ints(&[-2, 3]));
        let p = Poly::new(vec![q(6, 1), q(-4, 1)]);
        assert_eq!(p.primitive_part(), Poly::from_ints(&[-3, 2]));
    }

    #[test]
    fn rational_function_is_canonical() {
        let num = &Poly::from_ints(&[0, 2]) * &Poly::one_minus_z();
        let den = Poly::new(vec![q(0, 1), q(0, 1), q(-1, 3)]);
        let r = RationalFunction::new(num, den).unwrap();
        // 2z(1−z) / (−z²/3) = (6z − 6)/z
        assert_eq!(r.to_string(), "(6*z - 6)/(z)");
        assert!(RationalFunction::new(Poly::one(), Poly::zero()).is_err());
        assert!(r.eval(0.0).is_err());
        assert_eq!(r.eval(0.5).unwrap(), -6.0);
    }

    #[test]
    fn frac_cancels_z_and_one_minus_z() {
        let f = Frac::new(Poly::from_ints(&[0, 1, -1]), 2, 1);
        assert_eq!(f, Frac::new(Poly::one(), 1, 0));
        let g = Frac::new(Poly::one(), 1, 1).add(&Frac::new(Poly::from_ints(&[-1]), 1, 0));
        // 1/(z(1−z)) − 1/z = z/(z(1−z)) = 1/(1−z)
        assert_eq!(g, Frac::new(Poly::one(), 0, 1));
    }

    #[test]
    fn frac_derivative() {
        // d/dz 1/(z(1−z)) = (2z − 1)/(z²(1−z)²)
        let f = Frac::new(Poly::one(), 1, 1).derivative();
        assert_eq!(f, Frac::new(Poly::from_ints(&[-1, 2]), 2, 2));
        let z = 0.3f64;
        let num = f.num.eval(z) / (z.powi(f.zi as i32) * (1.0 - z).powi(f.wj as i32));
        assert!((num - (2.0 * z - 1.0) / (z * z * (1.0 - z) * (1.0 - z))).abs() < 1e-12);
    }
}
