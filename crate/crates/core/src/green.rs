//! Evaluation of the zonal Green's function `G_n(θ)` on `S^n_R`.
//!
//! With `I_m(φ) = ∫_φ^π sin^{m−1}ψ dψ` and `J_m(θ) = ∫_θ^π I_m(φ)/sin^{m−1}φ dφ`,
//! the Green's function is `G_n(θ) = R^{2−n} J_n(θ) / S_n`. Everything here is
//! generic over [`Real`] so the same formulas run in `f64` for production and
//! in double-double where finite differences need the extra digits.
//!
//! Closed forms used:
//!
//! * even `n = 2m`, with `r = cot(θ/2)`:
//!   `J = Σ_{k=0}^{m−2} e_k r^{2k+2} + log(1+r²)/(2m−1)`, a terminating ₃F₂
//!   with `e_k = (m−1)/(m(2m−1)) · (−1)^k (2−m)_k / ((k+1)(1+m)_k)`, all positive.
//! * odd `n = 2m+1`, with `y = csc²θ` and `c = 1 + (π−θ)cot θ`:
//!   `J = (1/2m)[c Σ_k binom(k−½, k) y^k − Σ_k Σ_{l=1}^k binom(k−½, k) y^{k−l} / (3 binom(l+½, l−1))]`.
//! * odd, `π/2 < θ < π` with `T = tan²θ ≤ 3/4`:
//!   `J = (1/4m)[log(1+T) − T/(2m+1) Σ_k t_k (−T)^k]`,
//!   `t_k = (3/2)_k / ((m+3/2)_k (k+1))`. The y-form cancels catastrophically as
//!   θ → π; this series does not.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::real::{DoubleDouble, Real};
use crate::special::{gen_binomial, sphere_volume_in, HalfInt, SphereGeometry};

/// Above this angle `I_m` is summed from its power series in `sin²φ`.
const SERIES_SWITCH: f64 = 3.0 * std::f64::consts::FRAC_PI_4;

/// The odd closed form switches to the `T = tan²θ` series once `T` drops below this.
const T_FORM_MAX: f64 = 0.75;

/// Past `π − ANTIPODE_BAND` the `J` recurrence is carried out in double-double.
const ANTIPODE_BAND: f64 = 1e-3;

const SERIES_CAP: usize = 10_000;

/// Geodesic angle from the source, `0 < θ ≤ π`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct PolarAngle {
    theta: f64,
}

impl PolarAngle {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta <= std::f64::consts::PI) {
            return Err(domain(format!("angle must lie in (0, π], got {theta}")));
        }
        Ok(Self { theta })
    }

    pub fn from_degrees(deg: f64) -> Result<Self> {
        if deg == 180.0 {
            return Ok(Self::antipode());
        }
        Self::new(deg.to_radians())
    }

    pub fn antipode() -> Self {
        Self { theta: std::f64::consts::PI }
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn is_antipode(self) -> bool {
        self.theta == std::f64::consts::PI
    }

    /// Stereographic radius `cot(θ/2)`.
    pub fn r(self) -> f64 {
        let h = 0.5 * self.theta;
        h.cos() / h.sin()
    }

    /// `tan²θ`; infinite at θ = π/2.
    pub fn t(self) -> f64 {
        self.theta.tan().powi(2)
    }

    /// `csc²θ`.
    pub fn y(self) -> f64 {
        self.theta.sin().powi(-2)
    }

    /// `π − θ`, or `None` at the antipode.
    pub fn supplement(self) -> Option<Self> {
        Self::new(std::f64::consts::PI - self.theta).ok()
    }
}

/// How a value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    EvenClosed,
    OddClosed,
    Recurrence,
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::EvenClosed => "even-closed",
            Method::OddClosed => "odd-closed",
            Method::Recurrence => "recurrence",
            Method::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenEvaluation {
    pub value: f64,
    pub method: Method,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn half<R: Real>() -> R {
    R::from_f64(0.5)
}

/// Exact coefficients `e_0..e_{m−2}` of the even closed form.
fn even_coefficients(m: u32) -> Vec<BigRational> {
    let m_i = m as i64;
    let lead = q(m_i - 1, m_i * (2 * m_i - 1));
    let mut rising_num = BigRational::one(); // (2−m)_k (−1)^k = (m−2)(m−3)⋯
    let mut rising_den = BigRational::one(); // (1+m)_k
    let mut out = Vec::new();
    for k in 0..m.saturating_sub(1) as i64 {
        out.push(&lead * &rising_num / (&rising_den * q(k + 1, 1)));
        rising_num *= q(m_i - 2 - k, 1);
        rising_den *= q(1 + m_i + k, 1);
    }
    out
}

/// Exact polynomials `P`, `Q` in `y` with `J_{2m+1} = (c P(y) − Q(y)) / 2m`.
fn odd_coefficients(m: u32) -> (Vec<BigRational>, Vec<BigRational>) {
    let b: Vec<BigRational> = (0..m as i64)
        .map(|k| gen_binomial(HalfInt::from_twice(2 * k - 1), k as u32))
        .collect();
    let mut qpoly = vec![BigRational::from_integer(0.into()); m as usize];
    for k in 1..m as usize {
        for l in 1..=k {
            let d = gen_binomial(HalfInt::from_twice(2 * l as i64 + 1), l as u32 - 1) * q(3, 1);
            qpoly[k - l] += &b[k] / d;
        }
    }
    (b, qpoly)
}

fn horner<R: Real>(coeffs: &[BigRational], x: R) -> R {
    coeffs
        .iter()
        .rev()
        .fold(R::from_f64(0.0), |acc, c| acc * x + R::from_ratio(c))
}

/// Even closed form `J_{2m}(θ)`.
pub fn j_even<R: Real>(m: u32, theta: R) -> R {
    let h = theta * half::<R>();
    let r = h.cos() / h.sin();
    let r2 = r * r;
    r2 * horner(&even_coefficients(m), r2) + r2.ln_1p() / R::from_i64(2 * m as i64 - 1)
}

/// Odd closed form `J_{2m+1}(θ)`, switching to the `tan²θ` series near π.
pub fn j_odd<R: Real>(m: u32, theta: R) -> R {
    let (s, c) = (theta.sin(), theta.cos());
    let tf = theta.to_f64();
    if tf > std::f64::consts::FRAC_PI_2 {
        let tan = s / c;
        let t = tan * tan;
        if t.to_f64() <= T_FORM_MAX {
            return j_odd_t_form(m, t);
        }
    }
    let y = R::from_f64(1.0) / (s * s);
    let cfac = R::from_f64(1.0) + (R::pi() - theta) * c / s;
    let (p, qp) = odd_coefficients(m);
    (cfac * horner(&p, y) - horner(&qp, y)) / R::from_i64(2 * m as i64)
}

fn j_odd_t_form<R: Real>(m: u32, t: R) -> R {
    let mf = m as f64;
    let mut term = R::from_f64(1.0);
    let mut sum = term;
    for k in 0..SERIES_CAP {
        let kf = k as f64;
        let ratio = R::from_f64((1.5 + kf) * (kf + 1.0)) / R::from_f64((mf + 1.5 + kf) * (kf + 2.0));
        term = -(term * t * ratio);
        sum = sum + term;
        if term.to_f64().abs() <= R::EPSILON * sum.to_f64().abs() {
            break;
        }
    }
    (t.ln_1p() - t * sum / R::from_f64(2.0 * mf + 1.0)) / R::from_f64(4.0 * mf)
}

/// Dimensionless `J_n(θ)` from the appropriate closed form.
pub fn j_closed<R: Real>(n: u32, theta: R) -> R {
    if theta.to_f64() >= std::f64::consts::PI {
        return R::from_f64(0.0);
    }
    if n % 2 == 0 {
        j_even(n / 2, theta)
    } else {
        j_odd(n / 2, theta)
    }
}

/// `G_n` for an angle carried in any [`Real`].
pub fn green_in<R: Real>(geom: &SphereGeometry, theta: R) -> R {
    geom.green_prefactor_in::<R>() * j_closed(geom.n(), theta)
}

/// `I_m(φ)` by power series in `s = sin φ`: `(s^m/m) ₂F₁(½, m/2; m/2+1; s²)`.
/// Only valid for `φ ≥ π/2`.
fn i_series<R: Real>(m: u32, phi: R) -> R {
    let s = phi.sin();
    let s2 = s * s;
    let mf = m as f64;
    let mut term = R::from_f64(1.0);
    let mut sum = term;
    for k in 0..SERIES_CAP {
        let kf = k as f64;
        let ratio = R::from_f64((0.5 + kf) * (0.5 * mf + kf)) / R::from_f64((0.5 * mf + 1.0 + kf) * (kf + 1.0));
        term = term * s2 * ratio;
        sum = sum + term;
        if term.to_f64().abs() <= R::EPSILON * sum.to_f64().abs() {
            break;
        }
    }
    s.powi(m as i32) * sum / R::from_f64(mf)
}

/// `[I_1(φ), …, I_{m_max}(φ)]`.
pub fn integral_i_all<R: Real>(m_max: u32, phi: R) -> Vec<R> {
    let mut out = Vec::with_capacity(m_max as usize);
    if phi.to_f64() >= SERIES_SWITCH {
        out.push(R::pi() - phi);
        out.extend((2..=m_max).map(|m| i_series(m, phi)));
        out.truncate(m_max as usize);
        return out;
    }
    let (s, c) = (phi.sin(), phi.cos());
    let hc = (phi * half::<R>()).cos();
    for m in 1..=m_max {
        let v = match m {
            1 => R::pi() - phi,
            2 => R::from_f64(2.0) * hc * hc,
            _ => {
                let mm = R::from_i64(m as i64 - 1);
                R::from_i64(m as i64 - 2) / mm * out[m as usize - 3] + s.powi(m as i32 - 2) * c / mm
            }
        };
        out.push(v);
    }
    out
}

/// `I_m(φ) = ∫_φ^π sin^{m−1}ψ dψ`.
pub fn integral_i(m: u32, phi: PolarAngle) -> Result<f64> {
    if m == 0 {
        return Err(domain("m must be at least 1"));
    }
    if phi.is_antipode() {
        return Ok(0.0);
    }
    Ok(integral_i_all::<f64>(m, phi.theta())[m as usize - 1])
}

/// `J_m(θ)` from the two-step recurrence in `m`, generic over the arithmetic.
pub fn j_recurrence<R: Real>(m: u32, theta: R) -> R {
    let i = integral_i_all(m.saturating_sub(2).max(1), theta);
    let (s, c) = (theta.sin(), theta.cos());
    let eps = R::pi() - theta;
    let sh = (theta * half::<R>()).sin();
    let mut j = [eps * eps * half::<R>(), -(R::from_f64(2.0) * sh.ln())];
    for k in 3..=m {
        let kk = R::from_i64(k as i64 - 1);
        let idx = ((k - 1) % 2) as usize;
        j[idx] = R::from_i64(k as i64 - 3) / kk * j[idx]
            + c * i[k as usize - 3] / (kk * s.powi(k as i32 - 2))
            + R::from_f64(1.0) / (kk * R::from_i64(k as i64 - 2));
    }
    j[((m - 1) % 2) as usize]
}

/// `J_m(θ)` via the recurrence; double-double within `10⁻³` of the antipode.
pub fn integral_j_recurrence(m: u32, theta: PolarAngle) -> Result<f64> {
    if m == 0 {
        return Err(domain("m must be at least 1"));
    }
    if theta.is_antipode() {
        return Ok(0.0);
    }
    let t = theta.theta();
    if t > std::f64::consts::PI - ANTIPODE_BAND {
        Ok(j_recurrence(m, DoubleDouble::from(t)).to_f64())
    } else {
        Ok(j_recurrence(m, t))
    }
}

/// Green's function on `S^{2m}_R` from the even closed form.
pub fn green_even(m: u32, theta: PolarAngle, geom: &SphereGeometry) -> Result<GreenEvaluation> {
    if m == 0 || geom.n() != 2 * m {
        return Err(domain(format!("even form needs n = 2m with m ≥ 1, got n = {}, m = {m}", geom.n())));
    }
    Ok(GreenEvaluation { value: green(geom, theta).value, method: Method::EvenClosed })
}

/// Green's function on `S^{2m+1}_R` from the odd closed form.
pub fn green_odd(m: u32, theta: PolarAngle, geom: &SphereGeometry) -> Result<GreenEvaluation> {
    if m == 0 || geom.n() != 2 * m + 1 {
        return Err(domain(format!("odd form needs n = 2m+1 with m ≥ 1, got n = {}, m = {m}", geom.n())));
    }
    Ok(GreenEvaluation { value: green(geom, theta).value, method: Method::OddClosed })
}

/// `G_n(θ)`, non-negative and exactly zero at the antipode.
pub fn green(geom: &SphereGeometry, theta: PolarAngle) -> GreenEvaluation {
    let method = if geom.n() % 2 == 0 { Method::EvenClosed } else { Method::OddClosed };
    let value = if theta.is_antipode() {
        0.0
    } else {
        green_in(geom, theta.theta()).max(0.0)
    };
    GreenEvaluation { value, method }
}

/// `R^{2−n} J_n(θ) / S_n` with `J_n` from the recurrence rather than a closed form.
pub fn green_recurrence(geom: &SphereGeometry, theta: PolarAngle) -> GreenEvaluation {
    let j = integral_j_recurrence(geom.n(), theta).expect("n ≥ 2");
    GreenEvaluation { value: geom.green_prefactor() * j, method: Method::Recurrence }
}

/// `dG/dθ = −(R^{2−n}/S_n) I_n(θ) / sin^{n−1}θ`; strictly negative on (0, π).
pub fn green_derivative(geom: &SphereGeometry, theta: PolarAngle) -> f64 {
    if theta.is_antipode() {
        return 0.0;
    }
    derivative_in(geom, theta.theta())
}

fn derivative_in<R: Real>(geom: &SphereGeometry, theta: R) -> R {
    let n = geom.n();
    let i = integral_i_all(n, theta)[n as usize - 1];
    -(geom.green_prefactor_in::<R>() * i / theta.sin().powi(n as i32 - 1))
}

/// Number of halvings of `h` in the Richardson tableau of [`pde_residual`].
const RICHARDSON_LEVELS: usize = 5;

/// Finite-difference residual of `f'' + (n−1) cot θ f' = 1/(S_n R^{n−2})` at θ.
///
/// Central differences with step `h` are Richardson-extrapolated over
/// `h, h/2, …, h/16`, with `G` and the stencil nodes evaluated in
/// double-double so rounding in the difference quotients stays negligible.
pub fn pde_residual(geom: &SphereGeometry, theta: PolarAngle, h: f64) -> Result<f64> {
    let t = theta.theta();
    if !(h > 0.0 && t > h && t < std::f64::consts::PI - h) {
        return Err(domain(format!("need 0 < h < θ < π − h, got θ = {t}, h = {h}")));
    }
    type D = DoubleDouble;
    let td = D::from(t);
    let f0 = green_in(geom, td);
    let mut d1 = Vec::with_capacity(RICHARDSON_LEVELS);
    let mut d2 = Vec::with_capacity(RICHARDSON_LEVELS);
    for j in 0..RICHARDSON_LEVELS {
        let hj = D::from(h) / D::from((1u64 << j) as f64);
        let fp = green_in(geom, td + hj);
        let fm = green_in(geom, td - hj);
        d1.push((fp - fm) / (D::from(2.0) * hj));
        d2.push((fp - D::from(2.0) * f0 + fm) / (hj * hj));
    }
    let d1 = richardson(d1);
    let d2 = richardson(d2);
    let n = geom.n();
    let cot = td.cos() / td.sin();
    let rhs = D::ONE / (sphere_volume_in::<D>(n) * D::from(geom.radius()).powi(n as i32 - 2));
    Ok((d2 + D::from((n - 1) as f64) * cot * d1 - rhs).to_f64())
}

/// Extrapolates a sequence of even-order estimates at steps `h/2^j` to `h → 0`.
fn richardson<R: Real>(mut row: Vec<R>) -> R {
    let mut factor = 4.0;
    while row.len() > 1 {
        row = row
            .windows(2)
            .map(|w| w[1] + (w[1] - w[0]) / R::from_f64(factor - 1.0))
            .collect();
        factor *= 4.0;
    }
    row[0]
}

impl From<PolarAngle> for f64 {
    fn from(a: PolarAngle) -> f64 {
        a.theta
    }
}

impl TryFrom<f64> for PolarAngle {
    type Error = Error;
    fn try_from(theta: f64) -> Result<Self> {
        Self::new(theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn ang(t: f64) -> PolarAngle {
        PolarAngle::new(t).unwrap()
    }

    fn geom(n: u32, r: f64) -> SphereGeometry {
        SphereGeometry::new(n, r).unwrap()
    }

    fn grid() -> impl Iterator<Item = f64> {
        (0..20).map(|i| 0.05 + (PI - 0.1) * i as f64 / 19.0)
    }

    #[test]
    fn polar_angle_validation_and_accessors() {
        assert!(PolarAngle::new(0.0).is_err());
        assert!(PolarAngle::new(3.2).is_err());
        assert!(PolarAngle::new(f64::NAN).is_err());
        let a = ang(FRAC_PI_2);
        assert_relative_eq!(a.r(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(a.y(), 1.0, max_relative = 1e-15);
        assert!(PolarAngle::antipode().supplement().is_none());
        assert_eq!(PolarAngle::from_degrees(180.0).unwrap(), PolarAngle::antipode());
        assert_relative_eq!(ang(PI / 3.0).t(), 3.0, max_relative = 1e-14);
    }

    #[test]
    fn integral_i_examples() {
        assert_relative_eq!(integral_i(1, ang(1e-300)).unwrap(), PI, max_relative = 1e-15);
        assert_eq!(integral_i(2, PolarAngle::antipode()).unwrap(), 0.0);
        assert_relative_eq!(integral_i(3, ang(FRAC_PI_2)).unwrap(), PI / 4.0, max_relative = 1e-15);
        assert!(integral_i(0, ang(1.0)).is_err());
    }

    #[test]
    fn integral_i_series_and_recurrence_agree_at_the_switch() {
        for m in 1..=14 {
            let rec = integral_i_all::<DoubleDouble>(m, DoubleDouble::from(2.3))[m as usize - 1];
            let ser = if m == 1 { DoubleDouble::pi() - DoubleDouble::from(2.3) } else { i_series(m, DoubleDouble::from(2.3)) };
            assert!(((rec - ser) / ser).to_f64().abs() < 1e-28, "m = {m}: {:e}", ((rec - ser) / ser).to_f64());
        }
    }

    #[test]
    fn integral_j_examples() {
        assert_eq!(integral_j_recurrence(1, PolarAngle::antipode()).unwrap(), 0.0);
        assert_relative_eq!(integral_j_recurrence(2, ang(FRAC_PI_2)).unwrap(), 2f64.ln(), max_relative = 1e-15);
        assert_relative_eq!(integral_j_recurrence(3, ang(FRAC_PI_2)).unwrap(), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn even_coefficients_start_at_one_sixth() {
        assert_eq!(even_coefficients(2), vec![q(1, 6)]);
        assert!(even_coefficients(1).is_empty());
        assert!(even_coefficients(7).iter().all(|c| *c > q(0, 1)));
    }

    #[test]
    fn odd_coefficients_for_five_dimensions() {
        let (p, qp) = odd_coefficients(2);
        assert_eq!(p, vec![q(1, 1), q(1, 2)]);
        assert_eq!(qp, vec![q(1, 6), q(0, 1)]);
    }

    #[test]
    fn green_even_examples() {
        let g2 = green_even(1, ang(FRAC_PI_2), &geom(2, 1.0)).unwrap();
        assert_eq!(g2.method, Method::EvenClosed);
        assert_relative_eq!(g2.value, 2f64.ln() / (4.0 * PI), max_relative = 1e-15);
        assert_relative_eq!(g2.value, 0.055_158_900_04, max_relative = 1e-9);
        assert_eq!(green_even(1, PolarAngle::antipode(), &geom(2, 1.0)).unwrap().value, 0.0);
        let g4 = green_even(2, ang(FRAC_PI_2), &geom(4, 1.0)).unwrap().value;
        let s4 = 8.0 * PI * PI / 3.0;
        assert_relative_eq!(g4, (2f64.ln() + 0.5) / (3.0 * s4), max_relative = 1e-15);
        assert_relative_eq!(g4, 0.015_111_3, max_relative = 1e-5);
        assert!(green_even(2, ang(1.0), &geom(5, 1.0)).is_err());
    }

    #[test]
    fn green_odd_examples() {
        let g3 = green_odd(1, ang(FRAC_PI_2), &geom(3, 1.0)).unwrap();
        assert_eq!(g3.method, Method::OddClosed);
        assert_relative_eq!(g3.value, 1.0 / (4.0 * PI * PI), max_relative = 1e-15);
        assert_relative_eq!(g3.value, 0.025_330_295_9, max_relative = 1e-9);
        let g5 = green_odd(2, ang(FRAC_PI_2), &geom(5, 1.0)).unwrap().value;
        assert_relative_eq!(g5, 1.0 / (3.0 * PI.powi(3)), max_relative = 1e-15);
        assert_relative_eq!(g5, 0.010_750_511_48, max_relative = 1e-9);
        let near = green_odd(1, ang(PI - 1e-9), &geom(3, 1.0)).unwrap().value;
        assert!((0.0..1e-18).contains(&near));
        assert_eq!(green_odd(1, PolarAngle::antipode(), &geom(3, 1.0)).unwrap().value, 0.0);
    }

    #[test]
    fn green_dispatch_and_radius_scaling() {
        let g = green(&geom(2, 1.0), ang(FRAC_PI_2));
        assert_eq!(g, green_even(1, ang(FRAC_PI_2), &geom(2, 1.0)).unwrap());
        let g3 = green(&geom(3, 2.0), ang(FRAC_PI_2));
        assert_relative_eq!(g3.value, 0.5 / (4.0 * PI * PI), max_relative = 1e-15);
    }

    #[test]
    fn derivative_examples() {
        assert_relative_eq!(green_derivative(&geom(2, 1.0), ang(FRAC_PI_2)), -1.0 / (4.0 * PI), max_relative = 1e-15);
        assert_relative_eq!(green_derivative(&geom(3, 1.0), ang(FRAC_PI_2)), -1.0 / (8.0 * PI), max_relative = 1e-15);
        for n in 2..8 {
            assert_eq!(green_derivative(&geom(n, 1.0), PolarAngle::antipode()), 0.0);
        }
    }

    #[test]
    fn pde_residual_examples() {
        for (n, t) in [(2, FRAC_PI_2), (5, 1.0), (3, FRAC_PI_2)] {
            let g = geom(n, 1.0);
            let a_r2 = g.normalization();
            let res = pde_residual(&g, ang(t), 1e-4).unwrap();
            assert!(res.abs() <= 1e-5 * a_r2 + 1e-8, "n = {n}: {res}");
        }
        assert!(pde_residual(&geom(3, 1.0), ang(1e-5), 1e-4).is_err());
    }

    #[test]
    fn t_form_matches_y_form_in_double_double() {
        for m in 1..=6 {
            for t in [1.8, 2.3, 2.5, 2.7] {
                let td = DoubleDouble::from(t);
                let (s, c) = (td.sin(), td.cos());
                let tt = (s / c) * (s / c);
                if tt.to_f64() > 0.9 {
                    continue;
                }
                let via_t = j_odd_t_form(m, tt);
                let y = DoubleDouble::ONE / (s * s);
                let cfac = DoubleDouble::ONE + (DoubleDouble::pi() - td) * c / s;
                let (p, qp) = odd_coefficients(m);
                let via_y = (cfac * horner(&p, y) - horner(&qp, y)) / DoubleDouble::from(2.0 * m as f64);
                assert!(((via_t - via_y) / via_y).to_f64().abs() < 1e-24, "m = {m}, θ = {t}");
            }
        }
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for n in 2..=12 {
            let g = geom(n, 1.0);
            for t in grid().chain([1e-3, PI - 1e-4, PI - 1e-7]) {
                let a = green(&g, ang(t)).value;
                let b = green_recurrence(&g, ang(t)).value;
                assert!((a - b).abs() <= 1e-11 * a.abs(), "n = {n}, θ = {t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn f64_matches_double_double() {
        for n in 2..=14 {
            let g = geom(n, 1.0);
            for t in grid().chain([1e-3, 1.6, 2.3, PI - 1e-6]) {
                let a = green_in(&g, t);
                let b = green_in(&g, DoubleDouble::from(t)).to_f64();
                assert!((a - b).abs() <= 1e-13 * b.abs(), "n = {n}, θ = {t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn positive_decreasing_with_quadratic_zero() {
        for n in 2..=9 {
            let g = geom(n, 1.0);
            let vals: Vec<f64> = (1..400).map(|i| green(&g, ang(PI * i as f64 / 400.0)).value).collect();
            assert!(vals.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0), "n = {n}");
            for eps in [1e-2, 1e-3, 1e-4] {
                let ratio = green(&g, ang(PI - eps)).value / (eps * eps);
                let expected = g.green_prefactor() / (2.0 * n as f64);
                assert_relative_eq!(ratio, expected, max_relative = 2.0 * eps);
            }
        }
    }
}
