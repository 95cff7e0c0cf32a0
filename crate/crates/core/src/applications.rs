//! Uses of the Green's function: dipole potentials, the azimuthal Fourier
//! expansion on S², the projective-space Green's function and the antipodal
//! difference.

use std::f64::consts::{PI, TAU};

use crate::error::{domain, Error, Result};
use crate::green::{green, green_derivative, green_in, PolarAngle};
use crate::quadrature::{integrate, QuadratureConfig};
use crate::real::{DoubleDouble, Real};
use crate::special::{gamma_half, sphere_volume, HalfInt, SphereGeometry};

/// Stop summing the Fourier series once the certified tail drops below this.
pub const FOURIER_TAIL_TOL: f64 = 1e-14;

/// A point dipole of strength `moment` at the pole, observed at colatitude
/// `theta` and azimuth `phi` measured from the moment's direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DipoleQuery {
    pub geom: SphereGeometry,
    pub theta: PolarAngle,
    pub phi: f64,
    pub moment: f64,
}

impl DipoleQuery {
    pub fn new(geom: SphereGeometry, theta: PolarAngle, phi: f64, moment: f64) -> Result<Self> {
        if !(moment >= 0.0 && moment.is_finite()) {
            return Err(domain(format!("dipole moment must be non-negative, got {moment}")));
        }
        if !phi.is_finite() {
            return Err(domain("azimuth must be finite"));
        }
        Ok(Self { geom, theta, phi, moment })
    }
}

/// `H = (G_n'(θ)/R)·|p|·cos φ`.
pub fn dipole_potential(q: &DipoleQuery) -> f64 {
    if q.moment == 0.0 {
        return 0.0;
    }
    green_derivative(&q.geom, q.theta) / q.geom.radius() * q.moment * q.phi.cos()
}

/// Ratio of the spherical dipole potential at arc length `s` to the flat
/// dipole `−s^{1−n}|p|cos φ / S_{n−1}`. Returns 1 when both vanish.
pub fn dipole_flat_limit_ratio(n: u32, s: f64, phi: f64, moment: f64, radius: f64) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(domain(format!("arc length s must be positive, got {s}")));
    }
    let geom = SphereGeometry::new(n, radius)?;
    let theta = PolarAngle::new(s / radius)?;
    let query = DipoleQuery::new(geom, theta, phi, moment)?;
    let cos_phi = phi.cos();
    if moment == 0.0 || cos_phi.abs() <= f64::EPSILON {
        return Ok(1.0);
    }
    let flat = -s.powi(1 - n as i32) * moment * cos_phi / sphere_volume(n - 1);
    Ok(dipole_potential(&query) / flat)
}

/// K-term partial sum of
/// `−log(A + B cos t) = log(2(A − √(A²−B²))/B²) + 2 Σ_k (cos kt / k) ((√(A²−B²) − A)/B)^k`.
pub fn log_cos_series(a: f64, b: f64, t: f64, terms: u32) -> Result<f64> {
    if !(b > 0.0 && a > b) {
        return Err(domain(format!("need A > B > 0, got A = {a}, B = {b}")));
    }
    let root = ((a - b) * (a + b)).sqrt();
    let ratio = -b / (a + root); // (root − A)/B without cancellation
    let lead = (2.0 / (a + root)).ln();
    let mut power = 1.0;
    let mut sum = 0.0;
    for k in 1..=terms {
        power *= ratio;
        sum += (k as f64 * t).cos() / k as f64 * power;
    }
    Ok(lead + 2.0 * sum)
}

/// Two points on the unit S² in polar coordinates, for the Fourier expansion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierInputs {
    pub theta: f64,
    pub theta_prime: f64,
    pub delta_phi: f64,
    pub max_terms: u32,
}

impl FourierInputs {
    pub fn new(theta: f64, theta_prime: f64, delta_phi: f64, max_terms: u32) -> Result<Self> {
        for (name, t) in [("theta", theta), ("theta_prime", theta_prime)] {
            if !(t > 0.0 && t < PI) {
                return Err(domain(format!("{name} must lie in (0, π), got {t}")));
            }
        }
        if !delta_phi.is_finite() {
            return Err(domain("delta_phi must be finite"));
        }
        if max_terms == 0 {
            return Err(domain("max_terms must be at least 1"));
        }
        Ok(Self { theta, theta_prime, delta_phi, max_terms })
    }

    /// `(θ_>, θ_<)`.
    pub fn ordered(&self) -> (f64, f64) {
        (self.theta.max(self.theta_prime), self.theta.min(self.theta_prime))
    }

    /// `q = cot(θ_>/2) / cot(θ_</2) ∈ [0, 1]`.
    pub fn ratio(&self) -> f64 {
        let (big, small) = self.ordered();
        (0.5 * big).tan().recip() * (0.5 * small).tan()
    }

    fn coincident(&self) -> bool {
        self.theta == self.theta_prime && self.delta_phi.rem_euclid(TAU) == 0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierTerm {
    pub k: u32,
    pub term: f64,
    pub partial_sum: f64,
}

/// Truncated azimuthal expansion of `2π G₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierExpansion {
    /// Partial sum, an approximation of `2π G₂`.
    pub value: f64,
    /// `log(csc(θ_>/2) sec(θ_</2))`, the `k = 0` term.
    pub leading: f64,
    pub terms_used: u32,
    /// Certified bound on the omitted tail `|Σ_{k>K} cos(kΔφ) q^k / k|`.
    pub tail_bound: f64,
    pub converged: bool,
    pub terms: Vec<FourierTerm>,
}

impl FourierExpansion {
    /// The Green's function value `G₂ = value / 2π`.
    pub fn green(&self) -> f64 {
        self.value / TAU
    }
}

/// Abel-summation tail bound: with `q^k/k` decreasing and the partial sums
/// of `cos(kΔφ)` bounded by `1/|sin(Δφ/2)|`, the tail after K terms is at most
/// `q^{K+1}/(K+1) · min(1/(1−q), 1/|sin(Δφ/2)|)`.
fn tail_bound(q: f64, k: u32, half_sin: f64) -> f64 {
    let k1 = k as f64 + 1.0;
    let geometric = if q < 1.0 { 1.0 / (1.0 - q) } else { f64::INFINITY };
    let dirichlet = if half_sin > 0.0 { 1.0 / half_sin } else { f64::INFINITY };
    q.powf(k1) / k1 * geometric.min(dirichlet)
}

/// `2π G₂` between two points of S² via
/// `log(csc(θ_>/2) sec(θ_</2)) + Σ_{k≥1} cos(kΔφ) q^k / k`.
pub fn fourier_g2(inp: &FourierInputs) -> Result<FourierExpansion> {
    if inp.coincident() {
        return Err(Error::CoincidentPoints);
    }
    let (big, small) = inp.ordered();
    let leading = -(0.5 * big).sin().ln() - (0.5 * small).cos().ln();
    let q = inp.ratio();
    let half_sin = (0.5 * inp.delta_phi).sin().abs();
    let mut sum = leading;
    let mut power = 1.0;
    let mut terms = Vec::new();
    let mut k = 0;
    let mut bound = tail_bound(q, 0, half_sin);
    while bound >= FOURIER_TAIL_TOL && k < inp.max_terms {
        k += 1;
        power *= q;
        let term = (k as f64 * inp.delta_phi).cos() * power / k as f64;
        sum += term;
        terms.push(FourierTerm { k, term, partial_sum: sum });
        bound = tail_bound(q, k, half_sin);
    }
    Ok(FourierExpansion {
        value: sum,
        leading,
        terms_used: k,
        tail_bound: bound,
        converged: bound < FOURIER_TAIL_TOL,
        terms,
    })
}

/// `2π G₂(d)` from the geodesic distance, with `sin²(d/2)` from the haversine form
/// of the spherical law of cosines.
pub fn g2_between(theta: f64, theta_prime: f64, delta_phi: f64) -> f64 {
    let hav = (0.5 * (theta - theta_prime)).sin().powi(2)
        + theta.sin() * theta_prime.sin() * (0.5 * delta_phi).sin().powi(2);
    -0.5 * hav.ln()
}

/// Green's function on ℝPⁿ = Sⁿ/±1 lifted to the sphere: `G(θ) + G(π−θ)`.
///
/// Both preimages of the source contribute a unit point charge, so the
/// singular part at θ → 0 (and at θ → π) matches that of `G_n`.
///
/// The angle is snapped to the pair `(π − u, u)` with `u = fl(π − θ) ≥ π/2`;
/// the subtraction `π − u` is exact, so `θ` and `fl(π − θ)` land on the same
/// pair and the result is exactly symmetric.
pub fn green_rp(geom: &SphereGeometry, theta: PolarAngle) -> Result<f64> {
    if theta.is_antipode() {
        return Err(domain("θ = π is the image of the source on ℝPⁿ"));
    }
    let t = theta.theta();
    let u = if t > PI / 2.0 { t } else { PI - t };
    let (near, far) = (PolarAngle::new(PI - u)?, PolarAngle::new(u)?);
    Ok(green(geom, near).value + green(geom, far).value)
}

/// `𝓘_n(θ) = ∫_θ^{π/2} csc^{n−1}x dx`, negative for θ > π/2.
///
/// For θ > π/2 the range is reflected to `[π−θ, π/2]` so the nodes near the
/// singularity keep full relative precision; `π − θ` is formed in
/// double-double and its low part enters as a first-order correction.
pub fn cohl_integral(n: u32, theta: PolarAngle, cfg: &QuadratureConfig) -> Result<f64> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    if theta.is_antipode() {
        return Err(domain("the integral diverges at θ = π"));
    }
    let k = 1 - n as i32;
    let integrand = |x: f64| x.sin().powi(k);
    let t = theta.theta();
    let half = PI / 2.0;
    if t <= half {
        return Ok(integrate(|x| Ok(integrand(x)), t, half, cfg)?.value);
    }
    let u = DoubleDouble::pi() - DoubleDouble::from(t);
    let (u_hi, u_lo) = (u.hi(), u.lo());
    let body = integrate(|x| Ok(integrand(x)), u_hi, half, cfg)?.value;
    Ok(-(body - u_lo * integrand(u_hi)))
}

/// `G_n(θ) − G_n(π−θ)`, with `π − θ` and both values in double-double.
pub fn antipodal_difference(geom: &SphereGeometry, theta: PolarAngle) -> Result<f64> {
    if theta.is_antipode() {
        return Err(domain("antipodal difference needs θ < π"));
    }
    let t = DoubleDouble::from(theta.theta());
    Ok((green_in(geom, t) - green_in(geom, DoubleDouble::pi() - t)).to_f64())
}

/// `Γ(n/2) / (2 π^{n/2} R^{n−2})`, the factor relating the antipodal difference to `𝓘_n`.
pub fn cohl_prefactor(geom: &SphereGeometry) -> f64 {
    let n = geom.n();
    let g = gamma_half(HalfInt::from_twice(n as i64)).expect("n ≥ 2");
    g / (2.0 * PI.powf(n as f64 / 2.0) * geom.radius().powi(n as i32 - 2))
}
