//! Adaptive Gauss-Kronrod quadrature and the brute-force Green's function oracle.
//!
//! `G_n(θ) = (1/(S_n R^{n−2})) ∫_θ^π csc^{n−1}φ ∫_φ^π sin^{n−1}ψ dψ dφ` is integrated
//! directly, re-running the inner integral at every outer node so that nothing
//! is shared with the closed forms.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{domain, Error, Result};
use crate::green::PolarAngle;
use crate::special::SphereGeometry;

/// Below this angle the outer integrand's `θ^{1−n}` growth makes quadrature impractical.
pub const MIN_THETA: f64 = 1e-4;

/// Requested relative tolerances are raised to this floor, the level at which
/// the per-panel roundoff estimate `50·ε·∫|f|` would stall refinement.
const REL_TOL_FLOOR: f64 = 2e-14;

/// Hard cap on live panels, a backstop behind `max_depth`.
const MAX_PANELS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    rel_tol: f64,
    abs_tol: f64,
    max_depth: u32,
}

impl QuadratureConfig {
    pub fn new(rel_tol: f64, abs_tol: f64, max_depth: u32) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(domain(format!("rel_tol must be positive, got {rel_tol}")));
        }
        if !(abs_tol >= 0.0 && abs_tol.is_finite()) {
            return Err(domain(format!("abs_tol must be non-negative, got {abs_tol}")));
        }
        if max_depth < 10 {
            return Err(domain(format!("max_depth must be at least 10, got {max_depth}")));
        }
        Ok(Self { rel_tol, abs_tol, max_depth })
    }

    pub fn with_rel_tol(rel_tol: f64) -> Result<Self> {
        Self::new(rel_tol, 0.0, 50)
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 0.0, max_depth: 50 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

// Kronrod abscissae and weights (21 points) with the embedded 10-point Gauss weights.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_465_253_370,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 21-point Kronrod panel: (value, error estimate).
fn gk21<F>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut resk = fc * WGK[10];
    let mut resg = 0.0;
    let mut resabs = resk.abs();
    let mut fv = [(0.0, 0.0); 10];
    for (j, slot) in fv.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx)?, f(center + dx)?);
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
        *slot = (f1, f2);
    }
    let mean = 0.5 * resk;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for (j, (f1, f2)) in fv.iter().enumerate() {
        resasc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let (resk, resabs, resasc) = (resk * half, resabs * half.abs(), resasc * half.abs());
    let mut err = ((resk - resg * half) as f64).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    if !resk.is_finite() {
        return Err(domain(format!("integrand is not finite on [{a}, {b}]")));
    }
    Ok((resk, err))
}

/// Neumaier-compensated sum.
fn compensated_sum(xs: impl Iterator<Item = f64>) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for x in xs {
        let t = s + x;
        c += if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
    }
    s + c
}

/// Globally adaptive integration of `f` over `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate meets `max(abs_tol, rel_tol·|I|)`. A panel that would need to be
/// split beyond `max_depth` ends the run with [`Error::ToleranceNotMet`].
pub fn integrate<F>(mut f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(QuadratureResult { value: 0.0, error_estimate: 0.0, evaluations: 0 });
    }
    let rel_tol = cfg.rel_tol.max(REL_TOL_FLOOR);
    let (value, error) = gk21(&mut f, a, b)?;
    let mut evaluations = 21;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error, depth: 0 });
    let (mut total, mut total_err) = (value, error);
    loop {
        let target = cfg.abs_tol.max(rel_tol * total.abs());
        if total_err <= target {
            break;
        }
        let worst = heap.pop().expect("at least one panel");
        if worst.depth >= cfg.max_depth || heap.len() + 2 > MAX_PANELS {
            return Err(Error::ToleranceNotMet { error: total_err, depth: worst.depth });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk21(&mut f, worst.a, mid)?;
        let (v2, e2) = gk21(&mut f, mid, worst.b)?;
        evaluations += 42;
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        let depth = worst.depth + 1;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1, depth });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2, depth });
        if heap.len() % 64 == 0 {
            // Refresh the running sums to stop drift from incremental updates.
            total = compensated_sum(heap.iter().map(|p| p.value));
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }
    Ok(QuadratureResult {
        value: compensated_sum(heap.iter().map(|p| p.value)),
        error_estimate: heap.iter().map(|p| p.error).sum(),
        evaluations,
    })
}

/// `I_m(φ) = ∫_φ^π sin^{m−1}ψ dψ` by adaptive quadrature.
pub fn quad_inner(m: u32, phi: PolarAngle, cfg: &QuadratureConfig) -> Result<f64> {
    if m == 0 {
        return Err(domain("m must be at least 1"));
    }
    let k = m as i32 - 1;
    integrate(|psi| Ok(psi.sin().powi(k)), phi.theta(), std::f64::consts::PI, cfg).map(|r| r.value)
}

/// Nested-quadrature value of `G_n(θ)`.
pub fn quad_green(geom: &SphereGeometry, theta: PolarAngle, cfg: &QuadratureConfig) -> Result<QuadratureResult> {
    if theta.theta() < MIN_THETA {
        return Err(domain(format!("quadrature needs θ ≥ {MIN_THETA}, got {}", theta.theta())));
    }
    let n = geom.n();
    let inner_cfg = QuadratureConfig::new((cfg.rel_tol / 10.0).max(1e-15), 0.0, cfg.max_depth)?;
    let outer = |phi: f64| -> Result<f64> {
        let inner = quad_inner(n, PolarAngle::new(phi)?, &inner_cfg)?;
        Ok(inner / phi.sin().powi(n as i32 - 1))
    };
    let res = integrate(outer, theta.theta(), std::f64::consts::PI, cfg)?;
    let scale = geom.green_prefactor();
    Ok(QuadratureResult {
        value: res.value * scale,
        error_estimate: res.error_estimate * scale,
        evaluations: res.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::{green, integral_i};
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn ang(t: f64) -> PolarAngle {
        PolarAngle::new(t).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::new(0.0, 0.0, 50).is_err());
        assert!(QuadratureConfig::new(1e-8, -1.0, 50).is_err());
        assert!(QuadratureConfig::new(1e-8, 0.0, 9).is_err());
        assert_eq!(QuadratureConfig::default().max_depth(), 50);
    }

    #[test]
    fn single_panel_is_exact_for_degree_29() {
        // Kronrod-21 integrates degree ≤ 31 exactly, so one panel suffices.
        let r = integrate(|x| Ok(x.powi(29)), 0.0, 1.0, &QuadratureConfig::default()).unwrap();
        assert_relative_eq!(r.value, 1.0 / 30.0, max_relative = 1e-14);
        let (v, _) = gk21(&mut |x: f64| Ok(x.powi(31) + 3.0 * x.powi(2)), -1.0, 2.0).unwrap();
        assert_relative_eq!(v, (2f64.powi(32) - 1.0) / 32.0 + 9.0, max_relative = 1e-14);
    }

    #[test]
    fn embedded_gauss_rule_is_exact_for_degree_19() {
        let (_, err) = gk21(&mut |x: f64| Ok(x.powi(19) + x.powi(18)), 0.0, 1.0).unwrap();
        assert!(err < 1e-13);
    }

    #[test]
    fn depth_exhaustion_is_reported() {
        let cfg = QuadratureConfig::new(1e-12, 0.0, 10).unwrap();
        let r = integrate(|x: f64| Ok(x.abs().powf(-0.9)), 0.0, 1.0, &cfg);
        assert!(matches!(r, Err(Error::ToleranceNotMet { .. })), "{r:?}");
    }

    #[test]
    fn integrand_errors_propagate() {
        let r = integrate(|x: f64| if x > 0.5 { Err(Error::CoincidentPoints) } else { Ok(x) }, 0.0, 1.0, &QuadratureConfig::default());
        assert_eq!(r.unwrap_err(), Error::CoincidentPoints);
    }

    #[test]
    fn quad_inner_examples() {
        let cfg = QuadratureConfig::default();
        assert_relative_eq!(quad_inner(1, ang(1.0), &cfg).unwrap(), PI - 1.0, max_relative = 1e-12);
        assert_relative_eq!(quad_inner(2, ang(FRAC_PI_2), &cfg).unwrap(), 1.0, max_relative = 1e-12);
        assert_eq!(quad_inner(3, PolarAngle::antipode(), &cfg).unwrap(), 0.0);
    }

    #[test]
    fn quad_inner_matches_recurrence() {
        let cfg = QuadratureConfig::with_rel_tol(1e-13).unwrap();
        for m in 1..=12 {
            for phi in [0.05, 0.7, 1.6, 2.4, 3.0] {
                let a = quad_inner(m, ang(phi), &cfg).unwrap();
                let b = integral_i(m, ang(phi)).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn quad_green_examples() {
        let cfg = QuadratureConfig::default();
        let g2 = SphereGeometry::new(2, 1.0).unwrap();
        let g3 = SphereGeometry::new(3, 1.0).unwrap();
        let v2 = quad_green(&g2, ang(FRAC_PI_2), &cfg).unwrap().value;
        assert!((v2 - 2f64.ln() / (4.0 * PI)).abs() <= 1e-10);
        let v3 = quad_green(&g3, ang(FRAC_PI_2), &cfg).unwrap().value;
        assert!((v3 - 1.0 / (4.0 * PI * PI)).abs() <= 1e-10);
        for n in 2..6 {
            let g = SphereGeometry::new(n, 1.0).unwrap();
            assert_eq!(quad_green(&g, PolarAngle::antipode(), &cfg).unwrap().value, 0.0);
        }
        assert!(quad_green(&g3, ang(5e-5), &cfg).is_err());
    }

    #[test]
    fn refinement_does_not_increase_discrepancy() {
        let g = SphereGeometry::new(5, 1.0).unwrap();
        for t in [0.1, 1.0, 2.5] {
            let exact = green(&g, ang(t)).value;
            let mut prev = f64::INFINITY;
            for tol in [1e-6, 5e-7, 2.5e-7, 1.25e-7] {
                let cfg = QuadratureConfig::with_rel_tol(tol).unwrap();
                let d = (quad_green(&g, ang(t), &cfg).unwrap().value - exact).abs();
                assert!(d <= prev.max(1e-15 * exact), "θ = {t}, tol = {tol}: {d} > {prev}");
                prev = d;
            }
        }
    }
}
