//! Browser bindings for the demo page in `www/`.
//!
//! The plain functions return library results and are tested natively; the
//! `#[wasm_bindgen]` wrappers only convert errors for JavaScript.

use sphere_green::applications::{fourier_g2, g2_between, FourierInputs};
use sphere_green::reduce::eval_series_oracle;
use sphere_green::{classify, green, reduce, HypParams, PolarAngle, Result, SphereGeometry};
use wasm_bindgen::prelude::*;

/// Left end of the plotted range; G grows like θ^{2−n} below it.
pub const CURVE_THETA_MIN: f64 = 0.2;

/// `points` angles from `CURVE_THETA_MIN` to π.
pub fn curve_thetas(points: usize) -> Vec<f64> {
    let points = points.max(2);
    let step = (std::f64::consts::PI - CURVE_THETA_MIN) / (points - 1) as f64;
    (0..points)
        .map(|i| if i + 1 == points { std::f64::consts::PI } else { CURVE_THETA_MIN + step * i as f64 })
        .collect()
}

pub fn curve(n: u32, radius: f64, points: usize) -> Result<Vec<f64>> {
    let geom = SphereGeometry::new(n, radius)?;
    curve_thetas(points)
        .into_iter()
        .map(|t| Ok(green(&geom, PolarAngle::new(t)?).value))
        .collect()
}

/// Partial sums of the S² azimuthal series, starting with the `k = 0` term.
pub fn partial_sums(theta: f64, theta_prime: f64, delta_phi: f64, max_terms: u32) -> Result<Vec<f64>> {
    let e = fourier_g2(&FourierInputs::new(theta, theta_prime, delta_phi, max_terms)?)?;
    Ok(std::iter::once(e.leading).chain(e.terms.iter().map(|t| t.partial_sum)).collect())
}

/// `"case k: sum( … )"` for the given parameters.
pub fn reduction(a: &str, b: &str, c: &str) -> Result<String> {
    let p = HypParams::parse(a, b, c)?;
    Ok(format!("{}: {}", classify(&p), reduce(&p)?))
}

/// `[reduced form, power series]` at `z`.
pub fn reduction_check(a: &str, b: &str, c: &str, z: f64) -> Result<Vec<f64>> {
    let p = HypParams::parse(a, b, c)?;
    Ok(vec![reduce(&p)?.eval(z)?, eval_series_oracle(&p, z)?])
}

fn js(e: sphere_green::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = curveThetas)]
pub fn curve_thetas_js(points: usize) -> Vec<f64> {
    curve_thetas(points)
}

#[wasm_bindgen(js_name = greenCurve)]
pub fn green_curve_js(n: u32, radius: f64, points: usize) -> Result<Vec<f64>, JsError> {
    curve(n, radius, points).map_err(js)
}

#[wasm_bindgen(js_name = fourierPartialSums)]
pub fn fourier_partial_sums_js(theta: f64, theta_prime: f64, delta_phi: f64, max_terms: u32) -> Result<Vec<f64>, JsError> {
    partial_sums(theta, theta_prime, delta_phi, max_terms).map_err(js)
}

/// `2πG₂` from the geodesic distance.
#[wasm_bindgen(js_name = fourierExact)]
pub fn fourier_exact_js(theta: f64, theta_prime: f64, delta_phi: f64) -> f64 {
    g2_between(theta, theta_prime, delta_phi)
}

#[wasm_bindgen(js_name = reduceHyp)]
pub fn reduce_js(a: &str, b: &str, c: &str) -> Result<String, JsError> {
    reduction(a, b, c).map_err(js)
}

#[wasm_bindgen(js_name = reduceCheck)]
pub fn reduce_check_js(a: &str, b: &str, c: &str, z: f64) -> Result<Vec<f64>, JsError> {
    reduction_check(a, b, c, z).map_err(js)
}
