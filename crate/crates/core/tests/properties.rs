use std::f64::consts::PI;

use proptest::prelude::*;
use sphere_green::applications::{fourier_g2, g2_between, FourierInputs};
use sphere_green::reduce::{eval_series_oracle, ReducedForm};
use sphere_green::{green, reduce, HypParams, PolarAngle, SphereGeometry};

fn g(n: u32, r: f64, theta: f64) -> f64 {
    green(&SphereGeometry::new(n, r).unwrap(), PolarAngle::new(theta).unwrap()).value
}

#[test]
fn low_dimensional_constants_vanish_identically() {
    for i in 1..40 {
        let t = PI * i as f64 / 40.0;
        let two = g(2, 1.0, t) + ((1.0 - t.cos()) / 2.0).ln() / (4.0 * PI);
        let three = g(3, 1.0, t) - (PI - t) / t.tan() / (4.0 * PI * PI);
        assert!(two.abs() <= 1e-10, "θ = {t}: {two}");
        assert!((three - 1.0 / (4.0 * PI * PI)).abs() <= 1e-10, "θ = {t}: {three}");
    }
}

proptest! {
    #[test]
    fn green_is_positive_and_decreasing(n in 2u32..=12, r in 0.5f64..3.0, a in 0.01f64..3.1, b in 0.01f64..3.1) {
        prop_assume!((a - b).abs() > 1e-6);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(g(n, r, hi) > 0.0);
        prop_assert!(g(n, r, lo) > g(n, r, hi));
    }

    #[test]
    fn green_scales_as_radius_to_two_minus_n(n in 2u32..=9, r in 0.5f64..4.0, t in 0.05f64..3.0) {
        let ratio = g(n, r, t) / g(n, 1.0, t);
        prop_assert!((ratio / r.powi(2 - n as i32) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn fourier_series_is_symmetric_in_the_two_points(a in 0.1f64..3.0, b in 0.1f64..3.0, dphi in 0.0f64..6.28) {
        prop_assume!((a - b).abs() > 0.05);
        let x = fourier_g2(&FourierInputs::new(a, b, dphi, 100_000).unwrap()).unwrap();
        let y = fourier_g2(&FourierInputs::new(b, a, -dphi, 100_000).unwrap()).unwrap();
        prop_assert!((x.value - y.value).abs() < 1e-12);
        prop_assert!((x.value - g2_between(a, b, dphi)).abs() < 1e-9);
    }

    #[test]
    fn reduced_forms_round_trip_and_match_the_series(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9, z in 0.05f64..0.7) {
        let Ok(p) = HypParams::from_twice(a, b, c) else { return Ok(()) };
        let form = reduce(&p).unwrap();
        prop_assert!(form.basis_count() <= 2);
        prop_assert_eq!(form.to_string().parse::<ReducedForm>().unwrap(), form.clone());
        let want = eval_series_oracle(&p, z).unwrap();
        prop_assert!((form.eval(z).unwrap() - want).abs() <= 1e-9 * want.abs().max(1.0));
    }
}
