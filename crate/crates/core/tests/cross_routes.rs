use gammamorphic::barnes_g::{log_g, GRoute};
use gammamorphic::kinkelin::{log_k, log_k_integral};
use gammamorphic::special_base::{log_gamma, log_gamma_malmsten};
use gammamorphic::two_period::{log_g2, log_g2_integral, PeriodRatio};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn log_g_series_vs_integral(x in 0.05f64..8.0) {
        let a = log_g(c(x), GRoute::Series).unwrap().value.re;
        let b = log_g(c(x), GRoute::Integral).unwrap().value.re;
        prop_assert!((a - b).abs() < 1e-8 * a.abs().max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn log_g_complex_fe(re in -3.0f64..6.0, im in -3.0f64..3.0) {
        prop_assume!(im.abs() > 1e-3);
        let x = Complex64::new(re, im);
        let l = log_g(x + 1.0, GRoute::Auto).unwrap().value;
        let r = log_g(x, GRoute::Auto).unwrap().value + log_gamma(x).unwrap().value;
        // logarithms may differ by 2πik; compare the values
        let d = (l - r).exp() - 1.0;
        prop_assert!(d.norm() < 1e-10);
    }

    #[test]
    fn log_gamma_routes(x in 0.1f64..20.0) {
        let a = log_gamma(c(x)).unwrap().value.re;
        let b = log_gamma_malmsten(x, 1e-13).unwrap().value.re;
        prop_assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn log_k_routes(x in 0.2f64..6.0) {
        let a = log_k(c(x)).unwrap().value.re;
        let b = log_k_integral(x).unwrap().value.re;
        prop_assert!((a - b).abs() < 1e-8 * a.abs().max(1.0));
    }

    #[test]
    fn g2_integral_matches_auto(x in 0.2f64..4.0, a in 0.3f64..3.0) {
        let al = PeriodRatio::real(a).unwrap();
        let u = log_g2(c(x), al).unwrap().value;
        let v = log_g2_integral(c(x), al).unwrap().value;
        prop_assert!((u - v).norm() < 1e-8 * u.norm().max(1.0));
    }
}
