use gammamorphic::barnes_g::{log_g, GRoute};
use gammamorphic::kinkelin::log_k;
use gammamorphic::{multi_gamma, oracle, Error};
use num_bigint::BigInt;
use num_complex::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn g_at_integers_every_route() {
    for n in 2..=10u32 {
        let exact = oracle::g_integer(n).unwrap().ln().unwrap();
        for route in [GRoute::Series, GRoute::Weierstrass, GRoute::Integral, GRoute::Auto] {
            let v = log_g(c(n as f64), route).unwrap().value;
            assert!((v.re - exact).abs() < 1e-9 * exact.abs().max(1.0), "{route} at {n}");
            assert_eq!(v.im, 0.0);
        }
    }
}

#[test]
fn small_factorial_products() {
    // G(5) = 1!·2!·3! = 12, K(4) = 1·4·27 = 108
    assert_eq!(oracle::g_integer(5).unwrap().numer(), &BigInt::from(12));
    assert_eq!(oracle::k_integer(4).unwrap().numer(), &BigInt::from(108));
    assert!((log_k(c(4.0)).unwrap().value.re - 108f64.ln()).abs() < 1e-13);
}

#[test]
fn zeros_and_caps() {
    assert!(matches!(log_g(c(-2.0), GRoute::Auto), Err(Error::Zero(_))));
    assert!(matches!(oracle::g_integer(0), Err(Error::Domain(_))));
    assert!(matches!(oracle::g_integer(oracle::MAX_ARGUMENT + 1), Err(Error::Overflow(_))));
    assert!(matches!(multi_gamma::log_gn(3, c(0.0)), Err(Error::Pole(_))));
    assert!(matches!(multi_gamma::log_gn(4, c(-1.0)), Err(Error::Zero(_))));
}

#[test]
fn higher_orders_at_integers() {
    for order in 1..=4u32 {
        for m in 1..=9u32 {
            let exact = oracle::gn_integer(order, m).unwrap().ln().unwrap();
            let v = multi_gamma::log_gn(order, c(m as f64)).unwrap().value.re;
            assert!((v - exact).abs() < 1e-12, "G_{order}({m}): {}", v - exact);
        }
    }
}
