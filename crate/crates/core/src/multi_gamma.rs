//! The multiple gammas G_n through their P_n integral kernels, the higher
//! Kinkelin functions K_n, and the finite-difference conversion between them.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::barnes_g::{log_g, GRoute};
use crate::identities::catalog::IdentityId;
use crate::identities::report::IdentityReport;
use crate::oracle::kn_integer;
use crate::quadrature;
use crate::special_base::{canon, is_nonpositive_integer, log_gamma};
use crate::sum::CompensatedC;
use crate::taylor::Series;
use crate::{check_finite, ComplexValue, Error, Result, RouteTag, ValueWithError};

const QUAD_TOL: f64 = 1e-13;
/// Largest order accepted by the kernel integral.
pub const MAX_ORDER: u32 = 8;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// [x]_k/k! = x(x−1)⋯(x−k+1)/k!
fn falling_over_fact(x: Complex64, k: u32) -> Complex64 {
    let mut p = c(1.0);
    for i in 0..k {
        p = p * (x - i as f64) / (i + 1) as f64;
    }
    p
}

/// P_n(x) at u > 0 as (polynomial part, coefficient of e^{−(x−1)u}).
fn pn_parts(n: u32, x: Complex64, u: f64) -> (Complex64, Complex64) {
    let y = x - 1.0;
    let inv_d = 1.0 / -(-u).exp_m1();
    let mut acc = CompensatedC::new();
    let mut p = 1.0;
    for i in 0..=n {
        let t = falling_over_fact(y, n - i) * p;
        acc.add(if i % 2 == 0 { t } else { -t });
        p *= inv_d;
    }
    let k = inv_d.powi(n as i32);
    (acc.value(), c(if n % 2 == 1 { k } else { -k }))
}

/// Taylor series of u^n P_n(y+1) in u:
/// Σ (−1)^i [y]_{n−i}/(n−i)! u^{n−i} E^{−i} + (−1)^{n+1} e^{−yu} E^{−n}, E = (1−e^{−u})/u.
fn un_pn_series(n: u32, y: Complex64) -> Series {
    let e_inv = Series::one_minus_exp_over_u(c(1.0)).recip();
    let mut un_p = Series::constant(c(0.0));
    let mut e_pow = Series::constant(c(1.0));
    for i in 0..=n {
        let t = e_pow.mul_u((n - i) as usize).scale(falling_over_fact(y, n - i));
        un_p = if i % 2 == 0 { un_p.add(&t) } else { un_p.sub(&t) };
        e_pow = e_pow.mul(&e_inv);
    }
    let last = Series::exp_lin(-y).mul(&e_inv.powi(n as usize));
    if n % 2 == 1 {
        un_p.add(&last)
    } else {
        un_p.sub(&last)
    }
}

/// P_n(x) at a single u > 0. The closed form cancels terms of size u^{−n}
/// near 0, so small u uses the Taylor series instead.
pub fn pn_kernel(n: u32, x: ComplexValue, u: f64) -> ComplexValue {
    let series = un_pn_series(n, x - 1.0).div_u(n as usize);
    if u < series.switch_point(1e-17) {
        return series.eval(u);
    }
    let (poly, k) = pn_parts(n, x, u);
    poly + k * (-(x - 1.0) * u).exp()
}

fn singular_error(n: u32, x: Complex64) -> Error {
    // G_n has zeros at the non-positive integers for even n and poles for odd n
    if n % 2 == 0 {
        Error::Zero(format!("G_{n} vanishes at {}", x.re))
    } else {
        Error::Pole(format!("G_{n} has a pole at {}", x.re))
    }
}

fn gn_integral(n: u32, x: Complex64) -> Result<ValueWithError> {
    let un_p = un_pn_series(n, x - 1.0);
    let series = Series::exp_lin(c(-1.0)).mul(&un_p).div_u(n as usize + 1);
    let direct = |u: f64| {
        let (poly, k) = pn_parts(n, x, u);
        ((-u).exp() * poly + k * (-x * u).exp()) / u
    };
    let r = quadrature::integrate_split(&series, direct, QUAD_TOL)?;
    Ok(ValueWithError::new(r.value, r.abs_error, RouteTag::Integral))
}

/// ln G_n(x): n = 0 gives ln x, n = 1 ln Γ, n = 2 ln G, higher orders the
/// kernel integral with G_n(x) = G_n(x+1)/G_{n−1}(x) shifts.
pub fn log_gn(n: u32, x: ComplexValue) -> Result<ValueWithError> {
    check_finite(x, "x")?;
    if n > MAX_ORDER {
        return Err(Error::Domain(format!("order {n} exceeds the supported maximum {MAX_ORDER}")));
    }
    let x = canon(x);
    match n {
        0 => {
            if x == c(0.0) {
                return Err(Error::Zero("G_0(x) = x vanishes at 0".into()));
            }
            Ok(ValueWithError::new(x.ln(), 2.0 * f64::EPSILON * x.ln().norm(), RouteTag::ClosedForm))
        }
        1 => log_gamma(x),
        2 => log_g(x, GRoute::Auto),
        _ => {
            let k = reduction_steps(n, x);
            if k == 0 {
                return gn_unreduced(n, x);
            }
            // G_n(x) = G_n(x−k) Π_{i=1}^{k} G_{n−1}(x−i)
            let base = gn_unreduced(n, x - k as f64)?;
            let mut acc = CompensatedC::new();
            acc.add(base.value);
            let mut err = base.abs_error;
            for i in 1..=k {
                let t = log_gn(n - 1, x - i as f64)?;
                acc.add(t.value);
                err += t.abs_error;
            }
            Ok(ValueWithError::new(acc.value(), err, RouteTag::IntegralRecursion))
        }
    }
}

/// Recursion budget: reducing by k steps costs about k^{n−2} integrals.
const REDUCTION_BUDGET: f64 = 4096.0;

/// From order 4 the kernel integral loses accuracy as Re x grows (its
/// polynomial part grows like x^n), so the argument is brought down to
/// [1.5, 2.5) when the recursion stays affordable.
fn reduction_steps(n: u32, x: Complex64) -> u32 {
    if n < 4 || x.re < 2.5 {
        return 0;
    }
    let k = (x.re - 1.5).floor();
    if k.powi(n as i32 - 2) > REDUCTION_BUDGET {
        return 0;
    }
    k as u32
}

/// The kernel integral, stepped up through G_n(x) = G_n(x+1)/G_{n−1}(x)
/// left of 1/2, never reduced.
fn gn_unreduced(n: u32, x: Complex64) -> Result<ValueWithError> {
    if is_nonpositive_integer(x) {
        return Err(singular_error(n, x));
    }
    if x.re >= 0.5 {
        return gn_integral(n, x);
    }
    let up = gn_unreduced(n, x + 1.0)?;
    let prev = log_gn(n - 1, x)?;
    Ok(ValueWithError::new(up.value - prev.value, up.abs_error + prev.abs_error, RouteTag::IntegralRecursion))
}

/// ln G_n on the unreduced route, so that recursion checks stay independent
/// of the recursion used for large arguments.
fn log_gn_unreduced(n: u32, x: Complex64) -> Result<ValueWithError> {
    if n >= 3 {
        check_finite(x, "x")?;
        gn_unreduced(n, canon(x))
    } else {
        log_gn(n, x)
    }
}

/// Coefficients (constant term first) of Δ^j x^n, Δf(x) = f(x+1) − f(x),
/// in exact arithmetic.
pub fn delta_power(n: u32, j: u32) -> Vec<BigRational> {
    let mut p: Vec<BigRational> = vec![BigRational::zero(); n as usize + 1];
    p[n as usize] = BigRational::from_integer(BigInt::from(1));
    for _ in 0..j {
        // p(x+1) − p(x): coefficient k gets Σ_{i>k} C(i,k) p_i
        let deg = p.len();
        let mut q = vec![BigRational::zero(); deg];
        for (i, pi) in p.iter().enumerate() {
            if pi.is_zero() {
                continue;
            }
            let mut binom = BigInt::from(1);
            for k in 0..i {
                q[k] += pi * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(i - k) / BigInt::from(k + 1);
            }
        }
        p = q;
    }
    while p.len() > 1 && p.last().is_some_and(|v| v.is_zero()) {
        p.pop();
    }
    p
}

fn eval_poly(coeffs: &[BigRational], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(c(0.0), |acc, k| acc * x + k.to_f64().unwrap_or(f64::NAN))
}

/// Σ_{j=0}^n (−1)^j (Δ^j x^n)(x) ln G_{j+offset}(x + shift·j).
fn conversion_sum(n: u32, x: Complex64, offset: u32, shift: f64) -> Result<ValueWithError> {
    let mut acc = CompensatedC::new();
    let mut err = 0.0;
    for j in 0..=n {
        let d = eval_poly(&delta_power(n, j), x);
        if d == c(0.0) {
            continue;
        }
        let g = log_gn(j + offset, x + shift * j as f64)?;
        let t = d * g.value;
        acc.add(if j % 2 == 0 { t } else { -t });
        err += d.norm() * g.abs_error;
    }
    let v = acc.value();
    Ok(ValueWithError::new(v, err + 8.0 * f64::EPSILON * v.norm().max(1.0), RouteTag::Conversion))
}

/// ln K_n(x) = Σ_{j=0}^n (−1)^j (Δ^j x^n)(x) ln G_{j+1}(x+j).
pub fn kn_conversion(n: u32, x: ComplexValue) -> Result<ValueWithError> {
    check_finite(x, "x")?;
    if n == 0 {
        return Err(Error::Domain("K_n needs n ≥ 1".into()));
    }
    if n + 1 > MAX_ORDER {
        return Err(Error::Domain(format!("order {n} exceeds the supported maximum {}", MAX_ORDER - 1)));
    }
    conversion_sum(n, canon(x), 1, 1.0)
}

/// ln K_n(x) for Re x > 0, through the conversion formula.
pub fn log_kn(n: u32, x: ComplexValue) -> Result<ValueWithError> {
    check_finite(x, "x")?;
    if x.re <= 0.0 {
        return Err(Error::Domain(format!("K_n needs Re x > 0, got {x}")));
    }
    kn_conversion(n, x)
}

// ---------------------------------------------------------------------------
// checks

pub fn gn_fe_check(n: u32, x: ComplexValue) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::Domain("G_n recursion needs n ≥ 1".into()));
    }
    let lhs = log_gn_unreduced(n, x + 1.0)?.value;
    let rhs = log_gn(n - 1, x)?.value + log_gn_unreduced(n, x)?.value;
    let p = [("n", n as f64), ("x", x.re), ("x_im", x.im)];
    Ok(IdentityReport::exp_space(IdentityId::GnFe, &p, lhs, rhs))
}

pub fn pn_telescope_check(n: u32, x: ComplexValue, u: f64) -> Result<IdentityReport> {
    if !(u > 0.0) {
        return Err(Error::Domain(format!("kernel needs u > 0, got {u}")));
    }
    let lhs = pn_kernel(n + 1, x + 1.0, u) - pn_kernel(n + 1, x, u);
    let rhs = pn_kernel(n, x, u);
    let p = [("n", n as f64), ("x", x.re), ("x_im", x.im), ("u", u)];
    Ok(IdentityReport::new(IdentityId::PnTelescope, &p, lhs, rhs))
}

pub fn kn_fe_check(n: u32, x: ComplexValue) -> Result<IdentityReport> {
    let lhs = log_kn(n, x + 1.0)?.value - log_kn(n, x)?.value;
    let rhs = x.powu(n) * x.ln();
    let p = [("n", n as f64), ("x", x.re), ("x_im", x.im)];
    Ok(IdentityReport::exp_space(IdentityId::KnFe, &p, lhs, rhs))
}

/// The conversion formula at an integer argument against the K_n oracle.
/// The printed ln G_j(x+j) is the printed form; ln G_j(x) is the fallback
/// reading and is reported as well.
pub fn kn_conversion_check(n: u32, m: u32) -> Result<IdentityReport> {
    let x = c(m as f64);
    let exact = kn_integer(n, m)?.ln()?;
    let lhs = kn_conversion(n, x)?.value;
    let printed = conversion_sum(n, x, 0, 1.0)?.value;
    let fallback = conversion_sum(n, x, 0, 0.0)?.value;
    let p = [("n", n as f64), ("x", m as f64)];
    let mut r = IdentityReport::new(IdentityId::KnConversion, &p, lhs, c(exact));
    let fb = (fallback - exact).norm();
    r.append_note(&format!("reading ln G_j(x) misses the oracle by {fb:.3e}"));
    Ok(r.with_printed(printed, c(exact), "ln G_j(x+j)"))
}
