//! Double-exponential quadrature on [0, ∞) and on finite intervals, plus
//! Richardson-extrapolated numerical differentiation.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::{Error, Result};

const DEFAULT_MAX_DEPTH: u32 = 12;
const MIN_LEVEL: u32 = 3;

/// Maximum refinement depth, overridable through GAMMAMORPHIC_MAX_QUAD_DEPTH.
pub fn max_depth() -> u32 {
    static DEPTH: OnceLock<u32> = OnceLock::new();
    *DEPTH.get_or_init(|| {
        std::env::var("GAMMAMORPHIC_MAX_QUAD_DEPTH")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|&d| d >= MIN_LEVEL && d <= 20)
            .unwrap_or(DEFAULT_MAX_DEPTH)
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub abs_error: f64,
    pub evaluations: usize,
}

struct Sweep {
    sum: Complex64,
    mag: f64,
    evals: usize,
}

/// Sum w(t) f(u(t)) over t = t0 + i·step (i ≥ 0) until terms become
/// negligible or the map leaves the representable range.
fn sweep<F, M>(f: &F, map: &M, t0: f64, step: f64, reference: f64) -> Result<Sweep>
where
    F: Fn(f64) -> Complex64,
    M: Fn(f64) -> Option<(f64, f64)>,
{
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let mut evals = 0;
    let mut quiet = 0;
    let mut t = t0;
    loop {
        let Some((x, w)) = map(t) else { break };
        if w == 0.0 {
            break;
        }
        let y = f(x);
        evals += 1;
        if !(y.re.is_finite() && y.im.is_finite()) {
            return Err(Error::SingularIntegrand(format!("non-finite integrand at {x:e}")));
        }
        let term = y * w;
        sum += term;
        let tn = term.norm();
        mag += tn;
        let scale = reference.max(sum.norm());
        if tn <= 1e-18 * scale {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        t += step;
        if t.abs() > 12.0 {
            break;
        }
    }
    Ok(Sweep { sum, mag, evals })
}

fn refine<F, M>(f: &F, map: &M, tol: f64) -> Result<QuadratureResult<Complex64>>
where
    F: Fn(f64) -> Complex64,
    M: Fn(f64) -> Option<(f64, f64)>,
{
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let depth = max_depth();
    let mut h = 1.0;
    let mut evals = 0;
    // level 0: all integer nodes
    let right = sweep(f, map, 0.0, h, 0.0)?;
    let left = sweep(f, map, -h, -h, right.sum.norm())?;
    evals += right.evals + left.evals;
    let mut raw = right.sum + left.sum;
    let mut mag = right.mag + left.mag;
    let mut estimate = raw * h;
    for level in 1..=depth {
        h *= 0.5;
        let reference = estimate.norm() / h;
        let r = sweep(f, map, h, 2.0 * h, reference)?;
        let l = sweep(f, map, -h, -2.0 * h, reference)?;
        evals += r.evals + l.evals;
        raw += r.sum + l.sum;
        mag += r.mag + l.mag;
        let next = raw * h;
        let diff = (next - estimate).norm();
        estimate = next;
        let rounding = 4.0 * f64::EPSILON * mag * h;
        if level >= MIN_LEVEL && diff <= tol * estimate.norm().max(1.0) {
            return Ok(QuadratureResult {
                value: estimate,
                abs_error: diff + rounding,
                evaluations: evals,
            });
        }
    }
    Err(Error::NonConvergence(format!(
        "quadrature did not settle within depth {depth} (estimate {estimate})"
    )))
}

fn exp_sinh(t: f64) -> Option<(f64, f64)> {
    let s = FRAC_PI_2 * t.sinh();
    if !(-700.0..=700.0).contains(&s) {
        return None;
    }
    let u = s.exp();
    if u == 0.0 {
        return None;
    }
    Some((u, u * FRAC_PI_2 * t.cosh()))
}

/// ∫₀^∞ f(u) du for a complex-valued integrand. Nodes are strictly positive.
pub fn integrate_semi_infinite_c<F>(f: F, tol: f64) -> Result<QuadratureResult<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    refine(&f, &exp_sinh, tol)
}

/// ∫₀^∞ f(u) du for a real integrand.
pub fn integrate_semi_infinite<F>(f: F, tol: f64) -> Result<QuadratureResult<f64>>
where
    F: Fn(f64) -> f64,
{
    let r = refine(&|u| Complex64::new(f(u), 0.0), &exp_sinh, tol)?;
    Ok(QuadratureResult { value: r.value.re, abs_error: r.abs_error, evaluations: r.evaluations })
}

/// ∫_a^b f(x) dx by tanh-sinh; endpoint singularities of logarithmic or
/// mild algebraic type are tolerated because nodes never touch a or b.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult<f64>>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("integration limits must be finite".into()));
    }
    if a == b {
        return Ok(QuadratureResult { value: 0.0, abs_error: 0.0, evaluations: 1 });
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let r = 0.5 * (hi - lo);
    let map = move |t: f64| -> Option<(f64, f64)> {
        let s = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * s.abs()).exp();
        // distance to the nearer endpoint: r(1 − tanh|s|) = 2r e/(1+e)
        let delta = 2.0 * r * e / (1.0 + e);
        if delta == 0.0 {
            return None;
        }
        let x = if s >= 0.0 { hi - delta } else { lo + delta };
        let w = r * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        Some((x, w))
    };
    let res = refine(&|x| Complex64::new(f(x), 0.0), &map, tol)?;
    Ok(QuadratureResult { value: sign * res.value.re, abs_error: res.abs_error, evaluations: res.evaluations })
}

/// Integrate over [0, ∞) using `series` below its switch point and `direct`
/// above it.
pub(crate) fn integrate_split<F>(
    series: &crate::taylor::Series,
    direct: F,
    tol: f64,
) -> Result<QuadratureResult<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    let switch = series.switch_point(1e-17);
    integrate_semi_infinite_c(|u| if u < switch { series.eval(u) } else { direct(u) }, tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub abs_error: f64,
}

/// Central-difference derivative of order 1 or 2 with Richardson
/// extrapolation over the step sizes h, h/2, h/4.
pub fn derivative_at<F>(f: F, x0: f64, order: u32, h: f64) -> Result<Derivative>
where
    F: Fn(f64) -> f64,
{
    if !(h > 0.0) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let fx = f(x0);
    let mut fmax = fx.abs();
    let mut d = [0.0; 3];
    for (i, di) in d.iter_mut().enumerate() {
        let hh = h / f64::powi(2.0, i as i32);
        let (fp, fm) = (f(x0 + hh), f(x0 - hh));
        fmax = fmax.max(fp.abs()).max(fm.abs());
        *di = match order {
            1 => (fp - fm) / (2.0 * hh),
            2 => (fp - 2.0 * fx + fm) / (hh * hh),
            _ => return Err(Error::Domain(format!("derivative order {order} unsupported"))),
        };
    }
    if !d.iter().all(|v| v.is_finite()) {
        return Err(Error::NoisyFunction("non-finite difference quotient".into()));
    }
    let r1a = (4.0 * d[1] - d[0]) / 3.0;
    let r1b = (4.0 * d[2] - d[1]) / 3.0;
    let r2 = (16.0 * r1b - r1a) / 15.0;
    let err = (r2 - r1b).abs();
    let hmin = h / 4.0;
    let noise = 64.0 * f64::EPSILON * fmax.max(1e-300) / hmin.powi(order as i32);
    // For a smooth f successive differences shrink by about 4.
    let first = (d[1] - d[0]).abs();
    let second = (d[2] - d[1]).abs();
    if second > 0.5 * first && second > noise {
        return Err(Error::NoisyFunction(format!(
            "Richardson tableau diverges at x0 = {x0} (differences {first:e} -> {second:e})"
        )));
    }
    Ok(Derivative { value: r2, abs_error: err + noise })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_integrals() {
        let r = integrate_semi_infinite(|u| u * (-u).exp(), 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13, "{r:?}");
        let r = integrate_semi_infinite(|u| ((-u).exp() - (-2.0 * u).exp()) / u, 1e-12).unwrap();
        assert!((r.value - 2f64.ln()).abs() < 1e-13);
        let r = integrate_semi_infinite(|u| 1.0 / (1.0 + u * u), 1e-12).unwrap();
        assert!((r.value - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn nodes_strictly_positive() {
        let _ = integrate_semi_infinite(
            |u| {
                assert!(u > 0.0);
                (-u).exp()
            },
            1e-12,
        )
        .unwrap();
    }

    #[test]
    fn finite_interval() {
        let r = integrate_finite(|x| x.ln(), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value + 1.0).abs() < 1e-13);
        let r = integrate_finite(|x| x * x, 2.0, -1.0, 1e-13).unwrap();
        assert!((r.value + 3.0).abs() < 1e-13);
    }

    #[test]
    fn singular_integrand_reported() {
        let e = integrate_semi_infinite(|u| if u > 1.0 && u < 1.5 { f64::NAN } else { (-u).exp() }, 1e-10);
        assert!(matches!(e, Err(Error::SingularIntegrand(_))));
    }

    #[test]
    fn derivatives() {
        let d = derivative_at(|x| x * x, 3.0, 1, 0.1).unwrap();
        assert!((d.value - 6.0).abs() < 1e-9);
        let d = derivative_at(f64::exp, 0.0, 2, 0.1).unwrap();
        assert!((d.value - 1.0).abs() < 1e-7);
        let d = derivative_at(crate::special_base::ln_gamma_real, 1.0, 1, 0.05).unwrap();
        assert!((d.value + crate::special_base::euler_gamma()).abs() < 1e-8);
    }

    #[test]
    fn noisy_function_detected() {
        let noisy = |x: f64| (x * 1e9).sin() * 1e-3 + x;
        assert!(matches!(derivative_at(noisy, 0.3, 1, 1e-3), Err(Error::NoisyFunction(_))));
    }
}
