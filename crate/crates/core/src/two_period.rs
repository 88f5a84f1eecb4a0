//! The two-period double gamma G(x;α): quadrature of its Malmsten-type
//! integral, functional-equation shifts, the limit formulas, the quarter
//! lattice Weierstrass product and the q-product of the reflection formula.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::barnes_g::{log_g, GRoute};
use crate::identities::catalog::{IdentityId, Status};
use crate::identities::report::IdentityReport;
use crate::quadrature;
use crate::special_base::{bernoulli_f64, canon, euler_gamma, hurwitz_zeta, log_gamma, LN_2PI};
use crate::sum::CompensatedC;
use crate::taylor::Series;
use crate::{check_finite, ComplexValue, Error, Result, RouteTag, ValueWithError};

const EPS: f64 = f64::EPSILON;
const QUAD_TOL: f64 = 1e-13;
pub const DEFAULT_LATTICE_N: usize = 64;
pub const DEFAULT_EULER_N: usize = 2000;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The period ratio α, with Re α > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodRatio(ComplexValue);

impl PeriodRatio {
    pub fn new(alpha: ComplexValue) -> Result<Self> {
        check_finite(alpha, "alpha")?;
        if alpha.re <= 0.0 {
            return Err(Error::Domain(format!("period ratio needs Re α > 0, got {alpha}")));
        }
        Ok(PeriodRatio(canon(alpha)))
    }

    pub fn real(alpha: f64) -> Result<Self> {
        Self::new(c(alpha))
    }

    pub fn value(self) -> ComplexValue {
        self.0
    }

    fn as_real(self) -> Option<f64> {
        (self.0.im == 0.0).then_some(self.0.re)
    }
}

/// Integrand of ln G(x;α) over u ∈ (0, ∞). With `printed` the prefactor
/// e^{−αu}/(1−e^{−u}) replaces e^{−αu}/u.
fn g2_integral(x: Complex64, alpha: Complex64, printed: bool) -> Result<ValueWithError> {
    let xm1 = x - 1.0;
    let k = xm1 * (x - alpha * 2.0) / (alpha * 2.0);
    // u·{…} = k u − (x−1)/E_α + (Om(x−α) − Om(1−α))/(E_1 E_α)
    let e1_inv = Series::one_minus_exp_over_u(c(1.0)).recip();
    let ea_inv = Series::one_minus_exp_over_u(alpha).recip();
    let om = Series::one_minus_exp_over_u(x - alpha).sub(&Series::one_minus_exp_over_u(1.0 - alpha));
    let ub = Series::monomial(1).scale(k).sub(&ea_inv.scale(xm1)).add(&om.mul(&e1_inv).mul(&ea_inv));
    let mut series = Series::exp_lin(-alpha).mul(&ub).div_u(2);
    if printed {
        series = series.mul(&e1_inv);
    }
    let direct = |u: f64| {
        let ea = (-alpha * u).exp();
        let da = 1.0 - ea;
        let d1 = -(-u).exp_m1();
        let em = (-u).exp();
        let v = (ea * (k - xm1 / da) + (em - (-x * u).exp()) / (d1 * da)) / u;
        if printed {
            v * u / d1
        } else {
            v
        }
    };
    let r = quadrature::integrate_split(&series, direct, QUAD_TOL)?;
    Ok(ValueWithError::new(r.value, r.abs_error, RouteTag::Integral))
}

fn zero_error(x: Complex64) -> Error {
    Error::Zero(format!("G(x;α) vanishes at x = {x}"))
}

/// ln G(x;α) straight from the integral; needs Re x > 0.
pub fn log_g2_integral(x: ComplexValue, alpha: PeriodRatio) -> Result<ValueWithError> {
    check_finite(x, "x")?;
    if x.re <= 0.0 {
        return Err(Error::RouteDomain(format!("integral needs Re x > 0, got {x}")));
    }
    g2_integral(canon(x), alpha.value(), false)
}

/// ln G(x;α); arguments with Re x < 1/2 are moved up with
/// G(x+1;α) = Γ(x/α) G(x;α).
pub fn log_g2(x: ComplexValue, alpha: PeriodRatio) -> Result<ValueWithError> {
    check_finite(x, "x")?;
    let a = alpha.value();
    let mut y = canon(x);
    let mut shift = c(0.0);
    let mut shift_err = 0.0;
    while y.re < 0.5 {
        let lg = log_gamma(y / a).map_err(|_| zero_error(y))?;
        shift += lg.value;
        shift_err += lg.abs_error;
        y += 1.0;
    }
    let r = g2_integral(y, a, false)?;
    let route = if shift_err > 0.0 || shift != c(0.0) { RouteTag::IntegralRecursion } else { RouteTag::Integral };
    Ok(ValueWithError::new(r.value - shift, r.abs_error + shift_err, route))
}

/// ln G(α;α) = −(1/2) ln α + ((α−1)/2) ln 2π.
pub fn g_alpha_alpha(alpha: PeriodRatio) -> ValueWithError {
    let a = alpha.value();
    let v = -0.5 * a.ln() + (a - 1.0) * 0.5 * LN_2PI;
    ValueWithError::new(v, 4.0 * EPS * v.norm().max(1.0), RouteTag::ClosedForm)
}

// ---------------------------------------------------------------------------
// limit formulas

fn euler_prefix_g2(x: Complex64, a: Complex64, n: usize, variant: u8, printed: bool) -> Result<Complex64> {
    let nf = n as f64;
    let xm1 = x - 1.0;
    let k = xm1 * (x - a * 2.0) / (a * 2.0);
    let mut acc = CompensatedC::new();
    match variant {
        1 => {
            acc.add(k * (1.0 + nf / a).ln());
            acc.add(xm1 * log_gamma(1.0 + nf / a)?.value);
            for j in 0..n {
                let jf = j as f64;
                acc.add(log_gamma((1.0 + jf) / a)?.value);
                acc.add(-log_gamma((x + jf) / a).map_err(|_| zero_error(x))?.value);
            }
        }
        _ => {
            acc.add(xm1 * nf * a.ln());
            acc.add(k * (1.0 / a + nf).ln());
            let g = if printed { log_gamma(1.0 / a + nf)? } else { log_gamma(c(nf + 1.0))? };
            acc.add(xm1 * g.value);
            for j in 0..n {
                let jf = j as f64;
                acc.add(log_gamma(1.0 + a * jf)?.value);
                acc.add(-log_gamma(x + a * jf).map_err(|_| zero_error(x))?.value);
            }
        }
    }
    Ok(acc.value())
}

/// The n-th prefix of the first (variant 1) or second (variant 2) limit
/// expression; the error is the change from n/2 to n.
pub fn euler_limit_g2(x: ComplexValue, alpha: PeriodRatio, n: usize, variant: u8) -> Result<ValueWithError> {
    check_finite(x, "x")?;
    if n < 2 {
        return Err(Error::Domain("limit prefix needs n ≥ 2".into()));
    }
    if variant != 1 && variant != 2 {
        return Err(Error::Domain(format!("limit variant must be 1 or 2, got {variant}")));
    }
    let a = alpha.value();
    let x = canon(x);
    let full = euler_prefix_g2(x, a, n, variant, false)?;
    let half = euler_prefix_g2(x, a, n / 2, variant, false)?;
    Ok(ValueWithError::new(full, (full - half).norm(), RouteTag::EulerLimit))
}

// ---------------------------------------------------------------------------
// lattice product

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeConstants {
    pub a: ComplexValue,
    pub b: ComplexValue,
    pub alpha: PeriodRatio,
    pub abs_error: f64,
}

/// a = ∂ₓ ln G(1;α) − ψ(1)/α and b = (∂ₓ² ln G(1;α) − ψ′(1)/α²)/2, with the
/// derivatives taken under the integral sign.
pub fn lattice_constants(alpha: PeriodRatio) -> Result<LatticeConstants> {
    let al = alpha.value();
    let e1_inv = Series::one_minus_exp_over_u(c(1.0)).recip();
    let ea_inv = Series::one_minus_exp_over_u(al).recip();
    let tail = Series::exp_lin(al - 1.0).mul(&e1_inv).mul(&ea_inv);
    let k1 = (1.0 - al * 2.0) / (al * 2.0);

    // first derivative at x = 1: e^{−αu}/u {k1 − 1/(1−e^{−αu}) + u e^{−(1−α)u}/D}
    let s1 = Series::exp_lin(-al).mul(&Series::monomial(1).scale(k1).sub(&ea_inv).add(&tail)).div_u(2);
    let d1 = quadrature::integrate_split(
        &s1,
        |u| {
            let ea = (-al * u).exp();
            let da = 1.0 - ea;
            ea * (k1 - 1.0 / da) / u + (-u).exp() / (-(-u).exp_m1() * da)
        },
        QUAD_TOL,
    )?;
    // second derivative: e^{−αu}/(αu) − u e^{−u}/D
    let s2 = Series::exp_lin(-al).mul(&Series::constant(1.0 / al).sub(&tail)).div_u(1);
    let d2 = quadrature::integrate_split(
        &s2,
        |u| {
            let ea = (-al * u).exp();
            ea / (al * u) - u * (-u).exp() / (-(-u).exp_m1() * (1.0 - ea))
        },
        QUAD_TOL,
    )?;
    let a = d1.value + euler_gamma() / al;
    let b = 0.5 * (d2.value - PI * PI / 6.0 / (al * al));
    Ok(LatticeConstants { a, b, alpha, abs_error: d1.abs_error + d2.abs_error })
}

/// Finite-difference fallback for real α, step h at x = 1.
pub fn lattice_constants_fd(alpha: PeriodRatio, h: f64) -> Result<LatticeConstants> {
    let al = alpha
        .as_real()
        .ok_or_else(|| Error::Domain("finite differences need a real period ratio".into()))?;
    let f = |x: f64| log_g2(c(x), alpha).map(|v| v.value.re).unwrap_or(f64::NAN);
    let d1 = quadrature::derivative_at(f, 1.0, 1, h)?;
    let d2 = quadrature::derivative_at(f, 1.0, 2, h)?;
    Ok(LatticeConstants {
        a: c(d1.value + euler_gamma() / al),
        b: c(0.5 * (d2.value - PI * PI / 6.0 / (al * al))),
        alpha,
        abs_error: d1.abs_error + d2.abs_error,
    })
}

/// ζ(s, a) for integer s ≥ 2, shifting a to the right half plane first.
fn hurwitz_int(s: u32, a: Complex64) -> Result<Complex64> {
    let mut acc = c(0.0);
    let mut a = a;
    while a.re < 1.0 {
        acc += a.powi(-(s as i32));
        a += 1.0;
    }
    Ok(acc + hurwitz_zeta(c(s as f64), a)?.value)
}

/// Σ_{m ≥ 0, n > N} (m + nα)^{−j} by Euler–Maclaurin in m, then Hurwitz
/// sums in n.
fn far_rows(j: u32, alpha: Complex64, big_n: usize) -> Result<(Complex64, f64)> {
    let n1 = c(big_n as f64 + 1.0);
    let jf = j as f64;
    let mut s = alpha.powi(1 - j as i32) / (jf - 1.0) * hurwitz_zeta(c(jf - 1.0), n1)?.value
        + alpha.powi(-(j as i32)) * 0.5 * hurwitz_zeta(c(jf), n1)?.value;
    let mut rising = jf; // (j)_{2k−1}
    let mut fact = 2.0; // (2k)!
    let mut prev = f64::INFINITY;
    let mut last = 0.0;
    for k in 1..30u32 {
        let p = j + 2 * k - 1;
        let t = bernoulli_f64(2 * k as usize) / fact * rising * alpha.powi(-(p as i32))
            * hurwitz_zeta(c(p as f64), n1)?.value;
        let tn = t.norm();
        if tn > prev {
            break;
        }
        s += t;
        last = tn;
        prev = tn;
        if tn < 1e-18 * s.norm() {
            break;
        }
        rising *= (jf + 2.0 * k as f64 - 1.0) * (jf + 2.0 * k as f64);
        fact *= (2.0 * k as f64 + 1.0) * (2.0 * k as f64 + 2.0);
    }
    Ok((s, last))
}

/// ln y + Σ_{(m,n)≠(0,0)} [ln(1 + y/w) − y/w + y²/(2w²)], w = m + nα, over
/// the box 0 ≤ m, n ≤ N plus the analytic tail. The second component sums
/// y²/(2w²) over the box, which the printed convergence factor adds.
fn canonical_log(y: Complex64, alpha: Complex64, big_n: usize) -> Result<(Complex64, f64, Complex64)> {
    if y == c(0.0) {
        return Err(zero_error(y));
    }
    let mut acc = CompensatedC::new();
    let mut extra = CompensatedC::new();
    let mut mag = y.ln().norm();
    acc.add(y.ln());
    for n in 0..=big_n {
        for m in 0..=big_n {
            if m == 0 && n == 0 {
                continue;
            }
            let w = alpha * n as f64 + m as f64;
            let t = y / w;
            let term = if t.norm() < 0.05 {
                // Σ_{j≥3} (−1)^{j+1} t^j/j
                let mut s = c(0.0);
                let mut p = t * t * t;
                for j in 3..16 {
                    let v = p / j as f64;
                    s += if j % 2 == 1 { v } else { -v };
                    p *= t;
                }
                s
            } else {
                let one_t = 1.0 + t;
                if one_t.norm() < 1e-300 {
                    return Err(zero_error(-w));
                }
                one_t.ln() - t + t * t * 0.5
            };
            mag += term.norm();
            acc.add(term);
            extra.add(t * t * 0.5);
        }
    }
    // nearest excluded lattice point bounds the tail's radius of convergence
    let mut r_min = f64::INFINITY;
    for n in 0..=big_n {
        r_min = r_min.min((alpha * n as f64 + (big_n as f64 + 1.0)).norm());
    }
    let far = alpha * (big_n as f64 + 1.0);
    r_min = r_min.min(if alpha.re >= 0.0 { far.norm() } else { far.im.abs() });
    let ratio = y.norm() / r_min;
    if ratio > 0.5 {
        return Err(Error::RouteDomain(format!(
            "|x| = {} too large for a lattice box of size {big_n}",
            y.norm()
        )));
    }
    let mut tail = c(0.0);
    let mut err = 0.0;
    let mut yp = y * y;
    for j in 3..200u32 {
        yp *= y;
        let mut a_j = c(0.0);
        for n in 0..=big_n {
            a_j += hurwitz_int(j, alpha * n as f64 + (big_n as f64 + 1.0))?;
        }
        let (b_j, em_err) = far_rows(j, alpha, big_n)?;
        let t = yp / j as f64 * (a_j + b_j);
        let t = if j % 2 == 1 { t } else { -t };
        tail += t;
        err += (yp.norm() / j as f64) * em_err;
        if t.norm() < 1e-18 * tail.norm().max(1e-300) || t.norm() < 1e-30 {
            err += t.norm() * ratio / (1.0 - ratio);
            break;
        }
    }
    acc.add(tail);
    let v = acc.value();
    Ok((v, err + 8.0 * EPS * mag, extra.value()))
}

/// ln of the quarter-lattice Weierstrass product
/// (x/α) e^{ax+bx²} Π' (1+x/w) e^{−x/w+x²/(2w²)}.
pub fn lattice_product(
    x: ComplexValue,
    alpha: PeriodRatio,
    constants: &LatticeConstants,
    n_max: usize,
) -> Result<ValueWithError> {
    check_finite(x, "x")?;
    if n_max < 1 {
        return Err(Error::Domain("lattice box needs n_max ≥ 1".into()));
    }
    let x = canon(x);
    let al = alpha.value();
    let (w, err, _) = canonical_log(x, al, n_max)?;
    let v = w - al.ln() + constants.a * x + constants.b * x * x;
    let err = err + constants.abs_error * (x.norm() + x.norm_sqr());
    Ok(ValueWithError::new(v, err, RouteTag::LatticeProduct))
}

// ---------------------------------------------------------------------------
// q-product and the reflection diagnostic

fn q_product_from(x: Complex64, q: Complex64, k_start: usize, k_max: usize) -> Result<ValueWithError> {
    if q.norm() >= 1.0 {
        return Err(Error::Domain(format!("q-product needs |q| < 1, got |q| = {}", q.norm())));
    }
    let z = (Complex64::i() * 2.0 * PI * x).exp();
    let q2 = q * q;
    let mut acc = CompensatedC::new();
    let mut p = q2.powu(k_start as u32) * z;
    for _ in k_start..=k_max {
        let f = 1.0 - p;
        if f.norm() == 0.0 {
            return Err(Error::Zero(format!("q-product factor vanishes at x = {x}")));
        }
        acc.add(f.ln());
        p *= q2;
    }
    // |Σ_{k>K} ln(1 − t_k)| ≤ Σ |t_k|/(1 − |t_k|), |t_k| ≤ |q|^{2k}|z|
    let t = p.norm();
    let bound = if t < 1.0 { t / ((1.0 - q2.norm()) * (1.0 - t)) } else { f64::INFINITY };
    let v = acc.value();
    Ok(ValueWithError::new(v, bound + 4.0 * EPS * v.norm().max(1.0), RouteTag::QProduct))
}

/// ln O(x) = Σ_{k=1}^{k_max} ln(1 − q^{2k} e^{2πix}) with a geometric tail
/// bound.
pub fn q_theta_product(x: ComplexValue, q: ComplexValue, k_max: usize) -> Result<ValueWithError> {
    check_finite(x, "x")?;
    check_finite(q, "q")?;
    q_product_from(x, q, 1, k_max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QInterpretation {
    /// q = πiα
    AsPrinted,
    /// q = e^{πiα}
    Exponential,
}

impl QInterpretation {
    pub const ALL: [QInterpretation; 2] = [QInterpretation::AsPrinted, QInterpretation::Exponential];

    pub fn as_str(self) -> &'static str {
        match self {
            QInterpretation::AsPrinted => "q = πiα",
            QInterpretation::Exponential => "q = e^{πiα}",
        }
    }

    pub fn q(self, alpha: ComplexValue) -> ComplexValue {
        match self {
            QInterpretation::AsPrinted => Complex64::i() * PI * alpha,
            QInterpretation::Exponential => (Complex64::i() * PI * alpha).exp(),
        }
    }
}

/// Fit quality of one model for ln[G(1+x;α) G(−x;−α)/O(x)].
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFit {
    pub coefficients: Vec<ComplexValue>,
    pub rms_residual: f64,
    pub max_residual: f64,
    /// max over the samples of the difference between fits on the two
    /// halves of the sample set
    pub split_drift: f64,
}

impl ModelFit {
    pub fn fits(&self, tol: f64) -> bool {
        self.max_residual < tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionDiagnostic {
    pub alpha: ComplexValue,
    pub interpretation: QInterpretation,
    pub q: ComplexValue,
    /// printed form: constant C with O(x) = Π_{k≥1}
    pub constant: ModelFit,
    /// e^{c0 + c1 x + c2 x²} O(x), covering the unknown lattice constants of G(−x;−α)
    pub quadratic: ModelFit,
    /// e^{c0 + c1 x + c2 x²} Π_{k≥0} (1 − q^{2k} e^{2πix})
    pub quadratic_with_k0: ModelFit,
}

pub fn default_reflection_samples() -> Vec<ComplexValue> {
    (0..12).map(|j| Complex64::new(0.15 + 0.05 * j as f64, 0.03)).collect()
}

/// Least squares for y ≈ Σ_{i≤degree} c_i x^i over complex data.
fn poly_fit(xs: &[Complex64], ys: &[Complex64], degree: usize) -> Vec<Complex64> {
    let m = degree + 1;
    let mut a = vec![vec![c(0.0); m + 1]; m];
    for (x, y) in xs.iter().zip(ys) {
        let pows: Vec<Complex64> = (0..m).map(|i| x.powu(i as u32)).collect();
        for r in 0..m {
            for col in 0..m {
                a[r][col] += pows[r].conj() * pows[col];
            }
            a[r][m] += pows[r].conj() * y;
        }
    }
    // Gaussian elimination with partial pivoting
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm())).unwrap();
        a.swap(col, piv);
        for r in col + 1..m {
            let f = a[r][col] / a[col][col];
            for k in col..=m {
                let v = a[col][k];
                a[r][k] -= f * v;
            }
        }
    }
    let mut coef = vec![c(0.0); m];
    for r in (0..m).rev() {
        let mut s = a[r][m];
        for k in r + 1..m {
            s -= a[r][k] * coef[k];
        }
        coef[r] = s / a[r][r];
    }
    coef
}

fn poly_eval(coef: &[Complex64], x: Complex64) -> Complex64 {
    coef.iter().rev().fold(c(0.0), |acc, &k| acc * x + k)
}

fn fit_model(xs: &[Complex64], ys: &[Complex64], degree: usize) -> ModelFit {
    let coef = poly_fit(xs, ys, degree);
    let res: Vec<f64> = xs.iter().zip(ys).map(|(&x, &y)| (y - poly_eval(&coef, x)).norm()).collect();
    let rms = (res.iter().map(|r| r * r).sum::<f64>() / res.len() as f64).sqrt();
    let max = res.iter().copied().fold(0.0, f64::max);
    let h = xs.len() / 2;
    let first = poly_fit(&xs[..h], &ys[..h], degree);
    let second = poly_fit(&xs[h..], &ys[h..], degree);
    let drift = xs.iter().map(|&x| (poly_eval(&first, x) - poly_eval(&second, x)).norm()).fold(0.0, f64::max);
    ModelFit { coefficients: coef, rms_residual: rms, max_residual: max, split_drift: drift }
}

/// Make successive imaginary parts continuous.
fn unwrap(ys: &mut [Complex64]) {
    for i in 1..ys.len() {
        let d = ys[i].im - ys[i - 1].im;
        ys[i].im -= (d / (2.0 * PI)).round() * 2.0 * PI;
    }
}

/// Fits the printed reflection formula under one reading of q. Both sides
/// use canonical lattice products, so G(1+x;α) G(−x;−α) is known up to an
/// exp-quadratic factor; the three models separate that freedom from the
/// structure of O(x).
pub fn reflection_diagnostic(
    alpha: PeriodRatio,
    interpretation: QInterpretation,
    sample_xs: &[ComplexValue],
) -> Result<ReflectionDiagnostic> {
    if sample_xs.len() < 6 {
        return Err(Error::Domain("reflection diagnostic needs at least 6 samples".into()));
    }
    let al = alpha.value();
    let q = interpretation.q(al);
    if q.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "{} gives |q| = {:.4} ≥ 1 for α = {al}; the product diverges",
            interpretation.as_str(),
            q.norm()
        )));
    }
    let mut base = Vec::with_capacity(sample_xs.len());
    let mut k0 = Vec::with_capacity(sample_xs.len());
    for &x in sample_xs {
        check_finite(x, "sample")?;
        let (w1, _, _) = canonical_log(1.0 + x, al, DEFAULT_LATTICE_N)?;
        let (w2, _, _) = canonical_log(-x, -al, DEFAULT_LATTICE_N)?;
        let o = q_product_from(x, q, 1, 400)?.value;
        let o0 = q_product_from(x, q, 0, 0)?.value;
        base.push(w1 + w2 - o);
        k0.push(w1 + w2 - o - o0);
    }
    unwrap(&mut base);
    unwrap(&mut k0);
    Ok(ReflectionDiagnostic {
        alpha: al,
        interpretation,
        q,
        constant: fit_model(sample_xs, &base, 0),
        quadratic: fit_model(sample_xs, &base, 2),
        quadratic_with_k0: fit_model(sample_xs, &k0, 2),
    })
}

// ---------------------------------------------------------------------------
// checks

fn params(x: ComplexValue, alpha: PeriodRatio) -> Vec<(&'static str, f64)> {
    let a = alpha.value();
    let mut p = vec![("x", x.re)];
    if x.im != 0.0 {
        p.push(("x_im", x.im));
    }
    p.push(("alpha", a.re));
    if a.im != 0.0 {
        p.push(("alpha_im", a.im));
    }
    p
}

pub fn fe1_check(x: ComplexValue, alpha: PeriodRatio) -> Result<IdentityReport> {
    let lhs = log_g2(x + 1.0, alpha)?.value - log_g2(x, alpha)?.value;
    let rhs = log_gamma(x / alpha.value())?.value;
    Ok(IdentityReport::new(IdentityId::G2Fe1, &params(x, alpha), lhs, rhs))
}

pub fn functional_eq2_check(x: ComplexValue, alpha: PeriodRatio) -> Result<IdentityReport> {
    let a = alpha.value();
    let lhs = log_g2(x + a, alpha)?.value - log_g2(x, alpha)?.value;
    let rhs = (a - 1.0) * 0.5 * LN_2PI - (x * 2.0 - 1.0) * 0.5 * a.ln() + log_gamma(x)?.value;
    Ok(IdentityReport::new(IdentityId::G2Fe2, &params(x, alpha), lhs, rhs))
}

/// The first functional equation through the integral with the corrected
/// prefactor e^{−αu}/u, against the printed prefactor e^{−αu}/(1−e^{−u}).
pub fn representation_check(x: f64, alpha: PeriodRatio) -> Result<IdentityReport> {
    if x < 0.5 {
        return Err(Error::Domain("representation check needs x ≥ 1/2 so no shift is involved".into()));
    }
    let a = alpha.value();
    let x = c(x);
    let rhs = log_gamma(x / a)?.value;
    let lhs = g2_integral(x + 1.0, a, false)?.value - g2_integral(x, a, false)?.value;
    let printed = g2_integral(x + 1.0, a, true)?.value - g2_integral(x, a, true)?.value;
    Ok(IdentityReport::new(IdentityId::G2Representation, &params(x, alpha), lhs, rhs)
        .with_printed(printed, rhs, "prefactor e^{-αu}/(1-e^{-u})"))
}

/// G(x;1/α) = G(αx;α) G(α;α)^{−x} α^{(x−1)(αx−2)/2}.
pub fn inversion_check(x: ComplexValue, alpha: PeriodRatio) -> Result<IdentityReport> {
    let a = alpha.value();
    let inv = PeriodRatio::new(1.0 / a)?;
    let lhs = log_g2(x, inv)?.value;
    let rhs = log_g2(a * x, alpha)?.value - x * g_alpha_alpha(alpha).value + (x - 1.0) * (a * x - 2.0) * 0.5 * a.ln();
    Ok(IdentityReport::new(IdentityId::G2Inversion, &params(x, alpha), lhs, rhs))
}

pub fn alpha_alpha_check(alpha: PeriodRatio) -> Result<IdentityReport> {
    let a = alpha.value();
    let lhs = log_g2(a, alpha)?.value;
    Ok(IdentityReport::new(IdentityId::G2AlphaAlpha, &params(a, alpha)[1..], lhs, g_alpha_alpha(alpha).value))
}

/// ln G(x;α) − ln G(x/(α+1);1/(α+1)) − ln G(x/(α+1);α/(α+1)) against its
/// elementary right side.
pub fn three_term_check(x: ComplexValue, alpha: PeriodRatio) -> Result<IdentityReport> {
    let a = alpha.value();
    let a1 = a + 1.0;
    let y = x / a1;
    let lhs = log_g2(x, alpha)?.value
        - log_g2(y, PeriodRatio::new(1.0 / a1)?)?.value
        - log_g2(y, PeriodRatio::new(a / a1)?)?.value;
    let rhs = y * g_alpha_alpha(alpha).value - x * (x - a1) / (a1 * 2.0) * a.ln() + (x - a1) / a1 * a1.ln()
        + log_gamma(y)?.value;
    Ok(IdentityReport::new(IdentityId::G2ThreeTerm, &params(x, alpha), lhs, rhs))
}

/// ln G(x;(m/n)α) as the double product over j < m, k < n.
pub fn rational_period_check(x: f64, alpha: PeriodRatio, m: u32, n: u32) -> Result<IdentityReport> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("rational period needs m, n ≥ 1".into()));
    }
    let a = alpha.value();
    let (mf, nf) = (m as f64, n as f64);
    let lhs = log_g2(c(x), PeriodRatio::new(a * mf / nf)?)?.value;
    let mut acc = CompensatedC::new();
    acc.add((x - 1.0) * (nf * x - a * mf) / (a * 2.0 * mf) * nf.ln());
    acc.add(c(-(nf - 1.0) * (x - 1.0) * 0.5 * LN_2PI));
    for k in 0..n {
        for j in 0..m {
            let shift = a * (k as f64 * mf) + nf * j as f64;
            acc.add(log_g2((shift + nf * x) / (mf * nf), alpha)?.value);
            acc.add(-log_g2((shift + nf) / (mf * nf), alpha)?.value);
        }
    }
    let mut p = params(c(x), alpha);
    p.push(("m", mf));
    p.push(("n", nf));
    Ok(IdentityReport::new(IdentityId::G2Rational, &p, lhs, acc.value()))
}

/// First limit expression at prefix n against the integral.
pub fn euler_lim1_check(x: ComplexValue, alpha: PeriodRatio, n: usize) -> Result<IdentityReport> {
    let lhs = euler_limit_g2(x, alpha, n, 1)?;
    let rhs = log_g2(x, alpha)?.value;
    let mut p = params(x, alpha);
    p.push(("n", n as f64));
    Ok(IdentityReport::new(IdentityId::G2EulerLim1, &p, lhs.value, rhs)
        .with_note(&format!("prefix change from n/2 to n: {:.3e}", lhs.abs_error)))
}

/// Second limit expression against the first at the same prefix n; the
/// printed Γ(1/α+n)^{x−1} is reported alongside.
pub fn euler_lim2_check(x: ComplexValue, alpha: PeriodRatio, n: usize) -> Result<IdentityReport> {
    let v2 = euler_limit_g2(x, alpha, n, 2)?.value;
    let v1 = euler_limit_g2(x, alpha, n, 1)?.value;
    let printed = euler_prefix_g2(canon(x), alpha.value(), n, 2, true)?;
    let exact = log_g2(x, alpha)?.value;
    let mut p = params(x, alpha);
    p.push(("n", n as f64));
    Ok(IdentityReport::new(IdentityId::G2EulerLim2, &p, v2, v1)
        .with_note(&format!("distance to the integral: {:.3e}", (v2 - exact).norm()))
        .with_printed(printed, v1, "Γ(1/α+n)^{x-1}"))
}

/// Lattice product with the computed constants against the integral; the
/// printed convergence factor e^{x²/w²} and the opposite signs of a, b are
/// reported alongside.
pub fn lattice_check(x: ComplexValue, alpha: PeriodRatio, n_max: usize) -> Result<IdentityReport> {
    let k = lattice_constants(alpha)?;
    let lp = lattice_product(x, alpha, &k, n_max)?;
    let exact = log_g2(x, alpha)?;
    let (_, _, extra) = canonical_log(canon(x), alpha.value(), n_max)?;
    // printed: ln(x/α) − ax − bx² + Σ_box [ln(1+t) − t + t²]
    let printed = lp.value - k.a * x * 2.0 - k.b * x * x * 2.0 + extra;
    let mut p = params(x, alpha);
    p.push(("n_max", n_max as f64));
    let tol = IdentityId::G2Lattice.tolerance().max(lp.abs_error + exact.abs_error);
    let mut r = IdentityReport::new(IdentityId::G2Lattice, &p, lp.value, exact.value);
    r.set_tolerance(tol);
    Ok(r.with_printed(printed, exact.value, "e^{x²/w²}, constants with opposite sign"))
}

pub fn alpha1_check(x: ComplexValue) -> Result<IdentityReport> {
    let one = PeriodRatio::real(1.0)?;
    let lhs = log_g2(x, one)?.value;
    let rhs = log_g(x, GRoute::Auto)?.value;
    Ok(IdentityReport::new(IdentityId::G2Alpha1Degeneration, &params(x, one)[..1], lhs, rhs))
}

/// Runs the diagnostic under both readings of q and records the evidence.
/// The entry is resolved only if a constant C fits under exactly one
/// reading.
pub fn reflection_check(alpha: PeriodRatio) -> Result<IdentityReport> {
    let samples = default_reflection_samples();
    let tol = IdentityId::Reflection.tolerance();
    let mut notes = Vec::new();
    let mut best: Option<ReflectionDiagnostic> = None;
    let mut constant_fits = Vec::new();
    for interp in QInterpretation::ALL {
        match reflection_diagnostic(alpha, interp, &samples) {
            Ok(d) => {
                notes.push(format!(
                    "{}: constant C max residual {:.3e} (split drift {:.3e}); exp-quadratic {:.3e}; exp-quadratic with k = 0 factor {:.3e} (split drift {:.3e})",
                    interp.as_str(),
                    d.constant.max_residual,
                    d.constant.split_drift,
                    d.quadratic.max_residual,
                    d.quadratic_with_k0.max_residual,
                    d.quadratic_with_k0.split_drift
                ));
                if d.constant.fits(tol) {
                    constant_fits.push(interp);
                }
                let better = best.as_ref().is_none_or(|b| d.constant.max_residual < b.constant.max_residual);
                if better {
                    best = Some(d);
                }
            }
            Err(e) => notes.push(format!("{}: {e}", interp.as_str())),
        }
    }
    let best = best.ok_or_else(|| Error::Domain("neither reading of q is evaluable".into()))?;
    let a = alpha.value();
    let p = [("alpha", a.re), ("alpha_im", a.im)];
    let fitted = best.constant.coefficients[0];
    let mut r = IdentityReport::new(IdentityId::Reflection, &p, fitted, fitted);
    r.abs_residual = best.constant.max_residual;
    r.rel_residual = best.constant.max_residual / fitted.norm().max(f64::MIN_POSITIVE);
    r.set_tolerance(tol);
    r.status = if constant_fits.len() == 1 { Status::AmbiguousResolved } else { Status::Unresolved };
    r.append_note(&format!("lhs/rhs show the fitted ln C under {}", best.interpretation.as_str()));
    for n in notes {
        r.append_note(&n);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barnes_g::log_g_weierstrass;
    use proptest::prelude::*;

    fn pr(a: f64) -> PeriodRatio {
        PeriodRatio::real(a).unwrap()
    }

    fn g2(x: f64, a: f64) -> f64 {
        log_g2(c(x), pr(a)).unwrap().value.re
    }

    #[test]
    fn anchors() {
        assert!(g2(1.0, 1.7).abs() < 1e-13);
        let half_ln_pi = 0.5 * std::f64::consts::PI.ln();
        assert!((g2(2.0, 2.0) - half_ln_pi).abs() < 1e-11);
        assert!((g_alpha_alpha(pr(2.0)).value.re - half_ln_pi).abs() < 1e-15);
        assert!(g_alpha_alpha(pr(1.0)).value.norm() < 1e-16);
        assert!(PeriodRatio::real(0.0).is_err());
        assert!(matches!(log_g2(c(-1.5), pr(1.5)), Err(Error::Zero(_))));
        assert!(matches!(log_g2(c(0.0), pr(1.5)), Err(Error::Zero(_))));
    }

    #[test]
    fn alpha_one_reduces_to_g() {
        for x in [0.1, 0.5, 1.7, 3.2, 5.0] {
            let r = alpha1_check(c(x)).unwrap();
            assert!(r.abs_residual < 1e-8, "{r}");
        }
    }

    #[test]
    fn reference_value() {
        // 60-digit quadrature of the same integral
        let v = g2(0.7, 1.6);
        assert!((v - (-0.369_319_781_489_228_48)).abs() < 1e-10, "{v}");
        assert!((g2(2.3, 0.4) - 0.850_931_062_684_499_45).abs() < 1e-10);
        let fe1 = g2(1.7, 1.6) - v;
        assert!((fe1 - 0.705_476_145_985_445_27).abs() < 1e-11);
    }

    #[test]
    fn spec_examples() {
        assert!(functional_eq2_check(c(1.5), pr(2.0)).unwrap().abs_residual < 1e-7);
        assert!(inversion_check(c(2.0), pr(3.0)).unwrap().abs_residual < 1e-7);
        assert!(three_term_check(c(1.2), pr(1.5)).unwrap().abs_residual < 1e-6);
        assert!(rational_period_check(1.7, pr(1.3), 1, 1).unwrap().abs_residual < 1e-12);
        assert!(rational_period_check(1.3, pr(2.0), 1, 2).unwrap().abs_residual < 1e-6);
        assert!(rational_period_check(1.1, pr(1.0), 2, 3).unwrap().abs_residual < 1e-6);
        for a in [0.5, 1.0, 1.5, 2.0, 3.0] {
            assert!(alpha_alpha_check(pr(a)).unwrap().abs_residual < 1e-7);
        }
    }

    #[test]
    fn representation_erratum() {
        let r = representation_check(0.8, pr(1.6)).unwrap();
        assert!(r.pass, "{r}");
        assert_eq!(r.status, Status::ErratumCorrected);
    }

    #[test]
    fn limits() {
        for v in [1, 2] {
            assert_eq!(euler_limit_g2(c(1.0), pr(2.0), 100, v).unwrap().value.norm(), 0.0);
        }
        let r = euler_lim1_check(c(1.5), pr(2.0), 2000).unwrap();
        assert!(r.abs_residual < 1e-3, "{r}");
        let r = euler_lim2_check(c(1.5), pr(2.0), 2000).unwrap();
        assert!(r.abs_residual < 2e-3, "{r}");
        assert_eq!(r.status, Status::ErratumCorrected);
        assert!(euler_limit_g2(c(1.5), pr(2.0), 100, 3).is_err());
    }

    #[test]
    fn lattice_constants_agree() {
        let k = lattice_constants(pr(1.6)).unwrap();
        assert!((k.a.re - 1.279_948_395_412_482).abs() < 1e-9, "{}", k.a);
        assert!((k.b.re - (-1.186_600_178_527_714_7)).abs() < 1e-9, "{}", k.b);
        let f1 = lattice_constants_fd(pr(1.6), 0.1).unwrap();
        let f2 = lattice_constants_fd(pr(1.6), 0.05).unwrap();
        assert!((f1.a - f2.a).norm() < 1e-8);
        assert!((f2.a - k.a).norm() < 1e-7);
        assert!(lattice_constants_fd(PeriodRatio::new(Complex64::new(1.0, 1.0)).unwrap(), 0.1).is_err());
    }

    #[test]
    fn lattice_matches_integral() {
        let one = pr(1.0);
        let k = lattice_constants(one).unwrap();
        let lp = lattice_product(c(0.5), one, &k, DEFAULT_LATTICE_N).unwrap().value.re;
        let w = log_g_weierstrass(c(-0.5), 10_000).unwrap().value.re;
        assert!((lp - w).abs() < 1e-6);
        for x in [0.3, 0.9, 1.5, 2.2, 3.0] {
            let r = lattice_check(c(x), pr(2.0), DEFAULT_LATTICE_N).unwrap();
            assert!(r.pass, "{r}");
            assert_eq!(r.status, Status::ErratumCorrected);
        }
        // small-x behaviour: the product tends to ln(x/α) + ax + bx²
        let k2 = lattice_constants(pr(2.0)).unwrap();
        let x = 1e-4;
        let v = lattice_product(c(x), pr(2.0), &k2, 8).unwrap().value;
        let lead = (c(x) / 2.0).ln() + k2.a * x + k2.b * x * x;
        assert!((v - lead).norm() < 1e-10);
    }

    #[test]
    fn q_product() {
        assert_eq!(q_theta_product(c(0.3), c(0.0), 10).unwrap().value, c(0.0));
        let a = q_theta_product(c(0.3), c(0.5), 60).unwrap();
        let b = q_theta_product(c(0.3), c(0.5), 120).unwrap();
        assert!((a.value - b.value).norm() < 1e-16);
        assert!(a.abs_error < 1e-15);
        assert!(matches!(q_theta_product(c(0.3), c(1.0), 10), Err(Error::Domain(_))));
    }

    #[test]
    fn jacobi_triple_product() {
        let q = c(0.3);
        let z = (Complex64::i() * 2.0 * PI * 0.2).exp();
        let to_x = |w: Complex64| w.ln() / (Complex64::i() * 2.0 * PI);
        // 1 − q^{2k} e^{2πix'} = 1 + q^{2k−1} z  when e^{2πix'} = −z/q
        let lhs = q_theta_product(c(0.0), q, 80).unwrap().value
            + q_theta_product(to_x(-z / q), q, 80).unwrap().value
            + q_theta_product(to_x(-1.0 / (z * q)), q, 80).unwrap().value;
        let mut rhs = c(0.0);
        for n in -30i32..=30 {
            rhs += q.powi(n * n) * z.powi(n);
        }
        assert!((lhs.exp() - rhs).norm() < 1e-14);
    }

    #[test]
    fn reflection_readings() {
        let samples = default_reflection_samples();
        let a = PeriodRatio::new(Complex64::new(1.0, 2.0)).unwrap();
        assert!(matches!(
            reflection_diagnostic(a, QInterpretation::AsPrinted, &samples),
            Err(Error::Domain(_))
        ));
        let d = reflection_diagnostic(a, QInterpretation::Exponential, &samples).unwrap();
        assert!(d.quadratic_with_k0.max_residual < 1e-6, "{d:?}");
        assert!(d.quadratic_with_k0.split_drift < 1e-5);
        assert!(!d.constant.fits(1e-6));
        let r = reflection_check(a).unwrap();
        assert!(!r.notes.is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn functional_equations(x in 0.5f64..3.0, a in 0.5f64..3.0) {
            let r = fe1_check(c(x), pr(a)).unwrap();
            prop_assert!(r.abs_residual < 1e-7, "{}", r);
            let r = functional_eq2_check(c(x), pr(a)).unwrap();
            prop_assert!(r.abs_residual < 1e-7, "{}", r);
        }
    }
}
