//! Names, routes and evaluation of every function the CLI exposes.

use std::fmt;
use std::str::FromStr;

use gammamorphic::barnes_g::{self, GRoute};
use gammamorphic::double_sine::{self, PeriodPair};
use gammamorphic::kinkelin::{self, OmegaRoute};
use gammamorphic::special_base;
use gammamorphic::two_period::{self, PeriodRatio, DEFAULT_LATTICE_N};
use gammamorphic::{multi_gamma, ComplexValue, Error, Result, ValueWithError};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Gamma,
    BarnesG,
    Phi,
    Kinkelin,
    G2,
    Gn,
    Kn,
    DoubleSine,
    Glaisher,
    OmegaTilde,
}

impl Function {
    pub const ALL: [Function; 10] = [
        Function::Gamma,
        Function::BarnesG,
        Function::Phi,
        Function::Kinkelin,
        Function::G2,
        Function::Gn,
        Function::Kn,
        Function::DoubleSine,
        Function::Glaisher,
        Function::OmegaTilde,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Function::Gamma => "gamma",
            Function::BarnesG => "barnes-g",
            Function::Phi => "phi",
            Function::Kinkelin => "kinkelin",
            Function::G2 => "g2",
            Function::Gn => "gn",
            Function::Kn => "kn",
            Function::DoubleSine => "double-sine",
            Function::Glaisher => "glaisher",
            Function::OmegaTilde => "omega-tilde",
        }
    }

    /// Constants take no argument.
    pub fn takes_argument(self) -> bool {
        !matches!(self, Function::Glaisher | Function::OmegaTilde)
    }

    /// Route names accepted by `--route`; the first is the default.
    pub fn routes(self) -> &'static [&'static str] {
        match self {
            Function::Gamma => &["auto", "malmsten"],
            Function::BarnesG => &["auto", "series", "weierstrass", "asymptotic", "integral", "euler-limit"],
            Function::Kinkelin => &["auto", "integral"],
            Function::G2 => &["auto", "integral", "lattice"],
            Function::DoubleSine => &["g-ratio", "integral"],
            Function::Glaisher | Function::OmegaTilde => &["zeta-series", "prelimit", "integral-of-ln-k"],
            Function::Phi | Function::Gn | Function::Kn => &["auto"],
        }
    }

    /// Whether the function is multiplicative, so that `--log` makes sense.
    pub fn has_log(self) -> bool {
        self != Function::Phi
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Function {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Function::ALL.iter().copied().find(|f| f.as_str() == s).ok_or_else(|| {
            let names: Vec<_> = Function::ALL.iter().map(|f| f.as_str()).collect();
            format!("unknown function `{s}` (expected one of: {})", names.join(", "))
        })
    }
}

/// Parses `1.5`, `-2i`, `0.5+1e-3i`, `1-2.5i`.
pub fn parse_complex(s: &str) -> std::result::Result<ComplexValue, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse `{s}` as a number (examples: 1.5, 2i, 0.5-1.2i)");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|r| Complex64::new(r, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    let im = im.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// Everything an evaluation may need besides the argument.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    pub route: Option<String>,
    pub alpha: Option<ComplexValue>,
    pub omega1: Option<ComplexValue>,
    pub omega2: Option<ComplexValue>,
    pub n: Option<u32>,
    pub log: bool,
}

/// Problems with the flags themselves (exit 2), as opposed to evaluation
/// errors (exit 1).
#[derive(Debug, Clone, PartialEq)]
pub struct FlagError(pub String);

impl fmt::Display for FlagError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A function with validated settings, ready to evaluate at many points.
pub struct Evaluator {
    function: Function,
    route: &'static str,
    settings: Settings,
    alpha: Option<PeriodRatio>,
    lattice: Option<two_period::LatticeConstants>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, f: Function) -> std::result::Result<T, FlagError> {
    v.ok_or_else(|| FlagError(format!("{f} needs {flag}")))
}

impl Evaluator {
    /// Validates flags; parameter values outside a function's domain are
    /// evaluation errors and surface at the first point.
    pub fn new(function: Function, settings: Settings) -> std::result::Result<Self, FlagError> {
        let routes = function.routes();
        let route = match settings.route.as_deref() {
            None => routes[0],
            Some(r) => routes.iter().copied().find(|&x| x == r).ok_or_else(|| {
                FlagError(format!("{function} has no route `{r}` (expected one of: {})", routes.join(", ")))
            })?,
        };
        if settings.log && !function.has_log() {
            return Err(FlagError(format!("--log does not apply to {function}")));
        }
        let unused = |set: bool, flag: &str| -> std::result::Result<(), FlagError> {
            if set {
                Err(FlagError(format!("{flag} does not apply to {function}")))
            } else {
                Ok(())
            }
        };
        let wants_alpha = function == Function::G2;
        let wants_periods = function == Function::DoubleSine;
        let wants_n = matches!(function, Function::Gn | Function::Kn);
        unused(settings.alpha.is_some() && !wants_alpha, "--alpha")?;
        unused((settings.omega1.is_some() || settings.omega2.is_some()) && !wants_periods, "--omega1/--omega2")?;
        unused(settings.n.is_some() && !wants_n, "--n")?;
        if wants_alpha {
            need(settings.alpha, "--alpha", function)?;
        }
        if wants_periods {
            need(settings.omega1, "--omega1", function)?;
            need(settings.omega2, "--omega2", function)?;
        }
        if wants_n {
            need(settings.n, "--n", function)?;
        }
        Ok(Evaluator { function, route, settings, alpha: None, lattice: None })
    }

    fn alpha(&mut self) -> Result<PeriodRatio> {
        if let Some(a) = self.alpha {
            return Ok(a);
        }
        let a = PeriodRatio::new(self.settings.alpha.expect("validated"))?;
        self.alpha = Some(a);
        Ok(a)
    }

    fn real_arg(&self, x: ComplexValue) -> Result<f64> {
        if x.im != 0.0 {
            return Err(Error::RouteDomain(format!("route `{}` of {} needs a real argument", self.route, self.function)));
        }
        Ok(x.re)
    }

    /// ln of the function (the value itself for φ).
    fn eval_ln(&mut self, x: Option<ComplexValue>) -> Result<ValueWithError> {
        let arg = || x.expect("argument checked by caller");
        match self.function {
            Function::Gamma => match self.route {
                "malmsten" => special_base::log_gamma_malmsten(self.real_arg(arg())?, 1e-13),
                _ => special_base::log_gamma(arg()),
            },
            Function::BarnesG => barnes_g::log_g(arg(), self.route.parse::<GRoute>().expect("route list matches GRoute")),
            Function::Phi => barnes_g::phi(arg()),
            Function::Kinkelin => match self.route {
                "integral" => kinkelin::log_k_integral(self.real_arg(arg())?),
                _ => kinkelin::log_k(arg()),
            },
            Function::G2 => {
                let a = self.alpha()?;
                match self.route {
                    "integral" => two_period::log_g2_integral(arg(), a),
                    "lattice" => {
                        if self.lattice.is_none() {
                            self.lattice = Some(two_period::lattice_constants(a)?);
                        }
                        two_period::lattice_product(arg(), a, self.lattice.as_ref().expect("set"), DEFAULT_LATTICE_N)
                    }
                    _ => two_period::log_g2(arg(), a),
                }
            }
            Function::Gn => multi_gamma::log_gn(self.settings.n.expect("validated"), arg()),
            Function::Kn => multi_gamma::log_kn(self.settings.n.expect("validated"), arg()),
            Function::DoubleSine => {
                let p = PeriodPair::new(self.settings.omega1.expect("validated"), self.settings.omega2.expect("validated"))?;
                match self.route {
                    "integral" => double_sine::log_s2_integral(self.real_arg(arg())?, p),
                    _ => double_sine::log_s2_gratio(arg(), p),
                }
            }
            Function::Glaisher | Function::OmegaTilde => {
                let route: OmegaRoute = self.route.parse().expect("route list matches OmegaRoute");
                let w = kinkelin::log_omega_tilde(route)?;
                if self.function == Function::OmegaTilde {
                    return Ok(w);
                }
                let v = 0.5 * w.value + 1.0 / 12.0;
                Ok(ValueWithError::new(v, 0.5 * w.abs_error + 2.0 * f64::EPSILON, w.route))
            }
        }
    }

    /// The function value (or its logarithm under `--log`) at `x`.
    pub fn eval(&mut self, x: Option<ComplexValue>) -> Result<ValueWithError> {
        if self.function.takes_argument() != x.is_some() {
            return Err(Error::Domain(format!(
                "{} {}",
                self.function,
                if x.is_some() { "takes no argument" } else { "needs an argument" }
            )));
        }
        let v = self.eval_ln(x)?;
        if self.settings.log || !self.function.has_log() {
            return v.finite();
        }
        let e = v.exp();
        if !(e.value.re.is_finite() && e.value.im.is_finite()) {
            return Err(Error::Overflow(format!(
                "{} at {} exceeds binary64 (ln value {}); use --log",
                self.function,
                x.map(|z| z.to_string()).unwrap_or_default(),
                v.value
            )));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex("-2i").unwrap(), Complex64::new(0.0, -2.0));
        assert_eq!(parse_complex("0.5+1e-3i").unwrap(), Complex64::new(0.5, 1e-3));
        assert_eq!(parse_complex("1e-3-2.5i").unwrap(), Complex64::new(1e-3, -2.5));
        assert_eq!(parse_complex("3 - i").unwrap(), Complex64::new(3.0, -1.0));
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn names_round_trip() {
        for f in Function::ALL {
            assert_eq!(f.as_str().parse::<Function>().unwrap(), f);
            let e = Evaluator::new(f, Settings::default());
            // functions with required parameters reject empty settings
            assert_eq!(e.is_ok(), !matches!(f, Function::G2 | Function::DoubleSine | Function::Gn | Function::Kn));
        }
    }

    #[test]
    fn barnes_g_at_four() {
        let mut e = Evaluator::new(Function::BarnesG, Settings::default()).unwrap();
        let v = e.eval(Some(Complex64::new(4.0, 0.0))).unwrap();
        assert!((v.value.re - 2.0).abs() < 1e-13);
        assert!(matches!(e.eval(Some(Complex64::new(0.0, 0.0))), Err(Error::Zero(_))));
    }

    #[test]
    fn flag_validation() {
        let s = Settings { route: Some("nope".into()), ..Settings::default() };
        assert!(Evaluator::new(Function::BarnesG, s).is_err());
        let s = Settings { alpha: Some(Complex64::new(2.0, 0.0)), ..Settings::default() };
        assert!(Evaluator::new(Function::BarnesG, s).is_err());
        let s = Settings { log: true, ..Settings::default() };
        assert!(Evaluator::new(Function::Phi, s).is_err());
    }
}
