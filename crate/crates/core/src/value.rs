use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

/// Universal argument and result type. Both parts must be finite.
pub type ComplexValue = Complex64;

pub fn check_finite(z: ComplexValue, what: &str) -> Result<ComplexValue> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Domain(format!("{what} is not finite: {z}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RouteTag {
    Stirling,
    Asymptotic,
    EulerMaclaurin,
    ClosedForm,
    Series,
    SeriesRecursion,
    AsymptoticRecursion,
    Weierstrass,
    Integral,
    IntegralRecursion,
    EulerLimit,
    ZetaSeries,
    Prelimit,
    IntegralOfLnK,
    Conversion,
    LatticeProduct,
    QProduct,
    GRatio,
    Exact,
}

impl RouteTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RouteTag::Stirling => "stirling",
            RouteTag::Asymptotic => "asymptotic",
            RouteTag::EulerMaclaurin => "euler-maclaurin",
            RouteTag::ClosedForm => "closed-form",
            RouteTag::Series => "series",
            RouteTag::SeriesRecursion => "series+recursion",
            RouteTag::AsymptoticRecursion => "asymptotic+recursion",
            RouteTag::Weierstrass => "weierstrass",
            RouteTag::Integral => "integral",
            RouteTag::IntegralRecursion => "integral+recursion",
            RouteTag::EulerLimit => "euler-limit",
            RouteTag::ZetaSeries => "zeta-series",
            RouteTag::Prelimit => "prelimit",
            RouteTag::IntegralOfLnK => "integral-of-ln-k",
            RouteTag::Conversion => "conversion",
            RouteTag::LatticeProduct => "lattice-product",
            RouteTag::QProduct => "q-product",
            RouteTag::GRatio => "g-ratio",
            RouteTag::Exact => "exact",
        }
    }
}

impl fmt::Display for RouteTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueWithError {
    pub value: ComplexValue,
    pub abs_error: f64,
    pub route: RouteTag,
}

impl ValueWithError {
    pub fn new(value: ComplexValue, abs_error: f64, route: RouteTag) -> Self {
        ValueWithError { value, abs_error: abs_error.abs(), route }
    }

    pub fn real(value: f64, abs_error: f64, route: RouteTag) -> Self {
        Self::new(ComplexValue::new(value, 0.0), abs_error, route)
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn with_route(mut self, route: RouteTag) -> Self {
        self.route = route;
        self
    }

    /// Exponentiate a logarithmic value, propagating the error bound.
    pub fn exp(&self) -> ValueWithError {
        let v = self.value.exp();
        ValueWithError::new(v, v.norm() * self.abs_error.exp_m1().abs().max(self.abs_error), self.route)
    }

    /// Ensure the value is finite, otherwise report it as a domain problem.
    pub fn finite(self) -> Result<Self> {
        check_finite(self.value, "result")?;
        Ok(self)
    }
}
