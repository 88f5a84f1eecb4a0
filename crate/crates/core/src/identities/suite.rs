use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{IdentityId, Status};
use super::report::IdentityReport;
use crate::double_sine::{self, PeriodPair};
use crate::two_period::{self, PeriodRatio, DEFAULT_EULER_N, DEFAULT_LATTICE_N};
use crate::{barnes_g, kinkelin, multi_gamma, ComplexValue, Error, Result};

pub type Params = BTreeMap<String, f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Density {
    Small,
    Standard,
    Dense,
}

impl Density {
    pub const ALL: [Density; 3] = [Density::Small, Density::Standard, Density::Dense];

    pub fn as_str(self) -> &'static str {
        match self {
            Density::Small => "small",
            Density::Standard => "standard",
            Density::Dense => "dense",
        }
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Density {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Density::ALL
            .iter()
            .copied()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| format!("unknown density `{s}` (expected small, standard or dense)"))
    }
}

/// Parameter names each identity reads; `_im` companions are optional.
pub fn parameter_names(id: IdentityId) -> &'static [&'static str] {
    use IdentityId::*;
    match id {
        FeG | GWeierstrass | Duplication | PhiClosed | PhiSeries1 | KinkelinFe | G2Alpha1Degeneration => &["x"],
        Malmsten | GIntegral | Asymptotic | IntLogSin | IntXCot | KinkelinDef | GkRelation | RaabeAnalog => &["x"],
        IntegerValues | OmegaRoutes | KAsymptotic => &["n"],
        IntLogGamma => &["a"],
        GEulerLimit => &["x", "n"],
        Multiplication | GammaMult | KinkelinMult | GnFe | KnFe => &["n", "x"],
        RootsOfUnity => &["a", "x", "n", "m_max"],
        PnTelescope => &["n", "x", "u"],
        KnConversion => &["n", "m"],
        G2Fe1 | G2Fe2 | G2Representation | G2Inversion | G2ThreeTerm => &["x", "alpha"],
        G2AlphaAlpha | Reflection => &["alpha"],
        G2Rational => &["x", "alpha", "m", "n"],
        G2EulerLim1 | G2EulerLim2 => &["x", "alpha", "n"],
        G2Lattice => &["x", "alpha", "n_max"],
        PhiSeries2 | LngPowerSeries => &["a", "x"],
        GlaisherDef => &[],
        BernoulliDifference => &["p", "x"],
        BernoulliRaabe => &["p", "n", "x"],
        S2Crossroute | S2Symmetry | S2Inversion | S2Shift => &["x", "omega1", "omega2"],
        S2Homogeneity => &["x", "omega1", "omega2", "lambda"],
    }
}

struct Args<'a> {
    id: IdentityId,
    p: &'a Params,
}

impl Args<'_> {
    fn missing(&self, key: &str) -> Error {
        Error::Domain(format!(
            "{} needs parameters [{}]; `{key}` is missing",
            self.id,
            parameter_names(self.id).join(", ")
        ))
    }

    fn f(&self, key: &str) -> Result<f64> {
        let v = self.p.get(key).copied().ok_or_else(|| self.missing(key))?;
        if !v.is_finite() {
            return Err(Error::Domain(format!("{}: parameter `{key}` must be finite", self.id)));
        }
        Ok(v)
    }

    fn z(&self, key: &str) -> Result<ComplexValue> {
        let im = self.p.get(&format!("{key}_im")).copied().unwrap_or(0.0);
        Ok(Complex64::new(self.f(key)?, im))
    }

    fn real(&self, key: &str) -> Result<f64> {
        if self.p.get(&format!("{key}_im")).is_some_and(|&v| v != 0.0) {
            return Err(Error::Domain(format!("{}: `{key}` must be real", self.id)));
        }
        self.f(key)
    }

    fn u(&self, key: &str) -> Result<u32> {
        let v = self.f(key)?;
        if v < 0.0 || v.fract() != 0.0 || v > u32::MAX as f64 {
            return Err(Error::Domain(format!("{}: `{key}` must be a non-negative integer, got {v}", self.id)));
        }
        Ok(v as u32)
    }

    fn alpha(&self) -> Result<PeriodRatio> {
        PeriodRatio::new(self.z("alpha")?)
    }

    fn periods(&self) -> Result<PeriodPair> {
        PeriodPair::real(self.f("omega1")?, self.f("omega2")?)
    }
}

/// Runs one identity at one parameter point.
pub fn run_identity(id: IdentityId, params: &Params) -> Result<IdentityReport> {
    let names = parameter_names(id);
    for key in params.keys() {
        let base = key.strip_suffix("_im").unwrap_or(key);
        if !names.contains(&base) {
            return Err(Error::Domain(format!(
                "{id} takes parameters [{}]; `{key}` is not one of them",
                names.join(", ")
            )));
        }
    }
    let a = Args { id, p: params };
    use IdentityId::*;
    match id {
        FeG => barnes_g::fe_g_check(a.z("x")?),
        IntegerValues => barnes_g::integer_values_check(a.u("n")?),
        Malmsten => barnes_g::malmsten_check(a.real("x")?),
        GIntegral => barnes_g::g_integral_check(a.real("x")?),
        GWeierstrass => barnes_g::g_weierstrass_check(a.z("x")?),
        GEulerLimit => barnes_g::g_euler_limit_check(a.real("x")?, a.u("n")? as usize),
        Duplication => barnes_g::duplication_check(a.z("x")?),
        Multiplication => barnes_g::multiplication_check(a.u("n")?, a.z("x")?),
        Asymptotic => barnes_g::asymptotic_check(a.real("x")?),
        IntLogGamma => barnes_g::int_log_gamma_check(a.real("a")?),
        IntLogSin => barnes_g::int_log_sin_check(a.real("x")?),
        IntXCot => barnes_g::int_x_cot_check(a.real("x")?),
        RootsOfUnity => barnes_g::roots_of_unity_product_check(a.z("a")?, a.z("x")?, a.u("n")?, a.u("m_max")? as usize),
        PhiClosed => barnes_g::phi_closed_check(a.real("x")?),
        PhiSeries1 => barnes_g::phi_series_check(a.real("x")?),
        PhiSeries2 => barnes_g::phi_shift_series_check(a.real("a")?, a.real("x")?),
        LngPowerSeries => barnes_g::lng_power_series_check(a.real("a")?, a.real("x")?),
        GnFe => multi_gamma::gn_fe_check(a.u("n")?, a.z("x")?),
        PnTelescope => multi_gamma::pn_telescope_check(a.u("n")?, a.z("x")?, a.real("u")?),
        KnFe => multi_gamma::kn_fe_check(a.u("n")?, a.z("x")?),
        KnConversion => multi_gamma::kn_conversion_check(a.u("n")?, a.u("m")?),
        G2Fe1 => two_period::fe1_check(a.z("x")?, a.alpha()?),
        G2Fe2 => two_period::functional_eq2_check(a.z("x")?, a.alpha()?),
        G2Representation => two_period::representation_check(a.real("x")?, a.alpha()?),
        G2Inversion => two_period::inversion_check(a.z("x")?, a.alpha()?),
        G2AlphaAlpha => two_period::alpha_alpha_check(a.alpha()?),
        G2ThreeTerm => two_period::three_term_check(a.z("x")?, a.alpha()?),
        G2Rational => two_period::rational_period_check(a.real("x")?, a.alpha()?, a.u("m")?, a.u("n")?),
        G2EulerLim1 => two_period::euler_lim1_check(a.z("x")?, a.alpha()?, a.u("n")? as usize),
        G2EulerLim2 => two_period::euler_lim2_check(a.z("x")?, a.alpha()?, a.u("n")? as usize),
        G2Lattice => two_period::lattice_check(a.z("x")?, a.alpha()?, a.u("n_max")? as usize),
        G2Alpha1Degeneration => two_period::alpha1_check(a.z("x")?),
        Reflection => two_period::reflection_check(a.alpha()?),
        KinkelinFe => kinkelin::kinkelin_fe_check(a.z("x")?),
        KinkelinDef => kinkelin::kinkelin_def_check(a.real("x")?),
        GkRelation => kinkelin::gk_relation_check(a.real("x")?),
        KinkelinMult => kinkelin::kinkelin_mult_check(a.u("n")?, a.real("x")?),
        OmegaRoutes => kinkelin::omega_routes_check(a.u("n")? as usize),
        RaabeAnalog => kinkelin::raabe_check(a.real("x")?),
        KAsymptotic => kinkelin::k_asymptotic_check(a.u("n")?),
        GlaisherDef => Ok(kinkelin::glaisher_def_check()),
        BernoulliDifference => kinkelin::bernoulli_difference_check(a.u("p")? as usize, a.z("x")?),
        BernoulliRaabe => kinkelin::bernoulli_raabe_check(a.u("p")? as usize, a.u("n")?, a.real("x")?),
        GammaMult => kinkelin::gamma_mult_check(a.u("n")?, a.z("x")?),
        S2Crossroute => double_sine::crossroute_check(a.real("x")?, a.periods()?),
        S2Symmetry => double_sine::symmetry_check(a.real("x")?, a.periods()?),
        S2Inversion => double_sine::inversion_check(a.z("x")?, a.periods()?),
        S2Homogeneity => double_sine::homogeneity_check(a.z("x")?, a.periods()?, a.real("lambda")?),
        S2Shift => double_sine::shift_check(a.z("x")?, a.periods()?),
    }
}

fn pt(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Cartesian product of two point lists, second index fastest.
fn cross(a: &[Params], b: &[Params]) -> Vec<Params> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            let mut r = p.clone();
            r.extend(q.iter().map(|(k, v)| (k.clone(), *v)));
            out.push(r);
        }
    }
    out
}

fn xs(key: &str, v: &[f64]) -> Vec<Params> {
    v.iter().map(|&x| pt(&[(key, x)])).collect()
}

fn cx(re: f64, im: f64) -> Params {
    pt(&[("x", re), ("x_im", im)])
}

/// Grid points in priority order with the small and standard cut-offs;
/// dense takes everything.
fn full_grid(id: IdentityId) -> (Vec<Params>, usize, usize) {
    use IdentityId::*;
    let unit10 = [0.35, 0.5, 0.1, 0.9, 0.2, 0.3, 0.45, 0.6, 0.75, 0.85];
    let g2x = [0.7, 1.6, 2.3, 3.1, 0.4];
    let g2a = [0.8, 1.6, 0.4, 1.0, 2.5];
    match id {
        FeG => {
            let mut v = xs("x", &[2.5, 0.3, 50.0]);
            v.push(cx(-1.5, 0.7));
            v.extend((0..200).map(|k| pt(&[("x", 0.05 + 0.25 * k as f64)])));
            (v, 3, 24)
        }
        IntegerValues => (xs("n", &[4.0, 1.0, 12.0, 2.0, 3.0, 5.0, 7.0, 9.0, 6.0, 8.0, 10.0, 11.0]), 3, 8),
        Malmsten => (xs("x", &[0.7, 2.5, 5.0, 0.2, 1.3, 3.7, 9.0, 0.05]), 2, 5),
        GIntegral => (xs("x", &[3.3, 0.5, 1.7, 6.0, 0.2, 2.2, 4.4, 7.5]), 2, 5),
        GWeierstrass => {
            let mut v = xs("x", &[0.4, 2.5]);
            v.push(cx(1.5, 0.8));
            v.extend(xs("x", &[5.0, -0.5, 3.3, 0.9, 7.0]));
            (v, 2, 5)
        }
        GEulerLimit => (cross(&xs("x", &[2.5, 0.5, 1.5, 3.7, 4.2]), &xs("n", &[4000.0])), 2, 4),
        Duplication => {
            let mut v = xs("x", &[1.3, 0.25, 2.7, 0.6, 3.9, 1.05, 4.5, 0.8, 2.1]);
            v.push(cx(0.7, 0.4));
            (v, 2, 5)
        }
        Multiplication => (cross(&xs("x", &[0.7, 1.6, 2.3, 0.35]), &xs("n", &[2.0, 3.0, 5.0])), 3, 6),
        Asymptotic => (xs("x", &[9.5, 8.0, 12.0, 20.0, 35.0, 15.0]), 2, 4),
        IntLogGamma => (xs("a", &[1.7, 0.5, 2.5, 3.0, 0.2, 1.1, 4.0, 0.8, 2.2, 3.6]), 2, 5),
        IntLogSin | IntXCot => (xs("x", &unit10), 2, 5),
        RootsOfUnity => {
            let base = |a: f64, x: f64, xi: f64, n: f64| {
                pt(&[("a", a), ("x", x), ("x_im", xi), ("n", n), ("m_max", 1000.0)])
            };
            let v = vec![
                base(2.0, 0.5, 0.0, 3.0),
                base(2.0, 0.5, 0.0, 1.0),
                base(1.5, 0.4, 0.3, 4.0),
                base(3.0, 1.0, 0.0, 2.0),
                base(2.0, 1.1, 0.0, 3.0),
                base(2.5, 0.8, 0.2, 5.0),
            ];
            (v, 2, 4)
        }
        PhiClosed => (xs("x", &[1.9, 0.6, 3.3, 1.2, 5.0, 0.3, 2.4, 7.0]), 2, 5),
        PhiSeries1 => (xs("x", &[0.5, -0.5, 2.0, 0.1, 5.0, -0.9]), 2, 4),
        PhiSeries2 => (cross(&xs("a", &[1.0, 2.0, 3.5]), &xs("x", &[0.3, -0.4, 0.7])), 2, 6),
        LngPowerSeries => (cross(&xs("a", &[1.0, 2.0]), &xs("x", &[0.25, -0.5, 0.5, -0.25, 0.1])), 2, 6),
        GnFe => {
            let mut x = xs("x", &[0.7, 1.8, 2.6]);
            x.push(cx(0.5, 0.5));
            (cross(&xs("n", &[3.0, 4.0, 5.0]), &x), 2, 6)
        }
        PnTelescope => {
            let xu: Vec<Params> = [(0.7, 0.3), (1.9, 2.0), (3.2, 0.05)]
                .iter()
                .map(|&(x, u)| pt(&[("x", x), ("u", u)]))
                .collect();
            (cross(&xs("n", &[1.0, 2.0, 3.0, 4.0]), &xu), 3, 6)
        }
        G2Fe1 | G2Fe2 => (cross(&xs("x", &g2x), &xs("alpha", &g2a)), 2, 8),
        G2Representation => (cross(&xs("x", &[0.7, 1.6, 2.3]), &xs("alpha", &[0.5, 1.5, 2.0])), 2, 5),
        G2Inversion | G2ThreeTerm => (cross(&xs("x", &[0.7, 1.6, 2.3]), &xs("alpha", &[0.8, 1.6, 0.4])), 2, 5),
        G2AlphaAlpha => (xs("alpha", &[0.4, 0.8, 1.6, 2.5, 3.0]), 2, 5),
        G2Rational => {
            let mn: Vec<Params> = [(1.0, 2.0), (2.0, 1.0), (2.0, 3.0)]
                .iter()
                .map(|&(m, n)| pt(&[("m", m), ("n", n)]))
                .collect();
            let xa = cross(&xs("x", &[0.7, 1.6]), &xs("alpha", &[0.8, 1.5]));
            (cross(&xa, &mn), 3, 6)
        }
        G2EulerLim1 | G2EulerLim2 => {
            let n = DEFAULT_EULER_N as f64;
            (cross(&cross(&xs("x", &[1.5, 0.8, 2.4]), &xs("alpha", &[2.0, 0.7])), &xs("n", &[n])), 2, 4)
        }
        G2Lattice => {
            let mut x = xs("x", &[0.3, 0.7, 1.2, 1.8]);
            x.push(cx(0.5, 0.5));
            let n = DEFAULT_LATTICE_N as f64;
            (cross(&cross(&xs("alpha", &[1.0, 2.0]), &x), &xs("n_max", &[n])), 2, 6)
        }
        G2Alpha1Degeneration => (xs("x", &[0.5, 1.7, 0.1, 3.2, 5.0]), 2, 4),
        Reflection => {
            let a = |re: f64, im: f64| pt(&[("alpha", re), ("alpha_im", im)]);
            (vec![a(1.0, 2.0), a(0.1, 0.25), a(0.5, 1.0)], 1, 2)
        }
        KinkelinFe => {
            let mut v = xs("x", &[1.0, 2.5]);
            v.push(cx(0.8, 0.6));
            v.extend((0..50).map(|k| pt(&[("x", 0.1 + 0.3 * k as f64)])));
            (v, 3, 12)
        }
        KinkelinDef | GkRelation => (xs("x", &[0.5, 1.7, 2.9, 0.2, 4.1, 1.0, 3.5]), 2, 5),
        KinkelinMult => (cross(&xs("n", &[2.0, 3.0]), &xs("x", &[0.6, 1.4, 2.2])), 2, 4),
        OmegaRoutes => (xs("n", &[64.0, 16.0, 256.0]), 1, 2),
        RaabeAnalog => (xs("x", &[0.5, 1.5, 2.7, 0.9]), 2, 3),
        KAsymptotic => (xs("n", &[2000.0, 500.0, 100.0, 5000.0]), 1, 3),
        GlaisherDef => (vec![Params::new()], 1, 1),
        BernoulliDifference => {
            let mut x = xs("x", &[0.3, -1.7]);
            x.push(cx(0.5, 0.5));
            (cross(&xs("p", &[1.0, 2.0, 3.0, 5.0, 8.0, 12.0]), &x), 3, 9)
        }
        BernoulliRaabe => {
            let pn = cross(&xs("p", &[1.0, 2.0, 3.0, 5.0]), &xs("n", &[2.0, 3.0, 4.0]));
            (cross(&pn, &xs("x", &[0.3, 1.1])), 3, 8)
        }
        GammaMult => {
            let mut x = xs("x", &[0.4, 1.7]);
            x.push(cx(0.5, 0.3));
            (cross(&xs("n", &[2.0, 3.0, 5.0]), &x), 2, 6)
        }
        KnFe => {
            let mut x = xs("x", &[0.7, 1.9, 3.1]);
            x.push(cx(0.6, 0.4));
            (cross(&xs("n", &[1.0, 2.0, 3.0]), &x), 2, 6)
        }
        KnConversion => (cross(&xs("n", &[1.0, 2.0, 3.0]), &xs("m", &[2.0, 3.0, 4.0, 5.0, 6.0])), 3, 8),
        S2Crossroute | S2Symmetry => (s2_grid(), 3, 6),
        S2Inversion => {
            let mut v = s2_grid();
            v.insert(3, pt(&[("x", 0.6), ("x_im", 0.1), ("omega1", 1.0), ("omega2", 2.0)]));
            (v, 3, 7)
        }
        S2Homogeneity => (cross(&s2_grid(), &xs("lambda", &[0.5, 2.0])), 2, 6),
        S2Shift => {
            // avoid sin(πx/ω₂) = 0
            let v = s2_grid().into_iter().filter(|p| (p["x"] / p["omega2"]).fract() != 0.0).collect();
            (v, 3, 6)
        }
    }
}

/// Periods (1,1), (1,2), (0.7,1.6) and x at four fractions of ω₁+ω₂,
/// interleaved so that short prefixes cover every period pair.
fn s2_grid() -> Vec<Params> {
    let periods = [(1.0, 1.0), (1.0, 2.0), (0.7, 1.6)];
    let mut v = Vec::new();
    for f in [0.2, 0.6, 0.4, 0.85] {
        for &(w1, w2) in &periods {
            // rounded so parameters print cleanly
            let x = (f * (w1 + w2) * 1e12f64).round() / 1e12;
            v.push(pt(&[("x", x), ("omega1", w1), ("omega2", w2)]));
        }
    }
    v
}

/// The default parameter grid of an identity. Grids are nested:
/// small ⊂ standard ⊂ dense.
pub fn grid(id: IdentityId, density: Density) -> Vec<Params> {
    let (mut v, small, standard) = full_grid(id);
    let n = match density {
        Density::Small => small,
        Density::Standard => standard,
        Density::Dense => v.len(),
    };
    v.truncate(n);
    v
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct StatusCount {
    pub points: usize,
    pub passed: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Summary {
    pub points: usize,
    pub passed: usize,
    pub failed: usize,
    pub verified_failures: usize,
    pub by_status: BTreeMap<&'static str, StatusCount>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub reports: Vec<IdentityReport>,
    pub summary: Summary,
}

impl SuiteResult {
    /// Nonzero iff a verified-status point failed.
    pub fn exit_code(&self) -> i32 {
        if self.summary.verified_failures > 0 {
            1
        } else {
            0
        }
    }

    /// Re-judge every report of the listed identities against a new
    /// tolerance. Statuses stay as computed.
    pub fn with_tolerances(mut self, overrides: &BTreeMap<IdentityId, f64>) -> Self {
        for r in &mut self.reports {
            if let Some(&tol) = overrides.get(&r.id) {
                let was = r.tolerance;
                r.set_tolerance(tol);
                r.append_note(&format!("tolerance overridden from {was:e}"));
            }
        }
        self.summary = summarize(&self.reports);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.reports).expect("reports serialize")
    }

    /// Aligned plain-text table followed by the summary.
    pub fn to_text(&self) -> String {
        let header = ["id", "params", "abs_residual", "rel_residual", "tolerance", "pass", "status", "notes"];
        let rows: Vec<[String; 8]> = self
            .reports
            .iter()
            .map(|r| {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                [
                    r.id.name().to_string(),
                    params.join(","),
                    format!("{:.3e}", r.abs_residual),
                    format!("{:.3e}", r.rel_residual),
                    format!("{:.0e}", r.tolerance),
                    if r.pass { "pass".into() } else { "FAIL".into() },
                    r.status.as_str().to_string(),
                    r.notes.clone(),
                ]
            })
            .collect();
        let mut width = header.map(str::len);
        for row in &rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, cell) in cells.iter().enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(cell);
                } else {
                    s.push_str(cell);
                    s.extend(std::iter::repeat_n(' ', width[i] - cell.chars().count() + 2));
                }
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out = line(&header.map(String::from));
        for row in &rows {
            out.push_str(&line(row));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "\n{} points, {} passed, {} failed, {} failures among verified entries\n",
            s.points, s.passed, s.failed, s.verified_failures
        ));
        for (status, c) in &s.by_status {
            out.push_str(&format!("  {status}: {} points, {} passed\n", c.points, c.passed));
        }
        out
    }
}

fn summarize(reports: &[IdentityReport]) -> Summary {
    let mut s = Summary::default();
    for status in Status::ALL {
        s.by_status.insert(status.as_str(), StatusCount::default());
    }
    for r in reports {
        s.points += 1;
        let c = s.by_status.get_mut(r.status.as_str()).expect("all statuses present");
        c.points += 1;
        if r.pass {
            s.passed += 1;
            c.passed += 1;
        } else {
            s.failed += 1;
            if r.status == Status::Verified {
                s.verified_failures += 1;
            }
        }
    }
    s
}

/// Runs every selected identity over its default grid. Evaluation errors
/// become failing reports; output follows the canonical identity order.
pub fn run_suite(filter: Option<&[IdentityId]>, density: Density) -> SuiteResult {
    let jobs: Vec<(IdentityId, Params)> = IdentityId::ALL
        .iter()
        .copied()
        .filter(|id| filter.is_none_or(|f| f.contains(id)))
        .flat_map(|id| grid(id, density).into_iter().map(move |p| (id, p)))
        .collect();
    let reports: Vec<IdentityReport> = jobs
        .par_iter()
        .map(|(id, p)| run_identity(*id, p).unwrap_or_else(|e| IdentityReport::from_error(*id, p, &e)))
        .collect();
    let summary = summarize(&reports);
    SuiteResult { reports, summary }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_nest() {
        let mut strict = false;
        for &id in IdentityId::ALL {
            let s = grid(id, Density::Small);
            let st = grid(id, Density::Standard);
            let d = grid(id, Density::Dense);
            assert!(!s.is_empty(), "{id}");
            assert_eq!(&st[..s.len()], &s[..], "{id}");
            assert_eq!(&d[..st.len()], &st[..], "{id}");
            strict |= s.len() < st.len();
        }
        assert!(strict);
        assert_eq!(grid(IdentityId::S2Crossroute, Density::Dense).len(), 12);
    }

    #[test]
    fn grid_keys_are_declared() {
        for &id in IdentityId::ALL {
            for p in grid(id, Density::Dense) {
                for k in p.keys() {
                    let base = k.strip_suffix("_im").unwrap_or(k);
                    assert!(parameter_names(id).contains(&base), "{id}: {k}");
                }
                for n in parameter_names(id) {
                    assert!(p.contains_key(*n), "{id}: missing {n}");
                }
            }
        }
    }

    #[test]
    fn run_identity_examples() {
        let r = run_identity(IdentityId::FeG, &pt(&[("x", 2.5)])).unwrap();
        assert!(r.pass && r.abs_residual < 1e-10);
        let r = run_identity(IdentityId::IntegerValues, &pt(&[("n", 4.0)])).unwrap();
        assert_eq!(r.status, Status::ErratumCorrected);
        assert!(r.notes.contains("recursion oracle"));
        let r = run_identity(IdentityId::KinkelinFe, &pt(&[("x", 1.0)])).unwrap();
        assert_eq!((r.lhs, r.rhs, r.abs_residual), (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), 0.0));
        assert!(matches!(run_identity(IdentityId::FeG, &Params::new()), Err(Error::Domain(_))));
        assert!(matches!(run_identity(IdentityId::FeG, &pt(&[("x", 1.0), ("y", 2.0)])), Err(Error::Domain(_))));
        assert!(matches!(run_identity(IdentityId::IntegerValues, &pt(&[("n", 2.5)])), Err(Error::Domain(_))));
    }

    #[test]
    fn errors_become_failures() {
        let r = run_suite(Some(&[IdentityId::GlaisherDef]), Density::Small);
        assert_eq!(r.reports.len(), 1);
        let p = pt(&[("x", 0.0)]);
        let e = IdentityReport::from_error(IdentityId::FeG, &p, &Error::Zero("x".into()));
        assert!(!e.pass && e.notes.contains("ZeroError"));
    }

    #[test]
    fn density_parses() {
        for d in Density::ALL {
            assert_eq!(d.as_str().parse::<Density>().unwrap(), d);
        }
        assert!("huge".parse::<Density>().is_err());
    }
}
