//! The run manifest: everything a table or verify run needs, readable from a
//! JSON file or assembled from flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use gammamorphic::identities::IdentityId;
use gammamorphic::ComplexValue;
use num_complex::Complex64;
use serde::Deserialize;

use crate::functions::{parse_complex, FlagError, Function, Settings};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format `{s}` (expected json, csv or text)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

/// A number given either as JSON number or as a complex literal string.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Real(f64),
    Text(String),
}

impl Number {
    fn value(&self, what: &str) -> Result<ComplexValue, FlagError> {
        match self {
            Number::Real(r) => Ok(Complex64::new(*r, 0.0)),
            Number::Text(s) => parse_complex(s).map_err(|e| FlagError(format!("{what}: {e}"))),
        }
    }
}

/// Evenly spaced real points, optionally crossed with an imaginary axis.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    #[serde(default)]
    pub im_start: Option<f64>,
    #[serde(default)]
    pub im_stop: Option<f64>,
    #[serde(default)]
    pub im_count: Option<usize>,
}

fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let step = (stop - start) / (count - 1) as f64;
    (0..count).map(|k| if k + 1 == count { stop } else { start + step * k as f64 }).collect()
}

impl Grid {
    pub fn validate(&self) -> Result<(), FlagError> {
        if self.count == 0 {
            return Err(FlagError("grid count must be positive".into()));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(FlagError("grid bounds must be finite".into()));
        }
        let im = [self.im_start.is_some(), self.im_stop.is_some(), self.im_count.is_some()];
        if im.iter().any(|&b| b) && !im.iter().all(|&b| b) {
            return Err(FlagError("a complex grid needs im_start, im_stop and im_count together".into()));
        }
        if self.im_count == Some(0) {
            return Err(FlagError("grid im_count must be positive".into()));
        }
        if !(self.im_start.unwrap_or(0.0).is_finite() && self.im_stop.unwrap_or(0.0).is_finite()) {
            return Err(FlagError("grid bounds must be finite".into()));
        }
        Ok(())
    }

    /// Row-major: the imaginary part is constant along each run of real
    /// parts.
    pub fn points(&self) -> Vec<ComplexValue> {
        let re = linspace(self.start, self.stop, self.count);
        let im = match (self.im_start, self.im_stop, self.im_count) {
            (Some(a), Some(b), Some(n)) => linspace(a, b, n),
            _ => vec![0.0],
        };
        im.iter().flat_map(|&y| re.iter().map(move |&x| Complex64::new(x, y))).collect()
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub function: Option<String>,
    pub grid: Option<Grid>,
    pub route: Option<String>,
    pub alpha: Option<Number>,
    pub omega1: Option<Number>,
    pub omega2: Option<Number>,
    pub n: Option<u32>,
    pub log: Option<bool>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    /// Identity name to tolerance; only read by `verify`.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

impl RunManifest {
    pub fn load(path: &std::path::Path) -> Result<Self, FlagError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| FlagError(format!("cannot read manifest {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| FlagError(format!("invalid manifest {}: {e}", path.display())))
    }

    pub fn function(&self) -> Result<Function, FlagError> {
        let name = self.function.as_deref().ok_or_else(|| FlagError("no function given".into()))?;
        name.parse().map_err(FlagError)
    }

    pub fn settings(&self) -> Result<Settings, FlagError> {
        let num = |v: &Option<Number>, what: &str| v.as_ref().map(|n| n.value(what)).transpose();
        Ok(Settings {
            route: self.route.clone(),
            alpha: num(&self.alpha, "alpha")?,
            omega1: num(&self.omega1, "omega1")?,
            omega2: num(&self.omega2, "omega2")?,
            n: self.n,
            log: self.log.unwrap_or(false),
        })
    }

    pub fn tolerance_overrides(&self) -> Result<BTreeMap<IdentityId, f64>, FlagError> {
        self.tolerances
            .iter()
            .map(|(k, &v)| {
                let id = k.parse::<IdentityId>().map_err(FlagError)?;
                if !(v.is_finite() && v > 0.0) {
                    return Err(FlagError(format!("tolerance for {k} must be positive, got {v}")));
                }
                Ok((id, v))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shapes() {
        let g = Grid { start: 1.0, stop: 2.0, count: 11, im_start: None, im_stop: None, im_count: None };
        let p = g.points();
        assert_eq!(p.len(), 11);
        assert_eq!(p[0].re, 1.0);
        assert_eq!(p[10].re, 2.0);
        let g = Grid { im_start: Some(-1.0), im_stop: Some(1.0), im_count: Some(3), count: 3, ..g };
        let p = g.points();
        assert_eq!(p.len(), 9);
        assert_eq!(p[1], Complex64::new(1.5, -1.0));
        let bad = Grid { im_count: None, ..g };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn manifest_parses() {
        let m: RunManifest = serde_json::from_str(
            r#"{"function":"g2","grid":{"start":1,"stop":2,"count":3},"alpha":"2","format":"csv",
                "tolerances":{"FE_G":1e-9}}"#,
        )
        .unwrap();
        assert_eq!(m.function().unwrap(), Function::G2);
        assert_eq!(m.settings().unwrap().alpha, Some(Complex64::new(2.0, 0.0)));
        assert_eq!(m.format, Some(Format::Csv));
        assert_eq!(m.tolerance_overrides().unwrap()[&IdentityId::FeG], 1e-9);
        assert!(serde_json::from_str::<RunManifest>(r#"{"functoin":"gamma"}"#).is_err());
        assert!(serde_json::from_str::<RunManifest>(r#"{"format":"xml"}"#).is_err());
    }
}
