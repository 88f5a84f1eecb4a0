//! Rows of evaluated values and their json, csv and text renderings.

use gammamorphic::{ComplexValue, ValueWithError};
use serde::{Deserialize, Serialize};

use crate::manifest::Format;

pub const CSV_HEADER: &str = "arg_re,arg_im,value_re,value_im,abs_error,route";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub arg_re: Option<f64>,
    pub arg_im: Option<f64>,
    pub value_re: f64,
    pub value_im: f64,
    pub abs_error: f64,
    pub route: String,
}

impl Row {
    pub fn new(arg: Option<ComplexValue>, v: &ValueWithError) -> Self {
        Row {
            arg_re: arg.map(|z| z.re),
            arg_im: arg.map(|z| z.im),
            value_re: v.value.re,
            value_im: v.value.im,
            abs_error: v.abs_error,
            route: v.route.as_str().to_string(),
        }
    }
}

/// Shortest decimal string that reads back to the same binary64.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn render(rows: &[Row], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
        Format::Csv => {
            let mut s = String::from(CSV_HEADER);
            s.push('\n');
            for r in rows {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    opt(r.arg_re),
                    opt(r.arg_im),
                    num(r.value_re),
                    num(r.value_im),
                    num(r.abs_error),
                    r.route
                ));
            }
            s
        }
        Format::Text => {
            let cells: Vec<[String; 4]> = rows
                .iter()
                .map(|r| {
                    let arg = match (r.arg_re, r.arg_im) {
                        (Some(re), Some(im)) => complex(re, im),
                        _ => String::new(),
                    };
                    [arg, complex(r.value_re, r.value_im), num(r.abs_error), r.route.clone()]
                })
                .collect();
            let header = ["x", "value", "abs_error", "route"];
            let mut w = header.map(str::len);
            for c in &cells {
                for (wi, s) in w.iter_mut().zip(c) {
                    *wi = (*wi).max(s.len());
                }
            }
            let line = |c: [&str; 4]| format!("{:<a$}  {:<b$}  {:<e$}  {}\n", c[0], c[1], c[2], c[3], a = w[0], b = w[1], e = w[2]);
            let mut s = line(header);
            for c in &cells {
                s.push_str(&line([&c[0], &c[1], &c[2], &c[3]]));
            }
            s
        }
    }
}

/// A single evaluation in text form.
pub fn render_single(row: &Row, format: Format) -> String {
    match format {
        Format::Text => format!(
            "value: {}\nabs_error: {}\nroute: {}\n",
            complex(row.value_re, row.value_im),
            num(row.abs_error),
            row.route
        ),
        Format::Json => serde_json::to_string_pretty(row).expect("row serializes") + "\n",
        Format::Csv => render(std::slice::from_ref(row), Format::Csv),
    }
}

fn complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        num(re)
    } else if im.is_sign_negative() {
        format!("{}-{}i", num(re), num(-im))
    } else {
        format!("{}+{}i", num(re), num(im))
    }
}

/// Parses csv produced by [`render`].
#[cfg(test)]
pub fn parse_csv(text: &str) -> Result<Vec<Row>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err("missing or wrong csv header".into());
    }
    let f = |s: &str| s.parse::<f64>().map_err(|e| format!("bad number `{s}`: {e}"));
    let o = |s: &str| if s.is_empty() { Ok(None) } else { f(s).map(Some) };
    lines
        .filter(|l| !l.is_empty())
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            if c.len() != 6 {
                return Err(format!("expected 6 fields in `{l}`"));
            }
            Ok(Row {
                arg_re: o(c[0])?,
                arg_im: o(c[1])?,
                value_re: f(c[2])?,
                value_im: f(c[3])?,
                abs_error: f(c[4])?,
                route: c[5].to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn number_forms() {
        assert_eq!(num(2.0), "2");
        assert_eq!(num(0.1), "0.1");
        assert_eq!(num(1e-300), "1e-300");
        assert_eq!(num(-3.5e20), "-3.5e20");
        assert_eq!(complex(1.0, -2.0), "1-2i");
    }

    #[test]
    fn csv_round_trip() {
        let rows = vec![
            Row { arg_re: Some(1.0), arg_im: Some(0.0), value_re: 0.1 + 0.2, value_im: -0.0, abs_error: 1e-17, route: "series".into() },
            Row { arg_re: None, arg_im: None, value_re: 1.2824271291006226, value_im: 0.0, abs_error: 5e-16, route: "zeta-series".into() },
        ];
        let back = parse_csv(&render(&rows, Format::Csv)).unwrap();
        assert_eq!(back, rows);
        let back: Vec<Row> = serde_json::from_str(&render(&rows, Format::Json)).unwrap();
        assert_eq!(back, rows);
    }

    proptest! {
        #[test]
        fn num_round_trips(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            prop_assert_eq!(num(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
