mod functions;
mod manifest;
mod output;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use gammamorphic::barnes_g::{asymptotic_constant, log_g_series};
use gammamorphic::identities::{run_suite, Density, IdentityId};
use gammamorphic::kinkelin::{glaisher_constant, log_omega_tilde, OmegaRoute};
use gammamorphic::special_base::euler_gamma;
use gammamorphic::{ComplexValue, RouteTag, ValueWithError};
use num_complex::Complex64;
use serde::Serialize;

use functions::{parse_complex, Evaluator, FlagError, Function, Settings};
use manifest::{Format, Grid, RunManifest};
use output::{num, Row};

#[derive(Parser)]
#[command(name = "gammamorphic", version, about = "Barnes double gamma family: evaluate, tabulate, verify")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Evaluate one function over a grid.
    Table(TableArgs),
    /// Run the identity suite.
    Verify(VerifyArgs),
    /// Print the constants of the family.
    Constants(ConstantsArgs),
}

#[derive(Args)]
struct ParamArgs {
    /// Period ratio for g2.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    alpha: Option<ComplexValue>,
    /// First period for double-sine.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    omega1: Option<ComplexValue>,
    /// Second period for double-sine.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    omega2: Option<ComplexValue>,
    /// Order for gn and kn.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    route: Option<String>,
    /// Print the natural logarithm instead of the value.
    #[arg(long)]
    log: bool,
    #[arg(long)]
    format: Option<Format>,
    /// JSON run manifest; flags given on the command line take precedence.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    function: Option<String>,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    x: Option<ComplexValue>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args)]
struct TableArgs {
    function: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    stop: Option<f64>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    im_start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    im_stop: Option<f64>,
    #[arg(long)]
    im_count: Option<usize>,
    /// Write here instead of standard output; nothing is written on error.
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated identity names.
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<String>>,
    #[arg(long, default_value = "standard")]
    density: Density,
    /// Same as --format json.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    format: Option<Format>,
    /// JSON run manifest; its `tolerances` map overrides identity tolerances.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long)]
    format: Option<Format>,
}

enum Failure {
    Flag(FlagError),
    Eval(String),
}

impl From<FlagError> for Failure {
    fn from(e: FlagError) -> Self {
        Failure::Flag(e)
    }
}

fn eval_failure(e: gammamorphic::Error) -> Failure {
    Failure::Eval(e.to_string())
}

fn after_help() -> String {
    let mut s = String::from("Functions (route choices in brackets, first is the default):\n");
    for f in Function::ALL {
        s.push_str(&format!("  {:<12} [{}]\n", f.as_str(), f.routes().join(", ")));
    }
    s.push_str("\nIdentities:\n");
    let names: Vec<&str> = IdentityId::ALL.iter().map(|id| id.name()).collect();
    let mut line = String::from(" ");
    for n in names {
        if line.len() + n.len() + 1 > 78 {
            s.push_str(&line);
            s.push('\n');
            line = String::from(" ");
        }
        line.push(' ');
        line.push_str(n);
    }
    s.push_str(&line);
    s.push_str("\n\nDensities: small, standard, dense. Formats: json, csv, text.\n");
    s.push_str("Exit status: 0 success, 1 evaluation error or verified identity failure, 2 usage error.\n");
    s
}

fn load_manifest(path: Option<&Path>) -> Result<RunManifest, FlagError> {
    path.map(RunManifest::load).transpose().map(Option::unwrap_or_default)
}

/// Flags override manifest entries.
fn merge(function: Option<String>, p: &ParamArgs) -> Result<(RunManifest, Function, Settings), FlagError> {
    let mut m = load_manifest(p.manifest.as_deref())?;
    if function.is_some() {
        m.function = function;
    }
    let f = m.function()?;
    let base = m.settings()?;
    let settings = Settings {
        route: p.route.clone().or(base.route),
        alpha: p.alpha.or(base.alpha),
        omega1: p.omega1.or(base.omega1),
        omega2: p.omega2.or(base.omega2),
        n: p.n.or(base.n),
        log: p.log || base.log,
    };
    Ok((m, f, settings))
}

fn cmd_eval(a: EvalArgs) -> Result<String, Failure> {
    let (m, f, settings) = merge(a.function, &a.params)?;
    let format = a.params.format.or(m.format).unwrap_or_default();
    if f.takes_argument() && a.x.is_none() {
        return Err(FlagError(format!("{f} needs --x")).into());
    }
    if !f.takes_argument() && a.x.is_some() {
        return Err(FlagError(format!("{f} is a constant and takes no --x")).into());
    }
    let mut e = Evaluator::new(f, settings)?;
    let v = e.eval(a.x).map_err(eval_failure)?;
    Ok(output::render_single(&Row::new(a.x, &v), format))
}

fn table_rows(e: &mut Evaluator, points: &[ComplexValue]) -> Result<Vec<Row>, Failure> {
    points
        .iter()
        .map(|&x| {
            e.eval(Some(x))
                .map(|v| Row::new(Some(x), &v))
                .map_err(|err| Failure::Eval(format!("{err} [first failing argument x = {}]", fmt_arg(x))))
        })
        .collect()
}

fn fmt_arg(x: Complex64) -> String {
    if x.im == 0.0 {
        num(x.re)
    } else {
        format!("{}{}{}i", num(x.re), if x.im < 0.0 { "-" } else { "+" }, num(x.im.abs()))
    }
}

/// Write to a sibling temporary file and rename into place.
fn write_atomically(path: &Path, text: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Failure::Eval(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn cmd_table(a: TableArgs) -> Result<String, Failure> {
    let (m, f, settings) = merge(a.function, &a.params)?;
    if !f.takes_argument() {
        return Err(FlagError(format!("{f} is a constant; use eval or constants")).into());
    }
    let format = a.params.format.or(m.format).unwrap_or_default();
    let base = m.grid.clone();
    let pick = |flag: Option<f64>, from: fn(&Grid) -> f64, name: &str| {
        flag.or(base.as_ref().map(from)).ok_or_else(|| FlagError(format!("table needs --{name} or a manifest grid")))
    };
    let grid = Grid {
        start: pick(a.start, |g| g.start, "start")?,
        stop: pick(a.stop, |g| g.stop, "stop")?,
        count: a
            .count
            .or(base.as_ref().map(|g| g.count))
            .ok_or_else(|| FlagError("table needs --count or a manifest grid".into()))?,
        im_start: a.im_start.or(base.as_ref().and_then(|g| g.im_start)),
        im_stop: a.im_stop.or(base.as_ref().and_then(|g| g.im_stop)),
        im_count: a.im_count.or(base.as_ref().and_then(|g| g.im_count)),
    };
    grid.validate()?;
    let mut e = Evaluator::new(f, settings)?;
    let rows = table_rows(&mut e, &grid.points())?;
    let text = output::render(&rows, format);
    match a.output.or(m.output) {
        Some(path) => {
            write_atomically(&path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<(String, bool), Failure> {
    let m = load_manifest(a.manifest.as_deref())?;
    let format = if a.json { Format::Json } else { a.format.or(m.format).unwrap_or_default() };
    if format == Format::Csv {
        return Err(FlagError("verify prints json or text".into()).into());
    }
    let only = a
        .only
        .map(|names| {
            names
                .iter()
                .filter(|n| !n.trim().is_empty())
                .map(|n| n.parse::<IdentityId>().map_err(|e| FlagError(format!("{e}; see --help for the list"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    if only.as_ref().is_some_and(Vec::is_empty) {
        return Err(FlagError("--only needs at least one identity".into()).into());
    }
    let overrides = m.tolerance_overrides()?;
    let result = run_suite(only.as_deref(), a.density).with_tolerances(&overrides);
    let text = match format {
        Format::Json => result.to_json() + "\n",
        _ => result.to_text(),
    };
    Ok((text, result.exit_code() == 0))
}

#[derive(Serialize)]
struct Constant {
    name: &'static str,
    value: f64,
    abs_error: f64,
    route: &'static str,
}

fn constants() -> Result<Vec<Constant>, Failure> {
    let eps = f64::EPSILON;
    let k = |name, v: ValueWithError| Constant { name, value: v.value.re, abs_error: v.abs_error, route: v.route.as_str() };
    let lw = log_omega_tilde(OmegaRoute::ZetaSeries).map_err(eval_failure)?;
    let a = glaisher_constant();
    let half = log_g_series(Complex64::new(-0.5, 0.0), Complex64::new(1.0, 0.0)).map_err(eval_failure)?;
    let ln_a = ValueWithError::real(0.5 * lw.re() + 1.0 / 12.0, 0.5 * lw.abs_error + eps, lw.route);
    let zd = ValueWithError::real(1.0 / 12.0 - ln_a.re(), ln_a.abs_error + eps, lw.route);
    let ac = asymptotic_constant();
    let g = euler_gamma();
    Ok(vec![
        k("glaisher_a", a),
        k("ln_glaisher_a", ln_a),
        k("ln_omega_tilde", lw),
        k("omega_tilde", lw.exp()),
        k("zeta_prime_minus_1", zd),
        k("ln_g_half", half),
        k("asymptotic_constant", ValueWithError::real(ac, 4.0 * eps + half.abs_error, RouteTag::ClosedForm)),
        k("euler_gamma", ValueWithError::real(g, eps * g, RouteTag::ClosedForm)),
    ])
}

fn cmd_constants(a: ConstantsArgs) -> Result<String, Failure> {
    let cs = constants()?;
    Ok(match a.format.unwrap_or_default() {
        Format::Json => serde_json::to_string_pretty(&cs).expect("constants serialize") + "\n",
        Format::Csv => {
            let mut s = String::from("name,value,abs_error,route\n");
            for c in &cs {
                s.push_str(&format!("{},{},{},{}\n", c.name, num(c.value), num(c.abs_error), c.route));
            }
            s
        }
        Format::Text => {
            let w = cs.iter().map(|c| num(c.value).len()).max().unwrap_or(0);
            cs.iter()
                .map(|c| format!("{:<20} {:<w$}  ± {}  ({})\n", c.name, num(c.value), num(c.abs_error), c.route))
                .collect()
        }
    })
}

fn main() -> ExitCode {
    let matches = Cli::command().after_help(after_help()).get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a).map(|s| (s, true)),
        Command::Table(a) => cmd_table(a).map(|s| (s, true)),
        Command::Verify(a) => cmd_verify(a),
        Command::Constants(a) => cmd_constants(a).map(|s| (s, true)),
    };
    match result {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Flag(e)) => {
            eprintln!("error: {e}\n\nFor more information, try '--help'.");
            ExitCode::from(2)
        }
        Err(Failure::Eval(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
