//! Command-line front end. Exit codes: 0 success, 1 a verification suite
//! failed, 2 unreadable or malformed input, 3 invalid arguments.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::convert::{blaschke_to_curve, cls_to_curve, cortes_to_holo, curve_to_blaschke};
use crate::format::{
    blaschke_to_json, curve_to_json, parse_blaschke, parse_curve_file, parse_potential,
    report_to_json, residuals_to_json, CurveFile, FormatError,
};
use crate::paraalg::{Imag, Signature, Split, Unit};
use crate::scalar::Rational;
use crate::singlab::{build_report, Tolerances, MIN_TRACE_RES};
use crate::surfgen::{
    export, sample_grid, AnyCurve, CurvePair, Domain, FieldJets, Surface, SurfaceError,
};
use crate::verify::{
    applicable_suites, ccr_residual, cell_centers, duality_residual, graph_patch, lift_residual,
    metric_conformality, monge_ampere_residual, regular_points, two_form_residual, ResidualReport,
    VerifyError, SUITES,
};

pub const MAX_RES: usize = 4096;
/// Lattice of cell centers used by the identity suites.
const IDENTITY_LATTICE: usize = 10;
/// Candidate lattice for automatic graph patches.
const PATCH_LATTICE: usize = 20;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Args(String),
    #[error("verification failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Args(_) => 3,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "iasphere",
    version,
    about = "Improper affine spheres from curve pairs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Common {
    /// Curve file (JSON).
    #[arg(long)]
    pub curve: PathBuf,
    /// Parameter rectangle `u0,u1,v0,v1`.
    #[arg(long, allow_hyphen_values = true, default_value = "-1,1,-1,1")]
    pub domain: String,
    /// Grid resolution `NU,NV` or `N`.
    #[arg(long, default_value = "256,256")]
    pub res: String,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Obj,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Cls,
    Cortes,
    Blaschke,
    BlaschkeInverse,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the surface on a grid and write a mesh.
    Synth {
        #[command(flatten)]
        common: Common,
        /// Mesh format; inferred from the `--out` extension, else OBJ.
        #[arg(long, value_enum)]
        format: Option<OutFormat>,
    },
    /// Trace the singular set and classify singular points.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Extra point `u,v` to classify (repeatable).
        #[arg(long, allow_hyphen_values = true)]
        probe: Vec<String>,
        #[arg(long, value_enum)]
        format: Option<OutFormat>,
    },
    /// Run identity suites; exits 1 if any fails.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated suites; all applicable ones when absent.
        #[arg(long)]
        suites: Option<String>,
        #[arg(long, value_enum)]
        format: Option<OutFormat>,
    },
    /// Convert between parametrizations.
    Convert {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Input file.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_floats(text: &str, what: &str, n: usize) -> Result<Vec<f64>, CliError> {
    let vals: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            CliError::Args(format!(
                "{what} must be {n} comma-separated numbers, got \"{text}\""
            ))
        })?;
    if vals.len() != n || vals.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Args(format!(
            "{what} must be {n} comma-separated finite numbers, got \"{text}\""
        )));
    }
    Ok(vals)
}

pub fn parse_domain(text: &str) -> Result<Domain, CliError> {
    let d = parse_floats(text, "--domain", 4)?;
    Domain::new(d[0], d[1], d[2], d[3]).map_err(|e| CliError::Args(e.to_string()))
}

pub fn parse_res(text: &str, min: usize) -> Result<(usize, usize), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    let parsed: Result<Vec<usize>, _> = parts.iter().map(|s| s.trim().parse::<usize>()).collect();
    let res = match parsed.as_deref() {
        Ok([n]) => (*n, *n),
        Ok([nu, nv]) => (*nu, *nv),
        _ => {
            return Err(CliError::Args(format!(
                "--res must be N or NU,NV, got \"{text}\""
            )))
        }
    };
    for n in [res.0, res.1] {
        if !(min..=MAX_RES).contains(&n) {
            return Err(CliError::Args(format!(
                "--res {n} outside [{min}, {MAX_RES}]"
            )));
        }
    }
    Ok(res)
}

fn parse_probe(text: &str) -> Result<[f64; 2], CliError> {
    let p = parse_floats(text, "--probe", 2)?;
    Ok([p[0], p[1]])
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Args(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Args(format!("cannot write output: {e}"))),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

fn surface<U: Unit>(curve: &CurvePair<Rational, U>) -> Result<Surface<U>, CliError> {
    Surface::new(curve.clone()).map_err(|e| CliError::Input(e.to_string()))
}

fn load(common: &Common) -> Result<(CurveFile, Domain), CliError> {
    let domain = parse_domain(&common.domain)?;
    let file = parse_curve_file(&read(&common.curve)?)?;
    Ok((file, domain))
}

fn json_only(format: Option<OutFormat>) -> Result<(), CliError> {
    match format {
        None | Some(OutFormat::Json) => Ok(()),
        Some(f) => Err(CliError::Args(format!(
            "format {f:?} is not available for this command; use json"
        ))),
    }
}

fn synth_text<U: Unit>(
    c: &CurvePair<Rational, U>,
    domain: Domain,
    res: (usize, usize),
    f: OutFormat,
) -> Result<String, CliError> {
    let grid = sample_grid(&surface(c)?, domain, res)
        .map_err(|e: SurfaceError| CliError::Args(e.to_string()))?;
    Ok(match f {
        OutFormat::Csv => export::to_csv(&grid),
        _ => export::to_obj(&grid),
    })
}

fn cmd_synth(
    common: &Common,
    format: Option<OutFormat>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let res = parse_res(&common.res, 2)?;
    let format = format.unwrap_or_else(|| match common.out.as_ref().and_then(|p| p.extension()) {
        Some(e) if e.eq_ignore_ascii_case("csv") => OutFormat::Csv,
        _ => OutFormat::Obj,
    });
    if format == OutFormat::Json {
        return Err(CliError::Args("synth writes obj or csv".into()));
    }
    let (file, domain) = load(common)?;
    let text = match &file.curve {
        AnyCurve::Indefinite(c) => synth_text(c, domain, res, format)?,
        AnyCurve::Lsc(c) => synth_text(c, domain, res, format)?,
    };
    emit(common.out.as_deref(), &text, stdout)
}

fn classify_report<U: Unit>(
    c: &CurvePair<Rational, U>,
    domain: &Domain,
    res: (usize, usize),
    probes: &[[f64; 2]],
) -> Result<crate::singlab::ClassificationReport, CliError> {
    let s = surface(c)?;
    let tol = Tolerances::for_surface(&s, domain);
    Ok(build_report(&s, domain, res, probes, &tol))
}

fn cmd_classify(
    common: &Common,
    probe: &[String],
    format: Option<OutFormat>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    json_only(format)?;
    let res = parse_res(&common.res, MIN_TRACE_RES)?;
    let probes = probe
        .iter()
        .map(|p| parse_probe(p))
        .collect::<Result<Vec<_>, _>>()?;
    let (file, domain) = load(common)?;
    let report = match &file.curve {
        AnyCurve::Indefinite(c) => classify_report(c, &domain, res, &probes)?,
        AnyCurve::Lsc(c) => classify_report(c, &domain, res, &probes)?,
    };
    emit(
        common.out.as_deref(),
        &pretty(&report_to_json(&file.curve, &report)),
        stdout,
    )
}

/// Parses `--suites`, rejecting unknown names and suites whose identity
/// does not hold for `signature`.
pub fn select_suites(
    text: Option<&str>,
    signature: Signature,
) -> Result<Vec<&'static str>, CliError> {
    let allowed = applicable_suites(signature);
    let Some(text) = text else {
        return Ok(allowed.to_vec());
    };
    let mut out = Vec::new();
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let Some(known) = SUITES.iter().find(|s| **s == name) else {
            return Err(CliError::Args(format!(
                "unknown suite \"{name}\"; expected one of {}",
                SUITES.join(", ")
            )));
        };
        if !allowed.contains(known) {
            return Err(CliError::Args(format!(
                "suite \"{name}\" does not apply to {} curves",
                signature.as_str()
            )));
        }
        if !out.contains(known) {
            out.push(*known);
        }
    }
    if out.is_empty() {
        return Err(CliError::Args("--suites is empty".into()));
    }
    Ok(out)
}

fn graph_suite(r: Result<ResidualReport, VerifyError>) -> Result<ResidualReport, CliError> {
    r.map_err(|e| CliError::Failed(e.to_string()))
}

/// Runs `suites` against the (possibly perturbed) fields of `s`.
pub fn run_suites<U: Unit>(
    s: &Surface<U>,
    jets: &FieldJets,
    domain: &Domain,
    suites: &[&str],
    ccr: impl Fn(&Tolerances) -> ResidualReport,
) -> Result<Vec<ResidualReport>, CliError> {
    let tol = Tolerances::for_surface(s, domain);
    let pts = regular_points(jets, &cell_centers(domain, IDENTITY_LATTICE), &tol);
    let patch = graph_patch(
        jets,
        &regular_points(jets, &cell_centers(domain, PATCH_LATTICE), &tol),
    );
    let sig = s.signature();
    suites
        .iter()
        .map(|name| {
            Ok(match *name {
                "duality" => duality_residual(jets, &pts),
                "two_form" => two_form_residual(jets, &pts),
                "conformal" => metric_conformality(jets, &pts),
                "monge_ampere" => graph_suite(monge_ampere_residual(jets, &patch, sig))?,
                "lift" => graph_suite(lift_residual(jets, &patch, sig))?,
                "ccr" => ccr(&tol),
                other => return Err(CliError::Args(format!("unknown suite \"{other}\""))),
            })
        })
        .collect()
}

fn perturbed_jets<U: Unit>(s: &Surface<U>, file: &CurveFile) -> FieldJets {
    if file.perturb.negate.is_empty() {
        return s.jets().clone();
    }
    let mut fields = s.fields().clone();
    for name in &file.perturb.negate {
        if let Some(slot) = fields.field_mut(name) {
            *slot = -slot.clone();
        }
    }
    FieldJets::new(&fields)
}

fn cmd_verify(
    common: &Common,
    suites: Option<&str>,
    format: Option<OutFormat>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    json_only(format)?;
    let res = parse_res(&common.res, MIN_TRACE_RES)?;
    let (file, domain) = load(common)?;
    let selected = select_suites(suites, file.curve.signature())?;
    let reports = match &file.curve {
        AnyCurve::Indefinite(c) => {
            let s: Surface<Split> = surface(c)?;
            let jets = perturbed_jets(&s, &file);
            run_suites(&s, &jets, &domain, &selected, |tol| {
                ccr_residual(&s, &domain, res, tol)
            })?
        }
        AnyCurve::Lsc(c) => {
            let s: Surface<Imag> = surface(c)?;
            let jets = perturbed_jets(&s, &file);
            run_suites(&s, &jets, &domain, &selected, |_| {
                unreachable!("ccr is rejected for lsc curves")
            })?
        }
    };
    emit(
        common.out.as_deref(),
        &pretty(&residuals_to_json(&reports)),
        stdout,
    )?;
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.name.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(failed.join(", ")))
    }
}

fn cmd_convert(
    mode: Mode,
    input: &Path,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let text = read(input)?;
    let value = match mode {
        Mode::Cls => curve_to_json(&AnyCurve::Indefinite(cls_to_curve(&parse_potential::<
            Split,
        >(&text)?))),
        Mode::Cortes => curve_to_json(&AnyCurve::Lsc(cortes_to_holo(&parse_potential::<Imag>(
            &text,
        )?))),
        Mode::Blaschke => match parse_curve_file(&text)?.curve {
            AnyCurve::Indefinite(c) => blaschke_to_json(&curve_to_blaschke(&c)),
            AnyCurve::Lsc(_) => {
                return Err(CliError::Input(
                    "blaschke conversion needs an indefinite curve".into(),
                ))
            }
        },
        Mode::BlaschkeInverse => curve_to_json(&AnyCurve::Indefinite(blaschke_to_curve(
            &parse_blaschke(&text)?,
        ))),
    };
    emit(out, &pretty(&value), stdout)
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Synth { common, format } => cmd_synth(common, *format, stdout),
        Command::Classify {
            common,
            probe,
            format,
        } => cmd_classify(common, probe, *format, stdout),
        Command::Verify {
            common,
            suites,
            format,
        } => cmd_verify(common, suites.as_deref(), *format, stdout),
        Command::Convert { mode, input, out } => cmd_convert(*mode, input, out.as_deref(), stdout),
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match execute(&cli, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn res_and_domain_parsing() {
        assert_eq!(parse_res("128", 2).unwrap(), (128, 128));
        assert_eq!(parse_res("3,5", 2).unwrap(), (3, 5));
        assert!(parse_res("1,5", 2).is_err());
        assert!(parse_res("4097", 2).is_err());
        assert!(parse_res("8", MIN_TRACE_RES).is_err());
        assert!(parse_res("a,b", 2).is_err());
        let d = parse_domain("-1.2,1.2,-1.2,1.2").unwrap();
        assert_eq!((d.u0, d.v1), (-1.2, 1.2));
        assert_eq!(parse_domain("1,-1,0,1").unwrap_err().exit_code(), 3);
        assert!(parse_domain("0,1,0").is_err());
        assert!(parse_domain("0,inf,0,1").is_err());
    }

    #[test]
    fn suite_selection() {
        assert_eq!(select_suites(None, Signature::Indefinite).unwrap().len(), 6);
        assert_eq!(
            select_suites(None, Signature::Lsc).unwrap(),
            vec!["monge_ampere", "lift"]
        );
        assert_eq!(
            select_suites(Some("lift,duality,lift"), Signature::Indefinite).unwrap(),
            vec!["lift", "duality"]
        );
        assert_eq!(
            select_suites(Some("bogus"), Signature::Indefinite)
                .unwrap_err()
                .exit_code(),
            3
        );
        assert_eq!(
            select_suites(Some("duality"), Signature::Lsc)
                .unwrap_err()
                .exit_code(),
            3
        );
    }

    #[test]
    fn help_and_bad_flags() {
        assert_eq!(run(["iasphere", "--help"]), 0);
        assert_eq!(run(["iasphere", "--version"]), 0);
        assert_eq!(run(["iasphere", "synth"]), 3);
        assert_eq!(run(["iasphere", "frobnicate"]), 3);
    }
}
