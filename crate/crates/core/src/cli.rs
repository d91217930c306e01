//! Command-line front end.
//!
//! Exit codes: 0 pass, 2 spec or parse error (a JSON diagnostic on stderr and
//! no output written), 3 verdict or claim failure, 4 inconsistent cross-check.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::claims::{paper_check, PaperCheckResult};
use crate::compactness::{
    check, oracle_cross_check, sudakov_bound, CheckSettings, CompactnessReport, ConsistencyReport,
    Criteria, FunctionFamily, Generator, SudakovOutcome, Thresholds,
};
use crate::config::{DEFAULT_EPS_SCHEDULE, MATERIALIZE_CAP, PINNED, SCHEMA};
use crate::error::{Error, Result};
use crate::groups::{GroupKind, GroupModel};
use crate::operator::{
    fourier_sup, make_operator, opnorm_exact, opnorm_power_iteration, PowerIteration,
};
use crate::report::{cell, to_csv, to_json, FunctionFile, FunctionRecord};
use crate::transform::{convolve_tracked, fourier, GroupFunction, Norm, Sampled};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_SPEC: i32 = 2;
pub const EXIT_FAIL: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "lca-pego",
    version,
    about = "Fourier transforms, operator norms and compactness checks on desk-scale abelian groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Fourier transform of one function.
    Fourier,
    /// Convolution of two functions.
    Conv,
    /// Operator norm of convolution by one kernel, by every available route.
    Opnorm,
    /// Pego criteria on a family.
    Pego,
    /// Arzelà–Ascoli criteria on a family.
    Aa,
    /// Reproduce the fixed suite of numeric claims.
    PaperCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Group as JSON, a JSON file, or shorthand: `z:N`, `finite:n1,n2`, `real:d,L,P`.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Dual grid size for windows and real grids.
    #[arg(long, global = true, default_value_t = PINNED.dual_grid)]
    pub dual_grid: usize,
    /// Function files: one function or `{"members": [...]}`.
    #[arg(long, global = true, num_args = 1..)]
    pub input: Vec<PathBuf>,
    /// Built-in family: indicator_shifts, modulations, span_random, gaussian_bumps.
    #[arg(long, global = true)]
    pub builtin: Option<String>,
    #[arg(long, global = true, default_value_t = 32)]
    pub count: usize,
    /// Span dimension for span_random.
    #[arg(long, global = true, default_value_t = 3)]
    pub dim: usize,
    /// Comma-separated ε schedule for covering numbers.
    #[arg(long, global = true, value_delimiter = ',')]
    pub eps: Vec<f64>,
    /// Thresholds as JSON or a JSON file; missing fields take defaults.
    #[arg(long, global = true)]
    pub thresholds: Option<String>,
    #[arg(long, global = true, default_value_t = PINNED.iterations)]
    pub iterations: usize,
    #[arg(long, global = true, default_value_t = PINNED.seed)]
    pub seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Rendered output and the exit code it earns.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    schema: &'static str,
    error: &'a str,
    message: String,
}

/// Parses arguments, runs the command and writes its output. Returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_PASS;
            }
            return report_error("Usage", e.to_string().trim().to_string());
        }
    };
    let outcome = execute(cli.command, &cli.run).and_then(|out| {
        write_output(cli.run.output.as_deref(), &out.text)?;
        Ok(out)
    });
    match outcome {
        Ok(out) => out.code,
        Err(e) => report_error(e.kind(), e.to_string()),
    }
}

fn report_error(kind: &str, message: String) -> i32 {
    let d = Diagnostic {
        schema: SCHEMA,
        error: kind,
        message,
    };
    eprintln!(
        "{}",
        serde_json::to_string(&d).unwrap_or_else(|_| format!("{{\"error\":\"{kind}\"}}"))
    );
    EXIT_SPEC
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

/// Runs one command without touching the output destination.
pub fn execute(command: Command, run: &RunConfig) -> Result<Outcome> {
    match command {
        Command::Fourier => cmd_fourier(run),
        Command::Conv => cmd_conv(run),
        Command::Opnorm => cmd_opnorm(run),
        Command::Pego => cmd_check(run, Criteria::Pego),
        Command::Aa => cmd_check(run, Criteria::ArzelaAscoli),
        Command::PaperCheck => cmd_paper_check(run),
    }
}

/// Inline JSON, a path to a JSON file, or the text itself.
fn json_text(spec: &str) -> Result<String> {
    let trimmed = spec.trim();
    if trimmed.starts_with('{') {
        return Ok(trimmed.to_string());
    }
    let path = Path::new(trimmed);
    if path.is_file() {
        return std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())));
    }
    Ok(trimmed.to_string())
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number `{p}` in group shorthand")))
        })
        .collect()
}

/// Parses `--group`.
pub fn parse_group(spec: &str) -> Result<GroupModel> {
    let text = json_text(spec)?;
    if text.starts_with('{') {
        let kind: GroupKind = serde_json::from_str(&text)?;
        return GroupModel::new(kind);
    }
    let (tag, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("unrecognized group `{text}`")))?;
    let kind = match tag {
        "z" | "z_window" => GroupKind::ZWindow {
            half_width: rest
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad half-width `{rest}`")))?,
        },
        "finite" => GroupKind::FiniteProduct {
            moduli: parse_list(rest)?,
        },
        "real" => {
            let parts: Vec<f64> = parse_list(rest)?;
            match parts.as_slice() {
                [d, l, p] if d.fract() == 0.0 && p.fract() == 0.0 && *d >= 0.0 && *p >= 0.0 => {
                    GroupKind::RealGrid {
                        dims: *d as usize,
                        half_extent: *l,
                        points_per_axis: *p as usize,
                    }
                }
                _ => return Err(Error::Parse(format!("expected real:d,L,P, got `{text}`"))),
            }
        }
        other => return Err(Error::Parse(format!("unknown group type `{other}`"))),
    };
    GroupModel::new(kind)
}

fn settings(run: &RunConfig) -> Result<CheckSettings> {
    let thresholds = match &run.thresholds {
        Some(spec) => serde_json::from_str::<Thresholds>(&json_text(spec)?)?,
        None => Thresholds::default(),
    };
    let eps_schedule = if run.eps.is_empty() {
        DEFAULT_EPS_SCHEDULE.to_vec()
    } else {
        run.eps.clone()
    };
    Ok(CheckSettings {
        thresholds,
        eps_schedule,
        dual_grid: Some(run.dual_grid),
    })
}

fn load_functions(run: &RunConfig) -> Result<Vec<GroupFunction>> {
    if run.input.is_empty() {
        return Err(Error::InvalidSpec("no --input given".into()));
    }
    let group = run.group.as_deref().map(parse_group).transpose()?;
    let mut out = Vec::new();
    for path in &run.input {
        out.extend(FunctionFile::read(path)?.into_functions(group.as_ref())?);
    }
    Ok(out)
}

fn exactly<const N: usize>(run: &RunConfig) -> Result<[GroupFunction; N]> {
    let fs = load_functions(run)?;
    let found = fs.len();
    fs.try_into()
        .map_err(|_| Error::InvalidSpec(format!("expected {N} input function(s), found {found}")))
}

fn dual_grid(run: &RunConfig) -> Option<usize> {
    Some(run.dual_grid)
}

fn float_rows(header_prefix: &str, width: usize) -> Vec<String> {
    if width == 1 {
        vec![header_prefix.to_string()]
    } else {
        (0..width).map(|i| format!("{header_prefix}_{i}")).collect()
    }
}

fn render<T: Serialize>(
    run: &RunConfig,
    command: &str,
    body: &T,
    header: Vec<String>,
    rows: impl FnOnce() -> Vec<Vec<String>>,
) -> Result<String> {
    match run.format {
        Format::Json => to_json(command, body),
        Format::Csv => {
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            to_csv(&header, &rows())
        }
    }
}

#[derive(Serialize)]
struct DualSample {
    frequency: Vec<f64>,
    re: f64,
    im: f64,
    abs: f64,
}

#[derive(Serialize)]
struct FourierOutput {
    group: String,
    dual: String,
    name: Option<String>,
    l1_norm: f64,
    fourier_sup: f64,
    dual_l2_norm: f64,
    values: Vec<DualSample>,
}

fn cmd_fourier(run: &RunConfig) -> Result<Outcome> {
    let [f] = exactly::<1>(run)?;
    let fh = fourier(&f, dual_grid(run))?;
    let dual = fh.dual();
    let values: Vec<DualSample> = fh
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| DualSample {
            frequency: dual.frequency(i),
            re: v.re,
            im: v.im,
            abs: v.norm(),
        })
        .collect();
    let out = FourierOutput {
        group: f.group().to_string(),
        dual: dual.to_string(),
        name: f.name().map(str::to_string),
        l1_norm: f.norm(Norm::L1),
        fourier_sup: fh.norm(Norm::Linf),
        dual_l2_norm: fh.norm(Norm::L2),
        values,
    };
    let mut header = float_rows("frequency", dual.lattice().dims());
    header.extend(["re", "im", "abs"].map(String::from));
    let text = render(run, "fourier", &out, header, || {
        out.values
            .iter()
            .map(|s| {
                let mut row: Vec<String> = s.frequency.iter().map(|&x| cell(x)).collect();
                row.extend([cell(s.re), cell(s.im), cell(s.abs)]);
                row
            })
            .collect()
    })?;
    Ok(Outcome {
        text,
        code: EXIT_PASS,
    })
}

#[derive(Serialize)]
struct ConvOutput {
    group: String,
    result: FunctionRecord,
    truncation_loss: f64,
}

fn cmd_conv(run: &RunConfig) -> Result<Outcome> {
    let [f, g] = exactly::<2>(run)?;
    let conv = convolve_tracked(&f, &g)?;
    let group = conv.result.group().clone();
    let out = ConvOutput {
        group: group.to_string(),
        result: FunctionRecord::of(&conv.result),
        truncation_loss: conv.truncation_loss,
    };
    let mut header = float_rows("x", group.dims());
    header.extend(["re", "im"].map(String::from));
    let text = render(run, "conv", &out, header, || {
        conv.result
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut row: Vec<String> = group
                    .lattice()
                    .coords(i)
                    .iter()
                    .map(|c| c.to_string())
                    .collect();
                row.extend([cell(v.re), cell(v.im)]);
                row
            })
            .collect()
    })?;
    Ok(Outcome {
        text,
        code: EXIT_PASS,
    })
}

#[derive(Serialize)]
struct OpnormOutput {
    group: String,
    name: Option<String>,
    l1_norm: f64,
    fourier_sup: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    dense_singular_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    power_iteration: Option<PowerIteration>,
    /// Largest deviation of a matrix route from the Fourier route.
    route_gap: f64,
    isometry_gap: f64,
}

fn cmd_opnorm(run: &RunConfig) -> Result<Outcome> {
    let [f] = exactly::<1>(run)?;
    let sup = fourier_sup(&f, dual_grid(run))?;
    let l1 = f.norm(Norm::L1);
    let group = f.group().clone();
    let (dense, power) = match group.kind() {
        GroupKind::FiniteProduct { .. } if group.len() <= MATERIALIZE_CAP => {
            (Some(opnorm_exact(&make_operator(f.clone(), true)?)?), None)
        }
        GroupKind::RealGrid { .. } => (None, None),
        _ => (
            None,
            Some(opnorm_power_iteration(
                &make_operator(f.clone(), false)?,
                run.iterations,
                run.seed,
            )?),
        ),
    };
    let route_gap = dense
        .into_iter()
        .chain(power.as_ref().map(|p| p.estimate))
        .map(|v| (v - sup).abs())
        .fold(0.0, f64::max);
    let out = OpnormOutput {
        group: group.to_string(),
        name: f.name().map(str::to_string),
        l1_norm: l1,
        fourier_sup: sup,
        dense_singular_value: dense,
        power_iteration: power,
        route_gap,
        isometry_gap: l1 - sup,
    };
    let header = vec!["quantity".to_string(), "value".to_string()];
    let text = render(run, "opnorm", &out, header, || {
        let mut rows = vec![
            vec!["l1_norm".into(), cell(out.l1_norm)],
            vec!["fourier_sup".into(), cell(out.fourier_sup)],
        ];
        if let Some(d) = out.dense_singular_value {
            rows.push(vec!["dense_singular_value".into(), cell(d)]);
        }
        if let Some(p) = &out.power_iteration {
            rows.push(vec!["power_estimate".into(), cell(p.estimate)]);
            rows.push(vec!["power_residual".into(), cell(p.residual)]);
            rows.push(vec!["power_iterations".into(), p.iterations.to_string()]);
            rows.push(vec!["power_converged".into(), p.converged.to_string()]);
        }
        rows.push(vec!["route_gap".into(), cell(out.route_gap)]);
        rows.push(vec!["isometry_gap".into(), cell(out.isometry_gap)]);
        rows
    })?;
    Ok(Outcome {
        text,
        code: EXIT_PASS,
    })
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    report: &'a CompactnessReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    cross_check: Option<&'a ConsistencyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sudakov: Option<SudakovOutcome>,
}

fn table_rows(report: &CompactnessReport) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for r in &report.equicontinuity_modulus {
        rows.push(vec!["omega".into(), r.radius.to_string(), cell(r.value)]);
    }
    for w in &report.equivanishing_tail {
        rows.push(vec!["tau".into(), w.window.to_string(), cell(w.value)]);
    }
    for c in &report.covering_numbers {
        rows.push(vec![
            "covering".into(),
            cell(c.eps),
            c.covering_number.to_string(),
        ]);
    }
    rows
}

fn cmd_check(run: &RunConfig, criteria: Criteria) -> Result<Outcome> {
    let settings = settings(run)?;
    let (report, cross) = match &run.builtin {
        Some(tag) => {
            let fam = Generator::builtin(tag, run.count, run.dim, run.seed)?.generate(run.count)?;
            let cross = oracle_cross_check(&fam, &settings, criteria)?;
            (cross.report.clone(), Some((cross, fam)))
        }
        None => {
            let fam = FunctionFamily::new(load_functions(run)?)?;
            let report = check(criteria, &fam, &settings)?;
            (report, None)
        }
    };
    let sudakov = match (criteria, &cross) {
        (Criteria::ArzelaAscoli, Some((_, fam))) => Some(sudakov_bound(fam, &settings)?),
        _ => None,
    };
    let code = match &cross {
        Some((c, _)) if !c.consistent => EXIT_INCONSISTENT,
        _ if report.pass => EXIT_PASS,
        _ => EXIT_FAIL,
    };
    let out = CheckOutput {
        report: &report,
        cross_check: cross.as_ref().map(|(c, _)| c),
        sudakov,
    };
    let command = match criteria {
        Criteria::Pego => "pego",
        Criteria::ArzelaAscoli => "aa",
    };
    let header = ["table", "argument", "value"].map(String::from).to_vec();
    let text = render(run, command, &out, header, || table_rows(&report))?;
    Ok(Outcome { text, code })
}

fn cmd_paper_check(run: &RunConfig) -> Result<Outcome> {
    let result: PaperCheckResult = paper_check()?;
    let header = [
        "id",
        "expected",
        "relation",
        "tolerance",
        "computed",
        "pass",
    ]
    .map(String::from)
    .to_vec();
    let text = render(run, "paper-check", &result, header, || {
        result
            .claims
            .iter()
            .map(|c| {
                vec![
                    c.id.to_string(),
                    cell(c.expected),
                    serde_json::to_value(c.relation)
                        .ok()
                        .and_then(|v| v.as_str().map(str::to_string))
                        .unwrap_or_default(),
                    cell(c.tolerance),
                    cell(c.computed),
                    c.pass.to_string(),
                ]
            })
            .collect()
    })?;
    Ok(Outcome {
        text,
        code: if result.pass { EXIT_PASS } else { EXIT_FAIL },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_shorthand() {
        assert_eq!(parse_group("z:3").unwrap().len(), 7);
        assert_eq!(parse_group("finite:2,3").unwrap().len(), 6);
        assert_eq!(parse_group("real:1,8,257").unwrap().len(), 257);
        assert_eq!(
            parse_group(r#"{"type": "z_window", "half_width": 2}"#)
                .unwrap()
                .len(),
            5
        );
        assert!(matches!(parse_group("q:1"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_group("real:1.5,8,257"),
            Err(Error::Parse(_))
        ));
        assert!(parse_group("finite:0").is_err());
    }

    #[test]
    fn flags_parse_after_subcommand() {
        let cli = Cli::try_parse_from([
            "lca-pego",
            "pego",
            "--builtin",
            "span_random",
            "--count",
            "64",
            "--eps",
            "1,0.5",
        ])
        .unwrap();
        assert_eq!(cli.command, Command::Pego);
        assert_eq!(cli.run.eps, vec![1.0, 0.5]);
        assert_eq!(cli.run.seed, 42);
        assert_eq!(cli.run.format, Format::Json);
    }
}
