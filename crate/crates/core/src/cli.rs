//! Command-line front end.
//!
//! Every command writes its report to a caller-supplied writer and returns an
//! [`ExitCode`]; the binary only parses arguments and forwards.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::jet::{Assignment, Expr, JetSpace, JetVar, Rational};
use crate::parser::{parse_expr_with, parse_symmetry_file_with, print_expr};
use crate::verifier::{equation_expr, BracketTable, VerificationReport, Verifier};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Pass = 0,
    VerificationFailure = 1,
    Usage = 2,
    Parse = 3,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "noether",
    version,
    about = "Verify Noether conservation laws of the critical Kohn-Laplace equation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Select every symmetry (the default when no --symmetry is given).
    #[arg(long, global = true)]
    pub all: bool,

    /// Comma-separated symmetry names, e.g. T,V1,Xt.
    #[arg(long, global = true, value_delimiter = ',')]
    pub symmetry: Vec<String>,

    /// Symmetry file to load instead of the builtin catalog.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,

    /// Overlay file replacing selected catalog components.
    #[arg(long, global = true)]
    pub errata: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,

    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..))]
    pub max_order: u32,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Also check the tabulated fluxes of each record (implied by --errata and check-file).
    #[arg(long, global = true)]
    pub paper: bool,

    /// Random on-shell points used to spot-check every symbolic zero.
    #[arg(long, global = true, default_value_t = 20)]
    pub numeric_points: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            all: false,
            symmetry: Vec::new(),
            file: None,
            errata: None,
            report: ReportFormat::Text,
            max_order: 3,
            seed: 0,
            paper: false,
            numeric_points: 20,
        }
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check divergence-symmetry defects, constructed fluxes and tabulated fluxes.
    Verify,
    /// Compute all brackets of the catalog fields and compare with the published table.
    BracketTable,
    /// Print the Euler-Lagrange expression of EXPR (default: the builtin Lagrangian).
    EulerLagrange { expr: Option<String> },
    /// Eliminate u_xx from EXPR using the equation.
    Reduce { expr: String },
    /// Evaluate EXPR at the given assignments, e.g. `x=1 u_x=3/2`.
    Eval {
        expr: String,
        assignments: Vec<String>,
    },
    /// Verify every record of the symmetry file given by --file.
    CheckFile,
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub options: Options,
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        RunConfig {
            command: cli.command,
            options: cli.options,
        }
    }
}

fn exit_for(err: &Error) -> ExitCode {
    match err {
        Error::Syntax { .. }
        | Error::PointSymmetryViolation { .. }
        | Error::InvalidRecord { .. } => ExitCode::Parse,
        Error::UnknownSymmetry(_) | Error::MissingAssignment(_) => ExitCode::Usage,
        _ => ExitCode::VerificationFailure,
    }
}

/// Maps decorated names to the ASCII aliases used in files and reports.
pub fn canonical_name(name: &str) -> String {
    let trimmed = name.trim();
    match trimmed {
        "X̃" | "X~" => "Xt".into(),
        "Ỹ" | "Y~" => "Yt".into(),
        "V₁" => "V1".into(),
        "V₂" => "V2".into(),
        "V₃" => "V3".into(),
        other => other.into(),
    }
}

struct Failure(ExitCode, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_for(&e), format!("error: {e}"))
    }
}

/// Runs one command, writing its report to `out` and diagnostics to `err`.
pub fn run<W: Write, E: Write>(
    config: &RunConfig,
    out: &mut W,
    err: &mut E,
) -> io::Result<ExitCode> {
    let mut buf = String::new();
    let code = match execute(config, &mut buf) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            out.write_all(buf.as_bytes())?;
            writeln!(err, "{msg}")?;
            return Ok(code);
        }
    };
    out.write_all(buf.as_bytes())?;
    Ok(code)
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| {
        Failure(
            ExitCode::Usage,
            format!("error: cannot read {}: {e}", path.display()),
        )
    })
}

fn build_verifier(config: &RunConfig) -> Result<Verifier, Failure> {
    let opts = &config.options;
    let space = JetSpace::new(opts.max_order);
    let mut verifier = match &opts.file {
        Some(path) => {
            let text = read_file(path)?;
            Verifier::with_records(space, parse_symmetry_file_with(&text, &space)?)
        }
        None => Verifier::builtin(space),
    };
    if let Some(path) = &opts.errata {
        let text = read_file(path)?;
        verifier.apply_errata_text(&text)?;
    }
    verifier.seed = opts.seed;
    verifier.numeric_points = opts.numeric_points;
    Ok(verifier)
}

fn selected_names(config: &RunConfig, verifier: &Verifier) -> Result<Vec<String>, Failure> {
    let opts = &config.options;
    if opts.all || opts.symmetry.is_empty() {
        return Ok(verifier.records.iter().map(|r| r.name.clone()).collect());
    }
    let mut names = Vec::new();
    for n in &opts.symmetry {
        let n = canonical_name(n);
        verifier.record(&n)?;
        names.push(n);
    }
    Ok(names)
}

fn execute(config: &RunConfig, out: &mut String) -> Result<ExitCode, Failure> {
    let opts = &config.options;
    let space = JetSpace::new(opts.max_order);
    match &config.command {
        Command::Verify | Command::CheckFile => {
            if matches!(config.command, Command::CheckFile) && opts.file.is_none() {
                return Err(Failure(
                    ExitCode::Usage,
                    "error: check-file requires --file <path>".into(),
                ));
            }
            let verifier = build_verifier(config)?;
            let names = selected_names(config, &verifier)?;
            let mut reports = verifier.verify_many(&names)?;
            let paper_tier =
                opts.paper || opts.errata.is_some() || matches!(config.command, Command::CheckFile);
            if !paper_tier {
                for r in &mut reports {
                    r.drop_paper_tier();
                }
            }
            Ok(write_verification(&reports, opts.report, out))
        }
        Command::BracketTable => {
            let verifier = build_verifier(config)?;
            let table = verifier.bracket_table()?;
            Ok(write_bracket_table(&table, opts.report, out))
        }
        Command::EulerLagrange { expr } => {
            let verifier = Verifier::builtin(space);
            let lagrangian = match expr {
                Some(text) => parse_expr_with(text, &space)?,
                None => verifier.lagrangian.clone(),
            };
            let euler = space.euler_operator(&lagrangian)?;
            match expr {
                Some(_) => {
                    writeln!(out, "{}", print_expr(&euler)).unwrap();
                    Ok(ExitCode::Pass)
                }
                None => {
                    let expected = -equation_expr();
                    let pass = euler == expected;
                    match opts.report {
                        ReportFormat::Text => {
                            writeln!(out, "E(L) = {}", print_expr(&euler)).unwrap();
                            writeln!(
                                out,
                                "E(L) {} -(Kohn-Laplacian u + u^3)",
                                if pass { "==" } else { "!=" }
                            )
                            .unwrap();
                        }
                        ReportFormat::Machine => {
                            let residual = &euler - &expected;
                            machine_line(out, "euler/L", "-", "euler", pass, &residual);
                        }
                    }
                    Ok(if pass {
                        ExitCode::Pass
                    } else {
                        ExitCode::VerificationFailure
                    })
                }
            }
        }
        Command::Reduce { expr } => {
            let e = parse_expr_with(expr, &space)?;
            let verifier = Verifier::builtin(space);
            writeln!(out, "{}", print_expr(&verifier.on_shell_reduce(&e)?)).unwrap();
            Ok(ExitCode::Pass)
        }
        Command::Eval { expr, assignments } => {
            let e = parse_expr_with(expr, &space)?;
            let point = parse_assignments(assignments, &space)?;
            let value = e.evaluate(&point)?;
            writeln!(out, "{}", print_expr(&Expr::constant(value))).unwrap();
            Ok(ExitCode::Pass)
        }
    }
}

fn parse_assignments(items: &[String], space: &JetSpace) -> Result<Assignment, Failure> {
    let mut point = Assignment::new();
    for item in items {
        let (lhs, rhs) = item.split_once('=').ok_or_else(|| {
            Failure(
                ExitCode::Usage,
                format!("error: assignment {item:?} is not of the form var=value"),
            )
        })?;
        let var = parse_expr_with(lhs, space)?;
        let var = match var
            .variables()
            .into_iter()
            .collect::<Vec<JetVar>>()
            .as_slice()
        {
            [v] if var == Expr::var(*v) => *v,
            _ => {
                return Err(Failure(
                    ExitCode::Usage,
                    format!("error: {lhs:?} is not a single jet variable"),
                ))
            }
        };
        let value: Rational = parse_expr_with(rhs, space)?.as_constant().ok_or_else(|| {
            Failure(
                ExitCode::Usage,
                format!("error: value {rhs:?} is not a rational constant"),
            )
        })?;
        point.insert(var, value);
    }
    Ok(point)
}

fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn machine_line(
    out: &mut String,
    id: &str,
    symmetry: &str,
    kind: &str,
    pass: bool,
    residual: &Expr,
) {
    writeln!(
        out,
        "{id}\t{symmetry}\t{kind}\t{}\t{}",
        status(pass),
        print_expr(residual)
    )
    .unwrap();
}

const COMPONENTS: [&str; 3] = ["flux_1", "flux_2", "flux_3"];

/// Writes the verification records and returns the exit status.
///
/// Records are emitted in three tiers: defects, constructed fluxes and
/// tabulated fluxes. The exit status is `Pass` only when all emitted records pass.
pub fn write_verification(
    reports: &[VerificationReport],
    format: ReportFormat,
    out: &mut String,
) -> ExitCode {
    let all_pass = reports.iter().all(VerificationReport::passed);
    match format {
        ReportFormat::Machine => {
            for r in reports {
                machine_line(
                    out,
                    &format!("defect/{}", r.symmetry),
                    &r.symmetry,
                    "defect",
                    r.defect_passed(),
                    &r.defect,
                );
            }
            for r in reports {
                machine_line(
                    out,
                    &format!("constructed/{}", r.symmetry),
                    &r.symmetry,
                    "constructed",
                    r.constructed_passed(),
                    &r.constructed_residual,
                );
            }
            for r in reports {
                let (Some(residual), Some(pass)) = (&r.paper_residual, r.paper_passed()) else {
                    continue;
                };
                machine_line(
                    out,
                    &format!("paper/{}", r.symmetry),
                    &r.symmetry,
                    "paper",
                    pass,
                    residual,
                );
                if let Some(d) = &r.discrepancy {
                    for &i in &d.suspects {
                        machine_line(
                            out,
                            &format!("paper/{}/{}", r.symmetry, COMPONENTS[i]),
                            &r.symmetry,
                            "paper",
                            false,
                            &d.differences.0[i],
                        );
                    }
                }
            }
        }
        ReportFormat::Text => write_text_verification(reports, out),
    }
    if all_pass {
        ExitCode::Pass
    } else {
        ExitCode::VerificationFailure
    }
}

fn write_text_verification(reports: &[VerificationReport], out: &mut String) {
    let width = reports
        .iter()
        .map(|r| r.symmetry.len())
        .max()
        .unwrap_or(0)
        .max(4);
    writeln!(out, "Divergence-symmetry defects").unwrap();
    for r in reports {
        writeln!(
            out,
            "  {:width$}  {}  defect = {}",
            r.symmetry,
            status(r.defect_passed()),
            print_expr(&r.defect)
        )
        .unwrap();
    }
    writeln!(out, "\nConstructed conservation laws").unwrap();
    for r in reports {
        let sign = match r.noether_sign {
            Some(1) => "div P = q*E(L)",
            Some(_) => "div P = -q*E(L)",
            None => "div P not a multiple of q*E(L)",
        };
        writeln!(
            out,
            "  {:width$}  {}  on-shell residual = {}  ({sign}; numeric {}/{} zero; {:.1?})",
            r.symmetry,
            status(r.constructed_passed()),
            print_expr(&r.constructed_residual),
            r.numeric.points - r.numeric.failures,
            r.numeric.points,
            r.elapsed,
        )
        .unwrap();
        for (name, comp) in COMPONENTS.iter().zip(&r.constructed_flux.0) {
            writeln!(out, "  {:width$}    {name} = {}", "", print_expr(comp)).unwrap();
        }
    }
    if reports.iter().any(|r| r.paper_residual.is_some()) {
        writeln!(out, "\nTabulated fluxes").unwrap();
    }
    for r in reports {
        let (Some(residual), Some(pass)) = (&r.paper_residual, r.paper_passed()) else {
            continue;
        };
        let equal: Vec<&str> = r
            .componentwise_equal
            .iter()
            .flat_map(|eq| {
                eq.iter()
                    .zip(COMPONENTS)
                    .filter(|(e, _)| **e)
                    .map(|(_, n)| n)
            })
            .collect();
        writeln!(
            out,
            "  {:width$}  {}  on-shell residual = {}  equivalent to constructed: {}  identical components: {}",
            r.symmetry,
            status(pass),
            print_expr(residual),
            if r.equivalent == Some(true) { "yes" } else { "no" },
            if equal.is_empty() { "none".to_string() } else { equal.join(" ") },
        )
        .unwrap();
        if let Some(d) = &r.discrepancy {
            if d.suspects.is_empty() {
                writeln!(
                    out,
                    "  {:width$}    no single component accounts for the residual",
                    ""
                )
                .unwrap();
                for (name, diff) in COMPONENTS.iter().zip(&d.differences.0) {
                    writeln!(
                        out,
                        "  {:width$}    {name}: tabulated - constructed = {}",
                        "",
                        print_expr(diff)
                    )
                    .unwrap();
                }
            }
            if let Some((other, diff)) = d.nearest.as_ref().filter(|(n, _)| *n != r.symmetry) {
                writeln!(out, "  {:width$}    closest constructed flux is that of {other}; tabulated - constructed({other}):", "").unwrap();
                for (name, comp) in COMPONENTS.iter().zip(&diff.0) {
                    writeln!(out, "  {:width$}      {name}: {}", "", print_expr(comp)).unwrap();
                }
            }
            for &i in &d.suspects {
                writeln!(
                    out,
                    "  {:width$}    suspect {}: tabulated - constructed = {}",
                    "",
                    COMPONENTS[i],
                    print_expr(&d.differences.0[i])
                )
                .unwrap();
            }
        }
    }
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.symmetry.as_str())
        .collect();
    if failed.is_empty() {
        writeln!(out, "\nall {} symmetries verified", reports.len()).unwrap();
    } else {
        writeln!(out, "\nfailed: {}", failed.join(", ")).unwrap();
    }
}

/// Writes the bracket table and its comparison with the published one.
pub fn write_bracket_table(
    table: &BracketTable,
    format: ReportFormat,
    out: &mut String,
) -> ExitCode {
    let mismatches = table.mismatches();
    let antisymmetric = table.is_antisymmetric();
    match format {
        ReportFormat::Machine => {
            for (i, row) in table.names.iter().enumerate() {
                for (j, col) in table.names.iter().enumerate() {
                    let entry = &table.entries[i][j];
                    let bad = mismatches
                        .iter()
                        .find(|m| &m.row == row && &m.column == col);
                    let detail = match bad {
                        Some(m) => format!("{} (published {})", m.computed, m.published),
                        None => entry.to_string(),
                    };
                    writeln!(
                        out,
                        "bracket/{row},{col}\t{row},{col}\tbracket\t{}\t{detail}",
                        status(bad.is_none())
                    )
                    .unwrap();
                }
            }
        }
        ReportFormat::Text => {
            let cells: Vec<Vec<String>> = table
                .entries
                .iter()
                .map(|row| row.iter().map(|c| c.to_string()).collect())
                .collect();
            let w = cells
                .iter()
                .flatten()
                .map(String::len)
                .chain(table.names.iter().map(String::len))
                .max()
                .unwrap_or(1);
            write!(out, "{:w$} |", "").unwrap();
            for n in &table.names {
                write!(out, " {n:>w$}").unwrap();
            }
            writeln!(out).unwrap();
            writeln!(out, "{}", "-".repeat((w + 1) * (table.names.len() + 1) + 1)).unwrap();
            for (name, row) in table.names.iter().zip(&cells) {
                write!(out, "{name:w$} |").unwrap();
                for c in row {
                    write!(out, " {c:>w$}").unwrap();
                }
                writeln!(out).unwrap();
            }
            writeln!(out).unwrap();
            writeln!(
                out,
                "antisymmetric with zero diagonal: {}",
                if antisymmetric { "yes" } else { "no" }
            )
            .unwrap();
            if mismatches.is_empty() {
                writeln!(out, "all 64 entries match the published table").unwrap();
            }
            for m in &mismatches {
                writeln!(
                    out,
                    "mismatch [{}, {}]: computed {}, published {}",
                    m.row, m.column, m.computed, m.published
                )
                .unwrap();
            }
        }
    }
    if mismatches.is_empty() && antisymmetric {
        ExitCode::Pass
    } else {
        ExitCode::VerificationFailure
    }
}
