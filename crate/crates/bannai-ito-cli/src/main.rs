//! Command-line front end: run verification suites against a chosen
//! realization and emit machine-readable reports, or apply a named
//! operator expression to a polynomial and print the exact image.
//!
//! Exit codes: 0 when everything passes, 1 when at least one identity
//! fails, 2 for usage errors.

mod opexpr;
mod report;
mod text;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;

use bannai_ito::bannaiito::closed::QTable;
use bannai_ito::bannaiito::suites::{
    hyperoct_structure_with_q, run_identity, run_suite_with, Identity, SuiteName, SuiteRun,
};
use bannai_ito::bannaiito::{Realization, RealizationKind};
use bannai_ito::clifford::CliffordPoly;
use bannai_ito::exactring::Rational;

#[derive(Parser)]
#[command(
    name = "bannai-ito",
    version,
    about = "Exact verification of Dunkl-operator realizations of osp(1,2) and their centralizer algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write a report.
    Verify(VerifyArgs),
    /// Apply an operator expression to a polynomial and print the image.
    Apply(ApplyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Realization to bind: b3-scalar, z2-scalar or b3-clifford.
    #[arg(long, default_value = "b3-scalar")]
    realization: String,
    /// Degree bound for extensional certification.
    #[arg(long, default_value_t = 6)]
    degree: usize,
    /// Suite name, repeatable; `all` selects every applicable suite.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Parameter specialization `name=rational`, repeatable.
    #[arg(long = "param")]
    params: Vec<String>,
    /// Report output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for the per-identity fan-out.
    #[arg(long)]
    jobs: Option<usize>,
    /// Run the hyperoctahedral suite against a deliberately corrupted
    /// Q_13 (its R_3 summand dropped); the run must fail with
    /// witnesses, demonstrating that the equality machinery is not
    /// vacuous.
    #[arg(long, default_value_t = false)]
    negative_control: bool,
}

#[derive(Args)]
struct ApplyArgs {
    /// Operator expression, e.g. "D_1", "[A_minus, A_plus]", "C_{12}".
    expr: String,
    /// Polynomial in canonical text form, e.g. "x1^2*x2 - 3*a*x3".
    poly: String,
    #[arg(long, default_value = "b3-scalar")]
    realization: String,
    #[arg(long = "param")]
    params: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = numer.parse().ok()?;
    let d: BigInt = denom.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Assignment vector plus its rendered echo for the report config.
type ParamAssignment = (Vec<Option<Rational>>, BTreeMap<String, String>);

/// Parse repeated `name=value` flags into an assignment vector over the
/// realization's parameter list.
fn parse_params(specs: &[String], names: &[&'static str]) -> Result<ParamAssignment, String> {
    let mut assignment = vec![None; names.len()];
    let mut echo = BTreeMap::new();
    for spec in specs {
        let Some((name, value)) = spec.split_once('=') else {
            return Err(format!("malformed --param `{spec}` (expected name=value)"));
        };
        let name = name.trim();
        let Some(k) = names.iter().position(|n| *n == name) else {
            return Err(format!(
                "unknown parameter `{name}` (this realization has: {})",
                names.join(", ")
            ));
        };
        let Some(v) = parse_rational(value) else {
            return Err(format!("cannot parse `{value}` as a rational"));
        };
        echo.insert(name.to_string(), text::render_rational(&v));
        assignment[k] = Some(v);
    }
    Ok((assignment, echo))
}

fn configure_jobs(jobs: Option<usize>) {
    if let Some(n) = jobs {
        // ignore the error when a pool already exists (tests)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Apply(args) => apply(args),
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let Some(kind) = RealizationKind::parse(&args.realization) else {
        return usage_error(format!(
            "unknown realization `{}` (expected one of: {})",
            args.realization,
            RealizationKind::ALL
                .iter()
                .map(|k| k.name())
                .collect::<Vec<_>>()
                .join(", ")
        ));
    };
    let requested: Vec<String> = if args.suites.is_empty() {
        vec!["all".into()]
    } else {
        args.suites.clone()
    };
    let mut selected: Vec<SuiteName> = Vec::new();
    for name in &requested {
        if name == "all" {
            for s in SuiteName::applicable(kind) {
                if !selected.contains(&s) {
                    selected.push(s);
                }
            }
            continue;
        }
        let Some(suite) = SuiteName::parse(name) else {
            return usage_error(format!("unknown suite `{name}`"));
        };
        if !suite.applies_to(kind) {
            return usage_error(format!(
                "suite `{name}` does not apply to realization `{}`",
                kind.name()
            ));
        }
        if !selected.contains(&suite) {
            selected.push(suite);
        }
    }
    let names = kind.param_names();
    let (assignment, params_echo) = match parse_params(&args.params, &names) {
        Ok(v) => v,
        Err(e) => return usage_error(e),
    };
    configure_jobs(args.jobs);

    let realization = Realization::new(kind);
    let assignment_opt = if assignment.iter().any(Option::is_some) {
        Some(assignment.as_slice())
    } else {
        None
    };
    if args.negative_control && !selected.contains(&SuiteName::HyperoctStructure) {
        return usage_error(
            "--negative-control needs the hyperoct-structure suite              (b3-scalar realization)",
        );
    }
    let runs: Vec<SuiteRun> = selected
        .iter()
        .map(|&suite| {
            if args.negative_control && suite == SuiteName::HyperoctStructure {
                run_corrupted_hyperoct(&realization, args.degree, assignment_opt)
            } else {
                run_suite_with(suite, &realization, args.degree, assignment_opt)
            }
        })
        .collect();

    let config = report::ConfigEcho {
        realization: kind.name().to_string(),
        degree: args.degree,
        suites: selected.iter().map(|s| s.name().to_string()).collect(),
        params: params_echo,
        jobs: args.jobs,
        format: match args.format {
            Format::Json => "json".into(),
            Format::Markdown => "markdown".into(),
        },
    };
    let name_strings: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let rep = report::assemble(config, &realization, &runs, &name_strings);
    let rendered = match args.format {
        Format::Json => report::to_json(&rep),
        Format::Markdown => report::to_markdown(&rep),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = report::write_atomic(path, &rendered) {
                eprintln!("error: cannot write report to {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if runs.iter().all(SuiteRun::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// The negative control: hyperoct-structure against the corrupted
/// Q table.
fn run_corrupted_hyperoct(
    realization: &Realization,
    degree: usize,
    assignment: Option<&[Option<Rational>]>,
) -> SuiteRun {
    let q = QTable::with_dropped_r3(realization.nparams);
    let identities: Vec<Identity> = hyperoct_structure_with_q(realization, &q);
    let shape = realization.shape();
    let outcomes = identities
        .iter()
        .map(|id| {
            let id = match assignment {
                Some(asg) => id.substitute_params(asg),
                None => id.clone(),
            };
            run_identity(&id, degree, &shape)
        })
        .collect();
    SuiteRun {
        suite: SuiteName::HyperoctStructure,
        realization: realization.kind,
        degree,
        outcomes,
    }
}

fn apply(args: ApplyArgs) -> ExitCode {
    let Some(kind) = RealizationKind::parse(&args.realization) else {
        return usage_error(format!("unknown realization `{}`", args.realization));
    };
    let names = kind.param_names();
    let (assignment, _) = match parse_params(&args.params, &names) {
        Ok(v) => v,
        Err(e) => return usage_error(e),
    };
    let name_strings: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    let mut realization = Realization::new(kind);
    if assignment.iter().any(Option::is_some) {
        realization = realization.substitute_params(&assignment);
    }
    let registry = opexpr::registry(&realization);
    let op = match opexpr::OpParser::parse(&args.expr, &registry, &name_strings) {
        Ok(op) => op,
        Err(e) => return usage_error(format!("in operator expression: {e}")),
    };
    let mut value: CliffordPoly =
        match text::PolyParser::parse(&args.poly, realization.n, &name_strings) {
            Ok(v) => v,
            Err(e) => return usage_error(format!("in polynomial: {e}")),
        };
    if !kind.uses_clifford() && value.components().any(|(mask, _)| *mask != 0) {
        return usage_error("this realization acts on scalar polynomials (no e factors)");
    }
    if assignment.iter().any(Option::is_some) {
        value = value.substitute_params(&assignment);
    }
    let image = op.apply(&value);
    println!("{}", text::render_clifford_poly(&image, &name_strings));
    ExitCode::SUCCESS
}
