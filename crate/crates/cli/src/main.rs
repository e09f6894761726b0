mod bench;
mod curve;
mod solve;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use vca_core::feasibility::{is_feasible_components, is_feasible_crossing, is_three_connected, FeasibilityReport};
use vca_core::generate;
use vca_core::instance::parse_links;
use vca_core::{Chord, Error, Instance};

#[derive(Parser)]
#[command(name = "vca", version, about = "Cycle vertex-connectivity augmentation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance.
    Gen(GenArgs),
    /// Run the three feasibility oracles on an instance and optionally on a subset.
    Check {
        file: PathBuf,
        /// Instance-format file whose links must come from FILE.
        #[arg(long)]
        subset: Option<PathBuf>,
    },
    /// Solve an instance and print the result as JSON.
    Solve(solve::SolveArgs),
    /// Solve a grid of generated instances and print CSV.
    Bench(bench::BenchArgs),
    /// Print the guarantee curves as CSV.
    Curve(curve::CurveArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    AllChords,
    Random,
    Planted,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    n: u32,
    /// Chord density for `random`, bridge density for `planted`.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of crossing pairs for `planted`.
    #[arg(long, default_value_t = 2)]
    pairs: u32,
    #[arg(long, default_value_t = generate::DEFAULT_ATTEMPTS)]
    attempts: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// Failures that carry their own exit code.
#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Infeasible(String),
    #[error("{0}")]
    Validation(String),
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Error>() {
            return match e {
                Error::BudgetExceeded { .. } | Error::CapExceeded(_) => 2,
                Error::VertexRange { .. }
                | Error::Loop(_)
                | Error::CycleEdge { .. }
                | Error::CycleTooSmall(_)
                | Error::Format(_)
                | Error::DuplicateLink(_) => 3,
                _ => 1,
            };
        }
        if cause.downcast_ref::<Failure>().is_some() {
            return 1;
        }
        if cause.downcast_ref::<io::Error>().is_some() || cause.downcast_ref::<csv::Error>().is_some() {
            return 3;
        }
    }
    1
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    Ok(Instance::parse(&read_input(path)?)?)
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("VCA_THREADS") else { return Ok(()) };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Validation(format!("VCA_THREADS must be a positive integer, got {raw:?}")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn gen(args: &GenArgs) -> Result<String> {
    let inst = match args.kind {
        Kind::AllChords => generate::complete(args.n)?,
        Kind::Random => generate::random(args.n, args.p, args.seed, args.attempts)?,
        Kind::Planted => generate::planted(args.n, args.pairs, args.p, args.seed)?,
    };
    Ok(match args.format {
        Format::Json => inst.to_json() + "\n",
        Format::Text => inst.to_text(),
    })
}

fn describe(report: &FeasibilityReport) -> String {
    match report.uncrossed_chord() {
        None => "feasible".into(),
        Some(w) => format!("infeasible ({w} uncrossed)"),
    }
}

fn check_links(label: &str, n: u32, links: &[Chord], out: &mut String) -> Result<bool> {
    let crossing = is_feasible_crossing(n, links);
    let components = is_feasible_components(n, links);
    let pairs = is_three_connected(n, links);
    out.push_str(&format!(
        "{label}: {} links; crossing {}; components {}; separating pairs {}\n",
        links.len(),
        describe(&crossing),
        describe(&components),
        if pairs { "none" } else { "found" }
    ));
    if crossing.feasible != components.feasible || components.feasible != pairs {
        bail!("feasibility oracles disagree on {label}");
    }
    Ok(pairs)
}

fn check(file: &Path, subset: Option<&Path>) -> Result<(String, bool)> {
    let (n, links) = parse_links(&read_input(file)?)?;
    let mut out = String::new();
    let mut ok = check_links("S", n, &links, &mut out)?;
    if let Some(path) = subset {
        let (m, sub) = parse_links(&read_input(path)?)?;
        if m != n {
            return Err(Error::Format(format!("subset is on a {m}-cycle, instance on a {n}-cycle")).into());
        }
        if let Some(c) = sub.iter().find(|c| links.binary_search(c).is_err()) {
            return Err(Error::UnknownLink(*c).into());
        }
        ok &= check_links("subset", n, &sub, &mut out)?;
    }
    Ok((out, ok))
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Gen(args) => stdout.write_all(gen(&args)?.as_bytes())?,
        Command::Check { file, subset } => {
            let (report, ok) = check(&file, subset.as_deref())?;
            stdout.write_all(report.as_bytes())?;
            if !ok {
                return Err(Failure::Infeasible("infeasible link set".into()).into());
            }
        }
        Command::Solve(args) => {
            let result = solve::solve(&load_instance(&args.file)?, args.algo, &args.opts)?;
            writeln!(stdout, "{}", serde_json::to_string(&result)?)?;
        }
        Command::Bench(args) => stdout.write_all(bench::bench(&args)?.as_bytes())?,
        Command::Curve(args) => stdout.write_all(curve::curve(&args)?.as_bytes())?,
    }
    stdout.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
