use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lebesgue::lintp::{convergence_certificate, lint_p};
use lebesgue::specfile::{load_spec, Model};
use lebesgue::suite::{check_spec, run_random, MeasureMode, SuiteReport};

/// Exact Lebesgue integration on finite measure spaces.
#[derive(Debug, Parser)]
#[command(name = "lebesgue", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the integral of a named function.
    Integrate(Target),
    /// Print the adapted-sequence integrals and their gaps as CSV.
    AdaptedTable {
        #[command(flatten)]
        target: Target,
        /// Last index of the table.
        #[arg(long, value_name = "K", value_parser = clap::value_parser!(u32).range(1..))]
        nmax: u32,
    },
    /// Run the property suite on a spec file or on random cases.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct Target {
    #[arg(long, value_name = "PATH")]
    spec: PathBuf,
    /// Name of a `function` declared in the spec.
    #[arg(long = "fn", value_name = "NAME")]
    function: String,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, value_name = "PATH", conflicts_with = "random")]
    spec: Option<PathBuf>,
    /// Random cases: seed, number of cases and maximum universe size
    /// (defaults 0, 500, 6). Used when no spec is given.
    #[arg(long, num_args = 0..=3, value_names = ["SEED", "COUNT", "SIZE"])]
    random: Option<Vec<u64>>,
    /// Print the per-property tallies as CSV.
    #[arg(long)]
    csv: bool,
    /// Add one to the measure of every set meeting two atoms before checking
    /// (a deliberately broken measure, for testing the checks themselves).
    #[arg(long)]
    debug_corrupt_measure: bool,
    /// Counterexamples printed in full before the rest are summarized.
    #[arg(long, default_value_t = 5, value_name = "N")]
    max_counterexamples: usize,
}

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn load(target: &Target) -> Result<(Model, String), ExitCode> {
    let spec = load_spec(&target.spec).map_err(input_error)?;
    let model = spec.build().map_err(input_error)?;
    if model.function(&target.function).is_none() {
        return Err(input_error(format!("no function named `{}`", target.function)));
    }
    Ok((model, target.function.clone()))
}

fn integrate(target: &Target) -> ExitCode {
    let (model, name) = match load(target) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let f = model.function(&name).expect("checked in load");
    match lint_p(&model.measure, f) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(e) => input_error(format!("`{name}`: {e}")),
    }
}

fn adapted_table(target: &Target, nmax: u32) -> ExitCode {
    let (model, name) = match load(target) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let f = model.function(&name).expect("checked in load");
    match convergence_certificate(&model.measure, f, nmax) {
        Ok(rows) => {
            let mut out = String::from("n,integral,gap\n");
            for r in rows {
                writeln!(out, "{},{},{}", r.n, r.integral, r.gap).expect("write to string");
            }
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => input_error(format!("`{name}`: {e}")),
    }
}

fn counterexamples(report: &SuiteReport, limit: usize) -> String {
    let mut by_case: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for f in &report.failures {
        by_case
            .entry(f.case)
            .or_default()
            .push(format!("{} [{}]", f.property, f.subject));
    }
    let mut out = String::new();
    for (shown, (case, props)) in by_case.iter().enumerate() {
        if shown == limit {
            writeln!(out, "# ... {} more failing case(s)", by_case.len() - limit).expect("write to string");
            break;
        }
        let spec = &report.failures.iter().find(|f| f.case == *case).expect("grouped").spec;
        writeln!(out, "# counterexample: case {case}").expect("write to string");
        for p in props {
            writeln!(out, "# failed: {p}").expect("write to string");
        }
        writeln!(out, "{spec}").expect("write to string");
    }
    out
}

fn check(args: &CheckArgs) -> ExitCode {
    let mode = if args.debug_corrupt_measure {
        MeasureMode::Corrupted
    } else {
        MeasureMode::AsDeclared
    };
    let report = match &args.spec {
        Some(path) => match load_spec(path) {
            Ok(spec) => check_spec(&spec, mode),
            Err(e) => return input_error(e),
        },
        None => {
            let given = args.random.clone().unwrap_or_default();
            let param = |i: usize, default: u64| given.get(i).copied().unwrap_or(default);
            let (seed, count, size) = (param(0, 0), param(1, 500), param(2, 6));
            if size == 0 {
                return input_error("universe size must be at least 1");
            }
            run_random(seed, count as usize, size as usize, mode)
        }
    };
    let cex = counterexamples(&report, args.max_counterexamples);
    if args.csv {
        print!("{}", report.to_csv());
        eprint!("{cex}");
    } else {
        print!("{report}");
        print!("{cex}");
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Integrate(target) => integrate(target),
        Command::AdaptedTable { target, nmax } => adapted_table(target, *nmax),
        Command::Check(args) => check(args),
    }
}
