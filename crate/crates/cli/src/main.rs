//! `verlinde`: decomposition queries, verification sweeps and trace lookups.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use verlinde_core::chartab::{RepDescriptor, RepKind};
use verlinde_core::output::OutputRecord;
use verlinde_core::suites::{self, Bounds, Suite};
use verlinde_core::verlinde::{brace_symbol, decompose, theorem2_decompose};
use verlinde_core::{Error, HeisElem};

const USAGE_ERROR: u8 = 2;
const VERIFY_FAILURE: u8 = 1;

#[derive(Parser, Debug)]
#[command(name = "verlinde", version, about = "Exact splitting of Verlinde bundles on elliptic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose E_{R,L} into indecomposable summands.
    Decompose {
        #[arg(long, value_parser = parse_positive, required_unless_present = "theorem2")]
        rank: Option<usize>,
        #[arg(long, value_parser = parse_positive, required_unless_present = "theorem2")]
        level: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Twisted family E_{r,d,K}: `r,d,K,shift`.
        #[arg(long, value_parser = parse_theorem2, allow_hyphen_values = true, conflicts_with_all = ["rank", "level"])]
        theorem2: Option<Theorem2Args>,
    },
    /// Run a closed-form versus oracle sweep.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        max_h: Option<usize>,
        #[arg(long)]
        max_q: Option<usize>,
        #[arg(long)]
        max_rk: Option<usize>,
    },
    /// Print the symbol {lam/h}.
    Symbol {
        #[arg(long)]
        lam: usize,
        #[arg(long, value_parser = parse_positive)]
        h: usize,
    },
    /// Print the trace of a Heisenberg element on a representation.
    Trace {
        #[arg(long, value_parser = parse_positive)]
        n: usize,
        /// `symdual:K`, `wedge`, `mk:Q` or `schulte:H,R,K`.
        #[arg(long)]
        rep: String,
        /// `t,x,y`.
        #[arg(long, value_parser = parse_elem, allow_hyphen_values = true)]
        elem: (i64, i64, i64),
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug)]
struct Theorem2Args {
    r: i64,
    d: i64,
    level: usize,
    shift: i64,
}

fn parse_positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(_) => Err(format!("not a positive integer: {s:?}")),
    }
}

fn parse_list<T: FromStr>(s: &str, len: usize, what: &str) -> Result<Vec<T>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != len {
        return Err(format!("expected {len} comma-separated {what}, got {s:?}"));
    }
    parts
        .iter()
        .map(|p| p.parse::<T>().map_err(|_| format!("not a valid integer: {p:?}")))
        .collect()
}

fn parse_theorem2(s: &str) -> Result<Theorem2Args, String> {
    let v: Vec<i64> = parse_list(s, 4, "integers r,d,K,shift")?;
    if v[2] <= 0 {
        return Err("K must be positive".into());
    }
    Ok(Theorem2Args { r: v[0], d: v[1], level: v[2] as usize, shift: v[3] })
}

fn parse_elem(s: &str) -> Result<(i64, i64, i64), String> {
    let v: Vec<i64> = parse_list(s, 3, "integers t,x,y")?;
    Ok((v[0], v[1], v[2]))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}

fn parse_rep(spec: &str, n: usize) -> Result<RepDescriptor, Error> {
    let bad = || Error::InvalidInput(format!("unknown representation {spec:?}"));
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let ints = |len: usize| -> Result<Vec<usize>, Error> {
        parse_list::<usize>(args, len, "nonnegative integers").map_err(Error::InvalidInput)
    };
    let kind = match name {
        "symdual" => RepKind::SymDual { degree: ints(1)?[0] },
        "wedge" if args.is_empty() => RepKind::WedgeTop,
        "mk" => RepKind::Mk { h: n, q: ints(1)?[0] },
        "schulte" => {
            let v = ints(3)?;
            RepKind::SchulteR { h: v[0], r: v[1], k: v[2] }
        }
        _ => return Err(bad()),
    };
    RepDescriptor::new(kind, n)
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("verlinde: {msg}");
    ExitCode::from(USAGE_ERROR)
}

/// Usage errors for bad input; internal inconsistencies count as failed
/// verification.
fn report_error(e: Error) -> ExitCode {
    match e {
        Error::Inconsistency(_) => {
            eprintln!("verlinde: {e}");
            ExitCode::from(VERIFY_FAILURE)
        }
        _ => usage_error(e),
    }
}

fn run_decompose(
    rank: Option<usize>,
    level: Option<usize>,
    format: Format,
    theorem2: Option<Theorem2Args>,
) -> ExitCode {
    let report = match (theorem2, rank, level) {
        (Some(t), _, _) => theorem2_decompose(t.r, t.d, t.level, t.shift),
        (None, Some(r), Some(l)) => decompose(r, l),
        _ => return usage_error("--rank and --level are required"),
    };
    let record = match report {
        Ok(report) => OutputRecord::from_report(&report),
        Err(e) => return report_error(e),
    };
    match format {
        Format::Json => println!("{}", record.to_json()),
        Format::Csv => print!("{}", record.to_csv()),
        Format::Text => print!("{}", record.to_text()),
    }
    ExitCode::SUCCESS
}

fn run_verify(suite: Suite, bounds: Bounds) -> ExitCode {
    let report = suites::run(suite, &bounds);
    for check in &report.checks {
        println!("{check}");
    }
    let failed = report.failures().count();
    println!(
        "{}: {} checks, {} failed",
        suite,
        report.checks.len(),
        failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VERIFY_FAILURE)
    }
}

fn run_trace(n: usize, rep: &str, elem: (i64, i64, i64)) -> ExitCode {
    let result = parse_rep(rep, n).and_then(|rep| {
        let g = HeisElem::new(n, elem.0, elem.1, elem.2)?;
        rep.trace(&g)
    });
    match result {
        Ok(value) => {
            match value.to_rational() {
                Some(q) => println!("{q}"),
                None => println!("{}", value.reduce_canonical()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => report_error(e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            return usage_error(line.trim_start_matches("error: "));
        }
    };
    match cli.command {
        Command::Decompose { rank, level, format, theorem2 } => {
            run_decompose(rank, level, format, theorem2)
        }
        Command::Verify { suite, max_h, max_q, max_rk } => {
            run_verify(suite, Bounds { max_h, max_q, max_rk })
        }
        Command::Symbol { lam, h } => {
            println!("{}", brace_symbol(lam, h));
            ExitCode::SUCCESS
        }
        Command::Trace { n, rep, elem } => run_trace(n, &rep, elem),
    }
}
