use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use pcfdyn_core::dynamics::{pcf_check, PcfStatus, ProjPointQ, RationalMapP1};
use pcfdyn_core::multivar::{verify_dupont, verify_tchebyshev, CheckResult, VerificationReport};
use pcfdyn_core::padic::{lemma12_search, newton_polygon, orbit_valuation_table};
use pcfdyn_core::parse::parse_unipoly;
use pcfdyn_core::ramify::{predicted_bad_set, ramified_primes_at_level, stabilization_experiment, RamStatus};
use pcfdyn_core::Budgets;

use crate::error::CliError;
use crate::exec::RayonExecutor;
use crate::render::{render, Format, Report};
use crate::report::{
    Lemma12Report, NewtonReport, OrbitReport, PcfReport, PredictedReport, RamifyReport, VerificationJson,
    VerifyReport,
};

/// Coefficient-bit cap for the postcritical divisor in `pcf-check`.
const PCF_COEFF_BITS: u64 = 1 << 14;

#[derive(Parser, Debug)]
#[command(name = "pcfdyn", version, about = "Ramification in preimage fields of rational maps over Q")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Trial-division bound for integer factorization.
    #[arg(long, global = true, env = "PCFDYN_PRIME_BOUND", value_parser = clap::value_parser!(u64).range(2..))]
    pub prime_bound: Option<u64>,
    /// Pollard-rho iterations per factorization.
    #[arg(long, global = true, env = "PCFDYN_RHO_ROUNDS", value_parser = clap::value_parser!(u64).range(1..))]
    pub rho_rounds: Option<u64>,
    /// Largest admissible d^n.
    #[arg(long, global = true, env = "PCFDYN_DEGREE_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    pub degree_budget: Option<u64>,
    /// Worker threads for per-prime work; output does not depend on it.
    #[arg(long, global = true, env = "PCFDYN_WORKERS", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    pub workers: u64,
}

impl Common {
    pub fn budgets(&self) -> Budgets {
        let mut b = Budgets::default();
        if let Some(v) = self.prime_bound {
            b.trial_bound = v;
        }
        if let Some(v) = self.rho_rounds {
            b.rho_rounds = v;
        }
        if let Some(v) = self.degree_budget {
            b.degree_budget = usize::try_from(v).unwrap_or(usize::MAX);
        }
        b
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Decide post-critical finiteness.
    PcfCheck {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        levels: u64,
    },
    /// Ramified primes of the preimage fields, level by level.
    Ramify {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        levels: u64,
    },
    /// Primes that may ramify for a post-critically finite map.
    PredictedBad {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Factored orbit of a point.
    OrbitVals {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        levels: u64,
    },
    /// Primes outside a set at which an orbit value has valuation prime to e.
    Lemma12 {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        e: u32,
        /// Comma-separated primes to exclude.
        #[arg(long, value_delimiter = ',')]
        exclude_primes: Vec<String>,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        levels: u64,
    },
    /// Newton polygon of an integer polynomial at a prime.
    Newton {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        prime: String,
    },
    /// Exact checks of the worked examples.
    VerifyPaper,
}

/// A rendered report and the exit status it calls for.
pub struct Output {
    pub text: String,
    pub status: u8,
}

fn emit<R: Report>(r: &R, format: Format, partial: bool) -> Result<Output, CliError> {
    Ok(Output { text: render(r, format)?, status: if partial { 3 } else { 0 } })
}

fn parse_map(s: &str) -> Result<RationalMapP1, CliError> {
    Ok(RationalMapP1::parse(s)?)
}

fn parse_point(s: &str) -> Result<ProjPointQ, CliError> {
    Ok(ProjPointQ::parse(s)?)
}

fn parse_prime(s: &str) -> Result<BigUint, CliError> {
    s.trim().parse().map_err(|_| CliError::Input(format!("not a non-negative integer: {s:?}")))
}

fn levels(n: u64) -> usize {
    usize::try_from(n).unwrap_or(usize::MAX)
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let budgets = cli.common.budgets();
    let format = cli.common.format;
    match &cli.command {
        Command::PcfCheck { map, levels: n } => {
            let m = parse_map(map)?;
            let v = pcf_check(&m, levels(*n), PCF_COEFF_BITS)?;
            emit(&PcfReport::new(&m, &v), format, v.status == PcfStatus::Undetermined)
        }
        Command::Ramify { map, alpha, levels: n } => {
            let m = parse_map(map)?;
            let a = parse_point(alpha)?;
            let exec = RayonExecutor::new(levels(cli.common.workers))?;
            let r = stabilization_experiment(&m, &a, levels(*n), &budgets, &exec)?;
            let report = RamifyReport::new(&r);
            let partial = report.incomplete;
            emit(&report, format, partial)
        }
        Command::PredictedBad { map, alpha } => {
            let m = parse_map(map)?;
            let a = parse_point(alpha)?;
            let p = predicted_bad_set(&m, &a, &budgets)?;
            emit(&PredictedReport::new(&m, &a, &p), format, !p.unknown.is_empty())
        }
        Command::OrbitVals { map, alpha, levels: n } => {
            let m = parse_map(map)?;
            let a = parse_point(alpha)?;
            let rows = orbit_valuation_table(&m, &a, levels(*n), &budgets)?;
            let report = OrbitReport::new(&m, &a, &rows);
            let partial = report.incomplete;
            emit(&report, format, partial)
        }
        Command::Lemma12 { map, alpha, e, exclude_primes, levels: n } => {
            let m = parse_map(map)?;
            let a = parse_point(alpha)?;
            let excluded = exclude_primes.iter().map(|s| parse_prime(s)).collect::<Result<Vec<_>, _>>()?;
            let s = lemma12_search(&m, &a, *e, &excluded, levels(*n), &budgets)?;
            let partial = !s.unfactored.is_empty();
            emit(&Lemma12Report::new(&m, &a, *e, &excluded, levels(*n), &s), format, partial)
        }
        Command::Newton { poly, prime } => {
            let f = parse_unipoly(poly)?;
            let np = newton_polygon(&f, &parse_prime(prime)?)?;
            emit(&NewtonReport::new(&f.to_string(), &np), format, false)
        }
        Command::VerifyPaper => {
            let reports = vec![
                VerificationJson::new(&unramified_discriminant_prime(&budgets)),
                VerificationJson::new(&verify_dupont()),
                VerificationJson::new(&verify_tchebyshev()),
            ];
            let report = VerifyReport::new(reports);
            let text = render(&report, format)?;
            Ok(Output { text, status: if report.all_passed { 0 } else { 1 } })
        }
    }
}

/// `z(z-3)` at `alpha = 0`: 3 divides the discriminant of the level-one
/// preimage polynomial, yet nothing ramifies.
pub fn unramified_discriminant_prime(budgets: &Budgets) -> VerificationReport {
    let mut checks = Vec::new();
    let outcome = RationalMapP1::parse("z*(z-3)").and_then(|m| {
        ramified_primes_at_level(&m, &ProjPointQ::from_int(0), 1, budgets, &pcfdyn_core::exec::Sequential)
    });
    match outcome {
        Ok(level) => {
            let ramified: Vec<String> = level.primes_with(RamStatus::Ramified).map(ToString::to_string).collect();
            let candidates: Vec<String> = level.verdicts.iter().map(|v| v.p.to_string()).collect();
            checks.push(CheckResult {
                check_id: "no-ramification".into(),
                passed: ramified.is_empty(),
                evidence: format!("ramified at level 1: {{{}}}", ramified.join(", ")),
            });
            let three = level.verdicts.iter().find(|v| v.p == BigUint::from(3u32));
            checks.push(CheckResult {
                check_id: "3-divides-discriminant".into(),
                passed: three.is_some_and(|v| v.status == RamStatus::Unramified),
                evidence: format!(
                    "candidates {{{}}}; {}",
                    candidates.join(", "),
                    three.map_or("3 not a candidate".into(), |v| v.evidence.clone())
                ),
            });
        }
        Err(e) => checks.push(CheckResult { check_id: "no-ramification".into(), passed: false, evidence: e.to_string() }),
    }
    VerificationReport { name: "z(z-3)".into(), checks }
}

fn write_output(common: &Common, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses arguments, runs, writes the report, and maps the outcome to an
/// exit status: 0 success, 1 failed checks or IO, 2 bad input, 3 budget.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let result = run(&cli).and_then(|out| {
        write_output(&cli.common, &out.text)?;
        Ok(out.status)
    });
    match result {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e.to_string().replace('\n', " "));
            ExitCode::from(e.exit_code())
        }
    }
}
