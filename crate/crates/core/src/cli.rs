//! Command-line surface. Exit codes: 0 success or equality, 1 a report that
//! failed its check, 2 usage, data or I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{eta_quotient_checks, sturm_bound};
use crate::identity::{compute, sigma_identity_check, sturm_verification, verify, RouteId, Series};
use crate::partitions::{colored_partition_counts, SigmaConvention};
use crate::qseries::parse_eta_exponents;
use crate::tables::{all_rows, rows, rows_jsonl, FieldId};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "threefield", version, about = "Exact q-series routes to a threefield theta identity")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand one series by one route.
    Compute(ComputeArgs),
    /// Compare two routes coefficient by coefficient.
    Verify(VerifyArgs),
    /// Print the Sturm bound of a level.
    Sturm {
        #[arg(long)]
        level: i64,
    },
    /// Weight, congruence sums and cusp orders of an eta quotient.
    EtaCheck {
        /// Exponents as `delta:r` pairs, e.g. "24:-3,48:8,96:-3".
        #[arg(long, allow_hyphen_values = true)]
        quotient: String,
        #[arg(long)]
        level: i64,
    },
    /// Signed colored partition counts of n.
    Partitions {
        #[arg(long)]
        n: usize,
    },
    /// Dump the embedded ray class rows, one JSON object per line.
    Tables {
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
    },
    /// Settle the sigma exponent convention and check the combined sigma series.
    SigmaCheck {
        #[arg(long)]
        terms: u32,
    },
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub series: Series,
    #[arg(long, value_enum)]
    pub route: RouteId,
    /// Highest exponent, in the series' own scale.
    #[arg(long)]
    pub terms: u32,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "triangular")]
    pub convention: ConventionArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, required_unless_present = "long_sturm")]
    pub series: Option<Series>,
    #[arg(long, value_enum, required_unless_present = "long_sturm")]
    pub lhs: Option<RouteId>,
    #[arg(long, value_enum, required_unless_present = "long_sturm")]
    pub rhs: Option<RouteId>,
    #[arg(long, required_unless_present = "long_sturm")]
    pub terms: Option<u32>,
    #[arg(long, value_enum, default_value = "triangular")]
    pub convention: ConventionArg,
    /// Compare the eta quotient with the principal classes on every exponent
    /// up to the Sturm bound of level 2304.
    #[arg(long)]
    pub long_sturm: bool,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    /// n(n+1)/2
    Triangular,
    /// n(n-1)/2
    NChoose2,
}

impl From<ConventionArg> for SigmaConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Triangular => SigmaConvention::Triangular,
            ConventionArg::NChoose2 => SigmaConvention::NChoose2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    K1,
    K2,
    K3,
}

pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    RunConfig::try_parse_from(argv)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Error::Usage(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Usage(format!("stdout: {e}"))),
    }
}

/// Output text and exit code for a parsed command.
pub fn execute(config: &RunConfig) -> Result<(String, i32)> {
    Ok(match &config.command {
        Command::Compute(a) => {
            let series = compute(a.series, a.route, a.terms.into(), a.convention.into())?;
            let text = match a.format {
                Format::Json => json(&series.to_record(&format!("{}[{}]", a.series, a.route))),
                Format::Csv => series.to_csv(a.series.is_theta_scale()),
            };
            (text, EXIT_OK)
        }
        Command::Verify(a) => {
            let report = if a.long_sturm {
                sturm_verification()?
            } else {
                let (Some(series), Some(lhs), Some(rhs), Some(terms)) = (a.series, a.lhs, a.rhs, a.terms) else {
                    return Err(Error::Usage("verify needs --series, --lhs, --rhs and --terms".into()));
                };
                verify(series, lhs, rhs, terms.into(), a.convention.into())?
            };
            let code = if report.equal { EXIT_OK } else { EXIT_MISMATCH };
            (json(&report), code)
        }
        Command::Sturm { level } => (json(&sturm_bound(*level)?), EXIT_OK),
        Command::EtaCheck { quotient, level } => {
            let report = eta_quotient_checks(&parse_eta_exponents(quotient)?, *level)?;
            let code = if report.passes { EXIT_OK } else { EXIT_MISMATCH };
            (json(&report), code)
        }
        Command::Partitions { n } => (json(&colored_partition_counts(*n)), EXIT_OK),
        Command::Tables { field } => {
            let text = match field {
                None => rows_jsonl(all_rows()),
                Some(FieldArg::K1) => rows_jsonl(rows(FieldId::K1)),
                Some(FieldArg::K2) => rows_jsonl(rows(FieldId::K2)),
                Some(FieldArg::K3) => rows_jsonl(rows(FieldId::K3)),
            };
            (text, EXIT_OK)
        }
        Command::SigmaCheck { terms } => {
            let report = sigma_identity_check((*terms).into())?;
            let ok = report.identity.equal && report.sigma_star_even && report.matches.values().filter(|&&m| m).count() == 1;
            (json(&report), if ok { EXIT_OK } else { EXIT_MISMATCH })
        }
    })
}

/// Parses, runs and reports; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let output = match &config.command {
        Command::Compute(a) => a.output.clone(),
        Command::Verify(a) => a.output.clone(),
        _ => None,
    };
    match execute(&config).and_then(|(text, code)| emit(&text, output.as_ref()).map(|_| code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
