//! Command-line front end: read a system file, solve, report.

pub mod format;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::error::{Error, Result};
use crate::polycore::DEFAULT_PRECISION;
use crate::scheme::{
    detect_families, numeric_check, solve_effective, FamilyVerdict, SolveOptions, SolveStatus, Strategy, TreeChain,
};

pub use format::{parse_coeff, SystemFile};
pub use report::{jet_doc, jet_from_doc, parse_rational64, ReportDoc, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
}

/// Puiseux jets of the small solutions of a polynomial system.
#[derive(Clone, Debug, Parser)]
#[command(name = "smallsol", version)]
pub struct Args {
    /// System file.
    pub file: PathBuf,

    /// Target truncation order T (integer or p/q).
    #[arg(long, default_value = "6")]
    pub order: String,

    /// `first`, `all`, or Prüfer codes per level from the top, levels
    /// separated by `/` and entries by `,` (the two-vertex level is implied).
    #[arg(long, default_value = "first")]
    pub trees: String,

    /// Working precision in bits for numeric coefficients.
    #[arg(long, env = "SMALLSOL_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,

    /// Comma-separated λ samples for a Newton cross-check of each branch.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub verify_numeric: Vec<f64>,

    /// Run the GCD family test as well.
    #[arg(long)]
    pub families: bool,

    /// Keep only branches that are real on some half-axis.
    #[arg(long)]
    pub real_only: bool,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

/// Exit code for an error raised before or during solving.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Input(_)
        | Error::InvalidTree(_)
        | Error::TreeSize(_)
        | Error::ZeroEquation
        | Error::PrecisionMismatch(..) => 4,
        _ => 3,
    }
}

fn parse_strategy(s: &str, n: usize) -> Result<Strategy> {
    match s {
        "first" => Ok(Strategy::FirstChain),
        "all" => Ok(Strategy::AllChains),
        codes => {
            let mut levels: Vec<Vec<usize>> = codes
                .split('/')
                .map(|level| {
                    level
                        .split(',')
                        .filter(|t| !t.trim().is_empty())
                        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidTree(format!("bad code entry '{t}'"))))
                        .collect()
                })
                .collect::<Result<_>>()?;
            if levels.len() + 2 == n {
                levels.push(Vec::new());
            }
            Ok(Strategy::Explicit(TreeChain::from_codes(n, &levels)?))
        }
    }
}

/// Runs the pipeline on file contents; returns the exit code and output.
pub fn run_source(src: &str, args: &Args) -> Result<(i32, String)> {
    let file = SystemFile::parse(src, args.precision)?;
    let system = file.system()?;
    let order = parse_rational64(&args.order).map_err(|_| Error::Input(format!("bad order '{}'", args.order)))?;
    let opts = SolveOptions {
        order,
        strategy: parse_strategy(&args.trees, system.nvars())?,
        prec: args.precision,
        use_shortcut: true,
    };
    let mut report = solve_effective(&system, &opts)?;
    let mut status = report.status;
    let families = if args.families { Some(detect_families(&system)?) } else { None };
    if let Some(FamilyVerdict::Family { level }) = families.as_ref().map(|f| f.verdict) {
        // emitted jets cannot be certified against an infinite family
        report.branches.clear();
        status = SolveStatus::Family { level };
    }
    if args.real_only {
        report.branches.retain(|b| b.real_class.is_real_somewhere());
        if report.branches.is_empty() && status == SolveStatus::Emitted {
            status = SolveStatus::NoSmallSolutions;
        }
    }
    let code = status.exit_code();
    let mut doc = ReportDoc::new(&report, &file.variables, args.precision, code, status.as_str());
    doc.families = families.as_ref().map(report::family_doc);
    if !args.verify_numeric.is_empty() {
        doc.numeric = Some(
            report
                .branches
                .iter()
                .enumerate()
                .map(|(i, b)| report::numeric_doc(i + 1, &numeric_check(&system, &b.components, &args.verify_numeric, args.precision)))
                .collect(),
        );
    }
    let out = match args.format {
        OutputFormat::Text => doc.to_text(),
        OutputFormat::Machine => doc.to_json(),
    };
    Ok((code, out))
}

/// Reads the file named in `args` and runs; errors become exit codes with
/// a message.
pub fn run(args: &Args) -> (i32, String, String) {
    let src = match std::fs::read_to_string(&args.file) {
        Ok(s) => s,
        Err(e) => return (4, String::new(), format!("error: {}: {e}\n", args.file.display())),
    };
    match run_source(&src, args) {
        Ok((code, out)) => (code, out, String::new()),
        Err(e) => (error_exit_code(&e), String::new(), format!("error: {}: {e}\n", args.file.display())),
    }
}
