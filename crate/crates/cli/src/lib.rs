//! `yieldshape` command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain or validation failure, 2 when the
//! input or the arguments cannot be parsed. Tables are comma-separated with
//! a header row; real numbers are printed with exactly 12 decimals.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod input;

pub use input::{CurveFile, CurveType};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<yieldshape_core::CurveError> for CliError {
    fn from(e: yieldshape_core::CurveError) -> Self {
        use yieldshape_core::CurveError;
        match e {
            CurveError::TooFewPoints { required, actual } => {
                CliError::Domain(format!("need ≥ {required} points (got {actual})"))
            }
            CurveError::Validation(report) => {
                let first = report
                    .first()
                    .map(|v| format!(": first at index {} ({})", v.index, v.kind.as_str()))
                    .unwrap_or_default();
                CliError::Domain(format!("curve fails validation{first}"))
            }
            other => CliError::Domain(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "yieldshape",
    version,
    about = "Yield-curve shape analytics and butterfly arbitrage checks"
)]
pub struct Cli {
    /// Treat invalid discount factors as errors instead of warnings.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Convexity tolerance for shape classification.
    #[arg(long, global = true, value_name = "TOL", allow_hyphen_values = true)]
    pub tol: Option<f64>,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discount factors and annuities from par swap rates.
    Bootstrap(InputArgs),
    /// Par swap rates from a zero or discount curve.
    Par(InputArgs),
    /// One-year forward rates from a zero or discount curve.
    Forwards(InputArgs),
    /// No-arbitrage validation of the implied discount curve.
    Validate(InputArgs),
    /// Convex triples, each an arbitrage butterfly under parallel moves.
    Scan(ScanArgs),
    /// Weights and shape margin of one butterfly.
    Butterfly(ButterflyArgs),
    /// Butterfly P&L over a grid of parallel shifts.
    Pnl(PnlArgs),
    /// Lemma checks for the swap bootstrap under a shift.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Curve file, delimited (`tenor_years,rate`) or JSON.
    pub input: PathBuf,

    /// Curve type of a delimited file; JSON files carry their own.
    #[arg(long, value_enum)]
    pub curve_type: Option<CurveType>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Zero,
    Swap,
}

impl From<Kind> for CurveType {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Zero => CurveType::Zero,
            Kind::Swap => CurveType::Swap,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Consecutive,
    All,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    pub input: PathBuf,

    /// Zero yields against tenor, or swap rates against annuity.
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,

    #[arg(long, value_enum, default_value = "consecutive")]
    pub mode: Mode,

    /// Lift the point cap on all-triples scans.
    #[arg(long)]
    pub allow_large: bool,
}

#[derive(Debug, Args)]
pub struct ButterflyArgs {
    pub input: PathBuf,

    #[arg(long, value_enum)]
    pub kind: Option<Kind>,

    /// Maturities (zero) or tenor indices (swap), strictly increasing.
    #[arg(long, value_name = "T1,T2,T3")]
    pub legs: LegSpec,
}

#[derive(Debug, Args)]
pub struct PnlArgs {
    pub input: PathBuf,

    #[arg(long, value_enum)]
    pub kind: Option<Kind>,

    #[arg(long, value_name = "T1,T2,T3")]
    pub legs: LegSpec,

    /// Parallel shift grid in basis points, inclusive.
    #[arg(long, value_name = "LO:HI:STEP", default_value = "0:0:1", allow_hyphen_values = true)]
    pub shift_bp: BpRange,

    /// Horizon in years. Defaults to 0 for zero butterflies and 1 for swaps.
    #[arg(long)]
    pub horizon: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,

    /// Parallel shift in basis points.
    #[arg(
        long,
        value_name = "BP",
        required_unless_present = "bump_bp",
        allow_hyphen_values = true
    )]
    pub shift_bp: Option<f64>,

    /// Extra shift at one tenor, added to the parallel shift. Repeatable.
    #[arg(long, value_name = "TENOR:BP", allow_hyphen_values = true)]
    pub bump_bp: Vec<Bump>,

    /// Randomized perturbations of the file's curve to check as well.
    #[arg(long, default_value_t = 0)]
    pub trials: u64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegSpec(pub [f64; 3]);

impl FromStr for LegSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| format!("`{p}` is not a number")))
            .collect::<Result<Vec<_>, _>>()?;
        let legs: [f64; 3] = parts
            .try_into()
            .map_err(|_| "expected three legs T1,T2,T3".to_string())?;
        if legs.iter().any(|v| !v.is_finite()) {
            return Err("legs must be finite".into());
        }
        Ok(LegSpec(legs))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BpRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl BpRange {
    /// Grid points `lo + i * step` up to `hi`, computed by index so the
    /// endpoint does not drift.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|i| self.lo + i as f64 * self.step).collect()
    }
}

impl FromStr for BpRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|_| format!("`{p}` is not a number")))
            .collect::<Result<Vec<_>, _>>()?;
        let [lo, hi, step]: [f64; 3] = parts.try_into().map_err(|_| "expected LO:HI:STEP".to_string())?;
        if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
            return Err("need finite LO <= HI and STEP > 0".into());
        }
        if (hi - lo) / step > 1e6 {
            return Err("grid exceeds one million points".into());
        }
        Ok(BpRange { lo, hi, step })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub tenor: usize,
    pub bp: f64,
}

impl FromStr for Bump {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (tenor, bp) = s.split_once(':').ok_or("expected TENOR:BP")?;
        let tenor = tenor
            .trim()
            .parse()
            .map_err(|_| format!("`{tenor}` is not a tenor index"))?;
        let bp: f64 = bp.trim().parse().map_err(|_| format!("`{bp}` is not a number"))?;
        if !bp.is_finite() {
            return Err("bump must be finite".into());
        }
        Ok(Bump { tenor, bp })
    }
}

/// A rendered command result. `failed` marks a report that is complete but
/// records a check failure, so the process exits 1 after writing it.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub body: String,
    pub warnings: Vec<String>,
    pub failed: bool,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let report = match commands::execute(&cli) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return e.exit_code();
        }
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &report.body),
        None => std::io::stdout().lock().write_all(report.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return 1;
    }
    if report.failed {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bp_grid_hits_the_endpoint() {
        let r: BpRange = "-500:500:1".parse().unwrap();
        let pts = r.points();
        assert_eq!(pts.len(), 1001);
        assert_eq!(pts[0], -500.0);
        assert_eq!(pts[1000], 500.0);
        let r: BpRange = "0:1:0.1".parse().unwrap();
        assert_eq!(r.points().len(), 11);
        assert_eq!("0:0:1".parse::<BpRange>().unwrap().points(), vec![0.0]);
    }

    #[test]
    fn bad_ranges_and_legs() {
        assert!("1:0:1".parse::<BpRange>().is_err());
        assert!("0:1:0".parse::<BpRange>().is_err());
        assert!("0:1".parse::<BpRange>().is_err());
        assert!("1,2".parse::<LegSpec>().is_err());
        assert!("1,x,3".parse::<LegSpec>().is_err());
        assert_eq!("1:-10".parse::<Bump>().unwrap(), Bump { tenor: 1, bp: -10.0 });
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["yieldshape", "frobnicate"]), 2);
        assert_eq!(run(["yieldshape", "verify", "x.csv"]), 2);
        assert_eq!(run(["yieldshape", "pnl", "x.csv", "--legs", "1,2"]), 2);
    }
}
