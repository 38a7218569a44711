//! Argument parsing and rendering for the `franklin` binary.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decimal::{format_quadratic, format_rational, Rounding};
use crate::error::{Error, Result};
use crate::invgram::{inverse_row, InverseRow};
use crate::lebesgue::{asymptotic_sweep, projection_norm};
use crate::quadratic::QuadraticRational;
use crate::splines::KnotConfig;
use crate::verify::{self, norm_with, Level};

#[derive(Parser, Debug)]
#[command(name = "franklin", version, about = "Exact sup-norms of periodic piecewise-linear spline projections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Norms for N = 2..=n-max and ν = 0..=⌊(N−1)/2⌋.
    Table {
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        #[arg(long, default_value_t = 8)]
        digits: usize,
        /// Compute on a single thread.
        #[arg(long)]
        serial: bool,
    },
    /// One norm with its certificate against γ.
    Norm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nu: usize,
        /// Also list κ(j) for every row.
        #[arg(long)]
        verbose: bool,
        #[arg(long, default_value_t = 8)]
        digits: usize,
    },
    /// Norms and their distance to γ for fixed ν as N grows.
    Sweep {
        #[arg(long)]
        nu: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        serial: bool,
    },
    /// Run the exact verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyLevel::Quick)]
        level: VerifyLevel,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyLevel {
    Quick,
    Full,
}

/// A validated request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunConfig {
    Table { n_max: usize, format: TableFormat, digits: usize, parallel: bool },
    Norm { cfg: KnotConfig, verbose: bool, digits: usize },
    Sweep { nu: usize, n_max: usize, parallel: bool },
    Verify { level: Level },
}

impl RunConfig {
    /// Range checks that clap cannot express.
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let digits_ok = |d: usize| {
            if d == 0 {
                Err(Error::OutOfRange("--digits must be at least 1".into()))
            } else {
                Ok(d)
            }
        };
        Ok(match cli.command {
            Command::Table { n_max, format, digits, serial } => {
                if n_max < 2 {
                    return Err(Error::OutOfRange(format!("--n-max must be at least 2, got {n_max}")));
                }
                RunConfig::Table { n_max, format, digits: digits_ok(digits)?, parallel: !serial }
            }
            Command::Norm { n, nu, verbose, digits } => {
                RunConfig::Norm { cfg: KnotConfig::new(n, nu)?, verbose, digits: digits_ok(digits)? }
            }
            Command::Sweep { nu, n_max, serial } => {
                if n_max < nu + 2 {
                    return Err(Error::OutOfRange(format!("--n-max must be at least nu + 2 = {}", nu + 2)));
                }
                RunConfig::Sweep { nu, n_max, parallel: !serial }
            }
            Command::Verify { level } => RunConfig::Verify {
                level: match level {
                    VerifyLevel::Quick => Level::Quick,
                    VerifyLevel::Full => Level::Full,
                },
            },
        })
    }
}

/// One cell of the norm table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    #[serde(rename = "N")]
    pub knot_count: usize,
    pub nu: usize,
    pub norm_decimal: String,
    pub norm_num: String,
    pub norm_den: String,
    pub argmax_j: usize,
    pub below_gamma: bool,
}

impl TableCell {
    pub fn norm(&self) -> Result<BigRational> {
        let parse = |s: &str| s.parse().map_err(|_| Error::OutOfRange(format!("not an integer: {s}")));
        Ok(BigRational::new(parse(&self.norm_num)?, parse(&self.norm_den)?))
    }
}

/// `(N, ν)` pairs of the table, row by row.
pub fn table_configs(n_max: usize) -> Vec<KnotConfig> {
    (2..=n_max)
        .flat_map(|count| (0..=(count - 1) / 2).map(move |nu| KnotConfig::from_knot_count(count, nu).expect("ν < N/2")))
        .collect()
}

pub fn table_cells(n_max: usize, digits: usize) -> Result<Vec<TableCell>> {
    table_cells_with(n_max, digits, &inverse_row)
}

/// Table cells with inverse rows taken from `rows`.
pub fn table_cells_with<F>(n_max: usize, digits: usize, rows: &F) -> Result<Vec<TableCell>>
where
    F: Fn(KnotConfig, usize) -> Result<InverseRow> + Sync,
{
    table_configs(n_max)
        .par_iter()
        .map(|&cfg| {
            let r = norm_with(cfg, rows)?;
            Ok(TableCell {
                knot_count: cfg.knot_count(),
                nu: cfg.nu,
                norm_decimal: format_rational(&r.norm, digits, Rounding::HalfEven),
                norm_num: r.norm.numer().to_string(),
                norm_den: r.norm.denom().to_string(),
                argmax_j: r.argmax,
                below_gamma: r.below_gamma,
            })
        })
        .collect()
}

pub fn render_table(cells: &[TableCell], format: TableFormat) -> String {
    match format {
        TableFormat::Json => serde_json::to_string_pretty(cells).expect("cells serialize") + "\n",
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for c in cells {
                w.serialize(c).expect("cells serialize");
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("ascii")
        }
        TableFormat::Text => render_text(cells),
    }
}

fn render_text(cells: &[TableCell]) -> String {
    let width = cells.iter().map(|c| c.norm_decimal.len()).max().unwrap_or(10);
    let max_nu = cells.iter().map(|c| c.nu).max().unwrap_or(0);
    let mut out = format!("{:>3}", "N");
    for nu in 0..=max_nu {
        out += &format!("  {:<width$}", format!("nu={nu}"));
    }
    out.truncate(out.trim_end().len());
    out.push('\n');
    let mut current = None;
    for c in cells {
        if current != Some(c.knot_count) {
            if current.is_some() {
                out.push('\n');
            }
            out += &format!("{:>3}", c.knot_count);
            current = Some(c.knot_count);
        }
        out += &format!("  {}", c.norm_decimal);
    }
    if current.is_some() {
        out.push('\n');
    }
    out
}

fn in_pool<T: Send>(parallel: bool, f: impl FnOnce() -> T + Send) -> T {
    if parallel {
        f()
    } else {
        rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool").install(f)
    }
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::VerificationFailed => 2,
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let io = |e: std::io::Error| Error::OutOfRange(format!("write failed: {e}"));
    match *config {
        RunConfig::Table { n_max, format, digits, parallel } => {
            let cells = in_pool(parallel, || table_cells(n_max, digits))?;
            out.write_all(render_table(&cells, format).as_bytes()).map_err(io)?;
        }
        RunConfig::Norm { cfg, verbose, digits } => {
            let r = projection_norm(cfg)?;
            let gamma = format_quadratic(&QuadraticRational::gamma(), digits);
            writeln!(out, "n = {}, nu = {}, N = {}", cfg.n, cfg.nu, cfg.knot_count()).map_err(io)?;
            writeln!(out, "norm = {}", r.norm).map_err(io)?;
            writeln!(out, "decimal = {}", format_rational(&r.norm, digits, Rounding::HalfEven)).map_err(io)?;
            writeln!(out, "argmax j = {}", r.argmax).map_err(io)?;
            writeln!(out, "below gamma ({gamma}): {}", yes_no(r.below_gamma)).map_err(io)?;
            if verbose {
                for (j, k) in r.kappas.iter().enumerate() {
                    writeln!(out, "kappa[{j}] = {} = {k}", format_rational(k, digits, Rounding::HalfEven)).map_err(io)?;
                }
            }
        }
        RunConfig::Sweep { nu, n_max, parallel } => {
            let entries = in_pool(parallel, || asymptotic_sweep(nu, n_max))?;
            writeln!(out, "N,norm_decimal,gap_to_gamma").map_err(io)?;
            for e in &entries {
                writeln!(out, "{},{},{}", e.knot_count, e.decimal, e.gap_decimal).map_err(io)?;
            }
            if let Some(last) = entries.last() {
                writeln!(out, "# final gap at N={}: {}", last.knot_count, last.gap_decimal).map_err(io)?;
            }
        }
        RunConfig::Verify { level } => {
            let report = verify::run(level);
            for c in &report.checks {
                writeln!(out, "{c}").map_err(io)?;
            }
            match report.first_failure() {
                None => writeln!(out, "verify: all {} checks passed", report.checks.len()).map_err(io)?,
                Some(c) => {
                    writeln!(out, "verify: first counterexample in '{}': {}", c.name, c.failure.as_ref().unwrap())
                        .map_err(io)?;
                    return Ok(Outcome::VerificationFailed);
                }
            }
        }
    }
    Ok(Outcome::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("franklin").chain(args.iter().copied()))
    }

    fn output(args: &[&str]) -> String {
        let cfg = RunConfig::from_cli(parse(args).unwrap()).unwrap();
        let mut buf = Vec::new();
        run(&cfg, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn single_cell_table() {
        assert_eq!(output(&["table", "--n-max", "2"]), "  N  nu=0\n  2  1.66666667\n");
        let csv = output(&["table", "--n-max", "2", "--format", "csv"]);
        assert_eq!(csv, "N,nu,norm_decimal,norm_num,norm_den,argmax_j,below_gamma\n2,0,1.66666667,5,3,0,true\n");
    }

    #[test]
    fn json_exact_values() {
        let cells: Vec<TableCell> = serde_json::from_str(&output(&["table", "--n-max", "4", "--format", "json"])).unwrap();
        let c = cells.iter().find(|c| c.knot_count == 4 && c.nu == 1).unwrap();
        assert_eq!((c.norm_num.as_str(), c.norm_den.as_str()), ("2", "1"));
        assert_eq!(cells.len(), 5);
    }

    #[test]
    fn norm_report() {
        let s = output(&["norm", "--n", "19", "--nu", "1"]);
        assert!(s.contains("decimal = 2.14023316"));
        assert!(s.contains("below gamma (2.14023734): yes"));
        let s = output(&["norm", "--n", "3", "--nu", "0", "--verbose"]);
        assert!(s.contains("norm = 16/9"));
        assert_eq!(s.matches("kappa[").count(), 3);
    }

    #[test]
    fn usage_errors() {
        assert!(RunConfig::from_cli(parse(&["norm", "--n", "2", "--nu", "3"]).unwrap()).is_err());
        assert!(RunConfig::from_cli(parse(&["table", "--n-max", "1"]).unwrap()).is_err());
        assert!(RunConfig::from_cli(parse(&["table", "--n-max", "4", "--digits", "0"]).unwrap()).is_err());
        assert!(parse(&["table", "--n-max", "4", "--format", "xml"]).is_err());
        assert!(parse(&["verify", "--level", "slow"]).is_err());
    }

    #[test]
    fn serial_matches_parallel() {
        assert_eq!(output(&["table", "--n-max", "9"]), output(&["table", "--n-max", "9", "--serial"]));
        assert_eq!(output(&["sweep", "--nu", "1", "--n-max", "9"]), output(&["sweep", "--nu", "1", "--n-max", "9", "--serial"]));
    }
}
