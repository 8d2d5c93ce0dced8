//! Command-line front end: run checks and harnesses from flags or a JSON
//! config, sweep parameters, run falsification campaigns, and emit
//! CSV/SVG/JSON artifacts.
//!
//! Exit codes: 0 pass/consistent, 1 fail/inconsistent, 2 inconclusive-
//! dominated outcome, 3 usage error.

mod funcspec;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use subord_core::Complex;

fn parse_complex(s: &str) -> Result<Complex, String> {
    let s = s.trim();
    if let Some((re, im)) = s.split_once(',') {
        let re: f64 = re.trim().parse().map_err(|_| format!("bad real part in `{s}`"))?;
        let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part in `{s}`"))?;
        Ok(Complex::new(re, im))
    } else {
        let re: f64 = s.parse().map_err(|_| format!("bad number `{s}`"))?;
        Ok(Complex::new(re, 0.0))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "subord-lab",
    version,
    about = "Numerical lab for first-order differential subordination on the unit disk"
)]
struct Cli {
    /// JSON config file describing the whole run (alternative to a subcommand).
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug, Clone)]
struct CommonOpts {
    /// Built-in family name (e.g. janowski, koebe, halfplane, identity).
    #[arg(long)]
    family: Option<String>,

    /// Janowski parameter A.
    #[arg(long = "A", allow_negative_numbers = true)]
    a: Option<f64>,

    /// Janowski parameter B.
    #[arg(long = "B", allow_negative_numbers = true)]
    b: Option<f64>,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    alpha: f64,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    mu: f64,

    /// Complex values are written as "re,im" (or a bare real).
    #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
    beta: Complex,

    #[arg(long, value_parser = parse_complex, default_value = "0", allow_hyphen_values = true)]
    gamma: Complex,

    #[arg(long, value_parser = parse_complex, default_value = "0", allow_hyphen_values = true)]
    delta: Complex,

    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    lambda: Option<Complex>,

    /// Comma-separated radius ladder, strictly increasing in (0,1).
    #[arg(long = "grid-radii", value_delimiter = ',')]
    grid_radii: Option<Vec<f64>>,

    /// Angular sample count per radius (>= 64).
    #[arg(long = "grid-n")]
    grid_n: Option<usize>,

    /// Output directory for report files.
    #[arg(long, default_value = ".")]
    out: PathBuf,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check class membership of a function on the grid.
    CheckClass {
        #[command(flatten)]
        common: CommonOpts,
        /// Function spec for the tested p (defaults to --family/--A/--B).
        #[arg(long)]
        p: Option<String>,
    },
    /// Evaluate the three hypothesis conditions for a candidate q.
    CheckHypotheses {
        #[command(flatten)]
        common: CommonOpts,
        /// Function spec for q (defaults to --family/--A/--B).
        #[arg(long)]
        q: Option<String>,
    },
    /// Decide f ≺ g numerically.
    TestSubordination {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Run the sandwich harness for p between q1 and q2.
    VerifySandwich {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q2: String,
    },
    /// Sweep the 9x9 Janowski (A,B) grid and emit a CSV report.
    Scan {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the randomized falsification campaign.
    Falsify {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long, default_value_t = 500)]
        trials: u32,
    },
    /// Render image curves of one or more maps to SVG.
    Plot {
        #[command(flatten)]
        common: CommonOpts,
        /// Function spec to plot; repeatable.
        #[arg(long = "f", value_name = "SPEC")]
        maps: Vec<String>,
        /// Source circle radius for the image curves.
        #[arg(long, default_value_t = 0.9)]
        rho: f64,
    },
}

fn configure_threads() {
    if let Ok(v) = std::env::var("SUBORD_LAB_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                _ => {
                    let _ = e.print();
                    ExitCode::from(3)
                }
            };
        }
    };

    let outcome = match (cli.config, cli.command) {
        (Some(_), Some(_)) => Err("pass either --config or a subcommand, not both".to_string()),
        (Some(path), None) => run::run_from_config(&path),
        (None, Some(cmd)) => run::run_command(cmd),
        (None, None) => Err("nothing to do: pass a subcommand or --config (see --help)".to_string()),
    };

    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}
