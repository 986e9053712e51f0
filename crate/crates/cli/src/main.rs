use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wspec_core::enumeration::free_trees;
use wspec_core::harness::{
    run_double_star_chain, run_extremal_scan, run_kelmans_check, run_path_bounds, run_props,
    run_table1, ExperimentReport, HarnessError, ScanFamily,
};
use wspec_core::weight::{WeightFunction, DEFAULT_DELTA};

#[derive(Parser)]
#[command(
    name = "wspec",
    version,
    about = "Spectral radius experiments for degree-weighted adjacency matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Also write the CSV report to this file.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Print JSON instead of CSV on stdout.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Weight {
    /// Catalog name (sombor, second_zagreb, ...) or an expression in x and y.
    #[arg(long = "f", value_name = "NAME")]
    f: String,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
}

impl Weight {
    fn resolve(&self) -> Result<WeightFunction, HarnessError> {
        Ok(WeightFunction::resolve(&self.f, self.alpha, self.p)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the 5x7 table of order-15 star and double-star radii.
    Table1 {
        #[command(flatten)]
        out: Output,
    },
    /// Exhaustive extremal-tree scan over a range of orders.
    Scan {
        #[command(flatten)]
        weight: Weight,
        #[arg(long, default_value_t = 4)]
        n_lo: usize,
        #[arg(long, default_value_t = 10)]
        n_hi: usize,
        #[arg(long)]
        jobs: Option<usize>,
        /// Only scan stars and double stars.
        #[arg(long)]
        double_stars: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Random Kelmans applications; nontrivial moves must raise the radius.
    Kelmans {
        #[command(flatten)]
        weight: Weight,
        /// Fixed order; overrides --n-lo and --n-hi.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 8)]
        n_lo: usize,
        #[arg(long, default_value_t = 12)]
        n_hi: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Radii along the double-star chain of one order.
    Chain {
        #[command(flatten)]
        weight: Weight,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Path upper bounds and the S_5 identity.
    Pathbounds {
        #[command(flatten)]
        weight: Weight,
        #[arg(long, default_value_t = 30)]
        n_hi: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Grid checks of monotonicity, convexity and the restriction.
    Props {
        #[command(flatten)]
        weight: Weight,
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Count the free trees of one order, or print them with --emit.
    Trees {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        emit: bool,
    },
}

fn emit(report: &ExperimentReport, out: &Output) -> io::Result<ExitCode> {
    let csv = report.to_csv();
    if let Some(path) = &out.csv {
        fs::write(path, &csv)?;
    }
    let mut stdout = io::stdout().lock();
    if out.json {
        writeln!(stdout, "{}", report.to_json())?;
    } else {
        stdout.write_all(csv.as_bytes())?;
    }
    eprintln!("{}", report.summary_line());
    Ok(if report.acceptable() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(command: Command) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let (report, out) = match command {
        Command::Table1 { out } => (run_table1()?, out),
        Command::Scan {
            weight,
            n_lo,
            n_hi,
            jobs,
            double_stars,
            out,
        } => {
            let family = if double_stars {
                ScanFamily::DoubleStars
            } else {
                ScanFamily::AllTrees
            };
            (
                run_extremal_scan(&weight.resolve()?, n_lo, n_hi, family, jobs)?,
                out,
            )
        }
        Command::Kelmans {
            weight,
            n,
            n_lo,
            n_hi,
            trials,
            seed,
            out,
        } => {
            let (lo, hi) = n.map_or((n_lo, n_hi), |n| (n, n));
            (
                run_kelmans_check(&weight.resolve()?, lo, hi, trials, seed)?,
                out,
            )
        }
        Command::Chain { weight, n, out } => (run_double_star_chain(&weight.resolve()?, n)?, out),
        Command::Pathbounds { weight, n_hi, out } => {
            (run_path_bounds(&weight.resolve()?, n_hi)?, out)
        }
        Command::Props { weight, delta, out } => (run_props(&weight.resolve()?, delta)?, out),
        Command::Trees { n, emit: print } => {
            let mut stdout = io::stdout().lock();
            let mut count = 0u64;
            for (i, tree) in free_trees(n)?.enumerate() {
                if print {
                    if i > 0 {
                        writeln!(stdout)?;
                    }
                    stdout.write_all(tree.to_text().as_bytes())?;
                }
                count += 1;
            }
            if print {
                eprintln!("{count} trees");
            } else {
                writeln!(stdout, "{count}")?;
            }
            return Ok(ExitCode::SUCCESS);
        }
    };
    Ok(emit(&report, &out)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("wspec: {e}");
            ExitCode::from(2)
        }
    }
}
