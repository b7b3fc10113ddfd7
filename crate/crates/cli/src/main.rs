//! `glk`: command-line front end. Every run prints a one-line verdict (or a
//! JSON report with `--json`) and exits 0 once a verdict is computed,
//! whatever it says. Operational failures exit 1.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "glk", version, about = "Exact computations with Jordan pairs and 3-graded Lie algebras")]
struct Cli {
    /// Print the machine-readable report instead of the text verdict.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the machine-readable report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<PathBuf>,
    /// Include wall-clock time in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
    /// Run every inner loop sequentially.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operations on structure-constant algebra files.
    Algebra {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Operations on Jordan pair files.
    Pair {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// The TKK construction and its inverse.
    Tkk {
        #[command(subcommand)]
        cmd: TkkCmd,
    },
    /// Graded polynomial identities.
    Pi {
        #[command(subcommand)]
        cmd: PiCmd,
    },
    /// Centroid of an algebra, or of a pair with `--pair`.
    Centroid(Target),
    /// Central closure of an algebra, or of a pair with `--pair`.
    Closure {
        #[command(flatten)]
        target: Target,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Kostrikin radical (`--lie`) or McCrimmon radical (`--pair`).
    Radical {
        #[arg(long, conflicts_with = "pair", required_unless_present = "pair")]
        lie: Option<PathBuf>,
        #[arg(long)]
        pair: Option<PathBuf>,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Checks of the structural correspondences on a pair.
    Verify {
        check: VerifyKind,
        #[arg(long)]
        pair: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Writes a catalog algebra or pair file.
    Catalog {
        #[command(subcommand)]
        what: CatalogCmd,
        /// `Q`, `Fp P` or `ext BASE [c0,...,cn]`.
        #[arg(long, global = true, default_value = "Q")]
        field: String,
        /// View the result over the base field of an extension.
        #[arg(long, global = true)]
        restrict: bool,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum TkkCmd {
    /// TKK algebra of a pair.
    Build {
        pair: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Associated pair of a Jordan 3-graded algebra.
    Pair {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum PiCmd {
    /// Is the polynomial an identity of the algebra?
    Test {
        poly: PathBuf,
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        randomized: bool,
        #[arg(long, default_value_t = 0, requires = "randomized")]
        seed: u64,
        #[arg(long, default_value_t = 200, requires = "randomized")]
        trials: usize,
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Essentiality and the smallest graded sl(p+q) witness.
    Essential {
        poly: PathBuf,
        #[arg(long)]
        max_pq: Option<usize>,
        #[arg(long)]
        budget: Option<u128>,
    },
    /// The induced Jordan pair polynomial.
    Induce {
        poly: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(conflicts_with = "pair", required_unless_present = "pair")]
    file: Option<PathBuf>,
    #[arg(long)]
    pair: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct ModeArgs {
    #[arg(long, value_enum, default_value_t = ModeKind::Enumerate)]
    mode: ModeKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    trials: usize,
    #[arg(long)]
    budget: Option<u128>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModeKind {
    Enumerate,
    Witness,
    Structural,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VerifyKind {
    CentroidIso,
    ClosureIso,
    RadicalCorr,
}

#[derive(Subcommand, Debug)]
enum CatalogCmd {
    /// Rectangular matrices, a (p, q) by (q, p) pair.
    Rect { p: usize, q: usize },
    /// The zero pair of dimensions (m, n).
    Zero { m: usize, n: usize },
    /// Pair of a symmetric bilinear form with identity Gram matrix.
    Bilinear { n: usize },
    /// Alternating matrices.
    Skew { n: usize },
    /// A pair direct sum of two catalog pair files.
    Sum { a: PathBuf, b: PathBuf },
    /// sl(p+q) with the (p, q) block grading.
    Sl { p: usize, q: usize },
    Sl2,
    Heisenberg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(mut out) => {
            if cli.timing {
                out.report["elapsed_ms"] = serde_json::json!(start.elapsed().as_millis() as u64);
            }
            let rendered = serde_json::to_string_pretty(&out.report).expect("reports serialize");
            if let Some(path) = &cli.report {
                if let Err(e) = std::fs::write(path, format!("{rendered}\n")) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            if cli.json {
                println!("{rendered}");
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
