use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use birkhoff::cli::{self, Outcome, SolveOptions, EXIT_PARSE};
use birkhoff::random::RandomConfig;
use birkhoff::solver::Algorithm;

#[derive(Parser)]
#[command(
    name = "birkhoff",
    version,
    about = "Exact Birkhoff interpolation via recursive Newton-type bases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file.
    Solve {
        file: PathBuf,
        /// 1: plain derivatives with degree escalation; 2: general operators with swaps.
        #[arg(long, value_enum)]
        algorithm: Option<AlgorithmArg>,
        /// Cross-check the result against the Vandermonde oracle.
        #[arg(long)]
        verify: bool,
        /// Use the conditions in file order.
        #[arg(long)]
        keep_order: bool,
        /// Highest working degree before reporting dependent conditions.
        #[arg(long, value_name = "K")]
        max_degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Differential test on seeded random problems.
    Random {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Where failing instances are written.
        #[arg(long, default_value = ".")]
        reproducer_dir: PathBuf,
    },
    /// Check the cumulative Pólya condition of a problem's incidence matrix.
    Polya { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome: Outcome = match cli.command {
        Command::Solve {
            file,
            algorithm,
            verify,
            keep_order,
            max_degree,
            json,
        } => {
            let opts = SolveOptions {
                algorithm: algorithm.map(|a| match a {
                    AlgorithmArg::One => Algorithm::Monomial,
                    AlgorithmArg::Two => Algorithm::General,
                }),
                verify,
                keep_order,
                max_degree,
                json,
            };
            cli::solve_file(&file, &opts)
        }
        Command::Random {
            count,
            max_n,
            max_order,
            seed,
            reproducer_dir,
        } => cli::random_command(
            &RandomConfig {
                count,
                max_n,
                max_order,
                seed,
            },
            &reproducer_dir,
        ),
        Command::Polya { file } => cli::polya_file(&file),
    };
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code)
}
