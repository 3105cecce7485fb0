//! `mevmix` — batch front door for generalized logistic extreme value
//! mixture models: validate model specs, evaluate CDFs on grids, draw
//! samples, compute orthant tail dependence, and run the verification
//! suite. All failures exit nonzero with a JSON error object on stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mevmix_cli::{
    run_eval, run_sample, run_taildep, run_validate, verify::run_verify, CliError, ReportFormat,
};

/// Environment variable overriding the default worker thread count.
const THREADS_ENV: &str = "MEVMIX_THREADS";

#[derive(Parser)]
#[command(
    name = "mevmix",
    version,
    about = "Generalized logistic extreme value mixtures: evaluate, sample, and measure orthant tail dependence"
)]
struct Cli {
    /// Worker threads (hint only; outputs are identical for any value).
    /// Falls back to the MEVMIX_THREADS environment variable.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ModelArg {
    /// Path to the model-spec JSON file.
    #[arg(long)]
    model: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model spec against all constraints; violations go to stderr.
    Validate {
        #[command(flatten)]
        model: ModelArg,
    },
    /// Evaluate the model CDF and exponent on a grid of points.
    Eval {
        #[command(flatten)]
        model: ModelArg,
        /// CSV file of evaluation points in [0,1]^d, one per line.
        #[arg(long = "grid-file")]
        grid_file: PathBuf,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw samples with unit Frechet margins as CSV.
    Sample {
        #[command(flatten)]
        model: ModelArg,
        /// Number of draws.
        #[arg(long)]
        n: usize,
        /// RNG seed; identical seeds give byte-identical output.
        #[arg(long)]
        seed: u64,
        /// Also emit the uniform probability transforms u1..ud.
        #[arg(long)]
        with_uniforms: bool,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orthant tail-dependence reports for one or more conditioning sets.
    Taildep {
        #[command(flatten)]
        model: ModelArg,
        /// Conditioning set as 1-based coordinates, e.g. --J 1,3.
        /// Repeat the flag for several sets.
        #[arg(long = "J", required = true)]
        j: Vec<String>,
        /// Draw count for an additional empirical estimate per set.
        #[arg(long, requires = "seed")]
        n: Option<usize>,
        /// RNG seed for the empirical estimate.
        #[arg(long)]
        seed: Option<u64>,
        /// Exceedance threshold for the empirical estimate.
        #[arg(long, default_value_t = 0.99)]
        u: f64,
        /// Output format: json or csv (inferred from --out extension
        /// when omitted; json otherwise).
        #[arg(long)]
        format: Option<String>,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the bundled verification suite against the canonical models.
    Verify {
        /// RNG seed for every stochastic check.
        #[arg(long)]
        seed: u64,
        /// Monte Carlo draw count per stochastic check.
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        /// Exceedance threshold for empirical tail-dependence checks.
        #[arg(long, default_value_t = 0.99)]
        u: f64,
    },
}

fn pick_format(format: Option<&str>, out: Option<&PathBuf>) -> Result<ReportFormat, CliError> {
    match format {
        Some("json") => Ok(ReportFormat::Json),
        Some("csv") => Ok(ReportFormat::Csv),
        Some(other) => Err(CliError::Usage(format!(
            "unknown --format '{}', expected json or csv",
            other
        ))),
        None => Ok(match out {
            Some(path) if path.extension().is_some_and(|e| e == "csv") => ReportFormat::Csv,
            _ => ReportFormat::Json,
        }),
    }
}

fn configure_threads(cli_threads: Option<usize>) {
    let threads = cli_threads.or_else(|| {
        std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(threads) = threads {
        if threads > 0 {
            // results never depend on the pool size, so a failure to
            // install the global pool is harmless
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    configure_threads(cli.threads);
    match cli.command {
        Command::Validate { model } => {
            let summary = run_validate(&model.model)?;
            print!("{}", summary);
            Ok(())
        }
        Command::Eval {
            model,
            grid_file,
            out,
        } => run_eval(&model.model, &grid_file, out.as_ref()),
        Command::Sample {
            model,
            n,
            seed,
            with_uniforms,
            out,
        } => run_sample(&model.model, n, seed, with_uniforms, out.as_ref()),
        Command::Taildep {
            model,
            j,
            n,
            seed,
            u,
            format,
            out,
        } => {
            let format = pick_format(format.as_deref(), out.as_ref())?;
            run_taildep(&model.model, &j, n, seed, u, format, out.as_ref())
        }
        Command::Verify { seed, n, u } => {
            let table = run_verify(seed, n, u)?;
            print!("{}", table);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not errors
            if e.use_stderr() {
                let err = CliError::Usage(e.to_string());
                eprintln!("{}", err.to_json());
                return ExitCode::from(err.exit_code() as u8);
            }
            print!("{}", e);
            return ExitCode::SUCCESS;
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
