//! Thin command-line front end over the library drivers.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use polarlab::cli::{
    self, cmd_bounds, cmd_bourgain, cmd_estimate_norm, cmd_mu, cmd_shuffle_table, cmd_verify,
    Document, NormTarget, OutputFormat,
};
use polarlab::lp::{BallSpec, Exponent};

#[derive(Parser)]
#[command(
    name = "polarlab",
    about = "Polarization, shuffle symmetrization, and norm-constant experiments for homogeneous polynomials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, global = true, default_value = "table")]
    format: String,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for the Monte Carlo estimators
    /// (default: the POLARLAB_THREADS environment variable, else 1).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact-identity suite (shuffle composition, symmetrization
    /// routes, coefficient recursion, mask factorization, equidistribution).
    Verify {
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = polarlab::DEFAULT_SEED)]
        seed: u64,
    },
    /// Tabulate lower statistics and closed-form upper certificates.
    Bounds {
        /// Comma-separated list of arities.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        m: Vec<usize>,
        #[arg(long, default_value_t = 16)]
        n: usize,
        /// Ball exponent: a number >= 1 or "inf".
        #[arg(long, default_value = "inf")]
        p: String,
        #[arg(long, default_value_t = 2000)]
        samples: u64,
        #[arg(long, default_value_t = 32)]
        restarts: u32,
        #[arg(long, default_value_t = polarlab::DEFAULT_SEED)]
        seed: u64,
        /// Also walk the per-step certificate chain on a random polynomial.
        #[arg(long, default_value_t = false)]
        chain: bool,
    },
    /// Print the partial-shuffle laws and, given a polynomial, the
    /// coefficient tensors of every partial shuffle of its lift.
    ShuffleTable {
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// JSON list of {index, re, im} records.
        #[arg(long)]
        poly: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Direct access to the sup estimators for a polynomial file.
    EstimateNorm {
        /// JSON list of {index, re, im} records.
        #[arg(long)]
        poly: PathBuf,
        /// What to maximize: "poly" for sup |P|, "mform" for sup |L_P|.
        #[arg(long, default_value = "poly")]
        target: String,
        #[arg(long, default_value = "inf")]
        p: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 32)]
        restarts: u32,
        #[arg(long, default_value_t = polarlab::DEFAULT_SEED)]
        seed: u64,
    },
    /// Search lower bound for the mu-norm of the ordered-slots mask.
    Mu {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value = "inf")]
        p: String,
        #[arg(long, default_value_t = 4)]
        trials: u32,
        #[arg(long, default_value_t = 32)]
        restarts: u32,
        #[arg(long, default_value_t = polarlab::DEFAULT_SEED)]
        seed: u64,
    },
    /// Torus-integral experiments for the operator-valued quadratic form.
    Bourgain {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        #[arg(long, default_value_t = polarlab::DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_exponent(s: &str) -> polarlab::Result<Exponent> {
    if s == "inf" || s == "infinity" {
        return Ok(Exponent::Infinity);
    }
    let v: f64 = s
        .parse()
        .map_err(|_| polarlab::Error::InvalidArgument(format!("bad exponent {s:?}")))?;
    Ok(BallSpec::new(v)?.p)
}

fn resolve_threads(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("POLARLAB_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(1)
    .max(1)
}

fn run(cli: Cli) -> polarlab::Result<(Document, OutputFormat, Option<PathBuf>)> {
    let format: OutputFormat = cli.output.format.parse()?;
    let threads = resolve_threads(cli.output.threads);
    let doc = match cli.command {
        Command::Verify { m, n, seed } => cmd_verify(m, n, seed)?,
        Command::Bounds {
            m,
            n,
            p,
            samples,
            restarts,
            seed,
            chain,
        } => {
            let p = parse_exponent(&p)?;
            cmd_bounds(&m, n, p, samples, restarts, seed, threads, chain)?
        }
        Command::ShuffleTable { m, poly, n } => {
            let poly = poly
                .map(|path| cli::read_poly_file(&path, n))
                .transpose()?;
            cmd_shuffle_table(m, poly.as_ref())?
        }
        Command::EstimateNorm {
            poly,
            target,
            p,
            n,
            restarts,
            seed,
        } => {
            let poly = cli::read_poly_file(&poly, n)?;
            let target: NormTarget = target.parse()?;
            let ball = match parse_exponent(&p)? {
                Exponent::Infinity => BallSpec::infinity(),
                Exponent::Finite(v) => BallSpec::new(v)?,
            };
            cmd_estimate_norm(&poly, target, &ball, restarts, seed)?
        }
        Command::Mu {
            m,
            n,
            p,
            trials,
            restarts,
            seed,
        } => {
            let ball = match parse_exponent(&p)? {
                Exponent::Infinity => BallSpec::infinity(),
                Exponent::Finite(v) => BallSpec::new(v)?,
            };
            cmd_mu(m, n, &ball, trials, restarts, seed)?
        }
        Command::Bourgain { m, n, samples, seed } => cmd_bourgain(m, n, samples, seed, threads)?,
    };
    Ok((doc, format, cli.output.out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(cli) {
        Ok((doc, format, out)) => {
            let ok = doc.all_pass();
            if let Err(e) = cli::emit(&doc, format, out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            eprintln!(
                "{}: {} result(s) in {:.2}s",
                doc.command,
                doc.results.len(),
                started.elapsed().as_secs_f64()
            );
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
