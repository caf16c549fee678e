use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use lie_deform::cli::instance::parse_rational;
use lie_deform::cli::presets::{preset, PRESET_NAMES};
use lie_deform::cli::{error_exit_code, load_instance, run_command, Command, Report, RunOptions};
use lie_deform::graded::Rational;
use lie_deform::Result;

/// Exact checks for Lie algebroid, subalgebroid and homomorphism deformations.
///
/// INSTANCE is a JSON file or `preset:NAME`. Exit status: 0 pass, 1 nonzero
/// residual or invalid structure, 2 input error, 3 internal inconsistency.
#[derive(Parser)]
#[command(name = "lie-deform", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Instance file or `preset:NAME`.
    instance: String,
    /// Maximum number of brackets in any exponential series.
    #[arg(long)]
    cap: Option<usize>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that X_Q is homological (and that E is a subalgebroid, if split).
    Validate(Common),
    /// MC residual of the instance's deformation block.
    McCheck(Common),
    /// MC residual of a subalgebroid deformation, optionally with constant σ, φ.
    SubalgCheck {
        #[command(flatten)]
        common: Common,
        /// Constant σ over the normal coordinates.
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        sigma: Option<Vec<String>>,
        /// Constant φ, row-major over (sub, complement).
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        phi: Option<Vec<String>>,
    },
    /// Simultaneous deformation of the structure and the subalgebroid.
    Simultaneous(Common),
    /// Cohomology of m_1 (split instances) or of [X_Q, ·].
    Cohomology {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        degree: Option<usize>,
        /// Polynomial degree bound for instances with base coordinates.
        #[arg(long)]
        truncate: Option<u32>,
    },
    /// Explicit brackets against derived brackets, and the MC series terms.
    Brackets(Common),
    /// Run the MC computation and the classical oracles side by side.
    OracleCompare(Common),
    /// Check the generalized Jacobi identities up to arity 4.
    Axioms {
        #[command(flatten)]
        common: Common,
        /// Random tuples per arity 3 and 4.
        #[arg(long)]
        probes: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Polynomial degree bound for the probe basis.
        #[arg(long)]
        truncate: Option<u32>,
    },
    /// Print a preset instance as JSON.
    Preset {
        /// Preset name (`abelian-N`, `tangent-rN` with 1 ≤ N ≤ 8); lists
        /// the presets when omitted.
        name: Option<String>,
    },
}

fn rationals(v: &Option<Vec<String>>) -> Result<Option<Vec<Rational>>> {
    v.as_ref().map(|xs| xs.iter().map(|s| parse_rational(s)).collect()).transpose()
}

struct Job<'a> {
    common: &'a Common,
    cmd: Command,
    truncate: Option<u32>,
    probes: Option<usize>,
    seed: Option<u64>,
}

fn run(job: Job) -> Result<Report> {
    let start = Instant::now();
    let file = load_instance(&job.common.instance)?;
    let inst = file.resolve()?;
    let mut opts = RunOptions::for_instance(&file);
    if let Some(c) = job.common.cap {
        opts.cap = c;
    }
    opts.truncate = job.truncate.or(opts.truncate);
    opts.probes = job.probes.unwrap_or(opts.probes);
    opts.seed = job.seed.unwrap_or(opts.seed);
    let mut report = run_command(&job.cmd, &inst, &opts)?;
    if job.common.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(report)
}

fn finish(common: &Common, r: Result<Report>) -> ExitCode {
    match r {
        Ok(report) => {
            // a closed pipe is not an error worth reporting
            let mut out = std::io::stdout().lock();
            let _ = if common.json {
                writeln!(out, "{}", report.to_json())
            } else {
                write!(out, "{report}")
            };
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = |common, cmd| Job {
        common,
        cmd,
        truncate: None,
        probes: None,
        seed: None,
    };
    let (common, result) = match &cli.cmd {
        Cmd::Preset { name } => {
            let Some(name) = name else {
                println!("{}", PRESET_NAMES.join("\n"));
                return ExitCode::SUCCESS;
            };
            return match preset(name) {
                Ok(f) => {
                    println!("{}", f.to_json());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            };
        }
        Cmd::Validate(c) => (c, run(job(c, Command::Validate))),
        Cmd::McCheck(c) => (c, run(job(c, Command::McCheck))),
        Cmd::Simultaneous(c) => (c, run(job(c, Command::Simultaneous))),
        Cmd::Brackets(c) => (c, run(job(c, Command::Brackets))),
        Cmd::OracleCompare(c) => (c, run(job(c, Command::OracleCompare))),
        Cmd::SubalgCheck { common, sigma, phi } => {
            let r = rationals(sigma)
                .and_then(|s| Ok((s, rationals(phi)?)))
                .and_then(|(sigma, phi)| run(job(common, Command::SubalgCheck { sigma, phi })));
            (common, r)
        }
        Cmd::Cohomology { common, degree, truncate } => {
            let mut j = job(common, Command::Cohomology { degree: *degree });
            j.truncate = *truncate;
            (common, run(j))
        }
        Cmd::Axioms { common, probes, seed, truncate } => {
            let mut j = job(common, Command::Axioms);
            j.probes = *probes;
            j.seed = *seed;
            j.truncate = *truncate;
            (common, run(j))
        }
    };
    finish(common, result)
}
