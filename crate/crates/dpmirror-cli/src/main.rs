//! Command-line runner for the verification suites.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check, 2 on a usage
//! error, 3 on numerical non-convergence.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use dpmirror::report::{emit_trajectories, run_suite, Params, ReportError};

#[derive(Parser)]
#[command(name = "dpmirror", version, about = "Run verification suites and emit root trajectories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named suite and write its JSON report.
    Run {
        /// cqs, gram, braid, quiver, normalize, critical, branch, monodromy,
        /// sturm, palais-smale, pick or all.
        suite: String,
        #[command(flatten)]
        opts: Opts,
        /// Leave wall-clock timings out of the report.
        #[arg(long)]
        no_timings: bool,
    },
    /// Track branch points along a path and write them as CSV.
    EmitTrajectory {
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// `key = value` file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Opts {
    fn params(&self) -> anyhow::Result<Params> {
        let base = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Params::from_config(&text)?
            }
            None => Params::default(),
        };
        let flags = Params {
            k: self.k,
            n: self.n,
            q: self.q,
            s: self.s,
            delta: self.delta,
            steps: self.steps,
            tol: self.tol,
            seed: self.seed,
            ..Default::default()
        };
        Ok(base.merged(&flags))
    }

    fn writer(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
            None => Box::new(io::stdout().lock()),
        })
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Run { suite, opts, no_timings } => {
            let params = opts.params()?;
            let mut report = run_suite(&suite, &params)?;
            if no_timings {
                report = report.canonical();
            }
            let mut w = opts.writer()?;
            writeln!(w, "{}", report.to_json())?;
            for c in &report.checks {
                eprintln!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
            }
            Ok(report.exit_code() as u8)
        }
        Command::EmitTrajectory { opts } => {
            let params = opts.params()?;
            let tr = emit_trajectories(&params, opts.writer()?)?;
            eprintln!("{} rows, permutation {:?}", tr.roots.len(), tr.permutation);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<ReportError>().map_or(1, ReportError::exit_code);
            ExitCode::from(code as u8)
        }
    }
}
