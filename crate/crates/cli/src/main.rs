//! `fracwave`: command-line laboratory for power-law absorbing wave models.
//!
//! Every subcommand reads one experiment config, writes CSV sweep data, a
//! JSON report and a run manifest into the output directory, and is fully
//! deterministic: identical manifests reproduce byte-identical artifacts
//! regardless of `--threads`.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use commands::RunContext;
use config::Config;
use fracwave_core::transform::TaperMode;

#[derive(Parser)]
#[command(name = "fracwave", version, about = "Numerical laboratory for fractional-Laplacian dissipative wave models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment configuration file
    #[arg(long)]
    config: PathBuf,
    /// Output directory (default: $FRACWAVE_OUT, else ./out)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Hard spectral cutoff instead of the raised-cosine taper
    #[arg(long)]
    no_taper: bool,
    /// Cap the worker thread count (default: one per core)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct FieldArgs {
    #[command(flatten)]
    common: Common,
    /// Also emit a gnuplot-ready two-column data file
    #[arg(long)]
    gnuplot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate μ, ϑ², Ĝ and ∂Ĝ/∂t over a k-grid at fixed t
    Dispersion(Common),
    /// Synthesize the Green function snapshot G(·, t)
    Green(FieldArgs),
    /// Synthesize the pressure wave snapshot p_G(·, t)
    Pressure(FieldArgs),
    /// Fractional-Laplacian nonlocality experiment on a compact bump
    Nonlocal(Common),
    /// Tail-mass sweep over candidate front speeds, with lossless control
    FrontSpeed(Common),
    /// Finite-difference non-smoothness probes at k = 0
    Nonsmooth(Common),
    /// Complex-ray Paley–Wiener growth probe (even integer γ)
    PwProbe(Common),
    /// Side-by-side front-speed tables for several models
    Compare(Common),
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Dispersion(c)
            | Command::Nonlocal(c)
            | Command::FrontSpeed(c)
            | Command::Nonsmooth(c)
            | Command::PwProbe(c)
            | Command::Compare(c) => c,
            Command::Green(f) | Command::Pressure(f) => &f.common,
        }
    }

    fn gnuplot(&self) -> bool {
        matches!(self, Command::Green(f) | Command::Pressure(f) if f.gnuplot)
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Dispersion(_) => "dispersion",
            Command::Green(_) => "green",
            Command::Pressure(_) => "pressure",
            Command::Nonlocal(_) => "nonlocal",
            Command::FrontSpeed(_) => "front-speed",
            Command::Nonsmooth(_) => "nonsmooth",
            Command::PwProbe(_) => "pw-probe",
            Command::Compare(_) => "compare",
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let common = cli.command.common();
    let taper = if common.no_taper {
        TaperMode::None
    } else {
        TaperMode::default_raised_cosine()
    };
    let ctx = RunContext {
        out_dir: output::resolve_out_dir(common.out.clone())?,
        taper,
        threads: common.threads,
        gnuplot: cli.command.gnuplot(),
    };
    let mut cfg = Config::load(&common.config)?;

    let work = |cfg: &mut Config, ctx: &RunContext| -> Result<()> {
        match &cli.command {
            Command::Dispersion(_) => commands::dispersion(cfg, ctx),
            Command::Green(_) => commands::green(cfg, ctx),
            Command::Pressure(_) => commands::pressure(cfg, ctx),
            Command::Nonlocal(_) => commands::nonlocal(cfg, ctx),
            Command::FrontSpeed(_) => commands::front_speed(cfg, ctx),
            Command::Nonsmooth(_) => commands::nonsmooth(cfg, ctx),
            Command::PwProbe(_) => commands::pw_probe(cfg, ctx),
            Command::Compare(_) => commands::compare(cfg, ctx),
        }
    };

    match ctx.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()?;
            pool.install(|| work(&mut cfg, &ctx))
        }
        None => work(&mut cfg, &ctx),
    }?;
    eprintln!(
        "{}: wrote artifacts to {}",
        cli.command.name(),
        ctx.out_dir.display()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            for cause in e.chain().skip(1) {
                eprintln!("  caused by: {cause}");
            }
            if e.downcast_ref::<config::ConfigError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
