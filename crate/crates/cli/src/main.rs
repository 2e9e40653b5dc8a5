//! `torus-tr`: colored HOMFLY-PT, Ooguri–Vafa correlators and topological
//! recursion for torus knots, with exact rational output.
//!
//! Exit status: 0 success, 1 a verification check failed, 2 invalid input,
//! 3 any other error (including a truncation order that is too low).

mod commands;
mod config;
mod output;
mod schema;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{InputError, JobFlags};

#[derive(Parser, Debug)]
#[command(
    name = "torus-tr",
    version,
    about = "Exact torus-knot invariants and topological recursion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Colored HOMFLY-PT H_R for all colors with |R| ≤ rmax.
    Homfly(JobFlags),
    /// Connected correlator tables H_{g,n} from the character sum.
    Correlators(JobFlags),
    /// Correlation differentials ω_{g,n} from topological recursion.
    Toprec(JobFlags),
    /// All checks as JSON lines; fails if any check fails.
    Verify(JobFlags),
    /// Spectral curve data: branch points, rings and SL(2,Z) completion.
    Curve(JobFlags),
    /// JSON schema of one output kind, or of all of them.
    Schema {
        kind: Option<String>,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let flags = match &cli.command {
        Command::Schema { kind, out } => {
            commands::schema(kind.as_deref())?.write(out.as_deref())?;
            return Ok(true);
        }
        Command::Homfly(f)
        | Command::Correlators(f)
        | Command::Toprec(f)
        | Command::Verify(f)
        | Command::Curve(f) => f,
    };
    let cfg = flags.resolve()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()?;
    pool.install(|| {
        let (artifact, ok) = match &cli.command {
            Command::Homfly(_) => (commands::homfly(&cfg)?, true),
            Command::Correlators(_) => (commands::correlators(&cfg)?, true),
            Command::Toprec(_) => (commands::toprec(&cfg)?, true),
            Command::Verify(_) => commands::verify(&cfg)?,
            Command::Curve(_) => (commands::curve_report(&cfg)?, true),
            Command::Schema { .. } => unreachable!(),
        };
        artifact.write(cfg.out.as_deref())?;
        Ok(ok)
    })
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<InputError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<torus_tr::Error>() {
        Some(
            torus_tr::Error::Parse(_)
            | torus_tr::Error::InvalidKnot { .. }
            | torus_tr::Error::DegenerateCurve(_),
        ) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("torus-tr: some checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("torus-tr: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
