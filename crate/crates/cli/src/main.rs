//! `gitfan`: run one command against an instance file and print a JSON report.
//!
//! Exit status is 0 on success, 1 on engine errors and 2 on input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gitfan_core::commands::{run_command, Options, COMMANDS};
use gitfan_core::io::{parse_instance, ModeKind};
use gitfan_core::Error;

#[derive(Debug, Parser)]
#[command(name = "gitfan", version, about = "GIT-fan calculator for quiver representations")]
struct Cli {
    /// One of: effective-cone, walls, git-cone, orbit-cone, fan, verify, equivalent, decompose.
    command: String,

    /// Instance file (JSON).
    #[arg(long)]
    instance: PathBuf,

    /// Named weight from the instance; `equivalent` takes two.
    #[arg(long = "weight", value_name = "NAME")]
    weights: Vec<String>,

    /// Named representation from the instance, for `orbit-cone`.
    #[arg(long, value_name = "NAME")]
    rep: Option<String>,

    /// oracle or sampled.
    #[arg(long)]
    mode: Option<ModeKind>,

    #[arg(long)]
    p: Option<u64>,

    #[arg(long)]
    seed: Option<u64>,

    /// Samples per dimension vector in sampled mode.
    #[arg(long)]
    samples: Option<usize>,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

enum Failure {
    Input(String),
    Engine(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Engine(e.to_string())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if !COMMANDS.contains(&cli.command.as_str()) {
        return Err(Error::UnknownCommand(cli.command).into());
    }
    let text = std::fs::read_to_string(&cli.instance)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", cli.instance.display())))?;
    let instance = parse_instance(&text)?;
    let options = Options {
        weights: cli.weights,
        rep: cli.rep,
        mode: cli.mode,
        p: cli.p,
        seed: cli.seed,
        samples: cli.samples,
        timing: cli.timing,
    };
    let report = run_command(&instance, &cli.command, &options)?;
    let rendered = report.render();
    match cli.out {
        Some(path) => std::fs::write(&path, rendered)
            .map_err(|e| Failure::Engine(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    if !report.passed() {
        log::warn!("some checks failed");
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
