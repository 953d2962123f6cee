use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stmod_cli::{exit_code, parse_config, preset, run, Overrides, RunOptions, EXIT_CONFIG, PRESETS};

#[derive(Parser)]
#[command(name = "stmod", version, about = "Ghost lengths, ghost numbers and A-R triangles for p-group algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Tate cohomology window for ghost checks
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    window: Option<u32>,
    /// Cap on universal ghost iterations
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    nmax: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the JSON results file here
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record per-row wall-clock time in the results
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a config file
    Run { config: PathBuf },
    /// Run a built-in config
    Preset { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (origin, text) = match &cli.cmd {
        Cmd::Run { config } => match std::fs::read_to_string(config) {
            Ok(t) => (config.display().to_string(), t),
            Err(e) => {
                eprintln!("stmod: cannot read {}: {e}", config.display());
                return ExitCode::from(EXIT_CONFIG as u8);
            }
        },
        Cmd::Preset { name } => match preset(name) {
            Some(t) => (format!("preset {name}"), t.to_string()),
            None => {
                let names: Vec<&str> = PRESETS.iter().map(|p| p.0).collect();
                eprintln!("stmod: unknown preset {name}; known: {}", names.join(", "));
                return ExitCode::from(EXIT_CONFIG as u8);
            }
        },
    };
    let mut cfg = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("stmod: {origin}: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    let nmax = cli.nmax.map(|n| usize::try_from(n).unwrap_or(usize::MAX));
    Overrides { window: cli.window, nmax, seed: cli.seed }.apply(&mut cfg);
    let report = run(&cfg, RunOptions { timing: cli.timing });
    print!("{}", report.to_text());
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("stmod: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    }
    ExitCode::from(exit_code(&report) as u8)
}
