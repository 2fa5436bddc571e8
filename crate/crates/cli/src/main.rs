mod config;
mod output;
mod presets;
mod scan;
mod validate;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};

use output::{OutputFormat, Sidecar, Summary, Timing};
use scan::ScanError;

#[derive(Parser, Debug)]
#[command(name = "lithoqed", version, about = "Decay rates and Casimir-Polder forces near deposited structures on a half-space")]
struct Cli {
    /// Worker threads for grid scans (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output file; `-` writes to stdout without a sidecar.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the configured quantity on the scan grid.
    Scan { config: PathBuf },
    /// Run the oracle and closed-form self-checks.
    Validate {
        #[arg(long, value_enum, default_value_t = validate::Level::Quick)]
        level: validate::Level,
    },
    /// List or print the shipped figure configurations.
    Presets {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Subcommand, Debug)]
enum PresetAction {
    List,
    Emit { name: String },
}

const EXIT_INVALID: u8 = 1;
const EXIT_PARTIAL: u8 = 2;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if cli.threads == Some(0) {
        eprintln!("error: --threads must be at least 1");
        return ExitCode::from(EXIT_INVALID);
    }
    match &cli.command {
        Command::Scan { config } => run_scan(&cli, config),
        Command::Validate { level } => run_validate(*level),
        Command::Presets { action } => run_presets(&cli, action),
    }
}

fn run_scan(cli: &Cli, path: &Path) -> ExitCode {
    let loaded = match config::load(path) {
        Ok(l) => l,
        Err(d) => {
            eprintln!("error: {d}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0.0, |d| d.as_secs_f64());
    let clock = Instant::now();
    let records = match scan::run(&loaded.config, cli.threads) {
        Ok(r) => r,
        Err(e @ ScanError::BadPoint(..)) => {
            let d = loaded.diagnostic("scan", "origin", e.to_string());
            eprintln!("error: {d}");
            return ExitCode::from(EXIT_INVALID);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let elapsed = clock.elapsed().as_secs_f64();
    let converged = records.iter().filter(|r| r.converged).count();

    let out = cli.out.clone().unwrap_or_else(|| {
        let stem = path.file_stem().map_or_else(|| "scan".into(), |s| s.to_string_lossy().into_owned());
        PathBuf::from(format!("{stem}.{}", cli.format.extension()))
    });
    let written = if out == Path::new("-") {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        output::write_records(&mut lock, &records, cli.format).and_then(|_| lock.flush())
    } else {
        write_file(&out, &records, cli.format).and_then(|_| {
            let sidecar = Sidecar {
                version: env!("CARGO_PKG_VERSION"),
                results: out.display().to_string(),
                timing: Timing { started_unix: started, elapsed_seconds: elapsed, threads: rayon_threads(cli.threads) },
                summary: Summary { points: records.len(), converged },
                config: &loaded.config,
            };
            output::write_sidecar(&output::sidecar_path(&out), &sidecar)
        })
    };
    if let Err(e) = written {
        eprintln!("error: cannot write results to {}: {e}", out.display());
        return ExitCode::from(EXIT_INVALID);
    }
    log::info!("{} points in {elapsed:.2} s, {converged} converged", records.len());
    if converged == records.len() {
        ExitCode::SUCCESS
    } else {
        eprintln!("warning: {} of {} points did not reach the requested tolerance", records.len() - converged, records.len());
        ExitCode::from(EXIT_PARTIAL)
    }
}

fn write_file(path: &Path, records: &[scan::ResultRecord], format: OutputFormat) -> io::Result<()> {
    let mut w = io::BufWriter::new(std::fs::File::create(path)?);
    output::write_records(&mut w, records, format)?;
    w.flush()
}

fn rayon_threads(requested: Option<usize>) -> usize {
    requested.unwrap_or_else(rayon::current_num_threads)
}

fn run_validate(level: validate::Level) -> ExitCode {
    let outcomes = validate::run(level, |o| {
        println!("{} {}: {} ({:.2} s)", if o.passed { "PASS" } else { "FAIL" }, o.name, o.detail, o.seconds);
    });
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        eprintln!("{failed} of {} checks failed", outcomes.len());
        ExitCode::from(EXIT_INVALID)
    }
}

fn run_presets(cli: &Cli, action: &PresetAction) -> ExitCode {
    match action {
        PresetAction::List => {
            for p in presets::PRESETS {
                println!("{:<20} {}", p.name, p.summary);
            }
            ExitCode::SUCCESS
        }
        PresetAction::Emit { name } => {
            let Some(p) = presets::find(name) else {
                let names: Vec<_> = presets::PRESETS.iter().map(|p| p.name).collect();
                eprintln!("error: unknown preset `{name}` (available: {})", names.join(", "));
                return ExitCode::from(EXIT_INVALID);
            };
            let res = match &cli.out {
                Some(path) if path != Path::new("-") => std::fs::write(path, p.toml),
                _ => io::stdout().write_all(p.toml.as_bytes()),
            };
            match res {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_INVALID)
                }
            }
        }
    }
}
