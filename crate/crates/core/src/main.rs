use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use forge::dsl::parse_document;
use forge::suite::{self, Check, Config};
use forge::words::DEFAULT_BOUND;

#[derive(Parser)]
#[command(name = "forge", version, about = "Exact checks for genus-2 surface bundle constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the built-in checks, or the checks of a .dsl file.
    Verify {
        /// Check id glob (`mcg.*`) or substring (`h1v`).
        #[arg(long)]
        check: Option<String>,
        /// Length bound for conjugator searches.
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Report 0 ms for every check, making output reproducible.
        #[arg(long)]
        no_timing: bool,
        file: Option<PathBuf>,
    },
    /// Run the built-in checks and write the JSON report.
    Report {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        #[arg(long)]
        no_timing: bool,
    },
    /// Syntax-check a .dsl file.
    Parse { file: PathBuf },
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("forge: cannot read {}: {e}", path.display());
        ExitCode::from(1)
    })
}

fn load_checks(file: Option<&PathBuf>) -> Result<Vec<Check>, ExitCode> {
    let Some(path) = file else {
        return Ok(suite::builtin_checks());
    };
    let src = read(path)?;
    match parse_document(&src) {
        Ok(doc) => Ok(suite::document_checks(&doc)),
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            Err(ExitCode::from(1))
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Verify {
            check,
            bound,
            format,
            no_timing,
            file,
        } => {
            let checks = load_checks(file.as_ref())?;
            let cfg = Config {
                bound,
                timing: !no_timing,
            };
            let results = suite::run(&checks, check.as_deref(), &cfg);
            if results.is_empty() {
                eprintln!("forge: no check matches {:?}", check.unwrap_or_default());
            }
            match format {
                Format::Text => print!("{}", suite::to_text(&results)),
                Format::Json => println!("{}", suite::to_json(&results)),
            }
            Ok(ExitCode::from(suite::exit_code(&results) as u8))
        }
        Command::Report { out, bound, no_timing } => {
            let cfg = Config {
                bound,
                timing: !no_timing,
            };
            let results = suite::run_suite(None, &cfg);
            std::fs::write(&out, suite::to_json(&results) + "\n").map_err(|e| {
                eprintln!("forge: cannot write {}: {e}", out.display());
                ExitCode::from(1)
            })?;
            eprintln!("wrote {} results to {}", results.len(), out.display());
            Ok(ExitCode::from(suite::exit_code(&results) as u8))
        }
        Command::Parse { file } => {
            let src = read(&file)?;
            match parse_document(&src) {
                Ok(doc) => {
                    println!("{}: {} statements", file.display(), doc.items.len());
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse()).unwrap_or_else(|code| code)
}
