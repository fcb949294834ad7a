//! `burnc` — a calculator for combinatorial equivariant Burnside groups.

mod ast;
mod exec;
mod lexer;
mod parser;
mod report;

use clap::{Parser as ClapParser, Subcommand, ValueEnum};
use exec::Executor;
use parser::ParsedScript;
use std::process::ExitCode;

#[derive(ClapParser)]
#[command(
    name = "burnc",
    about = "Combinatorial equivariant Burnside groups of finite groups",
    version
)]
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
    /// Parse and execute a script, emitting a report.
    Run {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Cap on presentation generators.
        #[arg(long, default_value_t = 20_000)]
        max_generators: usize,
        /// Cap on presentation relation rows.
        #[arg(long, default_value_t = 200_000)]
        max_relations: usize,
        /// Worker threads for relation generation.
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Include per-command timings (breaks byte-for-byte determinism).
        #[arg(long, default_value_t = false)]
        timing: bool,
    },
    /// Parse and resolve a script without running its commands.
    Check { file: String },
}

fn load(path: &str) -> Result<ParsedScript, (String, u8)> {
    let source = std::fs::read_to_string(path)
        .map_err(|e| (format!("{}: cannot read: {}", path, e), 2u8))?;
    parser::parse(&source).map_err(|e| (format!("{}:{}", path, e), 2u8))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file } => {
            let parsed = match load(&file) {
                Ok(x) => x,
                Err((msg, code)) => {
                    eprintln!("{}", msg);
                    return ExitCode::from(code);
                }
            };
            let mut exec = Executor::new(burnc_core::Limits::default(), false);
            if let Err(e) = exec.load(&parsed.script, &parsed.positions) {
                eprintln!("{}:{}: {}", file, e.pos, e.message);
                return ExitCode::from(2);
            }
            let decls = parsed
                .script
                .items
                .iter()
                .filter(|i| matches!(i, ast::Item::Decl(_)))
                .count();
            println!(
                "ok: {} declarations, {} commands",
                decls,
                parsed.script.items.len() - decls
            );
            ExitCode::SUCCESS
        }
        Command::Run {
            file,
            format,
            max_generators,
            max_relations,
            threads,
            timing,
        } => {
            let parsed = match load(&file) {
                Ok(x) => x,
                Err((msg, code)) => {
                    eprintln!("{}", msg);
                    return ExitCode::from(code);
                }
            };
            let limits = burnc_core::Limits {
                max_generators,
                max_relations,
                threads,
            };
            let mut exec = Executor::new(limits, timing);
            if let Err(e) = exec.load(&parsed.script, &parsed.positions) {
                eprintln!("{}:{}: {}", file, e.pos, e.message);
                return ExitCode::from(2);
            }
            let report = exec.run_script(&parsed.script);
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            if report.any_error() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
