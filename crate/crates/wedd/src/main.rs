use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wedd::commands::{self, CodesArgs, DecomposeArgs, Input, DEFAULT_MAX_ORDER};
use wedd::error::{CliError, CliResult};
use wedd::input::{parse_modulus, FieldSpec};
use wedd::json::to_bytes;
use wedd_core::codes::DEFAULT_ENUMERATION_BOUND;

/// Wedderburn decomposition of semisimple group algebras of nilpotent groups
/// over finite fields.
#[derive(Parser)]
#[command(name = "wedd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Primitive central idempotents, primitive idempotents and matrix units.
    Decompose {
        #[command(flatten)]
        input: InputFlags,
        /// Include the full grid of matrix units in the report.
        #[arg(long)]
        matrix_units: bool,
        /// Refuse non-nilpotent groups instead of reporting central data only.
        #[arg(long)]
        require_nilpotent: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write G/G_q as a Cayley-table group file.
    Reduce {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Left-ideal codes generated by selected idempotents.
    Codes {
        #[command(flatten)]
        input: InputFlags,
        /// `all-central`, `all-primitive`, or a sum such as `e0+C1` or `P2.0+P2.1`.
        #[arg(long)]
        select: String,
        /// Largest number of codewords enumerated for a minimum distance.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: u64,
        /// Also write each generator matrix as text into this directory.
        #[arg(long)]
        matrix_dir: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a persisted decomposition report.
    Verify {
        report: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputFlags {
    /// Group file: permutation generators or a Cayley table (JSON).
    #[arg(long)]
    group: PathBuf,
    #[arg(long)]
    q: u32,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Coefficients c0,...,c_m of the defining polynomial of F_{q^m}.
    #[arg(long)]
    modulus: Option<String>,
    /// Replace G by G/G_q when q divides |G|.
    #[arg(long)]
    reduce: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
}

impl InputFlags {
    fn into_input(self) -> CliResult<Input> {
        let modulus = self.modulus.as_deref().map(parse_modulus).transpose()?;
        Ok(Input {
            group: self.group,
            field: FieldSpec {
                q: self.q,
                m: self.m,
                modulus,
            },
            max_order: self.max_order,
            reduce: self.reduce,
        })
    }
}

fn emit(bytes: &[u8], out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(p) => {
            std::fs::write(p, bytes).map_err(|e| CliError::precondition(format!("cannot write {}: {e}", p.display())))
        }
        None => Ok(std::io::stdout().write_all(bytes)?),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Decompose {
            input,
            matrix_units,
            require_nilpotent,
            jobs,
            out,
        } => {
            let report = commands::decompose(&DecomposeArgs {
                input: input.into_input()?,
                matrix_units,
                require_nilpotent,
                jobs,
            })?;
            emit(&to_bytes(&report), out.as_deref())?;
            if !report.passed {
                return Err(CliError::verification("some checks failed; see the report"));
            }
        }
        Command::Reduce {
            group,
            q,
            max_order,
            out,
        } => {
            let file = commands::reduce(&group, q, max_order)?;
            emit(&to_bytes(&file), out.as_deref())?;
        }
        Command::Codes {
            input,
            select,
            bound,
            matrix_dir,
            jobs,
            out,
        } => {
            let report = commands::codes(&CodesArgs {
                input: input.into_input()?,
                selector: select,
                bound,
                jobs,
            })?;
            if let Some(dir) = matrix_dir {
                std::fs::create_dir_all(&dir)?;
                for code in &report.codes {
                    let path = dir.join(commands::matrix_file_name(&code.label));
                    std::fs::write(&path, commands::generator_matrix_text(code))?;
                }
            }
            emit(&to_bytes(&report), out.as_deref())?;
        }
        Command::Verify { report, jobs, out } => {
            let persisted = commands::read_report(&report)?;
            let result = commands::verify_report(&persisted, jobs);
            emit(&to_bytes(&result), out.as_deref())?;
            if let Some(bad) = result.checks.iter().find(|c| !c.passed) {
                return Err(CliError::verification(format!("{} failed: {}", bad.check, bad.detail)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wedd: {e}");
            e.exit_code()
        }
    }
}
