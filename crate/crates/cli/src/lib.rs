//! Command-line driver: every stage of the proof pipeline as a subcommand
//! over proof-script files.
//!
//! Exit status is 0 on success, 1 when a proof fails to check or a stage
//! cannot be applied, and 2 for unreadable input and usage errors.

use std::fmt::Display;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use epsilon_core::ansatz::{check_ansatz_applicable, eliminate_all_critical};
use epsilon_core::epsub::epsub_solve;
use epsilon_core::kernel::check_proof;
use epsilon_core::transform::{
    eliminate_free_variable_substs, ground_residual_variables, reduce_thread_proof,
    resolve_threads, ThreadProof,
};
use epsilon_core::verify::{
    conservativity_extract, consistency_pipeline, eval_closed, find_counterexample,
};
use epsilon_core::{parse_formula, parse_proof, Exec, Formula, ProofScript};

pub const SUCCESS: i32 = 0;
pub const FAILURE: i32 = 1;
pub const USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "epsilon",
    version,
    about = "Proof checker and consistency pipeline for the epsilon calculus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every line of a proof script
    Check { file: PathBuf },
    /// Resolve a proof into a tree of proof threads
    Threads { file: PathBuf },
    /// Resolve threads and push substitutions onto the axioms
    Elimvars { file: PathBuf },
    /// As elimvars, then replace remaining variables by 0 and 0 = 0
    Ground { file: PathBuf },
    /// As ground, then reduce d(0) and d(t+1) everywhere
    Reduce { file: PathBuf },
    /// Report whether critical formulas can be eliminated
    Ansatz { file: PathBuf },
    /// Eliminate every critical formula
    EliminateEps { file: PathBuf },
    /// Solve a single critical family by the substitution method
    Epsub { file: PathBuf },
    /// Evaluate a variable-free formula
    Eval { file: PathBuf },
    /// Run the whole consistency pipeline and print the certificate
    Pipeline { file: PathBuf },
    /// Certify the numeral instance of a one-variable end formula
    Conserve {
        file: PathBuf,
        #[arg(long)]
        numeral: u64,
    },
    /// Evaluate every numeral instance up to a bound
    VerifyAxiom {
        file: PathBuf,
        #[arg(long)]
        bound: u64,
    },
}

/// Why a subcommand stopped, and which exit status that maps to.
enum Stop {
    Failure(String),
    Usage(String),
}

impl Stop {
    fn failure(e: impl Display) -> Self {
        Stop::Failure(e.to_string())
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    out: String,
}

impl Io<'_> {
    fn read(&mut self, path: &PathBuf) -> Result<String, Stop> {
        if path.as_os_str() == "-" {
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| Stop::Usage(format!("standard input: {e}")))?;
            return Ok(text);
        }
        fs::read_to_string(path).map_err(|e| Stop::Usage(format!("{}: {e}", path.display())))
    }

    fn script(&mut self, path: &PathBuf) -> Result<ProofScript, Stop> {
        let text = self.read(path)?;
        parse_proof(&text).map_err(|e| Stop::Usage(format!("{}: {e}", path.display())))
    }

    /// A script that also passes the checker.
    fn valid_script(&mut self, path: &PathBuf) -> Result<ProofScript, Stop> {
        let p = self.script(path)?;
        let report = check_proof(&p);
        if !report.is_valid() {
            return Err(Stop::Failure(format!(
                "the proof does not check:\n{report}"
            )));
        }
        Ok(p)
    }

    fn formula(&mut self, path: &PathBuf) -> Result<Formula, Stop> {
        let text = self.read(path)?;
        parse_formula(text.trim()).map_err(|e| Stop::Usage(format!("{}: {e}", path.display())))
    }

    fn print(&mut self, s: impl Display) {
        self.out.push_str(&s.to_string());
    }
}

/// Parses `args` (program name first) and runs the subcommand. Output is
/// written only once the command has finished.
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { USAGE } else { SUCCESS };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return status;
        }
    };
    let mut io = Io {
        stdin,
        out: String::new(),
    };
    let result = execute(cli.command, &mut io);
    let _ = stdout.write_all(io.out.as_bytes());
    match result {
        Ok(status) => status,
        Err(Stop::Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            FAILURE
        }
        Err(Stop::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            USAGE
        }
    }
}

fn stages(p: &ProofScript, depth: usize) -> Result<ThreadProof, Stop> {
    let mut t = resolve_threads(p);
    if depth > 0 {
        t = eliminate_free_variable_substs(&t).map_err(Stop::failure)?;
    }
    if depth > 1 {
        t = ground_residual_variables(&t).map_err(Stop::failure)?;
    }
    if depth > 2 {
        t = reduce_thread_proof(&t).map_err(Stop::failure)?;
    }
    Ok(t)
}

fn execute(command: Command, io: &mut Io<'_>) -> Result<i32, Stop> {
    match command {
        Command::Check { file } => {
            let p = io.script(&file)?;
            let report = check_proof(&p);
            io.print(&report);
            Ok(if report.is_valid() { SUCCESS } else { FAILURE })
        }
        Command::Threads { file } => transformed(io, &file, 0),
        Command::Elimvars { file } => transformed(io, &file, 1),
        Command::Ground { file } => transformed(io, &file, 2),
        Command::Reduce { file } => transformed(io, &file, 3),
        Command::Ansatz { file } => {
            let p = io.valid_script(&file)?;
            let report = check_ansatz_applicable(&p);
            io.print(&report);
            Ok(if report.applicable { SUCCESS } else { FAILURE })
        }
        Command::EliminateEps { file } => {
            let p = io.valid_script(&file)?;
            io.print(eliminate_all_critical(&p).map_err(Stop::failure)?);
            Ok(SUCCESS)
        }
        Command::Epsub { file } => {
            let p = io.valid_script(&file)?;
            let s = epsub_solve(&p).map_err(Stop::failure)?;
            io.print(s.transcript());
            io.print(&s.assignment);
            Ok(SUCCESS)
        }
        Command::Eval { file } => {
            let f = io.formula(&file)?;
            io.print(format!("{}\n", eval_closed(&f).map_err(Stop::failure)?));
            Ok(SUCCESS)
        }
        Command::Pipeline { file } => {
            let p = io.valid_script(&file)?;
            let cert = consistency_pipeline(&p).map_err(Stop::failure)?;
            io.print(&cert);
            Ok(if cert.end_truth { SUCCESS } else { FAILURE })
        }
        Command::Conserve { file, numeral } => {
            let p = io.valid_script(&file)?;
            let cert = conservativity_extract(&p, numeral).map_err(Stop::failure)?;
            io.print(&cert);
            Ok(if cert.end_truth { SUCCESS } else { FAILURE })
        }
        Command::VerifyAxiom { file, bound } => {
            let f = io.formula(&file)?;
            if !f.is_quantifier_free() || !f.is_epsilon_free() {
                return Err(Stop::Failure(format!(
                    "`{f}` must be quantifier-free and epsilon-free"
                )));
            }
            match find_counterexample(&f, bound, Exec::default()).map_err(Stop::failure)? {
                None => {
                    io.print(format!("verifiable up to {bound}\n"));
                    Ok(SUCCESS)
                }
                Some(values) => {
                    let shown: Vec<String> =
                        values.iter().map(|(v, n)| format!("{v} := {n}")).collect();
                    io.print(format!("counterexample: {}\n", shown.join(", ")));
                    Ok(FAILURE)
                }
            }
        }
    }
}

fn transformed(io: &mut Io<'_>, file: &PathBuf, depth: usize) -> Result<i32, Stop> {
    let p = io.valid_script(file)?;
    io.print(stages(&p, depth)?.to_script());
    Ok(SUCCESS)
}
