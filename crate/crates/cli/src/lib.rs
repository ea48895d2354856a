//! Problem files, subcommands and text reports for the `qth` binary.

pub mod commands;
pub mod problem;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use qth_core::oracle::DEFAULT_KBOUND;
use qth_core::qthpower::PowerSeed;

pub use problem::{load_problem, parse_problem, Problem};

#[derive(Parser, Debug)]
#[command(name = "qth", version, about = "Integral closures of ideals over prime fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Relation basis and the Groebner or standard basis of the ideal.
    Gb {
        file: PathBuf,
        #[arg(long)]
        reduced: bool,
    },
    /// Normal form of a polynomial in the quotient ring.
    Nf {
        file: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Integral closure of the ideal with the round trace.
    Closure {
        file: PathBuf,
        #[arg(long)]
        e: Option<u32>,
        #[arg(long = "max-rounds")]
        max_rounds: Option<usize>,
        #[arg(long = "box")]
        box_bound: Option<u32>,
    },
    /// Closures of the powers I, I^2, ..., I^kmax.
    Powers {
        file: PathBuf,
        #[arg(long)]
        kmax: usize,
        #[arg(long = "seed-prev-closure", conflicts_with = "seed_prev_power")]
        seed_prev_closure: bool,
        #[arg(long = "seed-prev-power")]
        seed_prev_power: bool,
    },
    /// Rees presentation of the closure, level by level.
    Rees {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long = "suppress-t")]
        suppress_t: bool,
    },
    /// Membership of a polynomial in the closure of I^k.
    Member {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
    /// Newton-polyhedron closure of a monomial ideal.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_KBOUND)]
        kbound: u32,
    },
    /// Search for a monic integral-dependence relation.
    Certify {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        kmax: u32,
    },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Gb { file, .. }
            | Command::Nf { file, .. }
            | Command::Closure { file, .. }
            | Command::Powers { file, .. }
            | Command::Rees { file, .. }
            | Command::Member { file, .. }
            | Command::Oracle { file, .. }
            | Command::Certify { file, .. } => file,
        }
    }
}

/// Report text and exit code of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run(cmd: &Command) -> Outcome {
    let pb = match load_problem(cmd.file()) {
        Ok(pb) => pb,
        Err(e) => return failure(&e),
    };
    let mut stderr: String = pb.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    let res = match cmd {
        Command::Gb { reduced, .. } => commands::gb(&pb, *reduced),
        Command::Nf { poly, .. } => commands::nf(&pb, poly),
        Command::Closure { e, max_rounds, box_bound, .. } => commands::closure(
            &pb,
            &commands::ClosureFlags {
                e: *e,
                max_rounds: *max_rounds,
                box_bound: *box_bound,
            },
        ),
        Command::Powers { kmax, seed_prev_power, .. } => {
            let seed = if *seed_prev_power { PowerSeed::PreviousPower } else { PowerSeed::PreviousClosure };
            commands::powers(&pb, *kmax, seed)
        }
        Command::Rees { kmax, suppress_t, .. } => commands::rees(&pb, *kmax, *suppress_t),
        Command::Member { poly, k, kmax, .. } => commands::member(&pb, poly, *k, *kmax),
        Command::Oracle { kbound, .. } => commands::oracle(&pb, *kbound),
        Command::Certify { poly, kmax, .. } => commands::certify(&pb, poly, *kmax),
    };
    match res {
        Ok(stdout) => Outcome { stdout, stderr, code: 0 },
        Err(e) => {
            let f = failure(&e);
            stderr.push_str(&f.stderr);
            Outcome { stderr, ..f }
        }
    }
}

fn failure(e: &qth_core::Error) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
        code: e.exit_code(),
    }
}

/// Parses arguments (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli.command),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            }
        }
    }
}
