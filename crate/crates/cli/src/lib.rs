//! Command-line front end: argument definitions, dispatch and rendering.

pub mod expr;
pub mod matrix_file;
mod render;

use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homaut::fgab::smith_normal_form;
use homaut::fingrp::{builtin, load_group_file, FiniteGroup, GroupError, DEFAULT_MAX_ORDER};
use homaut::verifier::{
    parse_manifest, run_corpus, run_group, sweep_lemma21, Claim, GroupContext, Report, SweepBounds,
    DEFAULT_MANIFEST,
};
use homaut::{
    compatibility_violation, decide_lemma21, hom_group, is_isomorphic, DecisionInput, GroupClass,
};
use thiserror::Error;

pub use expr::{parse_abelian, AbelianExpr, ParseError};
pub use matrix_file::parse_matrix;

#[derive(Debug, Parser)]
#[command(
    name = "homaut",
    version,
    about = "Hom and automorphism computations for abelian and small finite groups"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest automorphism group order to enumerate before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants of Hom(A, B).
    Hom { a: AbelianExpr, b: AbelianExpr },
    /// Whether A and B are isomorphic.
    Iso { a: AbelianExpr, b: AbelianExpr },
    /// Decide Hom(G/N, M) = G/L from the invariants.
    Decide(DecideArgs),
    /// Smith normal form of an integer matrix file.
    Snf { file: String },
    /// Structural data of a finite group (Cayley table file or builtin).
    Group {
        #[arg(value_enum)]
        what: GroupQuery,
        group: String,
    },
    /// Run one check on one group.
    Verify { claim: Claim, group: String },
    /// Compare the decider with the Hom oracle over a box of invariants.
    Sweep(SweepArgs),
    /// Run every applicable check over a manifest, or `default`.
    Corpus { manifest: String },
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    /// Torsion class of G: tf, torsion or mixed.
    #[arg(long)]
    pub class: GroupClass,
    #[arg(long)]
    pub gl: AbelianExpr,
    #[arg(long)]
    pub gn: AbelianExpr,
    #[arg(long)]
    pub m: AbelianExpr,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3])]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    pub max_len: usize,
    #[arg(long, default_value_t = 3)]
    pub max_exp: u32,
    #[arg(long, default_value_t = 2)]
    pub max_rank: u32,
    #[arg(long, value_delimiter = ',', default_values_t = GroupClass::ALL.to_vec())]
    pub classes: Vec<GroupClass>,
    /// Also enumerate G/N = 1 (every such case is degenerate).
    #[arg(long)]
    pub include_trivial_gn: bool,
    /// Number of flagged cases shown in text output.
    #[arg(long, default_value_t = 20)]
    pub limit: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupQuery {
    Info,
    Aut,
    Series,
    Var,
    AbsCenter,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Exit status: success.
pub const EXIT_OK: i32 = 0;
/// Exit status: some verification disagreed.
pub const EXIT_DISAGREE: i32 = 1;
/// Exit status: bad input.
pub const EXIT_INPUT: i32 = 2;

/// Rendered output and exit status of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub status: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            status: EXIT_OK,
        }
    }

    fn checked(stdout: String, disagreements: u64) -> Self {
        Outcome {
            stdout,
            status: if disagreements == 0 {
                EXIT_OK
            } else {
                EXIT_DISAGREE
            },
        }
    }
}

/// Loads a group from a file path, a `builtin:` spec or a bare builtin spec.
pub fn load_group(arg: &str) -> Result<FiniteGroup, CliError> {
    if let Some(path) = arg.strip_prefix("file:") {
        return Ok(load_group_file(Path::new(path))?);
    }
    let spec = arg.strip_prefix("builtin:").unwrap_or(arg);
    if Path::new(arg).is_file() {
        return Ok(load_group_file(Path::new(arg))?);
    }
    builtin(spec).map_err(|e| {
        CliError::Input(format!(
            "`{arg}` is neither a group file nor a builtin: {e}"
        ))
    })
}

fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read `{path}`: {e}")))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Hom { a, b } => {
            let h = hom_group(&a.group, &b.group);
            Ok(Outcome::ok(render::hom(fmt, a, b, &h)))
        }
        Command::Iso { a, b } => {
            let iso = is_isomorphic(&a.group, &b.group);
            Ok(Outcome::ok(render::iso(fmt, a, b, iso)))
        }
        Command::Decide(args) => {
            let input = DecisionInput {
                class: args.class,
                gl: &args.gl.group,
                gn: &args.gn.group,
                m: &args.m.group,
            };
            if let Some(why) = compatibility_violation(&input) {
                return Err(CliError::Input(format!("incompatible input: {why}")));
            }
            let verdict = decide_lemma21(&input).map_err(|e| CliError::Input(e.to_string()))?;
            Ok(Outcome::ok(render::verdict(fmt, args, &verdict)))
        }
        Command::Snf { file } => {
            let a = parse_matrix(&read_file(file)?).map_err(CliError::Input)?;
            let snf = smith_normal_form(&a).map_err(|e| CliError::Input(e.to_string()))?;
            Ok(Outcome::ok(render::snf(fmt, &snf)))
        }
        Command::Group { what, group } => {
            let g = load_group(group)?;
            Ok(Outcome::ok(render::group(fmt, *what, &g, cli.max_order)?))
        }
        Command::Verify { claim, group } => {
            if *claim == Claim::Lemma21Sweep {
                return Err(CliError::Input(format!(
                    "{claim} has no group input; use the `sweep` command"
                )));
            }
            let ctx = GroupContext::new(load_group(group)?, cli.max_order)?;
            let cases: Vec<_> = run_group(&ctx)
                .map_err(|e| CliError::Input(e.to_string()))?
                .into_iter()
                .filter(|c| c.subject == *claim)
                .collect();
            if cases.is_empty() {
                return Err(CliError::Input(format!(
                    "{claim} does not apply to {} (its preconditions fail)",
                    ctx.name()
                )));
            }
            let report = Report::new(*claim, cases);
            let disagree = report.summary.disagree;
            Ok(Outcome::checked(render::report(fmt, &report), disagree))
        }
        Command::Sweep(args) => {
            if args.primes.iter().any(|&p| !homaut::fgab::is_prime(p)) {
                return Err(CliError::Input(format!(
                    "not all of {:?} are prime",
                    args.primes
                )));
            }
            let bounds = SweepBounds {
                primes: args.primes.clone(),
                max_len: args.max_len,
                max_exp: args.max_exp,
                max_rank: args.max_rank,
                classes: args.classes.clone(),
                include_trivial_gn: args.include_trivial_gn,
            };
            let (report, stats) = sweep_lemma21(&bounds);
            let disagree = report.summary.disagree;
            Ok(Outcome::checked(
                render::sweep(fmt, &bounds, &report, &stats, args.limit),
                disagree,
            ))
        }
        Command::Corpus { manifest } => {
            let entries = if manifest == "default" {
                parse_manifest(DEFAULT_MANIFEST, None)
            } else {
                let base = Path::new(manifest).parent();
                parse_manifest(&read_file(manifest)?, base)
            }
            .map_err(CliError::Input)?;
            let bundle = run_corpus(&entries, cli.max_order);
            let stdout = render::bundle(fmt, &bundle);
            if !bundle.errors.is_empty() {
                return Ok(Outcome {
                    stdout,
                    status: EXIT_INPUT,
                });
            }
            Ok(Outcome::checked(stdout, bundle.summary.disagree))
        }
    }
}
