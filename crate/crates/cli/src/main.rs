//! `ivqrof` command-line front end.
//!
//! Exit codes: 0 success, 1 reference check failed, 2 unreadable or
//! malformed input, 3 no admissible rung (or an operator that needs a
//! different one), 4 invalid fuzzy measure or weighting.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ivqrof::problem_file::parse_file;
use ivqrof::{fixtures, min_valid_q, repro, sweep_q, Bum, DecisionProblem, Error, IvqRofn};
use ivqrof::{Operator, PipelineConfig, QSetting, Rung, SortOrder};

use report::Format;

#[derive(Parser)]
#[command(
    name = "ivqrof",
    version,
    about = "Interval-valued q-rung orthopair group decisions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the alternatives of a problem file.
    Solve {
        problem: String,
        /// Rung: a positive integer or `auto`. Overrides the file's setting.
        #[arg(long)]
        q: Option<String>,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Solve once per rung.
    Sweep {
        problem: String,
        /// Comma-separated rungs.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5")]
        qs: Vec<u32>,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Run a built-in problem (example1, hypertension, comparison).
    Repro {
        name: String,
        /// Compare against the reference results; exit 1 on any failure.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long, default_value_t = 4)]
        precision: usize,
    },
    /// Parse a problem file and check its measures and rung.
    Validate {
        problem: String,
        #[arg(long, default_value_t = ivqrof::pipeline::DEFAULT_Q_MAX)]
        q_max: u32,
    },
}

#[derive(Args)]
struct SolveOpts {
    /// Operator for both stages (ca, cg, wca, oca, owca, wcg, ocg, owcg, giifga, ivifegc).
    #[arg(long)]
    operator: Option<String>,
    #[arg(long)]
    expert_operator: Option<String>,
    #[arg(long)]
    attribute_operator: Option<String>,
    /// Sort order inside the Choquet chain: desc, asc or declared.
    #[arg(long, default_value = "desc")]
    order: String,
    /// BUM function for owca/owcg: identity, power:R, step:X, piecewise:X/Y,...
    #[arg(long, default_value = "identity")]
    bum: String,
    #[arg(long, default_value_t = ivqrof::pipeline::DEFAULT_Q_MAX)]
    q_max: u32,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    #[arg(long, default_value_t = 4)]
    precision: usize,
}

impl SolveOpts {
    fn config(&self) -> ivqrof::Result<PipelineConfig> {
        let both = self
            .operator
            .as_deref()
            .map(str::parse::<Operator>)
            .transpose()?;
        let stage = |flag: &Option<String>| -> ivqrof::Result<Operator> {
            match flag {
                Some(name) => name.parse(),
                None => Ok(both.unwrap_or(Operator::Ca)),
            }
        };
        Ok(PipelineConfig {
            expert_operator: stage(&self.expert_operator)?,
            attribute_operator: stage(&self.attribute_operator)?,
            order: self.order.parse::<SortOrder>()?,
            q_max: self.q_max,
            bum: self.bum.parse::<Bum>()?,
        })
    }
}

enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    ChecksFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NoValidQ { .. }
        | Error::ExplicitQInvalid { .. }
        | Error::InvalidAtQ { .. }
        | Error::InvalidRung(_)
        | Error::BaselineRequiresQ1 { .. } => 3,
        Error::MissingSubset(_)
        | Error::NotGrounded(_)
        | Error::NotMonotone { .. }
        | Error::NotAdditive { .. }
        | Error::NotSymmetric { .. }
        | Error::NegativeWeight(_)
        | Error::WeightSumNotOne(_)
        | Error::InvalidBum(_) => 4,
        _ => 2,
    }
}

/// Reads a problem file, or a built-in problem when no such file exists.
/// A JSON solve report is accepted too: its `problem` member is used.
fn load(arg: &str) -> Result<(String, DecisionProblem), Failure> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some(text) = fixtures::source(arg) {
            return Ok((arg.to_string(), parse_file(text)?.to_problem()?));
        }
    }
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    let file = match serde_json::from_str::<serde_json::Value>(&text) {
        Ok(serde_json::Value::Object(mut map)) if map.contains_key("problem") => {
            serde_json::from_value(map.remove("problem").unwrap())
                .map_err(|e| Error::Parse(format!("JSON: problem: {e}")))?
        }
        _ => parse_file(&text)?,
    };
    Ok((arg.to_string(), file.to_problem()?))
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Solve { problem, q, opts } => {
            let config = opts.config()?;
            let (label, mut p) = load(&problem)?;
            if let Some(q) = q {
                p = p.with_q(q.parse::<QSetting>()?);
            }
            let r = ivqrof::solve(&p, &config)?;
            Ok(report::solve(
                &label,
                &p,
                &config,
                &r,
                opts.format,
                opts.precision,
            ))
        }
        Command::Sweep { problem, qs, opts } => {
            let config = opts.config()?;
            let (label, p) = load(&problem)?;
            let qs = qs
                .into_iter()
                .map(Rung::new)
                .collect::<ivqrof::Result<Vec<_>>>()?;
            let results: Vec<_> = sweep_q(&p, &qs, &config)?
                .into_iter()
                .map(|(_, r)| r)
                .collect();
            Ok(report::sweep(
                &label,
                &config,
                &results,
                opts.format,
                opts.precision,
            ))
        }
        Command::Repro {
            name,
            check,
            format,
            precision,
        } => {
            if check {
                let rep = repro::run(&name)?;
                let out = report::checks(&rep, format);
                if rep.passed() {
                    Ok(out)
                } else {
                    print!("{out}");
                    Err(Failure::ChecksFailed)
                }
            } else {
                let p = fixtures::load(&name)?;
                let config = PipelineConfig::default();
                if name == "hypertension" {
                    let qs = [2, 3, 4, 5].map(|q| Rung::new(q).expect("positive rung"));
                    let results: Vec<_> = sweep_q(&p, &qs, &config)?
                        .into_iter()
                        .map(|(_, r)| r)
                        .collect();
                    Ok(report::sweep(&name, &config, &results, format, precision))
                } else {
                    let r = ivqrof::solve(&p, &config)?;
                    Ok(report::solve(&name, &p, &config, &r, format, precision))
                }
            }
        }
        Command::Validate { problem, q_max } => {
            let (_, p) = load(&problem)?;
            let all: Vec<IvqRofn> = p.matrices().iter().flatten().flatten().copied().collect();
            let q_min = min_valid_q(&all, q_max)?;
            let q = ivqrof::pipeline::resolve_q(&p, q_max)?;
            let mut out = format!("OK, min q = {q_min}\n");
            if let QSetting::Fixed(_) = p.q() {
                out.push_str(&format!("declared q = {q} admits every entry\n"));
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::ChecksFailed) => {
            eprintln!("error: one or more reference checks failed");
            ExitCode::from(1)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
