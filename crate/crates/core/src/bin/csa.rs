use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use csa::job::{self, explain, run_job, run_job_file, selftest, single_task_job};
use csa::random::{seed_from_env, DEFAULT_SEED};
use csa::Error;

#[derive(Parser)]
#[command(name = "csa", version, about = "Exact computations with central simple algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a job file and write its reports.
    Run { job: PathBuf },
    /// Render a report file as text.
    Explain { report: PathBuf },
    /// Run the acceptance checks.
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Armature checks on an instance file.
    Armature {
        #[arg(value_enum)]
        action: ArmatureAction,
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Crossed product constructions on an instance file.
    Crossed {
        #[arg(value_enum)]
        action: CrossedAction,
        instance: PathBuf,
        /// Comma-separated variable names, e.g. `t1,t2`.
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        /// Subfield generators as JSON, or a path to a JSON file.
        #[arg(long)]
        subfields: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Square-central element analysis on an instance file.
    Sqcentral {
        #[arg(value_enum)]
        action: SqAction,
        instance: PathBuf,
        /// Element as JSON (e.g. `{"coords":{"0":"1"}}`), or a path.
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ArmatureAction {
    Verify,
    Decompose,
}

#[derive(Clone, Copy, ValueEnum)]
enum CrossedAction {
    Build,
    Lift,
    Nu,
    Decompose,
}

#[derive(Clone, Copy, ValueEnum)]
enum SqAction {
    Analyze,
}

fn json_arg(s: &str) -> Result<Value, Error> {
    let text = if Path::new(s).is_file() {
        std::fs::read_to_string(s)?
    } else {
        s.to_string()
    };
    Ok(serde_json::from_str(&text)?)
}

fn instance(task: &str, path: &Path, overrides: Map<String, Value>, out: Option<&Path>) -> Result<ExitCode, Error> {
    let inst: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let job = single_task_job(inst, task, overrides)?;
    let outcome = run_job(&job, None)?;
    let rep = outcome.reports.first().map(|r| json!(r)).unwrap_or(outcome.summary.clone());
    let text = serde_json::to_string_pretty(&rep)? + "\n";
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(code(outcome.pass))
}

fn code(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main_inner(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Run { job } => {
            let outcome = run_job_file(&job)?;
            print!("{}", job::explain_value(&outcome.summary)?);
            if let Some(d) = &outcome.dir {
                println!("reports in {}", d.display());
            }
            Ok(code(outcome.pass))
        }
        Cmd::Explain { report } => {
            print!("{}", explain(&report)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Selftest { seed } => {
            let seed = seed.unwrap_or_else(|| seed_from_env(DEFAULT_SEED));
            let checks = selftest::run(seed);
            for c in &checks {
                let mark = if c.pass { "PASS" } else { "FAIL" };
                println!("[{mark}] {:>2} {} ({} ms): {}", c.id, c.title, c.millis, c.detail);
            }
            Ok(code(checks.iter().all(|c| c.pass)))
        }
        Cmd::Armature { action, instance: path, out } => {
            let task = match action {
                ArmatureAction::Verify => "verify_armature",
                ArmatureAction::Decompose => "decompose",
            };
            instance(task, &path, Map::new(), out.as_deref())
        }
        Cmd::Crossed {
            action,
            instance: path,
            vars,
            subfields,
            out,
        } => {
            let mut o = Map::new();
            if let Some(v) = vars {
                o.insert("vars".into(), json!(v));
            }
            if let Some(s) = subfields {
                o.insert("subfields".into(), json_arg(&s)?);
            }
            let steps = match action {
                CrossedAction::Build => json!(["build"]),
                CrossedAction::Lift => json!(["lift"]),
                CrossedAction::Nu => json!(["lift", "nu"]),
                CrossedAction::Decompose => json!(["decompose"]),
            };
            o.insert("steps".into(), steps);
            instance("crossed", &path, o, out.as_deref())
        }
        Cmd::Sqcentral {
            action: SqAction::Analyze,
            instance: path,
            element,
            budget,
            out,
        } => {
            let mut o = Map::new();
            if let Some(e) = element {
                o.insert("element".into(), json_arg(&e)?);
            }
            if let Some(b) = budget {
                o.insert("budget".into(), json!(b));
            }
            instance("sqcentral", &path, o, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
