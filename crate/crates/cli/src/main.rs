use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use jostlab_cli::{fixtures, run_scenario, write_outcome, Config, Format, Scenario, Status, Task};
use serde_json::{json, Value};

/// Run a jostlab scenario: `jostlab <task> [flags]`, or `jostlab fixtures`.
#[derive(Parser, Debug)]
#[command(name = "jostlab", version, allow_negative_numbers = true)]
struct Cli {
    /// Task name, or "fixtures" to list the built-in inputs.
    task: Option<String>,
    /// Task (alternative to the positional argument).
    #[arg(long = "task")]
    task_flag: Option<String>,
    /// Fixture name or path to a JSON input document.
    #[arg(long)]
    input: Option<String>,
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    cutoff: Option<f64>,
    /// Number of coefficients.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    precision_bits: Option<u32>,
    /// Stripping level.
    #[arg(long)]
    level: Option<usize>,
    #[arg(long)]
    r_target: Option<f64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn input_error(msg: String) -> ExitCode {
    let v =
        json!({"pass": false, "error": {"module": "cli", "operation": "parse_args", "kind": "input", "message": msg}});
    eprintln!("{}", jostlab::io::to_pretty(&v).trim_end());
    ExitCode::from(Status::InputError.code() as u8)
}

fn resolve(cli: Cli) -> Result<Config, String> {
    let mut cfg = match &cli.config {
        Some(p) => Config::from_json(&std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?)?,
        None => Config::default(),
    };
    let task = match (cli.task, cli.task_flag) {
        (Some(a), Some(b)) if a != b => return Err(format!("conflicting tasks {a:?} and {b:?}")),
        (Some(t), _) | (None, Some(t)) => Some(t),
        (None, None) => None,
    };
    if let Some(t) = task {
        cfg.task = Some(Task::parse(&t).ok_or_else(|| format!("unknown task {t:?}"))?);
    }
    if let Some(i) = cli.input {
        cfg.input = Some(Value::String(i));
    }
    if let Some(v) = cli.tol {
        cfg.tol = v;
    }
    if let Some(v) = cli.cutoff {
        cfg.cutoff = v;
    }
    if let Some(v) = cli.n {
        cfg.n = v;
    }
    if let Some(v) = cli.precision_bits {
        cfg.precision_bits = v;
    }
    if let Some(v) = cli.level {
        cfg.level = v;
    }
    if let Some(v) = cli.r_target {
        cfg.r_target = Some(v);
    }
    if let Some(v) = cli.out_dir {
        cfg.out_dir = Some(v);
    }
    if let Some(v) = cli.format {
        cfg.format = v;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.task.as_deref() == Some("fixtures") {
        for (name, what) in fixtures::FIXTURES {
            println!("{name:28} {what}");
        }
        return ExitCode::SUCCESS;
    }
    let scenario = match resolve(cli).and_then(Scenario::from_config) {
        Ok(s) => s,
        Err(msg) => return input_error(msg),
    };
    let outcome = run_scenario(&scenario);
    match &scenario.config.out_dir {
        Some(dir) => match write_outcome(&outcome, dir, scenario.config.format) {
            Ok(paths) => {
                for p in paths {
                    eprintln!("wrote {}", p.display());
                }
            }
            Err(e) => return input_error(format!("{}: {e}", dir.display())),
        },
        None => print!("{}", jostlab::io::to_pretty(&outcome.report)),
    }
    eprintln!("{}: {}", scenario.name, outcome.status.name());
    ExitCode::from(outcome.status.code() as u8)
}
