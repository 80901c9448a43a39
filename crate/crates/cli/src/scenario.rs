//! Scenario resolution, execution and report writing.

use std::fs;
use std::path::{Path, PathBuf};

use jostlab::{Dd, JostError, Scalar};
use serde_json::{json, Value};

use crate::config::{Config, Format, Task};
use crate::document::Document;
use crate::fixtures;
use crate::tasks::{self, TaskOutput};

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Fixture(String),
    File(PathBuf),
    Inline(Value),
}

impl Source {
    /// A string names a fixture if one exists, a file otherwise; an object is inline.
    pub fn from_value(v: &Value) -> Result<Source, String> {
        match v {
            Value::String(s) if fixtures::is_fixture(s) => Ok(Source::Fixture(s.clone())),
            Value::String(s) => Ok(Source::File(PathBuf::from(s))),
            Value::Object(_) => Ok(Source::Inline(v.clone())),
            other => Err(format!("input must be a fixture name, a path or an inline document, got {other}")),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Source::Fixture(n) => json!({"fixture": n}),
            Source::File(p) => json!({"file": p.display().to_string()}),
            Source::Inline(_) => json!("inline"),
        }
    }

    fn load<T: Scalar>(&self, n: usize) -> jostlab::Result<Document<T>> {
        match self {
            Source::Fixture(name) => fixtures::build(name, n),
            Source::File(p) => {
                let text = fs::read_to_string(p).map_err(|e| JostError::Parse(format!("{}: {e}", p.display())))?;
                let v: Value =
                    serde_json::from_str(&text).map_err(|e| JostError::Parse(format!("{}: {e}", p.display())))?;
                Document::parse(&v, n)
            }
            Source::Inline(v) => Document::parse(v, n),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub task: Task,
    pub source: Source,
    pub config: Config,
}

impl Scenario {
    /// Scenario from a resolved config: task and input must be set.
    pub fn from_config(config: Config) -> Result<Scenario, String> {
        config.validate()?;
        let task = config.task.ok_or("no task given")?;
        let source = Source::from_value(config.input.as_ref().ok_or("no input given")?)?;
        let name = config.name.clone().unwrap_or_else(|| match &source {
            Source::Fixture(f) => format!("{}:{f}", task.name()),
            Source::File(p) => format!("{}:{}", task.name(), p.display()),
            Source::Inline(_) => format!("{}:inline", task.name()),
        });
        Ok(Scenario { name, task, source, config })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    CheckFailure = 1,
    InputError = 2,
    NumericalFailure = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::CheckFailure => "check_failure",
            Status::InputError => "input_error",
            Status::NumericalFailure => "numerical_failure",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
    pub files: Vec<(String, String)>,
}

pub fn error_json(module: &str, operation: &str, e: &JostError) -> Value {
    json!({
        "module": module,
        "operation": e.op().unwrap_or(operation),
        "kind": e.kind(),
        "message": e.to_string(),
    })
}

fn status_of(e: &JostError) -> Status {
    if e.is_input_error() {
        Status::InputError
    } else {
        Status::NumericalFailure
    }
}

fn execute<T: Scalar>(s: &Scenario) -> (Value, std::result::Result<TaskOutput, (Status, Value)>) {
    match s.source.load::<T>(s.config.n) {
        Ok(doc) => {
            let out = tasks::run(s.task, &doc, &s.config);
            (doc.to_json(), out.map_err(|e| (status_of(&e), error_json(s.task.module(), &s.task.name(), &e))))
        }
        Err(e) => (Value::Null, Err((status_of(&e), error_json("io", "load_input", &e)))),
    }
}

/// Run a scenario. Exit status 0 iff every check passes.
pub fn run_scenario(s: &Scenario) -> Outcome {
    let (document, out) = match s.config.scalar() {
        "f32" => execute::<f32>(s),
        "f64" => execute::<f64>(s),
        _ => execute::<Dd>(s),
    };
    let bits = match s.config.scalar() {
        "f32" => f32::SIGNIFICAND_BITS,
        "f64" => f64::SIGNIFICAND_BITS,
        _ => Dd::SIGNIFICAND_BITS,
    };
    let mut report = json!({
        "scenario": s.name,
        "task": s.task.name(),
        "config": serde_json::to_value(&s.config).unwrap_or(Value::Null),
        "input": {"source": s.source.to_json(), "document": document},
        "precision": {"scalar": s.config.scalar(), "significand_bits": bits, "requested_bits": s.config.precision_bits},
    });
    match out {
        Ok(o) => {
            let pass = o.checks.iter().all(|c| c.pass);
            report["input"]["mapped"] = json!(o.mapped);
            report["checks"] = Value::Array(o.checks.iter().map(|c| c.to_json()).collect());
            report["pass"] = json!(pass);
            report["result"] = o.result;
            Outcome { status: if pass { Status::Pass } else { Status::CheckFailure }, report, files: o.files }
        }
        Err((status, e)) => {
            report["pass"] = json!(false);
            report["error"] = e;
            Outcome { status, report, files: Vec::new() }
        }
    }
}

/// Write report.json, plus the CSV files for the csv format. Returns the paths.
pub fn write_outcome(o: &Outcome, dir: &Path, format: Format) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let path = dir.join("report.json");
    fs::write(&path, jostlab::io::to_pretty(&o.report))?;
    written.push(path);
    if format == Format::Csv {
        for (name, text) in &o.files {
            let path = dir.join(name);
            fs::write(&path, text)?;
            written.push(path);
        }
    }
    Ok(written)
}
