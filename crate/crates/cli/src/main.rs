mod analysis;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use lieforge::corpus;
use lieforge::finring::Caps;
use lieforge::format::{self, Definition};
use lieforge::suite::{self, Options, Suite};

use analysis::{CheckResult, Sections};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "lieforge", version, about = "Exact structure computations for Lie algebras and finite Lie rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a definition file.
    Validate { file: PathBuf },
    /// Compute series, centralizers and radicals of one definition.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        series: bool,
        #[arg(long)]
        centralizers: bool,
        #[arg(long)]
        radicals: bool,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        no_timing: bool,
    },
    /// Run verification suites on a file or on the bundled corpus.
    #[command(group(ArgGroup::new("input").required(true).args(["file", "corpus"])))]
    Check {
        file: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        #[arg(long)]
        no_timing: bool,
    },
    /// Bundled example definitions.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List the bundled entries.
    List,
    /// Print one entry in the file format.
    Show { name: String },
}

/// A usage, input or parse problem: exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Fatal {
        Fatal(e.to_string())
    }
}

fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

fn read_definition(path: &Path, caps: Caps) -> Result<(Definition, String), Fatal> {
    let text = std::fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    let def = format::load(&text).map_err(|e| Fatal(format!("{}: {e}", path.display())))?;
    Ok((with_caps(def, caps), digest(text.as_bytes())))
}

fn with_caps(def: Definition, caps: Caps) -> Definition {
    match def {
        Definition::Ring(r) => Definition::Ring(r.with_caps(caps)),
        d => d,
    }
}

fn describe(def: &Definition) -> String {
    match def {
        Definition::Algebra { algebra, reps } => {
            let mut s = format!("algebra over {} of dimension {}", algebra.field(), algebra.dim());
            if !reps.is_empty() {
                s.push_str(&format!(" with {} representation(s)", reps.len()));
            }
            s
        }
        Definition::Ring(r) => format!(
            "ring on Z/{} of order {}",
            r.factors().iter().map(u64::to_string).collect::<Vec<_>>().join(" x Z/"),
            r.order()
        ),
    }
}

#[derive(Serialize)]
struct Envelope {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    input_digest: String,
    seed: u64,
    #[serde(flatten)]
    body: Value,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Value>,
}

fn emit(envelope: &Envelope, json_path: Option<&Path>) -> Result<(), Fatal> {
    let value = serde_json::to_value(envelope)?;
    let text = serde_json::to_string_pretty(&value)? + "\n";
    match json_path {
        Some(p) if p == Path::new("-") => print!("{text}"),
        Some(p) => {
            std::fs::write(p, &text).map_err(|e| Fatal(format!("{}: {e}", p.display())))?;
            print!("{}", render::text(&value));
        }
        None => print!("{}", render::text(&value)),
    }
    Ok(())
}

fn timing(start: Instant, enabled: bool) -> Option<Value> {
    enabled.then(|| json!({ "elapsed_ms": start.elapsed().as_millis() as u64 }))
}

fn run(cli: Cli) -> Result<ExitCode, Fatal> {
    let caps = Caps::from_env()?;
    match cli.command {
        Command::Validate { file } => {
            let (def, _) = read_definition(&file, caps)?;
            println!("{}: valid {}", def.name(), describe(&def));
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze {
            file,
            series,
            centralizers,
            radicals,
            json,
            seed,
            no_timing,
        } => {
            let start = Instant::now();
            let (def, input_digest) = read_definition(&file, caps)?;
            let all = !(series || centralizers || radicals);
            let sections = Sections {
                series: series || all,
                centralizers: centralizers || all,
                radicals: radicals || all,
            };
            let result = analysis::analyze(&def, sections, seed, caps)?;
            let envelope = Envelope {
                schema_version: SCHEMA_VERSION,
                tool: "lieforge",
                version: env!("CARGO_PKG_VERSION"),
                command: "analyze",
                input_digest,
                seed,
                body: json!({ "result": result }),
                passed: true,
                timing: timing(start, !no_timing),
            };
            emit(&envelope, json.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            file,
            corpus: use_corpus,
            suite: suite_name,
            seed,
            samples,
            json,
            no_timing,
        } => {
            let start = Instant::now();
            let suite: Suite = suite_name.parse()?;
            let opts = Options {
                seed,
                samples,
                caps,
                ..Options::default()
            };
            let mut inputs: Vec<(Definition, String, String)> = Vec::new();
            if use_corpus {
                for e in corpus::entries() {
                    let def = corpus::definition(e.name)?;
                    inputs.push((with_caps(def, caps), "corpus".into(), digest(e.text.as_bytes())));
                }
            } else if let Some(path) = file {
                let (def, d) = read_definition(&path, caps)?;
                inputs.push((def, path.display().to_string(), d));
            }
            for (def, _, _) in &inputs {
                analysis::preflight(def, suite, caps).map_err(|e| Fatal(format!("{}: {e}", def.name())))?;
            }
            let mut all_digests = Sha256::new();
            let mut results = Vec::new();
            for (def, source, d) in &inputs {
                all_digests.update(d.as_bytes());
                let t = Instant::now();
                let (checks, ring) = analysis::check(def, suite, &opts);
                results.push(CheckResult {
                    name: def.name().to_string(),
                    kind: match def {
                        Definition::Algebra { .. } => "algebra",
                        Definition::Ring(_) => "ring",
                    },
                    source: source.clone(),
                    digest: Some(d.clone()),
                    passed: checks.iter().all(|c| c.passed),
                    checks,
                    ring,
                    elapsed_ms: (!no_timing).then(|| t.elapsed().as_millis() as u64),
                });
            }
            if suite.expand().contains(&Suite::Semidirect) {
                let t = Instant::now();
                let batch = suite::semidirect_bound_batch(seed, samples).unwrap_or_else(|e| {
                    let mut c = lieforge::report::CheckReport::new("semidirect-bound");
                    c.fail("error", e.to_string());
                    c
                });
                results.push(CheckResult {
                    name: "semidirect-bound".into(),
                    kind: "construction",
                    source: "generated".into(),
                    digest: None,
                    passed: batch.passed,
                    checks: vec![batch],
                    ring: None,
                    elapsed_ms: (!no_timing).then(|| t.elapsed().as_millis() as u64),
                });
            }
            let passed = results.iter().all(|r| r.passed);
            let (mut cases, mut violations) = (0, 0);
            for c in results.iter().flat_map(|r| &r.checks) {
                cases += c.cases;
                violations += c.violations.len();
            }
            let input_digest = if use_corpus {
                format!("sha256:{:x}", all_digests.finalize())
            } else {
                inputs[0].2.clone()
            };
            let envelope = Envelope {
                schema_version: SCHEMA_VERSION,
                tool: "lieforge",
                version: env!("CARGO_PKG_VERSION"),
                command: "check",
                input_digest,
                seed,
                body: json!({
                    "suite": suite.name(),
                    "samples": samples,
                    "caps": caps,
                    "summary": { "inputs": results.len(), "cases": cases, "violations": violations },
                    "results": results,
                }),
                passed,
                timing: timing(start, !no_timing),
            };
            emit(&envelope, json.as_deref())?;
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Corpus { action } => {
            match action {
                CorpusAction::List => {
                    for e in corpus::entries() {
                        let def = corpus::definition(e.name)?;
                        println!("{:<16} {}", e.name, describe(&def));
                    }
                }
                CorpusAction::Show { name } => {
                    let entry = corpus::entries()
                        .iter()
                        .find(|e| e.name == name)
                        .ok_or_else(|| Fatal(format!("no corpus entry named '{name}'")))?;
                    print!("{}", entry.text);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
