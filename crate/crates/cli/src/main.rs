//! Command-line front-end: parsing, forcing evaluation, frame checking,
//! the model constructions, countermodel search, and the derivability
//! facts, over the JSON model formats of `veltman-core`.
//!
//! Exit codes: 0 on success, 1 on domain failures (an invalid frame, a
//! failed construction precondition, a countermodel under
//! `--expect-valid`, a frame outside the requested class), 2 on usage and
//! parse errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use veltman_core::constructions::{construct_sv, construct_sv2, construct_svil, reduce_il};
use veltman_core::decision::{check_derivability_facts, find_countermodel, SearchSemantics};
use veltman_core::{simplified, veltman, Formula, LogicId, Semantics, SimplifiedModel, VeltmanModel};

#[derive(Parser)]
#[command(
    name = "veltman",
    version,
    about = "Model checking and countermodel search for sublogics of interpretability logic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Veltman,
    Simplified,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemanticsArg {
    Standard,
    Alternative,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchKindArg {
    Veltman,
    Simplified,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstructionArg {
    Sv,
    Sv2,
    Svil,
    Cex,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its canonical rendering
    Parse {
        /// Formula text, or @path to read it from a file
        formula: String,
        /// Emit the JSON tree instead of text
        #[arg(long)]
        json: bool,
    },
    /// Evaluate forcing of a formula at a world of a model
    Eval {
        /// Model JSON file
        #[arg(long)]
        model: PathBuf,
        /// World to evaluate at
        #[arg(long)]
        world: String,
        /// Formula text, or @path
        #[arg(long)]
        formula: String,
        /// Reading of the witness clause (simplified models only)
        #[arg(long, value_enum, default_value_t = SemanticsArg::Standard)]
        semantics: SemanticsArg,
        /// Model kind; inferred from the shape of "S" when omitted
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long)]
        json: bool,
    },
    /// Check the frame laws and optional frame conditions
    CheckFrame {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Comma-separated conditions to evaluate (J1, J2plus, J4plus, J5)
        #[arg(long, value_delimiter = ',')]
        conditions: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Test membership of a simplified frame in a logic's frame class
    Classify {
        #[arg(long)]
        model: PathBuf,
        /// One of ILminus_J4plus, ILminus_J1J4plus, ILminus_J4plusJ5,
        /// ILminus_J1J4plusJ5, ILminus_J2plus, CL, ILminus_J2plusJ5, IL
        #[arg(long)]
        logic: String,
        #[arg(long)]
        json: bool,
    },
    /// Apply a model construction and print the resulting model JSON
    Transform {
        /// Input model JSON (Veltman for sv/sv2/svil, simplified for cex)
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        /// Target logic (required for sv and sv2)
        #[arg(long)]
        logic: Option<String>,
        /// Depth bound (required for svil)
        #[arg(long)]
        depth: Option<usize>,
        /// Target formula (required for cex), or @path
        #[arg(long)]
        formula: Option<String>,
        /// Also write a DOT rendering of the output frame to this path
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Search for a countermodel over a logic's frame class
    Search {
        /// Formula text, or @path
        #[arg(long)]
        formula: String,
        #[arg(long)]
        logic: String,
        #[arg(long, value_enum)]
        semantics: SearchKindArg,
        /// Largest carrier to scan
        #[arg(long)]
        max_size: usize,
        /// Exit with status 1 if a countermodel is found
        #[arg(long)]
        expect_valid: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check the derivability facts semantically and print the report
    Facts {
        /// Carrier bound: capped at 3 for Veltman frames, 5 for simplified
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }

    fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn load_formula(arg: &str) -> Result<Formula, CliError> {
    let text = if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read formula file '{path}': {e}")))?
    } else {
        arg.to_string()
    };
    text.trim().parse().map_err(CliError::usage)
}

fn read_json(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read '{}': {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid JSON in '{}': {e}", path.display())))
}

/// Broken frame laws are a domain failure (the file decoded fine, the
/// frame fails the library's precondition); anything else is bad input.
fn model_error(path: &Path, kind: &str, e: serde_json::Error) -> CliError {
    let message = format!("invalid {kind} model in '{}': {e}", path.display());
    if e.to_string().contains("invalid frame:") {
        CliError::Domain(message)
    } else {
        CliError::Usage(message)
    }
}

fn load_veltman(path: &Path) -> Result<VeltmanModel, CliError> {
    serde_json::from_value(read_json(path)?).map_err(|e| model_error(path, "Veltman", e))
}

fn load_simplified(path: &Path) -> Result<SimplifiedModel, CliError> {
    serde_json::from_value(read_json(path)?).map_err(|e| model_error(path, "simplified", e))
}

/// A Veltman model stores `S` as an object keyed by world, a simplified
/// model as a flat pair list.
fn detect_kind(path: &Path) -> Result<KindArg, CliError> {
    let value = read_json(path)?;
    match value.get("S") {
        Some(serde_json::Value::Object(_)) => Ok(KindArg::Veltman),
        Some(serde_json::Value::Array(_)) => Ok(KindArg::Simplified),
        _ => Err(CliError::Usage(format!(
            "cannot infer the model kind of '{}'; pass --kind",
            path.display()
        ))),
    }
}

fn parse_logic(name: &str) -> Result<LogicId, CliError> {
    name.parse().map_err(CliError::usage)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Parse { formula, json } => {
            let f = load_formula(&formula)?;
            if json {
                println!("{}", serde_json::to_string(&f).expect("formulas serialize"));
            } else {
                println!("{f}");
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Eval {
            model,
            world,
            formula,
            semantics,
            kind,
            json,
        } => {
            let f = load_formula(&formula)?;
            let kind = match kind {
                Some(k) => k,
                None => detect_kind(&model)?,
            };
            let forces = match kind {
                KindArg::Veltman => {
                    if semantics == SemanticsArg::Alternative {
                        return Err(CliError::Usage(
                            "the alternative semantics applies to simplified models only".into(),
                        ));
                    }
                    load_veltman(&model)?
                        .forces(&world, &f)
                        .map_err(CliError::domain)?
                }
                KindArg::Simplified => {
                    let sem = match semantics {
                        SemanticsArg::Standard => Semantics::Standard,
                        SemanticsArg::Alternative => Semantics::Alternative,
                    };
                    load_simplified(&model)?
                        .forces(&world, &f, sem)
                        .map_err(CliError::domain)?
                }
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "world": world,
                        "formula": f.to_string(),
                        "forces": forces,
                    })
                );
            } else {
                println!("{forces}");
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::CheckFrame {
            model,
            kind,
            conditions,
            json,
        } => {
            // Frames decode without the law checks, so violations can be
            // reported rather than rejected at load time.
            let (report, condition_results) = match kind {
                KindArg::Veltman => {
                    let frame: veltman::VeltmanFrame = serde_json::from_value(read_json(&model)?)
                        .map_err(CliError::usage)?;
                    let mut results = BTreeMap::new();
                    for name in &conditions {
                        let cond: veltman::Condition = name.parse().map_err(CliError::usage)?;
                        results.insert(name.clone(), frame.satisfies_condition(cond));
                    }
                    (frame.validate(), results)
                }
                KindArg::Simplified => {
                    let frame: simplified::SimplifiedFrame =
                        serde_json::from_value(read_json(&model)?).map_err(CliError::usage)?;
                    let mut results = BTreeMap::new();
                    for name in &conditions {
                        let cond: simplified::Condition = name.parse().map_err(CliError::usage)?;
                        results.insert(name.clone(), frame.satisfies_condition(cond));
                    }
                    (frame.validate(), results)
                }
            };
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "valid": report.is_ok(),
                        "violations": report
                            .violations
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>(),
                        "conditions": condition_results,
                    })
                );
            } else {
                println!("frame laws: {report}");
                for (name, holds) in &condition_results {
                    println!("condition {name}: {holds}");
                }
            }
            if report.is_ok() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }

        Command::Classify { model, logic, json } => {
            let logic = parse_logic(&logic)?;
            let m = load_simplified(&model)?;
            let frame = m.frame();
            let requirements = serde_json::json!({
                "reflexive_s": !logic.requires_reflexive_s() || frame.s().is_reflexive(),
                "transitive_s": !logic.requires_transitive_s() || frame.s().is_transitive(),
                "r_subset_s": !logic.requires_r_subset_s()
                    || frame.r().is_subset_of(frame.s()),
            });
            let in_class = frame.in_class(logic);
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "logic": logic.to_string(),
                        "in_class": in_class,
                        "requirements": requirements,
                    })
                );
            } else {
                println!("{in_class}");
            }
            Ok(if in_class {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Command::Transform {
            model,
            construction,
            logic,
            depth,
            formula,
            dot,
        } => {
            let output: SimplifiedModel = match construction {
                ConstructionArg::Sv | ConstructionArg::Sv2 => {
                    let logic = parse_logic(&logic.ok_or_else(|| {
                        CliError::Usage("--logic is required for sv and sv2".into())
                    })?)?;
                    let base = load_veltman(&model)?;
                    let built = match construction {
                        ConstructionArg::Sv => construct_sv(&base, logic),
                        _ => construct_sv2(&base, logic),
                    }
                    .map_err(CliError::domain)?;
                    built.into_model()
                }
                ConstructionArg::Svil => {
                    let depth = depth.ok_or_else(|| {
                        CliError::Usage("--depth is required for svil".into())
                    })?;
                    let base = load_veltman(&model)?;
                    construct_svil(&base, depth)
                        .map_err(CliError::domain)?
                        .fragment()
                        .clone()
                }
                ConstructionArg::Cex => {
                    let formula = formula.ok_or_else(|| {
                        CliError::Usage("--formula is required for cex".into())
                    })?;
                    let a = load_formula(&formula)?;
                    let m = load_simplified(&model)?;
                    reduce_il(&m, &a).map_err(CliError::domain)?
                }
            };
            if let Some(dot_path) = dot {
                std::fs::write(&dot_path, output.frame().to_dot()).map_err(|e| {
                    CliError::Domain(format!("cannot write '{}': {e}", dot_path.display()))
                })?;
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&output).expect("models serialize")
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::Search {
            formula,
            logic,
            semantics,
            max_size,
            expect_valid,
            json,
        } => {
            let f = load_formula(&formula)?;
            let logic = parse_logic(&logic)?;
            let sem = match semantics {
                SearchKindArg::Veltman => SearchSemantics::Veltman,
                SearchKindArg::Simplified => SearchSemantics::Simplified,
            };
            let result = find_countermodel(&f, logic, sem, max_size).map_err(CliError::domain)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&result).expect("results serialize")
                );
            } else if let Some(witness) = &result.witness {
                println!(
                    "countermodel found after {} frames: world {} refutes {f}",
                    result.frames_examined,
                    witness.world()
                );
            } else {
                println!(
                    "no countermodel up to {} worlds ({} frames examined); no conclusion about validity",
                    result.bound, result.frames_examined
                );
            }
            if expect_valid && result.found() {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }

        Command::Facts { max_size, json } => {
            if max_size == 0 || max_size > 5 {
                return Err(CliError::Usage(
                    "--max-size must be between 1 and 5".into(),
                ));
            }
            let report = check_derivability_facts(max_size.min(3), max_size)
                .map_err(CliError::domain)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("reports serialize")
                );
            } else {
                print!("{report}");
            }
            Ok(if report.all_as_expected() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
