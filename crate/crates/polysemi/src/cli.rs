//! The `polysemi` command-line interface.
//!
//! Exit codes: 0 success / property holds; 1 property fails (witness
//! printed); 2 usage, parse or precondition error; 3 capacity exceeded;
//! 4 theorem violation (the battery or classifier found a counterexample
//! to a structural guarantee — must never happen).

use crate::battery::{self, Level};
use crate::construct::InclusionWitness;
use crate::enumerate::UniverseKind;
use crate::error::Error;
use crate::family::TupleFamily;
use crate::io::{parse_construct, parse_optab, serialize_optab};
use crate::predicates::{
    is_associative, is_idempotent, is_quasitrivial_on, neutral_elements,
};
use crate::reduction::{
    extend_binary, reduce_any, reduce_idempotent, reduce_quasitrivial, reduce_via_neutral,
    ReductionResult,
};
use crate::structure::classify;
use crate::table::{Elem, NaryOp};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "polysemi", version, about = "Finite n-ary semigroup toolkit")]
pub struct Cli {
    /// Worker threads for heavy scans (env: POLYSEMI_JOBS).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check properties of an operation table and print verdicts.
    Verify {
        file: PathBuf,
        /// assoc | idem | qt-dk:<k> | qt-sk:<k> | neutral | all
        #[arg(long, default_value = "all")]
        property: String,
    },
    /// Print the structure report of an operation table.
    Classify { file: PathBuf },
    /// Reduce an operation to a binary one and print its table.
    Reduce {
        file: PathBuf,
        /// Reduce through this neutral element.
        #[arg(long, conflicts_with_all = ["quasitrivial", "idempotent", "any"])]
        via_neutral: Option<Elem>,
        /// Use the quasitrivial reduction formula.
        #[arg(long, conflicts_with_all = ["idempotent", "any"])]
        quasitrivial: bool,
        /// Use the idempotent boundary reduction.
        #[arg(long, conflicts_with = "any")]
        idempotent: bool,
        /// Neutral-element route when available, quasitrivial otherwise
        /// (the default).
        #[arg(long)]
        any: bool,
    },
    /// Extend a binary operation table to a higher arity.
    Extend {
        file: PathBuf,
        #[arg(long)]
        arity: usize,
    },
    /// Assemble a construction spec and print the result.
    Construct {
        file: PathBuf,
        /// Print the binary glued table instead of its extension.
        #[arg(long, conflicts_with = "emit_nary")]
        emit_binary: bool,
        /// Print the n-ary extension (the default).
        #[arg(long)]
        emit_nary: bool,
    },
    /// Stream an operation universe, or summarize it as a census.
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Without this, binary tables are enumerated.
        #[arg(long)]
        arity: Option<usize>,
        #[arg(long)]
        census: bool,
        /// Universe for n-ary enumeration.
        #[arg(long, value_enum, default_value_t = UniverseArg::Extended)]
        universe: UniverseArg,
        /// Restrict the exhaustive universe to idempotent tables.
        #[arg(long)]
        idempotent: bool,
    },
    /// Produce an operation strictly between the one-off class and full
    /// quasitriviality, when the shape is covered.
    Witness {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        size: usize,
    },
    /// Run the verification battery.
    CheckPaper {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UniverseArg {
    Extended,
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Capacity(_) => 3,
        Error::TheoremViolation(_) => 4,
        _ => 2,
    }
}

fn load(path: &PathBuf) -> Result<NaryOp, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_optab(&text)
}

/// Runs one parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let jobs = cli
        .jobs
        .or_else(|| {
            std::env::var("POLYSEMI_JOBS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1);
    crate::set_jobs(jobs);
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command) -> Result<i32, Error> {
    match command {
        Command::Verify { file, property } => {
            let op = load(&file)?;
            verify(&op, &property)
        }
        Command::Classify { file } => {
            let op = load(&file)?;
            let report = classify(&op)?;
            print!("{report}");
            Ok(0)
        }
        Command::Reduce {
            file,
            via_neutral,
            quasitrivial,
            idempotent,
            any: _,
        } => {
            let op = load(&file)?;
            let result: ReductionResult = if let Some(e) = via_neutral {
                ReductionResult {
                    reduction: Some(reduce_via_neutral(&op, e)?),
                    method: crate::reduction::ReductionMethod::NeutralElement,
                    neutral_used: Some(e),
                }
            } else if quasitrivial {
                reduce_quasitrivial(&op)?
            } else if idempotent {
                reduce_idempotent(&op)?
            } else {
                reduce_any(&op)?
            };
            match result.reduction {
                Some(g) => {
                    print!("{}", serialize_optab(&g));
                    Ok(0)
                }
                None => {
                    println!("not reducible by method {}", result.method);
                    Ok(1)
                }
            }
        }
        Command::Extend { file, arity } => {
            let op = load(&file)?;
            let f = extend_binary(&op, arity)?;
            print!("{}", serialize_optab(&f));
            Ok(0)
        }
        Command::Construct {
            file,
            emit_binary,
            emit_nary: _,
        } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", file.display())))?;
            let spec = parse_construct(&text)?;
            let (g, f) = crate::construct::assemble(&spec)?;
            print!("{}", serialize_optab(if emit_binary { &g } else { &f }));
            Ok(0)
        }
        Command::Enumerate {
            size,
            arity,
            census,
            universe,
            idempotent,
        } => enumerate_cmd(size, arity, census, universe, idempotent),
        Command::Witness { arity, size } => {
            match crate::construct::witness_strict_inclusion(arity, size)? {
                InclusionWitness::Found(f) => {
                    print!("{}", serialize_optab(&f));
                    Ok(0)
                }
                InclusionWitness::NotCovered { note } => {
                    println!("none: {note}");
                    Ok(1)
                }
            }
        }
        Command::CheckPaper { level } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let report = battery::run(level);
            for check in &report.checks {
                if check.passed {
                    println!("PASS {}", check.name);
                } else {
                    println!("FAIL {}: {}", check.name, check.detail);
                }
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            println!(
                "{} checks, {} failed, {} theorem violations",
                report.checks.len(),
                failed,
                report.theorem_violations()
            );
            if report.theorem_violations() > 0 {
                Ok(4)
            } else if failed > 0 {
                Ok(1)
            } else {
                Ok(0)
            }
        }
    }
}

fn verify(op: &NaryOp, property: &str) -> Result<i32, Error> {
    let mut failed = false;
    let mut run_one = |name: &str| -> Result<(), Error> {
        failed |= !verify_one(op, name)?;
        Ok(())
    };
    if property == "all" {
        run_one("assoc")?;
        run_one("idem")?;
        run_one("qt-dk:1")?;
        if op.arity() > 2 {
            run_one(&format!("qt-dk:{}", op.arity() - 1))?;
        }
        run_one("qt-sk:2")?;
        run_one("neutral")?;
    } else {
        run_one(property)?;
    }
    Ok(if failed { 1 } else { 0 })
}

/// Prints the verdict for one property; returns whether it holds.
fn verify_one(op: &NaryOp, property: &str) -> Result<bool, Error> {
    let carrier = op.carrier();
    match property {
        "assoc" => match is_associative(op) {
            Ok(()) => {
                println!("assoc: pass");
                Ok(true)
            }
            Err(w) => {
                println!("assoc: fail");
                println!("  witness: {}", w.render(carrier));
                Ok(false)
            }
        },
        "idem" => match is_idempotent(op) {
            Ok(()) => {
                println!("idem: pass");
                Ok(true)
            }
            Err(w) => {
                println!("idem: fail");
                println!("  witness: {}", w.render(carrier));
                Ok(false)
            }
        },
        "neutral" => {
            let set = neutral_elements(op);
            let names: Vec<String> = set.iter().map(|e| carrier.name(e)).collect();
            println!(
                "neutral-elements: {}",
                if names.is_empty() {
                    "none".to_string()
                } else {
                    names.join(" ")
                }
            );
            Ok(true)
        }
        _ => {
            let family = parse_family(op, property)?;
            match is_quasitrivial_on(op, &family) {
                Ok(()) => {
                    println!("{property}: pass");
                    Ok(true)
                }
                Err(w) => {
                    println!("{property}: fail");
                    println!("  witness: {}", w.render(carrier));
                    Ok(false)
                }
            }
        }
    }
}

fn parse_family(op: &NaryOp, property: &str) -> Result<TupleFamily, Error> {
    let parse_k = |s: &str| -> Result<usize, Error> {
        s.parse()
            .map_err(|_| Error::input(format!("bad family index `{s}`")))
    };
    if let Some(k) = property.strip_prefix("qt-dk:") {
        TupleFamily::d_k(op.size(), op.arity(), parse_k(k)?)
    } else if let Some(k) = property.strip_prefix("qt-sk:") {
        TupleFamily::s_k(op.size(), op.arity(), parse_k(k)?)
    } else {
        Err(Error::input(format!(
            "unknown property `{property}` (expected assoc, idem, qt-dk:<k>, qt-sk:<k>, neutral, all)"
        )))
    }
}

fn enumerate_cmd(
    size: usize,
    arity: Option<usize>,
    census: bool,
    universe: UniverseArg,
    idempotent: bool,
) -> Result<i32, Error> {
    use crate::enumerate;
    match arity {
        None => {
            if census {
                // binary census is the arity-2 extended census
                let c = enumerate::census(size, 2, UniverseKind::BinaryExtended)?;
                print!("{c}");
            } else {
                let ops = enumerate::enumerate_semigroups(size)?;
                stream(&ops);
            }
            Ok(0)
        }
        Some(n) => {
            let kind = match universe {
                UniverseArg::Extended => UniverseKind::BinaryExtended,
                UniverseArg::Exhaustive => UniverseKind::NaryExhaustive,
            };
            if census {
                if idempotent {
                    return Err(Error::input(
                        "census over the idempotent-only universe is not defined",
                    ));
                }
                let c = enumerate::census(size, n, kind)?;
                print!("{c}");
            } else {
                let ops = match kind {
                    UniverseKind::BinaryExtended => {
                        if idempotent {
                            return Err(Error::input(
                                "--idempotent needs --universe exhaustive",
                            ));
                        }
                        enumerate::extension_universe(size, n)?
                    }
                    UniverseKind::NaryExhaustive => {
                        enumerate::enumerate_nary_exhaustive(size, n, idempotent)?
                    }
                };
                stream(&ops);
            }
            Ok(0)
        }
    }
}

/// Prints operation tables separated by blank lines.
fn stream(ops: &[NaryOp]) {
    for (i, op) in ops.iter().enumerate() {
        if i > 0 {
            println!();
        }
        print!("{}", serialize_optab(op));
    }
}
