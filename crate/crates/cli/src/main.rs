use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use colourful::error::EXIT_USAGE;
use colourful::format::to_json;
use colourful::{enumerate, generate, solve, svg, verify, CliError, Command, InstanceFile, InstanceKind, ResultFile};
use colourful_core::tverberg::DEFAULT_ENUMERATION_BUDGET;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "colourful", version, about = "Exact colourful Tverberg, Radon and balanced-split partitions")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a seeded random instance to stdout.
    Generate {
        #[arg(long, value_enum)]
        kind: InstanceKind,
        /// Parts (tverberg, tolerant), always 2 for radon, colours for balanced.
        #[arg(long = "k", default_value_t = 2)]
        k: usize,
        #[arg(long = "d", default_value_t = 2)]
        d: usize,
        /// Number of removable classes (tolerant only).
        #[arg(long = "r", default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit an array of N instances with seeds seed, seed+1, ...
        #[arg(long)]
        batch: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Solve an instance and print a self-verified result.
    Solve {
        #[arg(value_enum)]
        command: Command,
        /// Instance file; stdin if omitted.
        input: Option<PathBuf>,
        /// The input is an array of N instances.
        #[arg(long)]
        batch: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// List every equal-coefficient partition and compare with the counting bound.
    Enumerate {
        input: Option<PathBuf>,
        /// Refuse instances with more candidate representations than this.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u128,
        #[arg(long)]
        batch: Option<usize>,
    },
    /// Re-check a result against its instance.
    Verify {
        instance: PathBuf,
        /// Result file; stdin if omitted.
        result: Option<PathBuf>,
        #[arg(long)]
        batch: Option<usize>,
    },
}

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::usage(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| CliError::usage(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    Ok(serde_json::from_str(text)?)
}

fn parse_batch<T: DeserializeOwned>(text: &str, batch: usize) -> Result<Vec<T>, CliError> {
    let items: Vec<T> = parse(text)?;
    if items.len() != batch {
        return Err(CliError::usage(format!("--batch {batch} but the input holds {} items", items.len())));
    }
    Ok(items)
}

fn write_svg(path: &Path, instance: &InstanceFile, result: Option<&ResultFile>) -> Result<(), CliError> {
    let drawing = svg::render(instance, result)?;
    fs::write(path, drawing).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn no_svg_in_batch(batch: Option<usize>, svg: &Option<PathBuf>) -> Result<(), CliError> {
    match (batch, svg) {
        (Some(_), Some(_)) => Err(CliError::usage("--svg draws a single instance; drop --batch")),
        _ => Ok(()),
    }
}

/// Runs `f` over the items in parallel. Failed items become
/// `{"error", "exit"}` objects in place; the worst exit code wins.
fn run_batch<T: Sync, R: Serialize + Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<R, CliError> + Sync,
) -> (Value, u8) {
    let outcomes: Vec<Result<R, CliError>> = items.par_iter().map(&f).collect();
    let code = outcomes.iter().filter_map(|o| o.as_ref().err()).map(|e| e.code).max().unwrap_or(0);
    let values = outcomes
        .into_iter()
        .map(|o| match o {
            Ok(r) => serde_json::to_value(r).expect("results serialize"),
            Err(e) => json!({ "error": e.message, "exit": e.code }),
        })
        .collect();
    (Value::Array(values), code)
}

/// Prints the document and returns the exit code to use.
fn run(cli: Cli) -> Result<(String, u8), CliError> {
    match cli.command {
        Cmd::Generate { kind, k, d, r, seed, batch, svg } => {
            no_svg_in_batch(batch, &svg)?;
            if let Some(count) = batch {
                let seeds: Vec<u64> = (0..count as u64).map(|i| seed.wrapping_add(i)).collect();
                let instances = seeds.iter().map(|&s| generate(kind, k, d, r, s)).collect::<Result<Vec<_>, _>>()?;
                return Ok((to_json(&instances), 0));
            }
            let instance = generate(kind, k, d, r, seed)?;
            if let Some(path) = svg {
                write_svg(&path, &instance, None)?;
            }
            Ok((to_json(&instance), 0))
        }
        Cmd::Solve { command, input, batch, svg } => {
            no_svg_in_batch(batch, &svg)?;
            let text = read_input(input.as_deref())?;
            if let Some(count) = batch {
                let instances: Vec<InstanceFile> = parse_batch(&text, count)?;
                let (value, code) = run_batch(&instances, |i| solve(command, i));
                return Ok((to_json(&value), code));
            }
            let instance: InstanceFile = parse(&text)?;
            let result = solve(command, &instance)?;
            if let Some(path) = svg {
                write_svg(&path, &instance, Some(&result))?;
            }
            Ok((to_json(&result), 0))
        }
        Cmd::Enumerate { input, budget, batch } => {
            let text = read_input(input.as_deref())?;
            if let Some(count) = batch {
                let instances: Vec<InstanceFile> = parse_batch(&text, count)?;
                let (value, code) = run_batch(&instances, |i| enumerate(i, budget));
                return Ok((to_json(&value), code));
            }
            let instance: InstanceFile = parse(&text)?;
            Ok((to_json(&enumerate(&instance, budget)?), 0))
        }
        Cmd::Verify { instance, result, batch } => {
            let instance_text = read_input(Some(&instance))?;
            let result_text = read_input(result.as_deref())?;
            if let Some(count) = batch {
                let instances: Vec<InstanceFile> = parse_batch(&instance_text, count)?;
                let results: Vec<ResultFile> = parse_batch(&result_text, count)?;
                let pairs: Vec<_> = instances.iter().zip(&results).collect();
                let (value, code) = run_batch(&pairs, |(i, r)| {
                    verify(i, r).map(|()| json!({ "instance_hash": i.hash(), "verified": true }))
                });
                return Ok((to_json(&value), code));
            }
            let instance: InstanceFile = parse(&instance_text)?;
            let result: ResultFile = parse(&result_text)?;
            verify(&instance, &result)?;
            Ok((to_json(&json!({ "instance_hash": instance.hash(), "verified": true })), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok((doc, code)) => {
            let _ = io::stdout().write_all(doc.as_bytes());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
