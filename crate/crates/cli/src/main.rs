use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use sl2p::usl2::{
    acyclicity_check, decompose_with_seed, filtration, gdim, gdim_p, is_projective_injective, unimodality_check,
    FiltrationStyle, GradedUModule,
};
use sl2p::verify::{self, CaseParams, CaseResult};
use sl2p::{morita, zoo, Error};

const REPORT_SCHEMA: &str = "sl2p-report/1";

#[derive(Parser)]
#[command(name = "sl2p", version, about = "Verify and decompose restricted sl(2) link homology data over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification case, or "all".
    Verify {
        selector: String,
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        primes: Vec<u64>,
        /// Also run p = 11 and 13.
        #[arg(long)]
        extended: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Twist parameters t1 (t2 = 1 - t1) for the Hopf and torus cases.
        #[arg(long, value_delimiter = ',', default_value = "0,1,2", allow_negative_numbers = true)]
        t1: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include per-case runtimes (the report is otherwise reproducible byte for byte).
        #[arg(long)]
        timings: bool,
    },
    /// Decompose a module given as JSON.
    Decompose {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Graded dimensions and parity unimodality of a module given as JSON.
    Character {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Example state spaces.
    Zoo {
        #[command(subcommand)]
        action: ZooAction,
    },
    /// Write a zoo module, or the unknot-complex / unlink-complex chain
    /// complexes, as JSON.
    Export {
        name: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        t1: Option<i64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ZooAction {
    List,
    Build {
        name: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        t1: Option<i64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Failure with its exit code: 1 for a failed check, 2 for usage or input
/// errors.
struct Failure(u8, String);

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(2, e.to_string())
}

fn from_core(e: Error) -> Failure {
    match e {
        Error::Embedding(_) | Error::InvalidModule(_) | Error::InvalidComplex(_) => Failure(1, e.to_string()),
        _ => Failure(2, e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { selector, mut primes, extended, seed, t1, format, timings } => {
            if extended {
                for p in [11, 13] {
                    if !primes.contains(&p) {
                        primes.push(p);
                    }
                }
            }
            run_verify(&selector, CaseParams { primes, seed, twists: t1 }, format, timings)
        }
        Command::Decompose { input, seed, format } => run_decompose(&input, seed, format),
        Command::Character { input, format } => run_character(&input, format),
        Command::Zoo { action: ZooAction::List } => {
            for name in zoo::ENTRY_NAMES {
                println!("{name}");
            }
            Ok(())
        }
        Command::Zoo { action: ZooAction::Build { name, p, n, t1, format } } => run_zoo_build(&name, p, n, t1, format),
        Command::Export { name, p, n, t1, output } => run_export(&name, p, n, t1, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

fn run_verify(selector: &str, params: CaseParams, format: Format, timings: bool) -> Result<(), Failure> {
    let cases = verify::select(selector).map_err(usage)?;
    for &p in &params.primes {
        sl2p::fp::FieldSpec::new(p).map_err(usage)?;
    }
    let results: Vec<Result<CaseResult, Error>> =
        cases.par_iter().map(|c| verify::run_case(c.id, &params)).collect();
    let results: Vec<CaseResult> = results.into_iter().collect::<Result<_, _>>().map_err(from_core)?;
    let passed = results.iter().all(|r| r.passed);
    match format {
        Format::Text => {
            for r in &results {
                print!("[{}] {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.claim);
                if timings {
                    print!(" ({:.3} s)", r.runtime.as_secs_f64());
                }
                println!();
                for d in &r.details {
                    println!("    {d}");
                }
            }
            let n_pass = results.iter().filter(|r| r.passed).count();
            println!(
                "{n_pass}/{} cases passed (primes {:?}, seed {}, t1 {:?})",
                results.len(),
                params.primes,
                params.seed,
                params.twists
            );
        }
        Format::Json => {
            let cases: Vec<Value> = results
                .iter()
                .map(|r| {
                    let mut v = serde_json::to_value(r).expect("serializable");
                    if timings {
                        v["runtime_ms"] = json!(r.runtime.as_millis() as u64);
                    }
                    v
                })
                .collect();
            let report = json!({
                "schema": REPORT_SCHEMA,
                "selector": selector,
                "primes": params.primes,
                "seed": params.seed,
                "t1": params.twists,
                "passed": passed,
                "cases": cases,
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure(1, String::new()))
    }
}

fn load_module(path: &PathBuf) -> Result<GradedUModule, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let m = GradedUModule::from_json(&text).map_err(usage)?;
    let report = m.validate();
    if !report.passed() {
        for f in &report.failures {
            println!("invariant violated: {f}");
        }
        return Err(Failure(1, format!("{} is not a graded u-module", path.display())));
    }
    Ok(m)
}

fn run_decompose(input: &PathBuf, seed: u64, format: Format) -> Result<(), Failure> {
    let m = load_module(input)?;
    let parts = decompose_with_seed(&m, seed);
    let names: Vec<String> = parts
        .iter()
        .map(|s| match &s.label {
            Some(l) => l.to_string(),
            None => format!("[unlabeled dim {}]", s.module.dim()),
        })
        .collect();
    let (g, gp) = (gdim(&m), gdim_p(&m));
    let proj = is_projective_injective(&m);
    match format {
        Format::Text => {
            println!("p = {}, dim = {}", m.p(), m.dim());
            println!("decomposition: {}", if names.is_empty() { "0".into() } else { names.join(" ⊕ ") });
            println!("gdim: {g}");
            println!("gdim_p: {gp}");
            println!("projective-injective: {proj}");
        }
        Format::Json => {
            let summands: Vec<Value> = parts
                .iter()
                .zip(&names)
                .map(|(s, n)| json!({ "label": n, "dim": s.module.dim(), "labeled": s.label.is_some() }))
                .collect();
            let report = json!({
                "schema": REPORT_SCHEMA,
                "p": m.p(),
                "dim": m.dim(),
                "summands": summands,
                "gdim": g.to_string(),
                "gdim_p": gp.to_string(),
                "projective_injective": proj,
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
    }
    Ok(())
}

fn run_character(input: &PathBuf, format: Format) -> Result<(), Failure> {
    let m = load_module(input)?;
    let (g, gp) = (gdim(&m), gdim_p(&m));
    let uni = unimodality_check(&m);
    match format {
        Format::Text => {
            println!("gdim: {g}");
            println!("gdim_p: {gp}");
            println!("parity unimodal: {}", uni.passed);
            for (t, even, odd) in &uni.rows {
                println!("    t^{t}: even residues {even:?}, odd residues {odd:?}");
            }
        }
        Format::Json => {
            let rows: Vec<Value> =
                uni.rows.iter().map(|(t, e, o)| json!({ "t": t, "even": e, "odd": o })).collect();
            let report = json!({
                "schema": REPORT_SCHEMA,
                "gdim": g.to_string(),
                "gdim_p": gp.to_string(),
                "unimodal": uni.passed,
                "rows": rows,
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
    }
    Ok(())
}

fn run_zoo_build(name: &str, p: u64, n: Option<usize>, t1: Option<i64>, format: Format) -> Result<(), Failure> {
    let entry = zoo::build(name, p, n, t1).map_err(from_core)?;
    match format {
        Format::Json => println!("{}", entry.module.to_json().map_err(from_core)?),
        Format::Text => {
            let m = &entry.module;
            let valid = m.validate().passed();
            let uni = unimodality_check(m).passed;
            let acyclic = acyclicity_check(m);
            let nabla = filtration(m, FiltrationStyle::Nabla);
            println!("{entry}");
            println!("gdim: {}", gdim(m));
            println!("gdim_p: {}", gdim_p(m));
            println!("valid: {valid}");
            println!("parity unimodal: {uni}");
            println!("acyclic: {acyclic}");
            match &nabla {
                Some(f) => println!(
                    "∇-filtration: {}",
                    f.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ")
                ),
                None => println!("∇-filtration: none"),
            }
            println!("projective-injective: {}", is_projective_injective(m));
        }
    }
    Ok(())
}

fn run_export(name: &str, p: u64, n: Option<usize>, t1: Option<i64>, output: Option<PathBuf>) -> Result<(), Failure> {
    let text = match name {
        "unknot-complex" => morita::unknot_complex(p).and_then(|c| c.to_json()),
        "unlink-complex" => morita::unlink_complex(p).and_then(|c| c.to_json()),
        _ => zoo::build(name, p, n, t1).and_then(|e| e.module.to_json()),
    }
    .map_err(from_core)?;
    match output {
        Some(path) => fs::write(&path, text + "\n").map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(())
}
