//! Command-line front end for the curve-singularity engine.
//!
//! Subcommands map one-to-one onto library entry points: `invariants` runs
//! the full report, `semigroup` prints ν or Γ, `classify` and `equisingular`
//! expose the catalog comparison, `blowup-chain` prints the quadratic
//! transform chain of a branch, `catalog` exports normal forms as curve
//! documents, and `verify-paper` runs the reproduction suite.
//!
//! Exit codes: 0 success, 2 bad input or validation failure, 3 precision
//! exhausted before certification, 4 internal invariant violation or a
//! failing verify check.  All JSON output has sorted keys and no floats, so
//! identical inputs produce byte-identical bytes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use curvemilnor_core::verify::{run_suite, CheckStatus};
use curvemilnor_core::{
    classify_engine, equisingular, ADEClass, CurveDocument, CurveSpec, Engine, Error, FieldSpec,
    Report, Result,
};

#[derive(Parser)]
#[command(
    name = "curvemilnor",
    version,
    about = "Exact invariants of curve singularities from branch parametrizations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant report for a curve document.
    Invariants {
        file: PathBuf,
        /// Emit the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
        /// Cap the trusted precision of the input series.
        #[arg(long)]
        truncation: Option<u32>,
    },
    /// Value semigroup or numerical semigroup of a curve document.
    Semigroup {
        file: PathBuf,
        /// Print the value semigroup in its finite box encoding.
        #[arg(long)]
        value: bool,
        /// Print the numerical semigroup of coordinate sums.
        #[arg(long)]
        numerical: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        truncation: Option<u32>,
    },
    /// Classify a curve document against the ADE catalog.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        truncation: Option<u32>,
    },
    /// Decide whether two curve documents have equal value semigroups
    /// up to branch permutation.
    Equisingular {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Quadratic transform chain of a one-branch curve document.
    BlowupChain {
        file: PathBuf,
        /// Stop after this many transforms.
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        truncation: Option<u32>,
    },
    /// Export a catalog normal form as a curve document.
    Catalog {
        /// Family letter: A, D or E.
        family: String,
        /// Index within the family.
        #[arg(long)]
        param: u32,
        /// Coefficient field: `rational` or `prime:p`.
        #[arg(long, default_value = "rational")]
        field: String,
    },
    /// Run the reproduction suite and print one line per check.
    VerifyPaper {
        /// Keep only checks whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
    },
}

fn load(path: &Path, truncation: Option<u32>) -> Result<CurveSpec> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::SchemaError(format!("{}: {e}", path.display())))?;
    let spec = CurveDocument::from_json(&text)?.to_spec()?;
    Ok(match truncation {
        // Both the document hint and the flag bound the trusted precision;
        // honor the tighter one.
        Some(t) => {
            let hint = spec.truncation_hint().map_or(t, |h| h.min(t));
            spec.with_truncation_hint(Some(hint))
        }
        None => spec,
    })
}

fn parse_field(text: &str) -> Result<FieldSpec> {
    if text == "rational" {
        return Ok(FieldSpec::rationals());
    }
    if let Some(p) = text.strip_prefix("prime:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::SchemaError(format!("bad prime modulus `{p}`")))?;
        return FieldSpec::prime(p);
    }
    Err(Error::SchemaError(format!(
        "unknown field `{text}` (expected `rational` or `prime:p`)"
    )))
}

fn print_json(value: &serde_json::Value) {
    let text = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    println!("{text}");
}

fn cmd_invariants(file: &Path, json: bool, truncation: Option<u32>) -> Result<()> {
    let mut engine = Engine::new(load(file, truncation)?);
    let report = Report::build(&mut engine)?;
    if json {
        print!("{}", report.to_json_string());
        return Ok(());
    }
    let inv = &report.invariants;
    println!("branches:        {}", inv.r);
    println!("multiplicity:    {}", inv.mult);
    println!("branch mults:    {:?}", inv.branch_mults);
    println!("delta:           {}", inv.delta);
    println!("milnor:          {}", inv.milnor);
    println!("embedding dim:   {}", inv.edim);
    println!("mu vector:       {:?}", inv.mu_vec);
    println!("conductor:       {:?}", inv.conductor);
    println!("gorenstein:      {}", inv.gorenstein);
    println!("local type:      {}", inv.local_type);
    println!(
        "ade class:       {}",
        report.ade.map_or("none".into(), |c| c.to_string())
    );
    for d in &report.diagnostics {
        println!("note: {d}");
    }
    Ok(())
}

fn cmd_semigroup(
    file: &Path,
    value: bool,
    numerical: bool,
    json: bool,
    truncation: Option<u32>,
) -> Result<()> {
    if value == numerical {
        return Err(Error::SchemaError(
            "choose exactly one of --value and --numerical".into(),
        ));
    }
    let mut engine = Engine::new(load(file, truncation)?);
    if value {
        let nu = engine.value_semigroup()?;
        if json {
            print_json(&nu.to_json());
        } else {
            println!("conductor: {:?}", nu.gamma());
            for v in nu.box_members() {
                println!("{v:?}");
            }
        }
    } else {
        let gamma = engine.gamma_semigroup()?;
        if json {
            print_json(&gamma.to_json());
        } else {
            println!("conductor: {}", gamma.conductor());
            println!("members below conductor: {:?}", gamma.small_values());
            println!("gaps: {:?}", gamma.gaps());
        }
    }
    Ok(())
}

fn cmd_classify(file: &Path, json: bool, truncation: Option<u32>) -> Result<()> {
    let mut engine = Engine::new(load(file, truncation)?);
    let ade = classify_engine(&mut engine)?;
    if json {
        print_json(&serde_json::json!({ "ade": ade.map(|c| c.to_string()) }));
    } else {
        println!("{}", ade.map_or("none".into(), |c| c.to_string()));
    }
    Ok(())
}

fn cmd_equisingular(file_a: &Path, file_b: &Path, json: bool) -> Result<()> {
    let a = load(file_a, None)?;
    let b = load(file_b, None)?;
    let same = equisingular(&a, &b)?;
    if json {
        print_json(&serde_json::json!({ "equisingular": same }));
    } else {
        println!("{same}");
    }
    Ok(())
}

fn cmd_blowup_chain(
    file: &Path,
    max_steps: Option<usize>,
    json: bool,
    truncation: Option<u32>,
) -> Result<()> {
    let mut engine = Engine::new(load(file, truncation)?);
    let chain = engine.blowup_chain(max_steps)?;
    // δ_k = ρ_k + δ_{k+1} along the chain, so per-step deltas are the
    // suffix sums of the rho sequence.
    let mut deltas = vec![0u32; chain.len() + 1];
    for (k, step) in chain.iter().enumerate().rev() {
        deltas[k] = step.rho + deltas[k + 1];
    }
    if json {
        let steps: Vec<serde_json::Value> = chain
            .iter()
            .enumerate()
            .map(|(k, step)| {
                serde_json::json!({
                    "delta": deltas[k],
                    "mult": step.mult_before,
                    "rho": step.rho,
                })
            })
            .collect();
        print_json(&serde_json::json!({ "steps": steps }));
    } else {
        for (k, step) in chain.iter().enumerate() {
            println!(
                "step {}: mult {}, delta {}, rho {}",
                k + 1,
                step.mult_before,
                deltas[k],
                step.rho
            );
        }
        if chain.is_empty() {
            println!("already regular: no transforms");
        }
    }
    Ok(())
}

fn cmd_catalog(family: &str, param: u32, field: &str) -> Result<()> {
    let class = match family.to_ascii_uppercase().as_str() {
        "A" => ADEClass::a(param)?,
        "D" => ADEClass::d(param)?,
        "E" => ADEClass::e(param)?,
        other => {
            return Err(Error::InadmissibleIndex(format!(
                "unknown family `{other}` (expected A, D or E)"
            )))
        }
    };
    let spec = class.catalog_curve(parse_field(field)?)?;
    println!("{}", CurveDocument::from_spec(&spec).to_json());
    Ok(())
}

fn cmd_verify_paper(filter: Option<&str>) -> Result<ExitCode> {
    let results = run_suite(filter);
    let mut passed = 0;
    let mut warned = 0;
    let mut failed = 0;
    for check in &results {
        match check.status {
            CheckStatus::Pass => passed += 1,
            CheckStatus::Warn => warned += 1,
            CheckStatus::Fail => failed += 1,
        }
        println!("{} {}: {}", check.status, check.name, check.detail);
    }
    println!(
        "{} checks: {} passed, {} warned, {} failed",
        results.len(),
        passed,
        warned,
        failed
    );
    Ok(if failed > 0 {
        ExitCode::from(4)
    } else {
        ExitCode::SUCCESS
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Invariants {
            file,
            json,
            truncation,
        } => cmd_invariants(&file, json, truncation)?,
        Command::Semigroup {
            file,
            value,
            numerical,
            json,
            truncation,
        } => cmd_semigroup(&file, value, numerical, json, truncation)?,
        Command::Classify {
            file,
            json,
            truncation,
        } => cmd_classify(&file, json, truncation)?,
        Command::Equisingular {
            file_a,
            file_b,
            json,
        } => cmd_equisingular(&file_a, &file_b, json)?,
        Command::BlowupChain {
            file,
            max_steps,
            json,
            truncation,
        } => cmd_blowup_chain(&file, max_steps, json, truncation)?,
        Command::Catalog {
            family,
            param,
            field,
        } => cmd_catalog(&family, param, &field)?,
        Command::VerifyPaper { filter } => return cmd_verify_paper(filter.as_deref()),
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_for(err: &Error) -> ExitCode {
    match err {
        Error::PrecisionExhausted(_) => ExitCode::from(3),
        Error::Internal(_) => ExitCode::from(4),
        _ => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_for(&err)
        }
    }
}
