use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use scca::analysis::{
    gram_matrix, simplicity_scan, singular_vectors, verify_algebra, verify_freefield,
    verify_primed, whittaker_phi_prime, whittaker_simplicity, GramMatrix, RelationReport,
    SimplicityMethod, SimplicityVerdict,
};
use scca::halfint::HalfInt;
use scca::modules::{build_module, build_module_with_budget, ModuleHandle, ModuleSpec};
use scca::rat::rat_to_string;
use scca::report::{render_json, render_table, ReportBuilder};
use scca::specfile::{load_spec, SpecFile};

const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "scca",
    about = "Exact-arithmetic verification toolkit for a superconformal current algebra"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Module spec file (JSON)
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Truncation weight, e.g. "4" or "7/2"
    #[arg(long, global = true, value_parser = HalfInt::parse)]
    truncation: Option<HalfInt>,
    /// Letter budget for Whittaker-style enumerations
    #[arg(long, global = true)]
    budget: Option<u32>,
    /// Largest generator index for relation suites, e.g. "3" or "5/2"
    #[arg(long, global = true, value_parser = HalfInt::parse)]
    max_index: Option<HalfInt>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check antisymmetry, super-Jacobi, grading and parity on a generator window
    VerifyAlgebra,
    /// Check every defining relation on the free-field module from the spec
    VerifyFreefield,
    /// Print graded dimensions of the module from the spec
    Dims,
    /// Print Gram ranks per degree for a highest-weight module
    Gram,
    /// Search for singular vectors degree by degree
    Singular,
    /// Evaluate simplicity criteria (formula and/or bounded scan)
    Simplicity,
    /// Print the transformed Whittaker data (c1', L' values)
    WhittakerPrime,
    /// Check primed-operator decoupling and relations on the module from the spec
    VerifyPrimed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Help/version requests are not usage errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::VerifyAlgebra => {
            let max = cli.max_index.unwrap_or_else(|| HalfInt::from_int(4));
            let reports = verify_algebra(max);
            let doc = ReportBuilder::new("algebra", max).relations(&reports).build();
            emit(cli, &doc);
            Ok(pass_code(&reports))
        }
        Cmd::VerifyFreefield => {
            let spec = require_spec(cli)?;
            let n = truncation_of(cli, &spec);
            let params = spec.module.params();
            let reports = verify_freefield(&params, n).map_err(|e| e.to_string())?;
            let doc = ReportBuilder::new(&spec.module.describe(), n)
                .relations(&reports)
                .build();
            emit(cli, &doc);
            Ok(pass_code(&reports))
        }
        Cmd::VerifyPrimed => {
            let spec = require_spec(cli)?;
            let handle = build_handle(cli, &spec)?;
            let max = cli.max_index.unwrap_or_else(|| HalfInt::from_int(2));
            let reports = verify_primed(&handle, max);
            let doc = ReportBuilder::new(&spec.module.describe(), handle.truncation)
                .relations(&reports)
                .build();
            emit(cli, &doc);
            Ok(pass_code(&reports))
        }
        Cmd::Dims => {
            let spec = require_spec(cli)?;
            let handle = build_handle(cli, &spec)?;
            let doc = ReportBuilder::new(&spec.module.describe(), handle.truncation)
                .graded_dims(&handle)
                .build();
            emit(cli, &doc);
            Ok(0)
        }
        Cmd::Gram => {
            let spec = require_spec(cli)?;
            let handle = build_handle(cli, &spec)?;
            let grams = all_grams(&handle)?;
            let doc = ReportBuilder::new(&spec.module.describe(), handle.truncation)
                .gram_ranks(&grams)
                .build();
            emit(cli, &doc);
            Ok(0)
        }
        Cmd::Singular => {
            let spec = require_spec(cli)?;
            let handle = build_handle(cli, &spec)?;
            let mut witnesses = Vec::new();
            let mut t = 1;
            while t <= handle.truncation.twice() {
                let d = HalfInt::from_twice(t);
                for v in singular_vectors(&handle, d).map_err(|e| e.to_string())? {
                    witnesses.push((d, v));
                }
                t += 1;
            }
            let found = !witnesses.is_empty();
            let doc = ReportBuilder::new(&spec.module.describe(), handle.truncation)
                .singular_witnesses(&handle, &witnesses)
                .build();
            emit(cli, &doc);
            Ok(if found { EXIT_FAIL } else { 0 })
        }
        Cmd::Simplicity => {
            let spec = require_spec(cli)?;
            let n = truncation_of(cli, &spec);
            let budget = budget_of(cli, &spec);
            match &spec.module {
                ModuleSpec::Whittaker(data) => {
                    let formula = whittaker_simplicity(data, SimplicityMethod::Formula)
                        .map_err(|e| e.to_string())?;
                    let handle = build_module_with_budget(
                        spec.module.clone(),
                        n,
                        budget,
                    )
                    .map_err(|e| e.to_string())?;
                    let scan = whittaker_simplicity(
                        data,
                        SimplicityMethod::Scan {
                            truncation: n,
                            budget,
                        },
                    )
                    .map_err(|e| e.to_string())?;
                    let verdict = match &formula {
                        SimplicityVerdict::Inconclusive { .. } => scan.clone(),
                        other => other.clone(),
                    };
                    let doc = ReportBuilder::new(&spec.module.describe(), n)
                        .verdict(Some(&handle), &verdict)
                        .extra(
                            "formula_verdict",
                            scca::report::verdict_value(Some(&handle), &formula),
                        )
                        .extra(
                            "scan_verdict",
                            scca::report::verdict_value(Some(&handle), &scan),
                        )
                        .build();
                    emit(cli, &doc);
                    Ok(verdict_code(&verdict))
                }
                _ => {
                    let handle = build_handle(cli, &spec)?;
                    let verdict = simplicity_scan(&handle, handle.truncation, budget)
                        .map_err(|e| e.to_string())?;
                    let doc = ReportBuilder::new(&spec.module.describe(), handle.truncation)
                        .verdict(Some(&handle), &verdict)
                        .build();
                    emit(cli, &doc);
                    Ok(verdict_code(&verdict))
                }
            }
        }
        Cmd::WhittakerPrime => {
            let spec = require_spec(cli)?;
            let data = match &spec.module {
                ModuleSpec::Whittaker(d) => d,
                _ => return Err("whittaker-prime requires a whittaker spec".into()),
            };
            let pp = whittaker_phi_prime(data).map_err(|e| e.to_string())?;
            let mut l_map = serde_json::Map::new();
            for (k, v) in &pp.l_values {
                l_map.insert(k.to_string(), json!(rat_to_string(v)));
            }
            let n = truncation_of(cli, &spec);
            let doc = ReportBuilder::new(&spec.module.describe(), n)
                .extra(
                    "phi_prime",
                    json!({"c1": rat_to_string(&pp.c1), "L": l_map}),
                )
                .build();
            emit(cli, &doc);
            Ok(0)
        }
    }
}

fn require_spec(cli: &Cli) -> Result<SpecFile, String> {
    let path = cli
        .spec
        .as_ref()
        .ok_or_else(|| "this subcommand requires --spec PATH".to_string())?;
    load_spec(path).map_err(|e| e.to_string())
}

fn truncation_of(cli: &Cli, spec: &SpecFile) -> HalfInt {
    cli.truncation
        .or(spec.truncation)
        .unwrap_or_else(|| HalfInt::from_int(4))
}

fn budget_of(cli: &Cli, spec: &SpecFile) -> u32 {
    cli.budget
        .or_else(|| spec.budget.map(|b| b as u32))
        .unwrap_or(6)
}

fn build_handle(cli: &Cli, spec: &SpecFile) -> Result<ModuleHandle, String> {
    let n = truncation_of(cli, spec);
    let built = match cli.budget.or_else(|| spec.budget.map(|b| b as u32)) {
        Some(b) => build_module_with_budget(spec.module.clone(), n, b),
        None => build_module(spec.module.clone(), n),
    };
    built.map_err(|e| e.to_string())
}

fn all_grams(handle: &ModuleHandle) -> Result<Vec<GramMatrix>, String> {
    let mut out = Vec::new();
    let mut t = 1;
    while t <= handle.truncation.twice() {
        let d = HalfInt::from_twice(t);
        if !handle.basis_at(d).is_empty() {
            out.push(gram_matrix(handle, d).map_err(|e| e.to_string())?);
        }
        t += 1;
    }
    Ok(out)
}

fn pass_code(reports: &[RelationReport]) -> u8 {
    if reports.iter().all(|r| r.pass) {
        0
    } else {
        EXIT_FAIL
    }
}

fn verdict_code(v: &SimplicityVerdict) -> u8 {
    match v {
        SimplicityVerdict::FormulaSimple | SimplicityVerdict::NoObstructionUpTo(_) => 0,
        SimplicityVerdict::FormulaNotSimple | SimplicityVerdict::ObstructionAt { .. } => EXIT_FAIL,
        SimplicityVerdict::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    }
}

fn emit(cli: &Cli, doc: &serde_json::Value) {
    let text = match cli.format {
        Format::Json => render_json(doc),
        Format::Table => render_table(doc),
    };
    print!("{text}");
}
