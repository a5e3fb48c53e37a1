//! Scenario-driven command-line front end.
//!
//! Exit codes: 0 all checks pass, 1 at least one check failed, 2 input or
//! schema error, 3 I/O error. Reports are written atomically (temp file +
//! rename) and are bit-reproducible for a fixed `(scenario, seed)` modulo
//! the environment block.

mod scenario;

use clap::{Args, Parser, Subcommand};
use galdual::container;
use galdual::groups::GroupElement;
use galdual::report::Report;
use galdual::reps::apply_action;
use scenario::{
    bundled, contraction_artifacts, find_bundled, parse_scenario, run_scenario, Scenario,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 2;
const EXIT_IO_ERROR: u8 = 3;

#[derive(Parser)]
#[command(
    name = "galdual",
    about = "Numerical verification of the Galilei and dual Galilei groups, their representations, and the Galilean limits of electromagnetism",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunOpts {
    /// Scenario file; `bundled:<name>` selects a shipped scenario.
    #[arg(long)]
    scenario: Option<String>,
    /// Directory for the report (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the scenario seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// List bundled scenarios.
    List {
        /// Only scenarios of this module.
        #[arg(long)]
        module: Option<String>,
    },
    /// Run one or more scenario files.
    Run {
        /// Scenario files (or `bundled:<name>`).
        #[arg(required = true)]
        scenarios: Vec<String>,
        /// Directory for reports (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run up to N scenarios concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Group axioms, realization faithfulness and duality.
    VerifyGroups(RunOpts),
    /// Structure constants, Jacobi, cocycle and extended product.
    VerifyAlgebra(RunOpts),
    /// Contraction convergence table and fitted rate (emits CSV + summary).
    Contract(RunOpts),
    /// Apply a group element to a stored wavefunction container.
    RepTransform {
        /// Input wavefunction container (binary, or JSON with --json).
        #[arg(long)]
        input: PathBuf,
        /// JSON file with the group element {flavor, b, a, v, theta, c}.
        #[arg(long)]
        element: PathBuf,
        /// Output container path.
        #[arg(long)]
        output: PathBuf,
        /// Read and write the JSON container form (small grids only).
        #[arg(long, default_value_t = false)]
        json: bool,
    },
    /// Electric-limit electrostatics pipeline.
    SolveElectrostatics(RunOpts),
    /// Frame covariance of the solved electrostatic state.
    MaxwellCovariance(RunOpts),
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CHECK_FAILURE)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> CliError {
    CliError { code: EXIT_INPUT_ERROR, message: message.into() }
}

fn io_error(message: impl std::fmt::Display) -> CliError {
    CliError { code: EXIT_IO_ERROR, message: message.to_string() }
}

fn dispatch() -> Result<bool, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::List { module } => {
            let rows: Vec<Scenario> = bundled()
                .into_iter()
                .filter(|s| module.as_deref().is_none_or(|m| s.module == m))
                .collect();
            println!("{:<24} {:<18} DESCRIPTION", "NAME", "MODULE");
            for s in &rows {
                println!("{:<24} {:<18} {}", s.name, s.module, s.description);
            }
            Ok(true)
        }
        Command::Run { scenarios, out, jobs } => {
            let loaded: Vec<Scenario> = scenarios
                .iter()
                .map(|spec| load_scenario(spec, None))
                .collect::<Result<_, _>>()?;
            run_many(loaded, out.as_deref(), jobs.max(1))
        }
        Command::VerifyGroups(opts) => {
            let s = default_or_file(&opts, "groups-axioms")?;
            run_single(s, &opts)
        }
        Command::VerifyAlgebra(opts) => {
            let s = default_or_file(&opts, "algebra-tables")?;
            run_single(s, &opts)
        }
        Command::Contract(opts) => {
            let s = default_or_file(&opts, "contract-temporal")?;
            run_single(s, &opts)
        }
        Command::SolveElectrostatics(opts) => {
            let s = default_or_file(&opts, "electrostatics-gaussian")?;
            run_single(s, &opts)
        }
        Command::MaxwellCovariance(opts) => {
            let s = default_or_file(&opts, "covariance-64")?;
            run_single(s, &opts)
        }
        Command::RepTransform { input, element, output, json } => {
            rep_transform(&input, &element, &output, json)?;
            Ok(true)
        }
    }
}

fn default_or_file(opts: &RunOpts, default_bundled: &str) -> Result<Scenario, CliError> {
    match &opts.scenario {
        Some(spec) => load_scenario(spec, opts.seed),
        None => {
            let mut s = find_bundled(default_bundled)
                .ok_or_else(|| input_error(format!("missing bundled scenario {default_bundled}")))?;
            if let Some(seed) = opts.seed {
                s.seed = seed;
            }
            Ok(s)
        }
    }
}

fn load_scenario(spec: &str, seed_override: Option<u64>) -> Result<Scenario, CliError> {
    let mut scenario = if let Some(name) = spec.strip_prefix("bundled:") {
        find_bundled(name).ok_or_else(|| input_error(format!("no bundled scenario '{name}'")))?
    } else {
        let text = std::fs::read_to_string(spec).map_err(io_error)?;
        parse_scenario(&text).map_err(|e| input_error(e.to_string()))?
    };
    if let Some(seed) = seed_override {
        scenario.seed = seed;
    }
    Ok(scenario)
}

fn run_single(scenario: Scenario, opts: &RunOpts) -> Result<bool, CliError> {
    run_many(vec![scenario], opts.out.as_deref(), 1)
}

fn run_many(scenarios: Vec<Scenario>, out: Option<&Path>, jobs: usize) -> Result<bool, CliError> {
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(io_error)?;
    }
    let results: Vec<(Scenario, Result<Report, String>)> = if jobs <= 1 || scenarios.len() <= 1 {
        scenarios
            .into_iter()
            .map(|s| {
                let r = run_scenario(&s).map_err(|e| e.to_string());
                (s, r)
            })
            .collect()
    } else {
        let chunk_size = scenarios.len().div_ceil(jobs);
        let chunks: Vec<Vec<Scenario>> =
            scenarios.chunks(chunk_size).map(|c| c.to_vec()).collect();
        let mut collected = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    scope.spawn(move || {
                        chunk
                            .into_iter()
                            .map(|s| {
                                let r = run_scenario(&s).map_err(|e| e.to_string());
                                (s, r)
                            })
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                collected.extend(h.join().expect("scenario thread panicked"));
            }
        });
        collected
    };

    let mut all_passed = true;
    let mut schema_failure = None;
    for (scenario, result) in results {
        match result {
            Err(message) => schema_failure = Some(message),
            Ok(report) => {
                galdual::verify::print_report(&report);
                if !report.passed() {
                    all_passed = false;
                }
                emit_artifacts(&scenario, &report, out)?;
            }
        }
    }
    if let Some(message) = schema_failure {
        return Err(input_error(message));
    }
    Ok(all_passed)
}

fn emit_artifacts(scenario: &Scenario, report: &Report, out: Option<&Path>) -> Result<(), CliError> {
    let report_text =
        serde_json::to_string_pretty(report).map_err(|e| input_error(e.to_string()))?;
    match out {
        None => println!("{report_text}"),
        Some(dir) => {
            write_atomic(&dir.join(format!("{}-report.json", scenario.name)), &report_text)?;
            if let Some((csv, summary)) =
                contraction_artifacts(scenario).map_err(|e| input_error(e.to_string()))?
            {
                write_atomic(&dir.join(format!("{}.csv", scenario.name)), &csv)?;
                write_atomic(&dir.join(format!("{}-summary.json", scenario.name)), &summary)?;
            }
            if let Some(csv) =
                scenario::electrostatics_csv(scenario).map_err(|e| input_error(e.to_string()))?
            {
                write_atomic(&dir.join(format!("{}-radial.csv", scenario.name)), &csv)?;
            }
        }
    }
    Ok(())
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents).map_err(io_error)?;
    std::fs::rename(&tmp, path).map_err(io_error)?;
    Ok(())
}

fn rep_transform(
    input: &Path,
    element_path: &Path,
    output: &Path,
    json: bool,
) -> Result<(), CliError> {
    let wf = if json {
        let text = std::fs::read_to_string(input).map_err(io_error)?;
        container::wavefunction_from_json(&text).map_err(|e| input_error(e.to_string()))?
    } else {
        let mut file = std::fs::File::open(input).map_err(io_error)?;
        container::read_wavefunction(&mut file).map_err(|e| input_error(e.to_string()))?
    };
    let element_text = std::fs::read_to_string(element_path).map_err(io_error)?;
    let element: GroupElement<f64> =
        serde_json::from_str(&element_text).map_err(|e| input_error(e.to_string()))?;
    let out = apply_action(&element, &wf).map_err(|e| input_error(e.to_string()))?;
    if json {
        let text = container::wavefunction_to_json(&out).map_err(|e| input_error(e.to_string()))?;
        write_atomic(output, &text)?;
    } else {
        let tmp = output.with_extension("tmp");
        let mut file = std::fs::File::create(&tmp).map_err(io_error)?;
        container::write_wavefunction(&mut file, &out).map_err(io_error)?;
        drop(file);
        std::fs::rename(&tmp, output).map_err(io_error)?;
    }
    let summary = serde_json::json!({
        "input_norm": wf.norm(),
        "output_norm": out.norm(),
        "norm_drift": (out.norm() - wf.norm()).abs(),
        "guard_band_mass": out.guard_band_mass(0.05),
    });
    println!("{summary}");
    Ok(())
}
