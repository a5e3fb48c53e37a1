//! Scenario files: schema, validation, bundled catalog, and execution.
//!
//! A scenario is a JSON object
//!
//! ```json
//! {
//!   "schema": 1,
//!   "name": "groups-axioms",
//!   "description": "…",
//!   "seed": 7,
//!   "module": "groups",
//!   "params": { "trials": 1000 }
//! }
//! ```
//!
//! Execution is fully deterministic given `(scenario, seed)`: all random
//! sweeps run on the counter-based generator keyed by the seed and a
//! per-sweep stream name (see `galdual::rng`).

use galdual::contraction::ContractionMode;
use galdual::grid::DerivScheme;
use galdual::report::Report;
use galdual::verify;
use serde::{Deserialize, Serialize};

pub const SCENARIO_SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: u32,
    pub name: String,
    pub description: String,
    #[serde(default)]
    pub seed: u64,
    pub module: String,
    #[serde(default)]
    pub params: serde_json::Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupsParams {
    #[serde(default = "default_trials")]
    pub trials: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraParams {
    #[serde(default = "default_trials_algebra")]
    pub trials: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractionParams {
    pub mode: ContractionMode,
    pub beta: f64,
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
    #[serde(default = "default_c")]
    pub c: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepsParams {
    #[serde(default = "default_pairs")]
    pub pairs: usize,
    #[serde(default = "default_grid")]
    pub grid: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElectrostaticsParams {
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default = "default_box_len")]
    pub box_len: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CovarianceParams {
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default = "default_frames")]
    pub frames: usize,
    pub inflation_bound: f64,
    pub scheme: DerivScheme,
}

fn default_trials() -> usize {
    1000
}
fn default_trials_algebra() -> usize {
    500
}
fn default_pairs() -> usize {
    200
}
fn default_grid() -> usize {
    64
}
fn default_sigma() -> f64 {
    1.0
}
fn default_box_len() -> f64 {
    25.6
}
fn default_frames() -> usize {
    20
}
fn default_c() -> f64 {
    1.0
}

/// Validation failure: exit code 2 territory.
#[derive(Debug)]
pub struct SchemaError(pub String);

impl std::fmt::Display for SchemaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "scenario schema error: {}", self.0)
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, SchemaError> {
    let scenario: Scenario =
        serde_json::from_str(text).map_err(|e| SchemaError(e.to_string()))?;
    if scenario.schema != SCENARIO_SCHEMA {
        return Err(SchemaError(format!(
            "unsupported schema {}, expected {SCENARIO_SCHEMA}",
            scenario.schema
        )));
    }
    if scenario.name.is_empty() {
        return Err(SchemaError("scenario name must not be empty".into()));
    }
    // validate params eagerly so malformed scenarios fail before running
    validate(&scenario)?;
    Ok(scenario)
}

fn params<T: serde::de::DeserializeOwned>(s: &Scenario) -> Result<T, SchemaError> {
    serde_json::from_value(s.params.clone())
        .map_err(|e| SchemaError(format!("invalid params for module {}: {e}", s.module)))
}

fn validate(s: &Scenario) -> Result<(), SchemaError> {
    match s.module.as_str() {
        "groups" => params::<GroupsParams>(s).map(|_| ()),
        "algebra" => params::<AlgebraParams>(s).map(|_| ()),
        "contraction" => params::<ContractionParams>(s).map(|_| ()),
        "reps" => {
            let p = params::<RepsParams>(s)?;
            check_grid(p.grid)
        }
        "em-electrostatics" => {
            let p = params::<ElectrostaticsParams>(s)?;
            check_grid(p.grid)
        }
        "em-covariance" => {
            let p = params::<CovarianceParams>(s)?;
            check_grid(p.grid)
        }
        "em-gauge" | "em-magnetic-mms" => Ok(()),
        other => Err(SchemaError(format!("unknown module '{other}'"))),
    }
}

fn check_grid(n: usize) -> Result<(), SchemaError> {
    if !n.is_power_of_two() || !(8..=256).contains(&n) {
        return Err(SchemaError(format!(
            "grid size must be a power of two in [8, 256], got {n}"
        )));
    }
    Ok(())
}

/// Execute a validated scenario.
pub fn run_scenario(s: &Scenario) -> Result<Report, SchemaError> {
    let mut report = match s.module.as_str() {
        "groups" => {
            let p: GroupsParams = params(s)?;
            verify::verify_groups(s.seed, p.trials)
        }
        "algebra" => {
            let p: AlgebraParams = params(s)?;
            verify::verify_algebra(s.seed, p.trials)
        }
        "contraction" => {
            let p: ContractionParams = params(s)?;
            verify::verify_contraction(p.mode, p.beta, p.a, p.b, p.c)
        }
        "reps" => {
            let p: RepsParams = params(s)?;
            verify::verify_reps(s.seed, p.pairs, p.grid)
        }
        "em-electrostatics" => {
            let p: ElectrostaticsParams = params(s)?;
            verify::verify_electrostatics(&verify::ElectrostaticsSetup {
                n: p.grid,
                sigma: p.sigma,
                box_len: p.box_len,
            })
        }
        "em-covariance" => {
            let p: CovarianceParams = params(s)?;
            verify::verify_covariance(s.seed, p.grid, p.frames, p.inflation_bound, p.scheme)
        }
        "em-gauge" => verify::verify_gauge(s.seed),
        "em-magnetic-mms" => verify::verify_magnetic_mms(),
        other => return Err(SchemaError(format!("unknown module '{other}'"))),
    };
    report.scenario = serde_json::to_value(s).unwrap_or_default();
    Ok(report)
}

/// Contraction scenarios also emit a CSV table and a JSON summary.
pub fn contraction_artifacts(
    s: &Scenario,
) -> Result<Option<(String, String)>, SchemaError> {
    if s.module != "contraction" {
        return Ok(None);
    }
    let p: ContractionParams = params(s)?;
    let schedule: Vec<f64> = galdual::contraction::default_alpha_schedule()
        .into_iter()
        .filter(|&alpha| alpha > p.beta.abs())
        .collect();
    let rep = galdual::contraction::convergence_report(p.mode, p.beta, p.a, p.b, p.c, &schedule)
        .map_err(|e| SchemaError(e.to_string()))?;
    let mut csv = String::from("alpha,distance\n");
    for row in &rep.rows {
        csv.push_str(&format!("{},{}\n", row.alpha, row.distance));
    }
    let summary = serde_json::to_string_pretty(&rep).map_err(|e| SchemaError(e.to_string()))?;
    Ok(Some((csv, summary)))
}

/// Electrostatics scenarios also emit a radial-profile CSV slice.
pub fn electrostatics_csv(s: &Scenario) -> Result<Option<String>, SchemaError> {
    if s.module != "em-electrostatics" {
        return Ok(None);
    }
    let p: ElectrostaticsParams = params(s)?;
    Ok(Some(verify::electrostatics_radial_csv(&verify::ElectrostaticsSetup {
        n: p.grid,
        sigma: p.sigma,
        box_len: p.box_len,
    })))
}

/// The catalog of scenarios shipped with the binary.
pub fn bundled() -> Vec<Scenario> {
    const SOURCES: &[&str] = &[
        include_str!("../scenarios/groups-axioms.json"),
        include_str!("../scenarios/algebra-tables.json"),
        include_str!("../scenarios/contract-temporal.json"),
        include_str!("../scenarios/contract-spatial.json"),
        include_str!("../scenarios/contract-superluminal.json"),
        include_str!("../scenarios/reps-uir.json"),
        include_str!("../scenarios/electrostatics-gaussian.json"),
        include_str!("../scenarios/covariance-64.json"),
        include_str!("../scenarios/covariance-128.json"),
        include_str!("../scenarios/gauge-invariance.json"),
        include_str!("../scenarios/magnetic-mms.json"),
    ];
    SOURCES
        .iter()
        .map(|text| parse_scenario(text).expect("bundled scenarios must validate"))
        .collect()
}

pub fn find_bundled(name: &str) -> Option<Scenario> {
    bundled().into_iter().find(|s| s.name == name)
}
