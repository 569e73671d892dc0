//! Command execution behind the CLI: input loading, analysis dispatch, and
//! deterministic report emission.
//!
//! Exit codes: 0 = analysis completed (verdict pass or report emitted),
//! 2 = thin-check failed with a witness (or a replay found an invalid
//! witness), 1 = usage or input error.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::curvature::{
    eigen_inequality_search, tangent_hypothesis_scan, AnalyticManifold, ManifoldFamily, Method,
};
use crate::error::{Error, Result};
use crate::io;
use crate::skeleton::{extract_skeleton, SkeletonReport};
use crate::space::FiniteGeodesicSpace;
use crate::thinness::{replay_witness, thin_check, thinness_profile, ThinOpts, ThinnessReport};
use crate::urysohn::{build_urysohn_map, UrysohnReport};
use crate::volume::volume_growth;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct GraphInput {
    pub graph: Option<PathBuf>,
    pub points: Option<PathBuf>,
    pub knn: Option<usize>,
}

impl GraphInput {
    pub fn from_graph(path: impl Into<PathBuf>) -> Self {
        GraphInput { graph: Some(path.into()), points: None, knn: None }
    }

    fn load(&self) -> Result<FiniteGeodesicSpace> {
        match (&self.graph, &self.points) {
            (Some(path), None) => io::load_graph_json(path),
            (None, Some(path)) => io::load_point_cloud_csv(path, self.knn.unwrap_or(io::DEFAULT_KNN)),
            _ => Err(Error::BadParameters(
                "exactly one of --graph or --points is required".into(),
            )),
        }
    }

    fn describe(&self) -> String {
        match (&self.graph, &self.points) {
            (Some(p), _) => p.display().to_string(),
            (_, Some(p)) => format!("points:{}", p.display()),
            _ => "<none>".into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    ThinCheck {
        input: GraphInput,
        r: f64,
        d: f64,
        t_step: Option<f64>,
        tol: Option<f64>,
        budget: Option<usize>,
        no_sampling: bool,
    },
    Profile {
        input: GraphInput,
        r_grid: Vec<f64>,
        d_grid: Vec<f64>,
        budget: Option<usize>,
    },
    Skeleton {
        input: GraphInput,
        r: f64,
        d: f64,
        evidence: Option<PathBuf>,
        budget: Option<usize>,
        emit_csv: Option<PathBuf>,
    },
    Urysohn {
        input: GraphInput,
        skeleton: PathBuf,
        r: f64,
        bin: Option<f64>,
        emit_csv: Option<PathBuf>,
    },
    CurvatureScan {
        family: ManifoldFamily,
        alpha: f64,
        k: usize,
        cap: f64,
        r_grid: Vec<f64>,
        samples: Option<u64>,
    },
    EigenSearch {
        n: usize,
        k: usize,
        eps: f64,
        c: f64,
        c1: f64,
        eps_prime: f64,
        trials: u64,
    },
    VolumeGrowth {
        input: GraphInput,
        base: Option<String>,
        t_grid: Vec<f64>,
    },
    Replay {
        report: PathBuf,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    pub seed: u64,
    pub format: Format,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: &'static str,
    command: &'static str,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<&'a GraphInput>,
    #[serde(flatten)]
    payload: &'a T,
}

fn emit<T: Serialize>(
    command: &'static str,
    seed: u64,
    input: Option<&GraphInput>,
    payload: &T,
) -> String {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        seed,
        graph: input.map(|i| i.describe()),
        input,
        payload,
    };
    let mut out = serde_json::to_string_pretty(&env).expect("report serialization");
    out.push('\n');
    out
}

#[derive(Serialize)]
struct ErrorReport {
    schema_version: &'static str,
    error_code: &'static str,
    error: String,
}

/// 17 significant digits, enough to reproduce the f64 bit pattern.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Runs a command and returns `(exit_code, primary_output)`. Module errors
/// become exit code 1 with a machine-readable JSON error report.
pub fn run_to_string(config: &RunConfig) -> (i32, String) {
    match run(config) {
        Ok((code, out)) => (code, out),
        Err(e) => {
            let report = ErrorReport {
                schema_version: SCHEMA_VERSION,
                error_code: e.code(),
                error: e.to_string(),
            };
            let mut out = serde_json::to_string_pretty(&report).unwrap();
            out.push('\n');
            (1, out)
        }
    }
}

fn run(config: &RunConfig) -> Result<(i32, String)> {
    match &config.command {
        Command::ThinCheck { input, r, d, t_step, tol, budget, no_sampling } => {
            let space = input.load()?;
            let opts = ThinOpts {
                t_step: *t_step,
                tol: *tol,
                segment_budget: *budget,
                allow_sampling: !no_sampling,
            };
            let report = thin_check(&space, *r, *d, &opts)?;
            let code = if report.passed() { 0 } else { 2 };
            Ok((code, emit("thin-check", config.seed, Some(input), &report)))
        }
        Command::Profile { input, r_grid, d_grid, budget } => {
            let space = input.load()?;
            let opts = ThinOpts { segment_budget: *budget, ..Default::default() };
            let profile = thinness_profile(&space, r_grid, d_grid, &opts)?;
            Ok((0, emit("profile", config.seed, Some(input), &profile)))
        }
        Command::Skeleton { input, r, d, evidence, budget, emit_csv } => {
            let space = input.load()?;
            let report = match evidence {
                Some(path) => load_thinness_report(path)?,
                None => {
                    let opts = ThinOpts {
                        segment_budget: Some(budget.unwrap_or(64)),
                        ..Default::default()
                    };
                    thin_check(&space, *r, *d, &opts)?
                }
            };
            let sk = extract_skeleton(&space, *r, *d, &report)?;
            let sk_report = SkeletonReport::from_skeleton(&space, &sk);
            if let Some(path) = emit_csv {
                let mut csv = String::from("vertex,param\n");
                for (id, p) in sk_report.support.iter().zip(sk_report.params.iter()) {
                    csv.push_str(&format!("{id},{}\n", fmt_float(*p)));
                }
                std::fs::write(path, csv)?;
            }
            Ok((0, emit("skeleton", config.seed, Some(input), &sk_report)))
        }
        Command::Urysohn { input, skeleton, r, bin, emit_csv } => {
            let space = input.load()?;
            let sk_report = load_skeleton_report(skeleton)?;
            let sk = sk_report.to_skeleton(&space)?;
            let map = build_urysohn_map(&space, &sk, *r, *bin)?;
            let summary = UrysohnReport::from_map(&space, &map);
            if let Some(path) = emit_csv {
                let mut csv = String::from("vertex,value\n");
                for v in space.vertices() {
                    csv.push_str(&format!("{},{}\n", space.id(v), fmt_float(map.values[v.0])));
                }
                std::fs::write(path, csv)?;
            }
            Ok((0, emit("urysohn", config.seed, Some(input), &summary)))
        }
        Command::CurvatureScan { family, alpha, k, cap, r_grid, samples } => {
            let m = AnalyticManifold::new(family.clone())?;
            let method = match samples {
                Some(samples) => Method::MonteCarlo { samples: *samples, seed: config.seed },
                None => Method::Quadrature,
            };
            let base = m.chart_at_radius(0.0);
            let scan = tangent_hypothesis_scan(&m, &base, *k, *alpha, *cap, r_grid, &method)?;
            match config.format {
                Format::Csv => {
                    let mut out = String::from("r,value,error\n");
                    for p in &scan.points {
                        out.push_str(&format!(
                            "{},{},{}\n",
                            fmt_float(p.r),
                            fmt_float(p.value),
                            fmt_float(p.error)
                        ));
                    }
                    Ok((0, out))
                }
                Format::Json => Ok((0, emit("curvature-scan", config.seed, None, &scan))),
            }
        }
        Command::EigenSearch { n, k, eps, c, c1, eps_prime, trials } => {
            let result = eigen_inequality_search(*n, *k, *eps, *c, *c1, *eps_prime, *trials, config.seed)?;
            Ok((0, emit("curvature-l14", config.seed, None, &result)))
        }
        Command::VolumeGrowth { input, base, t_grid } => {
            let space = input.load()?;
            let base = match base {
                Some(id) => space.vertex(id)?,
                None => crate::space::Vertex(0),
            };
            let vg = volume_growth(&space, base, t_grid)?;
            Ok((0, emit("volume-growth", config.seed, Some(input), &vg)))
        }
        Command::Replay { report } => {
            #[derive(Serialize)]
            struct ReplayOut {
                valid: bool,
                detail: String,
            }
            let (source, thin) = load_thin_check_file(report)?;
            let space = source.load()?;
            let (code, payload) = match &thin.witness {
                None => (0, ReplayOut { valid: true, detail: "report carries no witness".into() }),
                Some(w) => match replay_witness(&space, w, thin.r, thin.d, thin.tol) {
                    Ok(()) => (
                        0,
                        ReplayOut {
                            valid: true,
                            detail: format!("witness x={} at distance {} replays", w.x, w.dist_x_r),
                        },
                    ),
                    Err(e) => (2, ReplayOut { valid: false, detail: e.to_string() }),
                },
            };
            Ok((code, emit("replay", config.seed, Some(&source), &payload)))
        }
    }
}

fn load_json_value(path: &Path) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_thinness_report(path: &Path) -> Result<ThinnessReport> {
    let value = load_json_value(path)?;
    serde_json::from_value(value).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_skeleton_report(path: &Path) -> Result<SkeletonReport> {
    let value = load_json_value(path)?;
    serde_json::from_value(value).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_thin_check_file(path: &Path) -> Result<(GraphInput, ThinnessReport)> {
    let value = load_json_value(path)?;
    let source = value
        .get("input")
        .cloned()
        .ok_or_else(|| Error::Parse("report lacks an input description".into()))?;
    let source: GraphInput = serde_json::from_value(source)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let thin: ThinnessReport = serde_json::from_value(value)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok((source, thin))
}
