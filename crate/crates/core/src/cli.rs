//! Command line front end: `frame`, `lk`, `classify`, `mesh`.
//!
//! Exit codes: 0 success, 1 numeric or I/O failure (or a check outside
//! tolerance), 2 unreadable or invalid configuration.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use log::{debug, info, warn};

use crate::classify::theorem_suite;
use crate::config::{ConfigError, RunConfig};
use crate::frenet::integrate_frame;
use crate::frenet::FrenetFrame;
use crate::mesh::{build_mesh, write_mesh_csv, write_obj};
use crate::minkowski::Vec4;
use crate::report::{
    frame_case_report, lk_family_report, suite_table, write_atomic, write_lk_csv, FrameReport, LkSummary,
    REPORT_SCHEMA_VERSION,
};

// stdout that tolerates a closed pipe (`tubular-lk lk | head`)
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tubular-lk", version, about = "L1/L2 Gauss-map operators of tubular hypersurfaces in Minkowski 4-space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON configuration; defaults apply when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (overrides `output.dir`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for grid evaluation.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Integrate the Frenet frames and report their drift.
    Frame,
    /// Evaluate L1N and L2N by both routes and compare them.
    Lk,
    /// Run the Gauss-map theorem suite.
    Classify,
    /// Emit OBJ meshes of fixed-s slices with a scalar CSV.
    Mesh,
}

#[derive(Debug)]
enum Failure {
    Config(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Config(_) => EXIT_CONFIG,
            Failure::Runtime(_) => EXIT_FAILURE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Runtime(m) => m,
        }
    }
}

impl From<crate::error::Error> for Failure {
    fn from(e: crate::error::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, Failure> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Config(format!("cannot read config {}: {e}", path.display())))?;
    RunConfig::from_json_str(&text).map_err(|e| match e {
        ConfigError::Parse { .. } => Failure::Config(format!("{}: {e}", path.display())),
        ConfigError::Invalid(_) => Failure::Config(format!("{}: {e}", path.display())),
    })
}

struct Output {
    dir: PathBuf,
}

impl Output {
    fn new(cli: &Cli, config: &RunConfig) -> Result<Self, Failure> {
        let dir = cli
            .out
            .clone()
            .or_else(|| config.output.dir.clone())
            .unwrap_or_else(|| PathBuf::from("out"));
        std::fs::create_dir_all(&dir)
            .map_err(|e| Failure::Runtime(format!("cannot create output directory {}: {e}", dir.display())))?;
        Ok(Output { dir })
    }

    fn write(&self, name: &str, bytes: &[u8]) -> Result<PathBuf, Failure> {
        let path = self.dir.join(name);
        write_atomic(&path, bytes).map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
        info!("wrote {}", path.display());
        Ok(path)
    }
}

fn json(value: &impl serde::Serialize) -> Result<Vec<u8>, Failure> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| Failure::Runtime(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn cmd_frame(config: &RunConfig, out: &Output) -> Result<bool, Failure> {
    let k = config.curvatures();
    let mut cases = Vec::new();
    let mut seen = Vec::new();
    for &family in &config.families {
        let case = family.curve_case();
        if seen.contains(&case) {
            continue;
        }
        seen.push(case);
        let curve = integrate_frame(&k, config.s_range(), Vec4::ZERO, FrenetFrame::standard(case), config.step)?;
        let rep = frame_case_report(family, &curve, config.tolerances.frame);
        say!(
            "{:<14} orthonormality {:.3e}  unit speed {:.3e}  velocity {:.3e}  {}",
            rep.case,
            rep.max_orthonormality_drift,
            rep.max_unit_speed_drift,
            rep.max_velocity_defect,
            if rep.within_tolerance { "ok" } else { "OUT OF TOLERANCE" }
        );
        cases.push(rep);
    }
    let report = FrameReport {
        schema_version: REPORT_SCHEMA_VERSION,
        step: config.step,
        s_range: config.s_range,
        tolerance: config.tolerances.frame,
        cases,
    };
    out.write("frame.json", &json(&report)?)?;
    Ok(report.within_tolerance())
}

fn cmd_lk(config: &RunConfig, out: &Output) -> Result<bool, Failure> {
    let k = config.curvatures();
    let opts = config.numeric_options();
    let mut families = Vec::new();
    let mut rows = Vec::new();
    for &family in &config.families {
        let spec = config.tube(family, &k)?;
        let mut rep = lk_family_report(&spec, config.grid, &opts, config.tolerances.agreement)?;
        if rep.points == 0 {
            return Err(Failure::Runtime(format!(
                "{family}: no usable grid points, all {} are singular",
                rep.excluded
            )));
        }
        let worst = rep.terms.iter().map(|t| t.max_scaled_diff).fold(0.0, f64::max);
        if rep.agreement() {
            say!("{family:<14} agreement  max scaled |numeric - closed| {worst:.3e}  ({} points, {} excluded)", rep.points, rep.excluded);
        } else {
            for t in rep.discrepancies() {
                say!(
                    "{family:<14} DISCREPANCY {}  max |diff| {:.3e} scaled {:.3e} at (s, t, w) = ({:.4}, {:.4}, {:.4}), margin {:.2e}",
                    t.term,
                    t.max_abs_diff,
                    t.max_scaled_diff,
                    t.worst_point.0,
                    t.worst_point.1,
                    t.worst_point.2,
                    t.worst_margin
                );
            }
        }
        rows.append(&mut rep.rows);
        families.push(rep);
    }
    let mut csv = Vec::new();
    write_lk_csv(&mut csv, &rows)?;
    out.write("lk.csv", &csv)?;
    let summary = LkSummary {
        schema_version: REPORT_SCHEMA_VERSION,
        agreement_tol: config.tolerances.agreement,
        families,
    };
    out.write("lk_summary.json", &json(&summary)?)?;
    Ok(true)
}

fn cmd_classify(config: &RunConfig, out: &Output) -> Result<bool, Failure> {
    let report = theorem_suite(&config.suite_settings());
    let table = suite_table(&report);
    {
        use std::io::Write as _;
        let _ = std::io::stdout().lock().write_all(table.as_bytes());
    }
    out.write("suite.json", &json(&report)?)?;
    out.write("suite.txt", table.as_bytes())?;
    if report.any_without_points() {
        return Err(Failure::Runtime(
            "some families have no usable grid points after singular exclusion; relax tolerances.reg or change r/k1".into(),
        ));
    }
    Ok(report.all_consistent())
}

fn cmd_mesh(config: &RunConfig, out: &Output) -> Result<bool, Failure> {
    let k = config.curvatures();
    for &family in &config.families {
        let spec = config.tube(family, &k)?;
        let mesh = build_mesh(&spec, config.mesh.slices, config.mesh.t, config.mesh.w)?;
        let label = family.label();
        let mut obj = Vec::new();
        write_obj(&mut obj, &mesh, &label).map_err(|e| Failure::Runtime(e.to_string()))?;
        let mut csv = Vec::new();
        write_mesh_csv(&mut csv, &mesh)?;
        out.write(&format!("mesh-{label}.obj"), &obj)?;
        out.write(&format!("mesh-{label}.csv"), &csv)?;
        let singular = mesh.vertices.iter().filter(|v| !v.regular).count();
        if singular > 0 {
            warn!("{label}: {singular} mesh vertices are singular");
        }
        say!("{label:<14} {} vertices, {} triangles", mesh.vertices.len(), mesh.faces.len());
    }
    Ok(true)
}

/// Run a parsed command line; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let level = if cli.verbose { "debug" } else { "warn" };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).try_init();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return EXIT_CONFIG;
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            debug!("thread pool already initialised: {e}");
        }
    }
    let result = load_config(cli.config.as_deref()).and_then(|config| {
        debug!("config: {config:?}");
        let out = Output::new(cli, &config)?;
        match cli.command {
            Command::Frame => cmd_frame(&config, &out),
            Command::Lk => cmd_lk(&config, &out),
            Command::Classify => cmd_classify(&config, &out),
            Command::Mesh => cmd_mesh(&config, &out),
        }
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILURE,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.code()
        }
    }
}
