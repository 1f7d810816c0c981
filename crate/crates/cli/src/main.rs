//! Command-line harness: eigenvalue reports, cut and detachment sweeps,
//! degenerating-family studies, shape optimization runs, and fill
//! comparisons. Every command writes flat artifacts (JSON + CSV) into an
//! output directory together with a run record that ties them to the
//! configuration hash, so reruns with the same inputs land byte-identical
//! data files.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use sha2::{Digest, Sha256};

use robinpoly::families::Family;
use robinpoly::fem::{assemble, converged_eigs, robin_eigs, FemError, SpectrumResult};
use robinpoly::geom::construct::detach_cracks;
use robinpoly::geom::hausdorff::hc_distance;
use robinpoly::geom::json::{load, save, PolygonIoError};
use robinpoly::geom::measures::{area, generalized_perimeter, side_count};
use robinpoly::geom::{ConstraintSpec, GeneralizedPolygon, GeometryError};
use robinpoly::mesh::{mesh, MeshError};
use robinpoly::objective::{ObjectiveError, ObjectiveKind, ObjectiveSpec};
use robinpoly::optim::{
    cut_improves, fill_improves, optimize, OptimError, OptimizationProblem, Parameterization,
};

#[derive(Parser)]
#[command(
    name = "robinpoly",
    version,
    about = "Robin-Laplacian eigenvalues and shape experiments on generalized polygons"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve the lowest eigenvalues of one polygon and report convergence
    Eigs {
        /// Polygon JSON file
        #[arg(long)]
        polygon: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// Number of eigenvalues
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Coarsest mesh size
        #[arg(long, default_value_t = 0.1)]
        h: f64,
        /// Refinement levels (1 solves once, no extrapolation)
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Output directory (default runs/eigs-<hash>)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut a convex corner at several depths and track the spectrum
    CutSweep {
        #[arg(long)]
        polygon: PathBuf,
        /// Boundary parameter, must be positive
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// Comma-separated cut depths
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long, default_value_t = 0.1)]
        h: f64,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Follow a degenerating family toward its limit shape
    Converge {
        /// pacman, mountains, or shrinking_slit
        #[arg(long)]
        family: String,
        /// Number of family members, at least 3
        #[arg(long)]
        steps: u32,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0.15)]
        h: f64,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        /// Sampling resolution for the complement Hausdorff distance
        #[arg(long, default_value_t = 0.01)]
        resolution: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a shape optimization described by a config file
    Optimize {
        /// Run-config JSON file
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Detach the cracks of a polygon at several widths and track values
    DetachSweep {
        #[arg(long)]
        polygon: PathBuf,
        /// Comma-separated detachment widths
        #[arg(long, value_delimiter = ',', required = true)]
        eps: Vec<f64>,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0.1)]
        h: f64,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        #[arg(long, default_value_t = 0.01)]
        resolution: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a polygon against its filled version (holes and cracks erased)
    FillCompare {
        #[arg(long)]
        polygon: PathBuf,
        /// Boundary parameter, must be negative
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 0.1)]
        h: f64,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Validation(String),
    Solver(String),
}

impl From<PolygonIoError> for CliError {
    fn from(e: PolygonIoError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ObjectiveError> for CliError {
    fn from(e: ObjectiveError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(format!("i/o failure: {}", e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Validation(format!("bad JSON: {}", e))
    }
}

impl From<FemError> for CliError {
    fn from(e: FemError) -> Self {
        match e {
            FemError::InvalidParameter(_) => CliError::Validation(e.to_string()),
            FemError::Mesh(MeshError::BadSize(_)) => CliError::Validation(e.to_string()),
            _ => CliError::Solver(e.to_string()),
        }
    }
}

impl From<MeshError> for CliError {
    fn from(e: MeshError) -> Self {
        match e {
            MeshError::BadSize(_) => CliError::Validation(e.to_string()),
            _ => CliError::Solver(e.to_string()),
        }
    }
}

impl From<OptimError> for CliError {
    fn from(e: OptimError) -> Self {
        match e {
            OptimError::AllRestartsFailed(_) => CliError::Solver(e.to_string()),
            OptimError::Fem(f) => f.into(),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => {}
        Err(CliError::Validation(m)) => {
            eprintln!("error: {}", m);
            std::process::exit(2);
        }
        Err(CliError::Solver(m)) => {
            eprintln!("solver error: {}", m);
            std::process::exit(3);
        }
    }
}

/// Invocation identity: command name, normalized arguments, and the raw
/// bytes of every input file, hashed together.
struct RunContext {
    command: String,
    hash: String,
    inputs: Vec<String>,
    out_dir: PathBuf,
    outputs: Vec<String>,
}

impl RunContext {
    fn new(
        command: &str,
        args: &[(&str, String)],
        input_files: &[&Path],
        out: Option<PathBuf>,
    ) -> Result<Self, CliError> {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        for (name, value) in args {
            hasher.update([0]);
            hasher.update(name.as_bytes());
            hasher.update([0x3d]);
            hasher.update(value.as_bytes());
        }
        let mut inputs = Vec::new();
        for path in input_files {
            let bytes = std::fs::read(path)
                .map_err(|e| CliError::Validation(format!("cannot read {}: {}", path.display(), e)))?;
            hasher.update([0]);
            hasher.update(&bytes);
            inputs.push(path.display().to_string());
        }
        let hash = hex(&hasher.finalize());
        let out_dir = out.unwrap_or_else(|| PathBuf::from(format!("runs/{}-{}", command, &hash[..8])));
        std::fs::create_dir_all(&out_dir)?;
        Ok(RunContext {
            command: command.to_string(),
            hash,
            inputs,
            out_dir,
            outputs: Vec::new(),
        })
    }

    fn path(&mut self, file: &str) -> PathBuf {
        let p = self.out_dir.join(file);
        self.outputs.push(p.display().to_string());
        p
    }

    fn write_csv(&mut self, file: &str, schema: &str, header: &[&str], rows: &[Vec<String>]) -> Result<PathBuf, CliError> {
        let mut text = String::new();
        let _ = writeln!(text, "# schema: {}/1; config: {}", schema, self.hash);
        let _ = writeln!(text, "{}", header.join(","));
        for row in rows {
            let _ = writeln!(text, "{}", row.join(","));
        }
        let p = self.path(file);
        std::fs::write(&p, text)?;
        Ok(p)
    }

    fn write_json(&mut self, file: &str, value: &serde_json::Value) -> Result<PathBuf, CliError> {
        let p = self.path(file);
        std::fs::write(&p, serde_json::to_string_pretty(value).expect("artifact serialization"))?;
        Ok(p)
    }

    /// The record itself is the one artifact that carries the wall-clock
    /// timestamp, so the data files stay reproducible byte for byte.
    fn finish(self) -> Result<(), CliError> {
        let record = serde_json::json!({
            "config_hash": self.hash,
            "timestamp": chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "tool_version": env!("CARGO_PKG_VERSION"),
        });
        let p = self.out_dir.join("run.json");
        std::fs::write(&p, serde_json::to_string_pretty(&record).expect("run record"))?;
        println!("wrote {}", self.out_dir.display());
        Ok(())
    }
}

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        let _ = write!(s, "{:02x}", b);
    }
    s
}

fn fmt(v: f64) -> String {
    format!("{:.12e}", v)
}

fn solve(
    poly: &GeneralizedPolygon,
    beta: f64,
    k: usize,
    h: f64,
    levels: usize,
) -> Result<SpectrumResult, CliError> {
    if levels == 0 {
        return Err(CliError::Validation("levels must be at least 1".into()));
    }
    if levels == 1 {
        let m = mesh(poly, h)?;
        let forms = assemble(&m);
        Ok(robin_eigs(&forms, beta, k)?)
    } else {
        Ok(converged_eigs(poly, beta, k, h, levels)?)
    }
}

fn lam_header(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("lam_{}", i)).collect()
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Eigs { polygon, beta, k, h, levels, out } => cmd_eigs(&polygon, beta, k, h, levels, out),
        Cmd::CutSweep { polygon, beta, eps, h, levels, out } => {
            cmd_cut_sweep(&polygon, beta, &eps, h, levels, out)
        }
        Cmd::Converge { family, steps, beta, k, h, levels, resolution, out } => {
            cmd_converge(&family, steps, beta, k, h, levels, resolution, out)
        }
        Cmd::Optimize { config, out } => cmd_optimize(&config, out),
        Cmd::DetachSweep { polygon, eps, beta, k, h, levels, resolution, out } => {
            cmd_detach_sweep(&polygon, &eps, beta, k, h, levels, resolution, out)
        }
        Cmd::FillCompare { polygon, beta, k, h, levels, out } => {
            cmd_fill_compare(&polygon, beta, k, h, levels, out)
        }
    }
}

fn cmd_eigs(
    polygon: &Path,
    beta: f64,
    k: usize,
    h: f64,
    levels: usize,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let mut ctx = RunContext::new(
        "eigs",
        &[
            ("beta", fmt(beta)),
            ("k", k.to_string()),
            ("h", fmt(h)),
            ("levels", levels.to_string()),
        ],
        &[polygon],
        out,
    )?;
    let doc = load(polygon)?;
    let spectrum = solve(&doc.polygon, beta, k, h, levels)?;

    // per-level raw values; a single solve reports itself as level 1
    let mut rows = Vec::new();
    match &spectrum.levels {
        Some(hist) => {
            for (li, values) in hist.values.iter().enumerate() {
                let mut row = vec![(li + 1).to_string(), fmt(hist.hs[li])];
                row.extend(values.iter().map(|&v| fmt(v)));
                rows.push(row);
            }
        }
        None => {
            let mut row = vec!["1".to_string(), fmt(spectrum.mesh_h)];
            row.extend(spectrum.eigenvalues.iter().map(|&v| fmt(v)));
            rows.push(row);
        }
    }
    let mut header = vec!["level".to_string(), "h".to_string()];
    header.extend(lam_header(k));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    ctx.write_csv("convergence.csv", "eigs-convergence", &header_refs, &rows)?;

    let report = serde_json::json!({
        "schema": "spectrum/1",
        "config": ctx.hash,
        "name": doc.name,
        "beta": beta,
        "k": k,
        "h": h,
        "levels": levels,
        "area": area(&doc.polygon),
        "gen_perimeter": generalized_perimeter(&doc.polygon),
        "side_count": side_count(&doc.polygon),
        "components": doc.polygon.components().len(),
        "spectrum": spectrum,
    });
    ctx.write_json("spectrum.json", &report)?;
    println!(
        "lam_1 = {:.9} (beta = {}, {} level{})",
        report["spectrum"]["eigenvalues"][0].as_f64().unwrap_or(f64::NAN),
        beta,
        levels,
        if levels == 1 { "" } else { "s" }
    );
    ctx.finish()
}

fn cmd_cut_sweep(
    polygon: &Path,
    beta: f64,
    eps: &[f64],
    h: f64,
    levels: usize,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let mut eps_sorted = eps.to_vec();
    eps_sorted.sort_by(f64::total_cmp);
    let mut ctx = RunContext::new(
        "cut-sweep",
        &[
            ("beta", fmt(beta)),
            ("eps", eps_sorted.iter().map(|e| fmt(*e)).collect::<Vec<_>>().join(",")),
            ("h", fmt(h)),
            ("levels", levels.to_string()),
        ],
        &[polygon],
        out,
    )?;
    let doc = load(polygon)?;
    let objective = ObjectiveSpec::new(ObjectiveKind::FirstEigenvalue, beta);
    let report = cut_improves(&doc.polygon, &objective, &eps_sorted, h, levels)?;

    let rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                fmt(r.eps),
                fmt(r.values[0]),
                fmt(r.values[1]),
                fmt((r.values[0] - report.base_values[0]) / r.eps),
                fmt((r.values[1] - report.base_values[1]) / r.eps),
            ]
        })
        .collect();
    ctx.write_csv(
        "cut_sweep.csv",
        "cut-sweep",
        &["eps", "lam_1", "lam_2", "dlam_1_per_eps", "dlam_2_per_eps"],
        &rows,
    )?;

    let summary = serde_json::json!({
        "schema": "cut-report/1",
        "config": ctx.hash,
        "name": doc.name,
        "beta": beta,
        "corner_vertex": report.corner_vertex,
        "base_lam_1": report.base_values[0],
        "base_lam_2": report.base_values[1],
        "slope_first": report.slope_first,
        "r_squared": report.r_squared,
        "growth_ratio": report.growth_ratio,
        "objective_decreased": report.objective_decreased,
    });
    ctx.write_json("cut_report.json", &summary)?;
    println!(
        "slope of lam_1 change: {:.6} (R^2 = {:.4})",
        report.slope_first, report.r_squared
    );
    ctx.finish()
}

#[allow(clippy::too_many_arguments)]
fn cmd_converge(
    family: &str,
    steps: u32,
    beta: f64,
    k: usize,
    h: f64,
    levels: usize,
    resolution: f64,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let fam = Family::parse(family).ok_or_else(|| {
        CliError::Validation(format!(
            "unknown family {:?}; expected pacman, mountains, or shrinking_slit",
            family
        ))
    })?;
    if steps < 3 {
        return Err(CliError::Validation(format!(
            "need at least 3 steps, got {}",
            steps
        )));
    }
    let mut ctx = RunContext::new(
        "converge",
        &[
            ("family", fam.name().to_string()),
            ("steps", steps.to_string()),
            ("beta", fmt(beta)),
            ("k", k.to_string()),
            ("h", fmt(h)),
            ("levels", levels.to_string()),
            ("resolution", fmt(resolution)),
        ],
        &[],
        out,
    )?;

    let limit = fam.limit();
    let limit_spectrum = solve(&limit, beta, k, h, levels)?;

    let mut rows = Vec::new();
    let mut distances = Vec::new();
    let mut first_diffs = Vec::new();
    for step in 0..steps {
        let member = fam.member(step)?;
        let dist = hc_distance(&member, &limit, resolution)?;
        let spectrum = solve(&member, beta, k, h, levels)?;
        let mut row = vec![step.to_string(), fmt(dist)];
        row.extend(spectrum.eigenvalues.iter().map(|&v| fmt(v)));
        rows.push(row);
        distances.push(dist);
        first_diffs.push((spectrum.eigenvalues[0] - limit_spectrum.eigenvalues[0]).abs());
    }
    let mut header = vec!["step".to_string(), "hc_distance".to_string()];
    header.extend(lam_header(k));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    ctx.write_csv("converge.csv", "converge", &header_refs, &rows)?;

    let decreasing = distances.windows(2).all(|w| w[1] < w[0]);
    let summary = serde_json::json!({
        "schema": "converge/1",
        "config": ctx.hash,
        "family": fam.name(),
        "beta": beta,
        "limit_eigenvalues": limit_spectrum.eigenvalues,
        "limit_side_count": side_count(&limit),
        "limit_components": limit.components().len(),
        "hc_distances": distances,
        "distance_decreasing": decreasing,
        "final_first_gap": first_diffs.last(),
    });
    ctx.write_json("converge.json", &summary)?;
    println!(
        "{}: hc distance {} -> {}, |lam_1 - limit| = {:.3e} at finest step",
        fam.name(),
        fmt(distances[0]),
        fmt(*distances.last().unwrap()),
        first_diffs.last().unwrap()
    );
    ctx.finish()
}

#[derive(serde::Deserialize)]
struct ConfigFile {
    problem: RawProblem,
}

#[derive(serde::Deserialize)]
struct RawProblem {
    #[serde(rename = "N")]
    n: usize,
    beta: Option<f64>,
    constraint: ConstraintSpec,
    objective: serde_json::Value,
    restarts: usize,
    seed: u64,
    mesh_h: f64,
    max_iters: usize,
    #[serde(default)]
    parameterization: Parameterization,
}

fn parse_config(text: &str) -> Result<OptimizationProblem, CliError> {
    let file: ConfigFile = serde_json::from_str(text)?;
    let raw = file.problem;

    // the boundary parameter may sit beside the objective or inside it;
    // when both are present they must agree
    let mut obj_value = raw.objective;
    match (&obj_value.get("beta"), raw.beta) {
        (None, Some(beta)) => {
            obj_value
                .as_object_mut()
                .ok_or_else(|| CliError::Validation("objective must be a JSON object".into()))?
                .insert("beta".into(), serde_json::json!(beta));
        }
        (None, None) => {
            return Err(CliError::Validation(
                "no beta given, neither at the problem level nor inside the objective".into(),
            ));
        }
        (Some(inner), Some(outer)) => {
            let inner = inner.as_f64().unwrap_or(f64::NAN);
            if inner != outer {
                return Err(CliError::Validation(format!(
                    "conflicting beta values: problem level {} vs objective {}",
                    outer, inner
                )));
            }
        }
        (Some(_), None) => {}
    }
    let objective: ObjectiveSpec = serde_json::from_value(obj_value)?;

    Ok(OptimizationProblem {
        objective,
        constraint: raw.constraint,
        side_budget: raw.n,
        restarts: raw.restarts,
        seed: raw.seed,
        mesh_h: raw.mesh_h,
        max_iters: raw.max_iters,
        parameterization: raw.parameterization,
    })
}

fn cmd_optimize(config: &Path, out: Option<PathBuf>) -> Result<(), CliError> {
    let mut ctx = RunContext::new("optimize", &[], &[config], out)?;
    let text = std::fs::read_to_string(config)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {}", config.display(), e)))?;
    let problem = parse_config(&text)?;
    let result = optimize(&problem)?;

    let rows: Vec<Vec<String>> = result
        .history
        .iter()
        .map(|e| {
            vec![
                e.iter.to_string(),
                fmt(e.value),
                (e.feasible as u8).to_string(),
                fmt(e.area),
                fmt(e.gen_perimeter),
            ]
        })
        .collect();
    ctx.write_csv(
        "history.csv",
        "optimize-history",
        &["iter", "value", "feasible", "area", "gen_perimeter"],
        &rows,
    )?;

    let poly_path = ctx.path("best_polygon.json");
    save(&poly_path, "optimized", &result.best_polygon)?;

    let report = serde_json::json!({
        "schema": "optimize-result/1",
        "config": ctx.hash,
        "best_value": result.best_value,
        "saturated": result.saturated,
        "constraint_residual": result.constraint_residual,
        "area": area(&result.best_polygon),
        "gen_perimeter": generalized_perimeter(&result.best_polygon),
        "side_count": side_count(&result.best_polygon),
        "iterations": result.history.len(),
        "spectrum": result.spectrum,
        "best_polygon_file": poly_path.display().to_string(),
    });
    ctx.write_json("result.json", &report)?;
    println!(
        "best value {:.9}, constraint residual {:.3e}, saturated: {}",
        result.best_value, result.constraint_residual, result.saturated
    );
    ctx.finish()
}

#[allow(clippy::too_many_arguments)]
fn cmd_detach_sweep(
    polygon: &Path,
    eps: &[f64],
    beta: f64,
    k: usize,
    h: f64,
    levels: usize,
    resolution: f64,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    // sweep runs from the widest slot toward zero
    let mut eps_sorted = eps.to_vec();
    eps_sorted.sort_by(|a, b| b.total_cmp(a));
    let mut ctx = RunContext::new(
        "detach-sweep",
        &[
            ("eps", eps_sorted.iter().map(|e| fmt(*e)).collect::<Vec<_>>().join(",")),
            ("beta", fmt(beta)),
            ("k", k.to_string()),
            ("h", fmt(h)),
            ("levels", levels.to_string()),
            ("resolution", fmt(resolution)),
        ],
        &[polygon],
        out,
    )?;
    let doc = load(polygon)?;
    if !doc.polygon.has_cracks() {
        return Err(CliError::Validation(
            "detachment needs a polygon with at least one crack".into(),
        ));
    }

    let base = solve(&doc.polygon, beta, k, h, levels)?;
    let base_area = area(&doc.polygon);
    let base_per = generalized_perimeter(&doc.polygon);

    let mut rows = Vec::new();
    let mut diffs = Vec::new();
    for &e in &eps_sorted {
        if !(e.is_finite() && e > 0.0) {
            return Err(CliError::Validation(format!(
                "detachment widths must be positive, got {}",
                e
            )));
        }
        let detached = detach_cracks(&doc.polygon, e)?;
        let dist = hc_distance(&detached, &doc.polygon, resolution)?;
        let spectrum = solve(&detached, beta, k, h, levels)?;
        let mut row = vec![
            fmt(e),
            fmt(dist),
            fmt(area(&detached)),
            fmt(generalized_perimeter(&detached)),
        ];
        row.extend(spectrum.eigenvalues.iter().map(|&v| fmt(v)));
        rows.push(row);
        diffs.push((spectrum.eigenvalues[0] - base.eigenvalues[0]).abs());
    }
    let mut header = vec![
        "eps".to_string(),
        "hc_distance".to_string(),
        "area".to_string(),
        "gen_perimeter".to_string(),
    ];
    header.extend(lam_header(k));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    ctx.write_csv("detach_sweep.csv", "detach-sweep", &header_refs, &rows)?;

    let summary = serde_json::json!({
        "schema": "detach-report/1",
        "config": ctx.hash,
        "name": doc.name,
        "beta": beta,
        "base_eigenvalues": base.eigenvalues,
        "base_area": base_area,
        "base_gen_perimeter": base_per,
        "first_gaps": diffs,
        "gaps_decreasing": diffs.windows(2).all(|w| w[1] <= w[0]),
    });
    ctx.write_json("detach_report.json", &summary)?;
    println!(
        "|lam_1(P_eps) - lam_1(P)|: {} -> {} over {} widths",
        fmt(diffs[0]),
        fmt(*diffs.last().unwrap()),
        diffs.len()
    );
    ctx.finish()
}

fn cmd_fill_compare(
    polygon: &Path,
    beta: f64,
    k: usize,
    h: f64,
    levels: usize,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let mut ctx = RunContext::new(
        "fill-compare",
        &[
            ("beta", fmt(beta)),
            ("k", k.to_string()),
            ("h", fmt(h)),
            ("levels", levels.to_string()),
        ],
        &[polygon],
        out,
    )?;
    let doc = load(polygon)?;
    let objective = ObjectiveSpec::new(ObjectiveKind::FirstEigenvalue, beta);
    let report = fill_improves(&doc.polygon, &objective, k, h, levels.max(2))?;

    let summary = serde_json::json!({
        "schema": "fill-report/1",
        "config": ctx.hash,
        "name": doc.name,
        "beta": beta,
        "original_values": report.original_values,
        "filled_values": report.filled_values,
        "per_original": report.per_original,
        "per_filled": report.per_filled,
        "monotone_ok": report.monotone_ok,
        "tolerance": report.tolerance,
        "unchanged": report.unchanged,
    });
    ctx.write_json("fill_compare.json", &summary)?;
    println!(
        "filling: lam_1 {} -> {}, perimeter {} -> {}, monotone: {}",
        fmt(report.original_values[0]),
        fmt(report.filled_values[0]),
        fmt(report.per_original),
        fmt(report.per_filled),
        report.monotone_ok
    );
    ctx.finish()
}
