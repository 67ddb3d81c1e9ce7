//! Run configuration, run orchestration, output files and error tables.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::fluxes::SignalSpeedBound;
use crate::grid::{project_initial_condition, DgField, Grid1D, Grid2D, Mesh};
use crate::limiters::{LimiterConfig, TvbMode};
use crate::problems::{by_name, ProblemSpec, PROBLEM_NAMES};
use crate::sbp::{lagrange_basis_at, SbpOperator, MAX_TESTED_DEGREE};
use crate::solver::{flux_points, node_weights, InterfaceFlux, SolverConfig};
use crate::state::{entropy, GasParams, PrimitiveState};
use crate::time::{integrate, Discretization, IntegrateOptions, Integration, StepControl};

/// Mesh size: N, or Nx×Ny for 2D problems (Ny defaults to Nx).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cells {
    pub nx: usize,
    pub ny: Option<usize>,
}

impl fmt::Display for Cells {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ny {
            Some(ny) => write!(f, "{}x{}", self.nx, ny),
            None => write!(f, "{}", self.nx),
        }
    }
}

impl FromStr for Cells {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad cell count '{t}': {e}"));
        match s.split_once(['x', 'X']) {
            Some((a, b)) => Ok(Cells { nx: parse(a)?, ny: Some(parse(b)?) }),
            None => Ok(Cells { nx: parse(s)?, ny: None }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub problem: String,
    pub k: usize,
    pub cells: Cells,
    pub cfl: f64,
    pub tvb_m: f64,
    pub tvb: bool,
    pub tvb_mode: TvbMode,
    pub bounds: bool,
    pub flux: InterfaceFlux,
    pub speed_bound: SignalSpeedBound,
    /// Overrides the problem's final time.
    pub t_end: Option<f64>,
    /// Fixed time step instead of the CFL rule.
    pub dt: Option<f64>,
    pub max_steps: usize,
    pub snapshots: Vec<f64>,
    pub output: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            problem: String::new(),
            k: 1,
            cells: Cells { nx: 100, ny: None },
            cfl: 0.1,
            tvb_m: 10.0,
            tvb: true,
            tvb_mode: TvbMode::SharedFactor,
            bounds: true,
            flux: InterfaceFlux::LaxFriedrichs,
            speed_bound: SignalSpeedBound::Physical,
            t_end: None,
            dt: None,
            max_steps: 1_000_000,
            snapshots: Vec::new(),
            output: PathBuf::from("output"),
        }
    }
}

fn flux_name(f: InterfaceFlux) -> &'static str {
    match f {
        InterfaceFlux::LaxFriedrichs => "lf",
        InterfaceFlux::EntropyConservative => "ec",
    }
}

pub fn parse_flux(s: &str) -> std::result::Result<InterfaceFlux, String> {
    match s {
        "lf" => Ok(InterfaceFlux::LaxFriedrichs),
        "ec" => Ok(InterfaceFlux::EntropyConservative),
        _ => Err(format!("unknown flux '{s}' (expected lf or ec)")),
    }
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    match s {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(format!("expected a boolean, got '{s}'")),
    }
}

fn parse_num<T: FromStr>(s: &str) -> std::result::Result<T, String>
where
    T::Err: fmt::Display,
{
    s.parse::<T>().map_err(|e| format!("cannot parse '{s}': {e}"))
}

/// Parses `key=value` lines; `#` starts a comment. Unknown keys are errors.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut c = RunConfig::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Config { line: i + 1, message };
        let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected key=value, got '{line}'")))?;
        let (key, value) = (key.trim(), value.trim());
        let r: std::result::Result<(), String> = (|| {
            match key {
                "problem" => c.problem = value.to_string(),
                "k" => c.k = parse_num(value)?,
                "cells" => c.cells = value.parse()?,
                "cfl" => c.cfl = parse_num(value)?,
                "tvb_m" => c.tvb_m = parse_num(value)?,
                "tvb" => c.tvb = parse_bool(value)?,
                "tvb_mode" => {
                    c.tvb_mode = match value {
                        "shared" => TvbMode::SharedFactor,
                        "componentwise" => TvbMode::Componentwise,
                        _ => return Err(format!("unknown tvb_mode '{value}' (expected shared or componentwise)")),
                    }
                }
                "bounds" => c.bounds = parse_bool(value)?,
                "flux" => c.flux = parse_flux(value)?,
                "speed_bound" => {
                    c.speed_bound = match value {
                        "physical" => SignalSpeedBound::Physical,
                        "luminal" => SignalSpeedBound::Luminal,
                        _ => return Err(format!("unknown speed_bound '{value}' (expected physical or luminal)")),
                    }
                }
                "t_end" => c.t_end = Some(parse_num(value)?),
                "dt" => c.dt = Some(parse_num(value)?),
                "max_steps" => c.max_steps = parse_num(value)?,
                "snapshots" => {
                    c.snapshots = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(parse_num)
                        .collect::<std::result::Result<_, _>>()?
                }
                "output" => c.output = PathBuf::from(value),
                _ => return Err(format!("unknown key '{key}'")),
            }
            Ok(())
        })();
        r.map_err(err)?;
    }
    c.validate()?;
    Ok(c)
}

impl RunConfig {
    pub fn for_problem(problem: &str) -> Self {
        Self { problem: problem.to_string(), ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let problem = self.problem_spec()?;
        let bad = |m: String| Err(Error::Validation(m));
        if self.k < 1 || self.k > MAX_TESTED_DEGREE {
            return bad(format!("k must lie in 1..={MAX_TESTED_DEGREE}, got {}", self.k));
        }
        if self.cells.nx == 0 || self.cells.ny == Some(0) {
            return bad("cells must be positive".into());
        }
        if problem.dimension == 1 && self.cells.ny.is_some() {
            return bad(format!("{} is one-dimensional; use cells=N", self.problem));
        }
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return bad(format!("cfl must be positive, got {}", self.cfl));
        }
        if !(self.tvb_m >= 0.0 && self.tvb_m.is_finite()) {
            return bad(format!("tvb_m must be nonnegative, got {}", self.tvb_m));
        }
        if let Some(t) = self.t_end {
            if !(t >= 0.0 && t.is_finite()) {
                return bad(format!("t_end must be nonnegative, got {t}"));
            }
        }
        if let Some(dt) = self.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return bad(format!("dt must be positive, got {dt}"));
            }
        }
        if self.max_steps == 0 {
            return bad("max_steps must be positive".into());
        }
        Ok(())
    }

    pub fn problem_spec(&self) -> Result<ProblemSpec> {
        if self.problem.is_empty() {
            return Err(Error::UnknownProblem { name: String::new(), valid: PROBLEM_NAMES.join(", ") });
        }
        by_name(&self.problem)
    }

    /// key=value text that parses back to this config.
    pub fn to_config_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "problem={}", self.problem);
        let _ = writeln!(s, "k={}", self.k);
        let _ = writeln!(s, "cells={}", self.cells);
        let _ = writeln!(s, "cfl={}", self.cfl);
        let _ = writeln!(s, "tvb_m={}", self.tvb_m);
        let _ = writeln!(s, "tvb={}", self.tvb);
        let mode = match self.tvb_mode {
            TvbMode::SharedFactor => "shared",
            TvbMode::Componentwise => "componentwise",
        };
        let _ = writeln!(s, "tvb_mode={mode}");
        let _ = writeln!(s, "bounds={}", self.bounds);
        let _ = writeln!(s, "flux={}", flux_name(self.flux));
        let bound = match self.speed_bound {
            SignalSpeedBound::Physical => "physical",
            SignalSpeedBound::Luminal => "luminal",
        };
        let _ = writeln!(s, "speed_bound={bound}");
        if let Some(t) = self.t_end {
            let _ = writeln!(s, "t_end={t}");
        }
        if let Some(dt) = self.dt {
            let _ = writeln!(s, "dt={dt}");
        }
        let _ = writeln!(s, "max_steps={}", self.max_steps);
        if !self.snapshots.is_empty() {
            let list: Vec<String> = self.snapshots.iter().map(|t| t.to_string()).collect();
            let _ = writeln!(s, "snapshots={}", list.join(","));
        }
        let _ = writeln!(s, "output={}", self.output.display());
        s
    }

    pub fn limiter(&self) -> LimiterConfig {
        LimiterConfig { tvb_m: self.tvb_m, tvb_mode: self.tvb_mode, tvb: self.tvb, bounds: self.bounds, ..LimiterConfig::default() }
    }

    pub fn solver(&self, gas: GasParams) -> SolverConfig {
        SolverConfig { degree: self.k, cfl: self.cfl, interface_flux: self.flux, gas, speed_bound: self.speed_bound }
    }
}

/// Mesh for a problem at the configured resolution.
pub fn build_mesh(problem: &ProblemSpec, cells: Cells) -> Result<Mesh> {
    let [x0, x1, y0, y1] = problem.bounds;
    Ok(match problem.dimension {
        1 => Mesh::Line(Grid1D::new(cells.nx, x0, x1)?),
        _ => Mesh::Plane(Grid2D::new(cells.nx, cells.ny.unwrap_or(cells.nx), [x0, x1, y0, y1])?),
    })
}

/// A prepared run: problem, discretization and initial field.
pub struct Setup {
    pub problem: ProblemSpec,
    pub disc: Discretization,
    pub initial: DgField,
}

pub fn setup(config: &RunConfig) -> Result<Setup> {
    config.validate()?;
    let problem = config.problem_spec()?;
    let disc = Discretization::new(config.solver(problem.gas), config.limiter(), problem.bc)?;
    let mesh = build_mesh(&problem, config.cells)?;
    let ic = problem.ic.clone();
    let initial = project_initial_condition(mesh, &disc.op.rule, problem.gas, &move |x, y| ic(x, y))?;
    Ok(Setup { problem, disc, initial })
}

/// Runs a configuration in memory, without writing files.
pub fn simulate(config: &RunConfig) -> Result<(Setup, Integration)> {
    let s = setup(config)?;
    let options = IntegrateOptions {
        step_control: config.dt.map_or(StepControl::Cfl, StepControl::Fixed),
        max_steps: config.max_steps,
        snapshots: config.snapshots.clone(),
    };
    let t_end = config.t_end.unwrap_or(s.problem.t_end);
    let result = integrate(s.initial.clone(), 0.0, t_end, &s.disc, &options)?;
    Ok((s, result))
}

/// Primitive variables at every node, in storage order.
pub fn primitives(field: &DgField, gas: GasParams) -> Result<Vec<PrimitiveState>> {
    Ok(flux_points(field, gas)?.into_iter().map(|p| p.prim).collect())
}

/// Columnar solution text: `x [y] rho ux uy p entropy`, one row per node.
pub fn solution_text(field: &DgField, op: &SbpOperator, gas: GasParams) -> Result<String> {
    let prims = primitives(field, gas)?;
    let coords = field.coordinates(&op.rule);
    let two_d = field.mesh().dimension() == 2;
    let mut s = String::with_capacity(prims.len() * 130);
    s.push_str(if two_d { "# x y rho ux uy p entropy\n" } else { "# x rho ux uy p entropy\n" });
    for ((x, y), p) in coords.iter().zip(&prims) {
        let _ = write!(s, "{x:.16e} ");
        if two_d {
            let _ = write!(s, "{y:.16e} ");
        }
        let _ = writeln!(s, "{:.16e} {:.16e} {:.16e} {:.16e} {:.16e}", p.rho, p.ux, p.uy, p.p, entropy(p, gas));
    }
    Ok(s)
}

pub fn entropy_text(series: &[(f64, f64)]) -> String {
    let mut s = String::from("# t total_entropy\n");
    for (t, u) in series {
        let _ = writeln!(s, "{t:.16e} {u:.16e}");
    }
    s
}

#[derive(Debug)]
pub struct RunSummary {
    pub steps: usize,
    pub t_final: f64,
    pub wall_time_s: f64,
    pub files: Vec<PathBuf>,
    pub entropy: Vec<(f64, f64)>,
}

fn write_file(path: &Path, text: &str, files: &mut Vec<PathBuf>) -> Result<()> {
    fs::write(path, text)?;
    files.push(path.to_path_buf());
    Ok(())
}

/// Runs a configuration and writes solution.dat, entropy.dat, any
/// snapshot_<t>.dat files and manifest.txt into the output directory.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    let start = Instant::now();
    let (setup, result) = simulate(config)?;
    let wall = start.elapsed().as_secs_f64();
    let gas = setup.problem.gas;
    let op = &setup.disc.op;

    fs::create_dir_all(&config.output)?;
    let mut files = Vec::new();
    write_file(&config.output.join("solution.dat"), &solution_text(&result.field, op, gas)?, &mut files)?;
    write_file(&config.output.join("entropy.dat"), &entropy_text(&result.entropy), &mut files)?;
    for (t, snap) in &result.snapshots {
        write_file(&config.output.join(format!("snapshot_{t}.dat")), &solution_text(snap, op, gas)?, &mut files)?;
    }
    let mut manifest = config.to_config_text();
    let _ = writeln!(manifest, "# steps={}", result.steps);
    let _ = writeln!(manifest, "# t_final={}", result.t);
    let _ = writeln!(manifest, "# wall_time_s={wall:.3}");
    write_file(&config.output.join("manifest.txt"), &manifest, &mut files)?;

    Ok(RunSummary { steps: result.steps, t_final: result.t, wall_time_s: wall, files, entropy: result.entropy })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityErrors {
    /// Σ_elements Σ_nodes (Δx/2)ω_j |ρ_h − ρ| (with the y factor in 2D)
    pub l1: f64,
    /// Δx·Σ_nodes |ρ_h − ρ| (ΔxΔy in 2D), the unweighted nodal sum
    pub l1_nodal: f64,
    pub linf: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorRow {
    pub cells: usize,
    pub errors: DensityErrors,
    pub l1_order: Option<f64>,
    pub l1_nodal_order: Option<f64>,
    pub linf_order: Option<f64>,
}

/// Density errors per resolution.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub problem: String,
    pub k: usize,
    pub rows: Vec<ErrorRow>,
}

impl ErrorReport {
    pub fn from_errors(problem: &str, k: usize, errs: &[(usize, DensityErrors)]) -> Self {
        let order = |e0: f64, e1: f64, n0: usize, n1: usize| (e0 / e1).ln() / (n1 as f64 / n0 as f64).ln();
        let rows = errs
            .iter()
            .enumerate()
            .map(|(i, &(cells, e))| {
                let prev = i.checked_sub(1).map(|j| errs[j]);
                ErrorRow {
                    cells,
                    errors: e,
                    l1_order: prev.map(|(n0, p)| order(p.l1, e.l1, n0, cells)),
                    l1_nodal_order: prev.map(|(n0, p)| order(p.l1_nodal, e.l1_nodal, n0, cells)),
                    linf_order: prev.map(|(n0, p)| order(p.linf, e.linf, n0, cells)),
                }
            })
            .collect();
        Self { problem: problem.to_string(), k, rows }
    }

    pub fn l1_orders(&self) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.l1_order).collect()
    }

    pub fn row(&self, cells: usize) -> Option<&ErrorRow> {
        self.rows.iter().find(|r| r.cells == cells)
    }
}

impl fmt::Display for ErrorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {} k={}", self.problem, self.k)?;
        writeln!(
            f,
            "{:>8} {:>12} {:>7} {:>12} {:>7} {:>12} {:>7}",
            "N", "L1", "order", "L1(nodal)", "order", "Linf", "order"
        )?;
        let ord = |o: Option<f64>| o.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"));
        for r in &self.rows {
            let e = r.errors;
            writeln!(
                f,
                "{:>8} {:>12.3e} {:>7} {:>12.3e} {:>7} {:>12.3e} {:>7}",
                r.cells,
                e.l1,
                ord(r.l1_order),
                e.l1_nodal,
                ord(r.l1_nodal_order),
                e.linf,
                ord(r.linf_order)
            )?;
        }
        Ok(())
    }
}

/// Density errors against a reference state function evaluated at the
/// nodes.
pub fn density_errors(
    field: &DgField,
    op: &SbpOperator,
    gas: GasParams,
    exact: &dyn Fn(f64, f64) -> PrimitiveState,
) -> Result<DensityErrors> {
    let prims = primitives(field, gas)?;
    let coords = field.coordinates(&op.rule);
    let weights = node_weights(field, op);
    let cell = match field.mesh() {
        Mesh::Line(g) => g.dx,
        Mesh::Plane(g) => g.x.dx * g.y.dx,
    };
    let (mut l1, mut sum, mut linf) = (0.0_f64, 0.0_f64, 0.0_f64);
    for ((p, (x, y)), w) in prims.iter().zip(coords).zip(weights) {
        let e = (p.rho - exact(x, y).rho).abs();
        l1 += w * e;
        sum += e;
        linf = linf.max(e);
    }
    Ok(DensityErrors { l1, l1_nodal: cell * sum, linf })
}

/// Runs the configuration at each resolution and tabulates density errors
/// at the final time.
pub fn convergence(config: &RunConfig, resolutions: &[usize]) -> Result<ErrorReport> {
    let problem = config.problem_spec()?;
    let exact = problem.exact.clone().ok_or_else(|| Error::MissingExactSolution(problem.name.clone()))?;
    let t_end = config.t_end.unwrap_or(problem.t_end);
    let mut errs = Vec::with_capacity(resolutions.len());
    for &n in resolutions {
        let cfg = RunConfig { cells: Cells { nx: n, ny: config.cells.ny.map(|_| n) }, ..config.clone() };
        let (setup, result) = simulate(&cfg)?;
        errs.push((n, density_errors(&result.field, &setup.disc.op, problem.gas, &|x, y| exact(x, y, t_end))?));
    }
    Ok(ErrorReport::from_errors(&problem.name, config.k, &errs))
}

/// Nodal density of a 1D field, usable as an interpolation reference.
pub struct DensityProfile {
    grid: Grid1D,
    nodes: Vec<f64>,
    rho: Vec<f64>,
}

impl DensityProfile {
    pub fn new(field: &DgField, op: &SbpOperator, gas: GasParams) -> Result<Self> {
        let Mesh::Line(grid) = *field.mesh() else {
            return Err(Error::Validation("density profiles are one-dimensional".into()));
        };
        let rho = primitives(field, gas)?.into_iter().map(|p| p.rho).collect();
        Ok(Self { grid, nodes: op.rule.nodes.clone(), rho })
    }

    /// Evaluates the element polynomial of ρ at x (clamped to the domain).
    pub fn at(&self, x: f64) -> f64 {
        let g = &self.grid;
        let n = self.nodes.len();
        let e = (((x - g.xmin) / g.dx).floor().max(0.0) as usize).min(g.cells - 1);
        let xi = ((x - g.left_face(e)) / g.dx * 2.0 - 1.0).clamp(-1.0, 1.0);
        lagrange_basis_at(&self.nodes, xi).iter().zip(&self.rho[e * n..(e + 1) * n]).map(|(b, r)| b * r).sum()
    }
}

/// Quadrature L¹ distance of the density of `field` from a reference
/// profile, evaluated at the nodes of `field`.
pub fn l1_distance(field: &DgField, op: &SbpOperator, gas: GasParams, reference: &DensityProfile) -> Result<f64> {
    density_errors(field, op, gas, &|x, _| PrimitiveState::new(reference.at(x), 0.0, 0.0, 1.0)).map(|e| e.l1)
}

/// Parses a comma-separated list of cell counts.
pub fn parse_resolutions(s: &str) -> Result<Vec<usize>> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Validation(format!("bad resolution '{t}': {e}"))))
        .collect::<Result<_>>()?;
    if v.is_empty() || v.contains(&0) {
        return Err(Error::Validation("resolutions must be positive".into()));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_defaults() {
        let c = parse_config("problem=rp1\nk=2\ncells=500").unwrap();
        assert_eq!(c.problem, "rp1");
        assert_eq!(c.k, 2);
        assert_eq!(c.cells, Cells { nx: 500, ny: None });
        assert_eq!(c.cfl, 0.1);
        assert_eq!(c.tvb_m, 10.0);
        assert_eq!(c.flux, InterfaceFlux::LaxFriedrichs);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_config("problem=rp1\ncfl=-1"), Err(Error::Validation(_))));
        match parse_config("") {
            Err(Error::UnknownProblem { valid, .. }) => assert!(valid.contains("accuracy")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_config("problem=rp1\n# note\ncolour=red"), Err(Error::Config { line: 3, .. })));
        assert!(matches!(parse_config("problem=rp1\nk"), Err(Error::Config { line: 2, .. })));
        assert!(matches!(parse_config("problem=rp1\ncells=10x10"), Err(Error::Validation(_))));
        assert!(parse_config("problem=rp2d1\ncells=10x20").is_ok());
    }

    #[test]
    fn manifest_round_trip() {
        let c = RunConfig {
            problem: "rp2d3".into(),
            k: 2,
            cells: Cells { nx: 40, ny: Some(30) },
            cfl: 0.05,
            tvb: false,
            tvb_mode: TvbMode::Componentwise,
            flux: InterfaceFlux::EntropyConservative,
            speed_bound: SignalSpeedBound::Luminal,
            t_end: Some(0.123456789),
            dt: Some(1e-3 / 3.0),
            snapshots: vec![0.1, 0.2],
            output: PathBuf::from("out/dir"),
            ..RunConfig::default()
        };
        let text = c.to_config_text() + "# wall_time_s=1.5\n";
        assert_eq!(parse_config(&text).unwrap(), c);
    }

    #[test]
    fn orders_are_log2_for_doubling() {
        let e = |l1, linf| DensityErrors { l1, l1_nodal: 2.0 * l1, linf };
        let r = ErrorReport::from_errors("x", 1, &[(32, e(8e-3, 1.0)), (64, e(1e-3, 0.25))]);
        assert!((r.rows[1].l1_nodal_order.unwrap() - 3.0).abs() < 1e-12);
        assert!((r.rows[1].l1_order.unwrap() - 3.0).abs() < 1e-12);
        assert!((r.rows[1].linf_order.unwrap() - 2.0).abs() < 1e-12);
        assert!(r.rows[0].l1_order.is_none());
        assert!(r.to_string().contains("3.00"));
    }

    #[test]
    fn resolutions_parse() {
        assert_eq!(parse_resolutions("32, 64,128").unwrap(), vec![32, 64, 128]);
        assert!(parse_resolutions("32,,64").is_err());
        assert!(parse_resolutions("0").is_err());
    }
}
