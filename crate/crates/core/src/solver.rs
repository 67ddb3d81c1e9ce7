//! Semi-discrete entropy-stable DG operator in split (flux-differencing)
//! form, boundary treatment, time-step selection and entropy diagnostics.
//!
//! For node p of an element of width Δx the 1D operator is
//!
//! ```text
//! dw_p/dt = −(2/Δx) [ Σ_l 2 D_pl f*(w_p, w_l) − (τ_p/ω_p)(f(w_p) − f̂_p) ]
//! ```
//!
//! with f* the entropy-conservative two-point flux and f̂ the interface flux
//! (nonzero only at the two end nodes). The 2D operator applies this along
//! every x-line with f1* and every y-line with f2* and sums the two.
//!
//! Evaluation runs in two phases per line: face fluxes first (each face
//! computed once and shared by both neighbours), then element volume terms.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fluxes::{ec_flux_points, lf_flux_points, speed_estimate, FluxPoint, FluxVector, SignalSpeedBound};
use crate::grid::{DgField, Mesh};
use crate::sbp::SbpOperator;
use crate::state::{cons_to_prim, entropy, entropy_flux, entropy_variables, ConservedState, Direction, GasParams, RECOVERY_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    Periodic,
    /// Zeroth-order extrapolation: the ghost state equals the boundary trace.
    Outflow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InterfaceFlux {
    #[default]
    LaxFriedrichs,
    EntropyConservative,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub degree: usize,
    pub cfl: f64,
    pub interface_flux: InterfaceFlux,
    pub gas: GasParams,
    pub speed_bound: SignalSpeedBound,
}

impl SolverConfig {
    pub fn new(degree: usize, gas: GasParams) -> Self {
        Self {
            degree,
            cfl: 0.1,
            interface_flux: InterfaceFlux::LaxFriedrichs,
            gas,
            speed_bound: SignalSpeedBound::Physical,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::UnsupportedDegree(self.degree));
        }
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return Err(Error::Validation(format!("cfl must be positive, got {}", self.cfl)));
        }
        Ok(())
    }
}

/// A line of nodes through the lattice: local node i lives at
/// `base + stride·i`.
#[derive(Clone, Copy, Debug)]
struct Line {
    base: usize,
    stride: usize,
    elements: usize,
}

impl Line {
    #[inline]
    fn at(&self, i: usize) -> usize {
        self.base + self.stride * i
    }
}

/// Local indices of the states outside the left and right ends of a line
/// of `len` nodes.
#[inline]
fn ghost_indices(bc: BoundaryKind, len: usize) -> (usize, usize) {
    match bc {
        BoundaryKind::Periodic => (len - 1, 0),
        BoundaryKind::Outflow => (0, len - 1),
    }
}

/// Ghost states seen by the domain boundaries, per line of nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryGhosts {
    /// (left, right) ghosts of every x-line, bottom to top.
    pub x_lines: Vec<(ConservedState, ConservedState)>,
    /// (bottom, top) ghosts of every y-line, left to right; empty in 1D.
    pub y_lines: Vec<(ConservedState, ConservedState)>,
}

/// Periodic boundaries wrap to the opposite end; outflow copies the
/// boundary trace.
pub fn apply_boundary(field: &DgField, bc: BoundaryKind) -> BoundaryGhosts {
    let row_len = field.row_len();
    let rows = field.rows();
    let nodes = field.nodes();
    let (gl, gr) = ghost_indices(bc, row_len);
    let x_lines = (0..rows).map(|j| (nodes[j * row_len + gl], nodes[j * row_len + gr])).collect();
    let y_lines = match field.mesh() {
        Mesh::Line(_) => Vec::new(),
        Mesh::Plane(_) => {
            let (gb, gt) = ghost_indices(bc, rows);
            (0..row_len).map(|i| (nodes[gb * row_len + i], nodes[gt * row_len + i])).collect()
        }
    };
    BoundaryGhosts { x_lines, y_lines }
}

fn locate(field: &DgField, index: usize) -> (usize, usize) {
    let n = field.degree() + 1;
    let row_len = field.row_len();
    let (ii, jj) = (index % row_len, index / row_len);
    let nx = field.mesh().x_grid().cells;
    match field.mesh() {
        Mesh::Line(_) => (ii / n, ii % n),
        Mesh::Plane(_) => ((jj / n) * nx + ii / n, (jj % n) * n + ii % n),
    }
}

/// Recovers primitives at every node and caches the flux ingredients.
pub fn flux_points(field: &DgField, gas: GasParams) -> Result<Vec<FluxPoint>> {
    field
        .nodes()
        .par_iter()
        .enumerate()
        .map(|(i, c)| match cons_to_prim(c, gas, RECOVERY_TOL) {
            Ok(prim) => Ok(FluxPoint::with_cons(prim, *c)),
            Err(e) => {
                let (element, node) = locate(field, i);
                Err(Error::InadmissibleNode { element, node, source: Box::new(e) })
            }
        })
        .collect()
}

#[inline]
fn interface_flux(
    l: &FluxPoint,
    r: &FluxPoint,
    config: &SolverConfig,
    direction: Direction,
) -> FluxVector {
    match config.interface_flux {
        InterfaceFlux::LaxFriedrichs => lf_flux_points(l, r, config.gas, direction, config.speed_bound),
        InterfaceFlux::EntropyConservative => ec_flux_points(l, r, config.gas, direction),
    }
}

/// Residual along one line of elements, written to `out` in local order.
#[allow(clippy::too_many_arguments)]
fn line_residual(
    points: &[FluxPoint],
    line: Line,
    op: &SbpOperator,
    config: &SolverConfig,
    bc: BoundaryKind,
    direction: Direction,
    h: f64,
    out: &mut [ConservedState],
) {
    let n = op.nodes_per_element();
    let len = line.elements * n;
    debug_assert_eq!(out.len(), len);
    let pt = |i: usize| &points[line.at(i)];
    let (gl, gr) = ghost_indices(bc, len);

    // phase 1: one flux per face, face f between elements f−1 and f
    let faces: Vec<FluxVector> = (0..line.elements + 1)
        .into_par_iter()
        .with_min_len(64)
        .map(|f| {
            let left = if f == 0 { gl } else { f * n - 1 };
            let right = if f == line.elements { gr } else { f * n };
            interface_flux(pt(left), pt(right), config, direction)
        })
        .collect();

    // phase 2: element-local volume and surface terms
    let d = &op.matrices.d;
    let w = op.weights();
    let scale = -2.0 / h;
    out.par_chunks_mut(n).with_min_len(32).enumerate().for_each_init(
        || (vec![FluxVector::ZERO; n], vec![FluxVector::ZERO; n]),
        |(diag, vol), (e, res)| {
            let local = |p: usize| pt(e * n + p);
            for p in 0..n {
                diag[p] = ec_flux_points(local(p), local(p), config.gas, direction);
                vol[p] = FluxVector::ZERO;
            }
            // Σ_l D_pl f*(w_p, w_l) = Σ_{l≠p} D_pl (f*(w_p, w_l) − f*(w_p, w_p)) since rows of D sum to 0
            for p in 0..n {
                for l in p + 1..n {
                    let f = ec_flux_points(local(p), local(l), config.gas, direction);
                    vol[p] += (f - diag[p]) * (2.0 * d[(p, l)]);
                    vol[l] += (f - diag[l]) * (2.0 * d[(l, p)]);
                }
            }
            vol[0] += (local(0).flux(direction) - faces[e]) * (1.0 / w[0]);
            vol[n - 1] -= (local(n - 1).flux(direction) - faces[e + 1]) * (1.0 / w[n - 1]);
            for p in 0..n {
                res[p] = vol[p] * scale;
            }
        },
    );
}

fn check_degree(field: &DgField, op: &SbpOperator) -> Result<()> {
    if field.degree() != op.degree() {
        return Err(Error::DimensionMismatch { expected: op.degree(), got: field.degree() });
    }
    Ok(())
}

/// dw/dt of a 1D field.
pub fn residual_1d(field: &DgField, op: &SbpOperator, config: &SolverConfig, bc: BoundaryKind) -> Result<DgField> {
    check_degree(field, op)?;
    let Mesh::Line(grid) = *field.mesh() else {
        return Err(Error::Validation("residual_1d needs a 1D field".into()));
    };
    let points = flux_points(field, config.gas)?;
    let mut out = field.zeros_like();
    let line = Line { base: 0, stride: 1, elements: grid.cells };
    line_residual(&points, line, op, config, bc, Direction::X, grid.dx, out.nodes_mut());
    Ok(out)
}

/// dw/dt of a 2D field: x-sweeps with f1* plus y-sweeps with f2*.
pub fn residual_2d(field: &DgField, op: &SbpOperator, config: &SolverConfig, bc: BoundaryKind) -> Result<DgField> {
    check_degree(field, op)?;
    let Mesh::Plane(grid) = *field.mesh() else {
        return Err(Error::Validation("residual_2d needs a 2D field".into()));
    };
    let points = flux_points(field, config.gas)?;
    let row_len = field.row_len();
    let rows = field.rows();
    let mut out = field.zeros_like();

    out.nodes_mut().par_chunks_mut(row_len).enumerate().for_each(|(j, row)| {
        let line = Line { base: j * row_len, stride: 1, elements: grid.x.cells };
        line_residual(&points, line, op, config, bc, Direction::X, grid.x.dx, row);
    });

    let columns: Vec<Vec<ConservedState>> = (0..row_len)
        .into_par_iter()
        .map(|i| {
            let mut col = vec![ConservedState::ZERO; rows];
            let line = Line { base: i, stride: row_len, elements: grid.y.cells };
            line_residual(&points, line, op, config, bc, Direction::Y, grid.y.dx, &mut col);
            col
        })
        .collect();
    let nodes = out.nodes_mut();
    for (i, col) in columns.iter().enumerate() {
        for (j, r) in col.iter().enumerate() {
            nodes[j * row_len + i] += *r;
        }
    }
    Ok(out)
}

/// Dispatches on the field's dimension.
pub fn residual(field: &DgField, op: &SbpOperator, config: &SolverConfig, bc: BoundaryKind) -> Result<DgField> {
    match field.mesh() {
        Mesh::Line(_) => residual_1d(field, op, config, bc),
        Mesh::Plane(_) => residual_2d(field, op, config, bc),
    }
}

/// Physical quadrature weight of every stored node: (Δx/2)ω_p in 1D,
/// (ΔxΔy/4)ω_pω_q in 2D.
pub fn node_weights(field: &DgField, op: &SbpOperator) -> Vec<f64> {
    let n = op.nodes_per_element();
    let w = op.weights();
    let gx = field.mesh().x_grid();
    let row: Vec<f64> = (0..field.row_len()).map(|i| 0.5 * gx.dx * w[i % n]).collect();
    match field.mesh() {
        Mesh::Line(_) => row,
        Mesh::Plane(g) => (0..field.rows())
            .flat_map(|j| {
                let wy = 0.5 * g.y.dx * w[j % n];
                row.iter().map(move |wx| wx * wy)
            })
            .collect(),
    }
}

/// Quadrature integral of each conserved component.
pub fn integral(field: &DgField, op: &SbpOperator) -> ConservedState {
    let mut acc = ConservedState::ZERO;
    for (c, w) in field.nodes().iter().zip(node_weights(field, op)) {
        acc += *c * w;
    }
    acc
}

/// Σ over elements of the quadrature entropy.
pub fn total_entropy(field: &DgField, op: &SbpOperator, gas: GasParams) -> Result<f64> {
    let points = flux_points(field, gas)?;
    Ok(points
        .iter()
        .zip(node_weights(field, op))
        .map(|(pt, w)| w * entropy(&pt.prim, gas))
        .sum())
}

/// Σ (Δx/2)ω_j v_j·(dw/dt)_j, the semi-discrete entropy production.
pub fn semidiscrete_entropy_rate(field: &DgField, residual: &DgField, op: &SbpOperator, gas: GasParams) -> Result<f64> {
    if field.nodes().len() != residual.nodes().len() {
        return Err(Error::DimensionMismatch { expected: field.nodes().len(), got: residual.nodes().len() });
    }
    let points = flux_points(field, gas)?;
    Ok(points
        .iter()
        .zip(residual.nodes())
        .zip(node_weights(field, op))
        .map(|((pt, r), w)| w * entropy_variables(&pt.prim, gas).dot(r))
        .sum())
}

/// Net outward entropy flux through the domain boundary, zero for periodic
/// meshes. With outflow ghosts the semi-discrete entropy rate plus this
/// flux is non-positive.
pub fn boundary_entropy_flux(field: &DgField, op: &SbpOperator, gas: GasParams, bc: BoundaryKind) -> Result<f64> {
    if bc == BoundaryKind::Periodic {
        return Ok(0.0);
    }
    let n = op.nodes_per_element();
    let w = op.weights();
    let len = field.row_len();
    let flux = |i: usize, dir: Direction| -> Result<f64> {
        let prim = cons_to_prim(&field.nodes()[i], gas, RECOVERY_TOL)?;
        Ok(entropy_flux(&prim, gas, dir))
    };
    match field.mesh() {
        Mesh::Line(_) => Ok(flux(len - 1, Direction::X)? - flux(0, Direction::X)?),
        Mesh::Plane(g) => {
            let rows = field.rows();
            let mut total = 0.0;
            for j in 0..rows {
                let wy = 0.5 * g.y.dx * w[j % n];
                total += wy * (flux(j * len + len - 1, Direction::X)? - flux(j * len, Direction::X)?);
            }
            for i in 0..len {
                let wx = 0.5 * g.x.dx * w[i % n];
                total += wx * (flux((rows - 1) * len + i, Direction::Y)? - flux(i, Direction::Y)?);
            }
            Ok(total)
        }
    }
}

/// Largest signal speed over all nodes in `direction`.
pub fn max_speed(points: &[FluxPoint], gas: GasParams, direction: Direction, bound: SignalSpeedBound) -> f64 {
    points
        .par_iter()
        .map(|p| speed_estimate(p, gas, direction, bound))
        .reduce(|| 0.0, f64::max)
}

/// dt = cfl·Δx/λ in 1D and cfl/(λ_x/Δx + λ_y/Δy) in 2D.
pub fn compute_dt(field: &DgField, config: &SolverConfig) -> Result<f64> {
    let points = flux_points(field, config.gas)?;
    let lx = max_speed(&points, config.gas, Direction::X, config.speed_bound);
    let dt = match field.mesh() {
        Mesh::Line(g) => config.cfl * g.dx / lx,
        Mesh::Plane(g) => {
            let ly = max_speed(&points, config.gas, Direction::Y, config.speed_bound);
            config.cfl / (lx / g.x.dx + ly / g.y.dx)
        }
    };
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Validation(format!("degenerate time step {dt}")));
    }
    Ok(dt)
}
