//! TVB minmod slope limiter and the bound-preserving scaling limiter.
//!
//! Both work on conserved variables, element by element, and leave cell
//! means untouched. The stage chain used by the time integrator is
//! bounds → TVB → bounds.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{cell_average, DgField, Mesh};
use crate::sbp::SbpOperator;
use crate::solver::BoundaryKind;
use crate::state::ConservedState;

/// How a troubled element's components are rebuilt once any of them is
/// flagged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TvbMode {
    /// Each flagged component gets its own limited slope; the others keep
    /// their full polynomial.
    Componentwise,
    /// Every component becomes mean + φ·(first moment)·ξ with one factor φ,
    /// the smallest ratio of limited to unlimited slope over the
    /// components. Keeps D, m and E of an element consistent.
    #[default]
    SharedFactor,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimiterConfig {
    /// TVB constant M; deviations below M·Δx² are left alone.
    pub tvb_m: f64,
    pub tvb_mode: TvbMode,
    /// Floor for D and q(w) enforced by the bounds limiter.
    pub eps: f64,
    pub tvb: bool,
    pub bounds: bool,
}

impl Default for LimiterConfig {
    fn default() -> Self {
        Self { tvb_m: 10.0, tvb_mode: TvbMode::SharedFactor, eps: 1e-13, tvb: true, bounds: true }
    }
}

impl LimiterConfig {
    /// Both limiters switched off.
    pub fn disabled() -> Self {
        Self { tvb: false, bounds: false, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tvb_m >= 0.0 && self.tvb_m.is_finite()) {
            return Err(Error::Validation(format!("tvb_m must be nonnegative, got {}", self.tvb_m)));
        }
        if !(self.eps > 0.0 && self.eps < 1e-3) {
            return Err(Error::Validation(format!("eps must lie in (0, 1e-3), got {}", self.eps)));
        }
        Ok(())
    }
}

/// s·min(|a|, |b|, |c|) if all three share the sign s, else 0.
#[inline]
pub fn minmod(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

#[inline]
pub fn minmod_tvb(a: f64, b: f64, c: f64, m: f64, dx: f64) -> f64 {
    if a.abs() <= m * dx * dx {
        a
    } else {
        minmod(a, b, c)
    }
}

/// Cell means of every element, in element order.
pub fn cell_means(field: &DgField, op: &SbpOperator) -> Vec<ConservedState> {
    (0..field.mesh().elements())
        .into_par_iter()
        .map(|e| cell_average(field, &op.rule, e))
        .collect()
}

/// Index of the neighbour of cell `i` (of `n`) on the given side, or None
/// past an outflow boundary.
#[inline]
fn neighbour(i: usize, n: usize, forward: bool, bc: BoundaryKind) -> Option<usize> {
    match (forward, bc) {
        (true, _) if i + 1 < n => Some(i + 1),
        (true, BoundaryKind::Periodic) => Some(0),
        (false, _) if i > 0 => Some(i - 1),
        (false, BoundaryKind::Periodic) => Some(n - 1),
        (_, BoundaryKind::Outflow) => None,
    }
}

/// Forward and backward mean differences. A missing side (outflow
/// boundary) borrows the other one; with both missing there is nothing to
/// compare against.
fn mean_differences(
    means: &[ConservedState],
    e: usize,
    fwd: Option<usize>,
    bwd: Option<usize>,
) -> Option<(ConservedState, ConservedState)> {
    let f = fwd.map(|j| means[j] - means[e]);
    let b = bwd.map(|j| means[e] - means[j]);
    match (f, b) {
        (Some(f), Some(b)) => Some((f, b)),
        (Some(f), None) => Some((f, f)),
        (None, Some(b)) => Some((b, b)),
        (None, None) => None,
    }
}

/// Slope data of one element along one direction.
struct Sweep {
    /// w_right − w̄ and w̄ − w_left
    dev_r: ConservedState,
    dev_l: ConservedState,
    /// first Legendre coefficient
    slope: ConservedState,
    /// None when the direction has a single cell and no neighbours
    diffs: Option<(ConservedState, ConservedState)>,
    h: f64,
}

impl Sweep {
    fn flagged(&self, c: usize, m: f64) -> bool {
        let Some((fwd, bwd)) = self.diffs else { return false };
        let (p, n) = (fwd.component(c), bwd.component(c));
        let (r, l) = (self.dev_r.component(c), self.dev_l.component(c));
        minmod_tvb(r, p, n, m, self.h) != r || minmod_tvb(l, p, n, m, self.h) != l
    }

    fn limited_slope(&self, c: usize, m: f64) -> f64 {
        let a = self.slope.component(c);
        match self.diffs {
            Some((fwd, bwd)) => minmod_tvb(a, fwd.component(c), bwd.component(c), m, self.h),
            None => a,
        }
    }

    /// Limited slope of every component under `mode`; `flagged[c]` marks
    /// the components that tripped the detector. None leaves the
    /// component's polynomial as it is.
    fn slopes(&self, flagged: &[bool; 4], mode: TvbMode, m: f64) -> [Option<f64>; 4] {
        match mode {
            TvbMode::Componentwise => std::array::from_fn(|c| flagged[c].then(|| self.limited_slope(c, m))),
            TvbMode::SharedFactor => {
                let phi = (0..4)
                    .filter(|&c| self.slope.component(c) != 0.0)
                    .map(|c| (self.limited_slope(c, m) / self.slope.component(c)).clamp(0.0, 1.0))
                    .fold(1.0_f64, f64::min);
                std::array::from_fn(|c| Some(phi * self.slope.component(c)))
            }
        }
    }
}

fn first_moment(op: &SbpOperator, values: impl Iterator<Item = ConservedState>) -> ConservedState {
    let mut acc = ConservedState::ZERO;
    for (v, fm) in values.zip(&op.first_moment) {
        acc += v * *fm;
    }
    acc * 1.5
}

/// TVB limiting of troubled elements, rebuilt per `config.tvb_mode`.
/// Returns the number of elements touched.
pub fn apply_tvb(field: &mut DgField, op: &SbpOperator, config: &LimiterConfig, bc: BoundaryKind) -> usize {
    let means = cell_means(field, op);
    let n = op.nodes_per_element();
    let m = config.tvb_m;
    let mode = config.tvb_mode;
    let xi = &op.rule.nodes;
    let w = op.weights();
    let view: &DgField = field;
    let mesh = *view.mesh();

    let updates: Vec<(usize, Vec<ConservedState>)> = (0..mesh.elements())
        .into_par_iter()
        .filter_map(|e| {
            let (ex, ey) = view.element_coords(e);
            let mean = means[e];
            let at = |p: usize, q: usize| view.get(view.index(ex, ey, p, q));
            match mesh {
                Mesh::Line(g) => {
                    let nx = g.cells;
                    let sx = Sweep {
                        dev_r: at(n - 1, 0) - mean,
                        dev_l: mean - at(0, 0),
                        slope: first_moment(op, (0..n).map(|p| at(p, 0))),
                        diffs: mean_differences(&means, e, neighbour(ex, nx, true, bc), neighbour(ex, nx, false, bc)),
                        h: g.dx,
                    };
                    let flagged: [bool; 4] = std::array::from_fn(|c| sx.flagged(c, m));
                    if !flagged.contains(&true) {
                        return None;
                    }
                    let before: Vec<ConservedState> = (0..n).map(|p| at(p, 0)).collect();
                    let mut out = before.clone();
                    for (c, s) in sx.slopes(&flagged, mode, m).into_iter().enumerate() {
                        let Some(s) = s else { continue };
                        for (p, node) in out.iter_mut().enumerate() {
                            *node.component_mut(c) = mean.component(c) + s * xi[p];
                        }
                    }
                    keep_margin(mean, &before, &mut out);
                    Some((e, out))
                }
                Mesh::Plane(g) => {
                    let (nx, ny) = (g.x.cells, g.y.cells);
                    let elem = |ix: usize, iy: usize| iy * nx + ix;
                    // column and row averages, offset form so invariant directions stay exact
                    let col = |p: usize| {
                        let base = at(p, 0);
                        let mut acc = base;
                        for q in 1..n {
                            acc += (at(p, q) - base) * (0.5 * w[q]);
                        }
                        acc
                    };
                    let row = |q: usize| {
                        let mut acc = ConservedState::ZERO;
                        for p in 0..n {
                            acc += at(p, q) * (0.5 * w[p]);
                        }
                        acc
                    };
                    let cols: Vec<ConservedState> = (0..n).map(col).collect();
                    let rows: Vec<ConservedState> = (0..n).map(row).collect();
                    let sx = Sweep {
                        dev_r: cols[n - 1] - mean,
                        dev_l: mean - cols[0],
                        slope: first_moment(op, cols.iter().copied()),
                        diffs: mean_differences(
                            &means,
                            e,
                            neighbour(ex, nx, true, bc).map(|i| elem(i, ey)),
                            neighbour(ex, nx, false, bc).map(|i| elem(i, ey)),
                        ),
                        h: g.x.dx,
                    };
                    let sy = Sweep {
                        dev_r: rows[n - 1] - mean,
                        dev_l: mean - rows[0],
                        slope: first_moment(op, rows.iter().map(|r| *r - rows[0])),
                        diffs: mean_differences(
                            &means,
                            e,
                            neighbour(ey, ny, true, bc).map(|j| elem(ex, j)),
                            neighbour(ey, ny, false, bc).map(|j| elem(ex, j)),
                        ),
                        h: g.y.dx,
                    };
                    let flagged: [bool; 4] = std::array::from_fn(|c| sx.flagged(c, m) || sy.flagged(c, m));
                    if !flagged.contains(&true) {
                        return None;
                    }
                    let before: Vec<ConservedState> = (0..n * n).map(|i| at(i % n, i / n)).collect();
                    let mut out = before.clone();
                    let slopes = sx.slopes(&flagged, mode, m).into_iter().zip(sy.slopes(&flagged, mode, m));
                    for (c, (ax, ay)) in slopes.enumerate() {
                        let (Some(ax), Some(ay)) = (ax, ay) else { continue };
                        for (i, node) in out.iter_mut().enumerate() {
                            *node.component_mut(c) = mean.component(c) + ax * xi[i % n] + ay * xi[i / n];
                        }
                    }
                    keep_margin(mean, &before, &mut out);
                    Some((e, out))
                }
            }
        })
        .collect();

    let touched = updates.len();
    for (e, values) in updates {
        for (idx, v) in field.element_indices(e).into_iter().zip(values) {
            field.set(idx, v);
        }
    }
    touched
}

/// Pulls a rebuilt element toward its mean until no node has smaller D or
/// q than the smaller of the mean's value and the element's minimum before
/// the rebuild. A linear rebuild of an admissible element can leave the
/// admissible set; without this the bounds pass would clamp such nodes to
/// near-zero pressure.
fn keep_margin(mean: ConservedState, before: &[ConservedState], out: &mut [ConservedState]) {
    let floor_d = before.iter().map(|w| w.d).fold(mean.d, f64::min);
    let floor_q = before.iter().map(|w| w.q()).fold(mean.q(), f64::min);
    let theta_d = out
        .iter()
        .filter(|w| w.d < floor_d)
        .map(|w| ((mean.d - floor_d) / (mean.d - w.d)).clamp(0.0, 1.0))
        .fold(1.0_f64, f64::min);
    let theta = out
        .iter()
        .filter(|w| w.q() < floor_q)
        .map(|w| q_theta(&mean, w, floor_q))
        .fold(theta_d, f64::min);
    if theta < 1.0 {
        for w in out.iter_mut() {
            *w = mean + (*w - mean) * theta;
        }
    }
}

#[inline]
fn satisfies(w: &ConservedState, eps: f64) -> bool {
    w.d >= eps && w.q() >= eps
}

/// Largest t ∈ [0, 1] found by bisection with q(mean + t(w − mean)) ≥ eps,
/// given q(mean) ≥ eps. q is concave, so the admissible t form an interval.
fn q_theta(mean: &ConservedState, w: &ConservedState, eps: f64) -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let dw = *w - *mean;
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if (*mean + dw * mid).q() >= eps {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON {
            break;
        }
    }
    lo
}

/// Scales one element's nodes toward `mean` so that D ≥ eps and q ≥ eps.
/// Returns None when the element already satisfies the bounds.
fn limit_element(mean: ConservedState, nodes: &[ConservedState], eps: f64) -> Option<Vec<ConservedState>> {
    if nodes.iter().all(|w| satisfies(w, eps)) {
        return None;
    }
    let mut out = nodes.to_vec();
    let min_d = out.iter().map(|w| w.d).fold(f64::INFINITY, f64::min);
    if min_d < eps {
        let theta = ((mean.d - eps) / (mean.d - min_d)).clamp(0.0, 1.0);
        for w in &mut out {
            w.d = mean.d + theta * (w.d - mean.d);
        }
    }
    let theta = out
        .iter()
        .filter(|w| w.q() < eps)
        .map(|w| q_theta(&mean, w, eps))
        .fold(1.0_f64, f64::min);
    if theta < 1.0 {
        for w in &mut out {
            *w = mean + (*w - mean) * theta;
        }
    }
    if !out.iter().all(|w| w.d > 0.0 && w.q() > 0.0) {
        out.iter_mut().for_each(|w| *w = mean);
    }
    Some(out)
}

/// Zhang-Shu type scaling toward the cell mean. Returns the number of
/// elements modified.
pub fn apply_bounds(field: &mut DgField, op: &SbpOperator, config: &LimiterConfig) -> Result<usize> {
    let eps = config.eps;
    let view: &DgField = field;
    let updates: Vec<(usize, Vec<ConservedState>)> = (0..view.mesh().elements())
        .into_par_iter()
        .map(|e| {
            let mean = cell_average(view, &op.rule, e);
            if !(mean.is_finite() && mean.d >= eps && mean.q() >= eps) {
                return Err(Error::InadmissibleMean { element: e, mean });
            }
            let nodes: Vec<ConservedState> = view.element_indices(e).iter().map(|&i| view.get(i)).collect();
            Ok(limit_element(mean, &nodes, eps).map(|v| (e, v)))
        })
        .filter_map(|r| r.transpose())
        .collect::<Result<_>>()?;

    let touched = updates.len();
    for (e, values) in updates {
        for (idx, v) in field.element_indices(e).into_iter().zip(values) {
            field.set(idx, v);
        }
    }
    Ok(touched)
}

/// The per-stage chain: bounds, TVB, bounds (each if enabled).
pub fn apply_limiters(field: &mut DgField, op: &SbpOperator, config: &LimiterConfig, bc: BoundaryKind) -> Result<()> {
    if config.bounds {
        apply_bounds(field, op, config)?;
    }
    if config.tvb {
        apply_tvb(field, op, config, bc);
        if config.bounds {
            apply_bounds(field, op, config)?;
        }
    }
    Ok(())
}
