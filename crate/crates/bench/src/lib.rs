//! Fixtures shared by the kernel benchmarks.

use esdg_rhd::{project_initial_condition, DgField, GasParams, Grid1D, Grid2D, Mesh, PrimitiveState, SbpOperator};

/// Smooth periodic state used by every benchmark.
pub fn smooth_state(x: f64, y: f64) -> PrimitiveState {
    let s = (2.0 * std::f64::consts::PI * (x + y)).sin();
    PrimitiveState::new(2.0 + s, 0.5, 0.2 * s, 1.0 + 0.5 * s)
}

pub fn line_field(cells: usize, op: &SbpOperator) -> DgField {
    let mesh = Mesh::Line(Grid1D::new(cells, 0.0, 1.0).expect("valid grid"));
    project_initial_condition(mesh, &op.rule, GasParams::default(), &smooth_state).expect("admissible data")
}

pub fn plane_field(cells: usize, op: &SbpOperator) -> DgField {
    let mesh = Mesh::Plane(Grid2D::new(cells, cells, [0.0, 1.0, 0.0, 1.0]).expect("valid grid"));
    project_initial_condition(mesh, &op.rule, GasParams::default(), &smooth_state).expect("admissible data")
}
