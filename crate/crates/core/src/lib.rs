//! Entropy-stable discontinuous Galerkin solver for special relativistic
//! hydrodynamics with an ideal-gas equation of state.
//!
//! The pieces, bottom up:
//! - [`state`]: conserved/primitive maps, primitive recovery, entropy pair
//! - [`sbp`]: Gauss-Lobatto quadrature and summation-by-parts operators
//! - [`fluxes`]: physical, entropy-conservative and Lax-Friedrichs fluxes
//! - [`grid`]: meshes and nodal DG fields
//! - [`solver`]: the semi-discrete split-form operator
//! - [`limiters`]: TVB and bound-preserving limiters
//! - [`time`]: SSP Runge-Kutta stepping
//! - [`problems`]: the test-problem catalog
//! - [`runner`]: configuration, runs, output files and error tables

pub mod error;
pub mod fluxes;
pub mod grid;
pub mod limiters;
pub mod problems;
pub mod runner;
pub mod sbp;
pub mod solver;
pub mod state;
pub mod time;

pub use error::{Error, Result};
pub use fluxes::{ec_flux, lf_flux, physical_flux, FluxVector, SignalSpeedBound};
pub use grid::{cell_average, project_initial_condition, DgField, Grid1D, Grid2D, Mesh};
pub use limiters::{LimiterConfig, TvbMode};
pub use problems::ProblemSpec;
pub use runner::{ErrorReport, RunConfig};
pub use sbp::SbpOperator;
pub use solver::{BoundaryKind, InterfaceFlux, SolverConfig};
pub use state::{cons_to_prim, prim_to_cons, ConservedState, Direction, GasParams, PrimitiveState};
pub use time::{Discretization, SspScheme};
