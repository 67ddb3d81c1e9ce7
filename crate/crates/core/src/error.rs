use thiserror::Error;

use crate::state::ConservedState;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("superluminal velocity: |u|^2 = {0} >= 1")]
    Superluminal(f64),

    #[error("nonpositive density or pressure (rho = {rho}, p = {p})")]
    NonPositive { rho: f64, p: f64 },

    #[error("inadmissible conserved state {0:?}")]
    Inadmissible(ConservedState),

    #[error("primitive recovery did not converge after {iterations} iterations (state {state:?})")]
    NoConvergence {
        iterations: usize,
        state: ConservedState,
    },

    #[error("unsupported polynomial degree {0} (need k >= 1)")]
    UnsupportedDegree(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("logarithmic mean needs positive arguments, got ({0}, {1})")]
    NonPositiveMean(f64, f64),

    #[error("degenerate denominator in entropy-conservative flux ({0:e})")]
    DegenerateFlux(f64),

    #[error("inadmissible state at element {element}, node {node}: {source}")]
    InadmissibleNode {
        element: usize,
        node: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("cell average of element {element} is outside the admissible set ({mean:?})")]
    InadmissibleMean {
        element: usize,
        mean: ConservedState,
    },

    #[error("step cap of {steps} steps exceeded at t = {t}")]
    StepCap { steps: usize, t: f64 },

    #[error("solver failed at t = {t}: {source}")]
    AtTime {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("unknown problem '{name}'; valid ids: {valid}")]
    UnknownProblem { name: String, valid: String },

    #[error("problem '{0}' has no exact solution")]
    MissingExactSolution(String),

    #[error("root bracket failure: {0}")]
    RootBracket(String),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
