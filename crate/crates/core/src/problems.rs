//! Catalog of test problems: initial data, domains, boundary kinds and
//! final times.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::solver::BoundaryKind;
use crate::state::{sound_speed, GasParams, PrimitiveState};

pub type InitialCondition = Arc<dyn Fn(f64, f64) -> PrimitiveState + Send + Sync>;
/// (x, y, t) → state
pub type ExactSolution = Arc<dyn Fn(f64, f64, f64) -> PrimitiveState + Send + Sync>;

#[derive(Clone)]
pub struct ProblemSpec {
    pub name: String,
    pub dimension: usize,
    /// [xmin, xmax, ymin, ymax]; the y pair is ignored in 1D.
    pub bounds: [f64; 4],
    pub gas: GasParams,
    pub ic: InitialCondition,
    pub bc: BoundaryKind,
    pub t_end: f64,
    pub exact: Option<ExactSolution>,
}

impl fmt::Debug for ProblemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSpec")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .field("bounds", &self.bounds)
            .field("gamma", &self.gas.gamma)
            .field("bc", &self.bc)
            .field("t_end", &self.t_end)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl ProblemSpec {
    pub fn initial(&self, x: f64, y: f64) -> PrimitiveState {
        (self.ic)(x, y)
    }

    /// The same 1D problem posed on a 2D domain, constant in y.
    pub fn extruded(&self, ymin: f64, ymax: f64) -> Result<ProblemSpec> {
        if self.dimension != 1 {
            return Err(Error::Validation(format!("{} is already two-dimensional", self.name)));
        }
        let ic = self.ic.clone();
        let exact = self.exact.clone().map(|ex| -> ExactSolution { Arc::new(move |x, _, t| ex(x, 0.0, t)) });
        Ok(ProblemSpec {
            name: format!("{}-y", self.name),
            dimension: 2,
            bounds: [self.bounds[0], self.bounds[1], ymin, ymax],
            ic: Arc::new(move |x, _| ic(x, 0.0)),
            exact,
            ..self.clone()
        })
    }
}

pub const PROBLEM_NAMES: [&str; 15] = [
    "accuracy", "isentropic", "rp1", "rp2", "rp3", "rp4", "perturb", "blast", "rp2d1", "rp2d2", "rp2d3", "rp2d4",
    "constant", "rp1x", "rp1y",
];

fn unknown(name: &str) -> Error {
    Error::UnknownProblem { name: name.to_string(), valid: PROBLEM_NAMES.join(", ") }
}

/// Looks up a problem by its CLI identifier.
pub fn by_name(name: &str) -> Result<ProblemSpec> {
    match name {
        "accuracy" => Ok(accuracy_test()),
        "isentropic" => isentropic_pulse(),
        "constant" => Ok(constant_state()),
        "rp1x" => riemann_1d("rp1")?.extruded(0.0, 1.0).map(|p| ProblemSpec { name: "rp1x".into(), ..p }),
        "rp1y" => Ok(rp1_along_y()),
        n if n.starts_with("rp2d") => riemann_2d(n),
        n => riemann_1d(n).map_err(|_| unknown(n)),
    }
}

fn gas(gamma: f64) -> GasParams {
    GasParams::new(gamma).expect("catalog gamma exceeds 1")
}

/// Density advection on [0, 1], periodic.
pub fn accuracy_test() -> ProblemSpec {
    let exact: ExactSolution = Arc::new(|x, _, t| PrimitiveState::new(2.0 + (2.0 * PI * (x - 0.5 * t)).sin(), 0.5, 0.0, 1.0));
    let e = exact.clone();
    ProblemSpec {
        name: "accuracy".into(),
        dimension: 1,
        bounds: [0.0, 1.0, 0.0, 0.0],
        gas: GasParams::default(),
        ic: Arc::new(move |x, y| e(x, y, 0.0)),
        bc: BoundaryKind::Periodic,
        t_end: 2.0,
        exact: Some(exact),
    }
}

/// Uniform flow (ρ, u, p) = (1, 0.3, 1), periodic; the exact solution is
/// the initial state.
pub fn constant_state() -> ProblemSpec {
    let state = PrimitiveState::new(1.0, 0.3, 0.0, 1.0);
    ProblemSpec {
        name: "constant".into(),
        dimension: 1,
        bounds: [0.0, 1.0, 0.0, 0.0],
        gas: GasParams::default(),
        ic: Arc::new(move |_, _| state),
        bc: BoundaryKind::Periodic,
        t_end: 0.4,
        exact: Some(Arc::new(move |_, _, _| state)),
    }
}

pub const PULSE_WIDTH: f64 = 0.3;
pub const PULSE_AMPLITUDE: f64 = 1.0;
const PULSE_REF: PrimitiveState = PrimitiveState::new(1.0, 0.0, 0.0, 100.0);

/// J₋(u, c) = ½ln((1+u)/(1−u)) − (1/√(γ−1))·ln((√(γ−1)+c)/(√(γ−1)−c))
pub fn riemann_invariant_minus(u: f64, c: f64, gamma: f64) -> f64 {
    let r = (gamma - 1.0).sqrt();
    u.atanh() - ((r + c) / (r - c)).ln() / r
}

/// Pulse state at x: ρ = 1 + αf(x), p = Kρ^γ, u from constant J₋.
pub fn pulse_state(x: f64, gas: GasParams) -> Result<PrimitiveState> {
    let f = if x.abs() < PULSE_WIDTH { ((x / PULSE_WIDTH).powi(2) - 1.0).powi(4) } else { 0.0 };
    if f == 0.0 {
        return Ok(PULSE_REF);
    }
    let g = gas.gamma;
    let k = PULSE_REF.p / PULSE_REF.rho.powf(g);
    let rho = PULSE_REF.rho * (1.0 + PULSE_AMPLITUDE * f);
    let p = k * rho.powf(g);
    let c = sound_speed(&PrimitiveState::new(rho, 0.0, 0.0, p), gas);
    let target = riemann_invariant_minus(0.0, sound_speed(&PULSE_REF, gas), g);
    let residual = |u: f64| riemann_invariant_minus(u, c, g) - target;
    let (mut lo, mut hi) = (0.0_f64, 0.999_f64);
    if !(residual(lo) <= 0.0 && residual(hi) >= 0.0) {
        return Err(Error::RootBracket(format!("pulse velocity at x = {x}")));
    }
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if residual(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(PrimitiveState::new(rho, 0.5 * (lo + hi), 0.0, p))
}

/// Right-moving isentropic pulse on [−0.35, 1] with outflow boundaries.
pub fn isentropic_pulse() -> Result<ProblemSpec> {
    let gas = GasParams::default();
    // surface a bracketing failure here rather than inside the callback
    pulse_state(0.0, gas)?;
    Ok(ProblemSpec {
        name: "isentropic".into(),
        dimension: 1,
        bounds: [-0.35, 1.0, 0.0, 0.0],
        gas,
        ic: Arc::new(move |x, _| pulse_state(x, gas).expect("pulse velocity bracketed for amplitude 1")),
        bc: BoundaryKind::Outflow,
        t_end: 0.8,
        exact: None,
    })
}

fn shock_tube(name: &str, left: PrimitiveState, right: PrimitiveState, t_end: f64) -> ProblemSpec {
    ProblemSpec {
        name: name.into(),
        dimension: 1,
        bounds: [0.0, 1.0, 0.0, 0.0],
        gas: GasParams::default(),
        // nodes on the discontinuity take the left state
        ic: Arc::new(move |x, _| if x > 0.5 { right } else { left }),
        bc: BoundaryKind::Outflow,
        t_end,
        exact: None,
    }
}

/// rp1–rp4, perturb and blast.
pub fn riemann_1d(case: &str) -> Result<ProblemSpec> {
    let s = PrimitiveState::new;
    Ok(match case {
        "rp1" => shock_tube("rp1", s(1.0, -0.6, 0.0, 10.0), s(10.0, 0.5, 0.0, 20.0), 0.4),
        "rp2" => shock_tube("rp2", s(1.0, 0.0, 0.0, 1e3), s(1.0, 0.0, 0.0, 1e-2), 0.4),
        "rp3" => shock_tube("rp3", s(10.0, 0.0, 0.0, 40.0 / 3.0), s(1.0, 0.0, 0.0, 2.0 / 3.0 * 1e-6), 0.4),
        "rp4" => shock_tube("rp4", s(1.0, 0.9, 0.0, 1.0), s(1.0, 0.0, 0.0, 10.0), 0.4),
        "perturb" => ProblemSpec {
            ic: Arc::new(|x, _| {
                if x > 0.5 {
                    PrimitiveState::new(2.0 + 0.3 * (50.0 * x).sin(), 0.0, 0.0, 5.0)
                } else {
                    PrimitiveState::new(5.0, 0.0, 0.0, 50.0)
                }
            }),
            ..shock_tube("perturb", s(5.0, 0.0, 0.0, 50.0), s(2.0, 0.0, 0.0, 5.0), 0.35)
        },
        "blast" => ProblemSpec {
            name: "blast".into(),
            dimension: 1,
            bounds: [0.0, 1.0, 0.0, 0.0],
            gas: gas(1.4),
            ic: Arc::new(|x, _| {
                let p = if x <= 0.1 {
                    1000.0
                } else if x <= 0.9 {
                    0.01
                } else {
                    100.0
                };
                PrimitiveState::new(1.0, 0.0, 0.0, p)
            }),
            bc: BoundaryKind::Outflow,
            t_end: 0.43,
            exact: None,
        },
        other => return Err(unknown(other)),
    })
}

/// Quadrant states in the order (x>½,y>½), (x<½,y>½), (x<½,y<½), (x>½,y<½).
fn quadrants(name: &str, q: [PrimitiveState; 4]) -> ProblemSpec {
    ProblemSpec {
        name: name.into(),
        dimension: 2,
        bounds: [0.0, 1.0, 0.0, 1.0],
        gas: GasParams::default(),
        ic: Arc::new(move |x, y| match (x > 0.5, y > 0.5) {
            (true, true) => q[0],
            (false, true) => q[1],
            (false, false) => q[2],
            (true, false) => q[3],
        }),
        bc: BoundaryKind::Outflow,
        t_end: 0.4,
        exact: None,
    }
}

/// rp2d1–rp2d4 on [0, 1]².
pub fn riemann_2d(case: &str) -> Result<ProblemSpec> {
    let s = PrimitiveState::new;
    Ok(match case {
        "rp2d1" => quadrants(case, [s(0.5, 0.5, -0.5, 5.0), s(1.0, 0.5, 0.5, 5.0), s(3.0, -0.5, 0.5, 5.0), s(1.5, -0.5, -0.5, 5.0)]),
        "rp2d2" => quadrants(case, [s(0.1, 0.0, 0.0, 0.01), s(0.1, 0.9, 0.0, 1.0), s(0.5, 0.0, 0.0, 1.0), s(0.1, 0.0, 0.9, 1.0)]),
        "rp2d3" => quadrants(
            case,
            [s(1.0, 0.0, 0.0, 1.0), s(0.5771, -0.3529, 0.0, 0.4), s(1.0, -0.3529, -0.3529, 1.0), s(0.5771, 0.0, -0.3529, 0.4)],
        ),
        "rp2d4" => quadrants(
            case,
            [s(0.035145216124503, 0.0, 0.0, 0.162931056509027), s(0.1, 0.7, 0.0, 1.0), s(0.5, 0.0, 0.0, 1.0), s(0.1, 0.0, 0.7, 1.0)],
        ),
        other => return Err(unknown(other)),
    })
}

/// rp1 rotated onto the y axis, constant in x.
fn rp1_along_y() -> ProblemSpec {
    let base = riemann_1d("rp1").expect("rp1 in catalog");
    let ic = base.ic.clone();
    ProblemSpec {
        name: "rp1y".into(),
        dimension: 2,
        bounds: [0.0, 1.0, 0.0, 1.0],
        ic: Arc::new(move |_, y| ic(y, 0.0).swap_axes()),
        ..base
    }
}
