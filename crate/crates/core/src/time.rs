//! SSP Runge-Kutta stepping with a post-stage limiter hook, and the
//! time loop that drives a discretization to a final time.

use crate::error::{Error, Result};
use crate::grid::DgField;
use crate::limiters::{apply_limiters, LimiterConfig};
use crate::sbp::SbpOperator;
use crate::solver::{compute_dt, residual, total_entropy, BoundaryKind, SolverConfig};

/// Vector-space operations needed by the Runge-Kutta combinations.
pub trait RkVector: Clone {
    /// self += a·x
    fn axpy(&mut self, a: f64, x: &Self);
    fn scale(&mut self, a: f64);
}

impl RkVector for DgField {
    fn axpy(&mut self, a: f64, x: &Self) {
        DgField::axpy(self, a, x)
    }

    fn scale(&mut self, a: f64) {
        DgField::scale(self, a)
    }
}

impl RkVector for f64 {
    fn axpy(&mut self, a: f64, x: &Self) {
        *self += a * x;
    }

    fn scale(&mut self, a: f64) {
        *self *= a;
    }
}

impl RkVector for Vec<f64> {
    fn axpy(&mut self, a: f64, x: &Self) {
        for (s, v) in self.iter_mut().zip(x) {
            *s += a * v;
        }
    }

    fn scale(&mut self, a: f64) {
        self.iter_mut().for_each(|s| *s *= a);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SspScheme {
    Rk2,
    Rk3,
}

const RK2: [(f64, f64); 2] = [(0.0, 1.0), (0.5, 0.5)];
const RK3: [(f64, f64); 3] = [(0.0, 1.0), (0.75, 0.25), (1.0 / 3.0, 2.0 / 3.0)];

impl SspScheme {
    /// RK2 for k = 1, RK3 otherwise.
    pub fn for_degree(k: usize) -> Self {
        if k <= 1 {
            SspScheme::Rk2
        } else {
            SspScheme::Rk3
        }
    }

    pub fn order(self) -> usize {
        match self {
            SspScheme::Rk2 => 2,
            SspScheme::Rk3 => 3,
        }
    }

    /// Stage i computes a_i·uⁿ + b_i·(u⁽ⁱ⁻¹⁾ + dt·L(u⁽ⁱ⁻¹⁾)), with a_i + b_i = 1.
    pub fn coefficients(self) -> &'static [(f64, f64)] {
        match self {
            SspScheme::Rk2 => &RK2,
            SspScheme::Rk3 => &RK3,
        }
    }
}

/// One SSP-RK step; `hook` runs on every stage result, the last included.
pub fn ssp_step<V, R, H>(u: &V, dt: f64, mut rhs: R, mut hook: H, scheme: SspScheme) -> Result<V>
where
    V: RkVector,
    R: FnMut(&V) -> Result<V>,
    H: FnMut(&mut V) -> Result<()>,
{
    let mut stage = u.clone();
    for &(a, b) in scheme.coefficients() {
        let l = rhs(&stage)?;
        stage.axpy(dt, &l);
        if a != 0.0 {
            // uⁿ + b(v − uⁿ): equal to a·uⁿ + b·v, and exact when v = uⁿ
            stage.axpy(-1.0, u);
            stage.scale(b);
            stage.axpy(1.0, u);
        }
        hook(&mut stage)?;
    }
    Ok(stage)
}

/// Everything needed to advance a field: operators, flux choice,
/// boundaries and limiting.
#[derive(Clone, Debug)]
pub struct Discretization {
    pub op: SbpOperator,
    pub solver: SolverConfig,
    pub limiter: LimiterConfig,
    pub bc: BoundaryKind,
    pub scheme: SspScheme,
}

impl Discretization {
    pub fn new(solver: SolverConfig, limiter: LimiterConfig, bc: BoundaryKind) -> Result<Self> {
        solver.validate()?;
        limiter.validate()?;
        Ok(Self {
            op: SbpOperator::new(solver.degree)?,
            scheme: SspScheme::for_degree(solver.degree),
            solver,
            limiter,
            bc,
        })
    }

    pub fn residual(&self, field: &DgField) -> Result<DgField> {
        residual(field, &self.op, &self.solver, self.bc)
    }

    pub fn limit(&self, field: &mut DgField) -> Result<()> {
        apply_limiters(field, &self.op, &self.limiter, self.bc)
    }

    pub fn step(&self, field: &DgField, dt: f64) -> Result<DgField> {
        ssp_step(field, dt, |u| self.residual(u), |u| self.limit(u), self.scheme)
    }

    pub fn entropy(&self, field: &DgField) -> Result<f64> {
        total_entropy(field, &self.op, self.solver.gas)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepControl {
    /// dt from the CFL condition, recomputed every step.
    Cfl,
    Fixed(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegrateOptions {
    pub step_control: StepControl,
    pub max_steps: usize,
    /// Times (in (t0, t_end)) at which copies of the solution are kept;
    /// steps are clipped to land on them.
    pub snapshots: Vec<f64>,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self { step_control: StepControl::Cfl, max_steps: 1_000_000, snapshots: Vec::new() }
    }
}

#[derive(Clone, Debug)]
pub struct Integration {
    pub field: DgField,
    pub t: f64,
    pub steps: usize,
    /// (t, total entropy), starting at t0.
    pub entropy: Vec<(f64, f64)>,
    pub snapshots: Vec<(f64, DgField)>,
}

/// Steps from t0 to exactly t_end.
pub fn integrate(
    field: DgField,
    t0: f64,
    t_end: f64,
    disc: &Discretization,
    options: &IntegrateOptions,
) -> Result<Integration> {
    if !(t_end >= t0) {
        return Err(Error::Validation(format!("t_end {t_end} precedes t0 {t0}")));
    }
    let mut stops: Vec<f64> = options.snapshots.iter().copied().filter(|&s| s > t0 && s < t_end).collect();
    stops.sort_by(f64::total_cmp);
    stops.dedup();
    stops.push(t_end);

    let mut u = field;
    let mut t = t0;
    let mut steps = 0;
    let mut entropy = vec![(t, disc.entropy(&u).map_err(|e| at(t, e))?)];
    let mut snapshots = Vec::new();

    for &stop in &stops {
        while t < stop {
            if steps >= options.max_steps {
                return Err(Error::StepCap { steps, t });
            }
            let dt = match options.step_control {
                StepControl::Cfl => compute_dt(&u, &disc.solver).map_err(|e| at(t, e))?,
                StepControl::Fixed(dt) => dt,
            };
            let (dt, next_t) = if t + dt >= stop { (stop - t, stop) } else { (dt, t + dt) };
            u = disc.step(&u, dt).map_err(|e| at(t, e))?;
            t = next_t;
            steps += 1;
            entropy.push((t, disc.entropy(&u).map_err(|e| at(t, e))?));
        }
        if stop < t_end {
            snapshots.push((stop, u.clone()));
        }
    }
    Ok(Integration { field: u, t, steps, entropy, snapshots })
}

fn at(t: f64, e: Error) -> Error {
    Error::AtTime { t, source: Box::new(e) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficients_are_convex() {
        for s in [SspScheme::Rk2, SspScheme::Rk3] {
            for &(a, b) in s.coefficients() {
                assert!(a >= 0.0 && b > 0.0 && (a + b - 1.0).abs() < 1e-15);
            }
        }
        assert_eq!(SspScheme::for_degree(1), SspScheme::Rk2);
        assert_eq!(SspScheme::for_degree(2), SspScheme::Rk3);
    }

    #[test]
    fn zero_rhs_is_identity() {
        let u = vec![1.0, -2.0, 3.5];
        for s in [SspScheme::Rk2, SspScheme::Rk3] {
            let out = ssp_step(&u, 0.3, |v: &Vec<f64>| Ok(vec![0.0; v.len()]), |_| Ok(()), s).unwrap();
            assert_eq!(out, u);
        }
    }

    #[test]
    fn linear_ode_reproduces_taylor_polynomial() {
        let lambda = -1.7;
        let dt = 0.2;
        let z = lambda * dt;
        let rk3 = ssp_step(&1.0, dt, |u: &f64| Ok(lambda * u), |_| Ok(()), SspScheme::Rk3).unwrap();
        assert!((rk3 - (1.0 + z + z * z / 2.0 + z * z * z / 6.0)).abs() < 1e-15);
        let rk2 = ssp_step(&1.0, dt, |u: &f64| Ok(lambda * u), |_| Ok(()), SspScheme::Rk2).unwrap();
        assert!((rk2 - (1.0 + z + z * z / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn hook_runs_every_stage() {
        let mut calls = 0;
        ssp_step(&0.0, 0.1, |_: &f64| Ok(1.0), |_| {
            calls += 1;
            Ok(())
        }, SspScheme::Rk3)
        .unwrap();
        assert_eq!(calls, 3);
    }
}
