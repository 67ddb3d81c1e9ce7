//! Physical fluxes, the entropy-conservative two-point flux and the
//! Lax-Friedrichs interface flux.

use crate::error::{Error, Result};
use crate::state::{
    entropy_potential, entropy_variables, max_signal_speed, prim_to_cons_unchecked,
    ConservedState, Direction, GasParams, PrimitiveState,
};

/// Flux vectors share the component ordering of [`ConservedState`].
pub type FluxVector = ConservedState;

/// Wave-speed estimate used for Lax-Friedrichs dissipation and time steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignalSpeedBound {
    /// Extreme characteristic speeds of the states involved.
    #[default]
    Physical,
    /// The speed of light.
    Luminal,
}

/// A nodal state with the quantities every flux evaluation needs.
#[derive(Clone, Copy, Debug)]
pub struct FluxPoint {
    pub prim: PrimitiveState,
    pub cons: ConservedState,
    /// ρ/p.
    pub beta: f64,
    pub lorentz: f64,
    /// Γu_x.
    pub mu_x: f64,
    /// Γu_y.
    pub mu_y: f64,
}

impl FluxPoint {
    /// Builds a point from an admissible primitive state.
    pub fn new(prim: PrimitiveState, gas: GasParams) -> Self {
        Self::with_cons(prim, prim_to_cons_unchecked(&prim, gas))
    }

    /// Builds a point from a primitive state and its conserved image.
    #[inline]
    pub fn with_cons(prim: PrimitiveState, cons: ConservedState) -> Self {
        let lorentz = 1.0 / (1.0 - prim.speed_squared()).sqrt();
        Self {
            prim,
            cons,
            beta: prim.rho / prim.p,
            lorentz,
            mu_x: lorentz * prim.ux,
            mu_y: lorentz * prim.uy,
        }
    }

    #[inline]
    pub fn flux(&self, direction: Direction) -> FluxVector {
        let (w, c) = (&self.prim, &self.cons);
        match direction {
            Direction::X => FluxVector::new(c.d * w.ux, c.mx * w.ux + w.p, c.my * w.ux, c.mx),
            Direction::Y => FluxVector::new(c.d * w.uy, c.mx * w.uy, c.my * w.uy + w.p, c.my),
        }
    }
}

pub fn physical_flux(prim: &PrimitiveState, gas: GasParams, direction: Direction) -> FluxVector {
    FluxPoint::new(*prim, gas).flux(direction)
}

/// Logarithmic mean of positive, finite arguments. Symmetric to the last bit.
#[inline]
pub(crate) fn log_mean_unchecked(a: f64, b: f64) -> f64 {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    let zeta = a / b;
    let f = (zeta - 1.0) / (zeta + 1.0);
    let u = f * f;
    if u < 1e-4 {
        let series = 1.0 + u * (1.0 / 3.0 + u * (1.0 / 5.0 + u / 7.0));
        0.5 * (a + b) / series
    } else {
        (a - b) / zeta.ln()
    }
}

/// (a − b)/(ln a − ln b), continuous at a = b.
pub fn log_mean(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::NonPositiveMean(a, b));
    }
    Ok(log_mean_unchecked(a, b))
}

/// Averages entering the entropy-conservative flux: arithmetic means
/// (`*_avg`) and logarithmic means (`*_ln`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanPack {
    pub rho_avg: f64,
    pub rho_ln: f64,
    pub beta_avg: f64,
    pub beta_ln: f64,
    pub mu_x_avg: f64,
    pub mu_y_avg: f64,
    pub lorentz_avg: f64,
    /// 1 + 1/((γ−1)·β_ln).
    pub k1: f64,
}

impl MeanPack {
    #[inline]
    pub fn new(l: &FluxPoint, r: &FluxPoint, gas: GasParams) -> Self {
        let beta_ln = log_mean_unchecked(l.beta, r.beta);
        Self {
            rho_avg: 0.5 * (l.prim.rho + r.prim.rho),
            rho_ln: log_mean_unchecked(l.prim.rho, r.prim.rho),
            beta_avg: 0.5 * (l.beta + r.beta),
            beta_ln,
            mu_x_avg: 0.5 * (l.mu_x + r.mu_x),
            mu_y_avg: 0.5 * (l.mu_y + r.mu_y),
            lorentz_avg: 0.5 * (l.lorentz + r.lorentz),
            k1: 1.0 + 1.0 / ((gas.gamma - 1.0) * beta_ln),
        }
    }

    /// μ̄_x² + μ̄_y² − Γ̄², bounded above by −1 for admissible pairs.
    #[inline]
    pub fn denominator(&self) -> f64 {
        self.mu_x_avg * self.mu_x_avg + self.mu_y_avg * self.mu_y_avg
            - self.lorentz_avg * self.lorentz_avg
    }
}

/// Entropy-conservative flux between two cached points. The y-direction
/// flux is the x-direction flux of the axis-swapped states with the two
/// momentum components swapped back.
#[inline]
pub fn ec_flux_points(l: &FluxPoint, r: &FluxPoint, gas: GasParams, direction: Direction) -> FluxVector {
    let mp = MeanPack::new(l, r, gas);
    let (mu_n, mu_t) = match direction {
        Direction::X => (mp.mu_x_avg, mp.mu_y_avg),
        Direction::Y => (mp.mu_y_avg, mp.mu_x_avg),
    };
    let p_avg = mp.rho_avg / mp.beta_avg;
    let mass = mp.rho_ln * mu_n;
    let energy = -mp.lorentz_avg * (mp.k1 * mass + mu_n * p_avg) / mp.denominator();
    let normal = mu_n / mp.lorentz_avg * energy + p_avg;
    let tangential = mu_t / mp.lorentz_avg * energy;
    match direction {
        Direction::X => FluxVector::new(mass, normal, tangential, energy),
        Direction::Y => FluxVector::new(mass, tangential, normal, energy),
    }
}

pub fn ec_flux(
    left: &PrimitiveState,
    right: &PrimitiveState,
    gas: GasParams,
    direction: Direction,
) -> Result<FluxVector> {
    left.validate()?;
    right.validate()?;
    let (l, r) = (FluxPoint::new(*left, gas), FluxPoint::new(*right, gas));
    let den = MeanPack::new(&l, &r, gas).denominator();
    if den.abs() < 1e-14 {
        return Err(Error::DegenerateFlux(den));
    }
    Ok(ec_flux_points(&l, &r, gas, direction))
}

#[inline]
pub(crate) fn speed_estimate(
    point: &FluxPoint,
    gas: GasParams,
    direction: Direction,
    bound: SignalSpeedBound,
) -> f64 {
    match bound {
        SignalSpeedBound::Physical => max_signal_speed(&point.prim, gas, direction),
        SignalSpeedBound::Luminal => 1.0,
    }
}

/// ½(f_L + f_R) − ½α(w_R − w_L) with α the larger endpoint signal speed.
#[inline]
pub fn lf_flux_points(
    l: &FluxPoint,
    r: &FluxPoint,
    gas: GasParams,
    direction: Direction,
    bound: SignalSpeedBound,
) -> FluxVector {
    let alpha = speed_estimate(l, gas, direction, bound).max(speed_estimate(r, gas, direction, bound));
    (l.flux(direction) + r.flux(direction)) * 0.5 - (r.cons - l.cons) * (0.5 * alpha)
}

pub fn lf_flux(
    left: &PrimitiveState,
    right: &PrimitiveState,
    gas: GasParams,
    direction: Direction,
) -> FluxVector {
    lf_flux_points(
        &FluxPoint::new(*left, gas),
        &FluxPoint::new(*right, gas),
        gas,
        direction,
        SignalSpeedBound::Physical,
    )
}

/// (v_R − v_L)·flux − (ψ_R − ψ_L): zero for entropy-conservative fluxes,
/// nonpositive for entropy-stable ones.
pub fn ec_condition_residual(
    left: &PrimitiveState,
    right: &PrimitiveState,
    flux: &FluxVector,
    gas: GasParams,
    direction: Direction,
) -> f64 {
    let dv = entropy_variables(right, gas) - entropy_variables(left, gas);
    dv.dot(flux) - (entropy_potential(right, direction) - entropy_potential(left, direction))
}
