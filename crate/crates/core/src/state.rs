//! State algebra for special relativistic hydrodynamics with an ideal
//! equation of state: primitive/conserved conversions, admissibility,
//! entropy quantities and signal speeds.
//!
//! Velocities are measured in units of the speed of light.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Coordinate direction of a flux or sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    X,
    Y,
}

/// Ideal-gas parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GasParams {
    pub gamma: f64,
}

impl GasParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 1.0 && gamma.is_finite() {
            Ok(Self { gamma })
        } else {
            Err(Error::Validation(format!("adiabatic index must exceed 1, got {gamma}")))
        }
    }

    /// γ/(γ−1), the enthalpy coefficient.
    #[inline]
    pub fn enthalpy_factor(self) -> f64 {
        self.gamma / (self.gamma - 1.0)
    }
}

impl Default for GasParams {
    fn default() -> Self {
        Self { gamma: 5.0 / 3.0 }
    }
}

/// Lab-frame primitive state (ρ, u_x, u_y, p).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimitiveState {
    pub rho: f64,
    pub ux: f64,
    pub uy: f64,
    pub p: f64,
}

impl PrimitiveState {
    pub const fn new(rho: f64, ux: f64, uy: f64, p: f64) -> Self {
        Self { rho, ux, uy, p }
    }

    #[inline]
    pub fn velocity(&self, direction: Direction) -> f64 {
        match direction {
            Direction::X => self.ux,
            Direction::Y => self.uy,
        }
    }

    #[inline]
    pub fn speed_squared(&self) -> f64 {
        self.ux * self.ux + self.uy * self.uy
    }

    /// Checks ρ > 0, p > 0 and |u| < 1.
    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.p > 0.0) {
            return Err(Error::NonPositive { rho: self.rho, p: self.p });
        }
        let u2 = self.speed_squared();
        if !(u2 < 1.0) {
            return Err(Error::Superluminal(u2));
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.validate().is_ok()
    }

    /// Exchanges the x and y velocity components.
    #[inline]
    pub fn swap_axes(self) -> Self {
        Self { ux: self.uy, uy: self.ux, ..self }
    }
}

/// Conserved state (D, m_x, m_y, E).
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ConservedState {
    pub d: f64,
    pub mx: f64,
    pub my: f64,
    pub e: f64,
}

impl ConservedState {
    pub const ZERO: Self = Self { d: 0.0, mx: 0.0, my: 0.0, e: 0.0 };

    pub const fn new(d: f64, mx: f64, my: f64, e: f64) -> Self {
        Self { d, mx, my, e }
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.d, self.mx, self.my, self.e]
    }

    #[inline]
    pub fn from_array(a: [f64; 4]) -> Self {
        Self { d: a[0], mx: a[1], my: a[2], e: a[3] }
    }

    #[inline]
    pub fn momentum(&self, direction: Direction) -> f64 {
        match direction {
            Direction::X => self.mx,
            Direction::Y => self.my,
        }
    }

    #[inline]
    pub fn momentum_squared(&self) -> f64 {
        self.mx * self.mx + self.my * self.my
    }

    /// q(w) = E − sqrt(D² + |m|²); concave in w, positive exactly on the
    /// admissible set (together with D > 0).
    #[inline]
    pub fn q(&self) -> f64 {
        self.e - (self.d * self.d + self.momentum_squared()).sqrt()
    }

    #[inline]
    pub fn swap_axes(self) -> Self {
        Self { mx: self.my, my: self.mx, ..self }
    }

    #[inline]
    pub fn max_abs(&self) -> f64 {
        self.d.abs().max(self.mx.abs()).max(self.my.abs()).max(self.e.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.d.is_finite() && self.mx.is_finite() && self.my.is_finite() && self.e.is_finite()
    }

    #[inline]
    pub fn component(&self, i: usize) -> f64 {
        match i {
            0 => self.d,
            1 => self.mx,
            2 => self.my,
            3 => self.e,
            _ => panic!("conserved component {i} out of range"),
        }
    }

    #[inline]
    pub fn component_mut(&mut self, i: usize) -> &mut f64 {
        match i {
            0 => &mut self.d,
            1 => &mut self.mx,
            2 => &mut self.my,
            3 => &mut self.e,
            _ => panic!("conserved component {i} out of range"),
        }
    }
}

impl Add for ConservedState {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.d + o.d, self.mx + o.mx, self.my + o.my, self.e + o.e)
    }
}

impl Sub for ConservedState {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.d - o.d, self.mx - o.mx, self.my - o.my, self.e - o.e)
    }
}

impl Mul<f64> for ConservedState {
    type Output = Self;
    #[inline]
    fn mul(self, a: f64) -> Self {
        Self::new(self.d * a, self.mx * a, self.my * a, self.e * a)
    }
}

impl Neg for ConservedState {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.d, -self.mx, -self.my, -self.e)
    }
}

impl AddAssign for ConservedState {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        self.d += o.d;
        self.mx += o.mx;
        self.my += o.my;
        self.e += o.e;
    }
}

impl SubAssign for ConservedState {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        self.d -= o.d;
        self.mx -= o.mx;
        self.my -= o.my;
        self.e -= o.e;
    }
}

/// Derived thermodynamic quantities of a primitive state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThermoDerived {
    /// Specific enthalpy.
    pub h: f64,
    pub gamma_lorentz: f64,
    /// Thermodynamic entropy ln(p ρ^−γ).
    pub s: f64,
    /// ρ/p.
    pub beta: f64,
    /// Sound speed.
    pub cs: f64,
}

/// Entropy variables v = ∂U/∂w, ordered like [`ConservedState`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyVector(pub [f64; 4]);

impl EntropyVector {
    #[inline]
    pub fn dot(&self, w: &ConservedState) -> f64 {
        let v = &self.0;
        v[0] * w.d + v[1] * w.mx + v[2] * w.my + v[3] * w.e
    }
}

impl Sub for EntropyVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let (a, b) = (self.0, o.0);
        Self([a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]])
    }
}

pub fn lorentz_factor(ux: f64, uy: f64) -> Result<f64> {
    let u2 = ux * ux + uy * uy;
    if !(u2 < 1.0) {
        return Err(Error::Superluminal(u2));
    }
    Ok(1.0 / (1.0 - u2).sqrt())
}

pub fn specific_enthalpy(rho: f64, p: f64, gamma: f64) -> Result<f64> {
    if !(rho > 0.0 && p > 0.0) {
        return Err(Error::NonPositive { rho, p });
    }
    Ok(1.0 + gamma / (gamma - 1.0) * p / rho)
}

pub fn thermo(prim: &PrimitiveState, gas: GasParams) -> ThermoDerived {
    let h = 1.0 + gas.enthalpy_factor() * prim.p / prim.rho;
    ThermoDerived {
        h,
        gamma_lorentz: 1.0 / (1.0 - prim.speed_squared()).sqrt(),
        s: (prim.p / prim.rho.powf(gas.gamma)).ln(),
        beta: prim.rho / prim.p,
        cs: (gas.gamma * prim.p / (prim.rho * h)).sqrt(),
    }
}

/// Conserved image of an admissible primitive state. No validation.
#[inline]
pub(crate) fn prim_to_cons_unchecked(prim: &PrimitiveState, gas: GasParams) -> ConservedState {
    let w2 = 1.0 / (1.0 - prim.speed_squared());
    let w = w2.sqrt();
    let rho_h_w2 = (prim.rho + gas.enthalpy_factor() * prim.p) * w2;
    ConservedState {
        d: w * prim.rho,
        mx: rho_h_w2 * prim.ux,
        my: rho_h_w2 * prim.uy,
        e: rho_h_w2 - prim.p,
    }
}

pub fn prim_to_cons(prim: &PrimitiveState, gas: GasParams) -> Result<ConservedState> {
    prim.validate()?;
    Ok(prim_to_cons_unchecked(prim, gas))
}

/// True iff D > 0 and E − sqrt(D² + |m|²) > 0.
pub fn is_admissible(cons: &ConservedState) -> bool {
    cons.d > 0.0 && cons.q() > 0.0
}

/// Default relative tolerance of primitive recovery.
pub const RECOVERY_TOL: f64 = 1e-12;
const RECOVERY_MAX_ITER: usize = 200;

/// Recovers the primitive state from a conserved one.
///
/// Solves g(p) = DΓ + γ/(γ−1)·pΓ² − p − E = 0 with Γ(p) = (E+p)/sqrt((E+p)² − |m|²)
/// by Newton iteration, falling back to bisection whenever a Newton step
/// leaves the bracket (0, (γ−1)E]. g(0) < 0 on the admissible set and
/// g((γ−1)E) > 0, so the bracket always holds the root.
pub fn cons_to_prim(cons: &ConservedState, gas: GasParams, tol: f64) -> Result<PrimitiveState> {
    if !is_admissible(cons) || !cons.is_finite() {
        return Err(Error::Inadmissible(*cons));
    }
    let (d, e) = (cons.d, cons.e);
    let m2 = cons.momentum_squared();
    let k = gas.enthalpy_factor();

    // residual and derivative of g
    let eval = |p: f64| -> (f64, f64) {
        let s = e + p;
        let denom = (s - m2.sqrt()) * (s + m2.sqrt());
        let w2 = s * s / denom;
        let w = w2.sqrt();
        let dw2 = -2.0 * s * m2 / (denom * denom);
        let dw = dw2 / (2.0 * w);
        let g = d * w + k * p * w2 - p - e;
        let dg = d * dw + k * (w2 + p * dw2) - 1.0;
        (g, dg)
    };

    let mut lo = 0.0_f64;
    let mut hi = (gas.gamma - 1.0) * e;
    // Initial guess from the rest-frame internal energy scale.
    let mut p = ((gas.gamma - 1.0) * cons.q()).clamp(f64::MIN_POSITIVE, hi);
    let mut last_step = hi - lo;

    for _ in 0..RECOVERY_MAX_ITER {
        let (g, dg) = eval(p);
        if g == 0.0 {
            return Ok(finish(cons, p));
        }
        if g < 0.0 {
            lo = p;
        } else {
            hi = p;
        }
        // Newton, unless it leaves the bracket or fails to halve the step
        let newton = p - g / dg;
        let next = if newton > lo && newton < hi && newton.is_finite() && (newton - p).abs() < 0.5 * last_step {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let step = (next - p).abs();
        last_step = step;
        p = next;
        if step <= tol * p || hi - lo <= f64::EPSILON * hi {
            return Ok(finish(cons, p));
        }
    }
    Err(Error::NoConvergence { iterations: RECOVERY_MAX_ITER, state: *cons })
}

#[inline]
fn finish(cons: &ConservedState, p: f64) -> PrimitiveState {
    let s = cons.e + p;
    let m = cons.momentum_squared().sqrt();
    let w = s / ((s - m) * (s + m)).sqrt();
    PrimitiveState { rho: cons.d / w, ux: cons.mx / s, uy: cons.my / s, p }
}

/// Mathematical entropy U = −ρΓs/(γ−1).
pub fn entropy(prim: &PrimitiveState, gas: GasParams) -> f64 {
    let w = 1.0 / (1.0 - prim.speed_squared()).sqrt();
    let s = (prim.p / prim.rho.powf(gas.gamma)).ln();
    -prim.rho * w * s / (gas.gamma - 1.0)
}

/// Entropy flux F = U·u_direction.
pub fn entropy_flux(prim: &PrimitiveState, gas: GasParams, direction: Direction) -> f64 {
    entropy(prim, gas) * prim.velocity(direction)
}

pub fn entropy_variables(prim: &PrimitiveState, gas: GasParams) -> EntropyVector {
    let w = 1.0 / (1.0 - prim.speed_squared()).sqrt();
    let s = (prim.p / prim.rho.powf(gas.gamma)).ln();
    let beta = prim.rho / prim.p;
    EntropyVector([
        (gas.gamma - s) / (gas.gamma - 1.0) + beta,
        prim.ux * w * beta,
        prim.uy * w * beta,
        -w * beta,
    ])
}

/// Entropy potential ψ = ρΓu_direction.
pub fn entropy_potential(prim: &PrimitiveState, direction: Direction) -> f64 {
    let w = 1.0 / (1.0 - prim.speed_squared()).sqrt();
    prim.rho * w * prim.velocity(direction)
}

/// cs = sqrt(γp/(ρh)).
pub fn sound_speed(prim: &PrimitiveState, gas: GasParams) -> f64 {
    let rho_h = prim.rho + gas.enthalpy_factor() * prim.p;
    (gas.gamma * prim.p / rho_h).sqrt()
}

/// Extreme characteristic speeds (λ−, λ+) in `direction`.
pub fn signal_speeds(prim: &PrimitiveState, gas: GasParams, direction: Direction) -> (f64, f64) {
    let rho_h = prim.rho + gas.enthalpy_factor() * prim.p;
    let cs2 = gas.gamma * prim.p / rho_h;
    let u2 = prim.speed_squared();
    let ud = prim.velocity(direction);
    let disc = ((1.0 - u2) * (1.0 - ud * ud - (u2 - ud * ud) * cs2)).max(0.0).sqrt();
    let cs = cs2.sqrt();
    let denom = 1.0 - u2 * cs2;
    let base = ud * (1.0 - cs2);
    ((base - cs * disc) / denom, (base + cs * disc) / denom)
}

/// max(|λ−|, |λ+|).
pub fn max_signal_speed(prim: &PrimitiveState, gas: GasParams, direction: Direction) -> f64 {
    let (lm, lp) = signal_speeds(prim, gas, direction);
    lm.abs().max(lp.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    const G53: GasParams = GasParams { gamma: 5.0 / 3.0 };

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn lorentz_factor_values() {
        assert_eq!(lorentz_factor(0.0, 0.0).unwrap(), 1.0);
        assert!(close(lorentz_factor(0.5, 0.0).unwrap(), 1.154700538, 1e-9));
        assert!(matches!(lorentz_factor(0.6, 0.8), Err(Error::Superluminal(_))));
    }

    #[test]
    fn enthalpy_values() {
        assert_eq!(specific_enthalpy(1.0, 1.0, 5.0 / 3.0).unwrap(), 3.5);
        assert!(close(specific_enthalpy(2.0, 1.0, 1.4).unwrap(), 2.75, 1e-15));
        assert!(close(specific_enthalpy(1.0, 1e-300, 5.0 / 3.0).unwrap(), 1.0, 1e-15));
        assert!(specific_enthalpy(0.0, 1.0, 1.4).is_err());
        assert!(specific_enthalpy(1.0, -1.0, 1.4).is_err());
    }

    #[test]
    fn prim_to_cons_values() {
        let c = prim_to_cons(&PrimitiveState::new(1.0, 0.0, 0.0, 1.0), G53).unwrap();
        assert_eq!(c, ConservedState::new(1.0, 0.0, 0.0, 2.5));
        let c = prim_to_cons(&PrimitiveState::new(1.0, 0.5, 0.0, 1.0), G53).unwrap();
        assert!(close(c.d, 1.154700538, 1e-9));
        assert!(close(c.mx, 7.0 / 3.0, 1e-12));
        assert_eq!(c.my, 0.0);
        assert!(close(c.e, 11.0 / 3.0, 1e-12));
        assert!(prim_to_cons(&PrimitiveState::new(1.0, 1.0, 0.0, 1.0), G53).is_err());
    }

    #[test]
    fn cons_to_prim_values() {
        let w = cons_to_prim(&ConservedState::new(1.0, 0.0, 0.0, 2.5), G53, RECOVERY_TOL).unwrap();
        assert!(close(w.rho, 1.0, 1e-13) && close(w.p, 1.0, 1e-13) && w.ux == 0.0);
        let c = ConservedState::new(2.0 / 3.0_f64.sqrt(), 7.0 / 3.0, 0.0, 11.0 / 3.0);
        let w = cons_to_prim(&c, G53, RECOVERY_TOL).unwrap();
        assert!(close(w.rho, 1.0, 1e-10) && close(w.ux, 0.5, 1e-10) && close(w.p, 1.0, 1e-10));
    }

    #[test]
    fn cons_to_prim_rejects_inadmissible() {
        let bad = ConservedState::new(1.0, 0.0, 0.0, 0.5);
        assert!(matches!(cons_to_prim(&bad, G53, 1e-12), Err(Error::Inadmissible(_))));
        let neg = ConservedState::new(-1.0, 0.0, 0.0, 2.0);
        assert!(cons_to_prim(&neg, G53, 1e-12).is_err());
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&ConservedState::new(1.0, 0.0, 0.0, 2.5)));
        assert!(!is_admissible(&ConservedState::new(1.0, 0.0, 0.0, 0.5)));
    }

    #[test]
    fn entropy_values() {
        assert_eq!(entropy(&PrimitiveState::new(1.0, 0.0, 0.0, 1.0), G53), 0.0);
        assert_eq!(entropy(&PrimitiveState::new(1.0, 0.5, 0.0, 1.0), G53).abs(), 0.0);
        let u = entropy(&PrimitiveState::new(2.0, 0.0, 0.0, 1.0), G53);
        assert!(close(u, 5.0 * std::f64::consts::LN_2, 1e-14));
        assert!(close(u, 3.465736, 1e-6));
        assert_eq!(entropy_flux(&PrimitiveState::new(2.0, 0.0, 0.0, 1.0), G53, Direction::X), 0.0);
    }

    #[test]
    fn entropy_variable_values() {
        let v = entropy_variables(&PrimitiveState::new(1.0, 0.0, 0.0, 1.0), G53);
        assert_eq!(v.0, [3.5, 0.0, 0.0, -1.0]);
        let w = PrimitiveState::new(0.7, 0.3, -0.4, 2.0);
        let v = entropy_variables(&w, G53);
        assert!(close(v.0[1] * w.uy, v.0[2] * w.ux, 1e-15));
        assert!(v.0[3] < 0.0);
    }

    #[test]
    fn potential_values() {
        assert_eq!(entropy_potential(&PrimitiveState::new(1.0, 0.0, 0.0, 1.0), Direction::X), 0.0);
        let psi = entropy_potential(&PrimitiveState::new(1.0, 0.5, 0.0, 1.0), Direction::X);
        assert!(close(psi, 0.577350269, 1e-9));
    }

    #[test]
    fn sound_and_signal_speeds() {
        let w = PrimitiveState::new(1.0, 0.0, 0.0, 1.0);
        assert!(close(sound_speed(&w, G53), 0.690066, 1e-6));
        assert!(close(max_signal_speed(&w, G53, Direction::X), sound_speed(&w, G53), 1e-15));
        assert!(sound_speed(&PrimitiveState::new(1.0, 0.0, 0.0, 1e-12), G53) < 1e-5);
        let fast = PrimitiveState::new(1.0, 1.0 - 1e-12, 0.0, 1.0);
        let lam = max_signal_speed(&fast, G53, Direction::X);
        assert!(lam < 1.0 && lam > 1.0 - 1e-9);
    }

    #[test]
    fn thermo_matches_pieces() {
        let w = PrimitiveState::new(2.0, 0.1, 0.2, 3.0);
        let t = thermo(&w, G53);
        assert!(close(t.h, specific_enthalpy(2.0, 3.0, G53.gamma).unwrap(), 1e-15));
        assert!(close(t.cs, sound_speed(&w, G53), 1e-15));
        assert!(t.gamma_lorentz >= 1.0 && t.h >= 1.0);
    }
}
