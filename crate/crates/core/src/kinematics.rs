//! Physical constants, the electron state on a circular orbit and the quantum
//! parameter ξ.
//!
//! Gaussian units throughout. The Schwinger field is taken as
//! `H* = m0²c³/(e0 ħ)` (≈ 4.414e13 G); the form `m0²c²/(e0 ħ)` that is
//! sometimes quoted is short one power of `c` and would not make ξ agree
//! between its `ħω0` and `H/H*` forms.

use crate::classical_radiation;
use crate::error::{Error, Result};

/// Electron rest energy in GeV.
pub const ELECTRON_REST_ENERGY_GEV: f64 = 0.510_998_950_00e-3;
pub const GAUSS_PER_TESLA: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Elementary charge (statC).
    pub e0: f64,
    /// Electron rest mass (g).
    pub m0: f64,
    /// Speed of light (cm/s).
    pub c: f64,
    /// Reduced Planck constant (erg·s).
    pub hbar: f64,
    /// Bohr magneton `e0 ħ / (2 m0 c)`.
    pub mu0_bohr: f64,
    /// Schwinger field `m0² c³ / (e0 ħ)`.
    pub h_star: f64,
}

impl PhysicalConstants {
    pub fn new(e0: f64, m0: f64, c: f64, hbar: f64) -> Self {
        PhysicalConstants {
            e0,
            m0,
            c,
            hbar,
            mu0_bohr: e0 * hbar / (2.0 * m0 * c),
            h_star: m0 * m0 * c * c * c / (e0 * hbar),
        }
    }

    /// CODATA 2018 values in Gaussian units.
    pub fn cgs() -> Self {
        Self::new(4.803_204_712_570_263e-10, 9.109_383_701_5e-28, 2.997_924_58e10, 1.054_571_817e-27)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::cgs()
    }
}

/// Electron on a circular orbit in a uniform magnetic field `H ẑ`.
///
/// `zeta = ±1` is the sign of the rest-frame spin projection on the field
/// direction and `nu` the angle between the spin and the field. The orbit
/// radius `rho = m0c²γ/(e0H)` is the ultrarelativistic one, so
/// `rho · omega0 = c` exactly; the geometric radius of the trajectory is
/// `beta · rho` (see [`ElectronState::orbit_radius`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectronState {
    pub gamma: f64,
    pub field_h: f64,
    pub g: f64,
    pub zeta: f64,
    pub nu: f64,
    pub rho: f64,
    pub omega0: f64,
    pub beta: f64,
    pub constants: PhysicalConstants,
}

impl ElectronState {
    pub fn new(gamma: f64, field_h: f64, g: f64, zeta: f64, nu: f64) -> Result<Self> {
        Self::with_constants(gamma, field_h, g, zeta, nu, PhysicalConstants::cgs())
    }

    pub fn with_constants(
        gamma: f64,
        field_h: f64,
        g: f64,
        zeta: f64,
        nu: f64,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
                reason: "Lorentz factor must be finite and > 1",
            });
        }
        if !(field_h > 0.0) || !field_h.is_finite() {
            return Err(Error::InvalidParameter {
                name: "H",
                value: field_h,
                reason: "field strength must be finite and > 0",
            });
        }
        if zeta != 1.0 && zeta != -1.0 {
            return Err(Error::InvalidParameter {
                name: "zeta",
                value: zeta,
                reason: "spin orientation must be +1 or -1",
            });
        }
        if !g.is_finite() {
            return Err(Error::InvalidParameter {
                name: "g",
                value: g,
                reason: "g-factor must be finite",
            });
        }
        if !nu.is_finite() {
            return Err(Error::InvalidParameter {
                name: "nu",
                value: nu,
                reason: "spin angle must be finite",
            });
        }
        let PhysicalConstants { e0, m0, c, .. } = constants;
        Ok(ElectronState {
            gamma,
            field_h,
            g,
            zeta,
            nu,
            rho: m0 * c * c * gamma / (e0 * field_h),
            omega0: e0 * field_h / (m0 * c * gamma),
            beta: (1.0 - 1.0 / (gamma * gamma)).sqrt(),
            constants,
        })
    }

    /// State whose field reproduces a given ξ: `H = (2/3) ξ H* / γ`.
    pub fn from_xi(gamma: f64, xi: f64, g: f64, zeta: f64, nu: f64) -> Result<Self> {
        let constants = PhysicalConstants::cgs();
        if !(xi > 0.0) {
            return Err(Error::InvalidParameter {
                name: "xi",
                value: xi,
                reason: "xi must be > 0",
            });
        }
        let h = 2.0 / 3.0 * xi * constants.h_star / gamma;
        Self::with_constants(gamma, h, g, zeta, nu, constants)
    }

    /// Geometric radius of the trajectory, `c β / ω0`.
    pub fn orbit_radius(&self) -> f64 {
        self.beta * self.rho
    }

    /// `H / H*`.
    pub fn field_ratio(&self) -> f64 {
        self.field_h / self.constants.h_star
    }

    /// ξ in its canonical form `(3/2)(H/H*)γ`.
    pub fn xi_value(&self) -> f64 {
        1.5 * self.field_ratio() * self.gamma
    }

    /// Signed charge, mass and moment of the electron with this g-factor.
    pub fn particle(&self) -> Particle {
        Particle::electron(self.g, self.constants)
    }
}

/// Signed charge and magnetic moment of a spin-1/2 particle.
///
/// For the electron `e = −e0` and `μ = −(g/2)μ0`; every routine that needs a
/// sign takes it from here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Particle {
    pub charge: f64,
    pub mass: f64,
    pub g: f64,
    /// Total magnetic moment `(g/2)` times the signed Bohr magneton.
    pub moment: f64,
    pub constants: PhysicalConstants,
}

impl Particle {
    pub fn electron(g: f64, constants: PhysicalConstants) -> Self {
        Particle {
            charge: -constants.e0,
            mass: constants.m0,
            g,
            moment: -0.5 * g * constants.mu0_bohr,
            constants,
        }
    }

    /// Signed Bohr magneton `e ħ / (2 m c)` of this particle.
    pub fn bohr_magneton(&self) -> f64 {
        self.charge * self.constants.hbar / (2.0 * self.mass * self.constants.c)
    }
}

/// Physical input adapter: Lorentz factor from a beam energy.
pub fn gamma_from_energy_gev(energy_gev: f64) -> f64 {
    energy_gev / ELECTRON_REST_ENERGY_GEV
}

/// ξ with all five of its expressions, each computed from scratch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiValue {
    pub value: f64,
    /// `(3/2)ħγ²/(m0cρ)`, `(3/2)(ħω0/m0c²)γ²`, `(3/2)(H/H*)γ`,
    /// `3(μ0/e0ρ)γ²`, `(3/2)(ħ/m0c³)√(w_μw^μ)`.
    pub representations: [f64; 5],
}

impl XiValue {
    /// Largest pairwise relative difference between the representations.
    pub fn max_pairwise_rel_diff(&self) -> f64 {
        let r = &self.representations;
        let mut worst = 0.0_f64;
        for i in 0..5 {
            for j in (i + 1)..5 {
                let scale = r[i].abs().max(r[j].abs());
                if scale > 0.0 {
                    worst = worst.max((r[i] - r[j]).abs() / scale);
                }
            }
        }
        worst
    }
}

pub fn xi(state: &ElectronState) -> XiValue {
    let PhysicalConstants {
        e0,
        m0,
        c,
        hbar,
        mu0_bohr,
        h_star,
    } = state.constants;
    let g2 = state.gamma * state.gamma;
    let w = classical_radiation::orbit(state, 0.0).w;
    let reps = [
        1.5 * hbar * g2 / (m0 * c * state.rho),
        1.5 * hbar * state.omega0 / (m0 * c * c) * g2,
        1.5 * state.field_h / h_star * state.gamma,
        3.0 * mu0_bohr / (e0 * state.rho) * g2,
        1.5 * hbar / (m0 * c * c * c) * w.norm_sqr().abs().sqrt(),
    ];
    XiValue {
        value: reps[2],
        representations: reps,
    }
}

/// Synchrotron power `W_SR = (2/3)(e0²c/ρ²)γ⁴`, the unit of every ratio in this crate.
pub fn w_sr(state: &ElectronState) -> f64 {
    let PhysicalConstants { e0, c, .. } = state.constants;
    2.0 / 3.0 * e0 * e0 * c / (state.rho * state.rho) * state.gamma.powi(4)
}

/// The same power written through the rotation frequency, `(2/3)(e0²ω0²/c)γ⁴`.
pub fn w_sr_frequency_form(state: &ElectronState) -> f64 {
    let PhysicalConstants { e0, c, .. } = state.constants;
    2.0 / 3.0 * e0 * e0 * state.omega0 * state.omega0 / c * state.gamma.powi(4)
}

/// Liénard power of the actual trajectory, `W_SR β²`.
pub fn w_sr_lienard(state: &ElectronState) -> f64 {
    w_sr(state) * state.beta * state.beta
}
