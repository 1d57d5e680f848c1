//! Spectral and angular distributions of the mixed (charge–moment) radiation
//! and the first-order total power split into σ/π and Larmor/Thomas parts.
//!
//! Spectral densities are in units of `W_SR ζ ξ cos ν` per unit `y`, where
//! `y = (2/3) ρ ω̃ / (c γ³)`. Angular densities are in units of `W_SR` per unit
//! `χ = γψ`, as written; integrating them over `χ` gives a coefficient that is
//! compared against the `ζ ξ cos ν` coefficient of the total power.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kinematics::ElectronState;
use crate::specfun::{self, BesselOrder, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Sigma,
    Pi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Spectral,
    Angular,
}

/// One abscissa of a distribution with both polarization densities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensitySample {
    pub abscissa: f64,
    pub sigma_density: f64,
    pub pi_density: f64,
}

/// Integrated first-order coefficient `(g/2 − 7)/6` (σ) or `(g/2 − 1)/6` (π).
pub fn total_power_coefficient(g: f64, channel: Channel) -> f64 {
    match channel {
        Channel::Sigma => (0.5 * g - 7.0) / 6.0,
        Channel::Pi => (0.5 * g - 1.0) / 6.0,
    }
}

/// `dW_em/dy` for one polarization channel.
pub fn spectral_correction_density(y: f64, g: f64, channel: Channel) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::Domain {
            function: "spectral_correction_density",
            value: y,
            domain: "y > 0",
        });
    }
    if y > specfun::UNDERFLOW_ABOVE {
        return Ok(0.0);
    }
    let tail = specfun::k13_tail(y)?;
    Ok(match channel {
        Channel::Sigma => {
            let k = specfun::bessel_k(BesselOrder::OneThird, y)?;
            9.0 * 3f64.sqrt() / (16.0 * PI)
                * (0.5 * g * (2.0 / 3.0) * y * tail - 2.0 * y * (tail / 3.0 + y * k))
        }
        Channel::Pi => 3.0 * 3f64.sqrt() / (8.0 * PI) * (0.5 * g - 1.0) * y * tail,
    })
}

/// `dW_em/dχ` for one polarization channel. Even in `χ`.
pub fn angular_correction_density(chi: f64, g: f64, channel: Channel) -> f64 {
    let s = 1.0 + chi * chi;
    match channel {
        Channel::Sigma => 35.0 / 32.0 * (0.5 * g * chi * chi - s) * s.powf(-2.5),
        Channel::Pi => 35.0 / 32.0 * (0.5 * g - 1.0) * chi * chi * s.powf(-4.5),
    }
}

pub fn spectral_sample(y: f64, g: f64) -> Result<DensitySample> {
    Ok(DensitySample {
        abscissa: y,
        sigma_density: spectral_correction_density(y, g, Channel::Sigma)?,
        pi_density: spectral_correction_density(y, g, Channel::Pi)?,
    })
}

pub fn angular_sample(chi: f64, g: f64) -> DensitySample {
    DensitySample {
        abscissa: chi,
        sigma_density: angular_correction_density(chi, g, Channel::Sigma),
        pi_density: angular_correction_density(chi, g, Channel::Pi),
    }
}

/// Integrated density and its comparison with the total-power coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratedCorrection {
    pub computed: f64,
    pub error_estimate: f64,
    pub target: f64,
    pub matches: bool,
}

pub const CLOSURE_REL_TOL: f64 = 1e-6;
const CLOSURE_ABS_FLOOR: f64 = 1e-9;
const INNER_TOL: f64 = 1e-11;

/// Integrates a correction density over its whole domain.
///
/// The spectral integral runs over `s = ln y ∈ (−∞, ∞)`; the angular one over
/// `θ ∈ (−π/2, π/2)` with `χ = tan θ`.
pub fn integrated_correction(g: f64, channel: Channel, domain: Domain) -> Result<IntegratedCorrection> {
    if !g.is_finite() {
        return Err(Error::InvalidParameter {
            name: "g",
            value: g,
            reason: "g-factor must be finite",
        });
    }
    let r = match domain {
        Domain::Spectral => {
            // Negligible below e^-40 (density ~ y) and above e^6.5 (~ e^-665).
            let f = |s: f64| {
                let y = s.exp();
                spectral_correction_density(y, g, channel).map_or(f64::NAN, |d| d * y)
            };
            specfun::integrate_with(f, -40.0, 6.5, QuadOptions::absolute(INNER_TOL))?
        }
        Domain::Angular => {
            let f = |theta: f64| {
                let chi = theta.tan();
                let sec2 = 1.0 + chi * chi;
                angular_correction_density(chi, g, channel) * sec2
            };
            specfun::integrate_with(f, -0.5 * PI, 0.5 * PI, QuadOptions::absolute(INNER_TOL))?
        }
    };
    if !r.value.is_finite() {
        return Err(Error::Degenerate("correction density produced a non-finite value"));
    }
    let target = total_power_coefficient(g, channel);
    let matches = (r.value - target).abs() <= (CLOSURE_REL_TOL * target.abs()).max(CLOSURE_ABS_FLOOR);
    Ok(IntegratedCorrection {
        computed: r.value,
        error_estimate: r.error_estimate,
        target,
        matches,
    })
}

/// Radiated power to first order in ξ, as ratios to `W_SR`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBreakdown {
    pub main_sigma: f64,
    pub main_pi: f64,
    /// Coefficients of `ζ ξ cos ν`.
    pub corr_sigma: f64,
    pub corr_pi: f64,
    /// Larmor part: the terms carrying `g/2`.
    pub em_l: f64,
    /// Thomas part: everything else in the correction.
    pub em_th: f64,
    pub sigma_total: f64,
    pub pi_total: f64,
    pub total: f64,
    /// `ζ ξ cos ν`, the expansion parameter.
    pub expansion: f64,
}

impl PowerBreakdown {
    /// First-order result outside its regime of validity (`|ξ cos ν| ≥ 0.1`).
    pub fn outside_first_order_regime(&self) -> bool {
        self.expansion.abs() >= 0.1
    }
}

pub fn power_breakdown(g: f64, zeta: f64, xi: f64, nu: f64) -> PowerBreakdown {
    let expansion = zeta * xi * nu.cos();
    let main_sigma = 7.0 / 8.0;
    let main_pi = 1.0 / 8.0;
    let corr_sigma = total_power_coefficient(g, Channel::Sigma);
    let corr_pi = total_power_coefficient(g, Channel::Pi);
    let sigma_total = main_sigma + expansion * corr_sigma;
    let pi_total = main_pi + expansion * corr_pi;
    PowerBreakdown {
        main_sigma,
        main_pi,
        corr_sigma,
        corr_pi,
        em_l: expansion * (0.5 * g) / 3.0,
        em_th: -4.0 / 3.0 * expansion,
        sigma_total,
        pi_total,
        total: sigma_total + pi_total,
        expansion,
    }
}

pub fn total_power(state: &ElectronState) -> PowerBreakdown {
    power_breakdown(state.g, state.zeta, state.xi_value(), state.nu)
}
