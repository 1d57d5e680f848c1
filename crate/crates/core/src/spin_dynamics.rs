//! Spin precession, effective fields, interaction energies and the spin
//! renormalization of the mass.
//!
//! Conventions (signature (+,−,−,−), brackets `a^{[μ}b^{ν]} = a^μb^ν − a^νb^μ`):
//!
//! ```text
//! dΠ^{μν}/dτ = (e/m0c) (H_eff^{μρ} Π_ρ^ν − H_eff^{νρ} Π_ρ^μ)
//! H_L  = (g/2) (F^{μρ} − c⁻² v^{[μ} v_λ F^{λρ]})
//! H_Th = −(m0/ec) v^{[μ} w^{ρ]}
//! ```
//!
//! The signs of the projection in `H_L` and of `H_Th` are those that keep
//! `Π^{μν} v_ν = 0` along the trajectory in this signature; with them the
//! tensor equation reproduces `dζ/dt = (Ω_L + Ω_Th) × ζ` for the rest-frame
//! spin.

use crate::classical_radiation;
use crate::error::{Error, Result};
use crate::kinematics::{ElectronState, Particle, PhysicalConstants};
use crate::tensor::{AntisymTensor4, FourVector, Vec3};

/// Tolerance on the unit norm of a rest-frame spin.
pub const UNIT_NORM_TOL: f64 = 1e-12;
/// Tolerance on `γ = (1 − β²)^{-1/2}`.
pub const GAMMA_CONSISTENCY_TOL: f64 = 1e-9;
pub const MAX_STEPS: usize = 100_000_000;

/// Rest-frame spin direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinVectorRest(pub Vec3);

impl SpinVectorRest {
    pub fn new(v: Vec3) -> Result<Self> {
        if ((v.norm() - 1.0).abs()) > UNIT_NORM_TOL {
            return Err(Error::InvalidParameter {
                name: "zeta_vec",
                value: v.norm(),
                reason: "rest-frame spin must have unit norm",
            });
        }
        Ok(SpinVectorRest(v))
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

/// Dimensionless spin tensor `Π^{μν} = (Φ, Π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinTensor(pub AntisymTensor4);

impl SpinTensor {
    pub fn tensor(&self) -> &AntisymTensor4 {
        &self.0
    }

    /// Rest-frame spin recovered from `Π` and the velocity:
    /// `ζ = (Π + γ²/(γ+1) β (β·Π)) / γ`.
    pub fn rest_spin(&self, beta: Vec3) -> Vec3 {
        let gamma = 1.0 / (1.0 - beta.norm_sqr()).sqrt();
        let (_, pi) = self.0.parts();
        (pi + beta * (gamma * gamma / (gamma + 1.0) * beta.dot(pi))) * (1.0 / gamma)
    }
}

fn lorentz_factor_checked(beta: Vec3, gamma: f64) -> Result<()> {
    let b2 = beta.norm_sqr();
    if !(b2 < 1.0) {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: b2.sqrt(),
            reason: "speed must be below c",
        });
    }
    let expect = 1.0 / (1.0 - b2).sqrt();
    if (gamma - expect).abs() > GAMMA_CONSISTENCY_TOL * expect {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "Lorentz factor inconsistent with beta",
        });
    }
    Ok(())
}

/// `Φ = γ β×ζ`, `Π = γζ − γ²/(γ+1) β(β·ζ)`.
pub fn spin_tensor_parts(zeta: Vec3, beta: Vec3, gamma: f64) -> (Vec3, Vec3) {
    let phi = beta.cross(zeta) * gamma;
    let pi = zeta * gamma - beta * (gamma * gamma / (gamma + 1.0) * beta.dot(zeta));
    (phi, pi)
}

pub fn spin_tensor_from_rest(zeta: SpinVectorRest, beta: Vec3, gamma: f64) -> Result<SpinTensor> {
    lorentz_factor_checked(beta, gamma)?;
    let (phi, pi) = spin_tensor_parts(zeta.0, beta, gamma);
    Ok(SpinTensor(AntisymTensor4::from_parts(phi, pi)))
}

fn gamma_of(beta: Vec3) -> f64 {
    1.0 / (1.0 - beta.norm_sqr()).sqrt()
}

/// Larmor angular velocity `−(eg/2m0c)(H − β×E − γ/(γ+1) β(β·H))`.
pub fn omega_larmor(particle: &Particle, beta: Vec3, e_field: Vec3, h_field: Vec3) -> Vec3 {
    let gamma = gamma_of(beta);
    let c = particle.constants.c;
    let k = -particle.charge * particle.g / (2.0 * particle.mass * c);
    (h_field - beta.cross(e_field) - beta * (gamma / (gamma + 1.0) * beta.dot(h_field))) * k
}

/// Larmor angular velocity of an electron in the given state, moving with `beta`.
pub fn omega_larmor_for_state(state: &ElectronState, beta: Vec3, e_field: Vec3, h_field: Vec3) -> Vec3 {
    omega_larmor(&state.particle(), beta, e_field, h_field)
}

/// Thomas angular velocity `−(1/c) γ²/(γ+1) β×a`.
pub fn omega_thomas(beta: Vec3, accel: Vec3, gamma: f64, c: f64) -> Vec3 {
    beta.cross(accel) * (-gamma * gamma / ((gamma + 1.0) * c))
}

/// The same Thomas rate written through the rest-frame electric field,
/// `−(e/m0c) β×E0 / (γ+1)`.
pub fn omega_thomas_from_rest_field(particle: &Particle, beta: Vec3, e_rest: Vec3) -> Vec3 {
    let gamma = gamma_of(beta);
    beta.cross(e_rest) * (-particle.charge / (particle.mass * particle.constants.c * (gamma + 1.0)))
}

/// Rest-frame fields `(E0, H0)` seen by a particle moving with `beta`.
pub fn rest_frame_fields(beta: Vec3, e_field: Vec3, h_field: Vec3) -> (Vec3, Vec3) {
    let gamma = gamma_of(beta);
    let k = gamma * gamma / (gamma + 1.0);
    let e0 = (e_field + beta.cross(h_field)) * gamma - beta * (k * beta.dot(e_field));
    let h0 = (h_field - beta.cross(e_field)) * gamma - beta * (k * beta.dot(h_field));
    (e0, h0)
}

/// Total precession rate `Ω_L + Ω_Th` on the circular orbit of `state` at lab time `t`.
pub fn orbit_omega(state: &ElectronState, t: f64) -> Vec3 {
    let p = state.particle();
    let o = classical_radiation::orbit(state, t / state.gamma);
    let accel = o.w.space() * (1.0 / (state.gamma * state.gamma));
    omega_larmor(&p, o.beta, Vec3::ZERO, Vec3::new(0.0, 0.0, state.field_h))
        + omega_thomas(o.beta, accel, state.gamma, p.constants.c)
}

/// Fixed-step RK4 for `dζ/dt = Ω(t) × ζ`. The norm is not renormalized.
pub fn precess<F>(spin0: SpinVectorRest, omega: F, t_final: f64, dt: f64) -> Result<SpinVectorRest>
where
    F: Fn(f64) -> Vec3,
{
    let mut last = spin0.0;
    precess_each(spin0, omega, t_final, dt, |_, _, z| last = z)?;
    Ok(SpinVectorRest(last))
}

/// Like [`precess`], sampling `(t, ζ)` every `every` steps (and at the end).
pub fn precess_history<F>(
    spin0: SpinVectorRest,
    omega: F,
    t_final: f64,
    dt: f64,
    every: usize,
) -> Result<Vec<(f64, Vec3)>>
where
    F: Fn(f64) -> Vec3,
{
    let every = every.max(1);
    let steps = step_count(t_final, dt)?;
    let mut out = vec![(0.0, spin0.0)];
    precess_each(spin0, omega, t_final, dt, |step, t, z| {
        if step % every == 0 || step == steps {
            out.push((t, z));
        }
    })?;
    Ok(out)
}

fn step_count(t_final: f64, dt: f64) -> Result<usize> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidParameter {
            name: "dt",
            value: dt,
            reason: "time step must be positive",
        });
    }
    if !(t_final >= 0.0) || !t_final.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t_final",
            value: t_final,
            reason: "final time must be finite and non-negative",
        });
    }
    let steps = (t_final / dt).ceil();
    if steps > MAX_STEPS as f64 {
        return Err(Error::StepOverflow {
            steps,
            limit: MAX_STEPS,
        });
    }
    Ok(steps as usize)
}

fn precess_each<F, G>(spin0: SpinVectorRest, omega: F, t_final: f64, dt: f64, mut visit: G) -> Result<()>
where
    F: Fn(f64) -> Vec3,
    G: FnMut(usize, f64, Vec3),
{
    let steps = step_count(t_final, dt)?;
    let rhs = |t: f64, z: Vec3| omega(t).cross(z);
    let mut z = spin0.0;
    for n in 0..steps {
        let t = n as f64 * dt;
        // last step lands exactly on t_final
        let h = if n + 1 == steps { t_final - t } else { dt };
        let k1 = rhs(t, z);
        let k2 = rhs(t + 0.5 * h, z + k1 * (0.5 * h));
        let k3 = rhs(t + 0.5 * h, z + k2 * (0.5 * h));
        let k4 = rhs(t + h, z + k3 * h);
        z += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        visit(n + 1, t + h, z);
    }
    Ok(())
}

/// Larmor and Thomas parts of the effective field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveField {
    pub larmor: AntisymTensor4,
    pub thomas: AntisymTensor4,
}

impl EffectiveField {
    pub fn new(particle: &Particle, field: &AntisymTensor4, v: FourVector, w: FourVector) -> Self {
        EffectiveField {
            larmor: larmor_field(particle, field, v),
            thomas: thomas_field(particle, v, w),
        }
    }

    pub fn total(&self) -> AntisymTensor4 {
        self.larmor + self.thomas
    }
}

/// `H_L = (g/2)(F − c⁻² v^{[μ} v_λ F^{λρ]})`.
pub fn larmor_field(particle: &Particle, field: &AntisymTensor4, v: FourVector) -> AntisymTensor4 {
    let c2 = particle.constants.c * particle.constants.c;
    let vf = field.left_contract(v);
    (*field - AntisymTensor4::wedge(v, vf) * (1.0 / c2)) * (0.5 * particle.g)
}

/// `H_Th = −(m0/ec) v^{[μ} w^{ρ]}`.
pub fn thomas_field(particle: &Particle, v: FourVector, w: FourVector) -> AntisymTensor4 {
    AntisymTensor4::wedge(v, w) * (-particle.mass / (particle.charge * particle.constants.c))
}

/// Right-hand side of the covariant precession equation.
pub fn spin_tensor_rate(particle: &Particle, effective: &AntisymTensor4, pi: &AntisymTensor4) -> AntisymTensor4 {
    let k = particle.charge / (particle.mass * particle.constants.c);
    AntisymTensor4::antisymmetrize(&effective.mixed_product(pi)) * k
}

/// Integrates the covariant precession equation along the circular orbit of
/// `state` in proper time with fixed-step RK4, starting from `pi0` at `τ = 0`.
pub fn evolve_spin_tensor(state: &ElectronState, pi0: SpinTensor, tau_final: f64, steps: usize) -> Result<SpinTensor> {
    if steps == 0 || steps > MAX_STEPS {
        return Err(Error::StepOverflow {
            steps: steps as f64,
            limit: MAX_STEPS,
        });
    }
    let particle = state.particle();
    let field = AntisymTensor4::from_field(Vec3::ZERO, Vec3::new(0.0, 0.0, state.field_h));
    let rhs = |tau: f64, pi: &AntisymTensor4| {
        let o = classical_radiation::orbit(state, tau);
        let eff = EffectiveField::new(&particle, &field, o.v, o.w).total();
        spin_tensor_rate(&particle, &eff, pi)
    };
    let h = tau_final / steps as f64;
    let mut pi = pi0.0;
    for n in 0..steps {
        let tau = n as f64 * h;
        let k1 = rhs(tau, &pi);
        let k2 = rhs(tau + 0.5 * h, &(pi + k1 * (0.5 * h)));
        let k3 = rhs(tau + 0.5 * h, &(pi + k2 * (0.5 * h)));
        let k4 = rhs(tau + h, &(pi + k3 * h));
        pi = pi + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    Ok(SpinTensor(pi))
}

/// `−(μ/2γ) H^{αβ} Π_{αβ}`.
pub fn interaction_energy(mu: f64, field: &AntisymTensor4, pi: &SpinTensor, gamma: f64) -> f64 {
    -mu / (2.0 * gamma) * field.double_contract(&pi.0)
}

/// `M/m0` computed two ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassRenormalization {
    /// `1 − (μ/2m0c²) H^{αβ}Π_{αβ}` with `μ = −μ0`.
    pub contraction: f64,
    /// `1 + ζ ξ cos ν / 3`.
    pub closed_form: f64,
}

/// Spin-dependent mass of an electron on the orbit of `state`.
///
/// The contraction is normalized by `m0c²` so that the correction is
/// dimensionless; `H^{αβ}Π_{αβ} = 2 (ζ·H0)` reduces it to
/// `μ0 γ H ζ cos ν / (m0c²) = ζ ξ cos ν / 3`.
pub fn renormalized_mass(state: &ElectronState) -> MassRenormalization {
    let PhysicalConstants { m0, c, mu0_bohr, .. } = state.constants;
    let o = classical_radiation::orbit(state, 0.0);
    let field = AntisymTensor4::from_field(Vec3::ZERO, Vec3::new(0.0, 0.0, state.field_h));
    let mu = -mu0_bohr;
    let contraction = 1.0 - mu / (2.0 * m0 * c * c) * field.double_contract(&o.pi);
    MassRenormalization {
        contraction,
        closed_form: 1.0 + state.zeta * state.xi_value() * state.nu.cos() / 3.0,
    }
}

/// Ratios to `W_SR` comparing the quantum total with the classical picture of
/// a renormalized main term plus Larmor mixed radiation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconciliationReport {
    pub mass_ratio: f64,
    /// First-order `(m0/M)⁴ ≈ 1 − (4/3) ζ ξ`.
    pub w_sr_prime: f64,
    /// `(m0/M)⁴` without expanding.
    pub w_sr_prime_exact: f64,
    pub w_em_l: f64,
    pub sum: f64,
    /// `1 − ζ ξ`.
    pub target: f64,
    pub residual: f64,
}

pub const RECONCILE_TOL: f64 = 1e-12;

impl ReconciliationReport {
    pub fn agrees(&self) -> bool {
        self.residual.abs() <= RECONCILE_TOL
    }
}

/// Requires `g = 2` and `ν = 0`.
pub fn reconcile_classical_quantum(state: &ElectronState) -> Result<ReconciliationReport> {
    if state.g != 2.0 || state.nu != 0.0 {
        return Err(Error::Precondition(format!(
            "reconciliation needs g = 2 and nu = 0 (got g = {}, nu = {})",
            state.g, state.nu
        )));
    }
    let m = renormalized_mass(state);
    let delta = m.contraction - 1.0;
    let w_sr_prime = 1.0 - 4.0 * delta;
    let w_sr_prime_exact = m.contraction.powi(-4);
    let x = state.zeta * state.xi_value();
    let w_em_l = x * (0.5 * state.g) / 3.0;
    let sum = w_sr_prime + w_em_l;
    let target = 1.0 - x;
    Ok(ReconciliationReport {
        mass_ratio: m.contraction,
        w_sr_prime,
        w_sr_prime_exact,
        w_em_l,
        sum,
        target,
        residual: sum - target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Boost;
    use std::f64::consts::PI;

    fn electron() -> Particle {
        Particle::electron(2.00232, PhysicalConstants::cgs())
    }

    #[test]
    fn rest_frame_tensor() {
        let z = SpinVectorRest::new(Vec3::new(0.0, 0.6, 0.8)).unwrap();
        let t = spin_tensor_from_rest(z, Vec3::ZERO, 1.0).unwrap();
        let (phi, pi) = t.0.parts();
        assert_eq!(phi, Vec3::ZERO);
        assert_eq!(pi, z.0);
    }

    #[test]
    fn transverse_spin_scales_with_gamma() {
        let beta = Vec3::new(0.8, 0.0, 0.0);
        let gamma = 1.0 / (1.0 - 0.64_f64).sqrt();
        let z = SpinVectorRest::new(Vec3::new(0.0, 0.0, 1.0)).unwrap();
        let (_, pi) = spin_tensor_from_rest(z, beta, gamma).unwrap().0.parts();
        assert!((pi - z.0 * gamma).max_abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(SpinVectorRest::new(Vec3::new(1.0, 1.0, 0.0)).is_err());
        let z = SpinVectorRest::new(Vec3::new(1.0, 0.0, 0.0)).unwrap();
        assert!(spin_tensor_from_rest(z, Vec3::new(0.6, 0.0, 0.0), 1.3).is_err());
        assert!(spin_tensor_from_rest(z, Vec3::new(1.0, 0.0, 0.0), 10.0).is_err());
    }

    #[test]
    fn spin_tensor_is_orthogonal_to_velocity_and_maps_back() {
        let beta = Vec3::new(0.3, -0.5, 0.7);
        let gamma = gamma_of(beta);
        let z = SpinVectorRest::new(Vec3::new(0.48, 0.6, -0.64)).unwrap();
        let t = spin_tensor_from_rest(z, beta, gamma).unwrap();
        let v = FourVector::from_parts(gamma, beta * gamma);
        assert!(t.0.contract(v).max_abs() < 1e-14 * gamma);
        assert!((t.rest_spin(beta) - z.0).max_abs() < 1e-14);
        // boosting the rest-frame tensor agrees with the closed-form map
        let rest = AntisymTensor4::from_parts(Vec3::ZERO, z.0);
        let boosted = Boost::new(beta).apply_tensor(&rest);
        assert!((boosted - t.0).max_abs() < 1e-13);
    }

    #[test]
    fn larmor_limits() {
        let p = electron();
        let h = Vec3::new(0.1, -0.3, 2.0);
        let k = -p.charge * p.g / (2.0 * p.mass * p.constants.c);
        let at_rest = omega_larmor(&p, Vec3::ZERO, Vec3::ZERO, h);
        assert!((at_rest - h * k).max_abs() < 1e-12 * (h * k).max_abs());

        let hz = Vec3::new(0.0, 0.0, 5.0);
        let beta = Vec3::new(0.9, 0.1, 0.0);
        let w = omega_larmor(&p, beta, Vec3::ZERO, hz);
        assert!((w - hz * k).max_abs() < 1e-12 * (hz * k).max_abs());
    }

    #[test]
    fn larmor_magnitude_from_boosted_field() {
        let p = electron();
        let beta = Vec3::new(0.5, 0.2, -0.6);
        let gamma = gamma_of(beta);
        let e = Vec3::new(0.7, -1.0, 0.4);
        let h = Vec3::new(-0.3, 0.9, 1.1);
        // Rest-frame field from boosting F into the comoving frame.
        let f_lab = AntisymTensor4::from_field(e, h);
        let f_rest = Boost::new(-beta).apply_tensor(&f_lab);
        let (_, h_rest) = f_rest.field_parts();
        let expect = h_rest * (-0.5 * p.g * p.charge / (p.mass * p.constants.c * gamma));
        let got = omega_larmor(&p, beta, e, h);
        assert!((got - expect).max_abs() < 1e-12 * expect.max_abs());
        let (_, h0) = rest_frame_fields(beta, e, h);
        assert!((h0 - h_rest).max_abs() < 1e-13);
    }

    #[test]
    fn thomas_limits() {
        let c = 1.0;
        let beta = Vec3::new(0.3, 0.0, 0.0);
        let along = omega_thomas(beta, Vec3::new(2.0, 0.0, 0.0), gamma_of(beta), c);
        assert_eq!(along, Vec3::ZERO);

        let slow = Vec3::new(1e-6, 2e-6, 0.0);
        let a = Vec3::new(0.0, 1.0, 3.0);
        let w = omega_thomas(slow, a, gamma_of(slow), c);
        let expect = slow.cross(a) * -0.5;
        assert!((w - expect).max_abs() < 1e-9 * expect.max_abs());
    }

    #[test]
    fn thomas_forms_agree_on_orbit() {
        let state = ElectronState::new(4.0, 1e6, 2.0, 1.0, 0.0).unwrap();
        let p = state.particle();
        let o = classical_radiation::orbit(&state, 0.3e-9);
        let gamma = state.gamma;
        let c = state.constants.c;
        let beta = o.beta;
        let accel = o.w.space() * (1.0 / (gamma * gamma));
        let h = Vec3::new(0.0, 0.0, state.field_h);
        let (e_rest, _) = rest_frame_fields(beta, Vec3::ZERO, h);
        let a = omega_thomas(beta, accel, gamma, c);
        let b = omega_thomas_from_rest_field(&p, beta, e_rest);
        assert!((a - b).max_abs() < 1e-12 * a.max_abs());
        // Ω_Th = (e/m0c)(1 − 1/γ) H
        let expect = h * (p.charge / (p.mass * c) * (1.0 - 1.0 / gamma));
        assert!((a - expect).max_abs() < 1e-12 * expect.max_abs());
    }

    #[test]
    fn fixed_point_and_full_turn() {
        let omega = Vec3::new(0.0, 0.0, 2.0);
        let z = SpinVectorRest::new(Vec3::new(0.0, 0.0, 1.0)).unwrap();
        let end = precess(z, |_| omega, 10.0, 1e-3).unwrap();
        assert!((end.0 - z.0).max_abs() < 1e-15);

        let z = SpinVectorRest::new(Vec3::new(1.0, 0.0, 0.0)).unwrap();
        let period = 2.0 * PI / omega.norm();
        let end = precess(z, |_| omega, period, period / 1000.0).unwrap();
        assert!((end.0 - z.0).max_abs() < 1e-8);
    }

    #[test]
    fn precess_rejects_bad_steps() {
        let z = SpinVectorRest::new(Vec3::new(1.0, 0.0, 0.0)).unwrap();
        assert!(precess(z, |_| Vec3::ZERO, 1.0, 0.0).is_err());
        assert!(matches!(
            precess(z, |_| Vec3::ZERO, 1e12, 1e-3),
            Err(Error::StepOverflow { .. })
        ));
    }

    #[test]
    fn history_includes_endpoints() {
        let z = SpinVectorRest::new(Vec3::new(1.0, 0.0, 0.0)).unwrap();
        let h = precess_history(z, |_| Vec3::new(0.0, 0.0, 1.0), 1.0, 0.1, 3).unwrap();
        assert_eq!(h.first().unwrap().0, 0.0);
        assert_eq!(h.len(), 1 + 4);
        assert!((h.last().unwrap().0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn thomas_energy_vanishes_and_zero_moment() {
        let state = ElectronState::new(30.0, 1e5, 2.0, -1.0, 0.4).unwrap();
        let p = state.particle();
        let o = classical_radiation::orbit(&state, 1e-10);
        let h_th = thomas_field(&p, o.v, o.w);
        let pi = SpinTensor(o.pi);
        let u = interaction_energy(p.moment, &h_th, &pi, state.gamma);
        let scale = p.moment.abs() * h_th.max_abs() * o.pi.max_abs();
        assert!(u.abs() <= 1e-12 * scale);
        let f = AntisymTensor4::from_field(Vec3::ZERO, Vec3::new(0.0, 0.0, state.field_h));
        assert_eq!(interaction_energy(0.0, &f, &pi, state.gamma), 0.0);
    }

    #[test]
    fn larmor_energy_matches_rest_frame_form() {
        let state = ElectronState::new(12.0, 3e4, 2.00232, 1.0, 0.0).unwrap();
        let p = state.particle();
        let o = classical_radiation::orbit(&state, 0.0);
        let h = Vec3::new(0.0, 0.0, state.field_h);
        let f = AntisymTensor4::from_field(Vec3::ZERO, h);
        let h_l = larmor_field(&p, &f, o.v);
        // H_L carries g/2, so it pairs with the Bohr magneton
        let u_tensor = interaction_energy(p.bohr_magneton(), &h_l, &SpinTensor(o.pi), state.gamma);
        let (_, h0) = rest_frame_fields(o.beta, Vec3::ZERO, h);
        let u_vector = -p.moment / state.gamma * o.spin.dot(h0);
        assert!((u_tensor - u_vector).abs() < 1e-12 * u_vector.abs());
        // and for β ⊥ H this is −μ ζ H
        assert!((u_vector + p.moment * state.zeta * state.field_h).abs() < 1e-12 * u_vector.abs());
    }

    #[test]
    fn mass_closed_form_values() {
        let state = ElectronState::from_xi(500.0, 0.03, 2.0, 1.0, 0.0).unwrap();
        let m = renormalized_mass(&state);
        assert!((m.closed_form - 1.01).abs() < 1e-15);
        assert!((m.contraction - m.closed_form).abs() < 1e-12);
    }

    #[test]
    fn reconciliation() {
        let s = ElectronState::from_xi(1000.0, 0.01, 2.0, 1.0, 0.0).unwrap();
        let r = reconcile_classical_quantum(&s).unwrap();
        assert!((r.w_sr_prime - (1.0 - 4.0 / 300.0)).abs() < 1e-12);
        assert!((r.sum - 0.99).abs() < 1e-12);
        assert!(r.agrees());

        let s = ElectronState::from_xi(1000.0, 0.01, 2.0, -1.0, 0.0).unwrap();
        let r = reconcile_classical_quantum(&s).unwrap();
        assert!((r.sum - 1.01).abs() < 1e-12);

        let s = ElectronState::from_xi(1000.0, 0.01, 2.00232, 1.0, 0.0).unwrap();
        assert!(reconcile_classical_quantum(&s).is_err());
    }
}
