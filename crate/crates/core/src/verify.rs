//! The acceptance checks, runnable from the library, the CLI and the test suite.
//!
//! Each check returns one [`CheckResult`]; [`all_passed`] is their conjunction.
//! A check marked as an expected finding passes when the documented mismatch
//! is reproduced.

use std::f64::consts::PI;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classical_radiation::{self as cr, SphereOptions};
use crate::error::Result;
use crate::kinematics::{self, ElectronState, Particle};
use crate::specfun;
use crate::spectra::{self, Channel, Domain};
use crate::spin_dynamics::{self as sd, SpinTensor, SpinVectorRest};
use crate::tensor::{FourVector, Vec3};

pub const DEFAULT_G_VALUES: [f64; 4] = [1.0, 2.0, 2.00232, 4.0];
pub const DEFAULT_SEED: u64 = 20_240_601;

pub const CLOSURE_TOL: f64 = 1e-6;
pub const ALGEBRAIC_TOL: f64 = 1e-12;
pub const SPHERE_TOL: f64 = 1e-4;
pub const ANCHOR_TOL: f64 = 1e-6;
pub const SPECTRAL_BUDGET_S: f64 = 1.0;
pub const SPHERE_BUDGET_S: f64 = 30.0;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    /// The check confirms a known mismatch rather than an identity.
    pub expected_finding: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match (self.passed, self.expected_finding) {
            (true, true) => "PASS (expected finding)",
            (true, false) => "PASS",
            (false, _) => "FAIL",
        };
        write!(f, "[{tag}] {:>2}. {}: {}", self.id, self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub g_values: Vec<f64>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            g_values: DEFAULT_G_VALUES.to_vec(),
            seed: DEFAULT_SEED,
        }
    }
}

impl VerifyOptions {
    /// Default g values plus `g`, if it is not already among them.
    pub fn with_extra_g(g: f64) -> Self {
        let mut o = Self::default();
        if !o.g_values.contains(&g) {
            o.g_values.push(g);
        }
        o
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

fn check(id: u32, name: &'static str, r: Result<(bool, String)>) -> CheckResult {
    let (passed, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckResult {
        id,
        name,
        passed,
        expected_finding: false,
        detail,
    }
}

pub fn spectral_closure(g_values: &[f64]) -> CheckResult {
    check(1, "spectral closure", (|| {
        let mut ok = true;
        let mut parts = Vec::new();
        for &g in g_values {
            for ch in [Channel::Sigma, Channel::Pi] {
                let start = Instant::now();
                let r = spectra::integrated_correction(g, ch, Domain::Spectral)?;
                let secs = start.elapsed().as_secs_f64();
                ok &= r.matches && secs < SPECTRAL_BUDGET_S;
                parts.push(format!(
                    "g={g} {}={:.9} (target {:.9}, {:.2}s)",
                    if ch == Channel::Sigma { "sigma" } else { "pi" },
                    r.computed,
                    r.target,
                    secs
                ));
            }
        }
        Ok((ok, parts.join("; ")))
    })())
}

pub fn angular_pi_closure(g_values: &[f64]) -> CheckResult {
    check(2, "angular pi closure", (|| {
        // ∫ χ²(1+χ²)^{-9/2} dχ = B(3/2, 3)
        let beta = specfun::gamma(1.5) * specfun::gamma(3.0) / specfun::gamma(4.5);
        let mut ok = true;
        let mut parts = Vec::new();
        for &g in g_values {
            let r = spectra::integrated_correction(g, Channel::Pi, Domain::Angular)?;
            let oracle = 35.0 / 32.0 * (0.5 * g - 1.0) * beta;
            let good = r.matches && (r.computed - oracle).abs() <= (CLOSURE_TOL * oracle.abs()).max(1e-9);
            ok &= good;
            parts.push(format!("g={g} pi={:.9} (target {:.9}, Beta oracle {:.9})", r.computed, r.target, oracle));
        }
        Ok((ok, parts.join("; ")))
    })())
}

pub fn angular_sigma_finding(g_values: &[f64]) -> CheckResult {
    let mut c = check(3, "angular sigma mismatch", (|| {
        let mut ok = true;
        let mut parts = Vec::new();
        for &g in g_values {
            let r = spectra::integrated_correction(g, Channel::Sigma, Domain::Angular)?;
            let predicted = 35.0 / 32.0 * (0.5 * g * 2.0 / 3.0 - 2.0);
            let reproduces = (r.computed - predicted).abs() <= CLOSURE_TOL * predicted.abs();
            ok &= reproduces && !r.matches;
            parts.push(format!(
                "g={g} integral={:.9} (predicted {:.9}) vs total-power target {:.9}",
                r.computed, predicted, r.target
            ));
        }
        Ok((ok, parts.join("; ")))
    })());
    c.expected_finding = true;
    c
}

pub fn total_power_identity() -> CheckResult {
    check(4, "total power at g=2", (|| {
        let mut worst = 0.0_f64;
        for zeta in [1.0, -1.0] {
            for xi in [1e-4, 1e-3, 0.01, 0.05] {
                let b = spectra::power_breakdown(2.0, zeta, xi, 0.0);
                worst = worst.max((b.total - (1.0 - zeta * xi)).abs());
                worst = worst.max((b.main_sigma - 7.0 / 8.0).abs());
                worst = worst.max((b.main_pi - 1.0 / 8.0).abs());
            }
        }
        let b = spectra::power_breakdown(2.0, 1.0, 0.01, 0.0);
        Ok((
            worst <= ALGEBRAIC_TOL,
            format!(
                "W/W_SR at xi=0.01: {:.12} (target 0.99); main split {}/{}; worst deviation {worst:.1e}",
                b.total, b.main_sigma, b.main_pi
            ),
        ))
    })())
}

pub fn in_plane_spin() -> CheckResult {
    check(5, "no mixed radiation at nu=pi/2", (|| {
        let mut worst = 0.0_f64;
        for g in [2.0, 2.00232, 4.0] {
            for zeta in [1.0, -1.0] {
                let b = spectra::power_breakdown(g, zeta, 0.05, 0.5 * PI);
                for v in [b.em_l, b.em_th, b.expansion * b.corr_sigma, b.expansion * b.corr_pi] {
                    worst = worst.max(v.abs());
                }
                let s = ElectronState::new(10.0, 1e5, g, zeta, 0.5 * PI)?;
                worst = worst.max(cr::mixed_power_ratio(&s).abs() / s.xi_value());
            }
        }
        Ok((worst <= ALGEBRAIC_TOL, format!("largest correction {worst:.1e}")))
    })())
}

/// Particle with the moment sign flipped relative to the electron.
fn positive_moment(p: &Particle) -> Particle {
    Particle {
        moment: p.moment.abs(),
        ..*p
    }
}

pub fn classical_closed_form() -> CheckResult {
    check(6, "classical closed form", (|| {
        let mut worst = 0.0_f64;
        for gamma in [2.0, 5.0, 20.0, 1e3, 1e5] {
            for zeta in [1.0, -1.0] {
                for g in [2.0, 2.00232] {
                    let s = ElectronState::new(gamma, 3e4, g, zeta, 0.0)?;
                    let o = cr::orbit(&s, 0.0);
                    let xi = s.xi_value();
                    let pos = positive_moment(&s.particle());
                    let r = cr::mixed_power_closed_form(&o, &pos).ratio;
                    worst = worst.max(rel(r, -zeta / 3.0 * 0.5 * g * xi));
                    let e = cr::mixed_power_closed_form(&o, &s.particle()).ratio;
                    worst = worst.max(rel(e, zeta / 3.0 * 0.5 * g * xi));
                    let m0 = cr::mixed_power_closed_form(&o, &Particle { moment: 0.0, ..pos });
                    worst = worst.max(m0.w_em.abs());
                }
            }
        }
        Ok((
            worst <= ALGEBRAIC_TOL,
            format!("W_em/W_SR/xi = -(zeta/3)(g/2) for mu > 0, +(zeta/3)(g/2) for the electron; worst rel. deviation {worst:.1e}"),
        ))
    })())
}

pub fn angular_integration() -> CheckResult {
    check(7, "sphere integration vs closed form", (|| {
        let start = Instant::now();
        let mut ok = true;
        let mut parts = Vec::new();
        for gamma in [5.0, 20.0] {
            let s = ElectronState::new(gamma, 1e5, 2.00232, 1.0, 0.0)?;
            let o = cr::orbit(&s, 0.0);
            let p = s.particle();
            let closed = cr::mixed_power_closed_form(&o, &p);
            let near = cr::mixed_power_angular_integration(&o, &p, SphereOptions::default())?;
            let far = cr::mixed_power_angular_integration(
                &o,
                &p,
                SphereOptions {
                    radius: 2.0,
                    ..SphereOptions::default()
                },
            )?;
            let lienard = kinematics::w_sr_lienard(&s);
            let d_closed = rel(near.mixed.w_em, closed.w_em);
            let d_radius = rel(far.mixed.w_em, near.mixed.w_em);
            let d_anchor = rel(near.charge_power, lienard);
            ok &= d_closed <= SPHERE_TOL && d_radius <= ANCHOR_TOL && d_anchor <= ANCHOR_TOL;
            parts.push(format!(
                "gamma={gamma}: rel. diff {d_closed:.1e} at order {}, R vs 2R {d_radius:.1e}, charge-only vs Lienard {d_anchor:.1e}",
                near.order
            ));
        }
        let secs = start.elapsed().as_secs_f64();
        ok &= secs < SPHERE_BUDGET_S;
        parts.push(format!("{secs:.2}s"));
        Ok((ok, parts.join("; ")))
    })())
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    let s = (1.0 - z * z).sqrt();
    Vec3::new(s * phi.cos(), s * phi.sin(), z)
}

pub fn thomas_energy(seed: u64) -> CheckResult {
    check(8, "Thomas interaction energy", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Particle::electron(2.00232, kinematics::PhysicalConstants::cgs());
        let c = p.constants.c;
        let mut worst = 0.0_f64;
        for _ in 0..1000 {
            let speed: f64 = rng.random_range(0.0..0.999);
            let beta = random_unit(&mut rng) * speed;
            let gamma = 1.0 / (1.0 - beta.norm_sqr()).sqrt();
            let zeta = SpinVectorRest::new(random_unit(&mut rng).normalized())?;
            let pi = sd::spin_tensor_from_rest(zeta, beta, gamma)?;
            let v = FourVector::from_parts(gamma * c, beta * (gamma * c));
            let u = FourVector::from_parts(rng.random_range(-1.0..1.0), random_unit(&mut rng)) * 1e20;
            let w = u - v * (u.dot(v) / (c * c));
            let h_th = sd::thomas_field(&p, v, w);
            let energy = sd::interaction_energy(p.moment, &h_th, &pi, gamma);
            let scale = p.moment.abs() * h_th.max_abs() * pi.tensor().max_abs();
            worst = worst.max(energy.abs() / scale);
        }
        Ok((worst <= ALGEBRAIC_TOL, format!("1000 random states, largest |U|/scale {worst:.1e}")))
    })())
}

/// Accumulated rotation angle of the sampled trajectory about `z`.
fn swept_angle(history: &[(f64, Vec3)]) -> f64 {
    history
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0].1, w[1].1);
            a.cross(b).z().atan2(a.x() * b.x() + a.y() * b.y())
        })
        .sum()
}

pub fn precession_suite() -> CheckResult {
    check(9, "precession suite", (|| {
        let omega = Vec3::new(0.0, 0.0, 3.0);
        let period = 2.0 * PI / omega.norm();
        let z0 = SpinVectorRest::new(Vec3::new(1.0, 0.0, 0.0))?;
        let h = sd::precess_history(z0, |_| omega, 10.0 * period, period / 1000.0, 1)?;
        let angle = swept_angle(&h);
        let d_angle = rel(angle, omega.norm() * 10.0 * period);

        let tilted = SpinVectorRest::new(Vec3::new(0.6, 0.0, 0.8))?;
        let mut drift = 0.0_f64;
        let mut conserved = 0.0_f64;
        let h = sd::precess_history(tilted, |_| omega, 100.0 * period, period / 1000.0, 1000)?;
        for (_, z) in &h {
            drift = drift.max((z.norm() - 1.0).abs());
            conserved = conserved.max((z.z() - 0.8).abs());
        }

        let slow = Vec3::new(2e-5, -1e-5, 0.5e-5);
        let a = Vec3::new(0.3, 1.0, -2.0);
        let c = 2.99792458e10;
        let th = sd::omega_thomas(slow, a, 1.0 / (1.0 - slow.norm_sqr()).sqrt(), c);
        let limit = slow.cross(a) * (-0.5 / c);
        let d_limit = (th - limit).max_abs() / limit.max_abs();

        let s = ElectronState::new(5.0, 1e5, 2.00232, 1.0, 0.7)?;
        let d_forms = tensor_vector_discrepancy(&s, 2000)?;

        let ok = d_angle <= 1e-6 && drift < 1e-9 && conserved < 1e-9 && d_limit <= 1e-9 && d_forms <= 1e-8;
        Ok((
            ok,
            format!(
                "angle rel. err {d_angle:.1e}; norm drift {drift:.1e} (100 periods); conserved component {conserved:.1e}; \
                 Thomas low-speed limit {d_limit:.1e}; tensor vs vector form {d_forms:.1e}"
            ),
        ))
    })())
}

/// Largest component difference between the rest spin after one lab period
/// obtained from the covariant tensor equation and from `dζ/dt = Ω × ζ`.
pub fn tensor_vector_discrepancy(state: &ElectronState, steps: usize) -> Result<f64> {
    let period = 2.0 * PI / state.omega0;
    let o0 = cr::orbit(state, 0.0);
    let vector = sd::precess(
        SpinVectorRest::new(o0.spin)?,
        |t| sd::orbit_omega(state, t),
        period,
        period / steps as f64,
    )?;
    let tau = period / state.gamma;
    let tensor = sd::evolve_spin_tensor(state, SpinTensor(o0.pi), tau, steps)?;
    let beta = cr::orbit(state, tau).beta;
    Ok((tensor.rest_spin(beta) - vector.0).max_abs())
}

pub fn reconciliation() -> CheckResult {
    check(10, "mass renormalization and reconciliation", (|| {
        let mut worst = 0.0_f64;
        for zeta in [1.0, -1.0] {
            for xi in [1e-3, 0.01, 0.03] {
                let s = ElectronState::from_xi(1000.0, xi, 2.0, zeta, 0.0)?;
                let r = sd::reconcile_classical_quantum(&s)?;
                worst = worst.max(r.residual.abs());
                let m = sd::renormalized_mass(&s);
                worst = worst.max((m.contraction - m.closed_form).abs());
                worst = worst.max((m.closed_form - (1.0 + zeta * s.xi_value() / 3.0)).abs());
            }
        }
        let s = ElectronState::from_xi(1000.0, 0.03, 2.0, 1.0, 0.0)?;
        let m = sd::renormalized_mass(&s);
        Ok((
            worst <= ALGEBRAIC_TOL,
            format!("M/m0 at xi=0.03: {:.12} (contraction) / {:.12} (closed form); worst deviation {worst:.1e}", m.contraction, m.closed_form),
        ))
    })())
}

/// Random state with γ log-uniform in [2, 1e5] and H/H* log-uniform in [1e-8, 1e-1].
pub fn random_state(rng: &mut ChaCha8Rng) -> Result<ElectronState> {
    let gamma = 10f64.powf(rng.random_range(2f64.log10()..5.0));
    let h = 10f64.powf(rng.random_range(-8.0..-1.0)) * kinematics::PhysicalConstants::cgs().h_star;
    let zeta = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    ElectronState::new(gamma, h, 2.00232, zeta, 0.0)
}

pub fn xi_representations(seed: u64) -> CheckResult {
    check(11, "xi representations", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = 0.0_f64;
        let mut worst_first_four = 0.0_f64;
        for _ in 0..100 {
            let s = random_state(&mut rng)?;
            let x = kinematics::xi(&s);
            worst = worst.max(x.max_pairwise_rel_diff());
            let mut four = x;
            four.representations[4] = four.representations[0];
            worst_first_four = worst_first_four.max(four.max_pairwise_rel_diff());
        }
        Ok((
            worst <= ALGEBRAIC_TOL,
            format!(
                "100 random states: worst pairwise rel. diff {worst:.2e} (first four forms only: {worst_first_four:.1e}; \
                 the four-acceleration form carries an extra factor beta)"
            ),
        ))
    })())
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CheckResult> {
    vec![
        spectral_closure(&opts.g_values),
        angular_pi_closure(&opts.g_values),
        angular_sigma_finding(&opts.g_values),
        total_power_identity(),
        in_plane_spin(),
        classical_closed_form(),
        angular_integration(),
        thomas_energy(opts.seed),
        precession_suite(),
        reconciliation(),
        xi_representations(opts.seed),
    ]
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_tags() {
        let mut c = CheckResult {
            id: 3,
            name: "x",
            passed: true,
            expected_finding: true,
            detail: "d".into(),
        };
        assert!(c.to_string().starts_with("[PASS (expected finding)]"));
        c.passed = false;
        assert!(c.to_string().starts_with("[FAIL]"));
    }

    #[test]
    fn extra_g_is_deduplicated() {
        assert_eq!(VerifyOptions::with_extra_g(2.0).g_values.len(), 4);
        assert_eq!(VerifyOptions::with_extra_g(3.0).g_values.len(), 5);
    }

    #[test]
    fn swept_angle_counts_turns() {
        let h: Vec<(f64, Vec3)> = (0..=400)
            .map(|k| {
                let a = k as f64 * 0.05;
                (a, Vec3::new(a.cos(), a.sin(), 0.0))
            })
            .collect();
        assert!((swept_angle(&h) - 20.0).abs() < 1e-12);
    }
}
