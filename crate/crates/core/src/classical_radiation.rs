//! Classical mixed radiation of a charge carrying a magnetic moment on the
//! circular orbit in a uniform magnetic field.
//!
//! The far field of the charge and of the moment are built covariantly from
//! the retarded separation `r̃ = x − r(τ)` (`r̃·r̃ = 0`, `D = r̃·v`):
//!
//! ```text
//! F_e = e [ r̃^{[μ} w^{ν]} / D² − (r̃·w) r̃^{[μ} v^{ν]} / D³ ]
//! F_m = −(μc/D) r̃^{[μ} B^{ν]}
//! B   = Π̈r̃/D² − 3(r̃·w) Π̇r̃/D³ − (r̃·ẇ) Πr̃/D³ + 3(r̃·w)² Πr̃/D⁴
//! ```
//!
//! where `Πr̃` stands for `Π^{νλ} r̃_λ`. The cross term of the stress tensor of
//! `F_e + F_m`, integrated over a sphere around the retarded position, gives
//! the mixed four-momentum rate. It is compared with the closed form
//!
//! ```text
//! dP^μ/dτ = (2/3)(eμ/c⁴) (−Π̈^{μν}w_ν − (2/c²) v^μ w_αΠ̈^{αβ}w_β − c⁻² Π^{μν}w_ν (w·w))
//! ```

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kinematics::{ElectronState, Particle};
use crate::tensor::{AntisymTensor4, Boost, FourVector, Tensor4, Vec3, METRIC};

/// Kinematic data of the orbit at one proper time, all derivatives in `τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitState {
    pub tau: f64,
    /// Position `(ct, r)`.
    pub r: FourVector,
    pub v: FourVector,
    pub w: FourVector,
    pub w_dot: FourVector,
    pub pi: AntisymTensor4,
    pub pi_dot: AntisymTensor4,
    pub pi_ddot: AntisymTensor4,
    pub beta: Vec3,
    /// Rest-frame spin `ζ` (signed, unit norm).
    pub spin: Vec3,
}

/// Value with first and second time derivatives.
#[derive(Clone, Copy)]
struct Jet([Vec3; 3]);

impl Jet {
    /// Uniform rotation about `z` at angular rate `rate`.
    fn rotating(x: Vec3, rate: f64) -> Jet {
        let z = Vec3::new(0.0, 0.0, 1.0);
        let d1 = z.cross(x) * rate;
        let d2 = z.cross(d1) * rate;
        Jet([x, d1, d2])
    }

    fn cross(&self, o: &Jet) -> Jet {
        let (a, b) = (&self.0, &o.0);
        Jet([
            a[0].cross(b[0]),
            a[1].cross(b[0]) + a[0].cross(b[1]),
            a[2].cross(b[0]) + a[1].cross(b[1]) * 2.0 + a[0].cross(b[2]),
        ])
    }

    fn dot(&self, o: &Jet) -> [f64; 3] {
        let (a, b) = (&self.0, &o.0);
        [
            a[0].dot(b[0]),
            a[1].dot(b[0]) + a[0].dot(b[1]),
            a[2].dot(b[0]) + 2.0 * a[1].dot(b[1]) + a[0].dot(b[2]),
        ]
    }

    fn scaled_by(&self, s: [f64; 3]) -> Jet {
        let a = &self.0;
        Jet([
            a[0] * s[0],
            a[1] * s[0] + a[0] * s[1],
            a[2] * s[0] + a[1] * (2.0 * s[1]) + a[0] * s[2],
        ])
    }

    fn lin(&self, k: f64, o: &Jet, l: f64) -> Jet {
        Jet([0, 1, 2].map(|i| self.0[i] * k + o.0[i] * l))
    }
}

/// Cyclotron rate `ω_c = −eH/(γmc)`; positive for the electron.
pub fn cyclotron_frequency(state: &ElectronState) -> f64 {
    let p = state.particle();
    -p.charge * state.field_h / (state.gamma * p.mass * p.constants.c)
}

/// Spin rotation rate about `z`: `−(e/mc)(g/2 − 1 + 1/γ) H`.
pub fn spin_rotation_frequency(state: &ElectronState) -> f64 {
    let p = state.particle();
    -p.charge / (p.mass * p.constants.c) * (0.5 * p.g - 1.0 + 1.0 / state.gamma) * state.field_h
}

/// Orbit of `state` at proper time `tau`.
///
/// The orbit starts at `(βρ, 0, 0)` moving along `+y`; the rest-frame spin is
/// `ζ (sin ν cos Ωt, sin ν sin Ωt, cos ν)` with `Ω` the spin rotation rate.
pub fn orbit(state: &ElectronState, tau: f64) -> OrbitState {
    let c = state.constants.c;
    let gamma = state.gamma;
    let beta = state.beta;
    let omega = cyclotron_frequency(state);
    let omega_s = spin_rotation_frequency(state);
    let t = gamma * tau;
    let radius = beta * c / omega;
    let (s, co) = (omega * t).sin_cos();
    let pos = Vec3::new(radius * co, radius * s, 0.0);

    let b = Jet::rotating(Vec3::new(-beta * s, beta * co, 0.0), omega);
    let (ss, cs) = (omega_s * t).sin_cos();
    let (sn, cn) = state.nu.sin_cos();
    let z = Jet::rotating(Vec3::new(sn * cs, sn * ss, cn) * state.zeta, omega_s);

    // Φ = γ β×ζ, Π = γζ − γ²/(γ+1) β(β·ζ)
    let phi = b.cross(&z).lin(gamma, &b, 0.0);
    let pi_vec = z.lin(gamma, &b.scaled_by(b.dot(&z)), -gamma * gamma / (gamma + 1.0));
    let tensor = |k: usize, scale: f64| AntisymTensor4::from_parts(phi.0[k], pi_vec.0[k]) * scale;

    OrbitState {
        tau,
        r: FourVector::from_parts(c * t, pos),
        v: FourVector::from_parts(gamma * c, b.0[0] * (gamma * c)),
        w: FourVector::from_parts(0.0, b.0[1] * (gamma * gamma * c)),
        w_dot: FourVector::from_parts(0.0, b.0[2] * (gamma.powi(3) * c)),
        pi: tensor(0, 1.0),
        pi_dot: tensor(1, gamma),
        pi_ddot: tensor(2, gamma * gamma),
        beta: b.0[0],
        spin: z.0[0],
    }
}

/// Retarded separation to a point on the observation sphere and the unit
/// spacelike direction `e = c r̃/D − v/c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservationRay {
    pub r_tilde: FourVector,
    pub e: FourVector,
    /// `D = r̃·v`.
    pub d: f64,
}

/// Where the observation sphere is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereFrame {
    /// Sphere in the instantaneous rest frame; smooth integrand.
    Rest,
    /// Sphere in the lab; strongly beamed for large γ.
    Lab,
}

impl ObservationRay {
    /// Ray along the lab direction `n` at lab distance `radius`.
    pub fn lab(orbit: &OrbitState, n: Vec3, radius: f64) -> Result<Self> {
        Self::from_separation(orbit, FourVector::from_parts(radius, n * radius))
    }

    /// Ray along the rest-frame direction `n` at rest-frame distance `radius`.
    pub fn rest(orbit: &OrbitState, n: Vec3, radius: f64) -> Result<Self> {
        let rest = FourVector::from_parts(radius, n * radius);
        Self::from_separation(orbit, Boost::new(orbit.beta).apply(rest))
    }

    fn from_separation(orbit: &OrbitState, r_tilde: FourVector) -> Result<Self> {
        let d = r_tilde.dot(orbit.v);
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::Degenerate("retarded separation has D = r̃·v ≤ 0"));
        }
        let c = orbit.v.norm_sqr().sqrt();
        let e = r_tilde * (c / d) - orbit.v * (1.0 / c);
        Ok(ObservationRay { r_tilde, e, d })
    }
}

/// Radiation field of a point charge `charge`.
pub fn field_tensor_charge(orbit: &OrbitState, ray: &ObservationRay, charge: f64) -> AntisymTensor4 {
    let (r, d) = (ray.r_tilde, ray.d);
    let rw = r.dot(orbit.w);
    (AntisymTensor4::wedge(r, orbit.w) * (1.0 / (d * d)) - AntisymTensor4::wedge(r, orbit.v) * (rw / d.powi(3)))
        * charge
}

/// Radiation field of a point moment `moment` with spin tensor `Π`.
pub fn field_tensor_moment(orbit: &OrbitState, ray: &ObservationRay, moment: f64, c: f64) -> AntisymTensor4 {
    let (r, d) = (ray.r_tilde, ray.d);
    let rw = r.dot(orbit.w);
    let rwd = r.dot(orbit.w_dot);
    let pr = orbit.pi.contract(r);
    let b = orbit.pi_ddot.contract(r) * (1.0 / (d * d))
        - orbit.pi_dot.contract(r) * (3.0 * rw / d.powi(3))
        - pr * (rwd / d.powi(3))
        + pr * (3.0 * rw * rw / d.powi(4));
    AntisymTensor4::wedge(r, b) * (-moment * c / d)
}

/// Symmetric bilinear part of the stress tensor, so that `T(F) = stress(F, F)`.
pub fn stress_bilinear(f1: &AntisymTensor4, f2: &AntisymTensor4) -> Tensor4 {
    let cross = f1.double_contract(f2);
    let mut m = [[0.0; 4]; 4];
    let a = f1.mixed_product(f2);
    let b = f2.mixed_product(f1);
    for mu in 0..4 {
        for nu in 0..4 {
            let g = if mu == nu { METRIC[mu] } else { 0.0 };
            m[mu][nu] = (a.0[mu][nu] + b.0[mu][nu] + 0.5 * g * cross) / (8.0 * PI);
        }
    }
    Tensor4(m)
}

/// Mixed four-momentum rate and the energy rate derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedPower {
    /// `dP^μ/dτ`.
    pub rate: FourVector,
    /// `W_em = (c/γ) dP⁰/dτ`.
    pub w_em: f64,
    /// `W_em` over the Liénard power of the charge.
    pub ratio: f64,
}

/// Liénard power `(2/3)(e²/c³)(−w·w)`.
pub fn lienard_power(orbit: &OrbitState, charge: f64, c: f64) -> f64 {
    2.0 / 3.0 * charge * charge / c.powi(3) * -orbit.w.norm_sqr()
}

fn mixed_power_from_rate(orbit: &OrbitState, particle: &Particle, rate: FourVector) -> MixedPower {
    let c = particle.constants.c;
    let gamma = orbit.v.time() / c;
    let w_em = c / gamma * rate.time();
    MixedPower {
        rate,
        w_em,
        ratio: w_em / lienard_power(orbit, particle.charge, c),
    }
}

pub fn mixed_power_closed_form(orbit: &OrbitState, particle: &Particle) -> MixedPower {
    let c = particle.constants.c;
    let c2 = c * c;
    let w = orbit.w;
    let middle = orbit.pi_ddot.sandwich(w, w);
    let rate = (orbit.pi_ddot.contract(w) * -1.0
        - orbit.v * (2.0 * middle / c2)
        - orbit.pi.contract(w) * (w.norm_sqr() / c2))
        * (2.0 / 3.0 * particle.charge * particle.moment / c.powi(4));
    mixed_power_from_rate(orbit, particle, rate)
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = x;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            dp = 1.0;
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Controls for the sphere integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereOptions {
    pub frame: SphereFrame,
    pub initial_order: usize,
    pub max_order: usize,
    pub rel_tol: f64,
    pub radius: f64,
}

impl Default for SphereOptions {
    fn default() -> Self {
        SphereOptions {
            frame: SphereFrame::Rest,
            initial_order: 8,
            max_order: 1024,
            rel_tol: 1e-12,
            radius: 1.0,
        }
    }
}

/// Result of integrating the stress tensor over the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereIntegration {
    pub mixed: MixedPower,
    /// Charge-only rate, which must reproduce the Liénard power.
    pub charge_rate: FourVector,
    pub charge_power: f64,
    /// Gauss–Legendre order in `cos θ`; `φ` uses twice as many points.
    pub order: usize,
    pub orders: usize,
}

fn sphere_sum<F>(order: usize, mut f: F) -> Result<[FourVector; 2]>
where
    F: FnMut(Vec3, f64) -> Result<[FourVector; 2]>,
{
    let nodes = gauss_legendre(order);
    let n_phi = 2 * order;
    let dphi = 2.0 * PI / n_phi as f64;
    let mut acc = [FourVector::ZERO; 2];
    for &(x, wx) in &nodes {
        let st = (1.0 - x * x).sqrt();
        for j in 0..n_phi {
            let (sp, cp) = (j as f64 * dphi).sin_cos();
            let r = f(Vec3::new(st * cp, st * sp, x), wx * dphi)?;
            acc[0] = acc[0] + r[0];
            acc[1] = acc[1] + r[1];
        }
    }
    Ok(acc)
}

/// `dP^μ/dτ = −∮ T^{μν} e_ν R'² dΩ'` for the mixed and charge-only stress
/// tensors, doubling the order until the mixed energy rate settles.
pub fn mixed_power_angular_integration(
    orbit: &OrbitState,
    particle: &Particle,
    opts: SphereOptions,
) -> Result<SphereIntegration> {
    if opts.initial_order == 0 || !(opts.radius > 0.0) || !(opts.rel_tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "sphere options",
            value: opts.radius,
            reason: "order, radius and tolerance must be positive",
        });
    }
    let c = particle.constants.c;
    let integrand = |n: Vec3, weight: f64| -> Result<[FourVector; 2]> {
        let ray = match opts.frame {
            SphereFrame::Rest => ObservationRay::rest(orbit, n, opts.radius)?,
            SphereFrame::Lab => ObservationRay::lab(orbit, n, opts.radius)?,
        };
        let fe = field_tensor_charge(orbit, &ray, particle.charge);
        let fm = field_tensor_moment(orbit, &ray, particle.moment, c);
        let r_prime = ray.d / c;
        let area = match opts.frame {
            SphereFrame::Rest => r_prime * r_prime,
            SphereFrame::Lab => opts.radius * opts.radius,
        };
        let scale = -weight * area;
        let mixed = (stress_bilinear(&fe, &fm) * 2.0).contract(ray.e) * scale;
        let charge = stress_bilinear(&fe, &fe).contract(ray.e) * scale;
        Ok([mixed, charge])
    };

    let mut orders = Vec::new();
    let mut values = Vec::new();
    let mut order = opts.initial_order;
    let mut prev: Option<f64> = None;
    while order <= opts.max_order {
        let [mixed, charge] = sphere_sum(order, integrand)?;
        let m = mixed_power_from_rate(orbit, particle, mixed);
        orders.push(order);
        values.push(m.w_em);
        if let Some(p) = prev {
            if (m.w_em - p).abs() <= opts.rel_tol * m.w_em.abs().max(f64::MIN_POSITIVE) {
                let gamma = orbit.v.time() / c;
                return Ok(SphereIntegration {
                    mixed: m,
                    charge_rate: charge,
                    charge_power: c / gamma * charge.time(),
                    order,
                    orders: orders.len(),
                });
            }
        }
        prev = Some(m.w_em);
        order *= 2;
    }
    Err(Error::SphereNonConvergence { orders, values })
}

/// Convenience: closed-form ratio `W_em/W_Liénard` on the orbit of `state`.
pub fn mixed_power_ratio(state: &ElectronState) -> f64 {
    mixed_power_closed_form(&orbit(state, 0.0), &state.particle()).ratio
}

/// `−μ γ H ζ cos ν/(m0c²)`, the expected ratio for a moment `μ`.
pub fn expected_ratio(state: &ElectronState, moment: f64) -> f64 {
    let c = state.constants.c;
    -moment * state.gamma * state.field_h * state.zeta * state.nu.cos() / (state.constants.m0 * c * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::w_sr_lienard;
    use crate::spin_dynamics::{spin_tensor_rate, EffectiveField};

    fn state(gamma: f64, zeta: f64, nu: f64) -> ElectronState {
        ElectronState::new(gamma, 1e5, 2.00232, zeta, nu).unwrap()
    }

    #[test]
    fn legendre_rule_integrates_polynomials() {
        for n in [1, 2, 5, 12] {
            let nodes = gauss_legendre(n);
            let wsum: f64 = nodes.iter().map(|p| p.1).sum();
            assert!((wsum - 2.0).abs() < 1e-14);
            let deg = 2 * n - 2;
            let s: f64 = nodes.iter().map(|&(x, w)| w * x.powi(deg as i32)).sum();
            assert!((s - 2.0 / (deg as f64 + 1.0)).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn orbit_invariants() {
        let s = state(7.0, 1.0, 0.7);
        let c = s.constants.c;
        for tau in [0.0, 1e-9, 3.7e-8] {
            let o = orbit(&s, tau);
            assert!((o.v.norm_sqr() / (c * c) - 1.0).abs() < 1e-13);
            assert!(o.v.dot(o.w).abs() < 1e-12 * o.v.max_abs() * o.w.max_abs());
            assert!(o.pi.contract(o.v).max_abs() < 1e-12 * c * s.gamma);
            assert!((o.spin.norm() - 1.0).abs() < 1e-14);
            assert!((o.r.space().norm() - s.orbit_radius()).abs() < 1e-12 * s.orbit_radius());
            // |w| = γ² ω0 c β
            let w = (-o.w.norm_sqr()).sqrt();
            let expect = s.gamma * s.gamma * s.omega0 * c * s.beta;
            assert!((w - expect).abs() < 1e-12 * expect);
        }
    }

    #[test]
    fn jets_match_finite_differences() {
        let s = state(3.0, -1.0, 1.1);
        // keep the phase small so that sin/cos do not eat the difference
        let h = 1e-3 / (s.gamma * s.omega0);
        let tau = 0.4 / (s.gamma * s.omega0);
        let (a, o, b) = (orbit(&s, tau - h), orbit(&s, tau), orbit(&s, tau + h));
        let fd1 = (b.pi - a.pi) * (0.5 / h);
        let fd2 = (b.pi - o.pi * 2.0 + a.pi) * (1.0 / (h * h));
        assert!((fd1 - o.pi_dot).max_abs() < 1e-6 * o.pi_dot.max_abs());
        assert!((fd2 - o.pi_ddot).max_abs() < 1e-5 * o.pi_ddot.max_abs());
        let fdw = (b.w - a.w) * (0.5 / h);
        assert!((fdw - o.w_dot).max_abs() < 1e-6 * o.w_dot.max_abs());
    }

    #[test]
    fn orbit_spin_obeys_covariant_precession() {
        for nu in [0.0, 0.9] {
            let s = state(5.0, 1.0, nu);
            let p = s.particle();
            let o = orbit(&s, 4e-9);
            let f = AntisymTensor4::from_field(Vec3::ZERO, Vec3::new(0.0, 0.0, s.field_h));
            let eff = EffectiveField::new(&p, &f, o.v, o.w).total();
            let rate = spin_tensor_rate(&p, &eff, &o.pi);
            assert!((rate - o.pi_dot).max_abs() < 1e-10 * o.pi_dot.max_abs(), "nu = {nu}");
        }
    }

    #[test]
    fn charge_only_reproduces_lienard() {
        let s = state(4.0, 1.0, 0.0);
        let o = orbit(&s, 0.0);
        let r = mixed_power_angular_integration(&o, &s.particle(), SphereOptions::default()).unwrap();
        let lienard = w_sr_lienard(&s);
        assert!((r.charge_power - lienard).abs() < 1e-10 * lienard);
        assert!((lienard_power(&o, s.particle().charge, s.constants.c) - lienard).abs() < 1e-12 * lienard);
        // no net momentum is radiated in the instantaneous rest frame
        let c = s.constants.c;
        let expect = o.v * (r.charge_power / (c * c));
        assert!((r.charge_rate - expect).max_abs() < 1e-9 * expect.max_abs());
    }

    #[test]
    fn sphere_matches_closed_form_in_both_frames() {
        let s = state(3.0, 1.0, 0.0);
        let o = orbit(&s, 1e-9);
        let p = s.particle();
        let closed = mixed_power_closed_form(&o, &p);
        let rest = mixed_power_angular_integration(&o, &p, SphereOptions::default()).unwrap();
        assert!((rest.mixed.w_em - closed.w_em).abs() < 1e-10 * closed.w_em.abs());
        assert!((rest.mixed.rate - closed.rate).max_abs() < 1e-9 * closed.rate.max_abs());
        let lab = mixed_power_angular_integration(
            &o,
            &p,
            SphereOptions {
                frame: SphereFrame::Lab,
                ..SphereOptions::default()
            },
        )
        .unwrap();
        assert!((lab.mixed.w_em - closed.w_em).abs() < 1e-9 * closed.w_em.abs());
    }

    #[test]
    fn ratio_matches_expectation() {
        for (gamma, zeta) in [(2.0, 1.0), (50.0, -1.0), (1e4, 1.0)] {
            let s = state(gamma, zeta, 0.0);
            let r = mixed_power_ratio(&s);
            let expect = 0.5 * s.g * zeta * s.xi_value() / 3.0;
            assert!((r - expect).abs() < 1e-11 * expect.abs(), "gamma = {gamma}");
            assert!((expected_ratio(&s, s.particle().moment) - expect).abs() < 1e-12 * expect.abs());
        }
    }

    #[test]
    fn mixed_field_linear_in_moment_and_radius_scaling() {
        let s = state(6.0, 1.0, 0.3);
        let o = orbit(&s, 0.0);
        let c = s.constants.c;
        let n = Vec3::new(0.3, -0.4, 0.866).normalized();
        let ray = ObservationRay::rest(&o, n, 1.0).unwrap();
        assert_eq!(field_tensor_moment(&o, &ray, 0.0, c).max_abs(), 0.0);
        let a = field_tensor_moment(&o, &ray, 1.0, c);
        let b = field_tensor_moment(&o, &ray, 2.5, c);
        assert!((b - a * 2.5).max_abs() < 1e-14 * b.max_abs());
        let far = ObservationRay::rest(&o, n, 2.0).unwrap();
        let a2 = field_tensor_moment(&o, &far, 1.0, c);
        assert!((a2 * 2.0 - a).max_abs() < 1e-13 * a.max_abs());
        let e2 = field_tensor_charge(&o, &far, 1.0) * 2.0;
        assert!((e2 - field_tensor_charge(&o, &ray, 1.0)).max_abs() < 1e-13 * e2.max_abs());
        assert!((ray.e.norm_sqr() + 1.0).abs() < 1e-12);
    }
}
