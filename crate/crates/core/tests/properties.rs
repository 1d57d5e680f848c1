use std::f64::consts::PI;

use proptest::prelude::*;

use spinlight::classical_radiation as cr;
use spinlight::spin_dynamics::{self as sd, SpinVectorRest};
use spinlight::tensor::{FourVector, Vec3};
use spinlight::{ElectronState, Particle};

fn unit(z: f64, phi: f64) -> Vec3 {
    let s = (1.0 - z * z).sqrt();
    Vec3::new(s * phi.cos(), s * phi.sin(), z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spin_tensor_is_orthogonal_to_velocity(
        zc in -1.0f64..1.0, zp in 0.0f64..6.3, bc in -1.0f64..1.0, bp in 0.0f64..6.3, speed in 0.0f64..0.9999,
    ) {
        let beta = unit(bc, bp) * speed;
        let gamma = 1.0 / (1.0 - beta.norm_sqr()).sqrt();
        let zeta = SpinVectorRest::new(unit(zc, zp)).unwrap();
        let t = sd::spin_tensor_from_rest(zeta, beta, gamma).unwrap();
        let v = FourVector::from_parts(gamma, beta * gamma);
        prop_assert!(t.tensor().contract(v).max_abs() < 1e-12 * gamma);
        prop_assert_eq!(t.tensor().antisymmetry_defect(), 0.0);
        prop_assert!((t.rest_spin(beta) - zeta.0).max_abs() < 1e-9);
    }

    #[test]
    fn mixed_power_flips_with_spin_and_scales_with_cos_nu(
        lg in 0.4f64..5.0, lh in 2.0f64..7.0, nu in 0.0f64..PI, g in 1.5f64..3.0,
    ) {
        let (gamma, h) = (10f64.powf(lg), 10f64.powf(lh));
        let up = ElectronState::new(gamma, h, g, 1.0, nu).unwrap();
        let down = ElectronState::new(gamma, h, g, -1.0, nu).unwrap();
        let mirrored = ElectronState::new(gamma, h, g, 1.0, PI - nu).unwrap();
        let aligned = ElectronState::new(gamma, h, g, 1.0, 0.0).unwrap();
        let (a, b, m, a0) = (cr::mixed_power_ratio(&up), cr::mixed_power_ratio(&down), cr::mixed_power_ratio(&mirrored), cr::mixed_power_ratio(&aligned));
        let scale = a0.abs();
        prop_assert!((a + b).abs() <= 1e-12 * scale);
        prop_assert!((a + m).abs() <= 1e-12 * scale);
        prop_assert!((a - a0 * nu.cos()).abs() <= 1e-12 * scale);
    }

    #[test]
    fn closed_form_is_linear_in_moment(k in -5.0f64..5.0, lg in 0.4f64..4.0, tau in 0.0f64..1e-6) {
        let s = ElectronState::new(10f64.powf(lg), 1e4, 2.00232, 1.0, 0.3).unwrap();
        let o = cr::orbit(&s, tau);
        let p = s.particle();
        let base = cr::mixed_power_closed_form(&o, &p).rate;
        let scaled = cr::mixed_power_closed_form(&o, &Particle { moment: k * p.moment, ..p }).rate;
        prop_assert!((scaled - base * k).max_abs() <= 1e-12 * base.max_abs() * k.abs().max(1.0));
    }

    #[test]
    fn thomas_rate_has_both_forms(lg in 0.1f64..4.0, lh in 1.0f64..6.0, tau in 0.0f64..1e-7) {
        let s = ElectronState::new(1.0 + 10f64.powf(lg), 10f64.powf(lh), 2.0, 1.0, 0.0).unwrap();
        let p = s.particle();
        let o = cr::orbit(&s, tau);
        let accel = o.w.space() * (1.0 / (s.gamma * s.gamma));
        let h = Vec3::new(0.0, 0.0, s.field_h);
        let (e0, _) = sd::rest_frame_fields(o.beta, Vec3::ZERO, h);
        let a = sd::omega_thomas(o.beta, accel, s.gamma, s.constants.c);
        let b = sd::omega_thomas_from_rest_field(&p, o.beta, e0);
        // The boosted field loses about γ ulps.
        prop_assert!((a - b).max_abs() <= 1e-14 * s.gamma.max(100.0) * a.max_abs());
    }

    #[test]
    fn rk4_conserves_axis_component(wx in -2.0f64..2.0, wy in -2.0f64..2.0, wz in 0.5f64..2.0, zc in -1.0f64..1.0, zp in 0.0f64..6.3) {
        let omega = Vec3::new(wx, wy, wz);
        let period = 2.0 * PI / omega.norm();
        let z0 = unit(zc, zp);
        let end = sd::precess(SpinVectorRest::new(z0).unwrap(), |_| omega, 5.0 * period, period / 1000.0).unwrap();
        let axis = omega.normalized();
        prop_assert!((end.0.dot(axis) - z0.dot(axis)).abs() < 1e-9);
        prop_assert!((end.norm() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn spatial_rate_averages_out_over_a_period() {
    let s = ElectronState::new(10.0, 1e5, 2.00232, 1.0, 0.0).unwrap();
    let p = s.particle();
    let n = 64;
    let period_tau = 2.0 * PI / (s.omega0 * s.gamma);
    let mut space = Vec3::ZERO;
    let mut energy = 0.0;
    for k in 0..n {
        let r = cr::mixed_power_closed_form(&cr::orbit(&s, k as f64 * period_tau / n as f64), &p).rate;
        space += r.space();
        energy += r.time();
    }
    assert!(space.max_abs() <= 1e-6 * energy.abs());
}

#[test]
fn orbit_repeats_after_one_period() {
    let s = ElectronState::new(4.0, 3e3, 2.00232, 1.0, 0.0).unwrap();
    let period_tau = 2.0 * PI / (s.omega0 * s.gamma);
    let a = cr::orbit(&s, 0.1 * period_tau);
    let b = cr::orbit(&s, 1.1 * period_tau);
    assert!((a.r.space() - b.r.space()).max_abs() < 1e-10 * s.orbit_radius());
}
