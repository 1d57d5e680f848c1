//! Python bindings: `import spinlight_py`.

use std::collections::HashMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use spinlight::classical_radiation::{self as cr, SphereFrame, SphereOptions};
use spinlight::error::Error;
use spinlight::spectra::{self, Channel, Domain};
use spinlight::spin_dynamics::{self as sd, SpinVectorRest};
use spinlight::specfun::{self, BesselOrder};
use spinlight::tensor::Vec3;
use spinlight::{kinematics, verify};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidParameter { .. } | Error::Domain { .. } | Error::Precondition(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn channel(name: &str) -> PyResult<Channel> {
    match name {
        "sigma" => Ok(Channel::Sigma),
        "pi" => Ok(Channel::Pi),
        _ => Err(PyValueError::new_err(format!("channel must be 'sigma' or 'pi', got {name:?}"))),
    }
}

/// Electron on the circular orbit of a uniform field (Gaussian units).
#[pyclass(name = "ElectronState", frozen)]
#[derive(Clone)]
struct PyElectronState {
    inner: kinematics::ElectronState,
}

#[pymethods]
impl PyElectronState {
    #[new]
    #[pyo3(signature = (gamma, field_h, g = 2.00231930436, zeta = 1.0, nu = 0.0))]
    fn new(gamma: f64, field_h: f64, g: f64, zeta: f64, nu: f64) -> PyResult<Self> {
        kinematics::ElectronState::new(gamma, field_h, g, zeta, nu)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    /// State whose field gives the requested ξ.
    #[staticmethod]
    #[pyo3(signature = (gamma, xi, g = 2.00231930436, zeta = 1.0, nu = 0.0))]
    fn from_xi(gamma: f64, xi: f64, g: f64, zeta: f64, nu: f64) -> PyResult<Self> {
        kinematics::ElectronState::from_xi(gamma, xi, g, zeta, nu)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.gamma
    }
    #[getter]
    fn field_h(&self) -> f64 {
        self.inner.field_h
    }
    #[getter]
    fn g(&self) -> f64 {
        self.inner.g
    }
    #[getter]
    fn zeta(&self) -> f64 {
        self.inner.zeta
    }
    #[getter]
    fn nu(&self) -> f64 {
        self.inner.nu
    }
    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta
    }
    #[getter]
    fn rho(&self) -> f64 {
        self.inner.rho
    }
    #[getter]
    fn omega0(&self) -> f64 {
        self.inner.omega0
    }
    #[getter]
    fn xi(&self) -> f64 {
        self.inner.xi_value()
    }

    fn orbit_radius(&self) -> f64 {
        self.inner.orbit_radius()
    }

    /// The five representations of ξ.
    fn xi_representations(&self) -> Vec<f64> {
        kinematics::xi(&self.inner).representations.to_vec()
    }

    /// Synchrotron power `W_SR` in erg/s.
    fn w_sr(&self) -> f64 {
        kinematics::w_sr(&self.inner)
    }

    fn __repr__(&self) -> String {
        let s = &self.inner;
        format!(
            "ElectronState(gamma={}, field_h={}, g={}, zeta={}, nu={})",
            s.gamma, s.field_h, s.g, s.zeta, s.nu
        )
    }
}

/// First-order power as ratios to `W_SR`.
#[pyfunction]
#[pyo3(signature = (g, zeta, xi, nu = 0.0))]
fn power_breakdown(g: f64, zeta: f64, xi: f64, nu: f64) -> HashMap<&'static str, f64> {
    let b = spectra::power_breakdown(g, zeta, xi, nu);
    HashMap::from([
        ("main_sigma", b.main_sigma),
        ("main_pi", b.main_pi),
        ("corr_sigma", b.corr_sigma),
        ("corr_pi", b.corr_pi),
        ("em_l", b.em_l),
        ("em_th", b.em_th),
        ("sigma_total", b.sigma_total),
        ("pi_total", b.pi_total),
        ("total", b.total),
        ("expansion", b.expansion),
    ])
}

#[pyfunction]
fn spectral_correction_density(y: f64, g: f64, channel_name: &str) -> PyResult<f64> {
    spectra::spectral_correction_density(y, g, channel(channel_name)?).map_err(to_py)
}

#[pyfunction]
fn angular_correction_density(chi: f64, g: f64, channel_name: &str) -> PyResult<f64> {
    Ok(spectra::angular_correction_density(chi, g, channel(channel_name)?))
}

/// Integral of a density over its domain (`"spectral"` or `"angular"`).
#[pyfunction]
fn integrated_correction(g: f64, channel_name: &str, domain: &str) -> PyResult<HashMap<&'static str, f64>> {
    let d = match domain {
        "spectral" => Domain::Spectral,
        "angular" => Domain::Angular,
        _ => return Err(PyValueError::new_err(format!("domain must be 'spectral' or 'angular', got {domain:?}"))),
    };
    let r = spectra::integrated_correction(g, channel(channel_name)?, d).map_err(to_py)?;
    Ok(HashMap::from([
        ("computed", r.computed),
        ("error_estimate", r.error_estimate),
        ("target", r.target),
        ("matches", if r.matches { 1.0 } else { 0.0 }),
    ]))
}

/// `K_ν(x)` for ν = 1/3 or 2/3.
#[pyfunction]
fn bessel_k(nu: f64, x: f64) -> PyResult<f64> {
    let order = BesselOrder::from_f64(nu).map_err(to_py)?;
    specfun::bessel_k(order, x).map_err(to_py)
}

/// Classical mixed power at proper time `tau`, closed form and optionally sphere-integrated.
#[pyfunction]
#[pyo3(signature = (state, tau = 0.0, integrate = false, frame = "rest"))]
fn mixed_power(state: &PyElectronState, tau: f64, integrate: bool, frame: &str) -> PyResult<HashMap<&'static str, f64>> {
    let s = &state.inner;
    let o = cr::orbit(s, tau);
    let p = s.particle();
    let closed = cr::mixed_power_closed_form(&o, &p);
    let mut out = HashMap::from([("w_em", closed.w_em), ("ratio", closed.ratio)]);
    if integrate {
        let frame = match frame {
            "rest" => SphereFrame::Rest,
            "lab" => SphereFrame::Lab,
            _ => return Err(PyValueError::new_err(format!("frame must be 'rest' or 'lab', got {frame:?}"))),
        };
        let opts = SphereOptions {
            frame,
            ..SphereOptions::default()
        };
        let r = cr::mixed_power_angular_integration(&o, &p, opts).map_err(to_py)?;
        out.insert("sphere_w_em", r.mixed.w_em);
        out.insert("sphere_ratio", r.mixed.ratio);
        out.insert("charge_power", r.charge_power);
        out.insert("order", r.order as f64);
    }
    Ok(out)
}

/// `(contraction, closed_form)` values of `M/m0`.
#[pyfunction]
fn renormalized_mass(state: &PyElectronState) -> (f64, f64) {
    let m = sd::renormalized_mass(&state.inner);
    (m.contraction, m.closed_form)
}

#[pyfunction]
fn reconcile(state: &PyElectronState) -> PyResult<HashMap<&'static str, f64>> {
    let r = sd::reconcile_classical_quantum(&state.inner).map_err(to_py)?;
    Ok(HashMap::from([
        ("mass_ratio", r.mass_ratio),
        ("w_sr_prime", r.w_sr_prime),
        ("w_sr_prime_exact", r.w_sr_prime_exact),
        ("w_em_l", r.w_em_l),
        ("sum", r.sum),
        ("target", r.target),
        ("residual", r.residual),
    ]))
}

/// RK4 rotation of `spin` about a constant `omega`; returns the final spin.
#[pyfunction]
fn precess(spin: [f64; 3], omega: [f64; 3], t_final: f64, dt: f64) -> PyResult<[f64; 3]> {
    let z = SpinVectorRest::new(Vec3(spin)).map_err(to_py)?;
    let w = Vec3(omega);
    sd::precess(z, |_| w, t_final, dt).map(|z| z.0 .0).map_err(to_py)
}

/// Spin history on the orbit of `state`: rows `(t, zx, zy, zz)`.
#[pyfunction]
#[pyo3(signature = (state, periods = 1.0, steps_per_period = 1000, every = 10))]
fn precess_on_orbit(state: &PyElectronState, periods: f64, steps_per_period: usize, every: usize) -> PyResult<Vec<[f64; 4]>> {
    let s = state.inner;
    let period = 2.0 * std::f64::consts::PI / s.omega0;
    let z0 = SpinVectorRest::new(cr::orbit(&s, 0.0).spin).map_err(to_py)?;
    let steps = steps_per_period.max(1) as f64;
    let h = sd::precess_history(z0, |t| sd::orbit_omega(&s, t), periods * period, period / steps, every).map_err(to_py)?;
    Ok(h.into_iter().map(|(t, z)| [t, z.x(), z.y(), z.z()]).collect())
}

/// All acceptance checks as `(id, name, passed, expected_finding, detail)`.
#[pyfunction]
fn run_verification() -> Vec<(u32, &'static str, bool, bool, String)> {
    verify::run_all(&verify::VerifyOptions::default())
        .into_iter()
        .map(|r| (r.id, r.name, r.passed, r.expected_finding, r.detail))
        .collect()
}

#[pymodule]
fn spinlight_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElectronState>()?;
    m.add_function(wrap_pyfunction!(power_breakdown, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_correction_density, m)?)?;
    m.add_function(wrap_pyfunction!(angular_correction_density, m)?)?;
    m.add_function(wrap_pyfunction!(integrated_correction, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_k, m)?)?;
    m.add_function(wrap_pyfunction!(mixed_power, m)?)?;
    m.add_function(wrap_pyfunction!(renormalized_mass, m)?)?;
    m.add_function(wrap_pyfunction!(reconcile, m)?)?;
    m.add_function(wrap_pyfunction!(precess, m)?)?;
    m.add_function(wrap_pyfunction!(precess_on_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(run_verification, m)?)?;
    Ok(())
}
