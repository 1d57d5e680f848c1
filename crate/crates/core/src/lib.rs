//! Spin-dependent corrections to synchrotron radiation.
//!
//! The crate covers the quantum first-order corrections to the radiated
//! power and its spectral and angular distributions, the classical picture of
//! a charge carrying a magnetic moment (spin precession, mass
//! renormalization, mixed charge–moment radiation) and the checks tying the
//! two together. Gaussian units are used throughout; every power is quoted as
//! a ratio to the synchrotron power `W_SR`.

pub mod classical_radiation;
pub mod cli;
pub mod error;
pub mod kinematics;
pub mod specfun;
pub mod spectra;
pub mod spin_dynamics;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use kinematics::{ElectronState, Particle, PhysicalConstants, XiValue};
pub use spectra::{Channel, Domain, PowerBreakdown};
pub use tensor::{AntisymTensor4, FourVector, Vec3};
