//! Special functions and quadrature.

mod bessel;
mod gamma;
mod quadrature;

pub use bessel::{
    bessel_k, bessel_k_checked, bessel_k_integral, bessel_k_temme, k13_tail, k_full_integral,
    BesselOrder, BesselValue, ASYMPTOTIC_ABOVE, SERIES_BELOW, UNDERFLOW_ABOVE,
};
pub use gamma::gamma;
pub use quadrature::{
    integrate, integrate_with, QuadOptions, QuadratureResult, DEFAULT_MAX_EVALUATIONS,
};
