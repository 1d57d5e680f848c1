use thiserror::Error;

/// Errors raised by the numerical routines and the state constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("domain error in {function}: argument {value} outside {domain}")]
    Domain {
        function: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error(
        "quadrature did not converge after {evaluations} evaluations: \
         estimate {estimate} with error {error_estimate} (requested {tolerance})"
    )]
    QuadratureNonConvergence {
        estimate: f64,
        error_estimate: f64,
        tolerance: f64,
        evaluations: usize,
    },

    #[error("sphere quadrature did not converge: orders {orders:?} gave {values:?}")]
    SphereNonConvergence { orders: Vec<usize>, values: Vec<f64> },

    #[error("degenerate geometry: {0}")]
    Degenerate(&'static str),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("step count {steps} exceeds the limit {limit}")]
    StepOverflow { steps: f64, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
