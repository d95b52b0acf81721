use thiserror::Error;

/// Every failure the core library reports.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Error {
    #[error("point ({e}, {v}) is outside the validity domain of the {model} model")]
    Domain { model: &'static str, e: f64, v: f64 },
    #[error("argument {value} is outside the domain of {op}")]
    Argument { op: &'static str, value: f64 },
    #[error("division by a jet with zero constant term")]
    DivisionByZero,
    #[error("non-positive temperature: S_e = {s_e}")]
    NonPositiveTemperature { s_e: f64 },
    #[error("sigma_2 is singular (det = {det}); sigma_4 has a pole here")]
    SingularSigma2 { det: f64 },
    #[error("moment tensors have mismatched shapes")]
    DimensionMismatch,
    #[error("moment order {0} is not supported (1..=4)")]
    UnsupportedOrder(usize),
    #[error("all cubic coefficients vanish")]
    AllZero,
    #[error("branch {branch} does not exist: only {available} real roots at the start point")]
    NoSuchBranch { branch: usize, available: usize },
    #[error("quadrature did not reach the requested tolerance (estimate {estimate}, error {error})")]
    QuadratureFail { estimate: f64, error: f64 },
}
