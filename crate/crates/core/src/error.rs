use thiserror::Error;

/// Errors produced across the toolkit.
#[derive(Debug, Error)]
pub enum FujdError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: value {value:e}, error estimate {error:e} after {subdivisions} subdivisions")]
    Quadrature {
        value: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("error envelope not certified at t = {t:e} (envelope {envelope:e} exceeds C/2 = {half_c:e})")]
    EnvelopeNotCertified { t: f64, envelope: f64, half_c: f64 },

    #[error("insufficient radius: max radius {max_radius:e} is below {required:e}")]
    InsufficientRadius { max_radius: f64, required: f64 },

    #[error("insufficient points: {found} points in the fit window, need at least {needed}")]
    InsufficientPoints { found: usize, needed: usize },

    #[error("ansatz window violated at t = {t:e}: 2 mu R = {lhs:e} > sqrt(t)/9 = {rhs:e}")]
    WindowViolation { t: f64, lhs: f64, rhs: f64 },

    #[error("switch-point mismatch between exact and asymptotic center value at t = {t:e}: {mismatch:e}")]
    SwitchMismatch { t: f64, mismatch: f64 },

    #[error("infeasible resolution: {0}")]
    InfeasibleResolution(String),

    #[error("step rejected at t = {t:e}; suggested dt = {suggested_dt:e}")]
    StepRejected { t: f64, suggested_dt: f64 },

    #[error("tridiagonal solver breakdown at row {row}")]
    SolverSingular { row: usize },

    #[error("invalid bracket: {0}")]
    BracketInvalid(String),

    #[error("inner-source bound violated at y = {y:e}, t = {t:e}: ratio {ratio:e} > {bound:e}")]
    InnerSourceBound { y: f64, t: f64, ratio: f64, bound: f64 },

    #[error("config error: {0}")]
    Config(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FujdError>;
