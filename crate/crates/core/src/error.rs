use thiserror::Error;

/// Failure modes shared by every engine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ellipticity constants must satisfy 0 < lambda_min <= lambda_max (got {lambda_min}, {lambda_max})")]
    NonElliptic { lambda_min: f64, lambda_max: f64 },
    #[error("dimension-like parameter N+ = {n_tilde_plus} must exceed 2")]
    DimensionLikeTooSmall { n_tilde_plus: f64 },
    #[error("dimension must be at least 2 (got {0})")]
    BadDimension(usize),
    #[error("radius must be positive (got {0})")]
    NonpositiveRadius(f64),
    #[error("operation not defined for operator {0}")]
    UnsupportedOperator(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("seed fixed-point map failed to contract (ratio {ratio:.3e} at iteration {iteration})")]
    NoContraction { ratio: f64, iteration: usize },
    #[error("seed second-derivative sign check failed at r = {radius:.3e}; shrink the seed radius")]
    SeedRadiusTooLarge { radius: f64 },
    #[error("adaptive step {step:.3e} underflowed at x = {at:.6e}")]
    StepSizeUnderflow { step: f64, at: f64 },
    #[error("no sign change of u on the integration range (last x = {last:.6e}, u = {value:.6e})")]
    NoZeroFound { last: f64, value: f64 },
    #[error("denominator of the Rayleigh quotient vanishes")]
    ZeroDenominator,
    #[error("smallest discrete eigenvalues {first:.12e} and {second:.12e} are not separated")]
    MeshTooCoarse { first: f64, second: f64 },
    #[error("singular linear system at row {0}")]
    SingularSystem(usize),
    #[error("resolvent iteration diverged after {iterations} iterations (growth {growth:.3e})")]
    DivergentIteration { iterations: usize, growth: f64 },
    #[error("policy iteration did not settle after {0} sweeps")]
    PolicyCycle(usize),
    #[error("iteration did not converge after {iterations} iterations (relative change {change:.3e})")]
    NoConvergence { iterations: usize, change: f64 },
    #[error("precondition residual check failed: worst residual {worst:.3e} at r = {radius:.6e}")]
    PreconditionResidualFailure { worst: f64, radius: f64 },
    #[error("tau = {tau} must lie in (0, 2 - gamma] = (0, {upper}]")]
    BadTau { tau: f64, upper: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
