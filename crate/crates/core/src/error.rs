use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, HeunError>;

/// Every failure the library can report.
///
/// Variants split into two families: input validation (the caller asked
/// for something outside the domain) and numerical failure (the inputs
/// were acceptable but a computation could not be carried out). The CLI
/// maps them onto exit codes 2 and 3 via [`HeunError::is_validation`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeunError {
    #[error("p must be nonzero; the equation leaves the confluent Heun class at p = 0")]
    ZeroP,
    #[error("parameter `{0}` is not finite")]
    NonFinite(&'static str),
    #[error("z = {0} is within the guard distance of a singular point")]
    SingularPoint(Complex64),
    #[error("g(z) vanishes identically or at the evaluation point; g'/g is undefined")]
    GZero,
    #[error("lower parameter {0} is a nonpositive integer reached before the series terminates")]
    PoleParameter(Complex64),
    #[error("series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("argument {0} lies on the branch cut of the principal branch")]
    BranchCut(Complex64),
    #[error("zero base raised to a power with nonpositive real part")]
    ZeroBase,
    #[error("|z| = {modulus} exceeds the evaluation disk radius {r_max}")]
    OutOfDisk { modulus: f64, r_max: f64 },
    #[error("gamma = {0} is resonant for the requested local exponent (logarithmic case)")]
    ResonantGamma(Complex64),
    #[error("the requested reduction does not apply to these parameters")]
    NotApplicable,
    #[error("the two exponent branches coincide for these parameters")]
    DegenerateBranches,
    #[error("gamma = {0} makes the construction degenerate")]
    DegenerateGamma(Complex64),
    #[error("alpha = {0} makes the construction degenerate")]
    DegenerateAlpha(Complex64),
    #[error("the Kummer-function expansion requires sigma = 0")]
    NotSigmaZero,
    #[error("recurrence coefficient R_{0} vanishes")]
    DegenerateRn(usize),
    #[error("gamma_{0} vanishes, P_{0} is undefined")]
    ZeroGammaN(usize),
    #[error("the integration constant C0 has not been determined")]
    C0Undetermined,
    #[error("polynomial has no nonzero leading coefficient of degree >= 1")]
    DegeneratePolynomial,
    #[error("integration path passes within {0} of a singular point")]
    PathTooCloseToSingularity(f64),
    #[error("step size underflow at z = {0}")]
    StepUnderflow(Complex64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl HeunError {
    /// True for errors caused by out-of-domain input rather than by a
    /// numerical breakdown.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            HeunError::ZeroP
                | HeunError::NonFinite(_)
                | HeunError::OutOfDisk { .. }
                | HeunError::NotSigmaZero
                | HeunError::InvalidArgument(_)
        )
    }
}
