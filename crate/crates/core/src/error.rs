use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("nu must be odd (got {0})")]
    EvenOrder(i64),
    #[error("nu must be a positive odd integer (got {0})")]
    NonPositiveOrder(i64),
    #[error("q must be finite (got {0})")]
    NonFiniteQ(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("eigen iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("expected a {expected} solution, got {found}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("parameter mismatch: {0}")]
    Mismatch(String),
    #[error("integration step {step:e} too large; local error {estimate:e} exceeds {bound:e}, use step <= {required:e}")]
    StepTooLarge {
        step: f64,
        estimate: f64,
        bound: f64,
        required: f64,
    },
    #[error("no sign change of the shooting function on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
    #[error("root search stagnated: {0}")]
    Stagnation(String),
    #[error("filter bank has fewer than 2 taps above threshold {0:e}")]
    TooFewTaps(f64),
    #[error("filter bank is already sign corrected")]
    AlreadyCorrected,
    #[error("filter bank must be sign corrected (sum of h equal to +sqrt 2)")]
    NotSignCorrected,
    #[error(
        "cascade diverged at iteration {iteration}: sup norm grew from {before:e} to {after:e}"
    )]
    Divergence {
        iteration: usize,
        before: f64,
        after: f64,
    },
    #[error("zero search grid too coarse after {0} points")]
    GridTooCoarse(usize),
    #[error("signal length {length} is not divisible by 2^{levels}")]
    LengthNotDivisible { length: usize, levels: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence(_)
                | Error::StepTooLarge { .. }
                | Error::NoBracket { .. }
                | Error::Stagnation(_)
                | Error::Divergence { .. }
                | Error::GridTooCoarse(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
