use std::io;

/// Errors reported by profile construction, the run-law computations, the
/// mission mapping, and the verification oracles.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A profile entry lies outside `[0, 1]` (or is NaN). `index` is the
    /// 1-based cycle number of the offending entry.
    #[error("probability {value} at cycle {index} is outside [0, 1]")]
    ProfileProbability { index: usize, value: f64 },

    /// A scalar probability parameter lies outside `[0, 1]` (or is NaN).
    #[error("probability {value} is outside [0, 1]")]
    InvalidProbability { value: f64 },

    /// A run threshold of zero was requested; the shortest meaningful run
    /// has length 1.
    #[error("run threshold k must be at least 1")]
    ZeroThreshold,

    /// An error-model parameter set violates one of the model's invariants.
    #[error("error-model constraint violated: {constraint}")]
    ModelConstraint { constraint: String },

    /// A profile of zero cycles was requested from an error model.
    #[error("a profile must span at least one TDMA cycle (n >= 1)")]
    ZeroCycles,

    /// A timing or duration quantity that must be a positive real was not.
    #[error("{name} must be a positive real (got {value})")]
    NonpositiveInput { name: &'static str, value: f64 },

    /// A profile stream line did not parse as a decimal number.
    #[error("profile line {line}: cannot parse {content:?} as a probability")]
    ProfileParse { line: usize, content: String },

    /// A profile stream line parsed but lies outside `[0, 1]`.
    #[error("profile line {line}: value {value} is outside [0, 1]")]
    ProfileRange { line: usize, value: f64 },

    /// A profile stream contained no data lines.
    #[error("profile stream contains no data lines")]
    EmptyProfile,

    /// Two profiles that must have equal lengths do not.
    #[error("profile lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// The `hi` profile of a dominance check is not pointwise >= `lo`.
    /// `index` is the 1-based cycle number of the first violation.
    #[error("not pointwise dominating at cycle {index}: lo = {lo} > hi = {hi}")]
    NotPointwiseDominating { index: usize, lo: f64, hi: f64 },

    /// Exhaustive enumeration was asked for more cycles than the 2^n guard
    /// allows.
    #[error("exhaustive enumeration supports at most n = {max} cycles (got n = {n})")]
    EnumerationTooLarge { n: usize, max: usize },

    /// A Monte Carlo estimate with zero trials was requested.
    #[error("Monte Carlo estimation requires at least one trial")]
    ZeroTrials,

    /// Zone composition over an empty row sequence was requested.
    #[error("zone composition requires at least one failure row")]
    EmptyComposition,

    /// An underlying read or write failed.
    #[error(transparent)]
    Io(#[from] io::Error),
}
