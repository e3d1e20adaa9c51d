//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong constructing or evaluating a scenario.
///
/// Messages name the violated invariant (hermiticity, trace, ...) so that
/// front ends can surface them verbatim.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix or vector with zero dimension.
    #[error("dimension must be at least 1")]
    ZeroDimension,

    /// Dimension above the supported cap.
    #[error("dimension {dim} exceeds the cap of {cap}")]
    DimensionCap {
        /// Requested dimension.
        dim: usize,
        /// Maximum supported dimension.
        cap: usize,
    },

    /// Entry buffer does not match the declared square dimension.
    #[error("expected {dim}x{dim} = {expected} entries, got {got}")]
    EntryCount {
        /// Declared dimension.
        dim: usize,
        /// Required number of entries.
        expected: usize,
        /// Provided number of entries.
        got: usize,
    },

    /// NaN or infinite entry.
    #[error("non-finite entry at index {index}")]
    NonFinite {
        /// Flat index of the offending entry.
        index: usize,
    },

    /// Hermiticity violation beyond tolerance.
    #[error("hermiticity violated: max |m - m*| deviation {deviation:.3e}")]
    NotHermitian {
        /// Largest entry-wise deviation from the adjoint.
        deviation: f64,
    },

    /// Negative eigenvalue beyond the PSD clamp.
    #[error("not positive semidefinite: eigenvalue {eigenvalue:.3e}")]
    NotPositiveSemidefinite {
        /// Most negative eigenvalue found.
        eigenvalue: f64,
    },

    /// Operands of different dimension.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch {
        /// Dimension of the first operand.
        left: usize,
        /// Dimension of the second operand.
        right: usize,
    },

    /// Density matrix trace away from one.
    #[error("trace must be 1, got {trace}")]
    TraceNotOne {
        /// Actual trace.
        trace: f64,
    },

    /// Negative mixture weight.
    #[error("mixture weight {weight} is negative")]
    NegativeWeight {
        /// Offending weight.
        weight: f64,
    },

    /// Mixture weights that do not sum to one.
    #[error("mixture weights must sum to 1, got {sum}")]
    WeightSumNotOne {
        /// Actual sum of weights.
        sum: f64,
    },

    /// State vector with vanishing norm.
    #[error("state vector has zero norm")]
    ZeroVector,

    /// Projector idempotency violation.
    #[error("idempotency violated: max |P^2 - P| deviation {deviation:.3e}")]
    NotIdempotent {
        /// Largest entry-wise deviation of `P² − P` from zero.
        deviation: f64,
    },

    /// Projector trace away from an integer subspace dimension.
    #[error("projector trace {trace} is not an integer subspace dimension")]
    ProjectorTrace {
        /// Actual trace.
        trace: f64,
    },

    /// Operation that requires a pure state received a mixed one.
    #[error("state is mixed (rank {rank}); a pure state is required")]
    MixedState {
        /// Rank of the offending state.
        rank: usize,
    },

    /// Operation defined only for the default range projector.
    #[error("a custom projector is set; this quantity is defined for the default range projector")]
    NonDefaultProjector,

    /// Non-positive evolution horizon.
    #[error("t_max must be positive, got {t_max}")]
    NonPositiveTMax {
        /// Requested horizon.
        t_max: f64,
    },

    /// Grid with fewer than two samples.
    #[error("steps must be at least 2, got {steps}")]
    TooFewSteps {
        /// Requested number of samples.
        steps: usize,
    },

    /// Binary classical Fisher information at a degenerate probability.
    #[error("classical Fisher information undefined at t = {t}: p(1-p) = {p_complement:.3e} is degenerate")]
    DegenerateProbability {
        /// Time of the request.
        t: f64,
        /// Value of `p(1 − p)`.
        p_complement: f64,
    },

    /// Finite-difference step outside the supported range.
    #[error("oracle step dt = {dt:.3e} outside [{min:.0e}, {max:.0e}]")]
    OracleStep {
        /// Requested step.
        dt: f64,
        /// Smallest supported step.
        min: f64,
        /// Largest supported step.
        max: f64,
    },

    /// Scalar parameter outside its admissible range.
    #[error("parameter {name} = {value} outside {requirement}")]
    ParameterRange {
        /// Parameter name.
        name: &'static str,
        /// Offending value.
        value: f64,
        /// Human-readable admissible range.
        requirement: &'static str,
    },

    /// Filesystem failure.
    #[error("i/o failure")]
    Io(#[from] std::io::Error),

    /// Malformed JSON.
    #[error("malformed scenario JSON")]
    Parse(#[from] serde_json::Error),

    /// Scenario file with an unsupported format tag.
    #[error("unsupported scenario format {format}; this build reads format 1")]
    UnsupportedFormat {
        /// Format tag found in the file.
        format: u32,
    },

    /// Scenario field that failed validation; the source names the invariant.
    #[error("scenario field '{field}' invalid")]
    ScenarioField {
        /// Field within the scenario file.
        field: &'static str,
        /// Underlying violation.
        #[source]
        source: Box<Error>,
    },

    /// Scenario object of the wrong shape.
    #[error("scenario field '{field}': {detail}")]
    ScenarioShape {
        /// Field within the scenario file.
        field: &'static str,
        /// What is wrong with it.
        detail: String,
    },

    /// Unknown builder, state, or axis name.
    #[error("unknown {kind} '{name}'")]
    UnknownName {
        /// Category of the name (builder, state, axis, builtin).
        kind: &'static str,
        /// The name that was not recognized.
        name: String,
    },
}

impl Error {
    /// Wraps a validation failure with the scenario field it occurred in.
    pub fn in_field(self, field: &'static str) -> Self {
        Error::ScenarioField {
            field,
            source: Box::new(self),
        }
    }

    /// True for filesystem failures, as opposed to validation failures.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io(_) => true,
            Error::ScenarioField { source, .. } => source.is_io(),
            _ => false,
        }
    }
}
