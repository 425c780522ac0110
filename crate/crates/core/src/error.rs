use thiserror::Error;

use crate::trace::TraceViolation;

/// Errors raised by the domain types, the observer, the measures and the planner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid model `{id}`: {reason}")]
    InvalidModel { id: String, reason: String },

    #[error("invalid trace: {0}")]
    InvalidTrace(TraceViolation),

    #[error("trace starts at ({col},{row}) but the observed agent starts elsewhere")]
    StartMismatch { col: u32, row: u32 },

    #[error("timestep {step} out of range for a trace of length {len}")]
    StepOutOfRange { step: usize, len: usize },

    #[error("model `{model}` has no parameter `{key}`")]
    UnknownParam { model: String, key: String },

    #[error("invalid belief distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid hypothesis set: {0}")]
    InvalidHypothesisSet(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid weight profile: {0}")]
    InvalidWeights(String),

    #[error("weight profile puts all mass on step {k} but the trace has only {len} actions")]
    KroneckerOutOfRange { k: usize, len: usize },

    #[error("no hypothesis explains the observed prefix of length {step}")]
    NoExplanation { step: usize },

    #[error("model `{0}` has no complete traces")]
    EmptyTraceSet(String),

    #[error("trace is not a complete behavior of model `{0}`")]
    IncompleteTrace(String),

    #[error("no candidate behavior to plan over: {0}")]
    EmptyCandidateSet(String),

    #[error("scenario has no objective")]
    MissingObjective,
}

impl Error {
    /// True for failures of inference or search on otherwise well-formed input.
    pub fn is_solver_error(&self) -> bool {
        matches!(
            self,
            Error::NoExplanation { .. }
                | Error::EmptyTraceSet(_)
                | Error::EmptyCandidateSet(_)
                | Error::KroneckerOutOfRange { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
