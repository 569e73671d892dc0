use thiserror::Error;

/// Errors produced by any analysis in this crate.
///
/// Each variant carries a stable machine-readable code (see [`Error::code`])
/// that the CLI echoes into JSON error reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph is disconnected ({components} components)")]
    DisconnectedGraph { components: usize },

    #[error("non-positive edge length {length} on ({u}, {v})")]
    NonPositiveEdge { u: String, v: String, length: f64 },

    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("target set is empty")]
    EmptyTarget,

    #[error("vertex `{0}` is not in the target set")]
    TargetNotInSet(String),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("segment budget {budget} exceeded ({pairs} qualifying pairs) and sampling is disabled")]
    BudgetExceeded { budget: usize, pairs: usize },

    #[error("hypotheses not met: {0}")]
    HypothesisNotMet(String),

    #[error("missing or failed thinness evidence: {0}")]
    NotThinEvidence(String),

    #[error("circle branch unreachable: {0}")]
    CircleBranchUnreachable(String),

    #[error("skeleton audit failed: {0}")]
    SkeletonAudit(String),

    #[error("anchor neighborhoods overlap")]
    AnchorsOverlap,

    #[error("anchor neighborhood is empty")]
    EmptyAnchorNeighborhood,

    #[error("skeleton does not match this space: {0}")]
    SkeletonMismatch(String),

    #[error("vertex `{0}` projects to both sides outside the base ball")]
    AmbiguousSide(String),

    #[error("point outside the coordinate chart: {0}")]
    OutOfChart(String),

    #[error("k = {k} out of range 1..={n}")]
    BadK { k: usize, n: usize },

    #[error("quadrature requires the symmetry point as base: {0}")]
    UnsupportedBase(String),

    #[error("exponent s = {0} must lie in (0, 1)")]
    BadExponent(f64),

    #[error("eigen sample violates its hypotheses: {0}")]
    InvariantViolated(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code for CLI reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DisconnectedGraph { .. } => "E_DISCONNECTED",
            Error::NonPositiveEdge { .. } => "E_NONPOSITIVE_EDGE",
            Error::UnknownVertex(_) => "E_UNKNOWN_VERTEX",
            Error::EmptyTarget => "E_EMPTY_TARGET",
            Error::TargetNotInSet(_) => "E_TARGET_NOT_IN_SET",
            Error::BadParameters(_) => "E_PARAMS",
            Error::BudgetExceeded { .. } => "E_BUDGET",
            Error::HypothesisNotMet(_) => "E_HYPOTHESIS",
            Error::NotThinEvidence(_) => "E_EVIDENCE",
            Error::CircleBranchUnreachable(_) => "E_CIRCLE_BRANCH",
            Error::SkeletonAudit(_) => "E_SKELETON_AUDIT",
            Error::AnchorsOverlap => "E_ANCHORS_OVERLAP",
            Error::EmptyAnchorNeighborhood => "E_ANCHOR_EMPTY",
            Error::SkeletonMismatch(_) => "E_SKELETON_MISMATCH",
            Error::AmbiguousSide(_) => "E_AMBIGUOUS_SIDE",
            Error::OutOfChart(_) => "E_OUT_OF_CHART",
            Error::BadK { .. } => "E_BAD_K",
            Error::UnsupportedBase(_) => "E_UNSUPPORTED_BASE",
            Error::BadExponent(_) => "E_BAD_EXPONENT",
            Error::InvariantViolated(_) => "E_EIGEN_INVARIANT",
            Error::Parse(_) => "E_PARSE",
            Error::Io(_) => "E_IO",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
