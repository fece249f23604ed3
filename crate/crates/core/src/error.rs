use thiserror::Error;

use crate::complex::ValidationReport;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(ValidationReport),
    #[error("simplex {0} is not a face of any facet")]
    FaceNotInComplex(String),
    #[error("dimension {dim} out of range 0..={max}")]
    DimensionOutOfRange { dim: usize, max: usize },
    #[error("agent set is empty")]
    EmptyAgentSet,
    #[error("model is not local and proper: {0}")]
    NotLocalProper(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown facet `{0}`")]
    UnknownFacet(String),
    #[error("belief modality used without a belief assignment")]
    BeliefWithoutAssignment,
    #[error("formula lies outside the language of agents {{{0}}}")]
    FormulaOutsideLanguage(String),
    #[error("CDdim[{m}] needs m < {agents}")]
    DimensionArgument { m: usize, agents: usize },
    #[error("agent sets differ: {0:?} vs {1:?}")]
    AgentSetMismatch(Vec<String>, Vec<String>),
    #[error("quotient is improper: classes {0} and {1} are related by every agent")]
    QuotientImproper(String, String),
    #[error("not a simplicial map: {0}")]
    NotSimplicialMap(String),
    #[error("map is not value preserving at vertex `{0}`")]
    NotValuePreserving(String),
    #[error("state sets differ")]
    StateSetMismatch,
    #[error("postcondition for `{atom}` at vertex {vertex} differs between facets {facet_a} and {facet_b}")]
    PostconditionNotUniform {
        vertex: String,
        atom: String,
        facet_a: String,
        facet_b: String,
    },
    #[error("no facet satisfies any action precondition")]
    EmptyProduct,
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("invalid belief assignment: {0}")]
    InvalidAssignment(String),
    #[error("invalid action model: {0}")]
    InvalidAction(String),
    #[error("invalid Kripke model: {0}")]
    InvalidKripke(String),
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// Short machine-readable name, used by the CLI as `error:<kind>`.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidModel(_) => "InvalidModel",
            Error::FaceNotInComplex(_) => "FaceNotInComplex",
            Error::DimensionOutOfRange { .. } => "DimensionOutOfRange",
            Error::EmptyAgentSet => "EmptyAgentSet",
            Error::NotLocalProper(_) => "NotLocalProper",
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownAgent(_) => "UnknownAgent",
            Error::UnknownAtom(_) => "UnknownAtom",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownState(_) => "UnknownState",
            Error::UnknownFacet(_) => "UnknownFacet",
            Error::BeliefWithoutAssignment => "BeliefWithoutAssignment",
            Error::FormulaOutsideLanguage(_) => "FormulaOutsideLanguage",
            Error::DimensionArgument { .. } => "DimensionArgument",
            Error::AgentSetMismatch(..) => "AgentSetMismatch",
            Error::QuotientImproper(..) => "QuotientImproper",
            Error::NotSimplicialMap(_) => "NotSimplicialMap",
            Error::NotValuePreserving(_) => "NotValuePreserving",
            Error::StateSetMismatch => "StateSetMismatch",
            Error::PostconditionNotUniform { .. } => "PostconditionNotUniform",
            Error::EmptyProduct => "EmptyProduct",
            Error::UnknownScenario(_) => "UnknownScenario",
            Error::InvalidAssignment(_) => "InvalidAssignment",
            Error::InvalidAction(_) => "InvalidAction",
            Error::InvalidKripke(_) => "InvalidKripke",
            Error::Json(_) => "Json",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
