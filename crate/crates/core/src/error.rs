use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("subset {0} does not generate a finite subgroup")]
    NotSpherical(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("simplex not found: {0}")]
    SimplexNotFound(String),

    #[error("vertex label collision: {0}")]
    LabelCollision(String),

    #[error("generator images violate a Coxeter relation: {0}")]
    RelationViolation(String),

    #[error("unsupported quotient recipe: {0}")]
    UnsupportedRecipe(String),

    #[error("panel is not active: {0}")]
    PanelNotActive(String),

    #[error("tidiness violated at step {step}: {reason}")]
    TidyViolation { step: usize, reason: String },

    #[error("chamber set is not a component of any stage: {0}")]
    NotAComponent(String),

    #[error("boundary triangulation is not flag: {0}")]
    NotFlag(String),

    #[error("boundary is not a closed pseudomanifold subcomplex: {0}")]
    NotClosedBoundary(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
