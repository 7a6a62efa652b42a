use thiserror::Error;

/// Errors raised by category operations and the checkers built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("composability error: cod({f}) = {cod} but dom({g}) = {dom}")]
    Composability {
        f: String,
        g: String,
        cod: String,
        dom: String,
    },
    #[error("{0} is not a monomorphism")]
    NotMono(String),
    #[error("{0} is not an epimorphism")]
    NotEpi(String),
    #[error("no {0} exists in this category")]
    NoLimit(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("hypothesis error: {0}")]
    Hypothesis(String),
    #[error("engine inconsistency: {0}")]
    Inconsistency(String),
    #[error("predicate `{name}` failed: {message}")]
    Plugin { name: String, message: String },
}

impl CatError {
    pub fn input(msg: impl Into<String>) -> Self {
        CatError::Input(msg.into())
    }

    pub fn hypothesis(msg: impl Into<String>) -> Self {
        CatError::Hypothesis(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        CatError::Budget(msg.into())
    }

    /// True for the errors that mean "this configuration needs a limit or
    /// colimit the category does not have".
    pub fn is_missing_limit(&self) -> bool {
        matches!(self, CatError::NoLimit(_))
    }
}

pub type Result<T, E = CatError> = std::result::Result<T, E>;
