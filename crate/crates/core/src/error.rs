use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertices {0} and {1} lie in different connected components")]
    Disconnected(Vertex, Vertex),

    #[error("enumeration budget exceeded: more than {budget} minimum dominating sets")]
    BudgetExceeded { budget: usize },

    #[error("local rule failed at vertex {center}: {source}")]
    Rule {
        center: Vertex,
        #[source]
        source: Box<Error>,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Coarse machine-readable category: `input`, `resource` or `internal`.
    pub fn category(&self) -> &'static str {
        match self {
            Error::UnknownVertex(_)
            | Error::InvalidInput(_)
            | Error::Parse { .. }
            | Error::Disconnected(..) => "input",
            Error::BudgetExceeded { .. } => "resource",
            Error::Internal(_) => "internal",
            Error::Rule { source, .. } => source.category(),
        }
    }

    /// Strips `Rule` wrappers and returns the underlying cause.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::Rule { source, .. } => source.root_cause(),
            other => other,
        }
    }
}
