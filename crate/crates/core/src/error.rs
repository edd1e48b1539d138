use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed arguments: dimension mismatches, zero vectors, bad indices.
    #[error("input error: {0}")]
    Input(String),

    /// Malformed arrangement file or expression, with a location.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// The arrangement is not simple; `witnesses` lists offending index sets
    /// (1-based).
    #[error("arrangement is not simple: {}", format_witnesses(.witnesses))]
    NonSimple { witnesses: Vec<Vec<usize>> },

    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A size guard tripped.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

fn format_witnesses(w: &[Vec<usize>]) -> String {
    w.iter()
        .map(|s| {
            let inner: Vec<String> = s.iter().map(|i| i.to_string()).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
