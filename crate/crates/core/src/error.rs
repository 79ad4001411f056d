use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("generator x{index} out of range (only {available} generators)")]
    GeneratorOutOfRange { index: u32, available: usize },

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("multi-index of weight {weight} exceeds degree cap {cap}")]
    WeightExceedsCap { weight: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed JSON: {0}")]
    Json(String),

    /// A rejected diagram. `crossing` is the 0-based crossing index and
    /// `arc` the offending arc label, when the problem can be pinned down.
    #[error("invalid diagram{}{}: {message}", crossing.map(|c| format!(" at crossing {c}")).unwrap_or_default(), arc.map(|a| format!(" (arc {a})")).unwrap_or_default())]
    Diagram {
        crossing: Option<usize>,
        arc: Option<u32>,
        message: String,
    },

    #[error("component {index} out of range (diagram has {available} components)")]
    ComponentOutOfRange { index: usize, available: usize },

    #[error("linking number needs two distinct components, got {0} twice")]
    SameComponent(usize),

    #[error("resource guard exceeded: {what} reached {size} (limit {limit})")]
    Resource {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("coefficient overflow in fixed-width arithmetic")]
    Overflow,

    #[error("surgery hypothesis failed: {condition}: {detail}")]
    Hypothesis { condition: String, detail: String },
}

impl Error {
    pub(crate) fn diagram(message: impl Into<String>) -> Self {
        Error::Diagram {
            crossing: None,
            arc: None,
            message: message.into(),
        }
    }

    pub(crate) fn at_crossing(crossing: usize, message: impl Into<String>) -> Self {
        Error::Diagram {
            crossing: Some(crossing),
            arc: None,
            message: message.into(),
        }
    }

    pub(crate) fn at_arc(arc: u32, message: impl Into<String>) -> Self {
        Error::Diagram {
            crossing: None,
            arc: Some(arc),
            message: message.into(),
        }
    }

    /// True for errors caused by malformed or out-of-range user input.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::Resource { .. } | Error::Overflow | Error::Hypothesis { .. }
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
