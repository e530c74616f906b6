use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse scalar {text:?}: {reason}")]
    ParseScalar { text: String, reason: &'static str },

    #[error("{op}: dimension mismatch (expected {expected}, found {found})")]
    Dimension {
        op: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{op}: shape mismatch ({left_rows}x{left_cols} vs {right_rows}x{right_cols})")]
    Shape {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("{op}: cannot shrink dimension {from} to {to}")]
    Shrink { op: &'static str, from: usize, to: usize },

    #[error("layer {index}: expected input dimension {expected}, found {found}")]
    LayerDimension {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("layer {index}: network must end with exactly one output layer")]
    OutputPlacement { index: usize },

    #[error("malformed document: {0}")]
    Document(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by inconsistent dimensions rather than syntax.
    pub fn is_dimension_error(&self) -> bool {
        matches!(
            self,
            Error::Dimension { .. }
                | Error::Shape { .. }
                | Error::Shrink { .. }
                | Error::LayerDimension { .. }
                | Error::OutputPlacement { .. }
        )
    }
}
