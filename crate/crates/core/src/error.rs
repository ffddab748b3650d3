use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to be
/// printed verbatim by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid element label {0:?}")]
    InvalidLabel(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("ground set too large: {size} elements exceeds the bound of {bound}")]
    GroundTooLarge { size: usize, bound: usize },
    #[error("mask out of range: {mask:#x} has bits outside a ground set of size {size}")]
    MaskOutOfRange { mask: u32, size: usize },
    #[error("set system must have at least one feasible set")]
    Improper,
    #[error("deletion yields improper system")]
    ImproperDeletion,
    #[error("move pair needs two distinct elements, got {0:?} twice")]
    DegeneratePair(String),
    #[error("matrix is not symmetric at ({row}, {col})")]
    AsymmetricMatrix { row: usize, col: usize },
    #[error(
        "dimension mismatch: matrix is {matrix}x{matrix} but ground set has {ground} elements"
    )]
    DimensionMismatch { matrix: usize, ground: usize },
    #[error("invalid ribbon graph: {0}")]
    InvalidRibbonGraph(String),
    #[error("ribbon graph is disconnected")]
    Disconnected,
    #[error("ends not neighbouring: no end of {a:?} is cyclically adjacent to an end of {b:?}")]
    EndsNotNeighbouring { a: String, b: String },
    #[error("moves on non-orientable bouquets are not supported (edge {0:?} is twisted)")]
    NonOrientable(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
