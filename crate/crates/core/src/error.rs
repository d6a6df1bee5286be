use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("boundary squares to a nonzero map out of degree {degree}")]
    BoundarySquare { degree: i32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("element is not a Lie polynomial")]
    NotLie,
    #[error("elements belong to different algebras")]
    MismatchedAlgebras,
    #[error("expected degree {expected}, found {found}")]
    WrongDegree { expected: i32, found: String },
    #[error("not a Maurer-Cartan element: {0}")]
    NotMc(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("truncation order {order} too small: need at least {needed}")]
    Truncation { order: u32, needed: u32 },
    #[error("simplex {simplex}: {reason}")]
    Simplex { simplex: String, reason: String },
    #[error("unsolvable obstruction: {0}")]
    Obstruction(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Errors caused by the caller's input, as opposed to internal faults.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::Simplex { .. }
                | Error::Unsupported(_)
                | Error::Truncation { .. }
                | Error::WrongDegree { .. }
                | Error::MismatchedAlgebras
                | Error::DimensionMismatch { .. }
                | Error::NotMc(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
