use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vector has no nonzero coefficient")]
    InvalidVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("combine needs one strictly satisfying and one violating argument")]
    Combine,
    #[error("empty generator system")]
    EmptySystem,
    #[error("identifier {0} does not name a live skeleton element")]
    StaleId(usize),
    #[error("projection produced an empty support")]
    EmptySupport,
    #[error("input exceeds the brute-force size limit ({0})")]
    ScaleLimit(String),
    #[error("kind not accepted here: {0}")]
    Kind(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
