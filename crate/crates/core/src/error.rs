use thiserror::Error;

/// Which binary operation is missing for a pair of elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundKind::Meet => f.write_str("meet"),
            BoundKind::Join => f.write_str("join"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("element list is empty")]
    EmptyLattice,
    #[error("duplicate element identifier `{0}`")]
    DuplicateElement(String),
    #[error("unknown element identifier `{0}`")]
    UnknownElement(String),
    #[error("order is not antisymmetric: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    NotAPoset(String, String),
    #[error("`{0}` and `{1}` have no unique {2}")]
    NotALattice(String, String, BoundKind),
    #[error("operation needs at least two elements")]
    TrivialLattice,
    #[error("`{0}` is not below `{1}`")]
    NotComparable(String, String),
    #[error("lattice is not modular: x=`{0}`, y=`{1}`, z=`{2}`")]
    NotModular(String, String, String),
    #[error("lattice splits strongly with pair (`{0}`, `{1}`)")]
    StronglySplits(String, String),
    #[error("lattice has splitting pair (`{0}`, `{1}`)")]
    HasSplittingPair(String, String),
    #[error("(`{0}`, `{1}`) is not a splitting pair")]
    NotSplittingPair(String, String),
    #[error("splitting pair (`{0}`, `{1}`) is not strong")]
    NotStrong(String, String),
    #[error("lattice does not split strongly")]
    NoStrongPair,
    #[error("unknown catalog lattice `{0}`")]
    UnknownName(String),
    #[error("vector has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid sequence presentation: {0}")]
    InvalidPresentation(String),
    #[error("inconsistent table: {0}")]
    InconsistentTable(String),
    #[error("argument list is empty")]
    EmptyArgs,
    #[error("operands live on different lattices")]
    LatticeMismatch,
    #[error("lattice is not the recorded product")]
    NotAProduct,
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Variant name, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyLattice => "EmptyLattice",
            Error::DuplicateElement(_) => "DuplicateElement",
            Error::UnknownElement(_) => "UnknownElement",
            Error::NotAPoset(..) => "NotAPoset",
            Error::NotALattice(..) => "NotALattice",
            Error::TrivialLattice => "TrivialLattice",
            Error::NotComparable(..) => "NotComparable",
            Error::NotModular(..) => "NotModular",
            Error::StronglySplits(..) => "StronglySplits",
            Error::HasSplittingPair(..) => "HasSplittingPair",
            Error::NotSplittingPair(..) => "NotSplittingPair",
            Error::NotStrong(..) => "NotStrong",
            Error::NoStrongPair => "NoStrongPair",
            Error::UnknownName(_) => "UnknownName",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidPresentation(_) => "InvalidPresentation",
            Error::InconsistentTable(_) => "InconsistentTable",
            Error::EmptyArgs => "EmptyArgs",
            Error::LatticeMismatch => "LatticeMismatch",
            Error::NotAProduct => "NotAProduct",
            Error::SearchBudgetExceeded(_) => "SearchBudgetExceeded",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Format(_) => "Format",
            Error::Json(_) => "Json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
