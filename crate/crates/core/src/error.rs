use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("invalid subfield: {0}")]
    InvalidSubfield(String),
    #[error("not a ring: {0}")]
    NotARing(String),
    #[error("basis element {0} is not integral over Z")]
    NotIntegral(usize),
    #[error("Q-span of the Z-basis does not equal K: {0}")]
    SpanMismatch(String),
    #[error("element is not in the coefficient field K")]
    NotInK,
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector entries do not lie in the ambient field")]
    NotInAmbientField,
    #[error("modules do not share field, ring and dimension: {0}")]
    ContextMismatch(String),
    #[error("matrix is not exactly orthogonal")]
    NotOrthogonal,
    #[error("module fails the Gram ratio criterion at (i, j, k) = {0:?}")]
    PreconditionGramCriterion((usize, usize, usize)),
    #[error("isometry is not a coincidence isometry of the module (entry {0:?})")]
    NotInOC((usize, usize)),
    #[error("vector is not in the module")]
    NotInModule,
    #[error("coordinate {0} of a pivot vector is not in K")]
    InternalCoordinateNotInK(usize),
    #[error("lattice is not contained in the reference lattice")]
    NotASublattice,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Variant name, as surfaced on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Singular => "Singular",
            Error::InvalidField(_) => "InvalidField",
            Error::InvalidSubfield(_) => "InvalidSubfield",
            Error::NotARing(_) => "NotARing",
            Error::NotIntegral(_) => "NotIntegral",
            Error::SpanMismatch(_) => "SpanMismatch",
            Error::NotInK => "NotInK",
            Error::ZeroVector => "ZeroVector",
            Error::NotInAmbientField => "NotInAmbientField",
            Error::ContextMismatch(_) => "ContextMismatch",
            Error::NotOrthogonal => "NotOrthogonal",
            Error::PreconditionGramCriterion(_) => "PreconditionGramCriterion",
            Error::NotInOC(_) => "NotInOC",
            Error::NotInModule => "NotInModule",
            Error::InternalCoordinateNotInK(_) => "InternalCoordinateNotInK",
            Error::NotASublattice => "NotASublattice",
            Error::InvalidModule(_) => "InvalidModule",
            Error::UnknownKey(_) => "UnknownKey",
            Error::Parse { .. } => "ParseError",
        }
    }
}
