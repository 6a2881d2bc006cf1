use thiserror::Error;

/// Every failure the library can report. Witness payloads carry the names of
/// the offending objects and morphisms so they can be printed and replayed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("missing composite for {g} . {f}")]
    MissingComposite { g: String, f: String },
    #[error("composition is not associative on ({h}, {g}, {f})")]
    NonAssociative { h: String, g: String, f: String },
    #[error("bad endpoints: {0}")]
    BadEndpoints(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),
    #[error("not functorial: {0}")]
    NotFunctorial(String),
    #[error("not natural: {0}")]
    NotNatural(String),
    #[error("not an isomorphism: {0}")]
    NotIso(String),
    #[error("non-invertible coherence cell: {0}")]
    NotIsoCell(String),
    #[error("unit coherence fails: {0}")]
    IncoherentUnit(String),
    #[error("associativity coherence fails: {0}")]
    IncoherentAssoc(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index category is not filtered: {0}")]
    NotFiltered(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("bad representative: {0}")]
    BadRepresentative(String),
    #[error("not a cocone: {0}")]
    NotACocone(String),
    #[error("not a cone: {0}")]
    NotACone(String),
    #[error("factorization not well defined: {0}")]
    NonWellDefined(String),
    #[error("incompatible cells: {0}")]
    IncompatibleCells(String),
    #[error("internal invariant breach: {0}")]
    InvariantBreach(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MissingComposite { .. } => "E_MISSING_COMPOSITE",
            Error::NonAssociative { .. } => "E_NON_ASSOCIATIVE",
            Error::BadEndpoints(_) => "E_BAD_ENDPOINTS",
            Error::DuplicateIdentifier(_) => "E_DUPLICATE_IDENTIFIER",
            Error::NotFunctorial(_) => "E_NOT_FUNCTORIAL",
            Error::NotNatural(_) => "E_NOT_NATURAL",
            Error::NotIso(_) => "E_NOT_ISO",
            Error::NotIsoCell(_) => "E_NOT_ISO_CELL",
            Error::IncoherentUnit(_) => "E_INCOHERENT_UNIT",
            Error::IncoherentAssoc(_) => "E_INCOHERENT_ASSOC",
            Error::UnknownObject(_) => "E_UNKNOWN_OBJECT",
            Error::ShapeMismatch(_) => "E_SHAPE_MISMATCH",
            Error::NotFiltered(_) => "E_NOT_FILTERED",
            Error::SearchExhausted(_) => "E_SEARCH_EXHAUSTED",
            Error::BadRepresentative(_) => "E_BAD_REPRESENTATIVE",
            Error::NotACocone(_) => "E_NOT_A_COCONE",
            Error::NotACone(_) => "E_NOT_A_CONE",
            Error::NonWellDefined(_) => "E_NON_WELL_DEFINED",
            Error::IncompatibleCells(_) => "E_INCOMPATIBLE_CELLS",
            Error::InvariantBreach(_) => "E_INVARIANT_BREACH",
        }
    }

    /// True for failures that can only come from a bug in this library,
    /// never from bad user input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::SearchExhausted(_) | Error::InvariantBreach(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
