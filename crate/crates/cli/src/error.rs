use std::fmt;

use twocolim_core::Error as CoreError;

/// Where in the input something went wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub file: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{at}: syntax error: {message}")]
    Syntax { at: Location, message: String },
    #[error("{at}: unresolved {kind} `{name}`")]
    UnresolvedReference { at: Location, kind: &'static str, name: String },
    #[error("{at}: elaborating `{name}` exceeds {bound} morphisms")]
    ElaborationDiverges { at: Location, name: String, bound: usize },
    #[error("{at}: duplicate {kind} `{name}`")]
    Duplicate { at: Location, kind: &'static str, name: String },
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("{}{source}", .at.as_ref().map(|l| format!("{l}: ")).unwrap_or_default())]
    Core { at: Option<Location>, source: CoreError },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Syntax { .. } => "E_SYNTAX",
            CliError::UnresolvedReference { .. } => "E_UNRESOLVED_REFERENCE",
            CliError::ElaborationDiverges { .. } => "E_ELABORATION_DIVERGES",
            CliError::Duplicate { .. } => "E_DUPLICATE_IDENTIFIER",
            CliError::Io { .. } => "E_IO",
            CliError::Core { source, .. } => source.code(),
        }
    }

    /// Process exit status: 3 for internal breaches, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core { source, .. } if source.is_internal() => 3,
            _ => 2,
        }
    }

    pub fn location(&self) -> Option<&Location> {
        match self {
            CliError::Syntax { at, .. }
            | CliError::UnresolvedReference { at, .. }
            | CliError::ElaborationDiverges { at, .. }
            | CliError::Duplicate { at, .. } => Some(at),
            CliError::Core { at, .. } => at.as_ref(),
            CliError::Io { .. } => None,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(source: CoreError) -> Self {
        CliError::Core { at: None, source }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
