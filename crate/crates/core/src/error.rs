use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands are bound to different universes")]
    UniverseMismatch,

    #[error("duplicate {kind} name `{name}`")]
    Duplicate { kind: &'static str, name: String },

    #[error("entity names must be nonempty")]
    EmptyEntityName,

    #[error("unknown entity `{0}`")]
    UnknownEntity(String),

    #[error("entity index {index} out of range for a universe of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("{what} cap exceeded: {actual} > {cap}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("unknown word `{0}`")]
    UnknownWord(String),

    #[error("sentence shape mismatch: expected {expected}, got `{got}`")]
    ShapeMismatch { expected: String, got: String },

    #[error("word `{0}` belongs to more than one word class")]
    AmbiguousClass(String),

    #[error("unresolved {kind} `{name}`")]
    Unresolved { kind: &'static str, name: String },

    #[error(
        "branching needs both determiners upward or both downward monotone; \
         `{first}` is {first_mono} and `{second}` is {second_mono}"
    )]
    MixedMonotonicity {
        first: String,
        first_mono: String,
        second: String,
        second_mono: String,
    },

    #[error("reading `{reading}` does not apply to {shape} sentences")]
    ReadingNotApplicable { reading: String, shape: &'static str },

    #[error("model file: {0}")]
    ModelFile(String),

    #[error("i/o: {0}")]
    Io(String),

    #[error("witness count overflow")]
    Overflow,

    #[error("backends disagree: {0}")]
    BackendDisagreement(String),
}

impl Error {
    /// Process exit status used by the CLI and the status code returned over the C ABI.
    /// Truth values never map to a code; only operational failures do.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 3,
            Error::ModelFile(_) | Error::Duplicate { .. } | Error::EmptyEntityName | Error::UnknownEntity(_) => 4,
            Error::UnknownWord(_) | Error::ShapeMismatch { .. } | Error::AmbiguousClass(_) => 5,
            Error::Unresolved { .. } => 6,
            Error::CapExceeded { .. } => 7,
            Error::MixedMonotonicity { .. } => 8,
            Error::ReadingNotApplicable { .. } => 9,
            Error::BackendDisagreement(_) => 10,
            Error::UniverseMismatch | Error::IndexOutOfRange { .. } | Error::TypeMismatch(_) | Error::Overflow => 11,
        }
    }
}

pub(crate) fn cap_check(what: &'static str, actual: usize, cap: usize) -> Result<()> {
    if actual > cap {
        Err(Error::CapExceeded { what, actual, cap })
    } else {
        Ok(())
    }
}
