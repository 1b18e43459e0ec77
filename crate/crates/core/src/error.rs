use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("proposition `{0}` is quantified more than once")]
    DuplicateQuantifier(String),
    #[error("formula is not in prenex form")]
    NotPrenex,
    #[error("prefix is not behavioral: {0}")]
    NotBehavioral(String),
    #[error("formula contains non-vanilla quantifier over `{0}`")]
    NotVanilla(String),
    #[error("formula is not closed; free propositions: {0}")]
    NotClosed(String),
    #[error("proposition `{0}` is free but not bound by the assignment")]
    Unbound(String),
    #[error("domain mismatch: {0}")]
    Domain(String),
    #[error("alphabet mismatch: {0}")]
    Alphabet(String),
    #[error("resource guard tripped: {what} needs {needed}, limit is {limit}")]
    Guard {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("kripke structure: {0}")]
    Kripke(String),
    #[error("HOA: {0}")]
    Hoa(String),
    #[error("no witness: {0}")]
    NoWitness(String),
}

impl Error {
    /// True for enumeration guards and state budgets.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }

    pub(crate) fn guard(what: &'static str, needed: u128, limit: u128) -> Self {
        Error::Guard {
            what,
            needed,
            limit,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
