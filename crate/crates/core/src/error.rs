use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow during {0}")]
    Overflow(&'static str),

    #[error("{structure} axiom `{axiom}` fails at {witness:?}")]
    Axiom {
        structure: &'static str,
        axiom: String,
        witness: Vec<usize>,
    },

    #[error("size guard exceeded: {what} needs {needed}, limit is {limit}")]
    SizeGuard { what: String, needed: u128, limit: u128 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("composite map is nonzero at element {witness:?}")]
    NonzeroComposite { witness: Vec<u64> },

    #[error("cochain is not a {0}")]
    NotCocycle(String),

    #[error("pair is not regular: pushforward minus pullback is nonzero ({0:?})")]
    NotRegular(Box<crate::cochain::Cochain3>),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
