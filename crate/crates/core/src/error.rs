use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("unsupported modulus {p}^{n}: {reason}")]
    UnsupportedModulus { p: u64, n: u32, reason: &'static str },
    #[error("{what} exceeds the budget of {budget}")]
    TooLarge { what: String, budget: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("unsupported prime {0}: the bound formulas assume p >= 3")]
    UnsupportedPrime(u64),
    #[error("parameters outside the theorem's range: {0}")]
    OutOfTheoremRange(String),
    #[error("operation not supported for group family {0}")]
    UnsupportedFamily(String),
    #[error("no working prime below 2^31 for exponent {exponent} and order {order}")]
    PrimeSearchFailed { exponent: u64, order: u64 },
    #[error("character table computation failed: {0}")]
    CharacterTable(String),
    #[error("the group is trivial")]
    TrivialGroup,
    #[error("matrices do not commute within tolerance {0}")]
    NotCommuting(f64),
    #[error("matrix {index} is not unitary within tolerance {tolerance}")]
    NotUnitary { index: usize, tolerance: f64 },
    #[error("conjugating matrix does not normalize the family: {0}")]
    NotNormalizing(String),
    #[error("functions live on different groups")]
    GroupMismatch,
    #[error("neither function has mean zero")]
    MeanNotZero,
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("subgroup is not proper")]
    NotProper,
    #[error("search node budget {0} exhausted")]
    BudgetExceeded(u64),
}

impl Error {
    /// Resource exhaustion as opposed to bad input or a failed check.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::TooLarge { .. } | Error::PrimeSearchFailed { .. } | Error::BudgetExceeded(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotAUnit { .. } => "NotAUnit",
            Error::UnsupportedModulus { .. } => "UnsupportedModulus",
            Error::TooLarge { .. } => "TooLarge",
            Error::InvalidParameters(_) => "InvalidParameters",
            Error::UnsupportedParameters(_) => "UnsupportedParameters",
            Error::UnsupportedPrime(_) => "UnsupportedPrime",
            Error::OutOfTheoremRange(_) => "OutOfTheoremRange",
            Error::UnsupportedFamily(_) => "UnsupportedFamily",
            Error::PrimeSearchFailed { .. } => "PrimeSearchFailed",
            Error::CharacterTable(_) => "CharacterTable",
            Error::TrivialGroup => "TrivialGroup",
            Error::NotCommuting(_) => "NotCommuting",
            Error::NotUnitary { .. } => "NotUnitary",
            Error::NotNormalizing(_) => "NotNormalizing",
            Error::GroupMismatch => "GroupMismatch",
            Error::MeanNotZero => "MeanNotZero",
            Error::PreconditionUnmet(_) => "PreconditionUnmet",
            Error::NotProper => "NotProper",
            Error::BudgetExceeded(_) => "BudgetExceeded",
        }
    }
}
