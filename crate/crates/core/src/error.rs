use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Every variant carries a stable machine-readable [`code`](Error::code) used by the
/// command-line front end (`error: <code>: <detail>`).
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet rank must be at least 1")]
    EmptyAlphabet,
    #[error("generator x{index} is outside the rank-{rank} alphabet")]
    LetterOutOfRange { index: usize, rank: usize },
    #[error("alphabet mismatch: rank {left} vs rank {right}")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("word is not in the commutator subgroup (abelianization {0:?})")]
    NotInCommutatorSubgroup(Vec<i64>),
    #[error("word is not in the normal closure of x1 (retraction is {0})")]
    NotInNormalClosure(String),
    #[error("z-word has exponent sum {0}, expected 0")]
    NonzeroExponentSum(i64),
    #[error("mixed word is not in the kernel of the projection (plain residue {0})")]
    NotInKernel(String),
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("genus must be at least 1, got {0}")]
    InvalidGenus(usize),
    #[error("word has rank {found}, surface of genus {genus} needs rank {}", 2 * genus)]
    SurfaceRank { genus: usize, found: usize },
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyAlphabet | Error::LetterOutOfRange { .. } => "alphabet",
            Error::AlphabetMismatch { .. } => "alphabet-mismatch",
            Error::Parse { .. } => "parse",
            Error::NotInCommutatorSubgroup(_) => "not-in-commutator-subgroup",
            Error::NotInNormalClosure(_) => "not-in-normal-closure",
            Error::NonzeroExponentSum(_) => "nonzero-exponent-sum",
            Error::NotInKernel(_) => "not-in-kernel",
            Error::InvalidSymbol(_) => "invalid-symbol",
            Error::InvalidGenus(_) => "invalid-genus",
            Error::SurfaceRank { .. } => "surface-rank",
            Error::RankMismatch(_) => "rank-mismatch",
            Error::IndexOutOfRange(_) => "index-out-of-range",
            Error::InvalidArgument(_) => "invalid-argument",
        }
    }

    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
