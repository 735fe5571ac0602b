use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a negative discriminant (must be < 0 and ≡ 0, 1 mod 4)")]
    InvalidDiscriminant(i64),

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("form ({a}, {b}, {c}) is not positive definite")]
    NotPositiveDefinite { a: i64, b: i64, c: i64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} is outside the supported range [5, 2^63)")]
    UnsupportedPrime(u64),

    #[error("polynomial modulus must have degree at least 1")]
    ZeroModulus,

    #[error("polynomial is not squarefree mod {p}")]
    NotSquarefree { p: u64 },

    #[error("curve y^2 = x^3 + {a}x + {b} is singular over F_{p}")]
    SingularCurve { a: u64, b: u64, p: u64 },

    #[error("prime {p} exceeds the census bound {bound}")]
    CensusBound { p: u64, bound: u64 },

    #[error("no ordinary isogeny class with trace {t} over F_{p}")]
    NoSuchClass { p: u64, t: i64 },

    #[error("level {0} has no embedded modular polynomial (supported: 2, 3, 5, 7)")]
    UnsupportedLevel(u64),

    #[error("isogeny degree {0} equals the characteristic")]
    LevelIsCharacteristic(u64),

    #[error("j = {j} is not in the isogeny class with trace {t}")]
    NotInClass { j: u64, t: i64 },

    #[error("discriminant {0} is not in the embedded Hilbert class polynomial table")]
    UnsupportedDiscriminant(i64),

    #[error("prime {p} divides the discriminant {d}")]
    PrimeDividesDiscriminant { p: u64, d: i64 },

    #[error("volcano structure violated: {0}")]
    VolcanoInconsistent(String),

    #[error("CM channels disagree for D = {d}, p = {p}: {detail}")]
    ChannelDisagreement { d: i64, p: u64, detail: String },

    #[error("Deuring count mismatch for t = {t}, p = {p}: {detail}")]
    DeuringMismatch { p: u64, t: i64, detail: String },
}

impl Error {
    /// Stable machine-readable code, one per variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidDiscriminant(_) => "E_DISC",
            Error::NotFundamental(_) => "E_FUNDAMENTAL",
            Error::NotPositiveDefinite { .. } => "E_FORM",
            Error::NotPrime(_) => "E_NOT_PRIME",
            Error::UnsupportedPrime(_) => "E_PRIME_RANGE",
            Error::ZeroModulus => "E_ZERO_MODULUS",
            Error::NotSquarefree { .. } => "E_NOT_SQUAREFREE",
            Error::SingularCurve { .. } => "E_SINGULAR",
            Error::CensusBound { .. } => "E_CENSUS_BOUND",
            Error::NoSuchClass { .. } => "E_NO_CLASS",
            Error::UnsupportedLevel(_) => "E_LEVEL",
            Error::LevelIsCharacteristic(_) => "E_LEVEL_IS_P",
            Error::NotInClass { .. } => "E_NOT_IN_CLASS",
            Error::UnsupportedDiscriminant(_) => "E_HILBERT_TABLE",
            Error::PrimeDividesDiscriminant { .. } => "E_RAMIFIED",
            Error::VolcanoInconsistent(_) => "E_VOLCANO",
            Error::ChannelDisagreement { .. } => "E_CM_CHANNELS",
            Error::DeuringMismatch { .. } => "E_DEURING",
        }
    }

    /// Verification failures (as opposed to bad input).
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::VolcanoInconsistent(_)
                | Error::ChannelDisagreement { .. }
                | Error::DeuringMismatch { .. }
        )
    }
}
