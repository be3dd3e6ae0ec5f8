use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{what} exceeds the configured bound {limit}")]
    SizeExceeded { what: String, limit: u64 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("{n} does not divide {m}")]
    DoesNotDivide { n: String, m: String },
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("polynomial {0} is not monic")]
    NotMonic(String),
    #[error("symbol with zero modulus is undefined")]
    ZeroModulus,
    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("zero input")]
    ZeroInput,
    #[error("{0} is not an n-th root of unity")]
    NotRootOfUnity(String),
    #[error("characteristic {p} divides n = {n}")]
    CharacteristicDividesN { p: u64, n: u64 },
    #[error("power residue {0} is not a constant")]
    NonConstantResidue(String),
    #[error("families have different index sets")]
    IndexMismatch,
    #[error("both arguments are zero at index {0}")]
    BothZeroAtIndex(usize),
    #[error("empty set at index {0}")]
    EmptyAtIndex(usize),
    #[error("zero element at index {0}")]
    ZeroAtIndex(usize),
    #[error("negative exponent at index {0}")]
    NegativeExponent(usize),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("at index {index}: {source}")]
    AtIndex {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid family config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn does_not_divide(n: impl ToString, m: impl ToString) -> Self {
        Error::DoesNotDivide { n: n.to_string(), m: m.to_string() }
    }

    pub(crate) fn at_index(index: usize, source: Error) -> Self {
        Error::AtIndex { index, source: Box::new(source) }
    }
}
