use num_bigint::BigInt;
use num_rational::Rational64;
use thiserror::Error;

/// Failures raised by the series kernel and the theta constructors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("lattice mismatch: q^(1/{0}) vs q^(1/{1})")]
    DenomMismatch(u32, u32),
    #[error("lowest coefficient {coefficient} at q^{exponent} is not a unit")]
    NonUnitLeading {
        exponent: Rational64,
        coefficient: BigInt,
    },
    #[error("series vanishes up to its truncation bound")]
    ZeroSeries,
    #[error("series has a nonzero term at fractional exponent q^{0}")]
    FractionalExponent(Rational64),
    #[error("quotient is not integral at q^{0}")]
    InexactDivision(Rational64),
    #[error("theta pair does not converge: exponent sum {0} is not positive")]
    DivergentPair(Rational64),
    #[error("result is exact only below q^({reached}/5), wanted q^({requested}/5)")]
    PrecisionLoss { reached: i64, requested: i64 },
    #[error("{0}")]
    InvalidArgument(String),
}

/// Syntax errors carry the byte offset into the source text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown atom `{name}` at {pos}")]
    UnknownAtom { name: String, pos: usize },
    #[error("unknown definition `${name}` at {pos}")]
    UnknownDefinition { name: String, pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("evaluation failed at {path}: {source}")]
pub struct EvalError {
    /// Slash-separated child indices from the root, e.g. `/1/0`.
    pub path: String,
    #[source]
    pub source: SeriesError,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("unknown identity id `{0}`")]
    UnknownId(String),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("unknown partition spec `{0}`")]
    UnknownSpec(String),
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("enumeration cap exceeded: n = {n} > {cap}")]
    CapExceeded { n: u64, cap: u64 },
    #[error("order {order} is below the entry minimum {min_order}")]
    OrderTooLow { order: i64, min_order: i64 },
    #[error("data file: {0}")]
    Data(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
