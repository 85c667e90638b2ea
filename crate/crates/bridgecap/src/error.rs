use num_bigint::BigInt;

/// Errors for all fraction, continued-fraction, and certificate operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("0/0 is not a fraction")]
    Indeterminate,

    #[error("cannot parse `{0}` as a fraction")]
    ParseFraction(String),

    #[error("{0} and {1} are not joined by a Farey edge")]
    NotAdjacent(String, String),

    #[error("{0} has no Farey parents")]
    NoParents(String),

    #[error("{0}/{1} is not reduced: numerator and denominator share a factor")]
    NotCoprime(BigInt, BigInt),

    #[error("denominator {0} is even; an even denominator gives a 2-bridge link, not a knot")]
    EvenDenominator(BigInt),

    #[error("{0} is outside the open interval (0,1)")]
    OutOfRange(String),

    #[error("numerator of {0} is odd; no all-even continued fraction exists")]
    OddNumerator(String),

    #[error("continued-fraction entry {0} must be even and nonzero")]
    BadEvenEntry(BigInt),

    #[error("vector must be nonempty")]
    EmptyVector,

    #[error("parsing constraint violated: {0}")]
    ParsingConstraint(String),

    #[error("certificate check `{violation}` failed for:\n{certificate}")]
    CertificateViolation {
        violation: String,
        certificate: String,
    },

    #[error("crossing-number bound {0} is outside the supported range 3..=24")]
    CensusBound(u32),

    #[error("the unknot has no epimorphism tile")]
    UnknotTile,
}

pub type Result<T> = std::result::Result<T, Error>;
