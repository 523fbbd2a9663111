use thiserror::Error;

/// Every failure the library can report.
///
/// The variants that name a mathematical identity (`TheoremViolation`,
/// `BoundViolation`, `FormulaMismatch`, `NonIntegralFiberTerm`) only fire if
/// the implementation is wrong; the rest are input or resource errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("enumeration of {requested} candidates exceeds the limit {limit}")]
    EnumerationTooLarge { requested: String, limit: u64 },
    #[error("the argument must be nonzero")]
    ZeroArgument,
    #[error("{n} does not divide the multiplicative group order {group_order}")]
    BadResidueDegree { n: u64, group_order: String },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus is not monic irreducible of the expected degree")]
    ReducibleModulus,
    #[error("field of characteristic {p} and degree {degree} is too large")]
    FieldTooLarge { p: u64, degree: usize },
    #[error("coefficient {0} is out of range")]
    BadCoefficient(String),
    #[error("rational function has a pole at {place}")]
    PoleAtPlace { place: String },
    #[error("Kummer cover is not geometric: {0}")]
    NotGeometric(String),
    #[error("Kummer degree {n} is not tame over a field of size {q}")]
    WildKummer { n: u64, q: u64 },
    #[error("Artin-Schreier cover cannot be brought to standard form: {0}")]
    NotReduced(String),
    #[error("components of the composite are not linearly disjoint: {0}")]
    NotDisjoint(String),
    #[error("genus of this cover is not supported: {0}")]
    UnsupportedGenus(String),
    #[error("element {0} is not in the group")]
    ElementNotInGroup(String),
    #[error("element {0} does not lie in the Frobenius coset of G/N")]
    GammaNotInCoset(String),
    #[error("place {0} is not rational")]
    NotRational(String),
    #[error("fiber formula mismatch: direct {direct}, formula {formula}")]
    FormulaMismatch { direct: String, formula: String },
    #[error("fiber term deg(Q)/h = {deg_q}/{h} is not integral at {place}")]
    NonIntegralFiberTerm { place: String, deg_q: u64, h: u64 },
    #[error("fiber count identity fails at {place}: {detail}")]
    TheoremViolation { place: String, detail: String },
    #[error("Hasse-Weil window violated: {0}")]
    BoundViolation(String),
    #[error("singular model point above {0}")]
    SingularModelPoint(String),
    #[error("unknown group {0}")]
    UnknownGroup(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Short machine-readable reason, used in CLI error payloads.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch => "FieldMismatch",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::EnumerationTooLarge { .. } => "EnumerationTooLarge",
            Error::ZeroArgument => "ZeroArgument",
            Error::BadResidueDegree { .. } => "BadResidueDegree",
            Error::NotPrime(_) => "NotPrime",
            Error::ReducibleModulus => "ReducibleModulus",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::BadCoefficient(_) => "BadCoefficient",
            Error::PoleAtPlace { .. } => "PoleAtPlace",
            Error::NotGeometric(_) => "NotGeometric",
            Error::WildKummer { .. } => "WildKummer",
            Error::NotReduced(_) => "NotReduced",
            Error::NotDisjoint(_) => "NotDisjoint",
            Error::UnsupportedGenus(_) => "UnsupportedGenus",
            Error::ElementNotInGroup(_) => "ElementNotInGroup",
            Error::GammaNotInCoset(_) => "GammaNotInCoset",
            Error::NotRational(_) => "NotRational",
            Error::FormulaMismatch { .. } => "FormulaMismatch",
            Error::NonIntegralFiberTerm { .. } => "NonIntegralFiberTerm",
            Error::TheoremViolation { .. } => "TheoremViolation",
            Error::BoundViolation(_) => "BoundViolation",
            Error::SingularModelPoint(_) => "SingularModelPoint",
            Error::UnknownGroup(_) => "UnknownGroup",
            Error::Parse(_) => "Parse",
            Error::Config(_) => "Config",
        }
    }

    /// True for failures of a mathematical identity, as opposed to bad input.
    pub fn is_assertion_failure(&self) -> bool {
        matches!(
            self,
            Error::FormulaMismatch { .. }
                | Error::NonIntegralFiberTerm { .. }
                | Error::TheoremViolation { .. }
                | Error::BoundViolation(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
