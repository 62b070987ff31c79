use thiserror::Error;

/// Every failure the library reports. Budget overflows are not errors; they
/// show up as statuses inside reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field is infinite and cannot be enumerated")]
    InfiniteField,
    #[error("field order {0} exceeds the supported size")]
    FieldTooLarge(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("invalid field spec {0:?}")]
    BadFieldSpec(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("component {0} is inseparable")]
    Inseparable(String),
    #[error("component {0} is constant in one variable")]
    DegenerateComponent(String),
    #[error("constant polynomial has no correspondence")]
    ConstantInput,
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(String, String),
    #[error("edge ({0}, {1}) may sit on a singular point")]
    SingularEdge(String, String),
    #[error("vertex {0} is not in the set")]
    VertexNotInSet(String),
    #[error("correspondence is not of morphism type")]
    NotMorphismType,
    #[error("map has degree one")]
    DegreeOne,
    #[error("trace undefined: {0}")]
    TraceUndefined(String),
    #[error("set is not forward-complete: {0} leaves it")]
    NotForwardComplete(String),
    #[error("set is not ramification-increasing at edge {0}")]
    NotRamificationIncreasing(String),
    #[error("filtration not stable: image has pole {0}")]
    StabilityViolation(String),
    #[error("sets are not disjoint")]
    NotDisjoint,
    #[error("point {0} is not rational over the base field")]
    NonRationalPoint(String),
    #[error("point {0} is not defined over the rationals")]
    WrongField(String),
    #[error("correspondence is balanced")]
    Balanced,
    #[error("degree must be positive")]
    NonPositiveDegree,
    #[error("empty set")]
    EmptySet,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("wrong arity: {0}")]
    WrongArity(String),
    #[error("unknown command {0:?}")]
    UnknownCommand(String),
    #[error("missing field {0}")]
    MissingField(String),
    #[error("invalid parameter {0}: {1}")]
    InvalidParameter(String, String),
    #[error("division by zero")]
    DivisionByZero,
}

impl Error {
    /// True for errors raised while reading user input (exit code 2).
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::WrongArity(_)
                | Error::UnknownCommand(_)
                | Error::MissingField(_)
                | Error::BadFieldSpec(_)
                | Error::InvalidParameter(..)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
