use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants are grouped by the layer that raises them; [`Error::class`]
/// maps them onto the coarse categories the CLI turns into exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // field tower
    #[error("division by zero")]
    DivisionByZero,
    #[error("values belong to different fields ({0} vs {1})")]
    DescriptorMismatch(String, String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("polynomial {0} is reducible over the base field")]
    ReduciblePolynomial(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("cannot parse field specification {0:?}")]
    BadFieldSpec(String),

    // polynomials
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("variable {0:?} clashes with an existing variable")]
    VariableClash(String),
    #[error("polynomial has degree zero in {0}")]
    DegreeZeroInVariable(String),
    #[error("unsupported polynomial shape: {0}")]
    UnsupportedShape(String),
    #[error("characteristic 2 is not supported here")]
    CharacteristicTwo,
    #[error("wrong degree: expected {expected}, found {found}")]
    WrongDegree { expected: String, found: u32 },

    // projective geometry
    #[error("the forms share a common component")]
    CommonComponent,
    #[error("no admissible coordinate change: {0}")]
    UnsupportedConfiguration(String),
    #[error("point does not lie on the variety")]
    PointNotOnVariety,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("curve is not smooth")]
    NotSmooth,
    #[error("leading form is reducible")]
    ReducibleLeadingForm,

    // transforms
    #[error("function is constant on the variety: {0}")]
    ConstantOnVariety(String),
    #[error("function is a unit of the coordinate ring")]
    UnitFunction,
    #[error("leading forms are not coprime")]
    NonCoprimeLeadingForms,
    #[error("internal cross-check failed: {0}")]
    CrossCheckMismatch(String),
    #[error("point is singular on the closure of the variety")]
    SingularOnAmbient,

    // criteria
    #[error("curve pair shares a component")]
    NonCoprimePair,
    #[error("hypothesis not verified: {0}")]
    HypothesisUnverified(String),
    #[error("witness rejected: {0}")]
    WitnessRejected(String),
    #[error("criterion requires an infinite field")]
    FiniteField,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("binary part of the leading form is reducible")]
    GReducible,
    #[error("input polynomial is reducible")]
    ReducibleInput,
    #[error("identity fails: {0}")]
    IdentityFails(String),
    #[error("characteristic divides the degree")]
    DegreeCharConflict,
    #[error("bad degree {0}")]
    BadDegree(u32),

    #[error("certificate replay failed: {0}")]
    Replay(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Coarse classification used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Unsupported,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Syntax { .. } | Error::UnknownVariable(_) | Error::BadFieldSpec(_) => {
                ErrorClass::Parse
            }
            Error::CrossCheckMismatch(_) | Error::Internal(_) | Error::Replay(_) => {
                ErrorClass::Internal
            }
            _ => ErrorClass::Unsupported,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
