use thiserror::Error;

/// Errors from the clause-set data model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("tautological clause {clause:?}")]
    Tautology { clause: Vec<i64> },
    #[error("extension of the assignment is not an autarky; the input was not quasi-maximal")]
    NotQuasiMaximal,
}

/// Errors from the translation layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error("variable {var} lies outside the primary range 1..={primary_count}")]
    IdCollision { var: u32, primary_count: u32 },
    #[error("variable {var} belongs to the cardinality range")]
    IdOutOfRange { var: u32 },
    #[error("assignment mentions variable {var} outside the allowed window")]
    Precondition { var: u32 },
    #[error("assignment domain is not saturated at primary variable {var}")]
    Unsaturated { var: u32 },
    #[error("cardinality bound {bound} out of range for {size} variables")]
    BoundOutOfRange { bound: usize, size: usize },
    #[error("fresh base {fresh_base} lies below the cardinality base {cardinality_base}")]
    FreshBase { fresh_base: u32, cardinality_base: u32 },
}

/// Errors from oracle providers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {vars} variables, above the enumeration limit {limit}")]
    SizeExceeded { vars: usize, limit: usize },
    #[error("formula does not decode as a translation: {0}")]
    MalformedTranslation(String),
}

/// Errors raised while running one of the autarky algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgorithmError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Translation(#[from] TranslationError),
    #[error("steering clauses mention variable {var} not occurring in the input")]
    SteeringOutOfRange { var: u32 },
    #[error("steering clause {clause:?} contains a negative literal")]
    SteeringNotPositive { clause: Vec<i64> },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Errors reading DIMACS input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: tautological clause {clause:?}")]
    Tautology { line: usize, clause: Vec<i64> },
}

/// Errors from the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruteError {
    #[error("instance has {vars} variables, above the enumeration limit {limit}")]
    SizeExceeded { vars: usize, limit: usize },
}

impl From<BruteError> for OracleError {
    fn from(e: BruteError) -> Self {
        match e {
            BruteError::SizeExceeded { vars, limit } => OracleError::SizeExceeded { vars, limit },
        }
    }
}
