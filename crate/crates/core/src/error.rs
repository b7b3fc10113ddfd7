use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("reducible minpoly: {0}")]
    ReducibleMinpoly(String),
    #[error("irreducibility undecided: {0}")]
    Undecided(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("scalar {value} is not representable in {field}")]
    NotRepresentable { value: String, field: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("ideal not graded")]
    IdealNotGraded,
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("pair axioms fail: {0}")]
    PairAxiomsFail(String),
    #[error("not a 3-graded algebra: {0}")]
    NotThreeGraded(String),
    #[error("grading mismatch: {0}")]
    GradingMismatch(String),
    #[error("not degree-0 homogeneous")]
    NotDegreeZero,
    #[error("not homogeneous of degree +-1: {0}")]
    NotWingHomogeneous(String),
    #[error("exhaustion budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("centroid not a field: {0}")]
    CentroidNotField(String),
    #[error("extension ill-defined: {0}")]
    ExtensionIllDefined(String),
    #[error("non-graded centroid element irreducibly mixes grades")]
    MixedGrades,
    #[error("derivation closure check failed: {0}")]
    DerivationClosure(String),
    #[error("internal consistency violation: {0}")]
    Internal(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
