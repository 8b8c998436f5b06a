use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentError {
    #[error("malformed identifier `{0}`")]
    Malformed(String),
    #[error("identifier `{0}` uses the reserved prefix `__psp_`")]
    Reserved(String),
    #[error("identifier `{0}` is a formula keyword")]
    Keyword(String),
}

/// Error from the canonical formula syntax parser.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct SyntaxError {
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagnosticKind {
    UnknownScope,
    UnknownBody,
    MalformedConstraint,
    MixedKind,
    BadIdentifier,
    BadToken,
    BadDeclaration,
}

/// One requirement-file diagnostic. Lines and columns are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub kind: DiagnosticKind,
    pub message: String,
}

/// Every failing line of a requirement document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct SpecError {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("constraint atoms not evaluable on Boolean traces")]
    ConstraintAtom,
    #[error("lasso loop must not be empty")]
    EmptyLoop,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("internal: threshold {threshold} of `{variable}` missing from threshold map")]
    ThresholdMissing { variable: String, threshold: String },
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConcretizeError {
    #[error("witness violates region exclusivity at step {step} for `{variable}`")]
    MutexViolation { step: usize, variable: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("formula contains constraint atoms; abstract it first")]
    NotPureBoolean,
    #[error("budget values must be positive")]
    InvalidBudget,
    #[error("alphabet of {0} atoms is too large for bounded enumeration")]
    AlphabetTooLarge(usize),
    #[error("internal: witness failed self-verification")]
    WitnessRejected,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("{what} probabilities sum to {sum}, expected 1")]
    BadDistribution { what: &'static str, sum: f64 },
    #[error("{what} probability {value} is not in [0, 1]")]
    BadProbability { what: &'static str, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("unknown fixture `{0}`")]
    Unknown(String),
    #[error("fixture `{name}` failed to parse: {source}")]
    Parse { name: String, source: SpecError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsistencyError {
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Check(#[from] CheckError),
}
