use std::fmt;

use thiserror::Error;

/// A single violated invariant instance together with a human readable witness.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub check: String,
    pub witness: String,
}

impl Violation {
    pub fn new(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Violation {
            check: check.into(),
            witness: witness.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.check, self.witness)
    }
}

/// Outcome of validating an entity. Violations are data, not faults.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation::new(check, witness));
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Converts a non-empty report into an error.
    pub fn into_result(self) -> Result<(), QError> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(QError::InvariantViolation(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum QError {
    #[error("malformed parameters: {0}")]
    MalformedParams(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("enumeration cap of {cap} exceeded while enumerating {what}")]
    EnumerationCapExceeded { cap: usize, what: String },
    #[error("category is not cocomplete: no supremum for presheaf {witness}")]
    NotCocomplete { witness: String },
    #[error("matrix is not idempotent: {0}")]
    NotIdempotent(String),
    #[error("category is not totally continuous (witness object {0})")]
    NotTotallyContinuous(String),
    #[error("category is not totally algebraic (witness object {0})")]
    NotTotallyAlgebraic(String),
    #[error("weight column {0} is not a presheaf")]
    WeightNotPresheaf(String),
    #[error("invariant violation:\n{0}")]
    InvariantViolation(ValidationReport),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation failed for {entity}:\n{report}")]
    Validation {
        entity: String,
        report: ValidationReport,
    },
}

pub type Result<T, E = QError> = std::result::Result<T, E>;
