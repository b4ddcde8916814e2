use std::fmt;

use serde_json::Value;

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    InvalidInput = 2,
    Internal = 3,
    InconsistentData = 4,
    VerificationFailed = 5,
}

/// A failure with its exit code and machine-readable details.
#[derive(Debug)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
    pub details: Value,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError { code: ExitCode::InvalidInput, message: message.into(), details: Value::Null }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        CliError { code: ExitCode::Internal, message: message.into(), details: Value::Null }
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = details;
        self
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<blochjac::operator::OperatorError> for CliError {
    fn from(e: blochjac::operator::OperatorError) -> Self {
        use blochjac::operator::OperatorError;
        match e {
            OperatorError::Invalid(violations) => {
                let list: Vec<Value> = violations.iter().map(|v| Value::String(v.to_string())).collect();
                CliError::invalid("operator violates its invariants").with_details(serde_json::json!({ "violations": list }))
            }
            other => CliError::invalid(other.to_string()),
        }
    }
}

impl From<blochjac::spectral::SpectralError> for CliError {
    fn from(e: blochjac::spectral::SpectralError) -> Self {
        use blochjac::spectral::SpectralError;
        match e {
            SpectralError::Operator(op) => op.into(),
            other => CliError::internal(other.to_string()),
        }
    }
}

impl From<blochjac::inverse::InverseError> for CliError {
    fn from(e: blochjac::inverse::InverseError) -> Self {
        use blochjac::inverse::InverseError;
        match e {
            InverseError::Inconsistent { ref diagnostics, .. } => CliError {
                code: ExitCode::InconsistentData,
                message: e.to_string(),
                details: crate::payload::diagnostics_json(diagnostics),
            },
            InverseError::Snap(_) => CliError { code: ExitCode::InconsistentData, message: e.to_string(), details: Value::Null },
            InverseError::Spectral(s) => s.into(),
            other => CliError::invalid(other.to_string()),
        }
    }
}
