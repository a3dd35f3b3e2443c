use std::fmt;

/// One problem found in a spec. `location` is a dotted path into the
/// document, such as `products.stack.rules[2]`.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("specfmt_version must be 1, found {0}")]
    Version(u64),
    #[error("{location}: unresolved {kind} `{name}`")]
    Unresolved { location: String, kind: &'static str, name: String },
    #[error("{location}: `{name}` is defined more than once")]
    Duplicate { location: String, name: String },
    #[error("{location}: `{name}` depends on itself")]
    Cycle { location: String, name: String },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
    #[error("{location}: {message}")]
    Type { location: String, message: String },
    #[error("{location}: {source}")]
    Model { location: String, source: rmoore::Error },
}

impl SpecError {
    pub(crate) fn invalid(location: impl Into<String>, message: impl Into<String>) -> SpecError {
        SpecError::Invalid {
            location: location.into(),
            message: message.into(),
        }
    }

    pub(crate) fn model(location: impl Into<String>, source: rmoore::Error) -> SpecError {
        SpecError::Model {
            location: location.into(),
            source,
        }
    }
}

impl From<serde_json::Error> for SpecError {
    fn from(e: serde_json::Error) -> Self {
        // serde_json appends " at line L column C"; the position is reported separately
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(k) => message[..k].to_string(),
            None => message,
        };
        SpecError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

/// Every problem found in one pass, in document order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecErrors(pub Vec<SpecError>);

impl SpecErrors {
    pub fn errors(&self) -> &[SpecError] {
        &self.0
    }
}

impl From<SpecError> for SpecErrors {
    fn from(e: SpecError) -> Self {
        SpecErrors(vec![e])
    }
}

impl fmt::Display for SpecErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for SpecErrors {}
