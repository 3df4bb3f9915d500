use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("capacity exceeded: {what} = {requested} is above the limit {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("operands belong to different algebras: {0}")]
    DomainMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("axiom ({axiom}) violated, witness {witness}")]
    AxiomViolation { axiom: String, witness: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("degenerate algebra: {0}")]
    Degenerate(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("object is not in {subcategory}: {test} does not hold")]
    Classification {
        subcategory: &'static str,
        test: String,
    },

    #[error("malformed instance: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn axiom(axiom: &str, witness: impl Into<String>) -> Self {
        Error::AxiomViolation {
            axiom: axiom.to_string(),
            witness: witness.into(),
        }
    }
}
